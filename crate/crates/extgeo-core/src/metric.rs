//! Metric structure (U, g): validation, metric products, the g-Clifford
//! algebra and the Christoffel operators.
//!
//! A metric field is a symmetric, non-degenerate smooth (1,1)-extensor
//! field g. It dresses the fiducial products of multivector fields:
//!
//! ```text
//! X ·_g Y = ĝ(X) · Y        (g-scalar product)
//! X ⌟_g Y = ĝ(X) ⌟ Y        (left  g-contraction)
//! X ⌞_g Y = X ⌞ ĝ(Y)        (right g-contraction)
//! ```
//!
//! where `ĝ` is the outermorphism extension of g. The g-Clifford product
//! is the associative product generated from these by `b X = b⌟_g X + b∧X`
//! for vectors; it is evaluated here by reducing the left factor to
//! generators, which keeps the fiducial algebra signature-free.
//!
//! The Christoffel operator of the first kind is the scalar-valued
//! trilinear operator
//!
//! ```text
//! [a,b,c] = 1/2 ( a·∂₀(b·_g c) + b·∂₀(c·_g a) - c·∂₀(a·_g b)
//!               + c·_g[a,b] + b·_g[c,a] - a·_g[b,c] )
//! ```
//!
//! and the second kind is `{c; a,b} = [a, b, g⁻¹(c)]`.

use crate::clifford::{blade_grade, Multivector};
use crate::error::{Error, Result};
use crate::extensor::{extend, Extensor11};
use crate::fields::{
    dir_deriv, lie_bracket, DiffConfig, ExtensorField, MultivectorField, Point, ScalarField,
    VectorField,
};
use crate::report::{ResidualTracker, SuiteReport};

/// Scalar product dressed by a pointwise operator: `ext(op)(x) · y`.
pub fn scalar_with(op: &Extensor11, x: &Multivector, y: &Multivector) -> f64 {
    extend(op).apply(x).scalar_product(y)
}

/// Left contraction dressed by a pointwise operator: `ext(op)(x) ⌟ y`.
pub fn contract_left_with(op: &Extensor11, x: &Multivector, y: &Multivector) -> Multivector {
    extend(op).apply(x).left_contract(y)
}

/// Right contraction dressed by a pointwise operator: `x ⌞ ext(op)(y)`.
pub fn contract_right_with(op: &Extensor11, x: &Multivector, y: &Multivector) -> Multivector {
    x.right_contract(&extend(op).apply(y))
}

/// Clifford product of the algebra whose bilinear form is `u, v -> op(u)·v`.
///
/// The left factor is reduced to generators: scalars multiply, for a
/// vector `v` the product is `op(v) ⌟ y + v ∧ y`, and a grade-k blade
/// `e_A = e_i ∧ e_R` (i its lowest index) satisfies
/// `e_A ∘ y = e_i ∘ (e_R ∘ y) - (op(e_i) ⌟ e_R) ∘ y`.
pub fn clifford_with(op: &Extensor11, x: &Multivector, y: &Multivector) -> Multivector {
    let n = x.dim();
    assert_eq!(op.dim(), n, "dimension mismatch");
    assert_eq!(y.dim(), n, "dimension mismatch");
    let mut out = Multivector::zero(n);
    // Scalar part.
    let s = x.scalar_part();
    if s != 0.0 {
        out = out + y.scale(s);
    }
    // Grade-1 part as a single generator application.
    let v = x.grade_part(1);
    if !v.is_zero(0.0) {
        out = out + op.apply(&v).left_contract(y) + v.outer(y);
    }
    // Higher-grade blades by recursion.
    for (mask, c) in x.nonzero_blades() {
        if blade_grade(mask) >= 2 {
            out = out + clifford_blade(op, mask, y).scale(c);
        }
    }
    out
}

fn clifford_blade(op: &Extensor11, mask: usize, y: &Multivector) -> Multivector {
    let n = y.dim();
    if mask == 0 {
        return y.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & (mask - 1); // drop the lowest factor
    let inner = clifford_blade(op, rest, y);
    let vi = Multivector::basis_vector(n, i);
    let gvi = op.apply(&vi);
    let direct = gvi.left_contract(&inner) + vi.outer(&inner);
    if rest == 0 {
        return direct;
    }
    let correction_symbol = gvi.left_contract(&Multivector::basis_blade(n, rest));
    if correction_symbol.is_zero(0.0) {
        direct
    } else {
        direct - clifford_with(op, &correction_symbol, y)
    }
}

/// Commutator product `X ×_op Y = (X ∘ Y - Y ∘ X)/2` of the dressed
/// Clifford algebra.
pub fn commutator_with(op: &Extensor11, x: &Multivector, y: &Multivector) -> Multivector {
    (clifford_with(op, x, y) - clifford_with(op, y, x)).scale(0.5)
}

/// A validated metric field together with its differentiation setup and
/// derived inverse/extension accessors. Cloning shares the underlying
/// field closures; everything is immutable after construction.
#[derive(Clone)]
pub struct MetricStructure {
    dim: usize,
    g: ExtensorField,
    cfg: DiffConfig,
    threshold: f64,
}

impl MetricStructure {
    pub fn new(g: ExtensorField, cfg: DiffConfig, threshold: f64) -> Self {
        Self {
            dim: g.dim(),
            g,
            cfg,
            threshold,
        }
    }

    /// The euclidean structure: g = id.
    pub fn euclidean(dim: usize) -> Self {
        Self::new(
            ExtensorField::constant(dim, Extensor11::identity(dim)),
            DiffConfig::default(),
            crate::extensor::DEFAULT_DEGENERACY_THRESHOLD,
        )
    }

    /// A structure with a constant metric operator.
    pub fn constant(op: Extensor11, cfg: DiffConfig, threshold: f64) -> Self {
        let dim = op.dim();
        Self::new(ExtensorField::constant(dim, op), cfg, threshold)
    }

    /// The conformal family `g = e^{2 φ} id`.
    pub fn conformal(dim: usize, phi: ScalarField, cfg: DiffConfig, threshold: f64) -> Self {
        let g = ExtensorField::new(dim, move |p| {
            Ok(Extensor11::scaling(dim, (2.0 * phi.eval(p)?).exp()))
        });
        Self::new(g, cfg, threshold)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cfg(&self) -> &DiffConfig {
        &self.cfg
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn g_field(&self) -> &ExtensorField {
        &self.g
    }

    /// Derived field of pointwise inverses g⁻¹.
    pub fn g_inv_field(&self) -> ExtensorField {
        let g = self.g.clone();
        let thr = self.threshold;
        ExtensorField::new(self.dim, move |p| g.eval(p)?.inverse(thr))
    }

    pub fn g_at(&self, p: &Point) -> Result<Extensor11> {
        self.g.eval(p)
    }

    pub fn g_inv_at(&self, p: &Point) -> Result<Extensor11> {
        self.g.eval(p)?.inverse(self.threshold)
    }

    /// Checks symmetry and non-degeneracy of g at each point.
    pub fn validate_at(&self, points: &[Point]) -> Result<()> {
        for p in points {
            let g = self.g_at(p)?;
            let asym = g.asymmetry();
            if asym > 1e-10 {
                return Err(Error::NotSymmetric(asym));
            }
            let det = g.det();
            if det.abs() <= self.threshold {
                return Err(Error::NonDegenerateViolation {
                    det: det.abs(),
                    threshold: self.threshold,
                });
            }
        }
        Ok(())
    }

    // --- metric products of field values at a point ---

    pub fn g_scalar_at(&self, x: &Multivector, y: &Multivector, p: &Point) -> Result<f64> {
        Ok(scalar_with(&self.g_at(p)?, x, y))
    }

    pub fn g_contract_left_at(
        &self,
        x: &Multivector,
        y: &Multivector,
        p: &Point,
    ) -> Result<Multivector> {
        Ok(contract_left_with(&self.g_at(p)?, x, y))
    }

    pub fn g_contract_right_at(
        &self,
        x: &Multivector,
        y: &Multivector,
        p: &Point,
    ) -> Result<Multivector> {
        Ok(contract_right_with(&self.g_at(p)?, x, y))
    }

    pub fn g_clifford_at(
        &self,
        x: &Multivector,
        y: &Multivector,
        p: &Point,
    ) -> Result<Multivector> {
        Ok(clifford_with(&self.g_at(p)?, x, y))
    }

    pub fn g_commutator_at(
        &self,
        x: &Multivector,
        y: &Multivector,
        p: &Point,
    ) -> Result<Multivector> {
        Ok(commutator_with(&self.g_at(p)?, x, y))
    }

    /// g⁻¹-dressed scalar product at a point.
    pub fn ginv_scalar_at(&self, x: &Multivector, y: &Multivector, p: &Point) -> Result<f64> {
        Ok(scalar_with(&self.g_inv_at(p)?, x, y))
    }

    // --- metric products as scalar/multivector fields ---

    /// The scalar field `p -> X(p) ·_g Y(p)`.
    pub fn g_scalar_field(&self, x: &MultivectorField, y: &MultivectorField) -> ScalarField {
        let (g, x, y) = (self.g.clone(), x.clone(), y.clone());
        ScalarField::new(self.dim, move |p| {
            Ok(scalar_with(&g.eval(p)?, &x.eval(p)?, &y.eval(p)?))
        })
    }

    /// The vector field `p -> g⁻¹(p)(c(p))`.
    pub fn g_inv_applied_field(&self, c: &VectorField) -> VectorField {
        let (g, c, thr) = (self.g.clone(), c.clone(), self.threshold);
        VectorField::new(self.dim, move |p| {
            Ok(g.eval(p)?.inverse(thr)?.apply(&c.eval(p)?))
        })
    }

    // --- Christoffel operators ---

    /// Christoffel operator of the first kind at a point.
    pub fn christoffel_first(
        &self,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
        p: &Point,
    ) -> Result<f64> {
        let cfg = &self.cfg;
        let bc = self.g_scalar_field(b, c);
        let ca = self.g_scalar_field(c, a);
        let ab = self.g_scalar_field(a, b);
        let t1 = dir_deriv(a, &bc, p, cfg)?;
        let t2 = dir_deriv(b, &ca, p, cfg)?;
        let t3 = dir_deriv(c, &ab, p, cfg)?;
        let br_ab = lie_bracket(a, b, cfg).eval(p)?;
        let br_ca = lie_bracket(c, a, cfg).eval(p)?;
        let br_bc = lie_bracket(b, c, cfg).eval(p)?;
        let t4 = self.g_scalar_at(&c.eval(p)?, &br_ab, p)?;
        let t5 = self.g_scalar_at(&b.eval(p)?, &br_ca, p)?;
        let t6 = self.g_scalar_at(&a.eval(p)?, &br_bc, p)?;
        Ok(0.5 * (t1 + t2 - t3 + t4 + t5 - t6))
    }

    /// Christoffel operator of the second kind: `{c; a,b} = [a, b, g⁻¹(c)]`.
    pub fn christoffel_second(
        &self,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
        p: &Point,
    ) -> Result<f64> {
        let c_up = self.g_inv_applied_field(c);
        self.christoffel_first(a, b, &c_up, p)
    }

    /// The Christoffel operator of the first kind as a scalar field.
    pub fn christoffel_first_field(
        &self,
        a: &VectorField,
        b: &VectorField,
        c: &VectorField,
    ) -> ScalarField {
        let ms = self.clone();
        let (a, b, c) = (a.clone(), b.clone(), c.clone());
        ScalarField::new(self.dim, move |p| ms.christoffel_first(&a, &b, &c, p))
    }
}

/// Input fields for one evaluation of the Christoffel identity suite.
#[derive(Clone)]
pub struct ChristoffelCase {
    pub point: Point,
    pub a: VectorField,
    pub a2: VectorField,
    pub b: VectorField,
    pub b2: VectorField,
    pub c: VectorField,
    pub c2: VectorField,
    pub f: ScalarField,
}

/// Evaluates the twelve linearity and sum/difference identities of the
/// Christoffel operator of the first kind on the supplied cases and
/// reports the worst residual per identity.
pub fn christoffel_suite(
    ms: &MetricStructure,
    cases: &[ChristoffelCase],
    tolerance: f64,
) -> Result<SuiteReport> {
    let names = [
        "CHO.3a", "CHO.3b", "CHO.3c", "CHO.3d", "CHO.3e", "CHO.3f", "CHO.4a", "CHO.4b", "CHO.4c",
        "CHO.4d", "CHO.4e", "CHO.4f",
    ];
    let mut trackers: Vec<ResidualTracker> = names
        .iter()
        .map(|n| ResidualTracker::new(*n, tolerance))
        .collect();
    let cfg = ms.cfg();

    for case in cases {
        let p = &case.point;
        let (a, a2, b, b2, c, c2, f) = (
            &case.a, &case.a2, &case.b, &case.b2, &case.c, &case.c2, &case.f,
        );
        let abc = ms.christoffel_first(a, b, c, p)?;
        let f_p = f.eval(p)?;

        // Linearity in the first slot.
        let r3a = (ms.christoffel_first(&a.add(a2), b, c, p)?
            - abc
            - ms.christoffel_first(a2, b, c, p)?)
        .abs();
        let r3b = (ms.christoffel_first(&a.scaled_by(f), b, c, p)? - f_p * abc).abs();
        // Additivity in the second slot; scaling there picks up a derivative term.
        let r3c = (ms.christoffel_first(a, &b.add(b2), c, p)?
            - abc
            - ms.christoffel_first(a, b2, c, p)?)
        .abs();
        let adf = dir_deriv(a, f, p, cfg)?;
        let bc_p = ms.g_scalar_at(&b.eval(p)?, &c.eval(p)?, p)?;
        let r3d = (ms.christoffel_first(a, &b.scaled_by(f), c, p)? - f_p * abc - adf * bc_p).abs();
        // Linearity in the third slot.
        let r3e = (ms.christoffel_first(a, b, &c.add(c2), p)?
            - abc
            - ms.christoffel_first(a, b, c2, p)?)
        .abs();
        let r3f = (ms.christoffel_first(a, b, &c.scaled_by(f), p)? - f_p * abc).abs();

        // Sum/difference identities.
        let bac = ms.christoffel_first(b, a, c, p)?;
        let acb = ms.christoffel_first(a, c, b, p)?;
        let cba = ms.christoffel_first(c, b, a, p)?;
        let d_a_bc = dir_deriv(a, &ms.g_scalar_field(b, c), p, cfg)?;
        let d_b_ca = dir_deriv(b, &ms.g_scalar_field(c, a), p, cfg)?;
        let d_c_ab = dir_deriv(c, &ms.g_scalar_field(a, b), p, cfg)?;
        let br_ab = lie_bracket(a, b, cfg).eval(p)?;
        let br_ca = lie_bracket(c, a, cfg).eval(p)?;
        let br_bc = lie_bracket(b, c, cfg).eval(p)?;
        let c_br_ab = ms.g_scalar_at(&c.eval(p)?, &br_ab, p)?;
        let b_br_ca = ms.g_scalar_at(&b.eval(p)?, &br_ca, p)?;
        let a_br_bc = ms.g_scalar_at(&a.eval(p)?, &br_bc, p)?;

        let r4a = (abc + bac - (d_a_bc + d_b_ca - d_c_ab + b_br_ca - a_br_bc)).abs();
        let r4b = (abc - bac - c_br_ab).abs();
        let r4c = (abc + acb - d_a_bc).abs();
        let r4d = (abc - acb - (d_b_ca - d_c_ab + c_br_ab + b_br_ca - a_br_bc)).abs();
        let r4e = (abc + cba - (d_b_ca + c_br_ab - a_br_bc)).abs();
        let r4f = (abc - cba - (d_a_bc - d_c_ab + b_br_ca)).abs();

        for (tracker, r) in trackers
            .iter_mut()
            .zip([r3a, r3b, r3c, r3d, r3e, r3f, r4a, r4b, r4c, r4d, r4e, r4f])
        {
            tracker.update(r, p);
        }
    }

    Ok(SuiteReport::new(
        "christoffel",
        trackers.into_iter().map(ResidualTracker::finish).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conformal(dim: usize) -> MetricStructure {
        MetricStructure::conformal(
            dim,
            ScalarField::from_fn(dim, |p| p.coord(0)),
            DiffConfig::default(),
            1e-10,
        )
    }

    #[test]
    fn identity_metric_reduces_to_fiducial_products() {
        let ms = MetricStructure::euclidean(3);
        let p = Point::origin(3);
        let x = Multivector::from_coeffs(3, &[0.2, 1.0, -0.5, 0.7, 0.0, 0.3, -1.1, 0.4]).unwrap();
        let y = Multivector::from_coeffs(3, &[-0.9, 0.1, 0.8, 0.0, 1.2, -0.6, 0.5, 0.2]).unwrap();
        assert_eq!(ms.g_scalar_at(&x, &y, &p).unwrap(), x.scalar_product(&y));
        assert!(ms
            .g_contract_left_at(&x, &y, &p)
            .unwrap()
            .approx_eq(&x.left_contract(&y), 1e-14));
        assert!(ms
            .g_clifford_at(&x, &y, &p)
            .unwrap()
            .approx_eq(&x.clifford_product(&y), 1e-13));
    }

    #[test]
    fn conformal_scalar_product_at_origin() {
        let ms = conformal(2);
        let e1 = Multivector::basis_vector(2, 0);
        let v = ms.g_scalar_at(&e1, &e1, &Point::origin(2)).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_scaling_acts_quadratically_on_bivectors() {
        let ms = MetricStructure::constant(
            Extensor11::scaling(2, 2.0),
            DiffConfig::default(),
            1e-10,
        );
        let e12 = Multivector::basis_blade(2, 0b11);
        let v = ms.g_scalar_at(&e12, &e12, &Point::origin(2)).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn contraction_grade_arithmetic() {
        let ms = conformal(3);
        let v = Multivector::vector(3, &[1.0, 0.5, -0.2]);
        let b = Multivector::basis_blade(3, 0b011);
        let r = ms.g_contract_left_at(&v, &b, &Point::origin(3)).unwrap();
        assert_eq!(r.grade(1e-12), Some(1));
    }

    #[test]
    fn g_clifford_axioms() {
        let ms = conformal(2);
        let p = Point::new(vec![0.2, -0.1]);
        let x = Multivector::from_coeffs(2, &[0.3, -0.7, 1.1, 0.4]).unwrap();
        // Scalars multiply.
        let f = Multivector::scalar(2, 2.5);
        assert!(ms
            .g_clifford_at(&f, &x, &p)
            .unwrap()
            .approx_eq(&x.scale(2.5), 1e-14));
        // Vector generator shape.
        let b = Multivector::vector(2, &[0.9, -0.4]);
        let lhs = ms.g_clifford_at(&b, &x, &p).unwrap();
        let rhs = ms.g_contract_left_at(&b, &x, &p).unwrap() + b.outer(&x);
        assert!(lhs.approx_eq(&rhs, 1e-14));
        // Right-generator shape.
        let lhs_r = ms.g_clifford_at(&x, &b, &p).unwrap();
        let rhs_r = ms.g_contract_right_at(&x, &b, &p).unwrap() + x.outer(&b);
        assert!(lhs_r.approx_eq(&rhs_r, 1e-13));
        // A vector times itself is its g-square.
        let sq = ms.g_clifford_at(&b, &b, &p).unwrap();
        let expect = ms.g_scalar_at(&b, &b, &p).unwrap();
        assert!((sq.scalar_part() - expect).abs() < 1e-13);
        assert!(sq.grade_part(2).is_zero(1e-13));
    }

    #[test]
    fn g_clifford_associativity() {
        let ms = MetricStructure::constant(
            Extensor11::from_fn(3, |i, j| {
                if i == j {
                    1.5 + 0.3 * i as f64
                } else {
                    0.2 * ((i + j) as f64 * 0.81).sin()
                }
            }),
            DiffConfig::default(),
            1e-10,
        );
        let p = Point::origin(3);
        let x = Multivector::from_coeffs(3, &[0.4, -0.2, 0.9, 0.3, -0.6, 0.1, 0.7, -0.5]).unwrap();
        let y = Multivector::from_coeffs(3, &[0.1, 0.8, -0.3, -0.9, 0.2, 0.6, -0.4, 0.5]).unwrap();
        let z = Multivector::from_coeffs(3, &[-0.7, 0.3, 0.5, 0.2, 0.9, -0.1, 0.8, 0.4]).unwrap();
        let xy = ms.g_clifford_at(&x, &y, &p).unwrap();
        let yz = ms.g_clifford_at(&y, &z, &p).unwrap();
        let lhs = ms.g_clifford_at(&xy, &z, &p).unwrap();
        let rhs = ms.g_clifford_at(&x, &yz, &p).unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-10), "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn g_contraction_duality() {
        let ms = conformal(3);
        let p = Point::new(vec![0.1, 0.3, -0.2]);
        let x = Multivector::from_coeffs(3, &[0.2, 0.5, -0.1, 0.7, 0.3, -0.4, 0.6, 0.1]).unwrap();
        let y = Multivector::from_coeffs(3, &[0.4, -0.3, 0.8, 0.2, -0.5, 0.9, 0.1, -0.2]).unwrap();
        let z = Multivector::from_coeffs(3, &[-0.6, 0.2, 0.3, -0.8, 0.4, 0.1, -0.3, 0.7]).unwrap();
        // (X ⌟_g Y) ·_g Z = Y ·_g (X~ ∧ Z)
        let lhs = ms
            .g_scalar_at(&ms.g_contract_left_at(&x, &y, &p).unwrap(), &z, &p)
            .unwrap();
        let rhs = ms.g_scalar_at(&y, &x.reverse().outer(&z), &p).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "lhs={lhs} rhs={rhs}");
        // (X ⌞_g Y) ·_g Z = X ·_g (Z ∧ Y~)
        let lhs2 = ms
            .g_scalar_at(&ms.g_contract_right_at(&x, &y, &p).unwrap(), &z, &p)
            .unwrap();
        let rhs2 = ms.g_scalar_at(&x, &z.outer(&y.reverse()), &p).unwrap();
        assert!((lhs2 - rhs2).abs() < 1e-12, "lhs={lhs2} rhs={rhs2}");
    }

    #[test]
    fn christoffel_vanishes_for_constant_metric_and_fields() {
        let ms = MetricStructure::constant(
            Extensor11::diagonal(&[2.0, 0.5]),
            DiffConfig::default(),
            1e-10,
        );
        let a = VectorField::basis_vector(2, 0);
        let b = VectorField::basis_vector(2, 1);
        let v = ms
            .christoffel_first(&a, &b, &a, &Point::new(vec![0.3, 0.4]))
            .unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn christoffel_conformal_values_at_origin() {
        let ms = conformal(2);
        let e1 = VectorField::basis_vector(2, 0);
        let e2 = VectorField::basis_vector(2, 1);
        let p = Point::origin(2);
        let g111 = ms.christoffel_first(&e1, &e1, &e1, &p).unwrap();
        assert!((g111 - 1.0).abs() < 1e-8, "got {g111}");
        let g221 = ms.christoffel_first(&e2, &e2, &e1, &p).unwrap();
        assert!((g221 + 1.0).abs() < 1e-8, "got {g221}");
    }

    #[test]
    fn christoffel_second_reduces_and_matches() {
        let eu = MetricStructure::euclidean(2);
        let e1 = VectorField::basis_vector(2, 0);
        let e2 = VectorField::basis_vector(2, 1);
        let p = Point::new(vec![0.2, -0.3]);
        let first = eu.christoffel_first(&e1, &e2, &e1, &p).unwrap();
        let second = eu.christoffel_second(&e1, &e2, &e1, &p).unwrap();
        assert!((first - second).abs() < 1e-12);

        let ms = conformal(2);
        let v = ms
            .christoffel_second(&e2, &e2, &e1, &Point::origin(2))
            .unwrap();
        assert!((v + 1.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn christoffel_second_is_additive_in_c() {
        let ms = conformal(2);
        let e1 = VectorField::basis_vector(2, 0);
        let e2 = VectorField::basis_vector(2, 1);
        let p = Point::new(vec![0.1, 0.2]);
        let sum = ms.christoffel_second(&e1, &e2, &e1.add(&e2), &p).unwrap();
        let parts = ms.christoffel_second(&e1, &e2, &e1, &p).unwrap()
            + ms.christoffel_second(&e1, &e2, &e2, &p).unwrap();
        assert!((sum - parts).abs() < 1e-9);
    }
}
