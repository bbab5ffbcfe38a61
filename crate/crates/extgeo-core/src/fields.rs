//! Smooth fields over an open coordinate domain U ⊆ ℝⁿ and their
//! directional derivatives `a·∂₀`.
//!
//! A field is an evaluation function from points to values; smoothness is
//! a documented contract, not something the library verifies. Domain
//! membership is likewise the caller's responsibility: the domain is
//! treated as all of ℝⁿ minus whatever points the evaluation function
//! rejects. Directional derivatives are realized by central finite
//! differences along the frozen direction `a(p)`; only the composite
//! operator `a·∂₀` is provided, the bare vector derivative `∂₀` is not.

use std::sync::Arc;

use crate::clifford::Multivector;
use crate::error::Result;
use crate::extensor::{extend, Extensor11};

/// A point of the domain, identified with its coordinate vector.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    /// The point `p + s·v` where `v` is the grade-1 part of `dir`.
    pub fn offset(&self, dir: &Multivector, s: f64) -> Point {
        debug_assert!(dir.is_vector(1e-9), "offset direction must be a vector");
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &x)| x + s * dir.coeff(1 << i))
            .collect();
        Point { coords }
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// Values that support the linear combinations used by difference stencils.
pub trait Linear: Clone {
    fn scaled(&self, k: f64) -> Self;
    fn plus_scaled(&self, other: &Self, k: f64) -> Self;
}

impl Linear for f64 {
    fn scaled(&self, k: f64) -> Self {
        self * k
    }
    fn plus_scaled(&self, other: &Self, k: f64) -> Self {
        self + k * other
    }
}

impl Linear for Multivector {
    fn scaled(&self, k: f64) -> Self {
        self.scale(k)
    }
    fn plus_scaled(&self, other: &Self, k: f64) -> Self {
        self + &other.scale(k)
    }
}

impl Linear for Extensor11 {
    fn scaled(&self, k: f64) -> Self {
        Extensor11::scaled(self, k)
    }
    fn plus_scaled(&self, other: &Self, k: f64) -> Self {
        self.add(&Extensor11::scaled(other, k))
    }
}

/// Central difference scheme for directional derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Two-point stencil, second-order accurate.
    Central2,
    /// Four-point stencil, fourth-order accurate.
    Central4,
}

/// Differentiation configuration: scheme and step size.
#[derive(Clone, Copy, Debug)]
pub struct DiffConfig {
    pub scheme: Scheme,
    pub step: f64,
}

impl Default for DiffConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Central2,
            step: 1e-5,
        }
    }
}

impl DiffConfig {
    pub fn new(scheme: Scheme, step: f64) -> Self {
        assert!(step > 0.0, "step must be positive");
        Self { scheme, step }
    }
}

type EvalFn<T> = dyn Fn(&Point) -> Result<T> + Send + Sync;

/// A smooth map from domain points to values of type `T`.
///
/// Evaluation is deterministic: two evaluations at the same point agree
/// bit for bit. Fields are immutable and cheap to clone (the evaluation
/// function is shared).
pub struct Field<T> {
    dim: usize,
    f: Arc<EvalFn<T>>,
}

impl<T> Clone for Field<T> {
    fn clone(&self) -> Self {
        Self {
            dim: self.dim,
            f: Arc::clone(&self.f),
        }
    }
}

pub type ScalarField = Field<f64>;
pub type VectorField = Field<Multivector>;
pub type MultivectorField = Field<Multivector>;
pub type ExtensorField = Field<Extensor11>;

impl<T: Clone + Send + Sync + 'static> Field<T> {
    /// Builds a field from a fallible evaluation function.
    pub fn new(dim: usize, f: impl Fn(&Point) -> Result<T> + Send + Sync + 'static) -> Self {
        Self { dim, f: Arc::new(f) }
    }

    /// Builds a field from an infallible evaluation function.
    pub fn from_fn(dim: usize, f: impl Fn(&Point) -> T + Send + Sync + 'static) -> Self {
        Self::new(dim, move |p| Ok(f(p)))
    }

    /// The constant field.
    pub fn constant(dim: usize, value: T) -> Self {
        Self::new(dim, move |_| Ok(value.clone()))
    }

    /// Dimension of the underlying domain.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &Point) -> Result<T> {
        assert_eq!(p.dim(), self.dim, "point dimension mismatch");
        (self.f)(p)
    }
}

impl<T: Linear + Send + Sync + 'static> Field<T> {
    /// Pointwise sum of two fields.
    pub fn add(&self, other: &Field<T>) -> Field<T> {
        assert_eq!(self.dim, other.dim, "field dimension mismatch");
        let (a, b) = (self.clone(), other.clone());
        Field::new(self.dim, move |p| Ok(a.eval(p)?.plus_scaled(&b.eval(p)?, 1.0)))
    }

    /// Pointwise scaling by a constant.
    pub fn scaled(&self, k: f64) -> Field<T> {
        let a = self.clone();
        Field::new(self.dim, move |p| Ok(a.eval(p)?.scaled(k)))
    }

    /// Pointwise scaling by a scalar field.
    pub fn scaled_by(&self, s: &ScalarField) -> Field<T> {
        assert_eq!(self.dim, s.dim, "field dimension mismatch");
        let (a, s) = (self.clone(), s.clone());
        Field::new(self.dim, move |p| Ok(a.eval(p)?.scaled(s.eval(p)?)))
    }
}

impl Field<Multivector> {
    /// The constant field of the basis vector `e_{i+1}`.
    pub fn basis_vector(dim: usize, i: usize) -> Self {
        Field::constant(dim, Multivector::basis_vector(dim, i))
    }
}

/// Directional derivative of an arbitrary evaluation along a frozen
/// direction: approximates `d/ds eval(p + s·dir)` at `s = 0`.
pub fn deriv_along<T: Linear>(
    dir: &Multivector,
    eval: impl Fn(&Point) -> Result<T>,
    p: &Point,
    cfg: &DiffConfig,
) -> Result<T> {
    let h = cfg.step;
    match cfg.scheme {
        Scheme::Central2 => {
            let fp = eval(&p.offset(dir, h))?;
            let fm = eval(&p.offset(dir, -h))?;
            Ok(fp.plus_scaled(&fm, -1.0).scaled(0.5 / h))
        }
        Scheme::Central4 => {
            let f2p = eval(&p.offset(dir, 2.0 * h))?;
            let fp = eval(&p.offset(dir, h))?;
            let fm = eval(&p.offset(dir, -h))?;
            let f2m = eval(&p.offset(dir, -2.0 * h))?;
            // (-f(2h) + 8 f(h) - 8 f(-h) + f(-2h)) / (12 h)
            let combo = fp
                .plus_scaled(&fm, -1.0)
                .scaled(8.0)
                .plus_scaled(&f2p, -1.0)
                .plus_scaled(&f2m, 1.0);
            Ok(combo.scaled(1.0 / (12.0 * h)))
        }
    }
}

/// Directional derivative `(a·∂₀F)(p)` of a field of scalars, multivectors
/// or extensors. Linear in `a(p)`; vanishes for constant fields.
pub fn dir_deriv<T: Linear + Send + Sync + 'static>(
    a: &VectorField,
    field: &Field<T>,
    p: &Point,
    cfg: &DiffConfig,
) -> Result<T> {
    let dir = a.eval(p)?;
    deriv_along(&dir, |q| field.eval(q), p, cfg)
}

/// Operator-valued derivative `(a·∂₀g)(p)` of an extensor field. For a
/// symmetric `g` the result is symmetric.
pub fn dir_deriv_extensor(
    a: &VectorField,
    g: &ExtensorField,
    p: &Point,
    cfg: &DiffConfig,
) -> Result<Extensor11> {
    dir_deriv(a, g, p, cfg)
}

/// Derivative of the extended operator applied to a frozen multivector:
/// `(a·∂₀ ĝ)(x)` where `ĝ` denotes the outermorphism extension of `g`.
pub fn dir_deriv_extended(
    a: &VectorField,
    g: &ExtensorField,
    x: &Multivector,
    p: &Point,
    cfg: &DiffConfig,
) -> Result<Multivector> {
    let dir = a.eval(p)?;
    deriv_along(&dir, |q| Ok(extend(&g.eval(q)?).apply(x)), p, cfg)
}

/// Lie bracket of vector fields: `[a, b] = a·∂₀b - b·∂₀a`.
pub fn lie_bracket(a: &VectorField, b: &VectorField, cfg: &DiffConfig) -> VectorField {
    assert_eq!(a.dim(), b.dim(), "field dimension mismatch");
    let (a, b, cfg) = (a.clone(), b.clone(), *cfg);
    Field::new(a.dim(), move |p| {
        let ab = dir_deriv(&a, &b, p, &cfg)?;
        let ba = dir_deriv(&b, &a, p, &cfg)?;
        Ok(ab - ba)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensor::DEFAULT_DEGENERACY_THRESHOLD;

    fn cfg() -> DiffConfig {
        DiffConfig::default()
    }

    #[test]
    fn constant_field_has_zero_derivative() {
        let f = ScalarField::constant(2, 42.0);
        let a = VectorField::basis_vector(2, 0);
        let d = dir_deriv(&a, &f, &Point::new(vec![0.3, -0.2]), &cfg()).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn scalar_derivative_matches_analytic() {
        // F = x1^2, a = e1: derivative is 2 x1 = 6 at x1 = 3.
        let f = ScalarField::from_fn(2, |p| p.coord(0) * p.coord(0));
        let a = VectorField::basis_vector(2, 0);
        let d = dir_deriv(&a, &f, &Point::new(vec![3.0, 0.0]), &cfg()).unwrap();
        assert!((d - 6.0).abs() < 1e-8, "d = {d}");
    }

    #[test]
    fn vector_field_derivative_along_flat_direction() {
        // F = x1 e2 does not vary along e2.
        let f = VectorField::from_fn(2, |p| {
            Multivector::vector(2, &[0.0, p.coord(0)])
        });
        let a = VectorField::basis_vector(2, 1);
        let d = dir_deriv(&a, &f, &Point::new(vec![1.2, -0.4]), &cfg()).unwrap();
        assert!(d.norm_inf() < 1e-10);
    }

    #[test]
    fn extensor_derivative_of_conformal_factor() {
        // g = e^{2 x1} id, a = e1, at the origin: derivative is 2 id.
        let g = ExtensorField::from_fn(2, |p| {
            Extensor11::scaling(2, (2.0 * p.coord(0)).exp())
        });
        let a = VectorField::basis_vector(2, 0);
        let d = dir_deriv_extensor(&a, &g, &Point::origin(2), &cfg()).unwrap();
        assert!(d.approx_eq(&Extensor11::scaling(2, 2.0), 1e-8));
    }

    #[test]
    fn extensor_derivative_of_constant_is_zero() {
        let g = ExtensorField::constant(2, Extensor11::diagonal(&[2.0, 3.0]));
        let a = VectorField::basis_vector(2, 0);
        let d = dir_deriv_extensor(&a, &g, &Point::origin(2), &cfg()).unwrap();
        assert!(d.norm_inf() < 1e-12);
    }

    #[test]
    fn derivative_of_symmetric_extensor_field_is_symmetric() {
        let g = ExtensorField::from_fn(2, |p| {
            let x = p.coord(0);
            let y = p.coord(1);
            Extensor11::from_fn(2, |i, j| {
                let base = if i == j { 1.0 + 0.3 * x * x } else { 0.2 * x * y };
                base + 0.1 * ((i + j) as f64) * y
            })
        });
        // Symmetrize to make the field a valid metric candidate.
        let gs = ExtensorField::from_fn(2, move |p| {
            let t = g.eval(p).unwrap();
            t.add(&t.adjoint()).scaled(0.5)
        });
        let a = VectorField::basis_vector(2, 0);
        let d = dir_deriv_extensor(&a, &gs, &Point::new(vec![0.2, 0.1]), &cfg()).unwrap();
        assert!(d.approx_eq(&d.adjoint(), 1e-10));
    }

    #[test]
    fn lie_bracket_of_constants_vanishes() {
        let a = VectorField::constant(2, Multivector::vector(2, &[1.0, 2.0]));
        let b = VectorField::constant(2, Multivector::vector(2, &[-0.5, 0.7]));
        let br = lie_bracket(&a, &b, &cfg());
        assert!(br.eval(&Point::new(vec![0.4, -0.1])).unwrap().norm_inf() < 1e-12);
    }

    #[test]
    fn lie_bracket_analytic_case() {
        // a = e1, b = x1 e2: [a, b] = e2 everywhere.
        let a = VectorField::basis_vector(2, 0);
        let b = VectorField::from_fn(2, |p| Multivector::vector(2, &[0.0, p.coord(0)]));
        let br = lie_bracket(&a, &b, &cfg());
        for p in [vec![0.0, 0.0], vec![0.7, -0.3], vec![-1.1, 0.2]] {
            let v = br.eval(&Point::new(p)).unwrap();
            assert!(v.approx_eq(&Multivector::basis_vector(2, 1), 1e-9));
        }
    }

    #[test]
    fn dir_deriv_is_linear_in_direction_weight() {
        let f = ScalarField::from_fn(2, |p| (p.coord(0) * 1.3).sin() * (1.0 + p.coord(1)));
        let s = ScalarField::from_fn(2, |p| 0.8 + 0.4 * p.coord(0) - 0.2 * p.coord(1));
        let a = VectorField::from_fn(2, |p| {
            Multivector::vector(2, &[1.0 + 0.1 * p.coord(1), -0.6])
        });
        let fa = a.scaled_by(&s);
        let p = Point::new(vec![0.25, -0.4]);
        let lhs = dir_deriv(&fa, &f, &p, &cfg()).unwrap();
        let rhs = s.eval(&p).unwrap() * dir_deriv(&a, &f, &p, &cfg()).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn central4_observed_order_is_at_least_3_5() {
        let f = ScalarField::from_fn(2, |p| (2.0 * p.coord(0)).sin() * (p.coord(1)).exp());
        let a = VectorField::constant(2, Multivector::vector(2, &[1.0, 0.5]));
        let p = Point::new(vec![0.3, 0.2]);
        // Exact derivative along (1, 0.5).
        let (x, y) = (0.3f64, 0.2f64);
        let exact = 2.0 * (2.0 * x).cos() * y.exp() + 0.5 * (2.0 * x).sin() * y.exp();
        let err = |h: f64| {
            let c = DiffConfig::new(Scheme::Central4, h);
            (dir_deriv(&a, &f, &p, &c).unwrap() - exact).abs()
        };
        let e1 = err(0.08);
        let e2 = err(0.04);
        let order = (e1 / e2).log2();
        assert!(order >= 3.5, "observed order {order}");
    }

    #[test]
    fn extended_derivative_matches_operator_derivative_on_vectors() {
        let g = ExtensorField::from_fn(2, |p| {
            Extensor11::scaling(2, (2.0 * p.coord(0)).exp())
        });
        let a = VectorField::basis_vector(2, 0);
        let p = Point::origin(2);
        let x = Multivector::vector(2, &[0.4, -1.0]);
        let via_ext = dir_deriv_extended(&a, &g, &x, &p, &cfg()).unwrap();
        let op = dir_deriv_extensor(&a, &g, &p, &cfg()).unwrap();
        assert!(via_ext.approx_eq(&op.apply(&x), 1e-9));
    }

    #[test]
    fn domain_error_propagates_from_stencil() {
        let f = ScalarField::new(2, |p| {
            if p.coord(0) > 0.0 {
                Ok(p.coord(0).ln())
            } else {
                Err(crate::error::Error::Domain {
                    point: p.coords().to_vec(),
                    reason: "log of non-positive value".into(),
                })
            }
        });
        let a = VectorField::basis_vector(2, 0);
        // Point so close to the boundary that the stencil crosses it.
        let p = Point::new(vec![5e-6, 0.0]);
        assert!(dir_deriv(&a, &f, &p, &cfg()).is_err());
    }

    #[test]
    fn leibniz_rule_for_fiducial_scalar_product() {
        let x = MultivectorField::from_fn(2, |p| {
            let mut m = Multivector::zero(2);
            m.set_coeff(0, 0.3 * p.coord(0));
            m.set_coeff(0b01, (p.coord(1) * 0.9).cos());
            m.set_coeff(0b11, 0.5 * p.coord(0) * p.coord(1));
            m
        });
        let y = MultivectorField::from_fn(2, |p| {
            let mut m = Multivector::zero(2);
            m.set_coeff(0b01, 1.0 + p.coord(0));
            m.set_coeff(0b10, (0.7 * p.coord(0)).exp() * 0.2);
            m
        });
        let a = VectorField::from_fn(2, |p| Multivector::vector(2, &[0.9, 0.3 * p.coord(0)]));
        let p = Point::new(vec![0.2, -0.3]);
        let dot = ScalarField::new(2, {
            let (x, y) = (x.clone(), y.clone());
            move |q| Ok(x.eval(q)?.scalar_product(&y.eval(q)?))
        });
        let lhs = dir_deriv(&a, &dot, &p, &cfg()).unwrap();
        let dx = dir_deriv(&a, &x, &p, &cfg()).unwrap();
        let dy = dir_deriv(&a, &y, &p, &cfg()).unwrap();
        let rhs = dx.scalar_product(&y.eval(&p).unwrap()) + x.eval(&p).unwrap().scalar_product(&dy);
        assert!((lhs - rhs).abs() < 1e-7, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn inverse_threshold_survives_field_composition() {
        // Plumbing check: a derived inverse field fails cleanly when the
        // base operator degenerates.
        let g = ExtensorField::from_fn(2, |p| Extensor11::diagonal(&[p.coord(0), 1.0]));
        let g_inv = ExtensorField::new(2, move |p| {
            g.eval(p)?.inverse(DEFAULT_DEGENERACY_THRESHOLD)
        });
        assert!(g_inv.eval(&Point::new(vec![0.0, 0.0])).is_err());
        assert!(g_inv.eval(&Point::new(vec![2.0, 0.0])).is_ok());
    }
}
