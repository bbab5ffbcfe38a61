//! Connection fields, the Levi-Civita connection, pairs of associated
//! covariant derivative operators, and the metric-compatibility
//! verification suite.
//!
//! The Levi-Civita connection of a metric structure (U, g) is the vector
//! elementary 2-extensor field
//!
//! ```text
//! λ(a, b) = 1/2 g⁻¹∘(a·∂₀g)(b) + ω₀(a) ×_g b
//! ```
//!
//! where the rotation-gauge bivector ω₀ is the double basis sum
//!
//! ```text
//! ω₀(a) = -1/4 Σ_{i,j} ĝ⁻¹(e_i ∧ e_j) [ a·((e_i·∂₀g)(e_j) - (e_j·∂₀g)(e_i)) ].
//! ```
//!
//! Any bivector-valued ω in place of ω₀ yields a g-compatible connection
//! `γ_a(b) = 1/2 g⁻¹∘(a·∂₀g)(b) + ω(a) ×_g b`; conversely `ω(a) = 1/2 biv_g[γ_a]`
//! recovers the gauge field. A connection induces the covariant
//! derivative pair
//!
//! ```text
//! D_a⁺ X = a·∂₀X + Λ_a(X),      D_a⁻ X = a·∂₀X - Λ_a†(X),
//! ```
//!
//! with Λ_a the generalized of λ_a; the pair is dual under the fiducial
//! scalar product and both members reduce to a·∂₀ on scalar fields.

use std::sync::Arc;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::extensor::{biv_g, extend, generalize, Elem2Extensor, Extensor11, Extensor12};
use crate::fields::{
    deriv_along, dir_deriv, Field, MultivectorField, Point, VectorField,
};
use crate::metric::{clifford_with, commutator_with, scalar_with, MetricStructure};
use crate::report::{ResidualTracker, SuiteReport};

/// Provenance of a connection field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionKind {
    LeviCivita,
    FromOmega,
    Custom,
}

type GammaFn = dyn Fn(&Multivector, &Point) -> Result<Extensor11> + Send + Sync;

/// A connection field, represented functionally: `(a(p), p) -> γ_a(p)`,
/// linear in the vector value `a(p)`.
#[derive(Clone)]
pub struct ConnectionField {
    dim: usize,
    kind: ConnectionKind,
    gamma: Arc<GammaFn>,
}

impl ConnectionField {
    pub fn custom(
        dim: usize,
        gamma: impl Fn(&Multivector, &Point) -> Result<Extensor11> + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            kind: ConnectionKind::Custom,
            gamma: Arc::new(gamma),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ConnectionKind {
        self.kind
    }

    /// The operator `γ_a(p)` for a frozen vector value `a`.
    pub fn gamma_at(&self, a_value: &Multivector, p: &Point) -> Result<Extensor11> {
        (self.gamma)(a_value, p)
    }

    /// The connection sampled on the basis as a vector elementary
    /// 2-extensor at `p`.
    pub fn elem2_at(&self, p: &Point) -> Result<Elem2Extensor> {
        let n = self.dim;
        let mut slices = Vec::with_capacity(n);
        for i in 0..n {
            slices.push(self.gamma_at(&Multivector::basis_vector(n, i), p)?);
        }
        Elem2Extensor::from_fn(n, |i, j| {
            slices[i].apply(&Multivector::basis_vector(n, j))
        })
    }
}

type OmegaFn = dyn Fn(&Multivector, &Point) -> Result<Multivector> + Send + Sync;

/// A rotation-gauge field: `(a(p), p) -> ω(a)(p)`, bivector-valued and
/// linear in `a(p)`.
#[derive(Clone)]
pub struct GaugeRotationField {
    dim: usize,
    omega: Arc<OmegaFn>,
}

impl GaugeRotationField {
    pub fn custom(
        dim: usize,
        omega: impl Fn(&Multivector, &Point) -> Result<Multivector> + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            omega: Arc::new(omega),
        }
    }

    /// The zero gauge field.
    pub fn zero(dim: usize) -> Self {
        Self::custom(dim, move |_, _| Ok(Multivector::zero(dim)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_at(&self, a_value: &Multivector, p: &Point) -> Result<Multivector> {
        (self.omega)(a_value, p)
    }

    /// The gauge field sampled on the basis as a (1,2)-extensor at `p`.
    pub fn extensor12_at(&self, p: &Point) -> Result<Extensor12> {
        let n = self.dim;
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            images.push(self.omega_at(&Multivector::basis_vector(n, i), p)?);
        }
        Extensor12::from_images(images)
    }
}

/// The rotation-gauge bivector ω₀(a)(p) of the Levi-Civita connection,
/// evaluated for a frozen vector value.
pub fn omega0_value(ms: &MetricStructure, a_value: &Multivector, p: &Point) -> Result<Multivector> {
    let n = ms.dim();
    let cfg = ms.cfg();
    let g = ms.g_field();
    let g_inv_ext = extend(&ms.g_inv_at(p)?);
    // (e_i·∂₀g)(p) for each basis direction.
    let mut dg = Vec::with_capacity(n);
    for i in 0..n {
        let ei = Multivector::basis_vector(n, i);
        dg.push(deriv_along(&ei, |q| g.eval(q), p, cfg)?);
    }
    let mut acc = Multivector::zero(n);
    for i in 0..n {
        let ei = Multivector::basis_vector(n, i);
        for j in (i + 1)..n {
            let ej = Multivector::basis_vector(n, j);
            let skew = dg[i].apply(&ej) - dg[j].apply(&ei);
            let s = a_value.scalar_product(&skew);
            if s != 0.0 {
                acc = acc + g_inv_ext.apply(&ei.outer(&ej)).scale(s);
            }
        }
    }
    // Ordered pairs double the i < j sum, and the prefactor is -1/4.
    Ok(acc.scale(-0.5))
}

/// The rotation-gauge bivector ω₀(a)(p); zero for a constant metric.
pub fn omega0(ms: &MetricStructure, a: &VectorField, p: &Point) -> Result<Multivector> {
    omega0_value(ms, &a.eval(p)?, p)
}

/// The Levi-Civita connection field of a metric structure.
pub fn levi_civita(ms: &MetricStructure) -> ConnectionField {
    let ms = ms.clone();
    let dim = ms.dim();
    ConnectionField {
        dim,
        kind: ConnectionKind::LeviCivita,
        gamma: Arc::new(move |a_value, p| gamma_value(&ms, None, a_value, p)),
    }
}

/// A g-compatible connection built from an arbitrary bivector-valued
/// gauge field: `γ_a(b) = 1/2 g⁻¹∘(a·∂₀g)(b) + ω(a) ×_g b`.
pub fn gamma_from_omega(ms: &MetricStructure, omega: &GaugeRotationField) -> ConnectionField {
    let ms = ms.clone();
    let omega = omega.clone();
    let dim = ms.dim();
    ConnectionField {
        dim,
        kind: ConnectionKind::FromOmega,
        gamma: Arc::new(move |a_value, p| gamma_value(&ms, Some(&omega), a_value, p)),
    }
}

/// Shared evaluator for Levi-Civita and gauge-built connections.
fn gamma_value(
    ms: &MetricStructure,
    omega: Option<&GaugeRotationField>,
    a_value: &Multivector,
    p: &Point,
) -> Result<Extensor11> {
    let n = ms.dim();
    let g = ms.g_field();
    let dg_a = deriv_along(a_value, |q| g.eval(q), p, ms.cfg())?;
    let sym = ms.g_inv_at(p)?.compose(&dg_a).scaled(0.5);
    let om = match omega {
        Some(w) => {
            let value = w.omega_at(a_value, p)?;
            if !value.is_bivector(1e-12 * (1.0 + value.norm_inf())) {
                return Err(Error::NotBivector);
            }
            value
        }
        None => omega0_value(ms, a_value, p)?,
    };
    let g_op = ms.g_at(p)?;
    let images: Vec<Multivector> = (0..n)
        .map(|j| {
            let ej = Multivector::basis_vector(n, j);
            sym.apply(&ej) + commutator_with(&g_op, &om, &ej)
        })
        .collect();
    Extensor11::from_images(&images)
}

/// Recovers the gauge field of a connection: `ω(a) = 1/2 biv_g[γ_a]`.
pub fn gauge_biv(ms: &MetricStructure, conn: &ConnectionField) -> GaugeRotationField {
    let ms = ms.clone();
    let conn = conn.clone();
    GaugeRotationField::custom(conn.dim(), move |a_value, p| {
        let gam = conn.gamma_at(a_value, p)?;
        Ok(biv_g(&gam, &ms.g_at(p)?, ms.threshold())?.scale(0.5))
    })
}

type DcdoOpFn = dyn Fn(&VectorField, &MultivectorField, &Point) -> Result<Multivector> + Send + Sync;

/// A pair of associated covariant derivative operators (D_a⁺, D_a⁻) on
/// multivector fields, together with the metric structure the pair is
/// meant to be compatible with.
#[derive(Clone)]
pub struct DcdoPair {
    ms: MetricStructure,
    plus: Arc<DcdoOpFn>,
    minus: Arc<DcdoOpFn>,
}

impl DcdoPair {
    pub fn from_ops(
        ms: MetricStructure,
        plus: impl Fn(&VectorField, &MultivectorField, &Point) -> Result<Multivector>
            + Send
            + Sync
            + 'static,
        minus: impl Fn(&VectorField, &MultivectorField, &Point) -> Result<Multivector>
            + Send
            + Sync
            + 'static,
    ) -> Self {
        Self {
            ms,
            plus: Arc::new(plus),
            minus: Arc::new(minus),
        }
    }

    /// The metric structure this pair belongs to.
    pub fn metric(&self) -> &MetricStructure {
        &self.ms
    }

    pub fn dim(&self) -> usize {
        self.ms.dim()
    }

    /// `(D_a⁺ X)(p)`.
    pub fn plus(&self, a: &VectorField, x: &MultivectorField, p: &Point) -> Result<Multivector> {
        (self.plus)(a, x, p)
    }

    /// `(D_a⁻ X)(p)`.
    pub fn minus(&self, a: &VectorField, x: &MultivectorField, p: &Point) -> Result<Multivector> {
        (self.minus)(a, x, p)
    }

    /// Extracts the underlying connection operator λ_a(p) by applying
    /// D_a⁺ to constant basis fields.
    pub fn connection_at(&self, a_value: &Multivector, p: &Point) -> Result<Extensor11> {
        let n = self.dim();
        let a = VectorField::constant(n, a_value.clone());
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let b = Field::constant(n, Multivector::basis_vector(n, j));
            images.push(self.plus(&a, &b, p)?);
        }
        Extensor11::from_images(&images)
    }

    /// The extracted connection as a functional field.
    pub fn connection_field(&self) -> ConnectionField {
        let pair = self.clone();
        ConnectionField::custom(self.dim(), move |a_value, p| pair.connection_at(a_value, p))
    }
}

/// The covariant derivative pair induced by a connection over a metric
/// structure.
pub fn dcdo(ms: &MetricStructure, conn: &ConnectionField) -> DcdoPair {
    assert_eq!(ms.dim(), conn.dim(), "dimension mismatch");
    let cfg = *ms.cfg();
    let conn_plus = conn.clone();
    let conn_minus = conn.clone();
    let plus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let d = dir_deriv(a, x, p, &cfg)?;
        let lam = conn_plus.gamma_at(&a.eval(p)?, p)?;
        Ok(d + generalize(&lam).apply(&x.eval(p)?))
    };
    let minus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let d = dir_deriv(a, x, p, &cfg)?;
        let lam = conn_minus.gamma_at(&a.eval(p)?, p)?;
        Ok(d - generalize(&lam.adjoint()).apply(&x.eval(p)?))
    };
    DcdoPair::from_ops(ms.clone(), plus, minus)
}

/// Which covariant derivative of an extensor field to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CovVariant {
    /// `(∇_a^{++} t)(b) = D_a⁻ t(b) - t(D_a⁺ b)`
    PlusPlus,
    /// `(∇_a^{--} t)(b) = D_a⁺ t(b) - t(D_a⁻ b)`
    MinusMinus,
}

/// Covariant derivative of a (1,1)-extensor field applied to a vector
/// field, evaluated at a point. Vanishes on the metric itself (`++`
/// variant) and on its inverse (`--` variant) when the pair is
/// compatible.
pub fn cov_deriv_extensor(
    pair: &DcdoPair,
    t: &Field<Extensor11>,
    a: &VectorField,
    b: &VectorField,
    p: &Point,
    variant: CovVariant,
) -> Result<Multivector> {
    let n = pair.dim();
    let tb = {
        let (t, b) = (t.clone(), b.clone());
        MultivectorField::new(n, move |q| Ok(t.eval(q)?.apply(&b.eval(q)?)))
    };
    match variant {
        CovVariant::PlusPlus => {
            let outer = pair.minus(a, &tb, p)?;
            let inner = pair.plus(a, b, p)?;
            Ok(outer - t.eval(p)?.apply(&inner))
        }
        CovVariant::MinusMinus => {
            let outer = pair.plus(a, &tb, p)?;
            let inner = pair.minus(a, b, p)?;
            Ok(outer - t.eval(p)?.apply(&inner))
        }
    }
}

/// One randomized evaluation of the compatibility suite.
#[derive(Clone)]
pub struct CompatCase {
    pub point: Point,
    pub a: VectorField,
    pub b: VectorField,
    pub x: MultivectorField,
    pub y: MultivectorField,
}

/// The tolerance used as the compatibility gate on single-derivative
/// identities.
pub const COMPAT_TOLERANCE: f64 = 1e-5;

/// Evaluates the metric-compatibility identities of a connection and its
/// covariant derivative pair over the supplied cases.
///
/// The gate identity is the g-symmetric-part condition
/// `g∘γ_a + γ_a†∘g = a·∂₀g`; the rest exercise the vanishing covariant
/// derivatives of g, g⁻¹ and their extensions, the Ricci-like theorems,
/// and the Leibniz rules for every dressed product.
pub fn compatibility_report(
    ms: &MetricStructure,
    conn: &ConnectionField,
    cases: &[CompatCase],
) -> Result<SuiteReport> {
    let pair = dcdo(ms, conn);
    let n = ms.dim();
    let cfg = ms.cfg();
    let tol = COMPAT_TOLERANCE;

    let mut gs1 = ResidualTracker::new("GS.1", tol);
    let mut mcd1 = ResidualTracker::new("MCD.1", tol);
    let mut mcd1a = ResidualTracker::new("MCD.1a", tol);
    let mut mcd2 = ResidualTracker::new("MCD.2", tol);
    let mut mcd2a = ResidualTracker::new("MCD.2a", tol);
    let mut mcd3 = ResidualTracker::new("MCD.3", tol);
    let mut mcd4 = ResidualTracker::new("MCD.4", tol);
    let mut mcd4b = ResidualTracker::new("MCD.4b", tol);
    let mut leibniz: Vec<(String, ResidualTracker, bool, usize)> = Vec::new();
    // (name, tracker, use_minus_and_inverse, product index)
    for (tag, minus) in [("MCD.5", false), ("MCD.5a", true)] {
        for (k, prod) in ["wedge", "scalar", "lcontr", "rcontr", "clifford"]
            .iter()
            .enumerate()
        {
            leibniz.push((
                format!("{tag}[{prod}]"),
                ResidualTracker::new(format!("{tag}[{prod}]"), tol),
                minus,
                k,
            ));
        }
    }

    let g_field = ms.g_field().clone();
    let g_inv_field = ms.g_inv_field();

    for case in cases {
        let p = &case.point;
        let (a, b, x, y) = (&case.a, &case.b, &case.x, &case.y);
        let a_val = a.eval(p)?;
        let g_op = ms.g_at(p)?;
        let g_inv_op = ms.g_inv_at(p)?;

        // GS.1: g∘γ_a + γ_a†∘g - a·∂₀g = 0 as operators.
        let gam = conn.gamma_at(&a_val, p)?;
        let dg_a = deriv_along(&a_val, |q| g_field.eval(q), p, cfg)?;
        let gs1_op = g_op
            .compose(&gam)
            .add(&gam.adjoint().compose(&g_op))
            .sub(&dg_a);
        gs1.update(gs1_op.norm_inf(), p);

        // MCD.1 / MCD.1a: vanishing covariant derivative of g and g⁻¹.
        let r_mcd1 =
            cov_deriv_extensor(&pair, &g_field, a, b, p, CovVariant::PlusPlus)?.norm_inf();
        mcd1.update(r_mcd1, p);
        let r_mcd1a =
            cov_deriv_extensor(&pair, &g_inv_field, a, b, p, CovVariant::MinusMinus)?.norm_inf();
        mcd1a.update(r_mcd1a, p);

        // MCD.2 / MCD.3: D_a⁻ ĝ(X) = ĝ(D_a⁺ X) on two independent fields.
        let gx = extended_apply_field(&g_field, x);
        let r_mcd2 = (pair.minus(a, &gx, p)? - extend(&g_op).apply(&pair.plus(a, x, p)?))
            .norm_inf();
        mcd2.update(r_mcd2, p);
        let gy = extended_apply_field(&g_field, y);
        let r_mcd3 = (pair.minus(a, &gy, p)? - extend(&g_op).apply(&pair.plus(a, y, p)?))
            .norm_inf();
        mcd3.update(r_mcd3, p);

        // MCD.2a: D_a⁺ ĝ⁻¹(X) = ĝ⁻¹(D_a⁻ X).
        let ginv_x = extended_apply_field(&g_inv_field, x);
        let r_mcd2a = (pair.plus(a, &ginv_x, p)?
            - extend(&g_inv_op).apply(&pair.minus(a, x, p)?))
        .norm_inf();
        mcd2a.update(r_mcd2a, p);

        // Ricci-like theorems.
        let dx = pair.plus(a, x, p)?;
        let dy = pair.plus(a, y, p)?;
        let dot_field = ms.g_scalar_field(x, y);
        let lhs = dir_deriv(a, &dot_field, p, cfg)?;
        let x_p = x.eval(p)?;
        let y_p = y.eval(p)?;
        let rhs = scalar_with(&g_op, &dx, &y_p) + scalar_with(&g_op, &x_p, &dy);
        mcd4.update((lhs - rhs).abs(), p);

        let dxm = pair.minus(a, x, p)?;
        let dym = pair.minus(a, y, p)?;
        let dot_inv_field = {
            let (gi, x, y) = (g_inv_field.clone(), x.clone(), y.clone());
            Field::new(n, move |q| {
                Ok(scalar_with(&gi.eval(q)?, &x.eval(q)?, &y.eval(q)?))
            })
        };
        let lhs_b = dir_deriv(a, &dot_inv_field, p, cfg)?;
        let rhs_b = scalar_with(&g_inv_op, &dxm, &y_p) + scalar_with(&g_inv_op, &x_p, &dym);
        mcd4b.update((lhs_b - rhs_b).abs(), p);

        // Leibniz rules for every dressed product.
        for (_, tracker, use_minus, prod) in leibniz.iter_mut() {
            let op_field = if *use_minus {
                g_inv_field.clone()
            } else {
                g_field.clone()
            };
            let op_p = if *use_minus {
                g_inv_op.clone()
            } else {
                g_op.clone()
            };
            let prod_idx = *prod;
            let product_field = {
                let (opf, x, y) = (op_field, x.clone(), y.clone());
                MultivectorField::new(n, move |q| {
                    let op_q = opf.eval(q)?;
                    Ok(apply_product(prod_idx, &op_q, &x.eval(q)?, &y.eval(q)?))
                })
            };
            let (d_prod, dx_here, dy_here) = if *use_minus {
                (pair.minus(a, &product_field, p)?, dxm.clone(), dym.clone())
            } else {
                (pair.plus(a, &product_field, p)?, dx.clone(), dy.clone())
            };
            let rhs = apply_product(prod_idx, &op_p, &dx_here, &y_p)
                + apply_product(prod_idx, &op_p, &x_p, &dy_here);
            tracker.update((d_prod - rhs).norm_inf(), p);
        }
    }

    let mut entries = vec![
        gs1.finish(),
        mcd1.finish(),
        mcd1a.finish(),
        mcd2.finish(),
        mcd2a.finish(),
        mcd3.finish(),
        mcd4.finish(),
        mcd4b.finish(),
    ];
    entries.extend(leibniz.into_iter().map(|(_, t, _, _)| t.finish()));
    Ok(SuiteReport::new("compatibility", entries))
}

/// The field `p -> ext(t(p))(x(p))`.
fn extended_apply_field(t: &Field<Extensor11>, x: &MultivectorField) -> MultivectorField {
    let (t, x) = (t.clone(), x.clone());
    MultivectorField::new(x.dim(), move |q| Ok(extend(&t.eval(q)?).apply(&x.eval(q)?)))
}

/// Dressed products indexed for the Leibniz sweep: ∧, ·, ⌟, ⌞, Clifford.
fn apply_product(idx: usize, op: &Extensor11, x: &Multivector, y: &Multivector) -> Multivector {
    match idx {
        0 => x.outer(y),
        1 => Multivector::scalar(x.dim(), scalar_with(op, x, y)),
        2 => crate::metric::contract_left_with(op, x, y),
        3 => crate::metric::contract_right_with(op, x, y),
        4 => clifford_with(op, x, y),
        _ => unreachable!(),
    }
}

/// One randomized evaluation of the Levi-Civita identity suite.
#[derive(Clone)]
pub struct LeviCivitaCase {
    pub point: Point,
    pub a: VectorField,
    pub b: VectorField,
    pub c: VectorField,
    pub x: Multivector,
}

/// Evaluates the defining identities of the Levi-Civita connection:
/// the decomposition of the Christoffel operator, the cyclic property
/// and gauge recovery of ω₀, the symmetry of λ, the g-symmetric/skew
/// split, the two routes to the generalized Λ_a, and the relation of
/// D_a⁺ to the Christoffel operator of the second kind.
pub fn levi_civita_suite(ms: &MetricStructure, cases: &[LeviCivitaCase]) -> Result<SuiteReport> {
    let conn = levi_civita(ms);
    let pair = dcdo(ms, &conn);
    let gauge = gauge_biv(ms, &conn);
    let cfg = ms.cfg();
    let n = ms.dim();

    let mut lcc1 = ResidualTracker::new("LCC.1", 1e-5);
    let mut cyclic = ResidualTracker::new("LCC.3a", 1e-6);
    let mut recovery = ResidualTracker::new("LCC.3b", 1e-6);
    let mut symmetry = ResidualTracker::new("LCC.3c", 1e-6);
    let mut split_sym = ResidualTracker::new("LCC.3d", 1e-6);
    let mut split_skew = ResidualTracker::new("LCC.3f", 1e-6);
    let mut lambda_two_ways = ResidualTracker::new("LCC.4", 1e-6);
    let mut fundamental = ResidualTracker::new("LCC.3a3", 1e-5);

    for case in cases {
        let p = &case.point;
        let (a, b, c) = (&case.a, &case.b, &case.c);
        let a_val = a.eval(p)?;
        let b_val = b.eval(p)?;
        let c_val = c.eval(p)?;
        let g_op = ms.g_at(p)?;
        let gam_a = conn.gamma_at(&a_val, p)?;
        let om_a = omega0_value(ms, &a_val, p)?;

        // LCC.1: [a,b,c] = (a·∂₀b + λ(a,b)) ·_g c.
        let first = ms.christoffel_first(a, b, c, p)?;
        let dab = dir_deriv(a, b, p, cfg)?;
        let decomposition = scalar_with(&g_op, &(dab + gam_a.apply(&b_val)), &c_val);
        lcc1.update((first - decomposition).abs(), p);

        // LCC.3a: cyclic property of ω₀.
        let om_b = omega0_value(ms, &b_val, p)?;
        let om_c = omega0_value(ms, &c_val, p)?;
        let term = |om: &Multivector, u: &Multivector, v: &Multivector| -> f64 {
            scalar_with(&g_op, &commutator_with(&g_op, om, u), v)
        };
        let cyc = term(&om_a, &b_val, &c_val) + term(&om_b, &c_val, &a_val)
            + term(&om_c, &a_val, &b_val);
        cyclic.update(cyc.abs(), p);

        // LCC.3b: ω₀(a) = 1/2 biv_g[λ_a].
        let recovered = gauge.omega_at(&a_val, p)?;
        recovery.update((recovered - om_a.clone()).norm_inf(), p);

        // LCC.3c: λ(a,b) = λ(b,a) on frozen values.
        let gam_b = conn.gamma_at(&b_val, p)?;
        symmetry.update((gam_a.apply(&b_val) - gam_b.apply(&a_val)).norm_inf(), p);

        // LCC.3d / LCC.3f: g-symmetric and g-skew parts of λ_a.
        let g_adj = gam_a.metric_adjoint(&g_op, ms.threshold())?;
        let sym_part = gam_a.add(&g_adj).scaled(0.5);
        let skew_part = gam_a.sub(&g_adj).scaled(0.5);
        let dg_a = deriv_along(&a_val, |q| ms.g_field().eval(q), p, cfg)?;
        let expected_sym = ms.g_inv_at(p)?.compose(&dg_a).scaled(0.5);
        split_sym.update(sym_part.sub(&expected_sym).norm_inf(), p);
        let skew_applied = skew_part.apply(&b_val);
        let expected_skew = commutator_with(&g_op, &om_a, &b_val);
        split_skew.update((skew_applied - expected_skew).norm_inf(), p);

        // LCC.4: generalized of λ_a against the closed form
        // Λ_a(X) = 1/2 ĝ⁻¹∘(a·∂₀ĝ)(X) + ω₀(a) ×_g X.
        let x = &case.x;
        let via_generalized = generalize(&gam_a).apply(x);
        let dg_ext = crate::fields::dir_deriv_extended(
            &VectorField::constant(n, a_val.clone()),
            ms.g_field(),
            x,
            p,
            cfg,
        )?;
        let closed = extend(&ms.g_inv_at(p)?).apply(&dg_ext).scale(0.5)
            + commutator_with(&g_op, &om_a, x);
        lambda_two_ways.update((via_generalized - closed).norm_inf(), p);

        // LCC.3a3: (D_a⁺ b) · c = {c; a,b}.
        let d_plus_b = pair.plus(a, b, p)?;
        let lhs = d_plus_b.scalar_product(&c_val);
        let rhs = ms.christoffel_second(a, b, c, p)?;
        fundamental.update((lhs - rhs).abs(), p);
    }

    Ok(SuiteReport::new(
        "levi-civita",
        vec![
            lcc1.finish(),
            cyclic.finish(),
            recovery.finish(),
            symmetry.finish(),
            split_sym.finish(),
            split_skew.finish(),
            lambda_two_ways.finish(),
            fundamental.finish(),
        ],
    ))
}
