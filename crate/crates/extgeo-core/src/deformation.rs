//! Gauge metric fields and deformation of covariant derivative pairs.
//!
//! Every metric field g of constant signature factors pointwise as
//! `g = h† ∘ η ∘ h` with η the constant orthogonal metric
//! `diag(+1..+1, -1..-1)` of the same signature and h non-singular. The
//! factor h is built spectrally: diagonalize `g(p) = Q D Qᵀ`, order the
//! eigenvalues (positives by descending magnitude, then negatives by
//! descending magnitude), fix each eigenvector's sign by making its
//! first non-negligible component positive, and set `h = |D|^{1/2} Qᵀ`.
//! This makes h a deterministic field, continuous away from eigenvalue
//! crossings; across crossings only pointwise identities are guaranteed.
//!
//! A g-compatible pair (D_a⁺, D_a⁻) deforms to the η-compatible pair
//!
//! ```text
//! ηD_a⁺ X = ĥ( D_a⁺ ĥ⁻¹(X) ),     ηD_a⁻ X = ĥ*( D_a⁻ ĥ†(X) ),
//! ```
//!
//! where `h* = (h⁻¹)† = (h†)⁻¹` and hats denote outermorphism extension.
//! The deformed pair intertwines with the original through
//! `ĥ(D_a⁺X) = ηD_a⁺ ĥ(X)` and `ĥ*(D_a⁻X) = ηD_a⁻ ĥ*(X)`, and the
//! h⁻¹-deformation inverts the construction.

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::extensor::{extend, Extensor11};
use crate::fields::{ExtensorField, Field, MultivectorField, Point, VectorField};
use crate::connection::{cov_deriv_extensor, CovVariant, DcdoPair};
use crate::metric::MetricStructure;
use crate::report::{ResidualTracker, SuiteReport};

/// Residual gate below which an input pair counts as compatible.
pub const DEFORM_COMPAT_GATE: f64 = 1e-5;
/// Pointwise tolerance on the reconstruction `h† ∘ η ∘ h = g`.
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;

/// Eigendecomposition of a symmetric operator by cyclic Jacobi rotations.
///
/// Returns eigenvalues and the matrix Q of eigenvector columns with
/// `A = Q D Qᵀ`. Deterministic: fixed sweep order, off-diagonal norm
/// tolerance 1e-12 (relative to the matrix scale), no dependence on
/// evaluation order. Exactly diagonal inputs are returned untouched.
pub fn eigen_sym(a: &Extensor11) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.dim();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut q: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let scale: f64 = m
        .iter()
        .flatten()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    let tol = 1e-12 * scale;

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for r in p + 1..n {
                off += m[p][r] * m[p][r];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apr = m[p][r];
                if apr.abs() <= tol * 1e-3 {
                    continue;
                }
                let theta = (m[r][r] - m[p][p]) / (2.0 * apr);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    let s = if theta > 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let (mpp, mrr) = (m[p][p], m[r][r]);
                m[p][p] = mpp - t * apr;
                m[r][r] = mrr + t * apr;
                m[p][r] = 0.0;
                m[r][p] = 0.0;
                for k in 0..n {
                    if k != p && k != r {
                        let (mkp, mkr) = (m[k][p], m[k][r]);
                        m[k][p] = c * mkp - s * mkr;
                        m[p][k] = m[k][p];
                        m[k][r] = s * mkp + c * mkr;
                        m[r][k] = m[k][r];
                    }
                }
                for k in 0..n {
                    let (qkp, qkr) = (q[k][p], q[k][r]);
                    q[k][p] = c * qkp - s * qkr;
                    q[k][r] = s * qkp + c * qkr;
                }
            }
        }
    }

    let eigenvalues = (0..n).map(|i| m[i][i]).collect();
    (eigenvalues, q)
}

/// The orthogonal metric `η = diag(+1 × p, -1 × q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalMetric {
    positives: usize,
    negatives: usize,
}

impl OrthogonalMetric {
    pub fn new(positives: usize, negatives: usize) -> Self {
        Self {
            positives,
            negatives,
        }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.positives, self.negatives)
    }

    pub fn dim(&self) -> usize {
        self.positives + self.negatives
    }

    /// The constant diagonal operator.
    pub fn operator(&self) -> Extensor11 {
        let entries: Vec<f64> = (0..self.dim())
            .map(|i| if i < self.positives { 1.0 } else { -1.0 })
            .collect();
        Extensor11::diagonal(&entries)
    }

    /// The constant metric structure (U, η) with the given differentiation
    /// setup.
    pub fn metric_structure(&self, cfg: crate::fields::DiffConfig, threshold: f64) -> MetricStructure {
        MetricStructure::constant(self.operator(), cfg, threshold)
    }
}

/// Counts of positive and negative eigenvalues of g(p).
pub fn signature_of(ms: &MetricStructure, p: &Point) -> Result<(usize, usize)> {
    let g = ms.g_at(p)?;
    let (eigenvalues, _) = eigen_sym(&g);
    let mut pos = 0;
    let mut neg = 0;
    for lam in &eigenvalues {
        if lam.abs() <= ms.threshold() {
            return Err(Error::NonDegenerateViolation {
                det: lam.abs(),
                threshold: ms.threshold(),
            });
        }
        if *lam > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok((pos, neg))
}

/// A non-singular gauge field h with `g = h† ∘ η ∘ h`, together with the
/// orthogonal metric η and the source structure.
#[derive(Clone)]
pub struct GaugeMetricField {
    ms: MetricStructure,
    eta: OrthogonalMetric,
    h: ExtensorField,
}

impl GaugeMetricField {
    /// Wraps a user-supplied gauge field after validating the
    /// reconstruction `h† ∘ η ∘ h = g` and non-singularity at the probe
    /// points.
    pub fn from_field(
        h: ExtensorField,
        eta: OrthogonalMetric,
        ms: &MetricStructure,
        probes: &[Point],
    ) -> Result<Self> {
        let eta_op = eta.operator();
        for p in probes {
            let h_p = h.eval(p)?;
            let det = h_p.det();
            if det.abs() <= ms.threshold() {
                return Err(Error::NonDegenerateViolation {
                    det: det.abs(),
                    threshold: ms.threshold(),
                });
            }
            let rebuilt = h_p.adjoint().compose(&eta_op).compose(&h_p);
            let residual = rebuilt.sub(&ms.g_at(p)?).norm_inf();
            if residual > RECONSTRUCTION_TOLERANCE {
                return Err(Error::Invalid(format!(
                    "h does not reconstruct g at {:?} (residual {residual:.3e})",
                    p.coords()
                )));
            }
        }
        Ok(Self {
            ms: ms.clone(),
            eta,
            h,
        })
    }

    pub fn dim(&self) -> usize {
        self.ms.dim()
    }

    pub fn eta(&self) -> &OrthogonalMetric {
        &self.eta
    }

    /// The metric structure the gauge field factors.
    pub fn source_metric(&self) -> &MetricStructure {
        &self.ms
    }

    pub fn h_field(&self) -> &ExtensorField {
        &self.h
    }

    pub fn h_at(&self, p: &Point) -> Result<Extensor11> {
        self.h.eval(p)
    }

    /// `h†` at a point.
    pub fn h_adjoint_at(&self, p: &Point) -> Result<Extensor11> {
        Ok(self.h.eval(p)?.adjoint())
    }

    /// `h⁻¹` at a point.
    pub fn h_inv_at(&self, p: &Point) -> Result<Extensor11> {
        self.h.eval(p)?.inverse(self.ms.threshold())
    }

    /// `h* = (h⁻¹)†` at a point.
    pub fn h_star_at(&self, p: &Point) -> Result<Extensor11> {
        Ok(self.h_inv_at(p)?.adjoint())
    }
}

/// Builds a gauge metric field for g by pointwise spectral factorization.
///
/// The signature is required to be constant over the probe points;
/// a change is reported as an error rather than silently producing a
/// discontinuous η.
pub fn gauge_field(
    ms: &MetricStructure,
    probes: &[Point],
) -> Result<(GaugeMetricField, OrthogonalMetric)> {
    if probes.is_empty() {
        return Err(Error::Invalid(
            "at least one probe point is required to fix the signature".into(),
        ));
    }
    let sig0 = signature_of(ms, &probes[0])?;
    for p in &probes[1..] {
        let sig = signature_of(ms, p)?;
        if sig != sig0 {
            return Err(Error::SignatureChange(sig0.0, sig0.1, sig.0, sig.1));
        }
    }
    let eta = OrthogonalMetric::new(sig0.0, sig0.1);
    let ms_for_h = ms.clone();
    let expected_sig = sig0;
    let h = ExtensorField::new(ms.dim(), move |p| {
        spectral_gauge(&ms_for_h, p, expected_sig)
    });
    let gauge = GaugeMetricField {
        ms: ms.clone(),
        eta: eta.clone(),
        h,
    };
    Ok((gauge, eta))
}

/// Spectral construction of h(p) with the deterministic ordering and sign
/// convention described in the module docs.
fn spectral_gauge(ms: &MetricStructure, p: &Point, expected: (usize, usize)) -> Result<Extensor11> {
    let n = ms.dim();
    let g = ms.g_at(p)?;
    let (eigenvalues, q) = eigen_sym(&g);

    let mut indexed: Vec<(f64, usize)> = eigenvalues.iter().cloned().zip(0..n).collect();
    for (lam, _) in &indexed {
        if lam.abs() <= ms.threshold() {
            return Err(Error::NonDegenerateViolation {
                det: lam.abs(),
                threshold: ms.threshold(),
            });
        }
    }
    // Positives first (descending magnitude), then negatives (descending
    // magnitude); stable with respect to the Jacobi output on ties.
    let mut positives: Vec<(f64, usize)> =
        indexed.iter().cloned().filter(|(l, _)| *l > 0.0).collect();
    let mut negatives: Vec<(f64, usize)> =
        indexed.iter().cloned().filter(|(l, _)| *l < 0.0).collect();
    positives.sort_by(|a, b| b.0.abs().partial_cmp(&a.0.abs()).unwrap());
    negatives.sort_by(|a, b| b.0.abs().partial_cmp(&a.0.abs()).unwrap());
    if (positives.len(), negatives.len()) != expected {
        return Err(Error::SignatureChange(
            expected.0,
            expected.1,
            positives.len(),
            negatives.len(),
        ));
    }
    indexed = positives;
    indexed.extend(negatives);

    let mut h = Extensor11::zero(n);
    for (row, (lam, col)) in indexed.iter().enumerate() {
        // Canonical eigenvector sign: first non-negligible component positive.
        let mut flip = 1.0;
        for i in 0..n {
            let v = q[i][*col];
            if v.abs() > 1e-12 {
                if v < 0.0 {
                    flip = -1.0;
                }
                break;
            }
        }
        let w = lam.abs().sqrt();
        for j in 0..n {
            h.set(row, j, w * flip * q[j][*col]);
        }
    }
    Ok(h)
}

/// Max residual of the compatibility gate `g∘γ_a + γ_a†∘g = a·∂₀g` for
/// the pair's extracted connection over the probes, with basis directions.
fn compatibility_gate_residual(pair: &DcdoPair, probes: &[Point]) -> Result<f64> {
    let ms = pair.metric();
    let n = ms.dim();
    let mut worst = 0.0f64;
    for p in probes {
        let g_op = ms.g_at(p)?;
        for i in 0..n {
            let a_val = Multivector::basis_vector(n, i);
            let gam = pair.connection_at(&a_val, p)?;
            let dg = crate::fields::deriv_along(&a_val, |q| ms.g_field().eval(q), p, ms.cfg())?;
            let res = g_op
                .compose(&gam)
                .add(&gam.adjoint().compose(&g_op))
                .sub(&dg)
                .norm_inf();
            worst = worst.max(res);
        }
    }
    Ok(worst)
}

/// Deforms a g-compatible pair into the η-compatible pair of the gauge
/// field h. The input pair is gated on compatibility at the probe points.
pub fn deform_dcdo(pair: &DcdoPair, h: &GaugeMetricField, probes: &[Point]) -> Result<DcdoPair> {
    let residual = compatibility_gate_residual(pair, probes)?;
    if residual > DEFORM_COMPAT_GATE {
        return Err(Error::Compatibility { residual });
    }
    let n = pair.dim();
    let eta_ms = h
        .eta()
        .metric_structure(*pair.metric().cfg(), pair.metric().threshold());

    let (inner_plus, h_plus) = (pair.clone(), h.clone());
    let plus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let hx_inv = {
            let (h, x) = (h_plus.clone(), x.clone());
            MultivectorField::new(n, move |q| Ok(extend(&h.h_inv_at(q)?).apply(&x.eval(q)?)))
        };
        let inner = inner_plus.plus(a, &hx_inv, p)?;
        Ok(extend(&h_plus.h_at(p)?).apply(&inner))
    };
    let (inner_minus, h_minus) = (pair.clone(), h.clone());
    let minus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let hx_adj = {
            let (h, x) = (h_minus.clone(), x.clone());
            MultivectorField::new(n, move |q| {
                Ok(extend(&h.h_adjoint_at(q)?).apply(&x.eval(q)?))
            })
        };
        let inner = inner_minus.minus(a, &hx_adj, p)?;
        Ok(extend(&h_minus.h_star_at(p)?).apply(&inner))
    };
    Ok(DcdoPair::from_ops(eta_ms, plus, minus))
}

/// Inverts the deformation: maps an η-compatible pair back to the
/// g-compatible pair of the same gauge field.
pub fn deform_dcdo_inverse(
    pair_eta: &DcdoPair,
    h: &GaugeMetricField,
    probes: &[Point],
) -> Result<DcdoPair> {
    let residual = compatibility_gate_residual(pair_eta, probes)?;
    if residual > DEFORM_COMPAT_GATE {
        return Err(Error::Compatibility { residual });
    }
    let n = pair_eta.dim();
    let g_ms = h.source_metric().clone();

    let (inner_plus, h_plus) = (pair_eta.clone(), h.clone());
    let plus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let hx = {
            let (h, x) = (h_plus.clone(), x.clone());
            MultivectorField::new(n, move |q| Ok(extend(&h.h_at(q)?).apply(&x.eval(q)?)))
        };
        let inner = inner_plus.plus(a, &hx, p)?;
        Ok(extend(&h_plus.h_inv_at(p)?).apply(&inner))
    };
    let (inner_minus, h_minus) = (pair_eta.clone(), h.clone());
    let minus = move |a: &VectorField, x: &MultivectorField, p: &Point| {
        let hx_star = {
            let (h, x) = (h_minus.clone(), x.clone());
            MultivectorField::new(n, move |q| Ok(extend(&h.h_star_at(q)?).apply(&x.eval(q)?)))
        };
        let inner = inner_minus.minus(a, &hx_star, p)?;
        Ok(extend(&h_minus.h_adjoint_at(p)?).apply(&inner))
    };
    Ok(DcdoPair::from_ops(g_ms, plus, minus))
}

/// One randomized evaluation of the deformation suite.
#[derive(Clone)]
pub struct DeformCase {
    pub point: Point,
    pub a: VectorField,
    pub b: VectorField,
    pub x: MultivectorField,
    /// A smooth non-singular extensor field used for the covariant
    /// derivative inverse rule.
    pub tau: ExtensorField,
}

/// Verifies the deformation chain for a metric structure: reconstruction
/// of g from (h, η), η-compatibility of the deformed pair, the
/// intertwining relations, the forward-then-inverse round trip, coherence
/// of extended maps, and the inverse rule for extensor covariant
/// derivatives.
pub fn deformation_suite(
    ms: &MetricStructure,
    pair: &DcdoPair,
    probes: &[Point],
    cases: &[DeformCase],
) -> Result<SuiteReport> {
    let (h, eta) = gauge_field(ms, probes)?;
    let deformed = deform_dcdo(pair, &h, probes)?;
    let restored = deform_dcdo_inverse(&deformed, &h, probes)?;
    let eta_op = eta.operator();
    let eta_field = Field::constant(ms.dim(), eta_op.clone());

    let mut reconstruction = ResidualTracker::new("MCD.6", RECONSTRUCTION_TOLERANCE);
    let mut eta_compat = ResidualTracker::new("MCD.1[eta]", 1e-5);
    let mut mcd7a = ResidualTracker::new("MCD.7a", 1e-5);
    let mut mcd7b = ResidualTracker::new("MCD.7b", 1e-5);
    let mut roundtrip = ResidualTracker::new("DEFORM-ROUNDTRIP", 1e-5);
    let mut ext_inv = ResidualTracker::new("EXTEND-INVERSE", 1e-10);
    let mut ext_adj = ResidualTracker::new("EXTEND-ADJOINT", 1e-10);
    let mut inverse_rule = ResidualTracker::new("COVDERIV-INVERSE-RULE", 1e-5);

    for case in cases {
        let p = &case.point;
        let (a, b, x) = (&case.a, &case.b, &case.x);
        let h_p = h.h_at(p)?;

        // g = h† ∘ η ∘ h pointwise.
        let rebuilt = h_p.adjoint().compose(&eta_op).compose(&h_p);
        reconstruction.update(rebuilt.sub(&ms.g_at(p)?).norm_inf(), p);

        // η-compatibility of the deformed pair.
        let r_eta = cov_deriv_extensor(&deformed, &eta_field, a, b, p, CovVariant::PlusPlus)?;
        eta_compat.update(r_eta.norm_inf(), p);

        // Intertwining: ĥ(D_a⁺X) = ηD_a⁺ ĥ(X) and ĥ*(D_a⁻X) = ηD_a⁻ ĥ*(X).
        let hx = {
            let (h, x) = (h.clone(), x.clone());
            MultivectorField::new(ms.dim(), move |q| Ok(extend(&h.h_at(q)?).apply(&x.eval(q)?)))
        };
        let lhs_a = extend(&h_p).apply(&pair.plus(a, x, p)?);
        let rhs_a = deformed.plus(a, &hx, p)?;
        mcd7a.update((lhs_a - rhs_a).norm_inf(), p);

        let hx_star = {
            let (h, x) = (h.clone(), x.clone());
            MultivectorField::new(ms.dim(), move |q| {
                Ok(extend(&h.h_star_at(q)?).apply(&x.eval(q)?))
            })
        };
        let lhs_b = extend(&h.h_star_at(p)?).apply(&pair.minus(a, x, p)?);
        let rhs_b = deformed.minus(a, &hx_star, p)?;
        mcd7b.update((lhs_b - rhs_b).norm_inf(), p);

        // Forward-then-inverse deformation returns the original action.
        let plus_diff = (restored.plus(a, x, p)? - pair.plus(a, x, p)?).norm_inf();
        let minus_diff = (restored.minus(a, x, p)? - pair.minus(a, x, p)?).norm_inf();
        roundtrip.update(plus_diff.max(minus_diff), p);

        // Extended-map coherence on the multivector value x(p).
        let x_p = x.eval(p)?;
        let h_inv = h.h_inv_at(p)?;
        let round = extend(&h_inv).apply(&extend(&h_p).apply(&x_p));
        ext_inv.update((round - x_p.clone()).norm_inf(), p);
        let y_p = b.eval(p)?.outer(&a.eval(p)?) + x_p.clone();
        let lhs_adj = extend(&h_p.adjoint()).apply(&x_p).scalar_product(&y_p);
        let rhs_adj = x_p.scalar_product(&extend(&h_p).apply(&y_p));
        ext_adj.update((lhs_adj - rhs_adj).abs(), p);

        // (∇_a^{++} τ) ∘ τ⁻¹ + τ ∘ (∇_a^{--} τ⁻¹) = 0 applied to b.
        let tau = &case.tau;
        let thr = ms.threshold();
        let tau_inv = {
            let tau = tau.clone();
            ExtensorField::new(ms.dim(), move |q| tau.eval(q)?.inverse(thr))
        };
        let tau_p = tau.eval(p)?;
        let tau_inv_b = {
            let (ti, b) = (tau_inv.clone(), b.clone());
            VectorField::new(ms.dim(), move |q| Ok(ti.eval(q)?.apply(&b.eval(q)?)))
        };
        let term1 = cov_deriv_extensor(pair, tau, a, &tau_inv_b, p, CovVariant::PlusPlus)?;
        let term2 =
            tau_p.apply(&cov_deriv_extensor(pair, &tau_inv, a, b, p, CovVariant::MinusMinus)?);
        inverse_rule.update((term1 + term2).norm_inf(), p);
    }

    Ok(SuiteReport::new(
        "deformation",
        vec![
            reconstruction.finish(),
            eta_compat.finish(),
            mcd7a.finish(),
            mcd7b.finish(),
            roundtrip.finish(),
            ext_inv.finish(),
            ext_adj.finish(),
            inverse_rule.finish(),
        ],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{dcdo, levi_civita};
    use crate::fields::{DiffConfig, ScalarField};

    fn probes(dim: usize) -> Vec<Point> {
        vec![
            Point::origin(dim),
            Point::new((0..dim).map(|i| 0.1 + 0.05 * i as f64).collect()),
            Point::new((0..dim).map(|i| -0.2 + 0.1 * i as f64).collect()),
        ]
    }

    #[test]
    fn signature_of_identity() {
        let ms = MetricStructure::euclidean(3);
        assert_eq!(signature_of(&ms, &Point::origin(3)).unwrap(), (3, 0));
    }

    #[test]
    fn signature_of_indefinite_diagonal() {
        let ms = MetricStructure::constant(
            Extensor11::diagonal(&[1.0, 1.0, 1.0, -1.0]),
            DiffConfig::default(),
            1e-10,
        );
        assert_eq!(signature_of(&ms, &Point::origin(4)).unwrap(), (3, 1));
    }

    #[test]
    fn signature_of_conformal_is_definite_everywhere() {
        let ms = MetricStructure::conformal(
            2,
            ScalarField::from_fn(2, |p| p.coord(0)),
            DiffConfig::default(),
            1e-10,
        );
        for p in probes(2) {
            assert_eq!(signature_of(&ms, &p).unwrap(), (2, 0));
        }
    }

    #[test]
    fn gauge_field_identity() {
        let ms = MetricStructure::euclidean(2);
        let (h, eta) = gauge_field(&ms, &probes(2)).unwrap();
        assert_eq!(eta.signature(), (2, 0));
        let h0 = h.h_at(&Point::origin(2)).unwrap();
        assert!(h0.approx_eq(&Extensor11::identity(2), 1e-12));
    }

    #[test]
    fn gauge_field_scalar_metric() {
        let ms = MetricStructure::constant(
            Extensor11::scaling(2, 4.0),
            DiffConfig::default(),
            1e-10,
        );
        let (h, _) = gauge_field(&ms, &probes(2)).unwrap();
        let h0 = h.h_at(&Point::origin(2)).unwrap();
        assert!(h0.approx_eq(&Extensor11::scaling(2, 2.0), 1e-12));
    }

    #[test]
    fn gauge_field_conformal_is_pointwise_square_root() {
        let ms = MetricStructure::conformal(
            2,
            ScalarField::from_fn(2, |p| p.coord(0)),
            DiffConfig::default(),
            1e-10,
        );
        let (h, eta) = gauge_field(&ms, &probes(2)).unwrap();
        assert_eq!(eta.signature(), (2, 0));
        let p = Point::new(vec![0.3, -0.1]);
        let expected = Extensor11::scaling(2, (0.3f64).exp());
        assert!(h.h_at(&p).unwrap().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn gauge_field_indefinite_constant() {
        let ms = MetricStructure::constant(
            Extensor11::diagonal(&[1.0, -4.0]),
            DiffConfig::default(),
            1e-10,
        );
        let (h, eta) = gauge_field(&ms, &probes(2)).unwrap();
        assert_eq!(eta.signature(), (1, 1));
        let h0 = h.h_at(&Point::origin(2)).unwrap();
        assert!(h0.approx_eq(&Extensor11::diagonal(&[1.0, 2.0]), 1e-12));
        let rebuilt = h0.adjoint().compose(&eta.operator()).compose(&h0);
        assert!(rebuilt.approx_eq(&Extensor11::diagonal(&[1.0, -4.0]), 1e-12));
    }

    #[test]
    fn signature_change_is_detected() {
        // diag(x1, 1) flips signature across x1 = 0.
        let g = ExtensorField::from_fn(2, |p| Extensor11::diagonal(&[p.coord(0), 1.0]));
        let ms = MetricStructure::new(g, DiffConfig::default(), 1e-10);
        let pts = vec![Point::new(vec![1.0, 0.0]), Point::new(vec![-1.0, 0.0])];
        match gauge_field(&ms, &pts) {
            Err(Error::SignatureChange(..)) => {}
            other => panic!("expected signature change, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn identity_gauge_deformation_is_identity() {
        let ms = MetricStructure::euclidean(2);
        let pair = dcdo(&ms, &levi_civita(&ms));
        let (h, _) = gauge_field(&ms, &probes(2)).unwrap();
        let deformed = deform_dcdo(&pair, &h, &probes(2)).unwrap();
        let x = MultivectorField::from_fn(2, |p| {
            let mut m = Multivector::zero(2);
            m.set_coeff(0b01, (0.9 * p.coord(1)).sin());
            m.set_coeff(0b11, 0.4 * p.coord(0));
            m
        });
        let a = VectorField::basis_vector(2, 0);
        let p = Point::new(vec![0.2, 0.4]);
        let before = pair.plus(&a, &x, &p).unwrap();
        let after = deformed.plus(&a, &x, &p).unwrap();
        assert!(before.approx_eq(&after, 1e-10));
    }

    #[test]
    fn incompatible_pair_is_rejected() {
        let ms = MetricStructure::conformal(
            2,
            ScalarField::from_fn(2, |p| p.coord(0)),
            DiffConfig::default(),
            1e-10,
        );
        // A deliberately broken connection: adds a g-symmetric defect.
        let broken = crate::connection::ConnectionField::custom(2, {
            let lc = levi_civita(&ms);
            move |a_val, p| {
                let base = lc.gamma_at(a_val, p)?;
                let defect = Extensor11::scaling(2, 0.01 * a_val.coeff(0b01));
                Ok(base.add(&defect))
            }
        });
        let pair = dcdo(&ms, &broken);
        let (h, _) = gauge_field(&ms, &probes(2)).unwrap();
        match deform_dcdo(&pair, &h, &probes(2)) {
            Err(Error::Compatibility { residual }) => assert!(residual > 1e-3),
            other => panic!("expected compatibility error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn constant_gauge_of_flat_pair_has_zero_connection() {
        // Flat η-pair deformed through a constant h: the resulting
        // connection h⁻¹∘(a·∂₀h) vanishes.
        let eta = OrthogonalMetric::new(1, 1);
        let eta_ms = eta.metric_structure(DiffConfig::default(), 1e-10);
        let eta_pair = dcdo(&eta_ms, &levi_civita(&eta_ms));
        let g_op = Extensor11::diagonal(&[1.0, -4.0]);
        let g_ms = MetricStructure::constant(g_op, DiffConfig::default(), 1e-10);
        let (h, _) = gauge_field(&g_ms, &probes(2)).unwrap();
        let g_pair = deform_dcdo_inverse(&eta_pair, &h, &probes(2)).unwrap();
        let lam = g_pair
            .connection_at(&Multivector::vector(2, &[1.0, 0.5]), &Point::origin(2))
            .unwrap();
        assert!(lam.norm_inf() < 1e-10, "connection {lam:?}");
    }

    #[test]
    fn eigen_sym_matches_on_nontrivial_symmetric_operator() {
        let a = Extensor11::from_fn(3, |i, j| {
            let vals = [[4.0, 1.0, 0.5], [1.0, 3.0, -0.2], [0.5, -0.2, 1.5]];
            vals[i][j]
        });
        let (l, q) = eigen_sym(&a);
        // Q D Qᵀ reproduces A.
        let mut rebuilt = Extensor11::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += q[i][k] * l[k] * q[j][k];
                }
                rebuilt.set(i, j, acc);
            }
        }
        assert!(rebuilt.approx_eq(&a, 1e-10));
    }
}
