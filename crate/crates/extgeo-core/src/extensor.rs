//! Pointwise linear-operator layer: (1,1)-extensors, their outermorphism
//! extension and generalization, adjoints, inverses, determinants, and the
//! `biv` operator.
//!
//! Vector-variable derivative constructs such as `∂_n ∧ t(n)` are realized
//! as finite sums over the orthonormal fiducial basis; for (multi)linear
//! arguments this is exact, and the reciprocal basis coincides with the
//! basis itself.

use std::fmt;

use crate::clifford::Multivector;
use crate::error::{Error, Result};

/// Default cutoff on |det| below which an operator counts as degenerate.
pub const DEFAULT_DEGENERACY_THRESHOLD: f64 = 1e-10;

/// A linear map on grade-1 multivectors, stored as an n×n matrix in the
/// fiducial basis (row-major; column j is the image of `e_{j+1}`).
#[derive(Clone, PartialEq)]
pub struct Extensor11 {
    dim: usize,
    m: Vec<f64>,
}

impl Extensor11 {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            m: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            t.m[i * dim + i] = 1.0;
        }
        t
    }

    /// `k · id`.
    pub fn scaling(dim: usize, k: f64) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            t.m[i * dim + i] = k;
        }
        t
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut t = Self::zero(dim);
        for (i, &v) in entries.iter().enumerate() {
            t.m[i * dim + i] = v;
        }
        t
    }

    /// Builds the matrix entrywise from `f(row, col)`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                t.m[i * dim + j] = f(i, j);
            }
        }
        t
    }

    /// Builds the operator whose column j is the grade-1 part of `images[j]`.
    pub fn from_images(images: &[Multivector]) -> Result<Self> {
        let dim = images.len();
        for v in images {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(v.dim(), dim));
            }
        }
        Ok(Self::from_fn(dim, |i, j| images[j].coeff(1 << i)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.m[row * self.dim + col] = value;
    }

    /// Applies the map to the grade-1 part of `v`.
    pub fn apply(&self, v: &Multivector) -> Multivector {
        debug_assert!(v.is_vector(1e-9), "extensor applied to a non-vector");
        let n = self.dim;
        let mut out = Multivector::zero(n);
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.m[i * n + j] * v.coeff(1 << j);
            }
            out.set_coeff(1 << i, acc);
        }
        out
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            (0..n).map(|k| self.m[i * n + k] * other.m[k * n + j]).sum()
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        Self::from_fn(n, |i, j| self.m[i * n + j] + other.m[i * n + j])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        Self::from_fn(n, |i, j| self.m[i * n + j] - other.m[i * n + j])
    }

    pub fn scaled(&self, k: f64) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.m[i * n + j] * k)
    }

    /// Adjoint with respect to the fiducial scalar product (the transpose).
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| self.m[j * n + i])
    }

    /// Adjoint with respect to the metric defined by `g`:
    /// `t^{†(g)} = g⁻¹ ∘ t† ∘ g`.
    pub fn metric_adjoint(&self, g: &Self, threshold: f64) -> Result<Self> {
        let g_inv = g.inverse(threshold)?;
        Ok(g_inv.compose(&self.adjoint()).compose(g))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (self.m[i * n + j] - self.m[j * n + i]).abs() <= tol))
    }

    /// Maximum absolute deviation from symmetry.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.m[i * n + j] - self.m[j * n + i]).abs());
            }
        }
        worst
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.m.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if a[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for c in 0..n {
                    a.swap(col * n + c, piv * n + c);
                }
                det = -det;
            }
            det *= a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / a[col * n + col];
                for c in col..n {
                    a[r * n + c] -= f * a[col * n + c];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self, threshold: f64) -> Result<Self> {
        let det = self.det();
        if det.abs() <= threshold {
            return Err(Error::NonDegenerateViolation {
                det: det.abs(),
                threshold,
            });
        }
        let n = self.dim;
        let mut a = self.m.clone();
        let mut inv = Self::identity(n).m;
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[r * n + col].abs() > a[piv * n + col].abs() {
                    piv = r;
                }
            }
            if piv != col {
                for c in 0..n {
                    a.swap(col * n + c, piv * n + c);
                    inv.swap(col * n + c, piv * n + c);
                }
            }
            let d = a[col * n + col];
            for c in 0..n {
                a[col * n + c] /= d;
                inv[col * n + c] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0.0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] -= f * a[col * n + c];
                    inv[r * n + c] -= f * inv[col * n + c];
                }
            }
        }
        Ok(Self { dim: n, m: inv })
    }

    /// Frobenius norm of the matrix.
    pub fn norm(&self) -> f64 {
        self.m.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute matrix entry.
    pub fn norm_inf(&self) -> f64 {
        self.m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .m
                .iter()
                .zip(&other.m)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl fmt::Debug for Extensor11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Extensor11(dim={})", self.dim)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                write!(f, " {:+.6}", self.get(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// The extended (outermorphism) of a (1,1)-extensor: acts grade-wise on
/// blades as `t(b_1) ∧ ... ∧ t(b_k)` and fixes scalars.
#[derive(Clone)]
pub struct ExtendedExtensor {
    base: Extensor11,
}

impl ExtendedExtensor {
    pub fn base(&self) -> &Extensor11 {
        &self.base
    }

    pub fn apply(&self, x: &Multivector) -> Multivector {
        let n = self.base.dim();
        assert_eq!(x.dim(), n, "dimension mismatch");
        let images: Vec<Multivector> = (0..n)
            .map(|i| self.base.apply(&Multivector::basis_vector(n, i)))
            .collect();
        let mut out = Multivector::zero(n);
        for (mask, c) in x.nonzero_blades() {
            let mut img = Multivector::scalar(n, c);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    img = img.outer(&images[i]);
                }
            }
            out = out + img;
        }
        out
    }
}

/// Lifts a (1,1)-extensor to the whole exterior algebra as an outermorphism.
pub fn extend(t: &Extensor11) -> ExtendedExtensor {
    ExtendedExtensor { base: t.clone() }
}

/// The generalized of a (1,1)-extensor: `T(X) = Σ_i t(e_i) ∧ (e_i ⌟ X)`.
///
/// Grade-preserving; coincides with `t` on grade 1 and annihilates
/// scalars. The generalized of the identity multiplies grade-k parts by k.
#[derive(Clone)]
pub struct GeneralizedExtensor {
    base: Extensor11,
}

impl GeneralizedExtensor {
    pub fn base(&self) -> &Extensor11 {
        &self.base
    }

    pub fn apply(&self, x: &Multivector) -> Multivector {
        let n = self.base.dim();
        assert_eq!(x.dim(), n, "dimension mismatch");
        let mut out = Multivector::zero(n);
        for i in 0..n {
            let ei = Multivector::basis_vector(n, i);
            let contracted = ei.left_contract(x);
            if contracted.is_zero(0.0) {
                continue;
            }
            out = out + self.base.apply(&ei).outer(&contracted);
        }
        out
    }

    /// Adjoint of the generalized operator; equals the generalized of the
    /// adjoint base map.
    pub fn adjoint(&self) -> Self {
        Self {
            base: self.base.adjoint(),
        }
    }
}

/// Lifts a (1,1)-extensor to the generalization `T(X) = Σ t(e_i) ∧ (e_i ⌟ X)`.
pub fn generalize(t: &Extensor11) -> GeneralizedExtensor {
    GeneralizedExtensor { base: t.clone() }
}

/// `biv[t] = -Σ_i e_i ∧ t(e_i)`; vanishes for every symmetric `t`.
pub fn biv(t: &Extensor11) -> Multivector {
    let n = t.dim();
    let mut out = Multivector::zero(n);
    for i in 0..n {
        let ei = Multivector::basis_vector(n, i);
        out = out + ei.outer(&t.apply(&ei));
    }
    -out
}

/// `biv_g[t] = biv[t ∘ g⁻¹]`.
pub fn biv_g(t: &Extensor11, g: &Extensor11, threshold: f64) -> Result<Multivector> {
    Ok(biv(&t.compose(&g.inverse(threshold)?)))
}

/// A linear map from vectors to bivectors, sampled on the fiducial basis.
#[derive(Clone)]
pub struct Extensor12 {
    dim: usize,
    images: Vec<Multivector>,
}

impl Extensor12 {
    /// `images[i]` is the bivector image of `e_{i+1}`.
    pub fn from_images(images: Vec<Multivector>) -> Result<Self> {
        let dim = images.len();
        for b in &images {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch(b.dim(), dim));
            }
            if !b.is_bivector(1e-12 * (1.0 + b.norm_inf())) {
                return Err(Error::NotBivector);
            }
        }
        Ok(Self { dim, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &Multivector) -> Multivector {
        let mut out = Multivector::zero(self.dim);
        for (i, img) in self.images.iter().enumerate() {
            let c = v.coeff(1 << i);
            if c != 0.0 {
                out = out + img.scale(c);
            }
        }
        out
    }
}

/// A vector elementary 2-extensor: a bilinear map `(a, b) -> vector`,
/// stored as one (1,1)-extensor slice per basis vector in the first slot.
#[derive(Clone)]
pub struct Elem2Extensor {
    dim: usize,
    slices: Vec<Extensor11>,
}

impl Elem2Extensor {
    /// `f(i, j)` must return the vector image of `(e_{i+1}, e_{j+1})`.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Multivector) -> Result<Self> {
        let mut slices = Vec::with_capacity(dim);
        for i in 0..dim {
            let images: Vec<Multivector> = (0..dim).map(|j| f(i, j)).collect();
            slices.push(Extensor11::from_images(&images)?);
        }
        Ok(Self { dim, slices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The (1,1)-extensor obtained by freezing the first argument to `a`.
    pub fn slice(&self, a: &Multivector) -> Extensor11 {
        let n = self.dim;
        let mut acc = Extensor11::zero(n);
        for (i, s) in self.slices.iter().enumerate() {
            let c = a.coeff(1 << i);
            if c != 0.0 {
                acc = acc.add(&s.scaled(c));
            }
        }
        acc
    }

    pub fn apply(&self, a: &Multivector, b: &Multivector) -> Multivector {
        self.slice(a).apply(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_identity_fixes_blades() {
        let id = Extensor11::identity(3);
        let e12 = Multivector::basis_blade(3, 0b011);
        assert_eq!(extend(&id).apply(&e12), e12);
    }

    #[test]
    fn extend_scaling_acts_per_factor() {
        let t = Extensor11::scaling(3, 2.0);
        let e12 = Multivector::basis_blade(3, 0b011);
        assert!(extend(&t).apply(&e12).approx_eq(&e12.scale(4.0), 1e-15));
    }

    #[test]
    fn extend_on_two_blade_matches_wedge_of_images() {
        let t = Extensor11::from_fn(3, |i, j| ((i * 3 + j) as f64 * 0.37).sin());
        let e1 = Multivector::basis_vector(3, 0);
        let e2 = Multivector::basis_vector(3, 1);
        let lhs = extend(&t).apply(&e1.outer(&e2));
        let rhs = t.apply(&e1).outer(&t.apply(&e2));
        assert!(lhs.approx_eq(&rhs, 1e-14));
    }

    #[test]
    fn generalize_identity_counts_grade() {
        let id = Extensor11::identity(3);
        let e12 = Multivector::basis_blade(3, 0b011);
        assert_eq!(generalize(&id).apply(&e12), e12.scale(2.0));
    }

    #[test]
    fn generalize_restricts_to_base_on_vectors() {
        let t = Extensor11::from_fn(3, |i, j| (i + 2 * j) as f64 * 0.25 - 0.4);
        let v = Multivector::vector(3, &[0.7, -0.3, 1.1]);
        assert_eq!(generalize(&t).apply(&v), t.apply(&v));
    }

    #[test]
    fn generalize_annihilates_scalars() {
        let t = Extensor11::from_fn(3, |i, j| (i as f64) - (j as f64) * 0.5);
        let f = Multivector::scalar(3, 3.5);
        assert!(generalize(&t).apply(&f).is_zero(0.0));
    }

    #[test]
    fn rotation_adjoint_is_inverse() {
        let th = 0.73f64;
        let mut r = Extensor11::identity(2);
        r.set(0, 0, th.cos());
        r.set(0, 1, -th.sin());
        r.set(1, 0, th.sin());
        r.set(1, 1, th.cos());
        assert!(r.adjoint().compose(&r).approx_eq(&Extensor11::identity(2), 1e-15));
    }

    #[test]
    fn metric_adjoint_with_identity_is_transpose() {
        let t = Extensor11::from_fn(2, |i, j| (1 + i + 3 * j) as f64);
        let got = t
            .metric_adjoint(&Extensor11::identity(2), DEFAULT_DEGENERACY_THRESHOLD)
            .unwrap();
        assert!(got.approx_eq(&t.adjoint(), 1e-14));
    }

    #[test]
    fn inverse_of_identity() {
        let id = Extensor11::identity(4);
        assert!(id
            .inverse(DEFAULT_DEGENERACY_THRESHOLD)
            .unwrap()
            .approx_eq(&id, 1e-15));
    }

    #[test]
    fn det_of_scalar_matrix() {
        assert!((Extensor11::scaling(3, 2.0).det() - 8.0).abs() < 1e-14);
    }

    #[test]
    fn involution_inverse() {
        let t = Extensor11::diagonal(&[1.0, -1.0]);
        assert!(t
            .inverse(DEFAULT_DEGENERACY_THRESHOLD)
            .unwrap()
            .approx_eq(&t, 1e-15));
    }

    #[test]
    fn singular_inverse_is_rejected() {
        let t = Extensor11::diagonal(&[1.0, 0.0]);
        match t.inverse(DEFAULT_DEGENERACY_THRESHOLD) {
            Err(crate::error::Error::NonDegenerateViolation { det, .. }) => {
                assert!(det.abs() <= DEFAULT_DEGENERACY_THRESHOLD)
            }
            other => panic!("expected degeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn biv_of_symmetric_vanishes() {
        let s = Extensor11::from_fn(3, |i, j| ((i + j) as f64).cos());
        let sym = s.add(&s.adjoint()).scaled(0.5);
        assert!(biv(&sym).is_zero(1e-15));
    }

    #[test]
    fn biv_recovers_commutator_bivector() {
        // For t(v) = B × v with B = e1 ∧ e2: biv[t] = 2 B.
        let n = 3;
        let b = Multivector::basis_blade(n, 0b011);
        let images: Vec<Multivector> = (0..n)
            .map(|i| b.commutator(&Multivector::basis_vector(n, i)))
            .collect();
        let t = Extensor11::from_images(&images).unwrap();
        assert!(biv(&t).approx_eq(&b.scale(2.0), 1e-14));
    }

    #[test]
    fn biv_g_with_identity_reduces() {
        let t = Extensor11::from_fn(3, |i, j| (i as f64 * 1.3 - j as f64 * 0.7).sin());
        let got = biv_g(&t, &Extensor11::identity(3), DEFAULT_DEGENERACY_THRESHOLD).unwrap();
        assert!(got.approx_eq(&biv(&t), 1e-14));
    }

    #[test]
    fn extensor12_rejects_non_bivectors() {
        let imgs = vec![
            Multivector::basis_vector(2, 0),
            Multivector::basis_blade(2, 0b11),
        ];
        assert!(Extensor12::from_images(imgs).is_err());
    }

    #[test]
    fn elem2_is_bilinear() {
        let f = |i: usize, j: usize| {
            Multivector::vector(2, &[(i + j) as f64, (i as f64) - (j as f64)])
        };
        let t = Elem2Extensor::from_fn(2, f).unwrap();
        let a = Multivector::vector(2, &[2.0, -1.0]);
        let b = Multivector::vector(2, &[0.5, 3.0]);
        let direct = t.apply(&a, &b);
        let mut expanded = Multivector::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                expanded = expanded + f(i, j).scale(a.coeff(1 << i) * b.coeff(1 << j));
            }
        }
        assert!(direct.approx_eq(&expanded, 1e-14));
    }
}
