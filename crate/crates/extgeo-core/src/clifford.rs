//! Dense multivector algebra over an n-dimensional real vector space
//! with an orthonormal fiducial basis.
//!
//! A multivector is stored as 2^n coefficients indexed by a basis-blade
//! bitmask: bit `i` set means the basis vector `e_{i+1}` is a factor of
//! the blade. The canonical orientation of a blade is ascending index
//! order (`e_1 ∧ e_2 ∧ ...`); products pick up a sign equal to the
//! bubble-sort parity of the factor reordering. The fiducial metric is
//! euclidean: `e_i · e_i = 1`. Non-euclidean structure enters only
//! through metric extensors applied on top of these products.
//!
//! Binary operations panic on mismatched dimensions (like shape
//! mismatches in dense array libraries); use [`Multivector::check_same_dim`]
//! when combining values of unknown provenance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported dimension of the base vector space.
pub const MAX_DIM: usize = 8;
/// Smallest supported dimension of the base vector space.
pub const MIN_DIM: usize = 2;

/// Parity sign from merging the factors of blade `a` past the factors of
/// blade `b` into canonical ascending order.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Grade of a basis blade: the number of vector factors.
#[inline]
pub fn blade_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Dense element of the 2^n-dimensional exterior/Clifford algebra.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    coeffs: Vec<f64>,
}

impl Multivector {
    fn assert_dim(dim: usize) {
        assert!(
            (MIN_DIM..=MAX_DIM).contains(&dim),
            "algebra dimension {dim} outside supported range {MIN_DIM}..={MAX_DIM}"
        );
    }

    /// The zero multivector.
    pub fn zero(dim: usize) -> Self {
        Self::assert_dim(dim);
        Self {
            dim,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    /// A pure scalar.
    pub fn scalar(dim: usize, value: f64) -> Self {
        let mut mv = Self::zero(dim);
        mv.coeffs[0] = value;
        mv
    }

    /// The basis vector `e_{i+1}` (`i` is 0-based).
    pub fn basis_vector(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis vector index {i} out of range for dim {dim}");
        Self::basis_blade(dim, 1 << i)
    }

    /// The unit basis blade for a bitmask.
    pub fn basis_blade(dim: usize, mask: usize) -> Self {
        let mut mv = Self::zero(dim);
        assert!(mask < (1 << dim), "blade mask {mask:#b} out of range");
        mv.coeffs[mask] = 1.0;
        mv
    }

    /// A grade-1 multivector from its components.
    pub fn vector(dim: usize, components: &[f64]) -> Self {
        assert!(components.len() == dim, "expected {dim} vector components");
        let mut mv = Self::zero(dim);
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        mv
    }

    /// Builds a multivector from a full coefficient slice of length 2^dim.
    pub fn from_coeffs(dim: usize, coeffs: &[f64]) -> Result<Self> {
        Self::assert_dim(dim);
        if coeffs.len() != 1 << dim {
            return Err(Error::Invalid(format!(
                "expected {} coefficients for dim {dim}, got {}",
                1usize << dim,
                coeffs.len()
            )));
        }
        Ok(Self {
            dim,
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the blade with the given bitmask.
    pub fn coeff(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, value: f64) {
        self.coeffs[mask] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Components of the grade-1 part.
    pub fn vector_components(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Checked dimension comparison for values of unknown provenance.
    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    fn same_dim(&self, other: &Self) {
        assert_eq!(
            self.dim, other.dim,
            "dimension mismatch: {} vs {}",
            self.dim, other.dim
        );
    }

    /// Projection onto grade `k`.
    pub fn grade_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if blade_grade(mask) == k {
                out.coeffs[mask] = c;
            }
        }
        out
    }

    /// The grade of the multivector if homogeneous, `None` for mixed grades.
    pub fn grade(&self, tol: f64) -> Option<usize> {
        let mut found = None;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            if c.abs() > tol {
                let g = blade_grade(mask);
                match found {
                    None => found = Some(g),
                    Some(prev) if prev != g => return None,
                    _ => {}
                }
            }
        }
        found
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    /// True if all components outside grade 1 vanish.
    pub fn is_vector(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| blade_grade(mask) == 1 || c.abs() <= tol)
    }

    /// True if all components outside grade 2 vanish.
    pub fn is_bivector(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| blade_grade(mask) == 2 || c.abs() <= tol)
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Componentwise closeness under the given absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Reversion: the grade-k part is scaled by (-1)^{k(k-1)/2}.
    pub fn reverse(&self) -> Self {
        let mut out = self.clone();
        for (mask, c) in out.coeffs.iter_mut().enumerate() {
            let k = blade_grade(mask);
            if (k * k.wrapping_sub(1) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    /// Shared double loop over nonzero blade pairs. `keep` decides which
    /// pairs contribute; the term for `(a, b)` lands on blade `a ^ b`
    /// with the canonical reordering sign.
    fn product_filtered(&self, other: &Self, keep: impl Fn(usize, usize) -> bool) -> Self {
        self.same_dim(other);
        let mut out = Self::zero(self.dim);
        for (i, &xi) in self.coeffs.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in other.coeffs.iter().enumerate() {
                if yj == 0.0 || !keep(i, j) {
                    continue;
                }
                out.coeffs[i ^ j] += reorder_sign(i, j) * xi * yj;
            }
        }
        out
    }

    /// Exterior product `X ∧ Y`.
    pub fn outer(&self, other: &Self) -> Self {
        self.product_filtered(other, |i, j| i & j == 0)
    }

    /// Left contraction `X ⌟ Y` (grade of the result is grade(Y) - grade(X)
    /// on homogeneous inputs, zero when that would be negative).
    pub fn left_contract(&self, other: &Self) -> Self {
        self.product_filtered(other, |i, j| i & !j == 0)
    }

    /// Right contraction `X ⌞ Y`.
    pub fn right_contract(&self, other: &Self) -> Self {
        self.product_filtered(other, |i, j| j & !i == 0)
    }

    /// Scalar product of multivectors. Orthonormal basis blades are
    /// orthonormal under it, so this is the coefficient dot product.
    pub fn scalar_product(&self, other: &Self) -> f64 {
        self.same_dim(other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Clifford (geometric) product with the euclidean fiducial metric.
    ///
    /// Terms are accumulated in three buckets (contraction-like pairs,
    /// wedge-like pairs, the rest) so that for a grade-1 left factor the
    /// identity `b X = b ⌟ X + b ∧ X` holds bit for bit.
    pub fn clifford_product(&self, other: &Self) -> Self {
        self.same_dim(other);
        let contraction = self.product_filtered(other, |i, j| i & !j == 0);
        let wedge = self.product_filtered(other, |i, j| i != 0 && i & j == 0);
        let rest = self.product_filtered(other, |i, j| i & !j != 0 && i & j != 0);
        contraction + wedge + rest
    }

    /// Commutator product `B × X = (BX - XB)/2` with the fiducial metric.
    pub fn commutator(&self, other: &Self) -> Self {
        (self.clifford_product(other) - other.clifford_product(self)).scale(0.5)
    }

    /// Iterator over `(mask, coeff)` pairs with nonzero coefficient.
    pub fn nonzero_blades(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(m, c)| (m, *c))
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.same_dim(rhs);
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self.same_dim(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.same_dim(rhs);
        Multivector {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self.same_dim(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, k: f64) -> Multivector {
        self.scale(k)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, k: f64) -> Multivector {
        self.scale(k)
    }
}

/// Renders a blade mask as `e12`, `e134`, ... with 1-based indices.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::from("e");
    for i in 0..MAX_DIM {
        if mask & (1 << i) != 0 {
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.nonzero_blades() {
            if first {
                if mask == 0 {
                    write!(f, "{c}")?;
                } else if c == 1.0 {
                    write!(f, "{}", blade_name(mask))?;
                } else if c == -1.0 {
                    write!(f, "-{}", blade_name(mask))?;
                } else {
                    write!(f, "{c} {}", blade_name(mask))?;
                }
                first = false;
            } else {
                let sign = if c < 0.0 { " - " } else { " + " };
                let a = c.abs();
                if mask == 0 {
                    write!(f, "{sign}{a}")?;
                } else if a == 1.0 {
                    write!(f, "{sign}{}", blade_name(mask))?;
                } else {
                    write!(f, "{sign}{a} {}", blade_name(mask))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(dim={}, {})", self.dim, self)
    }
}
