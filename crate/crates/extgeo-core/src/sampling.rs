//! Deterministic generators for probe points and smooth test fields.
//!
//! Everything is driven by a seeded ChaCha stream so that identical seeds
//! reproduce identical points, fields and therefore reports.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clifford::{blade_grade, Multivector};
use crate::extensor::Extensor11;
use crate::fields::{ExtensorField, MultivectorField, Point, ScalarField, VectorField};

/// Default seed for probe and sample generation.
pub const DEFAULT_SEED: u64 = 0xC11F;

/// Seeded generator of points and smooth polynomial fields.
pub struct Sampler {
    dim: usize,
    rng: ChaCha8Rng,
}

/// Coefficients of one quadratic polynomial in n coordinates:
/// `c0 + Σ ci xi + Σ_{i<=j} cij xi xj`.
#[derive(Clone)]
struct Quadratic {
    c0: f64,
    linear: Vec<f64>,
    quad: Vec<f64>, // upper triangle, row-major
}

impl Quadratic {
    fn eval(&self, coords: &[f64]) -> f64 {
        let n = coords.len();
        let mut v = self.c0;
        for (i, &x) in coords.iter().enumerate() {
            v += self.linear[i] * x;
        }
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                v += self.quad[k] * coords[i] * coords[j];
                k += 1;
            }
        }
        v
    }
}

impl Sampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// A pseudo-random point inside the axis-aligned box.
    pub fn point_in(&mut self, min: &[f64], max: &[f64]) -> Point {
        let coords = (0..self.dim)
            .map(|i| self.uniform(min[i], max[i]))
            .collect();
        Point::new(coords)
    }

    /// `count` points inside the box.
    pub fn points_in(&mut self, min: &[f64], max: &[f64], count: usize) -> Vec<Point> {
        (0..count).map(|_| self.point_in(min, max)).collect()
    }

    fn quadratic(&mut self, amp: f64) -> Quadratic {
        let n = self.dim;
        Quadratic {
            c0: self.uniform(-amp, amp),
            linear: (0..n).map(|_| self.uniform(-amp, amp)).collect(),
            quad: (0..n * (n + 1) / 2)
                .map(|_| self.uniform(-amp, amp))
                .collect(),
        }
    }

    /// A smooth scalar field with quadratic coordinate dependence.
    pub fn scalar_field(&mut self, amp: f64) -> ScalarField {
        let q = self.quadratic(amp);
        ScalarField::from_fn(self.dim, move |p| q.eval(p.coords()))
    }

    /// A smooth vector field with quadratic components.
    pub fn vector_field(&mut self, amp: f64) -> VectorField {
        let n = self.dim;
        let comps: Vec<Quadratic> = (0..n).map(|_| self.quadratic(amp)).collect();
        VectorField::from_fn(n, move |p| {
            let values: Vec<f64> = comps.iter().map(|q| q.eval(p.coords())).collect();
            Multivector::vector(n, &values)
        })
    }

    /// A constant vector field.
    pub fn constant_vector_field(&mut self, amp: f64) -> VectorField {
        let v = self.vector_value(amp);
        VectorField::constant(self.dim, v)
    }

    /// A smooth multivector field populated on grades `<= max_grade`.
    pub fn multivector_field(&mut self, max_grade: usize, amp: f64) -> MultivectorField {
        let n = self.dim;
        let coeffs: Vec<(usize, Quadratic)> = (0..(1usize << n))
            .filter(|m| blade_grade(*m) <= max_grade)
            .map(|m| (m, self.quadratic(amp)))
            .collect();
        MultivectorField::from_fn(n, move |p| {
            let mut mv = Multivector::zero(n);
            for (mask, q) in &coeffs {
                mv.set_coeff(*mask, q.eval(p.coords()));
            }
            mv
        })
    }

    /// A random vector value.
    pub fn vector_value(&mut self, amp: f64) -> Multivector {
        let comps: Vec<f64> = (0..self.dim).map(|_| self.uniform(-amp, amp)).collect();
        Multivector::vector(self.dim, &comps)
    }

    /// A random multivector value on grades `<= max_grade`.
    pub fn multivector_value(&mut self, max_grade: usize, amp: f64) -> Multivector {
        let n = self.dim;
        let mut mv = Multivector::zero(n);
        for mask in 0..(1usize << n) {
            if blade_grade(mask) <= max_grade {
                mv.set_coeff(mask, self.uniform(-amp, amp));
            }
        }
        mv
    }

    /// A random bivector value.
    pub fn bivector_value(&mut self, amp: f64) -> Multivector {
        let n = self.dim;
        let mut mv = Multivector::zero(n);
        for mask in 0..(1usize << n) {
            if blade_grade(mask) == 2 {
                mv.set_coeff(mask, self.uniform(-amp, amp));
            }
        }
        mv
    }

    /// A well-conditioned operator `id + amp·R` with random R.
    pub fn extensor_value(&mut self, amp: f64) -> Extensor11 {
        let n = self.dim;
        let mut t = Extensor11::identity(n);
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, t.get(i, j) + self.uniform(-amp, amp));
            }
        }
        t
    }

    /// A well-conditioned symmetric operator `id + amp·(R + Rᵀ)/2`.
    pub fn symmetric_extensor_value(&mut self, amp: f64) -> Extensor11 {
        let t = self.extensor_value(amp);
        t.add(&t.adjoint()).scaled(0.5)
    }

    /// A smooth, diagonally dominant (hence non-singular) extensor field
    /// with quadratic entries. Safe for amplitudes up to ~0.3 on the
    /// unit box.
    pub fn smooth_extensor_field(&mut self, amp: f64) -> ExtensorField {
        let n = self.dim;
        let entries: Vec<Quadratic> = (0..n * n).map(|_| self.quadratic(amp)).collect();
        ExtensorField::from_fn(n, move |p| {
            Extensor11::from_fn(n, |i, j| {
                let base = if i == j { 1.0 } else { 0.0 };
                base + entries[i * n + j].eval(p.coords())
            })
        })
    }

    /// A smooth symmetric extensor field `id + amp·sym(poly)`, suitable
    /// as a metric perturbation.
    pub fn smooth_symmetric_extensor_field(&mut self, amp: f64) -> ExtensorField {
        let t = self.smooth_extensor_field(amp);
        ExtensorField::new(self.dim, move |p| {
            let v = t.eval(p)?;
            Ok(v.add(&v.adjoint()).scaled(0.5))
        })
    }
}
