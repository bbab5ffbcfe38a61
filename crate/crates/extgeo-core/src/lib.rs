//! Numerical geometric calculus with metric extensor fields.
//!
//! The crate builds up, layer by layer:
//!
//! - [`clifford`]: dense multivector algebra over an orthonormal fiducial
//!   basis (exterior product, contractions, Clifford product, reversion,
//!   commutator).
//! - [`extensor`]: pointwise linear operators on vectors, their
//!   outermorphism extension and generalization, adjoints, inverses and
//!   the `biv` operator.
//! - [`fields`]: smooth fields over an open coordinate domain and the
//!   directional derivative `a·∂₀` by central differences, plus the Lie
//!   bracket.
//! - [`metric`]: validated metric structures (U, g), the g-dressed
//!   products, the g-Clifford algebra and both Christoffel operators.
//! - [`connection`]: the Levi-Civita connection, general g-compatible
//!   connections built from rotation-gauge fields, covariant derivative
//!   pairs and the compatibility verification suite.
//! - [`deformation`]: gauge metric fields `g = h†∘η∘h`, deformation of
//!   covariant derivative pairs between metric structures, and its
//!   verification suite.
//! - [`sampling`]: seeded generators for probe points and smooth random
//!   fields, shared by the test suites and the CLI.
//! - [`report`]: residual report types emitted by the suites.
//!
//! All values are immutable and all operations pure, so everything can be
//! shared and evaluated concurrently without coordination.

pub mod clifford;
pub mod connection;
pub mod deformation;
pub mod error;
pub mod extensor;
pub mod fields;
pub mod metric;
pub mod report;
pub mod sampling;

pub use clifford::Multivector;
pub use connection::{
    compatibility_report, cov_deriv_extensor, dcdo, gamma_from_omega, gauge_biv, levi_civita,
    levi_civita_suite, omega0, CompatCase, ConnectionField, ConnectionKind, CovVariant, DcdoPair,
    GaugeRotationField, LeviCivitaCase,
};
pub use deformation::{
    deform_dcdo, deform_dcdo_inverse, deformation_suite, gauge_field, signature_of, DeformCase,
    GaugeMetricField, OrthogonalMetric,
};
pub use error::{Error, Result};
pub use extensor::{
    biv, biv_g, extend, generalize, Elem2Extensor, ExtendedExtensor, Extensor11, Extensor12,
    GeneralizedExtensor, DEFAULT_DEGENERACY_THRESHOLD,
};
pub use fields::{
    deriv_along, dir_deriv, dir_deriv_extended, dir_deriv_extensor, lie_bracket, DiffConfig,
    ExtensorField, Field, MultivectorField, Point, ScalarField, Scheme, VectorField,
};
pub use metric::{christoffel_suite, ChristoffelCase, MetricStructure};
pub use report::{IdentityReport, ResidualTracker, SuiteReport};
pub use sampling::{Sampler, DEFAULT_SEED};
