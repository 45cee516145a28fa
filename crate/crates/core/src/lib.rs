//! Angles and asymmetric distances between subspaces of different dimensions,
//! over the real and complex fields.
//!
//! Every angle is available through independent computational routes
//! (principal angles, Gram determinants, exterior algebra) that cross-check
//! each other.
//!
//! ```
//! use subspace_angles::{asymmetric_angle, AngleRoute, FieldTag, Subspace, Tolerance};
//!
//! let tol = Tolerance::default();
//! let line = Subspace::from_real_rows(4, &[vec![1.0, 0.0, 1.0, 0.0]], &tol).unwrap();
//! let plane = Subspace::from_real_rows(
//!     4,
//!     &[vec![0.0, 1.0, 1.0, 0.0], vec![1.0, 2.0, 2.0, -1.0]],
//!     &tol,
//! )
//! .unwrap();
//! let theta = asymmetric_angle(&line, &plane, AngleRoute::PrincipalAngles, &tol).unwrap();
//! assert!((theta.to_degrees() - 45.0).abs() < 1e-9);
//! assert_eq!(line.field(), FieldTag::Real);
//! ```

pub mod angles;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod metrics;
pub mod numerics;
pub mod subspace;

pub use angles::{
    angle_report, asymmetric_angle, disjointness_angle, orthogonal_partition_check,
    projection_factor, pythagorean_sum, real_complex_relation_check, sine_identity_sum,
    spherical_pythagorean_check, supplementation_angle, AngleReport, AngleRoute,
    SupplementationAngle,
};
pub use error::{Error, Result};
pub use exterior::{MultiIndex, Multivector, Orientation};
pub use metrics::{
    asymmetric_distance, containment_gap, diagnostic_quantities, directional_distance,
    equal_dim_distance, gap, make_equality_triple, symmetric_distance, symmetrize, DistanceResult,
    EqualityTriple, ExtensionCase, MetricDescriptor, MetricName, SymmetrizeMode, TripleShape,
};
pub use numerics::{FieldTag, Matrix, Tolerance, C64};
pub use subspace::{principal_decomposition, random_subspace, PrincipalDecomposition, Subspace};
