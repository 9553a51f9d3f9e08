//! Exact computations with modules over bound quiver algebras: Hom spaces,
//! bricks and semibricks, minimal projective presentations, the
//! Auslander-Reiten translate, King stability, orbit geometry in
//! representation spaces, and finite-field censuses.
//!
//! Everything is generic over a [`Scalar`] field. [`Q`] gives exact rational
//! arithmetic; [`F2`], [`F3`], ... are prime fields, which the enumeration
//! based operations require.
//!
//! ```
//! use semibrick::{algebra::fixtures, rep, F2};
//!
//! let kronecker = fixtures::kronecker::<F2>();
//! let r0 = fixtures::kronecker_point(&kronecker, 1, 0);
//! let r1 = fixtures::kronecker_point(&kronecker, 1, 1);
//! assert!(rep::is_hom_orthogonal(&r0, &r1).unwrap());
//! ```

pub mod algebra;
pub mod census;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod stability;

use serde::{Deserialize, Serialize};

pub use algebra::{BoundQuiverAlgebra, Path, Quiver, Relation};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rep::{HomBasis, ModuleMap, Representation};
pub use scalar::{FieldSpec, Fp, Scalar};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type Q = num_rational::BigRational;

/// Resource caps shared by every operation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Most candidates any exhaustive search may visit.
    pub enumeration_cap: u64,
    /// Longest path length tried when looking for the nilpotency layer.
    pub max_path_length: usize,
    /// Most steps of a projective resolution.
    pub resolution_cap: usize,
    /// Most paths of bounded length the basis computation may hold.
    pub max_paths: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: 1 << 20,
            max_path_length: 64,
            resolution_cap: 32,
            max_paths: 100_000,
        }
    }
}
