//! Affine root systems: the constructive base algorithm, generalized Cartan
//! matrices, diagram classification and base conjugacy.

pub mod algorithm;
pub mod cartan;
pub mod conjugacy;
pub mod model;
pub mod types;

pub use algorithm::{box_points, AffineBaseResult, AffineDatum};
pub use model::{null_marks, symmetrize, AffineModel, ClosureOracle, ProgressionOracle, RootOracle};
pub use types::{AffineFamily, AffineType, DiagramData, DiagramEdge, LengthClass, Progression};
pub use cartan::{canonical_form, cartan_and_delta, classify, classify_affine, diagram_isomorphism, MarkedAffineBase};
pub use conjugacy::{apply_word, conjugate_bases, descent_count, Conjugacy};
