//! Finite-dimensional representations over the two-element field: the
//! brute-force side of every computation in the crate.

pub mod algebra;
pub mod catalogue;
pub mod conflation;
pub mod examples;
pub mod linalg;
pub mod poset;
pub mod subrep;

pub use algebra::{ext1_dim, hom_dim, Arrow, Morphism, PresentedAlgebra, Rep};
pub use catalogue::{isomorphic, Catalogue, IsoRegistry, Membership, Rule};
pub use conflation::{conflations_up_to, extension_closed_up_to, generating_conflations, RelationPair};
pub use linalg::{Mat, Subspace};
pub use poset::{admissible_poset, poset_properties, series_analysis, PosetProperties, SeriesReport, SubobjectPoset};
pub use subrep::{enumerate_subreps, SubRep, DEFAULT_DIM_BOUND};
