//! Small fixed categories used by tests, regressions and the demo.

use std::sync::Arc;

use super::algebra::{PresentedAlgebra, Rep};
use super::catalogue::{Catalogue, Membership, Rule};
use super::linalg::Mat;

/// F2-vector spaces (one vertex, no arrows) restricted by `rule`.
pub fn vector_spaces(rule: Rule) -> Membership {
    let alg = Arc::new(PresentedAlgebra::new(1, vec![], vec![]).expect("one vertex"));
    let k = Rep::simple(&alg, 0);
    let cat = Catalogue::complete(alg, vec![k], vec!["k".into()]).expect("k is the only indecomposable");
    Membership::new(Arc::new(cat), rule)
}

pub fn space(e: &Membership, d: usize) -> Rep {
    Rep::with_zero_maps(e.algebra(), vec![d])
}

/// Spaces of dimension other than 1: k^6 has series k^2 < k^4 < k^6 and
/// k^3 < k^6.
pub fn exa() -> Membership {
    vector_spaces(Rule::TotalDimNotIn(vec![1]))
}

/// Spaces of dimension outside {1, 3}: two 4-dimensional subspaces of k^6
/// meeting in a 3-space have no meet.
pub fn nonlattice1() -> Membership {
    vector_spaces(Rule::TotalDimNotIn(vec![1, 3]))
}

/// A2 with its arrow 2 -> 1.
pub fn a2_algebra() -> PresentedAlgebra {
    PresentedAlgebra::from_edges(2, &[(2, 1)], vec![]).expect("fixed quiver")
}

/// The complete catalogue S1, S2, P of mod A2.
pub fn a2_catalogue() -> Catalogue {
    let alg = Arc::new(a2_algebra());
    let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).expect("P");
    let items = vec![Rep::simple(&alg, 0), Rep::simple(&alg, 1), p];
    Catalogue::complete(alg, items, vec!["S1".into(), "S2".into(), "P".into()]).expect("complete")
}

pub fn a2_all() -> Membership {
    Membership::new(Arc::new(a2_catalogue()), Rule::All)
}
