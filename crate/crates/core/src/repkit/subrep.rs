//! Subrepresentations as tuples of echelonized subspaces.

use super::algebra::{PresentedAlgebra, Rep};
use super::linalg::{for_each_subspace, for_each_subspace_between, Mat, Subspace};
use crate::error::{Error, Result};

pub const DEFAULT_DIM_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubRep {
    pub spaces: Vec<Subspace>,
}

impl SubRep {
    pub fn zero(x: &Rep) -> Self {
        SubRep { spaces: x.dims.iter().map(|&d| Subspace::zero(d)).collect() }
    }

    pub fn full(x: &Rep) -> Self {
        SubRep { spaces: x.dims.iter().map(|&d| Subspace::full(d)).collect() }
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(|s| s.dim()).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn is_sub_of(&self, other: &SubRep) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    pub fn is_stable(&self, alg: &PresentedAlgebra, x: &Rep) -> bool {
        alg.arrows.iter().enumerate().all(|(a, arrow)| {
            let t = &self.spaces[arrow.target];
            self.spaces[arrow.source].rows.iter().all(|&v| t.contains(x.maps[a].apply(v)))
        })
    }

    /// The subrepresentation as a representation in its own echelon basis.
    pub fn as_rep(&self, alg: &PresentedAlgebra, x: &Rep) -> Rep {
        let dims = self.dims();
        let maps = alg
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (&self.spaces[arrow.source], &self.spaces[arrow.target]);
                let mut m = Mat::zero(t.dim(), s.dim());
                for (c, &v) in s.rows.iter().enumerate() {
                    let coords = t.coords(x.maps[a].apply(v));
                    for r in 0..t.dim() {
                        if coords >> r & 1 == 1 {
                            m.set(r, c, true);
                        }
                    }
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// x / self, with basis the non-pivot coordinates.
    pub fn quotient(&self, alg: &PresentedAlgebra, x: &Rep) -> Rep {
        let dims: Vec<usize> = self.spaces.iter().map(|s| s.ambient - s.dim()).collect();
        let maps = alg
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (&self.spaces[arrow.source], &self.spaces[arrow.target]);
                let cols = s.complement_coords();
                let mut m = Mat::zero(dims[arrow.target], cols.len());
                for (c, &e) in cols.iter().enumerate() {
                    let q = t.quotient_coords(x.maps[a].apply(1u64 << e));
                    for r in 0..m.rows {
                        if q >> r & 1 == 1 {
                            m.set(r, c, true);
                        }
                    }
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// Rewrites self (contained in `outer`) in the coordinates of outer.as_rep.
    pub fn restrict_to(&self, outer: &SubRep) -> SubRep {
        SubRep {
            spaces: self
                .spaces
                .iter()
                .zip(&outer.spaces)
                .map(|(u, o)| Subspace::span(o.dim(), u.rows.iter().map(|&v| o.coords(v))))
                .collect(),
        }
    }

    /// Image of self (containing `inner`) in the coordinates of x / inner.
    pub fn project_mod(&self, inner: &SubRep) -> SubRep {
        SubRep {
            spaces: self
                .spaces
                .iter()
                .zip(&inner.spaces)
                .map(|(u, a)| Subspace::span(a.ambient - a.dim(), u.rows.iter().map(|&v| a.quotient_coords(v))))
                .collect(),
        }
    }

    pub fn meet(&self, other: &SubRep) -> SubRep {
        SubRep {
            spaces: self
                .spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| {
                    // a ∩ b = image of the kernel of (u, v) -> u + v on a ⊕ b, projected to a
                    let cols: Vec<u64> = a.rows.iter().chain(&b.rows).copied().collect();
                    let ker = super::linalg::column_kernel(&cols);
                    Subspace::span(
                        a.ambient,
                        ker.into_iter().map(|k| {
                            let mut v = 0;
                            for (i, &r) in a.rows.iter().enumerate() {
                                if k >> i & 1 == 1 {
                                    v ^= r;
                                }
                            }
                            v
                        }),
                    )
                })
                .collect(),
        }
    }

    pub fn join(&self, other: &SubRep) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.join(b)).collect() }
    }
}

pub fn check_bound(x: &Rep, bound: usize) -> Result<()> {
    let dim = x.total_dim();
    if dim > bound {
        return Err(Error::DimensionBoundExceeded { dim, bound });
    }
    if x.dims.iter().any(|&d| d > 63) {
        return Err(Error::DimensionBoundExceeded { dim, bound: 63 });
    }
    Ok(())
}

/// Every arrow-stable tuple of subspaces of x.
pub fn enumerate_subreps(alg: &PresentedAlgebra, x: &Rep, bound: usize) -> Result<Vec<SubRep>> {
    check_bound(x, bound)?;
    let mut out = Vec::new();
    let n = alg.vertices;
    let mut chosen: Vec<Option<Subspace>> = vec![None; n];
    search(alg, x, 0, &mut chosen, &mut |spaces| {
        out.push(SubRep { spaces: spaces.iter().map(|s| s.clone().unwrap()).collect() })
    });
    out.sort();
    Ok(out)
}

fn search(alg: &PresentedAlgebra, x: &Rep, v: usize, chosen: &mut Vec<Option<Subspace>>, emit: &mut dyn FnMut(&[Option<Subspace>])) {
    if v == alg.vertices {
        emit(chosen);
        return;
    }
    let d = x.dims[v];
    let mut lower = Subspace::zero(d);
    let mut upper = Subspace::full(d);
    let mut has_loop = false;
    for (a, arrow) in alg.arrows.iter().enumerate() {
        if arrow.source == v && arrow.target == v {
            has_loop = true;
            continue;
        }
        if arrow.target == v {
            if let Some(s) = &chosen[arrow.source] {
                lower = lower.join(&s.image(&x.maps[a]));
            }
        }
        if arrow.source == v {
            if let Some(t) = &chosen[arrow.target] {
                let pre = t.preimage(&x.maps[a]);
                upper = meet_space(&upper, &pre);
            }
        }
    }
    if !lower.is_subspace_of(&upper) {
        return;
    }
    let mut candidates = Vec::new();
    let mut collect = |s: &Subspace| {
        if has_loop {
            let stable = alg.arrows.iter().enumerate().all(|(a, arrow)| {
                !(arrow.source == v && arrow.target == v) || s.rows.iter().all(|&r| s.contains(x.maps[a].apply(r)))
            });
            if !stable {
                return;
            }
        }
        candidates.push(s.clone());
    };
    if lower.dim() == 0 && upper.dim() == d {
        for_each_subspace(d, &mut collect);
    } else {
        for_each_subspace_between(&lower, &upper, &mut collect);
    }
    for s in candidates {
        chosen[v] = Some(s);
        search(alg, x, v + 1, chosen, emit);
    }
    chosen[v] = None;
}

fn meet_space(a: &Subspace, b: &Subspace) -> Subspace {
    let sa = SubRep { spaces: vec![a.clone()] };
    let sb = SubRep { spaces: vec![b.clone()] };
    sa.meet(&sb).spaces.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::super::algebra::hom_dim;
    use super::*;

    fn a2() -> PresentedAlgebra {
        PresentedAlgebra::from_edges(2, &[(2, 1)], vec![]).unwrap()
    }

    fn brute_subreps(alg: &PresentedAlgebra, x: &Rep) -> usize {
        // product of all subspaces, filtered by stability
        fn rec(alg: &PresentedAlgebra, x: &Rep, v: usize, acc: &mut Vec<Subspace>, count: &mut usize) {
            if v == x.dims.len() {
                let s = SubRep { spaces: acc.clone() };
                if s.is_stable(alg, x) {
                    *count += 1;
                }
                return;
            }
            let mut all = Vec::new();
            for_each_subspace(x.dims[v], &mut |s| all.push(s.clone()));
            for s in all {
                acc.push(s);
                rec(alg, x, v + 1, acc, count);
                acc.pop();
            }
        }
        let mut count = 0;
        rec(alg, x, 0, &mut Vec::new(), &mut count);
        count
    }

    #[test]
    fn subrep_counts() {
        let one = PresentedAlgebra::new(1, vec![], vec![]).unwrap();
        let x = Rep::with_zero_maps(&one, vec![2]);
        assert_eq!(enumerate_subreps(&one, &x, 8).unwrap().len(), 5);

        let alg = a2();
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        let subs = enumerate_subreps(&alg, &p, 8).unwrap();
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().any(|s| s.dims() == vec![1, 0]));

        let ss = Rep::simple(&alg, 0).direct_sum(&Rep::simple(&alg, 1));
        assert_eq!(enumerate_subreps(&alg, &ss, 8).unwrap().len(), 4);
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        let alg = a2();
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        let s1 = Rep::simple(&alg, 0);
        let s2 = Rep::simple(&alg, 1);
        let xs = [
            p.direct_sum(&p),
            p.direct_sum(&s1).direct_sum(&s2),
            s1.direct_sum(&s1).direct_sum(&p),
            p.direct_sum(&p).direct_sum(&s2),
        ];
        for x in &xs {
            assert_eq!(enumerate_subreps(&alg, x, 8).unwrap().len(), brute_subreps(&alg, x));
        }
        let lp = PresentedAlgebra::parse("vertices: 2\narrows:\n  al: 2 -> 1\n  be: 1 -> 1\nrelations:\n  be be\n").unwrap();
        let m = Rep::new(&lp, vec![2, 1], vec![Mat::from_entries(2, 1, &[0, 1]), Mat::from_entries(2, 2, &[0, 0, 1, 0])]).unwrap();
        let x = m.direct_sum(&Rep::simple(&lp, 0));
        assert_eq!(enumerate_subreps(&lp, &x, 8).unwrap().len(), brute_subreps(&lp, &x));
    }

    #[test]
    fn bound_is_enforced() {
        let one = PresentedAlgebra::new(1, vec![], vec![]).unwrap();
        let x = Rep::with_zero_maps(&one, vec![9]);
        assert!(matches!(enumerate_subreps(&one, &x, 8), Err(Error::DimensionBoundExceeded { .. })));
    }

    #[test]
    fn sub_and_quotient_dimensions_add_up() {
        let alg = a2();
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        let x = p.direct_sum(&Rep::simple(&alg, 1));
        for u in enumerate_subreps(&alg, &x, 8).unwrap() {
            let sub = u.as_rep(&alg, &x);
            let quo = u.quotient(&alg, &x);
            assert!(sub.satisfies_relations(&alg) && quo.satisfies_relations(&alg));
            assert_eq!(sub.total_dim() + quo.total_dim(), x.total_dim());
            // the inclusion of the sub is a nonzero map when sub is nonzero
            if !sub.is_zero() {
                assert!(hom_dim(&alg, &sub, &x).unwrap() > 0);
            }
        }
    }
}
