//! Posets of admissible subobjects, lattice/modularity checks and analysis
//! of composition series.

use std::collections::{BTreeMap, BTreeSet};

use super::algebra::Rep;
use super::catalogue::Membership;
use super::subrep::{enumerate_subreps, SubRep};
use crate::error::{Error, Result};

/// Admissible subobjects U of X (U and X/U in E), ordered by U <= V iff
/// U ⊆ V and V/U ∈ E.
#[derive(Clone, Debug)]
pub struct SubobjectPoset {
    pub x: Rep,
    /// Sorted by total dimension, so every linear extension starts at 0.
    pub elements: Vec<SubRep>,
    leq: Vec<Vec<u64>>,
}

fn bit(set: &[u64], k: usize) -> bool {
    set[k / 64] >> (k % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], k: usize) {
    set[k / 64] |= 1 << (k % 64);
}

impl SubobjectPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        bit(&self.leq[a], b)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn index_of(&self, u: &SubRep) -> Option<usize> {
        self.elements.iter().position(|e| e == u)
    }

    fn words(&self) -> usize {
        self.elements.len().div_ceil(64)
    }

    fn down_set(&self, b: usize) -> Vec<u64> {
        let mut s = vec![0u64; self.words()];
        for a in 0..self.len() {
            if self.leq(a, b) {
                set_bit(&mut s, a);
            }
        }
        s
    }

    /// Upper covers of every element.
    pub fn covers(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let downs: Vec<Vec<u64>> = (0..n).map(|b| self.down_set(b)).collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| {
                        if a == b || !self.leq(a, b) {
                            return false;
                        }
                        // nothing strictly between: up(a) ∩ down(b) = {a, b}
                        let mut count = 0;
                        for (u, d) in self.leq[a].iter().zip(&downs[b]) {
                            count += (u & d).count_ones();
                        }
                        count == 2
                    })
                    .collect()
            })
            .collect()
    }
}

/// Builds P(X) for a member X of E.
pub fn admissible_poset(x: &Rep, e: &Membership, bound: usize) -> Result<SubobjectPoset> {
    let alg = e.algebra();
    let mut elements = Vec::new();
    for u in enumerate_subreps(alg, x, bound)? {
        if e.contains(&u.as_rep(alg, x))? && e.contains(&u.quotient(alg, x))? {
            elements.push(u);
        }
    }
    elements.sort_by(|a, b| (a.total_dim(), a).cmp(&(b.total_dim(), b)));
    let n = elements.len();
    let words = n.div_ceil(64);
    let explicit = !e.summand_closed();
    let mut leq = vec![vec![0u64; words]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                set_bit(&mut leq[a], b);
                continue;
            }
            if elements[a].total_dim() >= elements[b].total_dim() || !elements[a].is_sub_of(&elements[b]) {
                continue;
            }
            if explicit {
                let vb = elements[b].as_rep(alg, x);
                let inner = elements[a].restrict_to(&elements[b]);
                if !e.contains(&inner.quotient(alg, &vb))? {
                    continue;
                }
            }
            set_bit(&mut leq[a], b);
        }
    }
    Ok(SubobjectPoset { x: x.clone(), elements, leq })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PosetProperties {
    pub is_lattice: bool,
    pub is_modular: bool,
}

/// Meet and join tables of a lattice, or None when some pair lacks one.
fn lattice_tables(p: &SubobjectPoset) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let n = p.len();
    let downs: Vec<Vec<u64>> = (0..n).map(|b| p.down_set(b)).collect();
    let ups = &p.leq;
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            let common_down: Vec<u64> = downs[a].iter().zip(&downs[b]).map(|(x, y)| x & y).collect();
            let m = (0..n).filter(|&c| bit(&common_down, c)).find(|&c| downs[c] == common_down)?;
            let common_up: Vec<u64> = ups[a].iter().zip(&ups[b]).map(|(x, y)| x & y).collect();
            let j = (0..n).filter(|&c| bit(&common_up, c)).find(|&c| ups[c] == common_up)?;
            meet[a][b] = m;
            meet[b][a] = m;
            join[a][b] = j;
            join[b][a] = j;
        }
    }
    Some((meet, join))
}

pub fn poset_properties(p: &SubobjectPoset) -> PosetProperties {
    let Some((meet, join)) = lattice_tables(p) else {
        return PosetProperties { is_lattice: false, is_modular: false };
    };
    let n = p.len();
    // a <= c implies a ∨ (b ∧ c) = (a ∨ b) ∧ c
    let mut modular = true;
    'outer: for a in 0..n {
        for c in 0..n {
            if !p.leq(a, c) {
                continue;
            }
            for b in 0..n {
                if join[a][meet[b][c]] != meet[join[a][b]][c] {
                    modular = false;
                    break 'outer;
                }
            }
        }
    }
    PosetProperties { is_lattice: true, is_modular: modular }
}

/// Chains of admissible subobjects and their factors for one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub is_simple: bool,
    /// Distinct multisets of composition factors, each sorted; factors are
    /// named by their decomposition in the ambient module category.
    pub factor_multisets: Vec<Vec<String>>,
    pub lengths: Vec<usize>,
    pub jhp_holds: bool,
    pub unique_length: bool,
    pub nu_max: usize,
}

/// Analyses all maximal chains 0 = U_0 < ... < U_l = X of P(X).
pub fn series_analysis(x: &Rep, e: &Membership, bound: usize) -> Result<SeriesReport> {
    if !e.contains(x)? {
        return Err(Error::NotMember);
    }
    let p = admissible_poset(x, e, bound)?;
    series_of_poset(&p, e)
}

pub fn series_of_poset(p: &SubobjectPoset, e: &Membership) -> Result<SeriesReport> {
    let alg = e.algebra();
    let x = &p.x;
    if x.is_zero() {
        return Ok(SeriesReport {
            is_simple: false,
            factor_multisets: vec![vec![]],
            lengths: vec![0],
            jhp_holds: true,
            unique_length: true,
            nu_max: 0,
        });
    }
    let covers = p.covers();
    let mut factor_ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut factor_names: Vec<String> = Vec::new();
    let n = p.len();
    // states[i]: sorted factor-id multisets of maximal chains from 0 to element i
    let mut states: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); n];
    states[0].insert(Vec::new());
    for a in 0..n {
        if states[a].is_empty() {
            continue;
        }
        let current = std::mem::take(&mut states[a]);
        for &b in &covers[a] {
            let vb = p.elements[b].as_rep(alg, x);
            let q = p.elements[a].restrict_to(&p.elements[b]).quotient(alg, &vb);
            let mults = e.catalogue.decompose(&q)?;
            let next = factor_ids.len();
            let id = *factor_ids.entry(mults.clone()).or_insert(next);
            if id == next {
                factor_names.push(e.catalogue.format_mults(&mults));
            }
            for s in &current {
                let mut t = s.clone();
                let pos = t.partition_point(|&f| f <= id);
                t.insert(pos, id);
                states[b].insert(t);
            }
        }
        states[a] = current;
    }
    let top = p.top();
    let mut multisets: Vec<Vec<String>> = states[top]
        .iter()
        .map(|s| {
            let mut names: Vec<String> = s.iter().map(|&f| factor_names[f].clone()).collect();
            names.sort();
            names
        })
        .collect();
    multisets.sort();
    multisets.dedup();
    let lengths: Vec<usize> = states[top].iter().map(|s| s.len()).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(SeriesReport {
        is_simple: n == 2,
        jhp_holds: multisets.len() == 1,
        unique_length: lengths.len() == 1,
        nu_max: *lengths.iter().max().unwrap_or(&0),
        factor_multisets: multisets,
        lengths,
    })
}

/// Checks that U ↦ U/A is an isomorphism from the interval [A, B] of P(X)
/// onto P(B/A).
pub fn interval_matches_quotient(p: &SubobjectPoset, e: &Membership, a: usize, b: usize, bound: usize) -> Result<bool> {
    if !p.leq(a, b) {
        return Ok(false);
    }
    let alg = e.algebra();
    let vb = p.elements[b].as_rep(alg, &p.x);
    let inner = p.elements[a].restrict_to(&p.elements[b]);
    let q = inner.quotient(alg, &vb);
    let target = admissible_poset(&q, e, bound)?;
    let interval: Vec<usize> = (0..p.len()).filter(|&u| p.leq(a, u) && p.leq(u, b)).collect();
    if interval.len() != target.len() {
        return Ok(false);
    }
    let mut image = Vec::with_capacity(interval.len());
    for &u in &interval {
        let img = p.elements[u].restrict_to(&p.elements[b]).project_mod(&inner);
        match target.index_of(&img) {
            Some(k) => image.push(k),
            None => return Ok(false),
        }
    }
    if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
        return Ok(false);
    }
    for (i, &u) in interval.iter().enumerate() {
        for (j, &v) in interval.iter().enumerate() {
            if p.leq(u, v) != target.leq(image[i], image[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::catalogue::Rule;
    use super::super::examples::{a2_all, vector_spaces};
    use super::*;

    fn a2_full() -> (Membership, Rep) {
        let e = a2_all();
        let p = e.catalogue.items[2].clone();
        (e, p)
    }

    #[test]
    fn projective_of_a2_is_a_chain() {
        let (e, p) = a2_full();
        let poset = admissible_poset(&p, &e, 8).unwrap();
        assert_eq!(poset.len(), 3);
        assert_eq!(poset.covers(), vec![vec![1], vec![2], vec![]]);
        let props = poset_properties(&poset);
        assert!(props.is_lattice && props.is_modular);
        let rep = series_analysis(&p, &e, 8).unwrap();
        assert_eq!(rep.factor_multisets, vec![vec!["S1".to_string(), "S2".to_string()]]);
        assert!(rep.jhp_holds && !rep.is_simple);
    }

    #[test]
    fn three_dim_space_is_simple_without_lines() {
        let e = vector_spaces(Rule::TotalDimNotIn(vec![1]));
        let x = Rep::with_zero_maps(e.algebra(), vec![3]);
        let p = admissible_poset(&x, &e, 8).unwrap();
        assert_eq!(p.len(), 2);
        assert!(series_analysis(&x, &e, 8).unwrap().is_simple);
    }

    #[test]
    fn six_dim_space_breaks_jordan_hoelder() {
        let e = vector_spaces(Rule::TotalDimNotIn(vec![1]));
        let x = Rep::with_zero_maps(e.algebra(), vec![6]);
        let r = series_analysis(&x, &e, 8).unwrap();
        assert_eq!(r.lengths, vec![2, 3]);
        assert_eq!(
            r.factor_multisets,
            vec![vec!["2*k".to_string(); 3], vec!["3*k".to_string(); 2]]
        );
        assert!(!r.jhp_holds && !r.unique_length);
        assert_eq!(r.nu_max, 3);
    }

    #[test]
    fn missing_meet_makes_a_non_lattice() {
        let e = vector_spaces(Rule::TotalDimNotIn(vec![1, 3]));
        let x = Rep::with_zero_maps(e.algebra(), vec![6]);
        let p = admissible_poset(&x, &e, 8).unwrap();
        assert!(!poset_properties(&p).is_lattice);
    }

    #[test]
    fn non_member_is_rejected() {
        let e = vector_spaces(Rule::TotalDimNotIn(vec![1]));
        let x = Rep::with_zero_maps(e.algebra(), vec![1]);
        assert_eq!(series_analysis(&x, &e, 8), Err(Error::NotMember));
    }

    #[test]
    fn intervals_are_quotient_posets() {
        let (e, p) = a2_full();
        let alg = e.algebra().clone();
        let x = p.direct_sum(&Rep::simple(&alg, 0)).direct_sum(&Rep::simple(&alg, 1));
        let poset = admissible_poset(&x, &e, 8).unwrap();
        for a in 0..poset.len() {
            for b in 0..poset.len() {
                if poset.leq(a, b) {
                    assert!(interval_matches_quotient(&poset, &e, a, b, 8).unwrap());
                }
            }
        }
        let props = poset_properties(&poset);
        assert!(props.is_lattice && props.is_modular);
    }
}
