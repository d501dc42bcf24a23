//! Harvesting conflation relations [Y] = [X] + [Z] for a subcategory E.
//!
//! Words are multiplicity vectors over a list of generators, given as
//! catalogue indices of the indecomposables of E.

use std::collections::BTreeSet;

use super::algebra::{cocycle_combination, ext1_basis, extension_middle, Rep};
use super::catalogue::Membership;
use super::linalg::{for_each_subspace_of_dim, Mat};
use super::subrep::enumerate_subreps;
use crate::error::{Error, Result};

/// A relation (middle, left + right) between generator words.
pub type RelationPair = (Vec<usize>, Vec<usize>);

/// Every multiplicity vector m over `weights` with 0 < Σ m_k w_k <= budget
/// and m_k <= caps[k], in lexicographic order.
pub fn words_up_to(weights: &[usize], caps: Option<&[usize]>, budget: usize) -> Vec<Vec<usize>> {
    fn rec(weights: &[usize], caps: Option<&[usize]>, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == weights.len() {
            if cur.iter().any(|&m| m > 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut m = 0;
        loop {
            if caps.is_some_and(|c| m > c[k]) || m * weights[k] > left {
                break;
            }
            cur.push(m);
            rec(weights, caps, k + 1, left - m * weights[k], cur, out);
            cur.pop();
            m += 1;
            if weights[k] == 0 && m > 0 {
                break;
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, caps, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// Generator word of a member of E.
pub fn word_of(e: &Membership, gens: &[usize], y: &Rep) -> Result<Vec<usize>> {
    let mults = e.catalogue.decompose(y)?;
    let mut word = vec![0; gens.len()];
    for (k, &m) in mults.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let pos = gens.iter().position(|&g| g == k).ok_or(Error::NotMember)?;
        word[pos] = m;
    }
    Ok(word)
}

pub fn rep_of_word(e: &Membership, gens: &[usize], word: &[usize]) -> Rep {
    let mut mults = vec![0; e.catalogue.len()];
    for (pos, &m) in word.iter().enumerate() {
        mults[gens[pos]] += m;
    }
    e.catalogue.rep_of(&mults)
}

fn add(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// For every Y in E of total dimension <= maxlen and every subrep U of Y
/// with U, Y/U in E, the pair (Y, U + Y/U). Pairs with equal sides (split
/// conflations) are dropped; the result is sorted.
pub fn conflations_up_to(e: &Membership, gens: &[usize], maxlen: usize, bound: usize) -> Result<Vec<RelationPair>> {
    let alg = e.algebra();
    let weights: Vec<usize> = gens.iter().map(|&g| e.catalogue.items[g].total_dim()).collect();
    let mut out = BTreeSet::new();
    for word in words_up_to(&weights, None, maxlen) {
        let y = rep_of_word(e, gens, &word);
        for u in enumerate_subreps(alg, &y, bound)? {
            let sub = u.as_rep(alg, &y);
            if sub.is_zero() || u.total_dim() == y.total_dim() || !e.contains(&sub)? {
                continue;
            }
            let quo = u.quotient(alg, &y);
            if !e.contains(&quo)? {
                continue;
            }
            let ends = add(&word_of(e, gens, &sub)?, &word_of(e, gens, &quo)?);
            if ends != word {
                out.insert((word.clone(), ends));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Relations from extensions 0 -> X -> Y -> Z -> 0 with X an indecomposable
/// of E, Z in E and Y in E, |Y| <= maxlen. When E is closed under
/// submodules and extensions these generate the same congruence as all
/// conflations: a conflation with decomposable left term factors through
/// one with an indecomposable left term, the class of Y only depends on
/// the orbit of the extension under Aut(Z), and a Z-summand whose
/// extension component is a combination of the others splits off.
pub fn generating_conflations(e: &Membership, gens: &[usize], maxlen: usize) -> Result<Vec<RelationPair>> {
    let mut out = BTreeSet::new();
    for_each_generating_extension(e, gens, maxlen, &mut |y, ends| {
        if e.contains(y)? {
            let word = word_of(e, gens, y)?;
            if word != ends {
                out.insert((word, ends.to_vec()));
            }
        }
        Ok(true)
    })?;
    Ok(out.into_iter().collect())
}

/// Whether every generating extension (as above) of total dimension <=
/// maxlen has its middle term in E; otherwise the end word of the first
/// offending extension. For E closed under submodules this decides
/// extension closure up to maxlen.
pub fn extension_closed_up_to(e: &Membership, gens: &[usize], maxlen: usize) -> Result<Option<Vec<usize>>> {
    let mut bad = None;
    for_each_generating_extension(e, gens, maxlen, &mut |y, ends| {
        if e.contains(y)? {
            Ok(true)
        } else {
            bad = Some(ends.to_vec());
            Ok(false)
        }
    })?;
    Ok(bad)
}

/// Calls f(Y, word of X + Z) for every generating extension; f returns
/// false to stop.
fn for_each_generating_extension(
    e: &Membership,
    gens: &[usize],
    maxlen: usize,
    f: &mut dyn FnMut(&Rep, &[usize]) -> Result<bool>,
) -> Result<()> {
    let alg = e.algebra();
    let items = &e.catalogue.items;
    let weights: Vec<usize> = gens.iter().map(|&g| items[g].total_dim()).collect();
    for (xi, &xg) in gens.iter().enumerate() {
        let x = &items[xg];
        if weights[xi] >= maxlen {
            continue;
        }
        let bases: Vec<Vec<Vec<Mat>>> = gens.iter().map(|&zg| ext1_basis(alg, &items[zg], x)).collect::<Result<_>>()?;
        let caps: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        if caps.iter().all(|&c| c == 0) {
            continue;
        }
        let mut left = vec![0; gens.len()];
        left[xi] = 1;
        for zword in words_up_to(&weights, Some(&caps), maxlen - weights[xi]) {
            // per generator: the admissible lists of independent cocycles
            let mut choices: Vec<Vec<Vec<Vec<Mat>>>> = Vec::new();
            for (k, &m) in zword.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let z = &items[gens[k]];
                let mut opts = Vec::new();
                for_each_subspace_of_dim(caps[k], m, &mut |s| {
                    opts.push(s.rows.iter().map(|&mask| cocycle_combination(alg, &bases[k], mask, z, x)).collect::<Vec<_>>());
                });
                choices.push(opts);
            }
            let zparts: Vec<&Rep> = zword
                .iter()
                .enumerate()
                .flat_map(|(k, &m)| std::iter::repeat_n(&items[gens[k]], m))
                .collect();
            let z = Rep::direct_sum_all(alg, zparts.iter().copied());
            let ends = add(&left, &zword);
            let mut pick = vec![0usize; choices.len()];
            loop {
                let mut eps: Vec<Mat> = alg.arrows.iter().map(|a| Mat::zero(x.dims[a.target], 0)).collect();
                for (c, &p) in pick.iter().enumerate() {
                    for cocycle in &choices[c][p] {
                        eps = eps.iter().zip(cocycle).map(|(acc, m)| acc.hstack(m)).collect();
                    }
                }
                let y = extension_middle(alg, x, &z, &eps);
                if !f(&y, &ends)? {
                    return Ok(());
                }
                // odometer over the choices
                let mut c = 0;
                while c < pick.len() {
                    pick[c] += 1;
                    if pick[c] < choices[c].len() {
                        break;
                    }
                    pick[c] = 0;
                    c += 1;
                }
                if c == pick.len() {
                    break;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::super::algebra::PresentedAlgebra;
    use super::super::catalogue::{Catalogue, Rule};
    use super::*;

    fn a2_all() -> Membership {
        let alg = Arc::new(PresentedAlgebra::from_edges(2, &[(2, 1)], vec![]).unwrap());
        let s1 = Rep::simple(&alg, 0);
        let s2 = Rep::simple(&alg, 1);
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        let cat = Catalogue::complete(alg, vec![s1, s2, p], vec!["S1".into(), "S2".into(), "P".into()]).unwrap();
        Membership::new(Arc::new(cat), Rule::All)
    }

    #[test]
    fn word_enumeration() {
        let w = words_up_to(&[1, 2], None, 2);
        assert_eq!(w, vec![vec![0, 1], vec![1, 0], vec![2, 0]]);
        let capped = words_up_to(&[1, 1], Some(&[1, 0]), 5);
        assert_eq!(capped, vec![vec![1, 0]]);
    }

    #[test]
    fn a2_has_the_one_nonsplit_sequence() {
        let e = a2_all();
        let rels = conflations_up_to(&e, &[0, 1, 2], 2, 8).unwrap();
        assert_eq!(rels, vec![(vec![0, 0, 1], vec![1, 1, 0])]);
        assert_eq!(generating_conflations(&e, &[0, 1, 2], 2).unwrap(), rels);
    }

    #[test]
    fn relations_preserve_dimension() {
        let e = a2_all();
        let w = [1, 1, 2];
        for (y, xz) in conflations_up_to(&e, &[0, 1, 2], 4, 8).unwrap() {
            let gy: usize = y.iter().zip(&w).map(|(a, b)| a * b).sum();
            let gx: usize = xz.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert_eq!(gy, gx);
        }
    }
}
