//! Freeness and half-factoriality verdicts.

use num::rational::Ratio;
use num::{One, Zero};
use serde::Serialize;

use super::snf::GroupCompletionData;
use super::strata::AtomClass;
use super::{atoms, group_completion, Presentation, Strata};
use crate::error::Result;

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FreeVerdict {
    /// Free on the listed atoms.
    Free { basis: Vec<String> },
    Torsion { invariant_factors: Vec<i64> },
    CollidingAtoms { first: String, second: String },
    /// More atoms than the rank of the group completion.
    AtomCount { atoms: usize, rank: usize },
}

impl FreeVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreeVerdict::Free { .. })
    }
}

pub fn free_verdict(atom_list: &[AtomClass], k0: &GroupCompletionData) -> FreeVerdict {
    if !k0.torsion_free() {
        return FreeVerdict::Torsion { invariant_factors: k0.invariant_factors.clone() };
    }
    for i in 0..atom_list.len() {
        for j in i + 1..atom_list.len() {
            if k0.atom_images[i] == k0.atom_images[j] {
                return FreeVerdict::CollidingAtoms { first: atom_list[i].name.clone(), second: atom_list[j].name.clone() };
            }
        }
    }
    if atom_list.len() != k0.rank {
        return FreeVerdict::AtomCount { atoms: atom_list.len(), rank: k0.rank };
    }
    FreeVerdict::Free { basis: atom_list.iter().map(|a| a.name.clone()).collect() }
}

/// Free iff K0 is torsion-free, atoms have distinct images and their number
/// equals the rank.
pub fn is_free(p: &Presentation, strata: &mut Strata) -> Result<FreeVerdict> {
    let atom_list = atoms(p, strata)?;
    let k0 = group_completion(p, strata)?;
    Ok(free_verdict(&atom_list, &k0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HalfFactorialVerdict {
    /// A length function: the value of each generator, as "p/q" strings.
    HalfFactorial { nu: Vec<String> },
    NotHalfFactorial,
}

impl HalfFactorialVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HalfFactorialVerdict::HalfFactorial { .. })
    }
}

/// Half-factorial iff some additive ν vanishes on every relation u - v and
/// takes the value 1 on every atom word. Decided exactly over Q.
pub fn is_half_factorial(p: &Presentation, strata: &mut Strata) -> Result<HalfFactorialVerdict> {
    let atom_list = atoms(p, strata)?;
    let n = p.gens.len();
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for (u, v) in &p.relations {
        rows.push((u.iter().zip(v).map(|(&a, &b)| Q::from_integer(a as i128 - b as i128)).collect(), Q::zero()));
    }
    for atom in &atom_list {
        for w in &atom.words {
            rows.push((w.iter().map(|&m| Q::from_integer(m as i128)).collect(), Q::one()));
        }
    }
    Ok(match solve(rows, n) {
        Some(nu) => HalfFactorialVerdict::HalfFactorial { nu: nu.iter().map(|q| q.to_string()).collect() },
        None => HalfFactorialVerdict::NotHalfFactorial,
    })
}

/// One solution of the linear system (free unknowns set to 0), if any.
fn solve(mut rows: Vec<(Vec<Q>, Q)>, n: usize) -> Option<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i].0[c].is_zero()) else { continue };
        rows.swap(r, pr);
        let p = rows[r].0[c];
        for x in rows[r].0.iter_mut() {
            *x /= p;
        }
        rows[r].1 /= p;
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row.0[c];
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.0.iter_mut().zip(&prow.0) {
                *x -= f * y;
            }
            row.1 -= f * prow.1;
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| !b.is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::super::tests::a2_gens;
    use super::super::{Carrier, GeneratorTable};
    use super::*;

    #[test]
    fn module_category_of_a2_is_free() {
        let p = Presentation::new(a2_gens(), Carrier::All, vec![(vec![0, 0, 1], vec![1, 1, 0])]).unwrap();
        let v = is_free(&p, &mut Strata::new()).unwrap();
        assert_eq!(v, FreeVerdict::Free { basis: vec!["S2".into(), "S1".into()] });
        assert!(is_half_factorial(&p, &mut Strata::new()).unwrap().holds());
    }

    #[test]
    fn single_generator_is_free() {
        let p = Presentation::free(GeneratorTable::new(vec!["x".into()], vec![1], None).unwrap());
        assert!(is_free(&p, &mut Strata::new()).unwrap().is_free());
    }

    #[test]
    fn unequal_factorization_lengths() {
        // a + a + a = b + b with a, b atoms of grades 2 and 3
        let g = GeneratorTable::new(vec!["a".into(), "b".into()], vec![2, 3], None).unwrap();
        let p = Presentation::new(g, Carrier::All, vec![(vec![3, 0], vec![0, 2])]).unwrap();
        assert_eq!(is_half_factorial(&p, &mut Strata::new()).unwrap(), HalfFactorialVerdict::NotHalfFactorial);
        assert!(!is_free(&p, &mut Strata::new()).unwrap().is_free());
    }

    #[test]
    fn solver_handles_dependent_rows() {
        let q = |x: i128| Q::from_integer(x);
        let rows = vec![(vec![q(1), q(1)], q(2)), (vec![q(2), q(2)], q(4)), (vec![q(1), q(-1)], q(0))];
        assert_eq!(solve(rows, 2), Some(vec![q(1), q(1)]));
        let bad = vec![(vec![q(1), q(1)], q(2)), (vec![q(1), q(1)], q(3))];
        assert_eq!(solve(bad, 2), None);
    }
}
