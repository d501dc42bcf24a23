//! Smith normal form over the integers and the group completion of a
//! presented monoid.

use serde::Serialize;

use super::{atoms, Presentation, Strata};
use crate::error::Result;

/// U A V = D for unimodular U, V; only the column transform is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Row vector x times V.
    pub fn transform(&self, x: &[i128]) -> Vec<i128> {
        let n = self.v.len();
        (0..n).map(|c| (0..n).map(|r| x[r] * self.v[r][c]).sum()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Smith normal form of an m x n matrix given by rows.
pub fn smith_normal_form(rows: &[Vec<i128>], n: usize) -> Snf {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let m = a.len();
    let mut v = identity(n);
    let mut v_inv = identity(n);
    // column ops act on a and v (right), and inversely on v_inv (left)
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vi: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    // column j += q * column i
    let col_add = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vi: &mut Vec<Vec<i128>>, i: usize, j: usize, q: i128| {
        for row in a.iter_mut() {
            row[j] += q * row[i];
        }
        for row in v.iter_mut() {
            row[j] += q * row[i];
        }
        // inverse: row i of v_inv -= q * row j
        let rj = vi[j].clone();
        for (x, y) in vi[i].iter_mut().zip(&rj) {
            *x -= q * y;
        }
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        col_swap(&mut a, &mut v, &mut v_inv, t, pc);
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..m {
                let q = a[r][t] / p;
                if q != 0 {
                    let rt = a[t].clone();
                    for (x, y) in a[r].iter_mut().zip(&rt) {
                        *x -= q * y;
                    }
                }
                if a[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                let q = a[t][c] / p;
                if q != 0 {
                    col_add(&mut a, &mut v, &mut v_inv, t, c, -q);
                }
                if a[t][c] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..m).flat_map(|r| (t + 1..n).map(move |c| (r, c))).find(|&(r, c)| a[r][c] % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        let rr = a[r].clone();
                        for (x, y) in a[t].iter_mut().zip(&rr) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row t / column t to the pivot
            let mut best = (t, t);
            for r in t..m {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..n {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                col_swap(&mut a, &mut v, &mut v_inv, t, best.1);
            }
        }
        if a[t][t] < 0 {
            for r in a.iter_mut() {
                r[t] = -r[t];
            }
            for r in v.iter_mut() {
                r[t] = -r[t];
            }
            for x in v_inv[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    Snf { diag, v, v_inv }
}

/// Structure of K0 = gp M as Z^rank ⊕ torsion, with the images of atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCompletionData {
    pub rank: usize,
    pub invariant_factors: Vec<i64>,
    /// Per atom: residues modulo the invariant factors, then free coordinates.
    pub atom_images: Vec<Vec<i64>>,
}

impl GroupCompletionData {
    pub fn torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// The group completion: the lattice L spanned by carrier words modulo the
/// relation differences.
pub fn group_completion(p: &Presentation, strata: &mut Strata) -> Result<GroupCompletionData> {
    let n = p.gens.len();
    let atom_words: Vec<Vec<usize>> = atoms(p, strata)?.iter().map(|a| a.representative.clone()).collect();

    // basis of L
    let lattice_rows: Vec<Vec<i128>> = if p.carrier.is_all() {
        (0..n).map(|k| (0..n).map(|j| i128::from(j == k)).collect()).collect()
    } else {
        atom_words.iter().map(|w| w.iter().map(|&x| x as i128).collect()).collect()
    };
    let ls = smith_normal_form(&lattice_rows, n);
    let k = ls.rank();
    let coords = |x: &[i128]| -> Vec<i128> {
        let y = ls.transform(x);
        (0..k).map(|i| y[i] / ls.diag[i]).collect()
    };

    let rel_rows: Vec<Vec<i128>> = p
        .relations
        .iter()
        .map(|(u, v)| {
            let d: Vec<i128> = u.iter().zip(v).map(|(&a, &b)| a as i128 - b as i128).collect();
            coords(&d)
        })
        .collect();
    let rs = smith_normal_form(&rel_rows, k);
    let r = rs.rank();
    let invariant_factors: Vec<i64> = rs.diag.iter().filter(|&&d| d > 1).map(|&d| d as i64).collect();
    let atom_images = atom_words
        .iter()
        .map(|w| {
            let x: Vec<i128> = w.iter().map(|&m| m as i128).collect();
            let y = rs.transform(&coords(&x));
            let mut img = Vec::new();
            for i in 0..r {
                if rs.diag[i] > 1 {
                    img.push(y[i].rem_euclid(rs.diag[i]) as i64);
                }
            }
            img.extend(y[r..].iter().map(|&c| c as i64));
            img
        })
        .collect();
    Ok(GroupCompletionData { rank: k - r, invariant_factors, atom_images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter().map(|row| (0..n).map(|c| row.iter().zip(b).map(|(x, br)| x * br[c]).sum()).collect()).collect()
    }

    #[test]
    fn small_examples() {
        let s = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let s = smith_normal_form(&[vec![1, -1, 0]], 3);
        assert_eq!(s.diag, vec![1]);
        let s = smith_normal_form(&[], 2);
        assert!(s.diag.is_empty());
    }

    proptest! {
        #[test]
        fn snf_invariants(rows in proptest::collection::vec(proptest::collection::vec(-6i128..7, 3), 0..4)) {
            let s = smith_normal_form(&rows, 3);
            prop_assert_eq!(mul(&s.v, &s.v_inv), identity(3));
            for w in s.diag.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert!(s.diag.iter().all(|&d| d > 0));
            // A V has nonzero columns only where the diagonal lives
            let av = mul(&rows, &s.v);
            for row in &av {
                for (c, &x) in row.iter().enumerate() {
                    if c >= s.rank() {
                        prop_assert_eq!(x, 0);
                    }
                }
            }
        }
    }
}
