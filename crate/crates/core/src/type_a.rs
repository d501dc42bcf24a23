//! Torsion-free classes of type A path algebras through c-sortable
//! elements: interval modules, the class F(w), its simples and censuses.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::repkit::{Catalogue, Mat, Membership, PresentedAlgebra, Rep, Rule};
use crate::symgroup::{
    bruhat_inversions, coxeter_element, enumerate_c_sortable, enumerate_c_sortable_by_sorting_word, format_transpositions,
    inversions, is_c_sortable, support, CoxeterWord, Dir, Orientation, Permutation, Transposition,
};

/// The indecomposable M[i,j) supported on the vertices i..j-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct IntervalModule {
    pub i: usize,
    pub j: usize,
}

impl IntervalModule {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "empty interval");
        IntervalModule { i, j }
    }

    pub fn from_transposition(t: Transposition) -> Self {
        IntervalModule { i: t.i, j: t.j }
    }

    pub fn transposition(&self) -> Transposition {
        Transposition { i: self.i, j: self.j }
    }

    pub fn len(&self) -> usize {
        self.j - self.i
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimvec(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|v| usize::from(self.i <= v && v < self.j)).collect()
    }

    /// The representation with F2 on the support and identity maps along it.
    pub fn rep(&self, q: &Orientation) -> Rep {
        let dims = self.dimvec(q.n);
        let maps = (1..q.n)
            .map(|k| {
                let (s, t) = match q.edge(k) {
                    Dir::Right => (k, k + 1),
                    Dir::Left => (k + 1, k),
                };
                if dims[s - 1] == 1 && dims[t - 1] == 1 {
                    Mat::identity(1)
                } else {
                    Mat::zero(dims[t - 1], dims[s - 1])
                }
            })
            .collect();
        Rep { dims, maps }
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{})", self.i, self.j)
    }
}

/// Path algebra of the orientation; arrow k joins vertices k and k+1.
pub fn path_algebra(q: &Orientation) -> PresentedAlgebra {
    let edges: Vec<(usize, usize)> = (1..q.n)
        .map(|k| match q.edge(k) {
            Dir::Right => (k, k + 1),
            Dir::Left => (k + 1, k),
        })
        .collect();
    PresentedAlgebra::from_edges(q.n, &edges, vec![]).expect("a linear quiver is a valid algebra")
}

/// All interval modules of A_n, in the order of their transpositions.
pub fn all_intervals(n: usize) -> Vec<IntervalModule> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            out.push(IntervalModule::new(i, j));
        }
    }
    out
}

/// S_v, P_v or I_v when the interval is one of these.
pub fn classical_name(m: &IntervalModule, q: &Orientation) -> Option<String> {
    if m.len() == 1 {
        return Some(format!("S{}", m.i));
    }
    for v in m.i..m.j {
        if reach(q, v, true) == (m.i, m.j) {
            return Some(format!("P{v}"));
        }
        if reach(q, v, false) == (m.i, m.j) {
            return Some(format!("I{v}"));
        }
    }
    None
}

/// Interval of vertices reached from v along (forward) or against arrows.
fn reach(q: &Orientation, v: usize, forward: bool) -> (usize, usize) {
    let mut lo = v;
    while lo > 1 && (q.edge(lo - 1) == Dir::Left) == forward {
        lo -= 1;
    }
    let mut hi = v;
    while hi < q.n && (q.edge(hi) == Dir::Right) == forward {
        hi += 1;
    }
    (lo, hi + 1)
}

/// Complete catalogue of mod kQ, items in the order of `all_intervals`.
pub fn catalogue(q: &Orientation) -> Catalogue {
    let alg = Arc::new(path_algebra(q));
    let ms = all_intervals(q.n);
    let items = ms.iter().map(|m| m.rep(q)).collect();
    let names = ms.iter().map(|m| m.to_string()).collect();
    Catalogue::complete(alg, items, names).expect("interval modules form a complete catalogue")
}

/// Torsion-free class F(w) = add{ M[i,j) : (i,j) ∈ inv(w) }.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionFreeClassA {
    pub w: Permutation,
    pub quiver: Orientation,
    pub modules: Vec<IntervalModule>,
}

impl TorsionFreeClassA {
    pub fn contains(&self, m: &IntervalModule) -> bool {
        self.modules.binary_search(m).is_ok()
    }

    /// Membership over the complete catalogue of the ambient category.
    pub fn membership(&self) -> Membership {
        let cat = catalogue(&self.quiver);
        let allowed = all_intervals(self.quiver.n).iter().map(|m| self.contains(m)).collect();
        Membership::new(Arc::new(cat), Rule::Allowed(allowed))
    }

    /// Catalogue indices of the members, in module order.
    pub fn catalogue_indices(&self) -> Vec<usize> {
        let all = all_intervals(self.quiver.n);
        self.modules.iter().map(|m| all.iter().position(|x| x == m).unwrap()).collect()
    }

    /// Members with no proper admissible subobject, found by enumerating
    /// subrepresentations.
    pub fn simples_by_subobjects(&self, bound: usize) -> Result<Vec<IntervalModule>> {
        let e = self.membership();
        let mut out = Vec::new();
        for m in &self.modules {
            if crate::repkit::series_analysis(&m.rep(&self.quiver), &e, bound)?.is_simple {
                out.push(*m);
            }
        }
        Ok(out)
    }

    /// M[i,j) is simple iff no l splits it into two members.
    pub fn simples_direct(&self) -> Vec<IntervalModule> {
        self.modules
            .iter()
            .filter(|m| !(m.i + 1..m.j).any(|l| self.contains(&IntervalModule::new(m.i, l)) && self.contains(&IntervalModule::new(l, m.j))))
            .copied()
            .collect()
    }
}

fn check_sortable(w: &Permutation, q: &Orientation) -> Result<CoxeterWord> {
    let c = coxeter_element(q);
    match is_c_sortable(w, &c)? {
        Some(_) => Ok(c),
        None => Err(Error::NotSortable { w: w.to_string(), c: c.permutation().to_string() }),
    }
}

pub fn class_of(w: &Permutation, q: &Orientation) -> Result<TorsionFreeClassA> {
    check_sortable(w, q)?;
    let modules = inversions(w).into_iter().map(IntervalModule::from_transposition).collect();
    Ok(TorsionFreeClassA { w: w.clone(), quiver: q.clone(), modules })
}

pub fn simples_of(w: &Permutation, q: &Orientation) -> Result<Vec<IntervalModule>> {
    check_sortable(w, q)?;
    Ok(bruhat_inversions(w).into_iter().map(IntervalModule::from_transposition).collect())
}

/// (JHP) holds for F(w) iff #supp(w) = #Binv(w).
pub fn jhp_verdict(w: &Permutation, q: &Orientation) -> Result<bool> {
    check_sortable(w, q)?;
    Ok(support(w).len() == bruhat_inversions(w).len())
}

/// Which of the two standard short exact sequences an interval splits into.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ExactShape {
    /// 0 -> M[i,l) -> M[i,j) -> M[l,j) -> 0
    Ex1,
    /// 0 -> M[l,j) -> M[i,j) -> M[i,l) -> 0
    Ex2,
}

impl ExactShape {
    /// (submodule, quotient) of M[i,j).
    pub fn parts(self, i: usize, j: usize, l: usize) -> (IntervalModule, IntervalModule) {
        match self {
            ExactShape::Ex1 => (IntervalModule::new(i, l), IntervalModule::new(l, j)),
            ExactShape::Ex2 => (IntervalModule::new(l, j), IntervalModule::new(i, l)),
        }
    }
}

pub fn standard_sequences(i: usize, j: usize, l: usize, q: &Orientation) -> Result<ExactShape> {
    if !(1 <= i && i < l && l < j && j <= q.n + 1) {
        return Err(Error::IndexOutOfRange(format!("need 1 <= i < l < j <= {}, got i={i}, l={l}, j={j}", q.n + 1)));
    }
    Ok(match q.edge(l - 1) {
        Dir::Left => ExactShape::Ex1,
        Dir::Right => ExactShape::Ex2,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Census {
    pub total: usize,
    pub jhp: usize,
    pub faithful_jhp: usize,
}

pub fn census(q: &Orientation) -> Census {
    let c = coxeter_element(q);
    let mut out = Census { total: 0, jhp: 0, faithful_jhp: 0 };
    for w in enumerate_c_sortable(&c) {
        out.total += 1;
        let supp = support(&w);
        if supp.len() == bruhat_inversions(&w).len() {
            out.jhp += 1;
            if supp.len() == q.n {
                out.faithful_jhp += 1;
            }
        }
    }
    out
}

/// One line of a table of c-sortable elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub w: Permutation,
    pub supp: BTreeSet<usize>,
    pub inv: BTreeSet<Transposition>,
    pub binv: BTreeSet<Transposition>,
    pub nsimp: usize,
    pub jhp: bool,
}

impl TableRow {
    pub fn of(w: &Permutation) -> Self {
        let supp = support(w);
        let binv = bruhat_inversions(w);
        TableRow { w: w.clone(), jhp: supp.len() == binv.len(), nsimp: binv.len(), inv: inversions(w), supp, binv }
    }

    /// Cells (w, supp, inv, Binv, #simp, jhp) as strings.
    pub fn cells(&self) -> [String; 6] {
        let supp = self.supp.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        [
            self.w.to_string(),
            format!("{{{supp}}}"),
            format_transpositions(&self.inv),
            format_transpositions(&self.binv),
            self.nsimp.to_string(),
            self.jhp.to_string(),
        ]
    }
}

/// All c-sortable elements for the orientation (only full-support ones
/// when `faithful_only`), ordered by length and c-sorting word.
pub fn table_rows(q: &Orientation, faithful_only: bool) -> Vec<TableRow> {
    enumerate_c_sortable_by_sorting_word(&coxeter_element(q))
        .iter()
        .filter(|w| !faithful_only || support(w).len() == q.n)
        .map(TableRow::of)
        .collect()
}
