//! Indecomposable catalogues, decomposition into indecomposables, iso tests
//! and membership rules for subcategories.

use std::sync::Arc;

use num::rational::Ratio;
use num::{One, Zero};

use super::algebra::{combination, hom_basis, hom_dim, is_iso, is_nilpotent, Morphism, PresentedAlgebra, Rep};
use super::subrep::SubRep;
use super::linalg::Subspace;
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Largest endomorphism space searched exhaustively when splitting.
const MAX_SEARCH_BITS: usize = 22;

#[derive(Clone, Debug)]
enum Method {
    /// Inverse of the Hom-count matrix dim Hom(M_i, M_j).
    HomCount(Vec<Vec<Q>>),
    /// Fitting splitting followed by an isomorphism search against the items.
    Split,
}

/// A list of pairwise non-isomorphic indecomposables of an algebra.
#[derive(Clone, Debug)]
pub struct Catalogue {
    pub algebra: Arc<PresentedAlgebra>,
    pub items: Vec<Rep>,
    pub names: Vec<String>,
    method: Method,
}

impl Catalogue {
    /// Catalogue of all indecomposables of a representation-finite algebra.
    /// Fails with SingularSystem when the Hom-count matrix is singular.
    pub fn complete(algebra: Arc<PresentedAlgebra>, items: Vec<Rep>, names: Vec<String>) -> Result<Self> {
        assert_eq!(items.len(), names.len());
        let n = items.len();
        let mut h = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                h[i][j] = Q::from_integer(hom_dim(&algebra, &items[i], &items[j])? as i128);
            }
        }
        let inv = invert(h).ok_or(Error::SingularSystem)?;
        Ok(Catalogue { algebra, items, names, method: Method::HomCount(inv) })
    }

    /// Catalogue used with splitting and iso search; it need not be complete,
    /// but decomposing a module with a summand outside it fails.
    pub fn by_search(algebra: Arc<PresentedAlgebra>, items: Vec<Rep>, names: Vec<String>) -> Self {
        assert_eq!(items.len(), names.len());
        Catalogue { algebra, items, names, method: Method::Split }
    }

    /// Every indecomposable of total dimension at most `max_dim`, found by
    /// exhausting all matrix assignments.
    pub fn discover(algebra: Arc<PresentedAlgebra>, max_dim: usize) -> Result<Self> {
        let items = discover_indecomposables(&algebra, max_dim)?;
        let names = items.iter().map(|r| format!("X{}", r)).collect();
        Ok(Self::by_search(algebra, items, names))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn index_of(&self, x: &Rep) -> Result<Option<usize>> {
        for (k, it) in self.items.iter().enumerate() {
            if isomorphic(&self.algebra, it, x)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Multiplicity of each catalogue item as a summand of x.
    pub fn decompose(&self, x: &Rep) -> Result<Vec<usize>> {
        x.check(&self.algebra)?;
        match &self.method {
            Method::HomCount(inv) => {
                let n = self.items.len();
                let h: Vec<Q> = self
                    .items
                    .iter()
                    .map(|m| hom_dim(&self.algebra, m, x).map(|d| Q::from_integer(d as i128)))
                    .collect::<Result<_>>()?;
                let mut out = vec![0usize; n];
                for j in 0..n {
                    let mut acc = Q::zero();
                    for i in 0..n {
                        acc += inv[j][i] * h[i];
                    }
                    if !acc.is_integer() || acc < Q::zero() {
                        return Err(Error::NegativeMultiplicity);
                    }
                    out[j] = *acc.numer() as usize;
                }
                let mut dims = vec![0; x.dims.len()];
                for (j, &m) in out.iter().enumerate() {
                    for (v, d) in self.items[j].dims.iter().enumerate() {
                        dims[v] += m * d;
                    }
                }
                if dims != x.dims {
                    return Err(Error::SingularSystem);
                }
                Ok(out)
            }
            Method::Split => {
                let mut out = vec![0usize; self.items.len()];
                for part in indecomposable_summands(&self.algebra, x)? {
                    let k = self.index_of(&part)?.ok_or_else(|| {
                        Error::EnumerationOverflow(format!("summand {} is not in the catalogue", part.to_text(&self.algebra)))
                    })?;
                    out[k] += 1;
                }
                Ok(out)
            }
        }
    }

    pub fn rep_of(&self, mults: &[usize]) -> Rep {
        let mut acc = Rep::zero(&self.algebra);
        for (k, &m) in mults.iter().enumerate() {
            for _ in 0..m {
                acc = acc.direct_sum(&self.items[k]);
            }
        }
        acc
    }

    pub fn format_mults(&self, mults: &[usize]) -> String {
        let parts: Vec<String> = mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| if m == 1 { self.names[k].clone() } else { format!("{}*{}", m, self.names[k]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn invert(mut a: Vec<Vec<Q>>) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut b: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col];
        for k in 0..n {
            a[col][k] /= p;
            b[col][k] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in 0..n {
                    let (ak, bk) = (a[col][k], b[col][k]);
                    a[r][k] -= f * ak;
                    b[r][k] -= f * bk;
                }
            }
        }
    }
    Some(b)
}

pub fn isomorphic(alg: &PresentedAlgebra, a: &Rep, b: &Rep) -> Result<bool> {
    if a.dims != b.dims {
        return Ok(false);
    }
    if alg.arrows.is_empty() {
        return Ok(true);
    }
    let basis = hom_basis(alg, a, b)?;
    if hom_dim(alg, a, a)? != basis.len() || hom_dim(alg, b, b)? != basis.len() {
        return Ok(false);
    }
    if basis.len() > MAX_SEARCH_BITS {
        return Err(Error::EnumerationOverflow(format!("isomorphism search over 2^{}", basis.len())));
    }
    for mask in 1..1u64 << basis.len() {
        if is_iso(&combination(&basis, mask, a, b)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An endomorphism that is neither nilpotent nor invertible, if any.
fn splitting_endomorphism(alg: &PresentedAlgebra, x: &Rep) -> Result<Option<Morphism>> {
    if alg.arrows.is_empty() {
        // semisimple: split off one basis vector
        if x.total_dim() <= 1 {
            return Ok(None);
        }
        let v = x.dims.iter().position(|&d| d > 0).unwrap();
        if x.dims[v] == x.total_dim() && x.dims[v] == 1 {
            return Ok(None);
        }
        let mut f: Morphism = x.dims.iter().map(|&d| super::linalg::Mat::zero(d, d)).collect();
        f[v].set(0, 0, true);
        return Ok(Some(f));
    }
    let basis = hom_basis(alg, x, x)?;
    let good = |f: &Morphism| !is_nilpotent(f) && !is_iso(f);
    // cheap candidates first
    for f in &basis {
        if good(f) {
            return Ok(Some(f.clone()));
        }
    }
    if basis.len() > MAX_SEARCH_BITS {
        return Err(Error::EnumerationOverflow(format!("endomorphism search over 2^{}", basis.len())));
    }
    for mask in 1..1u64 << basis.len() {
        let f = combination(&basis, mask, x, x);
        if good(&f) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn is_indecomposable(alg: &PresentedAlgebra, x: &Rep) -> Result<bool> {
    Ok(!x.is_zero() && splitting_endomorphism(alg, x)?.is_none())
}

/// Splits x as im(f^N) ⊕ ker(f^N) for an endomorphism f that is neither
/// nilpotent nor invertible (Fitting's lemma).
pub fn split(alg: &PresentedAlgebra, x: &Rep) -> Result<Option<(Rep, Rep)>> {
    let Some(f) = splitting_endomorphism(alg, x)? else { return Ok(None) };
    let n = x.total_dim();
    let g: Morphism = f.iter().map(|m| m.pow(n)).collect();
    let image = SubRep {
        spaces: g.iter().map(|m| Subspace::span(m.rows, (0..m.cols).map(|c| m.column(c)))).collect(),
    };
    let kernel = SubRep {
        spaces: g
            .iter()
            .map(|m| Subspace::span(m.cols, super::linalg::column_kernel(&(0..m.cols).map(|c| m.column(c)).collect::<Vec<_>>())))
            .collect(),
    };
    Ok(Some((image.as_rep(alg, x), kernel.as_rep(alg, x))))
}

pub fn indecomposable_summands(alg: &PresentedAlgebra, x: &Rep) -> Result<Vec<Rep>> {
    let mut todo = vec![x.clone()];
    let mut out = Vec::new();
    while let Some(r) = todo.pop() {
        if r.is_zero() {
            continue;
        }
        match split(alg, &r)? {
            Some((a, b)) => {
                todo.push(a);
                todo.push(b);
            }
            None => out.push(r),
        }
    }
    Ok(out)
}

/// Up-to-iso list of indecomposables, grown on demand.
#[derive(Clone, Debug, Default)]
pub struct IsoRegistry {
    pub items: Vec<Rep>,
}

impl IsoRegistry {
    pub fn new() -> Self {
        IsoRegistry { items: Vec::new() }
    }

    /// Index of x (assumed indecomposable), inserting it when new.
    pub fn intern(&mut self, alg: &PresentedAlgebra, x: &Rep) -> Result<usize> {
        for (k, it) in self.items.iter().enumerate() {
            if isomorphic(alg, it, x)? {
                return Ok(k);
            }
        }
        self.items.push(x.clone());
        Ok(self.items.len() - 1)
    }

    /// Sorted registry indices of the indecomposable summands of x.
    pub fn classify(&mut self, alg: &PresentedAlgebra, x: &Rep) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for part in indecomposable_summands(alg, x)? {
            out.push(self.intern(alg, &part)?);
        }
        out.sort();
        Ok(out)
    }
}

/// Every indecomposable of total dimension 1..=max_dim up to isomorphism,
/// ordered by dimension vector.
pub fn discover_indecomposables(alg: &PresentedAlgebra, max_dim: usize) -> Result<Vec<Rep>> {
    let mut reg = IsoRegistry::new();
    let mut dimvecs = Vec::new();
    dim_vectors(alg.vertices, max_dim, &mut Vec::new(), &mut dimvecs);
    dimvecs.sort_by_key(|d: &Vec<usize>| (d.iter().sum::<usize>(), d.clone()));
    for dims in dimvecs {
        if dims.iter().sum::<usize>() == 0 {
            continue;
        }
        let shapes: Vec<(usize, usize)> = alg.arrows.iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let bits: usize = shapes.iter().map(|(r, c)| r * c).sum();
        if bits > 24 {
            return Err(Error::EnumerationOverflow(format!("2^{bits} representations of dimension {dims:?}")));
        }
        for mask in 0..1u64 << bits {
            let mut maps = Vec::with_capacity(shapes.len());
            let mut used = 0;
            for &(r, c) in &shapes {
                let mut m = super::linalg::Mat::zero(r, c);
                for i in 0..r {
                    for j in 0..c {
                        if mask >> used & 1 == 1 {
                            m.set(i, j, true);
                        }
                        used += 1;
                    }
                }
                maps.push(m);
            }
            let rep = Rep { dims: dims.clone(), maps };
            if !rep.satisfies_relations(alg) {
                continue;
            }
            if reg.items.iter().any(|it| it.dims == rep.dims && isomorphic(alg, it, &rep).unwrap_or(false)) {
                continue;
            }
            if is_indecomposable(alg, &rep)? {
                reg.items.push(rep);
            }
        }
    }
    Ok(reg.items)
}

fn dim_vectors(n: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for d in 0..=budget {
        cur.push(d);
        dim_vectors(n, budget - d, cur, out);
        cur.pop();
    }
}

/// Which objects belong to a subcategory E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// The whole module category.
    All,
    /// Direct sums of the allowed catalogue items.
    Allowed(Vec<bool>),
    /// Total dimension outside the listed values (for one-vertex examples).
    TotalDimNotIn(Vec<usize>),
    /// No nonzero vector at the 0-based vertex is killed by every arrow
    /// leaving it, i.e. Hom(S_v, X) = 0.
    NoSimpleSubAt(usize),
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub catalogue: Arc<Catalogue>,
    pub rule: Rule,
}

impl Membership {
    pub fn new(catalogue: Arc<Catalogue>, rule: Rule) -> Self {
        Membership { catalogue, rule }
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.catalogue.algebra
    }

    /// Whether E is closed under direct summands.
    pub fn summand_closed(&self) -> bool {
        !matches!(self.rule, Rule::TotalDimNotIn(_))
    }

    pub fn contains(&self, x: &Rep) -> Result<bool> {
        let alg = &self.catalogue.algebra;
        x.check(alg)?;
        match &self.rule {
            Rule::All => Ok(true),
            Rule::Allowed(ok) => {
                let m = self.catalogue.decompose(x)?;
                Ok(m.iter().zip(ok).all(|(&k, &a)| k == 0 || a))
            }
            Rule::TotalDimNotIn(bad) => Ok(!bad.contains(&x.total_dim())),
            Rule::NoSimpleSubAt(v) => {
                let d = x.dims[*v];
                let outgoing: Vec<usize> = alg.arrows.iter().enumerate().filter(|(_, a)| a.source == *v).map(|(k, _)| k).collect();
                // stack the outgoing maps and test for trivial kernel
                let mut rank_rows = Vec::new();
                for c in 0..d {
                    let mut col = Vec::new();
                    for &a in &outgoing {
                        col.push(x.maps[a].column(c));
                    }
                    rank_rows.push(col);
                }
                Ok(joint_kernel_trivial(&rank_rows, d))
            }
        }
    }

    /// Membership of a catalogue item.
    pub fn allows_item(&self, k: usize) -> Result<bool> {
        match &self.rule {
            Rule::Allowed(ok) => Ok(ok[k]),
            _ => self.contains(&self.catalogue.items[k]),
        }
    }

    /// Indices of catalogue items that lie in E.
    pub fn allowed_items(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for k in 0..self.catalogue.len() {
            if self.allows_item(k)? {
                out.push(k);
            }
        }
        Ok(out)
    }
}

fn joint_kernel_trivial(columns: &[Vec<u64>], d: usize) -> bool {
    // column c of the stacked matrix is the concatenation of columns[c]
    let mut span = super::linalg::Span::new();
    for col in columns {
        let mut v = Vec::new();
        for &w in col {
            v.push(w);
        }
        if v.is_empty() {
            v.push(0);
        }
        if !span.insert(&v) {
            return false;
        }
    }
    span.dim() == d
}

#[cfg(test)]
mod tests {
    use super::super::linalg::Mat;
    use super::*;

    fn a2() -> Arc<PresentedAlgebra> {
        Arc::new(PresentedAlgebra::from_edges(2, &[(2, 1)], vec![]).unwrap())
    }

    fn a2_catalogue() -> Catalogue {
        let alg = a2();
        let s1 = Rep::simple(&alg, 0);
        let s2 = Rep::simple(&alg, 1);
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        Catalogue::complete(alg, vec![s1, s2, p], vec!["S1".into(), "S2".into(), "P".into()]).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let cat = a2_catalogue();
        let alg = cat.algebra.clone();
        let x = cat.items[0].direct_sum(&cat.items[2]);
        assert_eq!(cat.decompose(&x).unwrap(), vec![1, 0, 1]);
        let y = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        assert_eq!(cat.decompose(&y).unwrap(), vec![0, 0, 1]);
        assert_eq!(cat.decompose(&Rep::zero(&alg)).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn incomplete_catalogue_is_detected() {
        let alg = a2();
        let s1 = Rep::simple(&alg, 0);
        let s2 = Rep::simple(&alg, 1);
        let cat = Catalogue::complete(alg.clone(), vec![s1, s2], vec!["S1".into(), "S2".into()]).unwrap();
        let p = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1)]).unwrap();
        assert!(cat.decompose(&p).is_err());
        // two copies of the same module make the Hom-count matrix singular
        let s = Rep::simple(&alg, 0);
        assert!(matches!(
            Catalogue::complete(alg, vec![s.clone(), s], vec!["a".into(), "b".into()]),
            Err(Error::SingularSystem)
        ));
    }

    #[test]
    fn discovery_finds_a2_and_a3() {
        let alg = a2();
        assert_eq!(discover_indecomposables(&alg, 4).unwrap().len(), 3);
        let a3 = PresentedAlgebra::from_edges(3, &[(1, 2), (3, 2)], vec![]).unwrap();
        assert_eq!(discover_indecomposables(&a3, 4).unwrap().len(), 6);
    }

    #[test]
    fn split_and_search_agree_with_hom_count() {
        let cat = a2_catalogue();
        let alg = cat.algebra.clone();
        let search = Catalogue::by_search(alg.clone(), cat.items.clone(), cat.names.clone());
        for mults in [[2usize, 1, 1], [0, 3, 1], [1, 0, 2]] {
            let x = cat.rep_of(&mults);
            assert_eq!(cat.decompose(&x).unwrap(), mults.to_vec());
            assert_eq!(search.decompose(&x).unwrap(), mults.to_vec());
        }
    }

    #[test]
    fn no_simple_sub_rule() {
        // Kronecker 1 <= 2 with both arrows 2 -> 1
        let alg = Arc::new(PresentedAlgebra::from_edges(2, &[(2, 1), (2, 1)], vec![]).unwrap());
        let cat = Arc::new(Catalogue::by_search(alg.clone(), vec![], vec![]));
        let e = Membership::new(cat, Rule::NoSimpleSubAt(1));
        let s2 = Rep::simple(&alg, 1);
        let r = Rep::new(&alg, vec![1, 1], vec![Mat::identity(1), Mat::zero(1, 1)]).unwrap();
        let i1 = Rep::new(&alg, vec![1, 2], vec![Mat::from_entries(1, 2, &[1, 0]), Mat::from_entries(1, 2, &[0, 1])]).unwrap();
        let bad = Rep::new(&alg, vec![1, 2], vec![Mat::from_entries(1, 2, &[1, 0]), Mat::from_entries(1, 2, &[1, 0])]).unwrap();
        assert!(!e.contains(&s2).unwrap());
        assert!(e.contains(&r).unwrap());
        assert!(e.contains(&i1).unwrap());
        assert!(!e.contains(&bad).unwrap());
        assert!(e.contains(&Rep::simple(&alg, 0)).unwrap());
    }
}
