//! Nakayama algebras given by Kupisch series. Arrows run i+1 -> i (and
//! 1 -> n in the cyclic case), so the uniserial with top t and length L has
//! composition factors t, t-1, ..., t-L+1 from top to socle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::repkit::{extension_closed_up_to, Arrow, Catalogue, Membership, PresentedAlgebra, Rep, Rule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KupischSeries {
    /// c_1, ..., c_n: the length of the projective cover of each simple.
    pub lengths: Vec<usize>,
    pub cyclic: bool,
}

impl KupischSeries {
    pub fn new(lengths: Vec<usize>, cyclic: bool) -> Result<Self> {
        let n = lengths.len();
        if n == 0 || lengths.contains(&0) {
            return Err(Error::InvalidSpec("Kupisch lengths must be positive".into()));
        }
        if cyclic {
            if lengths.iter().any(|&c| c < 2) {
                return Err(Error::InvalidSpec("cyclic Kupisch lengths must be at least 2".into()));
            }
            for i in 0..n {
                if lengths[(i + 1) % n] > lengths[i] + 1 {
                    return Err(Error::InvalidSpec(format!("c_{} > c_{} + 1", (i + 1) % n + 1, i + 1)));
                }
            }
        } else {
            if lengths[0] != 1 {
                return Err(Error::InvalidSpec("vertex 1 is a sink, so c_1 must be 1".into()));
            }
            for i in 0..n - 1 {
                if lengths[i + 1] > lengths[i] + 1 {
                    return Err(Error::InvalidSpec(format!("c_{} > c_{} + 1", i + 2, i + 1)));
                }
            }
        }
        Ok(KupischSeries { lengths, cyclic })
    }

    /// "kupisch: 1,2,3" or "kupisch-cyclic: 2,2".
    pub fn parse(s: &str) -> Result<Self> {
        let (key, rest) = s.trim().split_once(':').ok_or_else(|| Error::Parse(format!("bad Kupisch line {s:?}")))?;
        let cyclic = match key.trim() {
            "kupisch" => false,
            "kupisch-cyclic" => true,
            k => return Err(Error::Parse(format!("unknown key {k:?}"))),
        };
        let lengths = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad length {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lengths, cyclic)
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    /// The vertex k steps below t (1-based).
    pub fn shift(&self, t: usize, k: usize) -> usize {
        let n = self.n();
        if self.cyclic {
            (t - 1 + n * k - k) % n + 1
        } else {
            t - k
        }
    }

    pub fn algebra(&self) -> PresentedAlgebra {
        let n = self.n();
        let mut arrows: Vec<Arrow> =
            (1..n).map(|i| Arrow { name: format!("a{i}"), source: i, target: i - 1 }).collect();
        if self.cyclic {
            arrows.push(Arrow { name: format!("a{n}"), source: 0, target: n - 1 });
        }
        // the arrow leaving vertex v (0-based)
        let out = |v: usize| -> Option<usize> {
            if v > 0 {
                Some(v - 1)
            } else if self.cyclic {
                Some(n - 1)
            } else {
                None
            }
        };
        let mut relations = Vec::new();
        for (i, &c) in self.lengths.iter().enumerate() {
            let mut path = Vec::new();
            let mut v = i;
            while path.len() < c {
                match out(v) {
                    Some(a) => {
                        path.push(a);
                        v = arrows[a].target;
                    }
                    None => break,
                }
            }
            if path.len() == c {
                relations.push(path);
            }
        }
        PresentedAlgebra::new(n, arrows, relations).expect("Kupisch relations are composable paths")
    }

    pub fn uniserials(&self) -> Vec<Uniserial> {
        let mut out = Vec::new();
        for t in 1..=self.n() {
            for len in 1..=self.lengths[t - 1] {
                out.push(Uniserial { top: t, len });
            }
        }
        out.sort_by_key(|u| (u.len, u.top));
        out
    }

    pub fn is_valid(&self, u: &Uniserial) -> bool {
        (1..=self.n()).contains(&u.top) && u.len >= 1 && u.len <= self.lengths[u.top - 1]
    }

    pub fn rep(&self, u: &Uniserial) -> Rep {
        let alg = self.algebra();
        let n = self.n();
        // basis vector e_k lives at vertex shift(top, k); order per vertex by k
        let mut slot = vec![0usize; u.len];
        let mut dims = vec![0usize; n];
        for (k, s) in slot.iter_mut().enumerate() {
            let v = self.shift(u.top, k) - 1;
            *s = dims[v];
            dims[v] += 1;
        }
        let mut rep = Rep::with_zero_maps(&alg, dims);
        for k in 0..u.len.saturating_sub(1) {
            let v = self.shift(u.top, k) - 1;
            let a = alg.arrows.iter().position(|ar| ar.source == v).expect("a path continues");
            rep.maps[a].set(slot[k + 1], slot[k], true);
        }
        rep
    }

    /// Proper submodules of u, shortest first.
    pub fn submodule_chain(&self, u: &Uniserial) -> Vec<Uniserial> {
        (1..u.len).map(|k| Uniserial { top: self.shift(u.top, u.len - k), len: k }).collect()
    }

    /// Complete catalogue of the uniserials, in `uniserials` order.
    pub fn catalogue(&self) -> Catalogue {
        let alg = Arc::new(self.algebra());
        let us = self.uniserials();
        let items = us.iter().map(|u| self.rep(u)).collect();
        let names = us.iter().map(|u| u.to_string()).collect();
        Catalogue::complete(alg, items, names).expect("uniserials form a complete catalogue")
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let key = if self.cyclic { "kupisch-cyclic" } else { "kupisch" };
        let ls: Vec<String> = self.lengths.iter().map(|c| c.to_string()).collect();
        write!(f, "{key}: {}", ls.join(","))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Uniserial {
    pub top: usize,
    pub len: usize,
}

impl Uniserial {
    pub fn parse(s: &str) -> Result<Self> {
        let (t, l) = s.trim().split_once(':').ok_or_else(|| Error::Parse(format!("expected top:len, got {s:?}")))?;
        let top = t.trim().parse().map_err(|_| Error::Parse(format!("bad top in {s:?}")))?;
        let len = l.trim().parse().map_err(|_| Error::Parse(format!("bad length in {s:?}")))?;
        Ok(Uniserial { top, len })
    }
}

impl fmt::Display for Uniserial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.top, self.len)
    }
}

/// A candidate torsion-free class, given by its indecomposables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TFClassN {
    pub kupisch: KupischSeries,
    pub members: BTreeSet<Uniserial>,
}

impl TFClassN {
    pub fn new(kupisch: KupischSeries, members: impl IntoIterator<Item = Uniserial>) -> Result<Self> {
        let members: BTreeSet<Uniserial> = members.into_iter().collect();
        if let Some(u) = members.iter().find(|u| !kupisch.is_valid(u)) {
            return Err(Error::InvalidClass(format!("{u} is not a module of {kupisch}")));
        }
        Ok(TFClassN { kupisch, members })
    }

    /// "1:1 2:2 3:3" style lists.
    pub fn parse(kupisch: KupischSeries, s: &str) -> Result<Self> {
        let ms = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(Uniserial::parse).collect::<Result<Vec<_>>>()?;
        Self::new(kupisch, ms)
    }

    pub fn mod_lambda(kupisch: KupischSeries) -> Self {
        let members = kupisch.uniserials().into_iter().collect();
        TFClassN { kupisch, members }
    }

    /// Every missing submodule, as "missing S of U".
    pub fn validate(&self) -> (bool, Vec<String>) {
        let mut violations = Vec::new();
        for u in &self.members {
            for s in self.kupisch.submodule_chain(u) {
                if !self.members.contains(&s) {
                    violations.push(format!("missing {s} below {u}"));
                }
            }
        }
        (violations.is_empty(), violations)
    }

    pub fn tops(&self) -> BTreeSet<usize> {
        self.members.iter().map(|u| u.top).collect()
    }

    /// Catalogue indices of the members in `uniserials` order.
    pub fn catalogue_indices(&self) -> Vec<usize> {
        self.kupisch.uniserials().iter().enumerate().filter(|(_, u)| self.members.contains(u)).map(|(k, _)| k).collect()
    }

    pub fn membership(&self) -> Membership {
        let cat = self.kupisch.catalogue();
        let allowed = self.kupisch.uniserials().iter().map(|u| self.members.contains(u)).collect();
        Membership::new(Arc::new(cat), Rule::Allowed(allowed))
    }
}

/// For each top: (simple object of F, projective object of F), the members
/// of least and greatest length with that top.
pub fn simples_and_projectives(f: &TFClassN) -> Result<BTreeMap<usize, (Uniserial, Uniserial)>> {
    let (ok, violations) = f.validate();
    if !ok {
        return Err(Error::InvalidClass(violations.join("; ")));
    }
    let mut out: BTreeMap<usize, (Uniserial, Uniserial)> = BTreeMap::new();
    for u in &f.members {
        out.entry(u.top)
            .and_modify(|(s, p)| {
                if u.len < s.len {
                    *s = *u;
                }
                if u.len > p.len {
                    *p = *u;
                }
            })
            .or_insert((*u, *u));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaVerdict {
    pub simples: usize,
    pub projectives: usize,
    pub jhp: bool,
}

/// Counts simples and projectives of F; (JHP) holds iff they agree, which
/// is always the case for a genuine torsion-free class.
pub fn jhp_check(f: &TFClassN) -> Result<NakayamaVerdict> {
    let sp = simples_and_projectives(f)?;
    let simples: BTreeSet<Uniserial> = sp.values().map(|(s, _)| *s).collect();
    let projectives: BTreeSet<Uniserial> = sp.values().map(|(_, p)| *p).collect();
    Ok(NakayamaVerdict { simples: simples.len(), projectives: projectives.len(), jhp: simples.len() == projectives.len() })
}

/// Every torsion-free class of the Nakayama algebra: submodule-closed sets
/// of uniserials whose additive closure is extension-closed, the latter
/// checked on objects of total dimension <= maxlen.
pub fn enumerate_torsion_free_classes(kupisch: &KupischSeries, maxlen: usize) -> Result<Vec<TFClassN>> {
    let us = kupisch.uniserials();
    if us.len() > 20 {
        return Err(Error::EnumerationOverflow(format!("{} uniserials", us.len())));
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << us.len() {
        let f = TFClassN { kupisch: kupisch.clone(), members: (0..us.len()).filter(|&k| mask >> k & 1 == 1).map(|k| us[k]).collect() };
        if !f.validate().0 {
            continue;
        }
        if extension_closed_up_to(&f.membership(), &f.catalogue_indices(), maxlen)?.is_none() {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::{enumerate_subreps, Catalogue};

    fn linear3() -> KupischSeries {
        KupischSeries::parse("kupisch: 1,2,3").unwrap()
    }

    fn cyclic22() -> KupischSeries {
        KupischSeries::parse("kupisch-cyclic: 2,2").unwrap()
    }

    fn u(top: usize, len: usize) -> Uniserial {
        Uniserial { top, len }
    }

    #[test]
    fn series_validation() {
        assert!(KupischSeries::parse("kupisch: 3,2,1").is_err());
        assert!(KupischSeries::parse("kupisch: 1,3").is_err());
        assert!(KupischSeries::parse("kupisch-cyclic: 2,1").is_err());
        assert!(KupischSeries::parse("kupisch-cyclic: 2,4").is_err());
        assert_eq!(linear3().to_string(), "kupisch: 1,2,3");
    }

    #[test]
    fn submodule_chains() {
        assert_eq!(linear3().submodule_chain(&u(3, 3)), vec![u(1, 1), u(2, 2)]);
        assert!(linear3().submodule_chain(&u(2, 1)).is_empty());
        assert_eq!(cyclic22().submodule_chain(&u(1, 2)), vec![u(2, 1)]);
    }

    #[test]
    fn chains_match_subrepresentations() {
        for k in [linear3(), cyclic22(), KupischSeries::parse("kupisch-cyclic: 3,2,2").unwrap()] {
            let alg = k.algebra();
            for m in k.uniserials() {
                let rep = k.rep(&m);
                assert!(rep.satisfies_relations(&alg));
                let subs = enumerate_subreps(&alg, &rep, 8).unwrap();
                // a uniserial has exactly len + 1 submodules
                assert_eq!(subs.len(), m.len + 1, "{m}");
                for s in k.submodule_chain(&m) {
                    assert!(subs.iter().any(|x| x.dims() == k.rep(&s).dims));
                }
            }
        }
    }

    #[test]
    fn uniserials_are_all_indecomposables() {
        for k in [linear3(), cyclic22()] {
            let alg = Arc::new(k.algebra());
            let found = crate::repkit::catalogue::discover_indecomposables(&alg, 4).unwrap();
            assert_eq!(found.len(), k.uniserials().len());
            let cat: Catalogue = k.catalogue();
            for x in &found {
                assert!(cat.index_of(x).unwrap().is_some());
            }
        }
    }

    #[test]
    fn validation_examples() {
        assert!(TFClassN::new(linear3(), [u(1, 1), u(2, 2), u(3, 3)]).unwrap().validate().0);
        assert!(!TFClassN::new(linear3(), [u(3, 3)]).unwrap().validate().0);
        assert!(TFClassN::new(linear3(), []).unwrap().validate().0);
        assert!(TFClassN::new(linear3(), [u(1, 2)]).is_err());
    }

    #[test]
    fn simples_and_projectives_examples() {
        let all = TFClassN::mod_lambda(linear3());
        let sp = simples_and_projectives(&all).unwrap();
        assert_eq!(sp[&3], (u(3, 1), u(3, 3)));
        assert_eq!(jhp_check(&all).unwrap(), NakayamaVerdict { simples: 3, projectives: 3, jhp: true });

        let f = TFClassN::new(linear3(), [u(1, 1), u(2, 2), u(3, 3)]).unwrap();
        let sp = simples_and_projectives(&f).unwrap();
        assert!(sp.values().all(|(s, p)| s == p));
        assert_eq!(jhp_check(&f).unwrap().simples, 3);

        let g = TFClassN::new(cyclic22(), [u(2, 1), u(1, 2)]).unwrap();
        let sp = simples_and_projectives(&g).unwrap();
        assert_eq!(sp[&2], (u(2, 1), u(2, 1)));
        assert_eq!(sp[&1], (u(1, 2), u(1, 2)));
        assert!(simples_and_projectives(&TFClassN::new(linear3(), [u(3, 3)]).unwrap()).is_err());
    }

    #[test]
    fn torsion_free_class_counts() {
        // the path algebra of linear A3 has 14 torsion-free classes
        let l = enumerate_torsion_free_classes(&linear3(), 6).unwrap();
        assert_eq!(l.len(), 14);
        assert!(l.iter().all(|f| jhp_check(f).unwrap().jhp));
        let c = enumerate_torsion_free_classes(&cyclic22(), 6).unwrap();
        assert!(c.iter().any(|f| f.members == [u(2, 1), u(1, 2)].into_iter().collect()));
        assert_eq!(c.len(), 6);
    }
}
