//! Finitely presented, positively graded commutative monoids whose
//! elements are words in the generators, optionally restricted to a carrier
//! submonoid.

mod factor;
mod parse;
mod snf;
mod strata;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};

pub use factor::{is_free, is_half_factorial, FreeVerdict, HalfFactorialVerdict};
pub use parse::parse_presentation;
pub use snf::{group_completion, smith_normal_form, GroupCompletionData, Snf};
pub use factor::free_verdict;
pub use strata::{
    atoms, cancellativity_scan, cayley_quiver, class_counts, stratum_classes, AtomClass, Cancellativity, Certificate, StratumPartition, Strata,
    STRATUM_LIMIT,
};

/// A word: one multiplicity per generator.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorTable {
    pub names: Vec<String>,
    pub grades: Vec<usize>,
    pub dimvecs: Option<Vec<Vec<i64>>>,
}

impl GeneratorTable {
    pub fn new(names: Vec<String>, grades: Vec<usize>, dimvecs: Option<Vec<Vec<i64>>>) -> Result<Self> {
        if names.len() != grades.len() || dimvecs.as_ref().is_some_and(|d| d.len() != names.len()) {
            return Err(Error::InvalidSpec("generator table columns differ in length".into()));
        }
        if grades.contains(&0) {
            return Err(Error::InvalidSpec("generator grades must be positive".into()));
        }
        if let Some(d) = &dimvecs {
            if d.windows(2).any(|p| p[0].len() != p[1].len()) {
                return Err(Error::InvalidSpec("dimension vectors differ in length".into()));
            }
        }
        Ok(GeneratorTable { names, grades, dimvecs })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn grade(&self, w: &[usize]) -> usize {
        w.iter().zip(&self.grades).map(|(m, g)| m * g).sum()
    }

    pub fn dimvec(&self, w: &[usize]) -> Option<Vec<i64>> {
        let d = self.dimvecs.as_ref()?;
        let mut out = vec![0i64; d.first().map_or(0, |v| v.len())];
        for (m, v) in w.iter().zip(d) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += *m as i64 * x;
            }
        }
        Some(out)
    }

    /// "S1+2*P", or "0" for the empty word.
    pub fn word_name(&self, w: &[usize]) -> String {
        let parts: Vec<String> = w
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| if m == 1 { self.names[k].clone() } else { format!("{m}*{}", self.names[k]) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn unit(&self, k: usize) -> Word {
        let mut w = vec![0; self.len()];
        w[k] = 1;
        w
    }
}

/// Which words are elements of the monoid.
#[derive(Debug)]
pub enum Carrier {
    All,
    /// Words whose dimension vector lies in the submonoid of N^d generated
    /// by the given vectors.
    DimvecSubmonoid { generators: Vec<Vec<i64>>, memo: Mutex<HashMap<Vec<i64>, bool>> },
}

impl Clone for Carrier {
    fn clone(&self) -> Self {
        match self {
            Carrier::All => Carrier::All,
            Carrier::DimvecSubmonoid { generators, .. } => Carrier::dimvec(generators.clone()),
        }
    }
}

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Carrier::All, Carrier::All) => true,
            (Carrier::DimvecSubmonoid { generators: a, .. }, Carrier::DimvecSubmonoid { generators: b, .. }) => a == b,
            _ => false,
        }
    }
}

impl Carrier {
    pub fn dimvec(generators: Vec<Vec<i64>>) -> Self {
        Carrier::DimvecSubmonoid { generators, memo: Mutex::new(HashMap::new()) }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, Carrier::All)
    }

    pub fn contains(&self, gens: &GeneratorTable, w: &[usize]) -> bool {
        match self {
            Carrier::All => true,
            Carrier::DimvecSubmonoid { generators, memo } => match gens.dimvec(w) {
                Some(d) => in_submonoid(generators, &d, &mut memo.lock().unwrap()),
                None => false,
            },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Carrier::All => "all".into(),
            Carrier::DimvecSubmonoid { generators, .. } => {
                let vs: Vec<String> =
                    generators.iter().map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
                format!("dimvec-submonoid: {}", vs.join(" "))
            }
        }
    }
}

fn in_submonoid(gens: &[Vec<i64>], d: &[i64], memo: &mut HashMap<Vec<i64>, bool>) -> bool {
    if d.iter().all(|&x| x == 0) {
        return true;
    }
    if d.iter().any(|&x| x < 0) {
        return false;
    }
    if let Some(&b) = memo.get(d) {
        return b;
    }
    let mut ok = false;
    for g in gens {
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let rest: Vec<i64> = d.iter().zip(g).map(|(a, b)| a - b).collect();
        if rest.iter().all(|&x| x >= 0) && in_submonoid(gens, &rest, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(d.to_vec(), ok);
    ok
}

/// Generators, carrier and defining relations u = v.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub gens: GeneratorTable,
    pub carrier: Carrier,
    pub relations: Vec<(Word, Word)>,
    /// Largest grade at which atoms are searched; atoms of the free
    /// carrier are generator classes, so this defaults to the top
    /// generator grade there.
    pub atom_grade_bound: Option<usize>,
}

impl Presentation {
    pub fn new(gens: GeneratorTable, carrier: Carrier, relations: Vec<(Word, Word)>) -> Result<Self> {
        let p = Presentation { gens, carrier, relations, atom_grade_bound: None };
        p.validate()?;
        Ok(p)
    }

    pub fn free(gens: GeneratorTable) -> Self {
        Presentation { gens, carrier: Carrier::All, relations: Vec::new(), atom_grade_bound: None }
    }

    pub fn with_atom_bound(mut self, bound: usize) -> Self {
        self.atom_grade_bound = Some(bound);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.gens.len();
        if !self.carrier.is_all() && self.gens.dimvecs.is_none() {
            return Err(Error::InvalidSpec("a dimension-vector carrier needs generator dimension vectors".into()));
        }
        for (u, v) in &self.relations {
            if u.len() != n || v.len() != n {
                return Err(Error::InvalidSpec("relation word has the wrong length".into()));
            }
            if self.gens.grade(u) != self.gens.grade(v) {
                return Err(Error::InvalidSpec(format!(
                    "relation {} = {} is not homogeneous",
                    self.gens.word_name(u),
                    self.gens.word_name(v)
                )));
            }
            if !self.carrier.contains(&self.gens, u) || !self.carrier.contains(&self.gens, v) {
                return Err(Error::InvalidSpec(format!("relation side {} lies outside the carrier", self.gens.word_name(u))));
            }
        }
        Ok(())
    }

    pub fn max_generator_grade(&self) -> usize {
        self.gens.grades.iter().copied().max().unwrap_or(0)
    }

    pub fn atom_bound(&self) -> usize {
        if let Some(b) = self.atom_grade_bound {
            return b;
        }
        match &self.carrier {
            Carrier::All => self.max_generator_grade(),
            Carrier::DimvecSubmonoid { generators, .. } => {
                generators.iter().map(|g| g.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>()).max().unwrap_or(0)
            }
        }
    }

    /// All carrier words of the given grade, in ascending lexicographic order.
    pub fn words_of_grade(&self, grade: usize, limit: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.gens.len());
        self.fill(0, grade, &mut cur, &mut out, limit)?;
        out.retain(|w| self.carrier.contains(&self.gens, w));
        out.sort();
        Ok(out)
    }

    fn fill(&self, k: usize, left: usize, cur: &mut Word, out: &mut Vec<Word>, limit: usize) -> Result<()> {
        if k == self.gens.len() {
            if left == 0 {
                if out.len() >= limit {
                    return Err(Error::EnumerationOverflow(format!("more than {limit} words in one grade")));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let g = self.gens.grades[k];
        for m in 0..=left / g {
            cur.push(m);
            self.fill(k + 1, left - m * g, cur, out, limit)?;
            cur.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// S1, S2, P of the A2 path algebra.
    pub fn a2_gens() -> GeneratorTable {
        GeneratorTable::new(
            vec!["S1".into(), "S2".into(), "P".into()],
            vec![1, 1, 2],
            Some(vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn word_names_and_grades() {
        let g = a2_gens();
        assert_eq!(g.word_name(&[1, 1, 0]), "S1+S2");
        assert_eq!(g.word_name(&[0, 0, 2]), "2*P");
        assert_eq!(g.word_name(&[0, 0, 0]), "0");
        assert_eq!(g.grade(&[1, 1, 2]), 6);
        assert_eq!(g.dimvec(&[1, 0, 1]), Some(vec![2, 1]));
    }

    #[test]
    fn carrier_membership() {
        let g = a2_gens();
        let c = Carrier::dimvec(vec![vec![2, 1]]);
        assert!(c.contains(&g, &[0, 0, 0]));
        assert!(c.contains(&g, &[1, 0, 1]));
        assert!(c.contains(&g, &[2, 1, 0]));
        assert!(!c.contains(&g, &[0, 0, 1]));
        let p = Presentation::new(g, c, vec![]).unwrap();
        assert_eq!(p.words_of_grade(3, 100).unwrap(), vec![vec![1, 0, 1], vec![2, 1, 0]]);
        assert_eq!(p.words_of_grade(6, 100).unwrap().len(), 3);
    }

    #[test]
    fn inhomogeneous_relation_is_rejected() {
        let g = a2_gens();
        assert!(Presentation::new(g, Carrier::All, vec![(vec![1, 0, 0], vec![0, 0, 1])]).is_err());
    }

    #[test]
    fn zero_grade_is_rejected() {
        assert!(GeneratorTable::new(vec!["x".into()], vec![0], None).is_err());
    }
}
