//! Congruence classes grade by grade, atoms, cancellativity scanning and
//! Cayley quivers.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Presentation, Word};
use crate::error::{Error, Result};

/// Largest number of carrier words handled in a single grade.
pub const STRATUM_LIMIT: usize = 2_000_000;

/// The classes of all carrier words of one grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumPartition {
    pub grade: usize,
    /// All carrier words of this grade, ascending.
    pub words: Vec<Word>,
    /// Class index of each word; classes are numbered by their least word.
    pub class_of: Vec<usize>,
    /// Word indices of each class, ascending.
    pub classes: Vec<Vec<usize>>,
    index: HashMap<Word, usize>,
}

impl StratumPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_word(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).map(|&i| self.class_of[i])
    }

    /// Least word of a class.
    pub fn representative(&self, class: usize) -> &Word {
        &self.words[self.classes[class][0]]
    }

    pub fn class_words(&self, class: usize) -> Vec<&Word> {
        self.classes[class].iter().map(|&i| &self.words[i]).collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn le(u: &[usize], w: &[usize]) -> bool {
    u.iter().zip(w).all(|(a, b)| a <= b)
}

/// Partition of the carrier words of grade s under single relation rewrites
/// w -> w - u + v with w - u in the carrier.
pub fn stratum_classes(p: &Presentation, s: usize) -> Result<StratumPartition> {
    let words = p.words_of_grade(s, STRATUM_LIMIT)?;
    let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    let rels: Vec<(&Word, &Word)> = p
        .relations
        .iter()
        .filter(|(u, _)| p.gens.grade(u) <= s)
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .collect();
    for (i, w) in words.iter().enumerate() {
        for &(u, v) in &rels {
            if !le(u, w) {
                continue;
            }
            let rest: Word = w.iter().zip(u).map(|(a, b)| a - b).collect();
            if !p.carrier.contains(&p.gens, &rest) {
                continue;
            }
            let target: Word = rest.iter().zip(v).map(|(a, b)| a + b).collect();
            let j = *index.get(&target).ok_or_else(|| Error::InvalidSpec("rewrite left the carrier".into()))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // roots are the least index of their class, so classes come out ordered
    let mut class_of = vec![0; words.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for i in 0..words.len() {
        let r = find(&mut parent, i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        class_of[i] = c;
        classes[c].push(i);
    }
    Ok(StratumPartition { grade: s, words, class_of, classes, index })
}

/// Strata computed on demand and kept.
#[derive(Debug, Default)]
pub struct Strata {
    layers: Vec<Option<StratumPartition>>,
}

impl Strata {
    pub fn new() -> Self {
        Strata { layers: Vec::new() }
    }

    pub fn get(&mut self, p: &Presentation, s: usize) -> Result<&StratumPartition> {
        if self.layers.len() <= s {
            self.layers.resize(s + 1, None);
        }
        if self.layers[s].is_none() {
            self.layers[s] = Some(stratum_classes(p, s)?);
        }
        Ok(self.layers[s].as_ref().unwrap())
    }

    /// (grade, class) of a carrier word.
    pub fn locate(&mut self, p: &Presentation, w: &[usize]) -> Result<(usize, usize)> {
        let s = p.gens.grade(w);
        let layer = self.get(p, s)?;
        let c = layer.class_of_word(w).ok_or(Error::NotMember)?;
        Ok((s, c))
    }
}

/// An atom: a class none of whose words splits into two nonzero carrier
/// words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomClass {
    pub grade: usize,
    pub class: usize,
    pub representative: Word,
    pub name: String,
    /// Every word of the class.
    pub words: Vec<Word>,
}

fn splits(p: &Presentation, w: &[usize]) -> bool {
    // enumerate 0 < a < w componentwise
    let n = w.len();
    let mut a = vec![0usize; n];
    loop {
        let mut k = 0;
        while k < n {
            a[k] += 1;
            if a[k] <= w[k] {
                break;
            }
            a[k] = 0;
            k += 1;
        }
        if k == n {
            return false;
        }
        if a.as_slice() == w {
            continue;
        }
        let b: Word = w.iter().zip(&a).map(|(x, y)| x - y).collect();
        if p.carrier.contains(&p.gens, &a) && p.carrier.contains(&p.gens, &b) {
            return true;
        }
    }
}

/// Atoms up to the presentation's atom bound, by grade then class.
pub fn atoms(p: &Presentation, strata: &mut Strata) -> Result<Vec<AtomClass>> {
    let mut out = Vec::new();
    for s in 1..=p.atom_bound() {
        let layer = strata.get(p, s)?;
        for c in 0..layer.class_count() {
            let words: Vec<Word> = layer.class_words(c).into_iter().cloned().collect();
            if words.iter().all(|w| !splits(p, w)) {
                out.push(AtomClass {
                    grade: s,
                    class: c,
                    representative: words[0].clone(),
                    name: p.gens.word_name(&words[0]),
                    words,
                });
            }
        }
    }
    Ok(out)
}

/// a + x = a + y with x != y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub a: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Cancellativity {
    NotCancellative { certificate: Certificate, bound: usize },
    NoneUpToBound { bound: usize },
}

impl Cancellativity {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Cancellativity::NotCancellative { certificate, .. } => Some(certificate),
            Cancellativity::NoneUpToBound { .. } => None,
        }
    }
}

/// Searches grades of a + x up to `bound` for a non-cancellativity witness.
/// Order: grade of x, then grade of a, then classes of a, x, y.
pub fn cancellativity_scan(p: &Presentation, strata: &mut Strata, bound: usize) -> Result<Cancellativity> {
    for s in 1..bound {
        for ga in 1..=bound - s {
            let na = strata.get(p, ga)?.class_count();
            let nx = strata.get(p, s)?.class_count();
            if na == 0 || nx < 2 {
                continue;
            }
            for a in 0..na {
                let aw = strata.get(p, ga)?.representative(a).clone();
                let mut images = Vec::with_capacity(nx);
                for x in 0..nx {
                    let xw = strata.get(p, s)?.representative(x).clone();
                    let sum: Word = aw.iter().zip(&xw).map(|(i, j)| i + j).collect();
                    images.push(strata.locate(p, &sum)?.1);
                }
                let mut first: HashMap<usize, usize> = HashMap::new();
                let mut hit: Option<(usize, usize)> = None;
                for (x, &img) in images.iter().enumerate() {
                    if let Some(&y) = first.get(&img) {
                        // the earliest x with a partner is the smaller index y
                        if hit.is_none_or(|(hx, _)| y < hx) {
                            hit = Some((y, x));
                        }
                    } else {
                        first.insert(img, x);
                    }
                }
                if let Some((x, y)) = hit {
                    let layer = strata.get(p, s)?;
                    let (xn, yn) = (p.gens.word_name(layer.representative(x)), p.gens.word_name(layer.representative(y)));
                    return Ok(Cancellativity::NotCancellative {
                        certificate: Certificate { a: p.gens.word_name(&aw), x: xn, y: yn },
                        bound,
                    });
                }
            }
        }
    }
    Ok(Cancellativity::NoneUpToBound { bound })
}

/// Cayley quiver on the classes of grade <= bound, as DOT text.
pub fn cayley_quiver(p: &Presentation, strata: &mut Strata, bound: usize) -> Result<String> {
    let atom_list = atoms(p, strata)?;
    let mut dot = String::from("digraph cayley {\n  rankdir=LR;\n");
    let _ = writeln!(dot, "  // classes of grade <= {bound}");
    let mut edges = String::new();
    for s in 0..=bound {
        let n = strata.get(p, s)?.class_count();
        for c in 0..n {
            let w = strata.get(p, s)?.representative(c).clone();
            let name = p.gens.word_name(&w);
            let _ = writeln!(dot, "  \"{name}\";");
            for atom in &atom_list {
                if s + atom.grade > bound {
                    continue;
                }
                let sum: Word = w.iter().zip(&atom.representative).map(|(a, b)| a + b).collect();
                let (t, tc) = strata.locate(p, &sum)?;
                let target = p.gens.word_name(strata.get(p, t)?.representative(tc));
                let _ = writeln!(edges, "  \"{name}\" -> \"{target}\" [label=\"{}\"];", atom.name);
            }
        }
    }
    dot.push_str(&edges);
    dot.push_str("}\n");
    Ok(dot)
}

/// Class counts per grade 0..=bound.
pub fn class_counts(p: &Presentation, strata: &mut Strata, bound: usize) -> Result<Vec<usize>> {
    (0..=bound).map(|s| strata.get(p, s).map(|l| l.class_count())).collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::a2_gens;
    use super::super::{Carrier, GeneratorTable};
    use super::*;

    fn free(n: usize) -> Presentation {
        let names = (0..n).map(|k| format!("g{k}")).collect();
        Presentation::free(GeneratorTable::new(names, vec![1; n], None).unwrap())
    }

    #[test]
    fn free_strata_are_singletons() {
        let p = free(3);
        let layer = stratum_classes(&p, 3).unwrap();
        assert_eq!(layer.words.len(), 10);
        assert_eq!(layer.class_count(), 10);
        assert_eq!(atoms(&p, &mut Strata::new()).unwrap().len(), 3);
        assert_eq!(cancellativity_scan(&p, &mut Strata::new(), 5).unwrap(), Cancellativity::NoneUpToBound { bound: 5 });
    }

    #[test]
    fn reduced_and_zero_stratum() {
        let p = free(2);
        let layer = stratum_classes(&p, 0).unwrap();
        assert_eq!(layer.words, vec![vec![0, 0]]);
    }

    #[test]
    fn module_category_of_a2() {
        let rel = (vec![0, 0, 1], vec![1, 1, 0]);
        let p = Presentation::new(a2_gens(), Carrier::All, vec![rel]).unwrap();
        let mut st = Strata::new();
        let names: Vec<String> = atoms(&p, &mut st).unwrap().into_iter().map(|a| a.name).collect();
        assert_eq!(names, vec!["S2", "S1"]);
        assert_eq!(stratum_classes(&p, 2).unwrap().class_count(), 3);
    }

    #[test]
    fn path_quiver_of_one_generator() {
        let p = free(1);
        let dot = cayley_quiver(&p, &mut Strata::new(), 3).unwrap();
        assert!(dot.contains("\"0\" -> \"g0\""));
        assert!(dot.contains("\"g0\" -> \"2*g0\""));
        assert!(dot.contains("\"2*g0\" -> \"3*g0\""));
        assert_eq!(dot.matches("->").count(), 3);
    }
}
