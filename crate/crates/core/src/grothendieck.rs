//! Grothendieck monoids of concrete categories: presentations harvested from
//! conflations, JSON-ready reports, and the standard examples (type A
//! torsion-free classes, designated subcategories of mod A2, the Kronecker
//! and loop algebras, Nakayama torsion-free classes).

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::{
    atoms, cancellativity_scan, cayley_quiver, group_completion, is_free, is_half_factorial, parse_presentation, Cancellativity, Carrier,
    Certificate, FreeVerdict, GeneratorTable, Presentation, Strata, Word,
};
use crate::nakayama::TFClassN;
use crate::repkit::catalogue::discover_indecomposables;
use crate::repkit::{
    conflations_up_to, generating_conflations, Arrow, Catalogue, Membership, PresentedAlgebra, Rep, RelationPair, Rule, DEFAULT_DIM_BOUND,
};
use crate::symgroup::{coxeter_element, enumerate_c_sortable, Orientation, Permutation};
use crate::type_a::{class_of, classical_name, simples_of, IntervalModule, TorsionFreeClassA};

/// How conflation relations are collected from a repkit-backed category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Harvest {
    /// Every admissible subobject of every object up to the grade bound.
    Subreps,
    /// Extensions with an indecomposable left end; valid when E is closed
    /// under submodules and extensions.
    Extensions,
}

/// A subcategory E of mod A with its indecomposables as generators.
#[derive(Clone, Debug)]
pub struct RepkitSource {
    pub label: String,
    pub membership: Membership,
    /// Catalogue indices of the generators.
    pub gens: Vec<usize>,
    pub names: Vec<String>,
    pub harvest: Harvest,
}

impl RepkitSource {
    pub fn generator_table(&self) -> Result<GeneratorTable> {
        let items = &self.membership.catalogue.items;
        let grades = self.gens.iter().map(|&g| items[g].total_dim()).collect();
        let dims = self.gens.iter().map(|&g| items[g].dims.iter().map(|&d| d as i64).collect()).collect();
        GeneratorTable::new(self.names.clone(), grades, Some(dims))
    }

    pub fn relations(&self, grade_bound: usize, dim_bound: usize) -> Result<Vec<RelationPair>> {
        match self.harvest {
            Harvest::Subreps => conflations_up_to(&self.membership, &self.gens, grade_bound, dim_bound),
            Harvest::Extensions => {
                if grade_bound > dim_bound {
                    return Err(Error::DimensionBoundExceeded { dim: grade_bound, bound: dim_bound });
                }
                generating_conflations(&self.membership, &self.gens, grade_bound)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum CategorySource {
    /// F(w) in mod kQ for a c-sortable w.
    TypeATorsionFree { w: Permutation, quiver: Orientation },
    /// E_M(m, n) in mod A2: modules with dimension vector in N(m, n).
    A2Designated { m: usize, n: usize },
    /// Semisimple modules whose dimension vectors lie in the monoid spanned
    /// by the given vectors.
    EmSemisimple { vectors: Vec<Vec<i64>> },
    NakayamaTorsionFree(TFClassN),
    Abstract { label: String, presentation: Presentation },
    RepkitBacked(RepkitSource),
}

impl CategorySource {
    pub fn label(&self) -> String {
        match self {
            CategorySource::TypeATorsionFree { w, quiver } => format!("F({w}) over {quiver}"),
            CategorySource::A2Designated { m, n } => format!("E_M({m},{n}) in mod A2"),
            CategorySource::EmSemisimple { vectors } => {
                let vs: Vec<String> = vectors.iter().map(|v| format!("({})", join(v))).collect();
                format!("semisimple E_M, M = N{{{}}}", vs.join(", "))
            }
            CategorySource::NakayamaTorsionFree(f) => {
                let ms: Vec<String> = f.members.iter().map(|u| u.to_string()).collect();
                format!("{{{}}} over {}", ms.join(" "), f.kupisch)
            }
            CategorySource::Abstract { label, .. } => label.clone(),
            CategorySource::RepkitBacked(r) => r.label.clone(),
        }
    }

    fn is_repkit(&self) -> bool {
        matches!(self, CategorySource::TypeATorsionFree { .. } | CategorySource::NakayamaTorsionFree(_) | CategorySource::RepkitBacked(_))
    }

    /// Repkit view of the sources that have one.
    pub fn repkit(&self) -> Result<Option<RepkitSource>> {
        Ok(match self {
            CategorySource::TypeATorsionFree { w, quiver } => Some(type_a_source(w, quiver)?),
            CategorySource::NakayamaTorsionFree(f) => Some(nakayama_source(f)?),
            CategorySource::RepkitBacked(r) => Some(r.clone()),
            _ => None,
        })
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Largest grade for relations and cancellativity; defaults to twice the
    /// top generator grade.
    pub grade_bound: Option<usize>,
    /// Largest total dimension handed to subobject enumeration.
    pub dim_bound: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { grade_bound: None, dim_bound: DEFAULT_DIM_BOUND }
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    pub presentation: Presentation,
    pub grade_bound: usize,
    pub caveats: Vec<String>,
}

pub fn type_a_source(w: &Permutation, q: &Orientation) -> Result<RepkitSource> {
    let f = class_of(w, q)?;
    Ok(class_source(&f))
}

pub fn class_source(f: &TorsionFreeClassA) -> RepkitSource {
    let names = f.modules.iter().map(|m| classical_name(m, &f.quiver).unwrap_or_else(|| m.to_string())).collect();
    RepkitSource {
        label: format!("F({}) over {}", f.w, f.quiver),
        membership: f.membership(),
        gens: f.catalogue_indices(),
        names,
        harvest: Harvest::Extensions,
    }
}

pub fn nakayama_source(f: &TFClassN) -> Result<RepkitSource> {
    let (ok, violations) = f.validate();
    if !ok {
        return Err(Error::InvalidClass(violations.join("; ")));
    }
    let names = f
        .members
        .iter()
        .map(|u| if u.len == 1 { format!("S{}", u.top) } else { format!("U{}.{}", u.top, u.len) })
        .collect();
    Ok(RepkitSource {
        label: CategorySource::NakayamaTorsionFree(f.clone()).label(),
        membership: f.membership(),
        gens: f.catalogue_indices(),
        names,
        harvest: Harvest::Extensions,
    })
}

/// S1, S2, P over A2 (arrow 2 -> 1), so P has socle S1 and top S2.
pub fn a2_generators() -> GeneratorTable {
    GeneratorTable::new(vec!["S1".into(), "S2".into(), "P".into()], vec![1, 1, 2], Some(vec![vec![1, 0], vec![0, 1], vec![1, 1]]))
        .expect("fixed table")
}

/// Whether X -> Y -> Z is a conflation in mod A2, for words over
/// (S1, S2, P): Y = X + Z with t copies of S1 (from X) and S2 (from Z)
/// glued into P, 0 <= t <= min(#S1 in X, #S2 in Z).
pub fn a2_conflation_rule(x: &[usize], y: &[usize], z: &[usize]) -> bool {
    let Some(t) = y[2].checked_sub(x[2] + z[2]) else { return false };
    t <= x[0].min(z[1]) && y[0] + t == x[0] + z[0] && y[1] + t == x[1] + z[1]
}

/// Every relation (Y, X + Z) of the A2 rule with X, Z nonzero words of the
/// carrier and grade(X) + grade(Z) <= grade_bound.
fn a2_rule_relations(gens: &GeneratorTable, carrier: &Carrier, grade_bound: usize) -> Vec<(Word, Word)> {
    let words: Vec<Word> = crate::repkit::conflation::words_up_to(&gens.grades, None, grade_bound)
        .into_iter()
        .filter(|w| carrier.contains(gens, w))
        .collect();
    let mut out = BTreeSet::new();
    for x in &words {
        for z in &words {
            if gens.grade(x) + gens.grade(z) > grade_bound {
                continue;
            }
            let ends: Word = x.iter().zip(z).map(|(a, b)| a + b).collect();
            for t in 1..=x[0].min(z[1]) {
                let y = vec![ends[0] - t, ends[1] - t, ends[2] + t];
                out.insert((y, ends.clone()));
            }
        }
    }
    out.into_iter().collect()
}

pub fn a2_designated(m: usize, n: usize, grade_bound: usize) -> Result<Presentation> {
    if m + n == 0 {
        return Err(Error::InvalidSpec("E_M needs a nonzero vector".into()));
    }
    let gens = a2_generators();
    let carrier = Carrier::dimvec(vec![vec![m as i64, n as i64]]);
    let relations = a2_rule_relations(&gens, &carrier, grade_bound);
    Presentation::new(gens, carrier, relations)
}

pub fn em_semisimple(vectors: &[Vec<i64>]) -> Result<Presentation> {
    let d = vectors.first().map_or(0, |v| v.len());
    if d == 0 || vectors.iter().any(|v| v.len() != d || v.iter().any(|&x| x < 0)) {
        return Err(Error::InvalidSpec("semisimple E_M needs nonnegative vectors of one length".into()));
    }
    let names = (1..=d).map(|k| format!("S{k}")).collect();
    let dims = (0..d).map(|k| (0..d).map(|j| i64::from(j == k)).collect()).collect();
    let gens = GeneratorTable::new(names, vec![1; d], Some(dims))?;
    // every conflation of semisimples splits
    Presentation::new(gens, Carrier::dimvec(vectors.to_vec()), Vec::new())
}

fn default_bound(p_max_grade: usize, requested: Option<usize>) -> usize {
    requested.unwrap_or(2 * p_max_grade).max(1)
}

/// The monoid presentation of a source, with relations up to the grade
/// bound.
pub fn presentation_of(src: &CategorySource, opts: &Options) -> Result<Built> {
    let mut caveats = Vec::new();
    let (presentation, grade_bound) = match src {
        CategorySource::A2Designated { m, n } => {
            let bound = opts.grade_bound.unwrap_or(4 * (m + n));
            caveats.push(format!("relations from the A2 conflation rule up to grade {bound}"));
            (a2_designated(*m, *n, bound)?, bound)
        }
        CategorySource::EmSemisimple { vectors } => {
            let p = em_semisimple(vectors)?;
            let bound = default_bound(p.atom_bound(), opts.grade_bound);
            (p, bound)
        }
        CategorySource::Abstract { presentation, .. } => {
            let bound = default_bound(presentation.max_generator_grade(), opts.grade_bound);
            (presentation.clone(), bound)
        }
        _ => {
            let r = src.repkit()?.expect("repkit-backed source");
            let gens = r.generator_table()?;
            let top = gens.grades.iter().copied().max().unwrap_or(0);
            let bound = default_bound(top, opts.grade_bound);
            if opts.grade_bound.is_some_and(|b| b < 2 * top) {
                caveats.push(format!("grade bound {bound} is below twice the top generator grade {top}"));
            }
            let relations = r.relations(bound, opts.dim_bound)?;
            caveats.push(format!("relations harvested from conflations of objects up to grade {bound}"));
            (Presentation::new(gens, Carrier::All, relations)?, bound)
        }
    };
    if src.is_repkit() {
        caveats.push("computed over the field with two elements".into());
    }
    Ok(Built { presentation, grade_bound, caveats })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub grade: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimvec: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Info {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellativeInfo {
    pub status: String,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub source: String,
    pub generators: Vec<GeneratorInfo>,
    pub relations: Vec<String>,
    pub atoms: Vec<String>,
    pub k0: K0Info,
    /// The monoid is free, equivalently (JHP) holds.
    pub jhp: bool,
    pub free_verdict: FreeVerdict,
    /// Half-factoriality: every object has a unique length.
    pub unique_length: bool,
    pub cancellative: CancellativeInfo,
    pub dim_monoid: Vec<Vec<i64>>,
    pub caveats: Vec<String>,
}

pub fn report(src: &CategorySource, opts: &Options) -> Result<MonoidReport> {
    let built = presentation_of(src, opts)?;
    report_presentation(&src.label(), &built)
}

pub fn report_presentation(label: &str, built: &Built) -> Result<MonoidReport> {
    let p = &built.presentation;
    let mut strata = Strata::new();
    let atom_list = atoms(p, &mut strata)?;
    let k0 = group_completion(p, &mut strata)?;
    let free = is_free(p, &mut strata)?;
    let hf = is_half_factorial(p, &mut strata)?;
    let canc = cancellativity_scan(p, &mut strata, built.grade_bound)?;
    let mut caveats = built.caveats.clone();
    let cancellative = match &canc {
        Cancellativity::NotCancellative { certificate, bound } => {
            CancellativeInfo { status: "not cancellative".into(), bound: *bound, certificate: Some(certificate.clone()) }
        }
        Cancellativity::NoneUpToBound { bound } => {
            caveats.push(format!("no cancellativity witness up to grade {bound}; this is not a proof"));
            CancellativeInfo { status: "no witness up to bound".into(), bound: *bound, certificate: None }
        }
    };
    let generators = (0..p.gens.len())
        .map(|k| GeneratorInfo {
            name: p.gens.names[k].clone(),
            grade: p.gens.grades[k],
            dimvec: p.gens.dimvecs.as_ref().map(|d| d[k].clone()),
        })
        .collect();
    let relations = p.relations.iter().map(|(u, v)| format!("{} = {}", p.gens.word_name(u), p.gens.word_name(v))).collect();
    Ok(MonoidReport {
        source: label.to_string(),
        generators,
        relations,
        atoms: atom_list.iter().map(|a| a.name.clone()).collect(),
        k0: K0Info { rank: k0.rank, torsion: k0.invariant_factors.clone() },
        jhp: free.is_free(),
        free_verdict: free,
        unique_length: hf.holds(),
        cancellative,
        dim_monoid: dimension_monoid(p, &mut strata)?,
        caveats,
    })
}

/// Generators of the image of dim: the dimension vectors of the generators,
/// or of the atoms for a restricted carrier; sorted and deduplicated.
pub fn dimension_monoid(p: &Presentation, strata: &mut Strata) -> Result<Vec<Vec<i64>>> {
    let Some(d) = &p.gens.dimvecs else { return Ok(Vec::new()) };
    let set: BTreeSet<Vec<i64>> = if p.carrier.is_all() {
        d.iter().cloned().collect()
    } else {
        atoms(p, strata)?.iter().filter_map(|a| p.gens.dimvec(&a.representative)).collect()
    };
    Ok(set.into_iter().collect())
}

/// Whether dim is constant on every class of grade <= bound.
pub fn dimvec_constant_on_classes(p: &Presentation, strata: &mut Strata, bound: usize) -> Result<bool> {
    for s in 0..=bound {
        let layer = strata.get(p, s)?;
        for c in 0..layer.class_count() {
            let dims: BTreeSet<Option<Vec<i64>>> = layer.class_words(c).into_iter().map(|w| p.gens.dimvec(w)).collect();
            if dims.len() > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn cayley_dot(src: &CategorySource, opts: &Options, bound: usize) -> Result<String> {
    let built = presentation_of(src, opts)?;
    cayley_quiver(&built.presentation, &mut Strata::new(), bound)
}

/// Shape of the Grothendieck monoid of E_M(m, n) on strata N = 0..=depth,
/// where stratum N holds the classes of grade N(m+n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompexShape {
    pub m: usize,
    pub n: usize,
    pub atoms: usize,
    pub counts: Vec<usize>,
    /// Every atom arrow lands where the expected Cayley picture says.
    pub arrows_match: bool,
}

impl CompexShape {
    /// Case 1 (m != n) or Case 2 (m == n).
    pub fn case(&self) -> u8 {
        if self.m == self.n {
            2
        } else {
            1
        }
    }

    pub fn expected_counts(&self) -> Vec<usize> {
        let l = self.m.min(self.n);
        (0..self.counts.len())
            .map(|k| match k {
                0 => 1,
                1 => l + 1,
                _ if self.case() == 2 => 2,
                _ => 1,
            })
            .collect()
    }

    pub fn passes(&self) -> bool {
        self.atoms == self.m.min(self.n) + 1 && self.counts == self.expected_counts() && self.arrows_match
    }
}

/// Atom A_i = P^i + S1^(m-i) + S2^(n-i) as a word over (S1, S2, P).
fn compex_atom(m: usize, n: usize, i: usize) -> Word {
    vec![m - i, n - i, i]
}

fn scale(w: &[usize], k: usize) -> Word {
    w.iter().map(|x| x * k).collect()
}

fn plus(a: &[usize], b: &[usize]) -> Word {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn compex_shape(m: usize, n: usize, depth: usize) -> Result<CompexShape> {
    let p = a2_designated(m, n, depth * (m + n))?;
    let mut st = Strata::new();
    let atom_count = atoms(&p, &mut st)?.len();
    let g = m + n;
    let counts: Vec<usize> = (0..=depth).map(|k| st.get(&p, k * g).map(|l| l.class_count())).collect::<Result<_>>()?;
    let l = m.min(n);
    let a: Vec<Word> = (0..=l).map(|i| compex_atom(m, n, i)).collect();
    let mut ok = true;
    // a_i + a_j = 2 a_0 except a_n + a_n in Case 2; N a_0 absorbs everything
    for k in 1..depth {
        for i in 0..=l {
            let sources: Vec<Word> = if k == 1 { a.clone() } else { vec![scale(&a[0], k), scale(&a[l], k)] };
            for src in &sources {
                let target = if m == n && i == l && *src == scale(&a[l], k) { scale(&a[l], k + 1) } else { scale(&a[0], k + 1) };
                ok &= st.locate(&p, &plus(src, &a[i]))? == st.locate(&p, &target)?;
            }
        }
        if m == n {
            ok &= st.locate(&p, &scale(&a[0], k + 1))? != st.locate(&p, &scale(&a[l], k + 1))?;
        }
    }
    Ok(CompexShape { m, n, atoms: atom_count, counts, arrows_match: ok })
}

/// The Kronecker quiver: arrows f, g from 2 to 1.
pub fn kronecker_algebra() -> PresentedAlgebra {
    let arrows = ["f", "g"].iter().map(|n| Arrow { name: n.to_string(), source: 1, target: 0 }).collect();
    PresentedAlgebra::new(2, arrows, Vec::new()).expect("fixed quiver")
}

fn kronecker_name(x: &Rep, dup: usize) -> String {
    match x.dims.as_slice() {
        [1, 0] => "S1".into(),
        [0, 1] => "S2".into(),
        [2, 1] => "P2".into(),
        [1, 2] => "I1".into(),
        [1, 1] => format!("R[{}:{}]", u8::from(x.maps[0].get(0, 0)), u8::from(x.maps[1].get(0, 0))),
        d => format!("X({},{})#{dup}", d[0], d[1]),
    }
}

/// E = modules without S2 in the socle, with its indecomposables of total
/// dimension <= max_dim as generators, ordered S1, P2, I1, R[1:1], R[0:1],
/// R[1:0], then the rest by dimension vector.
pub fn kronecker_source(max_dim: usize) -> Result<RepkitSource> {
    let alg = Arc::new(kronecker_algebra());
    let found = discover_indecomposables(&alg, max_dim)?;
    let mut names = Vec::new();
    for (k, x) in found.iter().enumerate() {
        let dup = found[..k].iter().filter(|y| y.dims == x.dims).count();
        names.push(kronecker_name(x, dup));
    }
    let cat = Arc::new(Catalogue::by_search(alg, found, names.clone()));
    let membership = Membership::new(cat, Rule::NoSimpleSubAt(1));
    const FIRST: [&str; 6] = ["S1", "P2", "I1", "R[1:1]", "R[0:1]", "R[1:0]"];
    let mut gens = membership.allowed_items()?;
    gens.sort_by_key(|&k| {
        let pos = FIRST.iter().position(|n| *n == names[k]).unwrap_or(FIRST.len());
        (pos, membership.catalogue.items[k].dims.clone(), k)
    });
    let gnames = gens.iter().map(|&k| names[k].clone()).collect();
    Ok(RepkitSource {
        label: "Kronecker: modules without S2 in the socle".into(),
        membership,
        gens,
        names: gnames,
        harvest: Harvest::Subreps,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KroneckerDemo {
    pub bound: usize,
    pub generators: Vec<String>,
    pub atoms: Vec<String>,
    /// The regular modules R[x] of dimension (1,1).
    pub regular: Vec<String>,
    /// Their classes are pairwise distinct.
    pub regular_distinct: bool,
    /// S1 + R[x] lies in the class of P2 for every x.
    pub sums_to_p2: bool,
    pub certificate: Option<Certificate>,
}

/// Non-cancellativity of the Kronecker example at grade <= bound: S1 + R[x]
/// is the class of P2 for every x while the R[x] stay distinct.
pub fn kronecker_demo(bound: usize) -> Result<KroneckerDemo> {
    let src = kronecker_source(bound.saturating_sub(1).max(3))?;
    let gens = src.generator_table()?;
    let relations = src.relations(bound, bound.max(DEFAULT_DIM_BOUND))?;
    let p = Presentation::new(gens, Carrier::All, relations)?;
    let mut strata = Strata::new();
    let regular: Vec<usize> = (0..p.gens.len()).filter(|&k| p.gens.names[k].starts_with("R[")).collect();
    let mut classes = BTreeSet::new();
    for &k in &regular {
        classes.insert(strata.locate(&p, &p.gens.unit(k))?);
    }
    let mut sums_to_p2 = false;
    if let (Some(s1), Some(p2)) = (p.gens.names.iter().position(|n| n == "S1"), p.gens.names.iter().position(|n| n == "P2")) {
        let target = strata.locate(&p, &p.gens.unit(p2))?;
        sums_to_p2 = !regular.is_empty();
        for &k in &regular {
            let mut w = p.gens.unit(s1);
            w[k] += 1;
            sums_to_p2 &= strata.locate(&p, &w)? == target;
        }
    }
    let canc = cancellativity_scan(&p, &mut strata, bound)?;
    Ok(KroneckerDemo {
        bound,
        generators: p.gens.names.clone(),
        atoms: atoms(&p, &mut strata)?.into_iter().map(|a| a.name).collect(),
        regular: regular.iter().map(|&k| p.gens.names[k].clone()).collect(),
        regular_distinct: classes.len() == regular.len(),
        sums_to_p2,
        certificate: canc.certificate().cloned(),
    })
}

/// Arrows alpha: 2 -> 1 and a loop beta at 1 with beta^2 = 0.
pub fn loop_algebra() -> PresentedAlgebra {
    PresentedAlgebra::parse("vertices: 2\narrows:\n alpha: 2 -> 1\n beta: 1 -> 1\nrelations:\n beta beta\n").expect("fixed algebra")
}

fn loop_name(alg: &PresentedAlgebra, x: &Rep) -> String {
    match x.dims.as_slice() {
        [1, 0] => "S1".into(),
        [0, 1] => "S2".into(),
        [1, 1] => "U".into(),
        [2, 0] => "P1".into(),
        [2, 2] => "I1".into(),
        [2, 1] if !x.path_matrix(alg, &[0, 1]).is_zero() => "P2".into(),
        [2, 1] => "M".into(),
        d => format!("X{d:?}"),
    }
}

/// The seven indecomposables of the loop algebra, complete.
pub fn loop_catalogue() -> Result<Catalogue> {
    let alg = Arc::new(loop_algebra());
    let found = discover_indecomposables(&alg, 4)?;
    let names = found.iter().map(|x| loop_name(&alg, x)).collect();
    Catalogue::complete(alg, found, names)
}

/// E = add{P1, P2, I1, M}. It is extension-closed but not closed under
/// submodules, so relations come from subobjects.
pub fn loop_algebra_source() -> Result<RepkitSource> {
    let cat = loop_catalogue()?;
    let want = ["P1", "P2", "I1", "M"];
    let gens: Vec<usize> = want
        .iter()
        .map(|n| cat.names.iter().position(|m| m == n).ok_or_else(|| Error::InvalidSpec(format!("no {n} in the loop catalogue"))))
        .collect::<Result<_>>()?;
    let allowed = (0..cat.len()).map(|k| gens.contains(&k)).collect();
    Ok(RepkitSource {
        label: "loop algebra: add{P1, P2, I1, M}".into(),
        membership: Membership::new(Arc::new(cat), Rule::Allowed(allowed)),
        gens,
        names: want.iter().map(|s| s.to_string()).collect(),
        harvest: Harvest::Subreps,
    })
}

pub const LOOP_PRESENTATION: &str = "\
generators:
  P1 2 2,0
  P2 3 2,1
  I1 4 2,2
  M  3 2,1
carrier: all
relations:
  M + P2 = P1 + I1
  P1 + I1 = 2*M
  2*P2 = P1 + I1
";

pub fn loop_algebra_presentation() -> Presentation {
    parse_presentation(LOOP_PRESENTATION).expect("fixed presentation")
}

/// The torsion-free class over 1<2<3>4 whose simple objects are M[1,2),
/// M[2,3), M[3,5), M[4,5) and M[1,4); there M[1,5) has composition series of
/// lengths 2 and 3.
pub fn nonulp1_class() -> Result<TorsionFreeClassA> {
    let q = Orientation::parse("1<2<3>4")?;
    let target: BTreeSet<IntervalModule> =
        [(1, 2), (2, 3), (3, 5), (4, 5), (1, 4)].iter().map(|&(i, j)| IntervalModule::new(i, j)).collect();
    for w in enumerate_c_sortable(&coxeter_element(&q)) {
        let simples: BTreeSet<IntervalModule> = simples_of(&w, &q)?.into_iter().collect();
        if simples == target {
            return class_of(&w, &q);
        }
    }
    Err(Error::InvalidClass("no c-sortable element has the expected simples".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{class_counts, stratum_classes};
    use crate::nakayama::{KupischSeries, Uniserial};
    use crate::repkit::series_analysis;

    fn words(budget: usize) -> Vec<Word> {
        crate::repkit::conflation::words_up_to(&[1, 1, 2], None, budget)
    }

    #[test]
    fn a2_rule_matches_subobjects() {
        let alg = Arc::new(PresentedAlgebra::from_edges(2, &[(2, 1)], vec![]).unwrap());
        let p = Rep::new(&alg, vec![1, 1], vec![crate::repkit::Mat::identity(1)]).unwrap();
        let items = vec![Rep::simple(&alg, 0), Rep::simple(&alg, 1), p];
        let cat = Catalogue::complete(alg, items, vec!["S1".into(), "S2".into(), "P".into()]).unwrap();
        let e = Membership::new(Arc::new(cat), Rule::All);
        let gens = [0, 1, 2];
        let mut seen = BTreeSet::new();
        for y in words(6) {
            let rep = crate::repkit::conflation::rep_of_word(&e, &gens, &y);
            for u in crate::repkit::enumerate_subreps(e.algebra(), &rep, 8).unwrap() {
                let x = crate::repkit::conflation::word_of(&e, &gens, &u.as_rep(e.algebra(), &rep)).unwrap();
                let z = crate::repkit::conflation::word_of(&e, &gens, &u.quotient(e.algebra(), &rep)).unwrap();
                assert!(a2_conflation_rule(&x, &y, &z), "{x:?} {y:?} {z:?}");
                seen.insert((x, y.clone(), z));
            }
        }
        // conversely every rule triple is realised
        let all: Vec<Word> = std::iter::once(vec![0, 0, 0]).chain(words(6)).collect();
        for x in &all {
            for z in &all {
                for y in &all {
                    if a2_conflation_rule(x, y, z) && a2_generators().grade(y) <= 6 && y.iter().any(|&m| m > 0) {
                        assert!(seen.contains(&(x.clone(), y.clone(), z.clone())), "{x:?} {y:?} {z:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn designated_a2_shapes() {
        for (m, n, expect) in [(1, 1, vec![1, 2, 2, 2]), (2, 1, vec![1, 2, 1, 1])] {
            let b = presentation_of(&CategorySource::A2Designated { m, n }, &Options::default()).unwrap();
            let p = &b.presentation;
            let mut st = Strata::new();
            let per_stratum: Vec<usize> = (0..4).map(|k| stratum_classes(p, k * (m + n)).unwrap().class_count()).collect();
            assert_eq!(per_stratum, expect);
            assert_eq!(atoms(p, &mut st).unwrap().len(), m.min(n) + 1);
            assert!(dimvec_constant_on_classes(p, &mut st, 4 * (m + n)).unwrap());
            assert_eq!(dimension_monoid(p, &mut st).unwrap(), vec![vec![m as i64, n as i64]]);
            assert!(!is_free(p, &mut st).unwrap().is_free());
        }
    }

    #[test]
    fn compex_shapes() {
        for (m, n) in [(1, 1), (2, 1), (2, 2), (1, 3), (3, 0)] {
            let shape = compex_shape(m, n, 4).unwrap();
            assert!(shape.passes(), "{shape:?}");
        }
        assert_eq!(compex_shape(2, 2, 3).unwrap().counts, vec![1, 3, 2, 2]);
    }

    #[test]
    fn designated_certificate() {
        let b = presentation_of(&CategorySource::A2Designated { m: 1, n: 1 }, &Options::default()).unwrap();
        let c = cancellativity_scan(&b.presentation, &mut Strata::new(), 8).unwrap();
        assert_eq!(c.certificate().unwrap(), &Certificate { a: "S1+S2".into(), x: "P".into(), y: "S1+S2".into() });
        // unique lengths do not force cancellativity
        let r = report(&CategorySource::A2Designated { m: 1, n: 1 }, &Options::default()).unwrap();
        assert!(r.unique_length && !r.jhp);
    }

    #[test]
    fn semisimple_em() {
        let r = report(&CategorySource::EmSemisimple { vectors: vec![vec![1, 1]] }, &Options::default()).unwrap();
        assert!(r.jhp);
        assert_eq!(r.atoms, vec!["S1+S2"]);
        let r = report(&CategorySource::EmSemisimple { vectors: vec![vec![2, 0], vec![3, 0]] }, &Options::default()).unwrap();
        assert!(!r.jhp);
        assert!(!r.unique_length);
    }

    #[test]
    fn type_a_reports() {
        let q = Orientation::parse("1>2<3").unwrap();
        let r = report(&CategorySource::TypeATorsionFree { w: Permutation::parse("4312").unwrap(), quiver: q.clone() }, &Options::default())
            .unwrap();
        assert!(r.jhp && r.unique_length);
        let atoms: BTreeSet<String> = r.atoms.iter().cloned().collect();
        assert_eq!(atoms, ["S2", "P1", "S3"].iter().map(|s| s.to_string()).collect());
        assert_eq!(r.k0.rank, 3);
        let r = report(&CategorySource::TypeATorsionFree { w: Permutation::parse("3412").unwrap(), quiver: q }, &Options::default()).unwrap();
        assert!(!r.jhp);
        assert_eq!(r.k0.rank, 3);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["source", "generators", "atoms", "k0", "jhp", "unique_length", "cancellative", "dim_monoid", "caveats"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn loop_algebra_routes() {
        let cat = loop_catalogue().unwrap();
        assert_eq!(cat.len(), 7);
        let abs = loop_algebra_presentation();
        let c = cancellativity_scan(&abs, &mut Strata::new(), 8).unwrap();
        assert_eq!(c.certificate().unwrap(), &Certificate { a: "M".into(), x: "M".into(), y: "P2".into() });

        let src = CategorySource::RepkitBacked(loop_algebra_source().unwrap());
        let built = presentation_of(&src, &Options::default()).unwrap();
        let p = &built.presentation;
        let mut ex = Strata::new();
        let mut ab = Strata::new();
        for s in 0..=built.grade_bound {
            // the exhaustive congruence contains the displayed one
            let coarse = ex.get(p, s).unwrap().clone();
            let fine = ab.get(&abs, s).unwrap();
            for class in &fine.classes {
                let c0 = coarse.class_of_word(&fine.words[class[0]]).unwrap();
                assert!(class.iter().all(|&i| coarse.class_of_word(&fine.words[i]) == Some(c0)), "grade {s}");
            }
        }
        // M and P2 stay apart, while P1 -> P1 + P2 -> M glues P1 + M to P1 + P2
        assert_ne!(ex.locate(p, &[0, 1, 0, 0]).unwrap(), ex.locate(p, &[0, 0, 0, 1]).unwrap());
        assert_eq!(ex.locate(p, &[1, 1, 0, 0]).unwrap(), ex.locate(p, &[1, 0, 0, 1]).unwrap());
        let r = report_presentation("loop", &built).unwrap();
        assert_eq!(r.atoms.len(), 4);
        assert_eq!(r.cancellative.certificate.unwrap(), Certificate { a: "P1".into(), x: "M".into(), y: "P2".into() });
    }

    #[test]
    fn kronecker_certificate() {
        let d = kronecker_demo(4).unwrap();
        assert_eq!(d.regular.len(), 3);
        assert!(d.regular_distinct);
        assert!(d.sums_to_p2);
        assert_eq!(d.certificate.unwrap(), Certificate { a: "S1".into(), x: "R[1:0]".into(), y: "R[0:1]".into() });
    }

    #[test]
    fn nonulp1_lengths() {
        let f = nonulp1_class().unwrap();
        let x = IntervalModule::new(1, 5);
        assert!(f.contains(&x));
        let rep = series_analysis(&x.rep(&f.quiver), &f.membership(), 8).unwrap();
        assert_eq!(rep.lengths, vec![2, 3]);
        let r = report(&CategorySource::TypeATorsionFree { w: f.w.clone(), quiver: f.quiver.clone() }, &Options::default()).unwrap();
        assert!(!r.unique_length);
    }

    #[test]
    fn nakayama_reports() {
        let k = KupischSeries::parse("kupisch-cyclic: 2,2").unwrap();
        let f = TFClassN::new(k, [Uniserial { top: 2, len: 1 }, Uniserial { top: 1, len: 2 }]).unwrap();
        let r = report(&CategorySource::NakayamaTorsionFree(f), &Options::default()).unwrap();
        assert!(r.jhp);
        assert_eq!(r.atoms.len(), 2);
    }

    #[test]
    fn extension_route_needs_room() {
        let q = Orientation::parse("1>2<3").unwrap();
        let src = CategorySource::TypeATorsionFree { w: Permutation::parse("4321").unwrap(), quiver: q };
        let opts = Options { grade_bound: Some(10), dim_bound: 8 };
        assert!(matches!(presentation_of(&src, &opts), Err(Error::DimensionBoundExceeded { .. })));
        let counts = class_counts(&presentation_of(&src, &Options::default()).unwrap().presentation, &mut Strata::new(), 2).unwrap();
        assert_eq!(counts[0], 1);
    }
}
