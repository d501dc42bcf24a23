//! Acceptance criteria, each a self-contained check with a time budget.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use jhp_core::grothendieck::{compex_shape, presentation_of, CategorySource, Options};
use jhp_core::monoid::{atoms, cancellativity_scan, group_completion, is_free, is_half_factorial, Cancellativity, Presentation, Strata};
use jhp_core::nakayama::{enumerate_torsion_free_classes, jhp_check, simples_and_projectives, KupischSeries, TFClassN};
use jhp_core::regress::{run_regressions, RegressionConfig};
use jhp_core::repkit::conflation::{rep_of_word, words_up_to};
use jhp_core::repkit::examples::a2_all;
use jhp_core::repkit::poset::interval_matches_quotient;
use jhp_core::repkit::{admissible_poset, series_analysis, Membership, Rule, DEFAULT_DIM_BOUND};
use jhp_core::symgroup::{
    bruhat_inversions, coxeter_element, enumerate_c_sortable, format_transpositions, inversions, support, Orientation, Permutation,
    Transposition,
};
use jhp_core::type_a::{catalogue, class_of, simples_of};
use jhp_core::{Error, Result};

use crate::{tables, Format, Which};

pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("{tag} {:>2} {} ({:.2}s): {}", self.id, self.title, self.elapsed.as_secs_f64(), self.detail)
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: &[(usize, &str, u64, Check)] = &[
    (1, "Table 1", 1, table1),
    (2, "Table 2", 1, table2),
    (3, "census", 5, census3),
    (4, "Bruhat inversions", 1, bruhat4),
    (5, "oracle equivalence", 180, oracle5),
    (6, "compex shapes", 30, compex6),
    (7, "non-cancellativity certificates", 60, certificates7),
    (8, "counterexample regressions", 60, regressions8),
    (9, "K0 structure", 60, k0_9),
    (10, "Nakayama", 120, nakayama10),
    (11, "monoid laws", 120, laws11),
];

/// Runs one criterion. Overrunning the time budget is a failure.
pub fn run_criterion(id: usize) -> Option<Outcome> {
    let &(id, title, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (mut pass, mut detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(budget) {
        pass = false;
        detail = format!("over the {budget}s budget; {detail}");
    }
    Some(Outcome { id, title, pass, detail, elapsed })
}

fn ts(s: &str) -> BTreeSet<Transposition> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let b = t.as_bytes();
            Transposition::new((b[0] - b'0') as usize, (b[1] - b'0') as usize)
        })
        .collect()
}

fn supp_cell(s: &str) -> String {
    format!("{{{s}}}")
}

fn csv_rows(text: &str) -> Result<Vec<Vec<String>>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records().map(|rec| rec.map(|x| x.iter().map(String::from).collect()).map_err(|e| Error::Parse(e.to_string()))).collect()
}

fn table_csv(which: Which) -> Result<Vec<Vec<String>>> {
    let text = tables(which, None, Format::Csv).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    csv_rows(&text)
}

/// (w, supp, inv, Binv) for c = 3142.
const TABLE1: [(&str, &str, &str, &str); 14] = [
    ("1234", "", "", ""),
    ("1324", "2", "23", "23"),
    ("2134", "1", "12", "12"),
    ("1243", "3", "34", "34"),
    ("3124", "1,2", "13,23", "13,23"),
    ("1342", "2,3", "23,24", "23,24"),
    ("2143", "1,3", "12,34", "12,34"),
    ("3214", "1,2", "12,13,23", "12,23"),
    ("1432", "2,3", "23,24,34", "23,34"),
    ("3142", "1,2,3", "13,23,24", "13,23,24"),
    ("3412", "1,2,3", "13,14,23,24", "13,14,23,24"),
    ("4312", "1,2,3", "13,14,23,24,34", "13,23,34"),
    ("3421", "1,2,3", "12,13,14,23,24", "12,23,24"),
    ("4321", "1,2,3", "12,13,14,23,24,34", "12,23,34"),
];

fn table1() -> Result<(bool, String)> {
    let rows = table_csv(Which::Table1)?;
    let mut bad = Vec::new();
    if rows.len() != TABLE1.len() {
        bad.push(format!("{} rows", rows.len()));
    }
    for (w, supp, inv, binv) in TABLE1 {
        let Some(r) = rows.iter().find(|r| r[0] == w) else {
            bad.push(format!("{w} missing"));
            continue;
        };
        let want = [
            w.to_string(),
            supp_cell(supp),
            format_transpositions(&ts(inv)),
            format_transpositions(&ts(binv)),
            ts(binv).len().to_string(),
            (w != "3412").to_string(),
        ];
        if r.as_slice() != want {
            bad.push(format!("{w}: {r:?}"));
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { "14 rows match, jhp false only at 3412".into() } else { bad.join("; ") }))
}

/// inv(c) for c = 24153 over 1<2>3<4.
const INV_C: &str = "12,14,34,35";

/// (w, inv \ inv(c), Binv, #simp) in row order.
const TABLE2: [(&str, &str, &str, usize); 14] = [
    ("24153", "", "12,14,34,35", 4),
    ("42153", "24", "12,24,34,35", 4),
    ("24513", "15", "12,14,15,34,35", 5),
    ("42513", "15,24", "12,15,24,34,35", 5),
    ("25413", "15,45", "12,14,34,45", 4),
    ("24531", "13,15", "12,13,34,35", 4),
    ("45213", "15,24,25", "12,24,25,34,35", 5),
    ("42531", "13,15,24", "12,13,24,34,35", 5),
    ("25431", "13,15,45", "12,13,34,45", 4),
    ("45231", "13,15,24,25", "12,13,24,25,34,35", 6),
    ("54213", "15,24,25,45", "12,24,34,45", 4),
    ("54231", "13,15,24,25,45", "12,13,24,34,45", 5),
    ("45321", "13,15,23,24,25", "12,23,34,35", 4),
    ("54321", "13,15,23,24,25,45", "12,23,34,45", 4),
];

fn table2() -> Result<(bool, String)> {
    let rows = table_csv(Which::Table2)?;
    let mut bad = Vec::new();
    let order: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    let want_order: Vec<&str> = TABLE2.iter().map(|r| r.0).collect();
    if order != want_order {
        bad.push(format!("row order {order:?}"));
    }
    for ((w, extra, binv, nsimp), r) in TABLE2.iter().zip(&rows) {
        let mut inv = ts(INV_C);
        inv.extend(ts(extra));
        let ok = r[0] == *w
            && r[2] == format_transpositions(&inv)
            && r[3] == format_transpositions(&ts(binv))
            && r[4] == nsimp.to_string()
            && r[1] == "{1,2,3,4}";
        if !ok {
            bad.push(format!("{w}: {r:?}"));
        }
    }
    let simp: Vec<&str> = rows.iter().map(|r| r[4].as_str()).collect();
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("#simp {}", simp.join(",")) } else { bad.join("; ") }))
}

fn census3() -> Result<(bool, String)> {
    let text = tables(Which::Census, None, Format::Csv).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    let line = text.lines().nth(1).unwrap_or("").to_string();
    Ok((line == "42,34,8", format!("(total, jhp, faithful_jhp) = ({line})")))
}

fn bruhat4() -> Result<(bool, String)> {
    let cases = [
        ("45231", "12,13,14,15,24,25,34,35", "12,13,24,25,34,35"),
        ("54213", "12,14,15,24,25,34,35,45", "12,24,34,45"),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (w, inv, binv) in cases {
        let p = Permutation::parse(w)?;
        ok &= inversions(&p) == ts(inv) && bruhat_inversions(&p) == ts(binv);
        detail.push(format!("Binv({w}) = {}", format_transpositions(&bruhat_inversions(&p))));
    }
    Ok((ok, detail.join(", ")))
}

/// Every (orientation, c-sortable w) over A3 and A4.
fn classes_a3_a4() -> Vec<(Orientation, Permutation)> {
    let mut out = Vec::new();
    for n in [3, 4] {
        for q in Orientation::all(n) {
            for w in enumerate_c_sortable(&coxeter_element(&q)) {
                out.push((q.clone(), w));
            }
        }
    }
    out
}

fn type_a_presentation(q: &Orientation, w: &Permutation) -> Result<Presentation> {
    let src = CategorySource::TypeATorsionFree { w: w.clone(), quiver: q.clone() };
    Ok(presentation_of(&src, &Options::default())?.presentation)
}

fn oracle5() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let all = classes_a3_a4();
    for (q, w) in &all {
        let f = class_of(w, q)?;
        if f.simples_by_subobjects(DEFAULT_DIM_BOUND)? != simples_of(w, q)? {
            bad.push(format!("simples of {w} over {q}"));
        }
        let p = type_a_presentation(q, w)?;
        let free = is_free(&p, &mut Strata::new())?.is_free();
        if free != (support(w).len() == bruhat_inversions(w).len()) {
            bad.push(format!("freeness of {w} over {q}"));
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{} classes agree", all.len()) } else { bad.join("; ") }))
}

fn compex6() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        let s = compex_shape(m, n, 4)?;
        ok &= s.passes();
        detail.push(format!("({m},{n}) Case {}: atoms {}, strata {:?}, arrows {}", s.case(), s.atoms, s.counts, s.arrows_match));
    }
    Ok((ok, detail.join("; ")))
}

fn certificates7() -> Result<(bool, String)> {
    let cfg = RegressionConfig::default();
    let mut items = run_regressions(&cfg, Some("loop-algebra"));
    items.extend(run_regressions(&cfg, Some("kronecker")));
    let built = presentation_of(&CategorySource::A2Designated { m: 1, n: 1 }, &Options::default())?;
    let canc = cancellativity_scan(&built.presentation, &mut Strata::new(), built.grade_bound)?;
    let em = canc.certificate().cloned();
    let ok = items.len() == 2 && items.iter().all(|i| i.pass) && em.is_some();
    let mut detail: Vec<String> = items.iter().map(|i| i.line()).collect();
    detail.push(format!("E_M(1,1) certificate {em:?}"));
    Ok((ok, detail.join("; ")))
}

fn regressions8() -> Result<(bool, String)> {
    let cfg = RegressionConfig::default();
    let items: Vec<_> = ["exa", "nonlattice1", "nonulp1", "e1"].iter().flat_map(|n| run_regressions(&cfg, Some(n))).collect();
    let ok = items.len() == 4 && items.iter().all(|i| i.pass);
    Ok((ok, items.iter().map(|i| i.line()).collect::<Vec<_>>().join("; ")))
}

fn k0_9() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let all = classes_a3_a4();
    for (q, w) in &all {
        let p = type_a_presentation(q, w)?;
        let k0 = group_completion(&p, &mut Strata::new())?;
        if !k0.torsion_free() || k0.rank != support(w).len() {
            bad.push(format!("{w} over {q}: rank {}, factors {:?}", k0.rank, k0.invariant_factors));
        }
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{} classes torsion-free of rank #supp", all.len()) } else { bad.join("; ") }))
}

/// Every object of F with total dimension <= max_dim, as direct sums of
/// the members.
fn objects_up_to(f: &TFClassN, e: &Membership, max_dim: usize) -> Vec<jhp_core::repkit::Rep> {
    let gens = f.catalogue_indices();
    let weights: Vec<usize> = gens.iter().map(|&k| e.catalogue.items[k].total_dim()).collect();
    words_up_to(&weights, None, max_dim).iter().filter(|w| w.iter().any(|&x| x > 0)).map(|w| rep_of_word(e, &gens, w)).collect()
}

fn nakayama10() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for line in ["kupisch: 1,2,3", "kupisch-cyclic: 2,2"] {
        let k = KupischSeries::parse(line)?;
        let classes = enumerate_torsion_free_classes(&k, 5)?;
        let mut objects = 0;
        for f in &classes {
            let v = jhp_check(f)?;
            let e = f.membership();
            let simples: BTreeSet<String> = simples_and_projectives(f)?.values().map(|(s, _)| s.to_string()).collect();
            let mut found = BTreeSet::new();
            for u in &f.members {
                if series_analysis(&k.rep(u), &e, DEFAULT_DIM_BOUND)?.is_simple {
                    found.insert(u.to_string());
                }
            }
            let mut jhp = true;
            for x in objects_up_to(f, &e, 5) {
                objects += 1;
                jhp &= series_analysis(&x, &e, DEFAULT_DIM_BOUND)?.jhp_holds;
            }
            let label = CategorySource::NakayamaTorsionFree(f.clone()).label();
            if !v.jhp || !jhp || simples != found {
                bad.push(format!("{label}: #simp {} #proj {} brute jhp {jhp} simples {found:?}", v.simples, v.projectives));
            }
        }
        summary.push(format!("{k}: {} classes, {objects} objects", classes.len()));
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { summary.join("; ") } else { bad.join("; ") }))
}

/// Reduced, atoms among the generators, free => half-factorial and no
/// certificate, rank <= #atoms.
fn monoid_laws(label: &str, p: &Presentation, bound: usize) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let mut st = Strata::new();
    if st.get(p, 0)?.class_count() != 1 || p.gens.grades.contains(&0) {
        bad.push(format!("{label}: not reduced"));
    }
    let atom_list = atoms(p, &mut st)?;
    if p.carrier.is_all() && atom_list.iter().any(|a| a.representative.iter().sum::<usize>() != 1) {
        bad.push(format!("{label}: an atom is not a generator"));
    }
    let free = is_free(p, &mut st)?.is_free();
    let hf = is_half_factorial(p, &mut st)?.holds();
    let canc = cancellativity_scan(p, &mut st, bound)?;
    if free && (!hf || matches!(canc, Cancellativity::NotCancellative { .. })) {
        bad.push(format!("{label}: free but hf {hf}, {:?}", canc.certificate()));
    }
    let rank = group_completion(p, &mut st)?.rank;
    if rank > atom_list.len() {
        bad.push(format!("{label}: rank {rank} > {} atoms", atom_list.len()));
    }
    Ok(bad)
}

/// Interval [A, B] of P(X) against P(B/A) for every X of dimension <= 5
/// and every pair A <= B.
fn interval_laws(label: &str, e: &Membership, max_dim: usize) -> Result<(Vec<String>, usize)> {
    let mut bad = Vec::new();
    let mut pairs = 0;
    let gens: Vec<usize> = (0..e.catalogue.len()).collect();
    let weights: Vec<usize> = e.catalogue.items.iter().map(|x| x.total_dim()).collect();
    for w in words_up_to(&weights, None, max_dim) {
        let x = rep_of_word(e, &gens, &w);
        let p = admissible_poset(&x, e, DEFAULT_DIM_BOUND)?;
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.leq(a, b) {
                    pairs += 1;
                    if !interval_matches_quotient(&p, e, a, b, DEFAULT_DIM_BOUND)? {
                        bad.push(format!("{label}: {} at ({a},{b})", e.catalogue.format_mults(&w)));
                    }
                }
            }
        }
    }
    Ok((bad, pairs))
}

fn laws11() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut sources: Vec<CategorySource> = Vec::new();
    for q in Orientation::all(3) {
        for w in enumerate_c_sortable(&coxeter_element(&q)) {
            sources.push(CategorySource::TypeATorsionFree { w, quiver: q.clone() });
        }
    }
    for (m, n) in [(1, 1), (2, 1), (2, 2)] {
        sources.push(CategorySource::A2Designated { m, n });
    }
    sources.push(CategorySource::Abstract { label: "loop algebra".into(), presentation: jhp_core::grothendieck::loop_algebra_presentation() });
    for line in ["kupisch: 1,2,3", "kupisch-cyclic: 2,2"] {
        for f in enumerate_torsion_free_classes(&KupischSeries::parse(line)?, 5)? {
            sources.push(CategorySource::NakayamaTorsionFree(f));
        }
    }
    for src in &sources {
        let built = presentation_of(src, &Options::default())?;
        bad.extend(monoid_laws(&src.label(), &built.presentation, built.grade_bound)?);
    }
    let mut pairs = 0;
    let mut cats: Vec<(String, Membership)> = vec![("mod A2".into(), a2_all())];
    for q in Orientation::all(3) {
        cats.push((format!("mod k({q})"), Membership::new(Arc::new(catalogue(&q)), Rule::All)));
    }
    for (label, e) in &cats {
        let (b, n) = interval_laws(label, e, 5)?;
        bad.extend(b);
        pairs += n;
    }
    let ok = bad.is_empty();
    Ok((ok, if ok { format!("{} monoids, {pairs} intervals", sources.len()) } else { bad.join("; ") }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_lists() {
        assert_eq!(format_transpositions(&ts("13,23")), "{(1,3),(2,3)}");
        assert!(ts("").is_empty());
    }

    #[test]
    fn fast_criteria_pass() {
        for id in [1, 2, 3, 4] {
            let o = run_criterion(id).unwrap();
            assert!(o.pass, "{}", o.line());
        }
        assert!(run_criterion(12).is_none());
    }
}
