//! The counterexample regression suite: each item recomputes one known
//! verdict from scratch.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::grothendieck::{compex_shape, kronecker_demo, loop_algebra_presentation, nonulp1_class};
use crate::monoid::{cancellativity_scan, Certificate, Presentation, Strata};
use crate::repkit::examples::{exa, nonlattice1, space};
use crate::repkit::{admissible_poset, poset_properties, series_analysis, DEFAULT_DIM_BOUND};
use crate::symgroup::{Orientation, Permutation};
use crate::type_a::{class_of, classical_name, IntervalModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegressionItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl RegressionItem {
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

/// Inputs that may be swapped for user files.
#[derive(Clone, Debug, Default)]
pub struct RegressionConfig {
    /// Replaces the built-in loop-algebra presentation.
    pub loop_presentation: Option<Presentation>,
}

type Check = fn(&RegressionConfig) -> Result<(bool, String)>;

const ITEMS: &[(&str, Check)] = &[
    ("compex(1,1) Case2", |_| compex(1, 1)),
    ("compex(2,1) Case1", |_| compex(2, 1)),
    ("compex(2,2) Case2", |_| compex(2, 2)),
    ("e1 F(4312) jhp", |_| e1()),
    ("exa", |_| exa_item()),
    ("kronecker non-cancellative", |_| kronecker_item()),
    ("loop-algebra non-cancellative", loop_item),
    ("nonlattice1", |_| nonlattice_item()),
    ("nonulp1", |_| nonulp1_item()),
];

pub fn item_names() -> Vec<&'static str> {
    ITEMS.iter().map(|(n, _)| *n).collect()
}

/// Runs every item whose name starts with `only` (all when None), in name
/// order. An error inside an item is reported as a failure of that item.
pub fn run_regressions(cfg: &RegressionConfig, only: Option<&str>) -> Vec<RegressionItem> {
    ITEMS
        .iter()
        .filter(|(name, _)| only.is_none_or(|o| name.starts_with(o)))
        .map(|(name, check)| {
            let (pass, detail) = check(cfg).unwrap_or_else(|e| (false, format!("error: {e}")));
            RegressionItem { name: name.to_string(), pass, detail }
        })
        .collect()
}

fn compex(m: usize, n: usize) -> Result<(bool, String)> {
    let s = compex_shape(m, n, 4)?;
    Ok((s.passes(), format!("atoms {}, strata {:?}, arrows {}", s.atoms, s.counts, if s.arrows_match { "match" } else { "differ" })))
}

fn e1() -> Result<(bool, String)> {
    let q = Orientation::parse("1>2<3")?;
    let f = class_of(&Permutation::parse("4312")?, &q)?;
    let e = f.membership();
    let mut simples = BTreeSet::new();
    let mut jhp = true;
    for m in &f.modules {
        let r = series_analysis(&m.rep(&q), &e, DEFAULT_DIM_BOUND)?;
        jhp &= r.jhp_holds;
        if r.is_simple {
            simples.insert(classical_name(m, &q).unwrap_or_else(|| m.to_string()));
        }
    }
    let want: BTreeSet<String> = ["S2", "P1", "S3"].iter().map(|s| s.to_string()).collect();
    Ok((jhp && simples == want, format!("simples {simples:?}, jhp {jhp}")))
}

fn exa_item() -> Result<(bool, String)> {
    let e = exa();
    let r = series_analysis(&space(&e, 6), &e, DEFAULT_DIM_BOUND)?;
    let want = vec![vec!["2*k".to_string(); 3], vec!["3*k".to_string(); 2]];
    Ok((r.factor_multisets == want && !r.jhp_holds, format!("factor multisets {:?}", r.factor_multisets)))
}

fn nonlattice_item() -> Result<(bool, String)> {
    let e = nonlattice1();
    let p = admissible_poset(&space(&e, 6), &e, DEFAULT_DIM_BOUND)?;
    let props = poset_properties(&p);
    Ok((!props.is_lattice, format!("{} admissible subobjects, lattice {}", p.len(), props.is_lattice)))
}

fn nonulp1_item() -> Result<(bool, String)> {
    let f = nonulp1_class()?;
    let x = IntervalModule::new(1, 5);
    let r = series_analysis(&x.rep(&f.quiver), &f.membership(), DEFAULT_DIM_BOUND)?;
    Ok((r.lengths == vec![2, 3], format!("w = {}, lengths of M[1,5): {:?}", f.w, r.lengths)))
}

fn kronecker_item() -> Result<(bool, String)> {
    let d = kronecker_demo(4)?;
    let ok = d.regular.len() == 3
        && d.regular_distinct
        && d.sums_to_p2
        && d.certificate.as_ref().is_some_and(|c| c.a == "S1" && c.x.starts_with("R[") && c.y.starts_with("R["));
    Ok((ok, format!("certificate {:?}, regular {:?}", d.certificate, d.regular)))
}

fn loop_item(cfg: &RegressionConfig) -> Result<(bool, String)> {
    let p = cfg.loop_presentation.clone().unwrap_or_else(loop_algebra_presentation);
    let mut st = Strata::new();
    let c = cancellativity_scan(&p, &mut st, 8)?;
    let want = Certificate { a: "M".into(), x: "M".into(), y: "P2".into() };
    let distinct = match (p.gens.names.iter().position(|n| n == "M"), p.gens.names.iter().position(|n| n == "P2")) {
        (Some(m), Some(p2)) => st.locate(&p, &p.gens.unit(m))? != st.locate(&p, &p.gens.unit(p2))?,
        _ => false,
    };
    Ok((c.certificate() == Some(&want) && distinct, format!("certificate {:?}", c.certificate())))
}
