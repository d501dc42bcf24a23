//! Browser bindings: a table of c-sortable elements, a single-class report
//! and the regression suite. Every call returns a JSON string.

use jhp_core::grothendieck::{report, CategorySource, Options};
use jhp_core::regress::{run_regressions, RegressionConfig};
use jhp_core::symgroup::{Orientation, Permutation};
use jhp_core::type_a::table_rows;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Rows (w, supp, inv, Binv, #simp, jhp) for the orientation.
pub fn table_json(quiver: &str, faithful_only: bool) -> Result<String, String> {
    let q = Orientation::parse(quiver).map_err(|e| e.to_string())?;
    if q.n > 6 {
        return Err("at most 6 vertices in the browser".into());
    }
    let rows: Vec<Value> = table_rows(&q, faithful_only)
        .iter()
        .map(|r| {
            let [w, supp, inv, binv, nsimp, jhp] = r.cells();
            json!({ "w": w, "supp": supp, "inv": inv, "Binv": binv, "#simp": nsimp, "jhp": jhp })
        })
        .collect();
    Ok(Value::Array(rows).to_string())
}

/// The monoid report of F(w).
pub fn analyze_json(quiver: &str, w: &str) -> Result<String, String> {
    let src = CategorySource::TypeATorsionFree {
        w: Permutation::parse(w).map_err(|e| e.to_string())?,
        quiver: Orientation::parse(quiver).map_err(|e| e.to_string())?,
    };
    let r = report(&src, &Options::default()).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

/// Regression items as {name, pass, detail}.
pub fn regress_json() -> String {
    json!(run_regressions(&RegressionConfig::default(), None)).to_string()
}

#[wasm_bindgen]
pub fn table(quiver: &str, faithful_only: bool) -> Result<String, JsError> {
    table_json(quiver, faithful_only).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(quiver: &str, w: &str) -> Result<String, JsError> {
    analyze_json(quiver, w).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn regress() -> String {
    regress_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_fourteen_rows() {
        let v: Value = serde_json::from_str(&table_json("1>2<3", false).unwrap()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 14);
        assert_eq!(rows.iter().filter(|r| r["jhp"] == "false").count(), 1);
        assert!(table_json("1>>2", false).is_err());
    }

    #[test]
    fn analyze_reports_rank() {
        let v: Value = serde_json::from_str(&analyze_json("1>2<3", "3412").unwrap()).unwrap();
        assert_eq!(v["jhp"], false);
        assert_eq!(v["k0"]["rank"], 3);
        assert!(analyze_json("1>2<3", "4231").unwrap_err().contains("not c-sortable"));
    }

    #[test]
    fn regress_items_pass() {
        let v: Value = serde_json::from_str(&regress_json()).unwrap();
        let items = v.as_array().unwrap();
        assert_eq!(items.len(), 9);
        assert!(items.iter().all(|i| i["pass"] == true));
    }
}
