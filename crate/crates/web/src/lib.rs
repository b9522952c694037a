//! WebAssembly bindings for the demo page in `www/`. Each export takes strings and
//! returns a JSON document; the plain functions in [`api`] do the work and are what
//! the native tests call.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};

    use vvsingular::jack::coefficient_c_jack;
    use vvsingular::macdonald::coefficient_c_mac;
    use vvsingular::singular::{predict, tableaux_at_corner, verify_singular, FamilyKind};
    use vvsingular::specht::SpechtModule;
    use vvsingular::tableaux::{Cell, Partition};

    /// Verification in the page is limited to `N <= MAX_VERIFY_N` and `m <= MAX_VERIFY_M`.
    pub const MAX_VERIFY_N: usize = 5;
    pub const MAX_VERIFY_M: u32 = 3;
    /// Enumeration is limited by the number of tableaux.
    pub const MAX_RSYT: u128 = 2000;

    fn parse<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        s.trim().parse().map_err(|e| format!("{what}: {e}"))
    }

    fn to_string(v: Value) -> String {
        serde_json::to_string_pretty(&v).expect("json values serialize")
    }

    pub fn rsyt(shape: &str) -> Result<String, String> {
        let shape: Partition = parse("shape", shape)?;
        let count = shape.hook_dimension();
        if count > MAX_RSYT {
            return Err(format!("{shape} has {count} tableaux; the page lists at most {MAX_RSYT}"));
        }
        let module = SpechtModule::new(&shape);
        let tableaux: Vec<Value> = module
            .tableaux()
            .iter()
            .enumerate()
            .map(|(k, t)| json!({ "index": k + 1, "tableau": t, "contents": t.content_vector() }))
            .collect();
        Ok(to_string(json!({ "shape": shape, "dim": module.dim(), "tableaux": tableaux })))
    }

    pub fn predict_values(family: &str, shape: &str, cell: &str, m: u32) -> Result<String, String> {
        let family: FamilyKind = parse("family", family)?;
        let shape: Partition = parse("shape", shape)?;
        let cell: Cell = parse("cell", cell)?;
        let data = predict(family, &shape, cell, m).map_err(|e| e.to_string())?;
        let coefficient = match family {
            FamilyKind::Jack => coefficient_c_jack(&shape, cell, m).map(|c| c.reduced().to_string()),
            FamilyKind::Macdonald => coefficient_c_mac(&shape, cell, m).map(|c| c.reduced().to_string()),
        }
        .map_err(|e| e.to_string())?;
        Ok(to_string(json!({ "coefficient": coefficient, "data": data })))
    }

    pub fn verify(family: &str, shape: &str, cell: &str, m: u32, seed: u64) -> Result<String, String> {
        let family: FamilyKind = parse("family", family)?;
        let shape: Partition = parse("shape", shape)?;
        let cell: Cell = parse("cell", cell)?;
        if shape.size() > MAX_VERIFY_N || m > MAX_VERIFY_M {
            return Err(format!(
                "the page verifies N <= {MAX_VERIFY_N} and m <= {MAX_VERIFY_M}; use the command-line tool for larger cases"
            ));
        }
        let data = predict(family, &shape, cell, m).map_err(|e| e.to_string())?;
        let module = SpechtModule::new(&shape);
        let mut reports = Vec::new();
        for d in &data {
            for s in tableaux_at_corner(&module, cell) {
                reports.extend(verify_singular(d, &module, s, seed).map_err(|e| e.to_string())?);
            }
        }
        let passed = reports.iter().all(|r| r.passed());
        Ok(to_string(json!({ "passed": passed, "reports": reports })))
    }
}

#[wasm_bindgen]
pub fn rsyt(shape: &str) -> Result<String, JsError> {
    api::rsyt(shape).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn predict(family: &str, shape: &str, cell: &str, m: u32) -> Result<String, JsError> {
    api::predict_values(family, shape, cell, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(family: &str, shape: &str, cell: &str, m: u32, seed: u32) -> Result<String, JsError> {
    api::verify(family, shape, cell, m, seed as u64).map_err(|e| JsError::new(&e))
}
