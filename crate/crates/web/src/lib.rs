//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain numbers or strings and returns a JSON string. The
//! `*_json` functions hold the logic and are what the native tests call.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use unidiff::certificate::{verify_snf_theorem, MinorSampling};
use unidiff::fp::parse_brace_list;
use unidiff::search::find_no_unique_difference;
use unidiff::{
    compute_f, compute_g, diff_table, is_prime, sum_table, unique_difference, unique_sum, GenSet,
    Prime, ResidueSet, SearchConfig, SearchError, SymSet, Witness,
};

/// Largest prime accepted by the table explorer.
pub const TABLE_LIMIT: u64 = 2_000;
/// Largest prime accepted by the extremal chart.
pub const SERIES_LIMIT: u64 = 200;

#[derive(Serialize)]
struct TableView {
    p: u64,
    elements: Vec<u64>,
    kind: &'static str,
    counts: Vec<u64>,
    unique_positions: Vec<u64>,
    witness: Option<Witness>,
}

#[derive(Serialize)]
struct SeriesPoint {
    p: u64,
    value: usize,
    complete: bool,
    sets_examined: u64,
    witness: Option<Vec<u64>>,
    /// `log₂ p` for f, `2·log₃ p` for g.
    reference: f64,
}

fn prime(p: u64) -> Result<Prime, String> {
    Prime::new(p).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Difference (or sum) table of the set given as a comma list mod `p`.
pub fn table_json(p: u64, elements: &str, sums: bool) -> Result<String, String> {
    if p > TABLE_LIMIT {
        return Err(format!("p must be at most {TABLE_LIMIT}"));
    }
    let modulus = prime(p)?;
    let body = elements.trim().trim_matches(|c| c == '{' || c == '}');
    let values = parse_brace_list(&format!("{{{body}}}")).map_err(|e| e.to_string())?;
    let set = GenSet::new(modulus, &values).map_err(|e| e.to_string())?;
    let (table, witness) = if sums {
        (sum_table(&set), unique_sum(&set))
    } else {
        (diff_table(&set), unique_difference(&set))
    };
    Ok(to_json(&TableView {
        p,
        elements: set.residues(),
        kind: if sums { "sum" } else { "difference" },
        counts: table.counts().to_vec(),
        unique_positions: table.unique_positions(),
        witness,
    }))
}

/// `f(p)` or `g(p)` for the odd primes up to `up_to`, each run capped at
/// `budget` candidate sets.
pub fn series_json(symmetric: bool, up_to: u64, budget: u64) -> Result<String, String> {
    if up_to > SERIES_LIMIT {
        return Err(format!("up_to must be at most {SERIES_LIMIT}"));
    }
    let cfg = SearchConfig {
        budget: Some(budget),
        ..SearchConfig::default()
    };
    let mut points = Vec::new();
    for p in (3..=up_to).filter(|&k| is_prime(k)) {
        let modulus = prime(p)?;
        let res = if symmetric {
            compute_g(modulus, &cfg)
        } else {
            compute_f(modulus, &cfg)
        };
        let r = match res {
            Ok(r) => r,
            Err(SearchError::BudgetExhausted(partial)) => *partial,
            Err(e) => return Err(e.to_string()),
        };
        let lp = (p as f64).ln();
        points.push(SeriesPoint {
            p,
            value: r.value,
            complete: r.complete,
            sets_examined: r.sets_examined,
            witness: r.witness,
            reference: if symmetric {
                2.0 * lp / 3f64.ln()
            } else {
                lp / 2f64.ln()
            },
        });
    }
    Ok(to_json(&points))
}

/// Searches a symmetric set of the given size without a unique difference
/// and returns its Smith Normal Form certificate, or `null` if none exists.
pub fn certificate_json(p: u64, size: usize, budget: u64) -> Result<String, String> {
    if p > SERIES_LIMIT {
        return Err(format!("p must be at most {SERIES_LIMIT}"));
    }
    let modulus = prime(p)?;
    let cfg = SearchConfig {
        budget: Some(budget),
        ..SearchConfig::default()
    };
    let Some(found) =
        find_no_unique_difference(modulus, size, true, &cfg).map_err(|e| e.to_string())?
    else {
        return Ok("null".into());
    };
    let values: Vec<i64> = found.iter().map(|&x| x as i64).collect();
    let sym = GenSet::new(modulus, &values)
        .and_then(|s| SymSet::from_set(&s))
        .map_err(|e| e.to_string())?;
    let cert = verify_snf_theorem(&sym, &MinorSampling::default()).map_err(|e| e.to_string())?;
    #[derive(Serialize)]
    struct View<'a, T> {
        set: &'a [u64],
        certificate: T,
    }
    Ok(to_json(&View {
        set: &found,
        certificate: cert,
    }))
}

#[wasm_bindgen]
pub fn difference_table(p: u32, elements: &str, sums: bool) -> Result<String, JsValue> {
    table_json(p.into(), elements, sums).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn extremal_series(symmetric: bool, up_to: u32, budget: u32) -> Result<String, JsValue> {
    series_json(symmetric, up_to.into(), budget.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn witness_certificate(p: u32, size: u32, budget: u32) -> Result<String, JsValue> {
    certificate_json(p.into(), size as usize, budget.into()).map_err(|e| JsValue::from_str(&e))
}
