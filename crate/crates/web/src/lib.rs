//! WebAssembly entry points for the browser demo in `www/`.
//!
//! Every operation returns a JSON string. The plain functions are usable
//! (and tested) natively; the `#[wasm_bindgen]` wrappers only convert errors.

mod svg;

use std::sync::OnceLock;

use automaton_logic::counterfactual::CounterfactualAutomaton;
use automaton_logic::experiments::{complementary_pairs, experimental_partitions, finest_partitions, Depth};
use automaton_logic::logic::{is_separating, paste, point_induced_states, two_valued_states};
use automaton_logic::nits::{enumerate_complete_sets, render_tessellation, CompleteNitSet};
use automaton_logic::{Error, MealyAutomaton};
use automaton_logic_cli::commands::Example;
use automaton_logic_cli::{from_json, to_json, Object};
use serde_json::json;
use wasm_bindgen::prelude::*;

pub use svg::hasse_svg;

/// Longest words searched for complementary pairs.
pub const PAIR_WORD_LIMIT: usize = 3;

fn fail(msg: impl ToString) -> String {
    msg.to_string()
}

/// JSON envelope of a built-in example.
pub fn example_json(name: &str) -> Result<String, String> {
    let ex = Example::from_name(name)
        .ok_or_else(|| format!("unknown example {name:?}; valid: {}", automaton_logic::catalog::NAMES.join(", ")))?;
    Ok(to_json(&ex.object()))
}

fn parse_automaton(envelope: &str) -> Result<MealyAutomaton, String> {
    match from_json(envelope).map_err(fail)? {
        Object::Automaton(a) => Ok(a),
        Object::Urn(u) => Ok(automaton_logic::urn::automaton_from_urn(&u).map_err(fail)?.0),
        other => Err(format!("expected an automaton, got {:?}", other.kind()).to_lowercase()),
    }
}

/// Partitions, complementary words, logic and two-valued states of an automaton.
pub fn explore(envelope: &str) -> Result<String, String> {
    let a = parse_automaton(envelope)?;
    let labels = a.state_labels();
    let partitions: Vec<String> =
        experimental_partitions(&a, Depth::Unbounded).iter().map(|p| p.render(labels)).collect();
    let finest = finest_partitions(&a, Depth::Unbounded);
    let word = |w: &[usize]| w.iter().map(|&i| a.input_labels()[i].as_str()).collect::<Vec<_>>().join(" ");
    let pairs: Vec<[String; 2]> = match complementary_pairs(&a, PAIR_WORD_LIMIT) {
        Ok(pairs) => pairs.iter().map(|(u, v)| [word(u), word(v)]).collect(),
        Err(Error::SearchTooLarge { .. }) => Vec::new(),
        Err(e) => return Err(fail(e)),
    };
    let logic = paste(a.num_states(), &finest).and_then(|l| l.with_labels(labels.to_vec())).map_err(fail)?;
    let states = two_valued_states(&logic).map_err(fail)?;
    let points = point_induced_states(&logic).map_err(fail)?;
    Ok(json!({
        "states": labels,
        "partitions": partitions,
        "finest": finest.iter().map(|p| p.render(labels)).collect::<Vec<_>>(),
        "complementary": pairs,
        "two_valued": states.len(),
        "point_induced": points.len(),
        "separating": is_separating(&logic, &states),
        "hasse_svg": hasse_svg(&logic).map_err(fail)?,
    })
    .to_string())
}

fn complete_sets(n: usize) -> Result<&'static [CompleteNitSet], String> {
    static BITS: OnceLock<Vec<CompleteNitSet>> = OnceLock::new();
    static TRITS: OnceLock<Vec<CompleteNitSet>> = OnceLock::new();
    let cell = match n {
        2 => &BITS,
        3 => &TRITS,
        _ => return Err(format!("tessellations are available for n = 2 or 3, not {n}")),
    };
    if let Some(sets) = cell.get() {
        return Ok(sets);
    }
    let sets = enumerate_complete_sets(n, 2).map_err(fail)?;
    Ok(cell.get_or_init(|| sets))
}

/// The `index`-th complete pair of `n`-nits, with its three text panels.
pub fn tessellation(n: usize, index: usize) -> Result<String, String> {
    let sets = complete_sets(n)?;
    let set = sets.get(index).ok_or_else(|| format!("index {index} out of range (0..{})", sets.len()))?;
    let t = render_tessellation(set).map_err(fail)?;
    Ok(json!({
        "count": sets.len(),
        "index": index,
        "set": set.to_string(),
        "first": t.first_nit(),
        "second": t.second_nit(),
        "both": t.both(),
    })
    .to_string())
}

/// Seeded measurement run; `sequence` is a comma-separated list of modes.
///
/// `histogram[m][v]` counts how often mode `m + 1` returned value `v + 1`.
pub fn measure(n: usize, modes: usize, seed: u64, mode: usize, value: usize, sequence: &str) -> Result<String, String> {
    let sequence: Vec<usize> = sequence
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad mode {s:?}")))
        .collect::<Result<_, _>>()?;
    let mut cf = CounterfactualAutomaton::new(n, modes, seed).map_err(fail)?;
    let mut state = cf.prepare(mode, value).map_err(fail)?;
    for &m in &sequence {
        state = cf.measure(state, m).map_err(fail)?.1;
    }
    let mut histogram = vec![vec![0usize; n]; modes];
    for r in cf.transcript() {
        histogram[r.mode - 1][r.output - 1] += 1;
    }
    let transcript = automaton_logic_cli::envelope::Transcript { n, modes, seed, records: cf.transcript().to_vec() };
    Ok(json!({
        "records": cf.transcript().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "histogram": histogram,
        "envelope": to_json(&Object::Transcript(transcript)),
    })
    .to_string())
}

#[wasm_bindgen(js_name = example)]
pub fn example_js(name: &str) -> Result<String, JsError> {
    example_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = explore)]
pub fn explore_js(envelope: &str) -> Result<String, JsError> {
    explore(envelope).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tessellation)]
pub fn tessellation_js(n: usize, index: usize) -> Result<String, JsError> {
    tessellation(n, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = measure)]
pub fn measure_js(n: usize, modes: usize, seed: u64, mode: usize, value: usize, sequence: &str) -> Result<String, JsError> {
    measure(n, modes, seed, mode, value, sequence).map_err(|e| JsError::new(&e))
}
