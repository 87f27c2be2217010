//! JSON envelope `{kind, version, payload}` for every serialized object.
//!
//! Automaton and urn tables are dense arrays, row = state (ball type),
//! column = input (color); entries are indices into the label lists.
//! Logic contexts are written with ground labels. Nit sets and transcripts
//! carry their newline-delimited text exports.

use automaton_logic::counterfactual::{format_transcript, parse_transcript, Record};
use automaton_logic::nits::{export_sets, parse_sets, CompleteNitSet};
use automaton_logic::urn::UrnModel;
use automaton_logic::{AutomatonTables, MealyAutomaton, Mode, Partition, PartitionLogic};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Automaton,
    Urn,
    Logic,
    Nitset,
    Transcript,
}

#[derive(Debug, Deserialize)]
struct RawEnvelope {
    kind: Kind,
    version: String,
    payload: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonPayload {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub delta: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrnPayload {
    pub ball_types: Vec<String>,
    pub colors: Vec<String>,
    pub symbols: Vec<String>,
    pub lookup: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModePayload {
    SetIdentified,
    ContextTagged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicPayload {
    pub ground: Vec<String>,
    pub mode: ModePayload,
    pub contexts: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NitsetPayload {
    pub n: usize,
    pub k: usize,
    pub sets: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptPayload {
    pub n: usize,
    pub modes: usize,
    pub seed: u64,
    pub log: String,
}

/// A measurement log with the parameters that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub n: usize,
    pub modes: usize,
    pub seed: u64,
    pub records: Vec<Record>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Automaton(MealyAutomaton),
    Urn(UrnModel),
    Logic(PartitionLogic),
    NitSets { n: usize, k: usize, sets: Vec<CompleteNitSet> },
    Transcript(Transcript),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Automaton(_) => Kind::Automaton,
            Object::Urn(_) => Kind::Urn,
            Object::Logic(_) => Kind::Logic,
            Object::NitSets { .. } => Kind::Nitset,
            Object::Transcript(_) => Kind::Transcript,
        }
    }
}

fn logic_payload(l: &PartitionLogic) -> LogicPayload {
    let labels = l.labels();
    LogicPayload {
        ground: labels.to_vec(),
        mode: match l.mode() {
            Mode::SetIdentified => ModePayload::SetIdentified,
            Mode::ContextTagged => ModePayload::ContextTagged,
        },
        contexts: l
            .contexts()
            .iter()
            .map(|p| p.blocks().iter().map(|b| b.iter().map(|&x| labels[x].clone()).collect()).collect())
            .collect(),
    }
}

fn logic_from_payload(p: LogicPayload) -> Result<PartitionLogic, CliError> {
    let index = |label: &String| {
        p.ground
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| CliError::Format(format!("context mentions unknown ground element {label:?}")))
    };
    let contexts = p
        .contexts
        .iter()
        .map(|blocks| {
            let blocks = blocks
                .iter()
                .map(|b| b.iter().map(index).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Partition::new(p.ground.len(), blocks)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mode = match p.mode {
        ModePayload::SetIdentified => Mode::SetIdentified,
        ModePayload::ContextTagged => Mode::ContextTagged,
    };
    Ok(PartitionLogic::new(p.ground, contexts, mode)?)
}

#[derive(Serialize)]
struct EnvelopeOut<T> {
    kind: Kind,
    version: &'static str,
    payload: T,
}

fn write<T: Serialize>(kind: Kind, payload: T) -> String {
    serde_json::to_string_pretty(&EnvelopeOut { kind, version: VERSION, payload }).expect("envelope serializes")
}

pub fn to_json(object: &Object) -> String {
    let kind = object.kind();
    match object {
        Object::Automaton(a) => write(
            kind,
            AutomatonPayload {
                states: a.state_labels().to_vec(),
                inputs: a.input_labels().to_vec(),
                outputs: a.output_labels().to_vec(),
                delta: a.delta_table().to_vec(),
                lambda: a.lambda_table().to_vec(),
            },
        ),
        Object::Urn(u) => write(
            kind,
            UrnPayload {
                ball_types: u.ball_types().to_vec(),
                colors: u.colors().to_vec(),
                symbols: u.symbols().to_vec(),
                lookup: u.lookup_table().to_vec(),
            },
        ),
        Object::Logic(l) => write(kind, logic_payload(l)),
        Object::NitSets { n, k, sets } => write(kind, NitsetPayload { n: *n, k: *k, sets: export_sets(sets) }),
        Object::Transcript(t) => write(
            kind,
            TranscriptPayload { n: t.n, modes: t.modes, seed: t.seed, log: format_transcript(&t.records) },
        ),
    }
}

pub fn from_json(text: &str) -> Result<Object, CliError> {
    let raw: RawEnvelope = serde_json::from_str(text)?;
    if raw.version != VERSION {
        return Err(CliError::Format(format!("unsupported envelope version {:?}", raw.version)));
    }
    let payload = raw.payload;
    Ok(match raw.kind {
        Kind::Automaton => {
            let p: AutomatonPayload = serde_json::from_value(payload)?;
            Object::Automaton(MealyAutomaton::validate(AutomatonTables {
                states: p.states,
                inputs: p.inputs,
                outputs: p.outputs,
                delta: p.delta,
                lambda: p.lambda,
            })?)
        }
        Kind::Urn => {
            let p: UrnPayload = serde_json::from_value(payload)?;
            Object::Urn(UrnModel::new(p.ball_types, p.colors, p.symbols, p.lookup)?)
        }
        Kind::Logic => Object::Logic(logic_from_payload(serde_json::from_value(payload)?)?),
        Kind::Nitset => {
            let p: NitsetPayload = serde_json::from_value(payload)?;
            Object::NitSets { n: p.n, k: p.k, sets: parse_sets(&p.sets, p.n, p.k)? }
        }
        Kind::Transcript => {
            let p: TranscriptPayload = serde_json::from_value(payload)?;
            Object::Transcript(Transcript { n: p.n, modes: p.modes, seed: p.seed, records: parse_transcript(&p.log)? })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use automaton_logic::catalog;

    #[test]
    fn mo3_envelope_shape() {
        let json = to_json(&Object::Automaton(catalog::mo3()));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["kind"], "automaton");
        assert_eq!(v["version"], "1");
        assert_eq!(v["payload"]["delta"], serde_json::json!([[0, 0, 0], [0, 0, 0], [0, 0, 0]]));
        assert_eq!(v["payload"]["lambda"][1], serde_json::json!([0, 1, 0]));
    }

    #[test]
    fn logic_uses_labels() {
        let json = to_json(&Object::Logic(catalog::mo3_logic()));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["payload"]["mode"], "set-identified");
        assert_eq!(v["payload"]["contexts"][0], serde_json::json!([["1"], ["2", "3"]]));
    }

    #[test]
    fn rejects_bad_envelopes() {
        assert!(from_json(r#"{"kind":"automaton","version":"2","payload":{}}"#).is_err());
        assert!(from_json(r#"{"kind":"tree","version":"1","payload":{}}"#).is_err());
        let bad = r#"{"kind":"automaton","version":"1","payload":{"states":["1"],"inputs":["a"],"outputs":["x"],"delta":[[4]],"lambda":[[0]]}}"#;
        let err = from_json(bad).unwrap_err().to_string();
        assert!(err.contains("transition target out of range"), "{err}");
    }
}
