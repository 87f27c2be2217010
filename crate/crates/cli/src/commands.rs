use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use automaton_logic::counterfactual::CounterfactualAutomaton;
use automaton_logic::experiments::{complementary_pairs, experimental_partitions, finest_partitions, Depth};
use automaton_logic::logic::{horizontal_sum, paste, point_induced_states, two_valued_states, is_separating};
use automaton_logic::nits::{enumerate_complete_sets_with_limit, render_tessellation, DEFAULT_STATE_LIMIT};
use automaton_logic::reversible::{cycle_form, domain_labels, format_cycles, permutation};
use automaton_logic::urn::{automaton_from_urn, urn_from_automaton};
use automaton_logic::{catalog, MealyAutomaton, PartitionLogic};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dot::{flow_dot, hasse_dot};
use crate::envelope::{from_json, to_json, Object, Transcript};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "autologic", version, about = "Partition logics of Mealy automata")]
pub struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    #[value(name = "mo3")]
    Mo3,
    #[value(name = "triangle")]
    Triangle,
    #[value(name = "swap-reversible")]
    SwapReversible,
    #[value(name = "urn-fig1")]
    UrnFig1,
    #[value(name = "two-trit-first")]
    TwoTritFirst,
}

impl Example {
    pub fn from_name(name: &str) -> Option<Self> {
        <Self as ValueEnum>::from_str(name, false).ok()
    }

    pub fn object(self) -> Object {
        match self {
            Example::Mo3 => Object::Automaton(catalog::mo3()),
            Example::Triangle => Object::Automaton(catalog::triangle()),
            Example::SwapReversible => Object::Automaton(catalog::swap_reversible()),
            Example::UrnFig1 => Object::Urn(catalog::urn_fig1()),
            Example::TwoTritFirst => Object::NitSets { n: 3, k: 2, sets: vec![catalog::two_trit_first()] },
        }
    }
}

/// Where the input object comes from; stdin when neither flag is given.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Use a built-in example.
    #[arg(long, conflicts_with = "input")]
    pub example: Option<Example>,
    /// Read a JSON envelope from this file (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum LogicMode {
    /// Identify equal blocks across contexts.
    #[default]
    Pasted,
    /// Keep every context's blocks distinct.
    Horizontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preparation {
    pub mode: usize,
    pub value: usize,
}

fn parse_preparation(s: &str) -> Result<Preparation, String> {
    let (m, v) = s.split_once(':').ok_or("expected MODE:VALUE")?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Preparation { mode: num(m)?, value: num(v)? })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a built-in example as a JSON envelope.
    Example { name: Example },
    /// Partitions of the states induced by input words.
    Partitions {
        #[command(flatten)]
        source: Source,
        /// Only words up to this length (default: all words).
        #[arg(long)]
        max_len: Option<usize>,
        /// Keep only the maximal (finest) partitions.
        #[arg(long)]
        finest: bool,
    },
    /// Pairs of complementary input words.
    Complementary {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_len: usize,
    },
    /// Partition logic of an automaton.
    Logic {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        mode: LogicMode,
        #[arg(long)]
        max_len: Option<usize>,
        /// Emit the Hasse diagram as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Two-valued states of a logic (or of an automaton's pasted logic).
    States {
        #[command(flatten)]
        source: Source,
        /// Only the states induced by single points of the ground set.
        #[arg(long)]
        points: bool,
    },
    /// Translate an automaton into an urn model.
    ToUrn {
        #[command(flatten)]
        source: Source,
    },
    /// Translate an urn model into an automaton.
    FromUrn {
        #[command(flatten)]
        source: Source,
    },
    /// Permutation structure of a reversible automaton.
    Reversible {
        #[command(flatten)]
        source: Source,
        /// Emit the flow diagram as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Run a seeded sequence of counterfactual measurements.
    Measure {
        /// Number of values per mode.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        seed: u64,
        /// Initial preparation, `MODE:VALUE`.
        #[arg(long, value_parser = parse_preparation)]
        prepare: Preparation,
        /// Modes to measure, in order, e.g. `1,2,1`.
        #[arg(long, value_delimiter = ',', required = true)]
        sequence: Vec<usize>,
    },
    /// Enumerate complete sets of comeasurable nit partitions.
    EnumerateNits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Print only the number of sets.
        #[arg(long)]
        count_only: bool,
        /// Refuse to search when n^k exceeds this.
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        max_states: usize,
        /// Print text tessellations instead of JSON (k = 2 only).
        #[arg(long, conflicts_with = "count_only")]
        render: bool,
    },
}

fn load(source: &Source) -> Result<Object, CliError> {
    if let Some(ex) = source.example {
        return Ok(ex.object());
    }
    let mut text = String::new();
    match &source.input {
        Some(path) if path.as_os_str() != "-" => text = fs::read_to_string(path)?,
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    from_json(&text)
}

fn kind_error(expected: &str, got: &Object) -> CliError {
    CliError::Format(format!("expected {expected}, got {:?}", got.kind()).to_lowercase())
}

fn load_automaton(source: &Source) -> Result<MealyAutomaton, CliError> {
    match load(source)? {
        Object::Automaton(a) => Ok(a),
        other => Err(kind_error("automaton", &other)),
    }
}

fn depth(max_len: Option<usize>) -> Depth {
    max_len.map_or(Depth::Unbounded, Depth::Words)
}

fn block(b: &[usize], labels: &[String]) -> String {
    format!("{{{}}}", b.iter().map(|&x| labels[x].as_str()).collect::<Vec<_>>().join(", "))
}

fn word(w: &[usize], labels: &[String]) -> Value {
    json!(w.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn automaton_logic(a: &MealyAutomaton, mode: LogicMode, max_len: Option<usize>) -> Result<PartitionLogic, CliError> {
    let finest = finest_partitions(a, depth(max_len));
    let logic = match mode {
        LogicMode::Pasted => paste(a.num_states(), &finest)?,
        LogicMode::Horizontal => horizontal_sum(a.num_states(), &finest)?,
    };
    Ok(logic.with_labels(a.state_labels().to_vec())?)
}

/// Runs one subcommand and returns its output text.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Example { name } => Ok(to_json(&name.object())),
        Command::Partitions { source, max_len, finest } => {
            let a = load_automaton(source)?;
            let parts =
                if *finest { finest_partitions(&a, depth(*max_len)) } else { experimental_partitions(&a, depth(*max_len)) };
            let parts: Vec<String> = parts.iter().map(|p| p.render(a.state_labels())).collect();
            Ok(pretty(&json!({ "partitions": parts })))
        }
        Command::Complementary { source, max_len } => {
            let a = load_automaton(source)?;
            let pairs: Vec<Value> = complementary_pairs(&a, *max_len)?
                .iter()
                .map(|(u, v)| json!([word(u, a.input_labels()), word(v, a.input_labels())]))
                .collect();
            Ok(pretty(&json!({ "pairs": pairs })))
        }
        Command::Logic { source, mode, max_len, dot } => {
            let logic = match load(source)? {
                Object::Automaton(a) => automaton_logic(&a, *mode, *max_len)?,
                Object::Logic(l) => l,
                other => return Err(kind_error("automaton or logic", &other)),
            };
            if *dot {
                Ok(hasse_dot(&logic)?)
            } else {
                Ok(to_json(&Object::Logic(logic)))
            }
        }
        Command::States { source, points } => {
            let logic = match load(source)? {
                Object::Automaton(a) => automaton_logic(&a, LogicMode::Pasted, None)?,
                Object::Logic(l) => l,
                other => return Err(kind_error("automaton or logic", &other)),
            };
            let states = if *points { point_induced_states(&logic)? } else { two_valued_states(&logic)? };
            let rendered: Vec<Value> = states
                .iter()
                .map(|s| {
                    json!(s
                        .choice()
                        .iter()
                        .zip(logic.contexts())
                        .map(|(&b, ctx)| block(&ctx.blocks()[b], logic.labels()))
                        .collect::<Vec<_>>())
                })
                .collect();
            Ok(pretty(&json!({
                "count": states.len(),
                "separating": is_separating(&logic, &states),
                "states": rendered,
            })))
        }
        Command::ToUrn { source } => {
            let (urn, _) = urn_from_automaton(&load_automaton(source)?)?;
            Ok(to_json(&Object::Urn(urn)))
        }
        Command::FromUrn { source } => match load(source)? {
            Object::Urn(u) => Ok(to_json(&Object::Automaton(automaton_from_urn(&u)?.0))),
            other => Err(kind_error("urn", &other)),
        },
        Command::Reversible { source, dot } => {
            let a = load_automaton(source)?;
            if *dot {
                return Ok(flow_dot(&a)?);
            }
            let p = permutation(&a)?;
            Ok(pretty(&json!({
                "reversible": true,
                "domain": domain_labels(&a),
                "image": p.image(),
                "cycles": format_cycles(&cycle_form(&a)?),
                "order": p.order(),
                "matrix": p.matrix(),
            })))
        }
        Command::Measure { n, modes, seed, prepare, sequence } => {
            let mut cf = CounterfactualAutomaton::new(*n, *modes, *seed)?;
            let mut state = cf.prepare(prepare.mode, prepare.value)?;
            for &mode in sequence {
                state = cf.measure(state, mode)?.1;
            }
            Ok(to_json(&Object::Transcript(Transcript {
                n: *n,
                modes: *modes,
                seed: *seed,
                records: cf.transcript().to_vec(),
            })))
        }
        Command::EnumerateNits { n, k, count_only, max_states, render } => {
            let sets = enumerate_complete_sets_with_limit(*n, *k, *max_states)?;
            if *count_only {
                return Ok(sets.len().to_string());
            }
            if *render {
                let panels = sets
                    .iter()
                    .map(|s| Ok(format!("{s}\n{}", render_tessellation(s)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                return Ok(panels.join("\n"));
            }
            Ok(to_json(&Object::NitSets { n: *n, k: *k, sets }))
        }
    }
}

/// Runs the parsed command line, writing to `--out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let mut text = execute(&cli.command)?;
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
