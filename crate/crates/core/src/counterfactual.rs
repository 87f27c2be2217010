//! Counterfactual automaton: states are `(mode, value)` pairs with
//! `value ∈ 1..=n`. Measuring the prepared mode returns the stored value;
//! measuring any other mode returns a uniform random value and re-prepares
//! the automaton in the measured mode with that value.
//!
//! One random draw feeds both the output and the new state, so an immediate
//! repeat of a measurement always reproduces its result.
//!
//! Randomness is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64(seed)`. A
//! value in `1..=n` is drawn from 64-bit words by rejection: words at or
//! above `⌊(2^64 - 1) / n⌋ · n` are discarded, the first accepted word `x`
//! yields `x mod n + 1`. Transcripts are therefore portable across platforms.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A prepared `(mode, value)` state; both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PreparedState {
    pub mode: usize,
    pub value: usize,
}

impl fmt::Display for PreparedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mode, self.value)
    }
}

/// One measurement: call index (0-based), measured mode, output, resulting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Record {
    pub call: usize,
    pub mode: usize,
    pub output: usize,
    pub state: PreparedState,
}

impl fmt::Display for Record {
    /// Tab-separated `call mode output (mode,value)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.call, self.mode, self.output, self.state)
    }
}

impl FromStr for Record {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad transcript record {line:?}"));
        let fields: Vec<&str> = line.split('\t').collect();
        let [call, mode, output, state] = fields[..] else {
            return Err(bad());
        };
        let (m, v) = state
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.split_once(','))
            .ok_or_else(bad)?;
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        Ok(Record {
            call: num(call)?,
            mode: num(mode)?,
            output: num(output)?,
            state: PreparedState { mode: num(m)?, value: num(v)? },
        })
    }
}

/// Newline-delimited records, one per line, trailing newline included.
pub fn format_transcript(records: &[Record]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

pub fn parse_transcript(text: &str) -> Result<Vec<Record>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone)]
pub struct CounterfactualAutomaton {
    base: usize,
    modes: usize,
    seed: u64,
    rng: ChaCha8Rng,
    transcript: Vec<Record>,
}

impl CounterfactualAutomaton {
    /// `base` is the information base `n` (outputs `1..=n`), `modes` the
    /// number of measurement contexts.
    pub fn new(base: usize, modes: usize, seed: u64) -> Result<Self> {
        if base == 0 || modes == 0 {
            return Err(Error::InvalidShape(format!("base {base}, modes {modes}")));
        }
        Ok(CounterfactualAutomaton {
            base,
            modes,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            transcript: Vec::new(),
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn transcript(&self) -> &[Record] {
        &self.transcript
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode == 0 || mode > self.modes {
            return Err(Error::UnknownMode(mode));
        }
        Ok(())
    }

    pub fn prepare(&self, mode: usize, value: usize) -> Result<PreparedState> {
        self.check_mode(mode)?;
        if value == 0 || value > self.base {
            return Err(Error::ValueOutOfRange { value, n: self.base });
        }
        Ok(PreparedState { mode, value })
    }

    fn draw(&mut self) -> usize {
        let n = self.base as u64;
        let zone = (u64::MAX / n) * n;
        loop {
            let x = self.rng.next_u64();
            if x < zone {
                return (x % n) as usize + 1;
            }
        }
    }

    /// Measures `mode`, returning the output and the state afterwards.
    pub fn measure(&mut self, state: PreparedState, mode: usize) -> Result<(usize, PreparedState)> {
        self.check_mode(mode)?;
        self.prepare(state.mode, state.value)?;
        let (output, next) = if mode == state.mode {
            (state.value, state)
        } else {
            let r = self.draw();
            (r, PreparedState { mode, value: r })
        };
        self.transcript.push(Record { call: self.transcript.len(), mode, output, state: next });
        Ok((output, next))
    }
}
