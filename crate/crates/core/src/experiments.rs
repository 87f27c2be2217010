//! Initial-state determination: the state partitions induced by input words.
//!
//! A word `w` splits the states of an automaton by the output sequence each
//! initial state produces on `w`. The partitions realised by single
//! (non-adaptive) words are what gets pasted into a partition logic.
//!
//! Enumeration runs over *configurations* rather than words: a configuration
//! is the partition observed so far together with the current state of every
//! initial state. Two words reaching the same configuration have identical
//! futures, so the search terminates once no new configuration appears.
//! That fixpoint gives the exact set of partitions over words of any length.
//! The exhaustive search is the default; the classical `|S| - 1` bound for
//! state equivalence does not bound the set of single-word partitions.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{words_up_to, MealyAutomaton, Word};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Longest word considered when enumerating experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Words of length at most this many symbols.
    Words(usize),
    /// Words of any length (configuration fixpoint).
    Unbounded,
}

impl From<usize> for Depth {
    fn from(n: usize) -> Self {
        Depth::Words(n)
    }
}

/// Upper bound on the number of words [`complementary_pairs`] will inspect.
pub const MAX_WORDS: u128 = 200_000;

/// Partition of the states by their output on `word`.
pub fn partition_for_word(a: &MealyAutomaton, word: &[usize]) -> Result<Partition> {
    let outputs = (0..a.num_states())
        .map(|s| a.run(s, word))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_key(a.num_states(), |s| outputs[s].clone()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Config {
    // canonical block id per initial state (first-occurrence numbering)
    block: Vec<usize>,
    current: Vec<usize>,
}

impl Config {
    fn initial(a: &MealyAutomaton) -> Self {
        Config { block: vec![0; a.num_states()], current: (0..a.num_states()).collect() }
    }

    fn extend(&self, a: &MealyAutomaton, input: usize) -> Self {
        let delta = a.delta_table();
        let lambda = a.lambda_table();
        let mut ids: Vec<(usize, usize)> = Vec::new();
        let block = self
            .block
            .iter()
            .zip(&self.current)
            .map(|(&b, &cur)| {
                let key = (b, lambda[cur][input]);
                match ids.iter().position(|k| *k == key) {
                    Some(p) => p,
                    None => {
                        ids.push(key);
                        ids.len() - 1
                    }
                }
            })
            .collect();
        let current = self.current.iter().map(|&cur| delta[cur][input]).collect();
        Config { block, current }
    }

    fn partition(&self) -> Partition {
        Partition::from_key(self.block.len(), |s| self.block[s])
    }
}

/// Breadth-first over configurations; returns the distinct partitions seen and
/// the number of levels expanded before stopping.
fn explore(a: &MealyAutomaton, depth: Depth) -> (BTreeSet<Partition>, usize) {
    let start = Config::initial(a);
    let mut seen: HashSet<Config> = HashSet::from([start.clone()]);
    let mut partitions = BTreeSet::from([start.partition()]);
    let mut frontier = vec![start];
    let mut level = 0;
    while !frontier.is_empty() {
        if let Depth::Words(max) = depth {
            if level >= max {
                break;
            }
        }
        let mut next = Vec::new();
        for config in &frontier {
            for input in 0..a.num_inputs() {
                let c = config.extend(a, input);
                if seen.insert(c.clone()) {
                    partitions.insert(c.partition());
                    next.push(c);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level += 1;
        frontier = next;
    }
    (partitions, level)
}

/// Distinct partitions induced by words up to `depth`, in canonical order.
/// The empty word contributes the trivial one-block partition.
pub fn experimental_partitions(a: &MealyAutomaton, depth: impl Into<Depth>) -> Vec<Partition> {
    explore(a, depth.into()).0.into_iter().collect()
}

/// Smallest word length after which no new configuration, hence no new
/// partition, can appear.
pub fn fixpoint_depth(a: &MealyAutomaton) -> usize {
    explore(a, Depth::Unbounded).1
}

/// Maximal elements of the experimental partitions under refinement.
///
/// The trivial partition only appears when it is the only one.
pub fn finest_partitions(a: &MealyAutomaton, depth: impl Into<Depth>) -> Vec<Partition> {
    let all = experimental_partitions(a, depth);
    maximal_under_refinement(&all)
}

pub(crate) fn maximal_under_refinement(all: &[Partition]) -> Vec<Partition> {
    let finest: Vec<Partition> = all
        .iter()
        .filter(|p| {
            !all.iter()
                .any(|q| q != *p && q.refines(p).expect("same ground"))
        })
        .cloned()
        .collect();
    let nontrivial: Vec<Partition> = finest.iter().filter(|p| !p.is_trivial()).cloned().collect();
    if nontrivial.is_empty() {
        finest
    } else {
        nontrivial
    }
}

/// True iff `word` drives every initial state to the same final state.
pub fn is_information_destroying(a: &MealyAutomaton, word: &[usize]) -> Result<bool> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let first = a.final_state(0, word)?;
    for s in 1..a.num_states() {
        if a.final_state(s, word)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairs of nonempty words (length ≤ `max_len`) that are complementary.
///
/// Two words are complementary here when both induce nontrivial partitions,
/// the partitions differ, and both words destroy the state information
/// (drive the automaton into a state independent of the initial one).
/// This is the weakest reading; callers wanting mutual non-refinement can
/// filter the result with [`Partition::refines`].
///
/// Pairs come in word order (length first, then lexicographic), first word
/// before second.
pub fn complementary_pairs(a: &MealyAutomaton, max_len: usize) -> Result<Vec<(Word, Word)>> {
    let count: u128 = (1..=max_len as u32)
        .map(|l| (a.num_inputs() as u128).saturating_pow(l))
        .fold(0u128, |acc, x| acc.saturating_add(x));
    if count > MAX_WORDS {
        return Err(Error::SearchTooLarge { size: count, limit: MAX_WORDS });
    }
    let candidates: Vec<(Word, Partition)> = words_up_to(a.num_inputs(), max_len)
        .skip(1)
        .map(|w| {
            let p = partition_for_word(a, &w)?;
            let destroys = is_information_destroying(a, &w)?;
            Ok((w, p, destroys))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, p, destroys)| *destroys && !p.is_trivial())
        .map(|(w, p, _)| (w, p))
        .collect();
    let mut pairs = Vec::new();
    for (i, (w1, p1)) in candidates.iter().enumerate() {
        for (w2, p2) in &candidates[i + 1..] {
            if p1 != p2 {
                pairs.push((w1.clone(), w2.clone()));
            }
        }
    }
    Ok(pairs)
}
