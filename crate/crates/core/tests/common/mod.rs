#![allow(dead_code)]

use std::collections::BTreeSet;

use automaton_logic::{MealyAutomaton, Partition, PartitionLogic};
use proptest::prelude::*;

pub fn automaton_strategy(max_states: usize, max_inputs: usize, max_outputs: usize) -> impl Strategy<Value = MealyAutomaton> {
    (1..=max_states, 1..=max_inputs, 1..=max_outputs).prop_flat_map(|(s, i, o)| {
        (
            prop::collection::vec(prop::collection::vec(0..s, i), s),
            prop::collection::vec(prop::collection::vec(0..o, i), s),
        )
            .prop_map(move |(delta, lambda)| {
                MealyAutomaton::from_fn(s, i, o, |a, b| delta[a][b], |a, b| lambda[a][b]).unwrap()
            })
    })
}

/// Random partition of `0..ground` from a block-id per element.
pub fn partition_strategy(ground: usize, max_blocks: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..max_blocks, ground).prop_map(move |ids| Partition::from_key(ground, |x| ids[x]))
}

/// Brute-force word partition: group states by their simulated output sequence.
pub fn brute_partition(a: &MealyAutomaton, word: &[usize]) -> BTreeSet<BTreeSet<usize>> {
    let mut groups: std::collections::BTreeMap<Vec<usize>, BTreeSet<usize>> = Default::default();
    for s in 0..a.num_states() {
        let mut cur = s;
        let mut out = Vec::new();
        for &i in word {
            out.push(a.lambda_table()[cur][i]);
            cur = a.delta_table()[cur][i];
        }
        groups.entry(out).or_default().insert(s);
    }
    groups.into_values().collect()
}

pub fn as_sets(p: &Partition) -> BTreeSet<BTreeSet<usize>> {
    p.blocks().iter().map(|b| b.iter().copied().collect()).collect()
}

/// Independent two-valued-state oracle: try every block choice, and for
/// each pair of contexts compare the values of every subset that is an
/// element of both.
pub fn brute_two_valued(logic: &PartitionLogic) -> Vec<Vec<usize>> {
    let contexts = logic.contexts();
    let n = logic.ground();
    let unions = |p: &Partition| -> Vec<u64> {
        (0u64..1 << p.num_blocks())
            .map(|m| {
                (0..p.num_blocks())
                    .filter(|b| m >> b & 1 == 1)
                    .flat_map(|b| p.blocks()[b].iter())
                    .fold(0u64, |acc, &x| acc | 1 << x)
            })
            .collect()
    };
    let elems: Vec<Vec<u64>> = contexts.iter().map(unions).collect();
    let block_masks: Vec<Vec<u64>> = contexts
        .iter()
        .map(|p| p.blocks().iter().map(|b| b.iter().fold(0u64, |a, &x| a | 1 << x)).collect())
        .collect();
    let _ = n;
    let sizes: Vec<usize> = contexts.iter().map(|p| p.num_blocks()).collect();
    let mut out = Vec::new();
    let total: usize = sizes.iter().product();
    for mut code in 0..total {
        let mut choice = vec![0; sizes.len()];
        for c in (0..sizes.len()).rev() {
            choice[c] = code % sizes[c];
            code /= sizes[c];
        }
        let value = |c: usize, e: u64| block_masks[c][choice[c]] & !e == 0;
        let ok = (0..sizes.len()).all(|c| {
            (0..sizes.len()).all(|d| {
                elems[c].iter().all(|&e| !elems[d].contains(&e) || value(c, e) == value(d, e))
            })
        });
        if ok {
            out.push(choice);
        }
    }
    out
}
