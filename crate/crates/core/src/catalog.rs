//! Canonical worked examples.

use crate::automaton::{one_based_labels, AutomatonTables, MealyAutomaton};
use crate::logic::{paste, PartitionLogic};
use crate::nits::CompleteNitSet;
use crate::partition::Partition;
use crate::urn::UrnModel;

pub const NAMES: [&str; 5] = ["mo3", "triangle", "swap-reversible", "urn-fig1", "two-trit-first"];

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Three states, three inputs, outputs `{0, 1}`; `δ ≡ 1` and
/// `λ(s, i) = 1` iff `s = i`. Its logic is the "chinese lantern" MO₃.
pub fn mo3() -> MealyAutomaton {
    MealyAutomaton::validate(AutomatonTables {
        states: one_based_labels(3),
        inputs: one_based_labels(3),
        outputs: labels(&["0", "1"]),
        delta: vec![vec![0; 3]; 3],
        lambda: (0..3).map(|s| (0..3).map(|i| usize::from(s == i)).collect()).collect(),
    })
    .expect("mo3 tables are valid")
}

/// Four states, three inputs and outputs, `δ ≡ 1`; the triangle-shaped
/// Greechie logic.
pub fn triangle() -> MealyAutomaton {
    // rows: states 1..4, columns: inputs 1..3, entries: output labels 1..3
    let table = [[1, 3, 2], [3, 2, 1], [2, 1, 3], [3, 3, 3]];
    MealyAutomaton::validate(AutomatonTables {
        states: one_based_labels(4),
        inputs: one_based_labels(3),
        outputs: one_based_labels(3),
        delta: vec![vec![0; 3]; 4],
        lambda: table.iter().map(|row| row.iter().map(|o| o - 1).collect()).collect(),
    })
    .expect("triangle tables are valid")
}

/// `⟨{1,2}, {0,1}, {0,1}, δ(s,i) = s, λ(s,i) = (i+1) mod 2⟩`, the
/// permutation `(1,2)(3,4)`.
pub fn swap_reversible() -> MealyAutomaton {
    MealyAutomaton::validate(AutomatonTables {
        states: one_based_labels(2),
        inputs: labels(&["0", "1"]),
        outputs: labels(&["0", "1"]),
        delta: vec![vec![0, 0], vec![1, 1]],
        lambda: vec![vec![1, 0], vec![1, 0]],
    })
    .expect("swap tables are valid")
}

/// Three ball types; type `u` has a "0" in its own color and "1" in the others.
pub fn urn_fig1() -> UrnModel {
    UrnModel::new(
        one_based_labels(3),
        labels(&["red", "green", "blue"]),
        labels(&["0", "1"]),
        (0..3).map(|u| (0..3).map(|c| usize::from(u != c)).collect()).collect(),
    )
    .expect("urn tables are valid")
}

/// Lexicographically first complete two-trit set.
pub fn two_trit_first() -> CompleteNitSet {
    let p = |blocks: &[&[usize]]| Partition::from_one_based(9, blocks).expect("valid blocks");
    CompleteNitSet::new(
        vec![p(&[&[1, 2, 3], &[4, 6, 8], &[5, 7, 9]]), p(&[&[1, 4, 5], &[2, 6, 7], &[3, 8, 9]])],
        3,
        2,
    )
    .expect("complete set")
}

pub fn mo3_logic() -> PartitionLogic {
    let p = |blocks: &[&[usize]]| Partition::from_one_based(3, blocks).expect("valid blocks");
    paste(3, &[p(&[&[1], &[2, 3]]), p(&[&[2], &[1, 3]]), p(&[&[3], &[1, 2]])]).expect("same ground")
}

pub fn triangle_logic() -> PartitionLogic {
    let p = |blocks: &[&[usize]]| Partition::from_one_based(4, blocks).expect("valid blocks");
    paste(
        4,
        &[p(&[&[1], &[2], &[3, 4]]), p(&[&[1], &[2, 4], &[3]]), p(&[&[1, 4], &[2], &[3]])],
    )
    .expect("same ground")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_table_matches_listing() {
        let a = triangle();
        let out = |s: usize, i: usize| a.output_labels()[a.step(s - 1, i - 1).unwrap().1].clone();
        for (s, i) in [(1, 1), (3, 2), (2, 3)] {
            assert_eq!(out(s, i), "1");
        }
        for (s, i) in [(3, 1), (2, 2), (1, 3)] {
            assert_eq!(out(s, i), "2");
        }
        for (s, i) in [(2, 1), (4, 1), (1, 2), (4, 2), (3, 3), (4, 3)] {
            assert_eq!(out(s, i), "3");
        }
    }

    #[test]
    fn first_two_trit_line() {
        assert_eq!(
            two_trit_first().to_string(),
            "{{1, 2, 3}, {1, 4, 5}, {2, 6, 7}, {3, 8, 9}, {4, 6, 8}, {5, 7, 9}}"
        );
    }
}
