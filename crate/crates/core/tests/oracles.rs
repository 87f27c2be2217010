//! Expected values computed by brute force, independent of the library's
//! search strategies.

mod common;

use std::collections::{BTreeSet, HashSet};

use automaton_logic::automaton::words_up_to;
use automaton_logic::experiments::{complementary_pairs, partition_for_word};
use automaton_logic::logic::{paste, two_valued_states, horizontal_sum};
use automaton_logic::nits::{enumerate_complete_sets, CompleteNitSet};
use automaton_logic::{catalog, MealyAutomaton, Partition};
use common::*;
use proptest::prelude::*;

#[test]
fn mo3_and_triangle_states_match_oracle() {
    for logic in [catalog::mo3_logic(), catalog::triangle_logic()] {
        let fast: Vec<Vec<usize>> = two_valued_states(&logic).unwrap().iter().map(|s| s.choice().to_vec()).collect();
        assert_eq!(fast, brute_two_valued(&logic));
    }
    assert_eq!(brute_two_valued(&catalog::mo3_logic()).len(), 8);
    assert_eq!(brute_two_valued(&catalog::triangle_logic()).len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn two_valued_states_match_oracle(parts in prop::collection::vec(partition_strategy(5, 4), 1..4)) {
        let logic = paste(5, &parts).unwrap();
        let fast: Vec<Vec<usize>> = two_valued_states(&logic).unwrap().iter().map(|s| s.choice().to_vec()).collect();
        prop_assert_eq!(fast, brute_two_valued(&logic));
    }

    #[test]
    fn word_partitions_match_simulation(a in automaton_strategy(5, 3, 3), len in 0usize..4) {
        for w in words_up_to(a.num_inputs(), len) {
            prop_assert_eq!(as_sets(&partition_for_word(&a, &w).unwrap()), brute_partition(&a, &w));
        }
    }
}

fn brute_complementary(a: &MealyAutomaton, max_len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let words: Vec<Vec<usize>> = words_up_to(a.num_inputs(), max_len).filter(|w| !w.is_empty()).collect();
    let destroys = |w: &[usize]| {
        let finals: BTreeSet<usize> = (0..a.num_states())
            .map(|s| w.iter().fold(s, |cur, &i| a.delta_table()[cur][i]))
            .collect();
        finals.len() == 1
    };
    let mut out = Vec::new();
    for (x, w1) in words.iter().enumerate() {
        for w2 in &words[x + 1..] {
            let (p1, p2) = (brute_partition(a, w1), brute_partition(a, w2));
            if p1.len() > 1 && p2.len() > 1 && p1 != p2 && destroys(w1) && destroys(w2) {
                out.push((w1.clone(), w2.clone()));
            }
        }
    }
    out
}

#[test]
fn complementarity_matches_brute_force() {
    for a in [catalog::mo3(), catalog::triangle()] {
        for len in 1..=2 {
            assert_eq!(complementary_pairs(&a, len).unwrap(), brute_complementary(&a, len));
        }
    }
    assert_eq!(brute_complementary(&catalog::mo3(), 1).len(), 3);
    assert_eq!(brute_complementary(&catalog::triangle(), 1).len(), 3);
}

#[test]
fn mo3_hasse_covers_by_hand() {
    // 0 < each of 6 atoms < 1, nothing else: 12 covering pairs
    let h = catalog::mo3_logic().hasse().unwrap();
    let mut expected = BTreeSet::new();
    for atom in [vec![0], vec![1], vec![2], vec![1, 2], vec![0, 2], vec![0, 1]] {
        expected.insert((vec![], atom.clone()));
        expected.insert((atom, vec![0, 1, 2]));
    }
    let got: BTreeSet<_> = h.covers.iter().map(|&(a, b)| (h.elements[a].set.clone(), h.elements[b].set.clone())).collect();
    assert_eq!(got, expected);
}

#[test]
fn horizontal_sum_of_random_contexts_counts() {
    let contexts = vec![Partition::discrete(4), Partition::trivial(4), Partition::discrete(4)];
    let l = horizontal_sum(4, &contexts).unwrap();
    assert_eq!(l.elements().unwrap().len() as u128, l.element_count().unwrap());
    assert_eq!(l.element_count().unwrap(), 14 + 0 + 14 + 2);
}

/// Every partition of `0..n` in restricted-growth form, filtered by shape.
fn brute_nit_partitions(states: usize, blocks: usize) -> Vec<Vec<BTreeSet<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; states];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<BTreeSet<usize>>>) {
        if pos == rgs.len() {
            let mut parts = vec![BTreeSet::new(); max + 1];
            for (x, &b) in rgs.iter().enumerate() {
                parts[b].insert(x);
            }
            let size = rgs.len() / blocks;
            if parts.len() == blocks && parts.iter().all(|p| p.len() == size) {
                out.push(parts);
            }
            return;
        }
        for b in 0..=(max + 1).min(blocks - 1) {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), rgs, blocks, out);
        }
    }
    rgs[0] = 0;
    rec(1, 0, &mut rgs, blocks, &mut out);
    out
}

fn brute_complete(parts: &[&Vec<BTreeSet<usize>>], states: usize) -> bool {
    let mut cells: Vec<BTreeSet<usize>> = vec![(0..states).collect()];
    for p in parts {
        cells = cells.iter().flat_map(|c| p.iter().map(move |b| c & b)).collect();
    }
    let union: BTreeSet<usize> = cells.iter().flatten().copied().collect();
    cells.iter().all(|c| c.len() == 1) && union.len() == states
}

#[test]
fn base_two_pairs_match_brute_force() {
    let nits = brute_nit_partitions(4, 2);
    assert_eq!(nits.len(), 3);
    let mut count = 0;
    for i in 0..nits.len() {
        for j in i + 1..nits.len() {
            if brute_complete(&[&nits[i], &nits[j]], 4) {
                count += 1;
            }
        }
    }
    assert_eq!(count, 3);
    assert_eq!(enumerate_complete_sets(2, 2).unwrap().len(), count);
}

#[test]
fn base_two_triples_match_brute_force() {
    let nits = brute_nit_partitions(8, 2);
    assert_eq!(nits.len(), 35);
    let mut count = 0;
    for i in 0..nits.len() {
        for j in i + 1..nits.len() {
            for k in j + 1..nits.len() {
                if brute_complete(&[&nits[i], &nits[j], &nits[k]], 8) {
                    count += 1;
                }
            }
        }
    }
    // cube arrangements: 8! / (2^3 · 3!)
    assert_eq!(count, 840);
    assert_eq!(enumerate_complete_sets(2, 3).unwrap().len(), count);
}

#[test]
fn two_trit_sets_are_one_permutation_orbit() {
    let canonical = CompleteNitSet::new(
        vec![
            Partition::from_one_based(9, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap(),
            Partition::from_one_based(9, &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]]).unwrap(),
        ],
        3,
        2,
    )
    .unwrap();
    let mut orbit: HashSet<String> = HashSet::new();
    let mut image: Vec<usize> = (0..9).collect();
    // Heap's algorithm over all 9! relabellings of the product states
    let mut c = [0usize; 9];
    orbit.insert(canonical.permuted(&image).unwrap().to_string());
    let mut i = 0;
    while i < 9 {
        if c[i] < i {
            if i % 2 == 0 { image.swap(0, i) } else { image.swap(c[i], i) }
            orbit.insert(canonical.permuted(&image).unwrap().to_string());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let enumerated: HashSet<String> = enumerate_complete_sets(3, 2).unwrap().iter().map(ToString::to_string).collect();
    assert_eq!(orbit.len(), 5040);
    assert_eq!(orbit, enumerated);
}
