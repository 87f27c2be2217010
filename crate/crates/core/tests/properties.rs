//! Randomized invariants over automata, logics and permutations.

mod common;

use std::collections::BTreeSet;

use automaton_logic::automaton::words_up_to;
use automaton_logic::counterfactual::{format_transcript, CounterfactualAutomaton};
use automaton_logic::error::{Diagnostic, Error};
use automaton_logic::experiments::{
    experimental_partitions, finest_partitions, fixpoint_depth, is_information_destroying, partition_for_word, Depth,
};
use automaton_logic::logic::{
    automaton_from_logic, horizontal_sum, paste, point_induced_states, two_valued_states,
};
use automaton_logic::reversible::{
    automaton_from_permutation, cycle_form, evolve, inverse, is_reversible, permutation, permutation_matrix,
    Configuration, Permutation,
};
use automaton_logic::urn::{automaton_from_urn, roundtrip_check};
use automaton_logic::{AutomatonTables, MealyAutomaton, Partition};
use common::*;
use proptest::prelude::*;

fn permutation_strategy(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// Reversible automaton from a random permutation of a random S×I.
fn reversible_strategy() -> impl Strategy<Value = MealyAutomaton> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(s, i)| {
        Just((0..s * i).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |img| automaton_from_permutation(&Permutation::new(img).unwrap(), s, i).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn run_is_deterministic_and_prefix_consistent(
        a in automaton_strategy(5, 3, 3),
        w1 in prop::collection::vec(0usize..3, 0..4),
        w2 in prop::collection::vec(0usize..3, 0..4),
    ) {
        let w1: Vec<usize> = w1.into_iter().filter(|&i| i < a.num_inputs()).collect();
        let w2: Vec<usize> = w2.into_iter().filter(|&i| i < a.num_inputs()).collect();
        for s in 0..a.num_states() {
            let whole: Vec<usize> = w1.iter().chain(&w2).copied().collect();
            prop_assert_eq!(a.run(s, &whole).unwrap(), a.run(s, &whole).unwrap());
            let (mut out, mid) = a.run_with_final(s, &w1).unwrap();
            out.extend(a.run(mid, &w2).unwrap());
            prop_assert_eq!(a.run(s, &whole).unwrap(), out);
        }
    }

    #[test]
    fn validate_rejects_corruption(a in automaton_strategy(4, 3, 3), which in 0usize..4, row in 0usize..4, col in 0usize..3) {
        let mut t = a.to_tables();
        let (row, col) = (row % a.num_states(), col % a.num_inputs());
        let expected = match which {
            0 => { t.delta[row][col] = a.num_states(); Diagnostic::TransitionOutOfRange { state: row, input: col, target: a.num_states() } }
            1 => { t.lambda[row][col] = a.num_outputs() + 2; Diagnostic::OutputOutOfRange { state: row, input: col, output: a.num_outputs() + 2 } }
            2 => { t.delta[row].truncate(col); Diagnostic::MissingEntry { table: automaton_logic::error::Table::Delta, state: row, input: col } }
            _ => { t.lambda[row].truncate(col); Diagnostic::MissingEntry { table: automaton_logic::error::Table::Lambda, state: row, input: col } }
        };
        let err = MealyAutomaton::validate(t).unwrap_err();
        let Error::InvalidAutomaton(diags) = err else { panic!("wrong error") };
        prop_assert!(diags.contains(&expected), "{:?} not in {:?}", expected, diags);
        prop_assert_eq!(MealyAutomaton::validate(a.to_tables()).unwrap(), a);
    }

    #[test]
    fn refinement_is_monotone(a in automaton_strategy(5, 3, 3)) {
        for w in words_up_to(a.num_inputs(), 3) {
            let p = partition_for_word(&a, &w).unwrap();
            for x in 0..a.num_inputs() {
                let mut longer = w.clone();
                longer.push(x);
                prop_assert!(partition_for_word(&a, &longer).unwrap().refines(&p).unwrap());
            }
        }
    }

    #[test]
    fn partitions_are_canonical(a in automaton_strategy(5, 3, 3)) {
        for p in experimental_partitions(&a, Depth::Unbounded) {
            let blocks = p.blocks();
            prop_assert!(blocks.iter().all(|b| b.windows(2).all(|w| w[0] < w[1])));
            prop_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
            prop_assert_eq!(Partition::new(p.ground(), blocks.to_vec()).unwrap(), p.clone());
        }
    }

    #[test]
    fn bounded_search_reaches_the_closure(a in automaton_strategy(5, 3, 3)) {
        let depth = fixpoint_depth(&a);
        let closure = experimental_partitions(&a, Depth::Unbounded);
        prop_assert_eq!(&experimental_partitions(&a, depth), &closure);
        prop_assert_eq!(&experimental_partitions(&a, depth + 3), &closure);
        // brute-force over explicit words agrees with the configuration search
        let brute: BTreeSet<_> = words_up_to(a.num_inputs(), depth.min(6))
            .map(|w| partition_for_word(&a, &w).unwrap())
            .collect();
        if depth <= 6 {
            prop_assert_eq!(brute.into_iter().collect::<Vec<_>>(), closure);
        }
    }

    #[test]
    fn logic_roundtrip_preserves_finest(a in automaton_strategy(5, 3, 3)) {
        let finest = finest_partitions(&a, Depth::Unbounded);
        let logic = paste(a.num_states(), &finest).unwrap();
        let back = automaton_from_logic(&logic).unwrap();
        prop_assert_eq!(finest_partitions(&back, Depth::Unbounded), finest);
    }

    #[test]
    fn point_states_are_two_valued(parts in prop::collection::vec(partition_strategy(5, 4), 1..4)) {
        let logic = paste(5, &parts).unwrap();
        let all = two_valued_states(&logic).unwrap();
        for s in point_induced_states(&logic).unwrap() {
            prop_assert!(all.contains(&s));
            for (c, p) in logic.contexts().iter().enumerate() {
                prop_assert_eq!((0..p.num_blocks()).map(|b| s.value(c, b) as usize).sum::<usize>(), 1);
            }
        }
    }

    #[test]
    fn horizontal_sum_count_formula(parts in prop::collection::vec(partition_strategy(6, 5), 1..6)) {
        let l = horizontal_sum(6, &parts).unwrap();
        let formula: u128 = parts.iter().map(|p| (1u128 << p.num_blocks()) - 2).sum::<u128>() + 2;
        prop_assert_eq!(l.element_count().unwrap(), formula);
        prop_assert_eq!(l.elements().unwrap().len() as u128, formula);
    }

    #[test]
    fn paste_is_idempotent(parts in prop::collection::vec(partition_strategy(5, 4), 1..5)) {
        let once = paste(5, &parts).unwrap();
        let twice = paste(5, once.contexts()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn urn_roundtrip(a in automaton_strategy(6, 6, 6)) {
        let r = roundtrip_check(&a).unwrap();
        prop_assert!(r.holds());
        let (urn, _) = automaton_logic::urn::urn_from_automaton(&a).unwrap();
        for s in 0..a.num_states() {
            for i in 0..a.num_inputs() {
                prop_assert_eq!(urn.lookup(s, i).unwrap(), a.lambda_table()[s][i]);
            }
        }
        let (b, _) = automaton_from_urn(&urn).unwrap();
        for i in 0..b.num_inputs() {
            prop_assert!(is_information_destroying(&b, &[i]).unwrap());
        }
    }

    #[test]
    fn permutation_roundtrips(img in permutation_strategy(12)) {
        let n = img.len();
        let p = Permutation::new(img).unwrap();
        let inputs = (1..=n).rev().find(|d| n % d == 0 && *d <= 4).unwrap();
        let a = automaton_from_permutation(&p, n / inputs, inputs).unwrap();
        let cycles = cycle_form(&a).unwrap();
        prop_assert_eq!(Permutation::from_cycles(n, &cycles).unwrap(), p.clone());
        prop_assert_eq!(permutation(&a).unwrap(), p);
        for c in &cycles {
            prop_assert_eq!(c[0], *c.iter().min().unwrap());
        }
        prop_assert!(cycles.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn permutation_matrix_is_doubly_stochastic(a in reversible_strategy()) {
        let m = permutation_matrix(&a).unwrap();
        let n = m.len();
        for r in 0..n {
            prop_assert_eq!(m[r].iter().map(|&x| x as usize).sum::<usize>(), 1);
            prop_assert_eq!((0..n).map(|c| m[c][r] as usize).sum::<usize>(), 1);
        }
        let inv = permutation_matrix(&inverse(&a).unwrap()).unwrap();
        for r in 0..n {
            for c in 0..n {
                prop_assert_eq!(inv[r][c], m[c][r]);
            }
        }
    }

    #[test]
    fn evolution_is_undone_by_inverse(a in reversible_strategy()) {
        let n = a.num_states() * a.num_inputs();
        let inv = inverse(&a).unwrap();
        let order = permutation(&a).unwrap().order();
        let m = permutation_matrix(&a).unwrap();
        for j in 0..n {
            let psi = Configuration::new(n, j).unwrap();
            for t in 0..=2 * n {
                let there = evolve(&a, psi, t).unwrap();
                prop_assert_eq!(evolve(&inv, there, t).unwrap(), psi);
            }
            prop_assert_eq!(evolve(&a, psi, order).unwrap(), psi);
            // one step agrees with the matrix product
            let v = psi.to_vector();
            let product: Vec<u8> = (0..n).map(|r| (0..n).map(|c| m[r][c] * v[c]).sum()).collect();
            prop_assert_eq!(evolve(&a, psi, 1).unwrap().to_vector(), product);
        }
    }

    #[test]
    fn reversible_evolution_destroys_no_configuration(a in reversible_strategy()) {
        let n = a.num_states() * a.num_inputs();
        let p = permutation(&a).unwrap();
        let mut image: BTreeSet<usize> = (0..n).collect();
        for _ in 0..n {
            image = image.iter().map(|&x| p.apply(x)).collect();
            prop_assert_eq!(image.len(), n);
        }
    }

    #[test]
    fn counterfactual_invariants(seed in any::<u64>(), ops in prop::collection::vec(1usize..=3, 1..60)) {
        let mut a = CounterfactualAutomaton::new(3, 3, seed).unwrap();
        let mut s = a.prepare(1, 2).unwrap();
        for &m in &ops {
            let (o, next) = a.measure(s, m).unwrap();
            prop_assert_eq!(next.mode, m);
            prop_assert_eq!(next.value, o);
            prop_assert_eq!(a.measure(next, m).unwrap(), (o, next));
            s = next;
        }
        let mut b = CounterfactualAutomaton::new(3, 3, seed).unwrap();
        let mut s = b.prepare(1, 2).unwrap();
        for &m in &ops {
            let next = b.measure(s, m).unwrap().1;
            b.measure(next, m).unwrap();
            s = next;
        }
        prop_assert_eq!(format_transcript(a.transcript()), format_transcript(b.transcript()));
    }
}

/// Words of length `|S| - 1` do not realise every single-word partition.
#[test]
fn depth_s_minus_one_is_not_enough() {
    let a = MealyAutomaton::validate(AutomatonTables {
        states: vec!["1".into(), "2".into(), "3".into()],
        inputs: vec!["a".into(), "b".into()],
        outputs: vec!["0".into(), "1".into()],
        delta: vec![vec![0, 1], vec![0, 2], vec![0, 0]],
        lambda: vec![vec![0, 1], vec![1, 1], vec![1, 1]],
    })
    .unwrap();
    let short = experimental_partitions(&a, a.num_states() - 1);
    let long = experimental_partitions(&a, a.num_states() + 2);
    assert_ne!(short, long);
    assert_eq!(long, experimental_partitions(&a, Depth::Unbounded));
    assert!(fixpoint_depth(&a) > a.num_states() - 1);
}

/// Reversibility of the combined map does not make δ injective.
#[test]
fn reversible_automaton_may_collapse_states() {
    // (1,0)->(1,0), (1,1)->(2,0), (2,0)->(1,1), (2,1)->(2,1)
    let p = Permutation::new(vec![0, 2, 1, 3]).unwrap();
    let a = automaton_from_permutation(&p, 2, 2).unwrap();
    assert!(is_reversible(&a).unwrap());
    assert!(is_information_destroying(&a, &[0]).unwrap());
}

/// Measuring a different mode reveals nothing about the prepared value.
#[test]
fn mismatched_output_is_independent_of_preparation() {
    const N: usize = 3;
    let mut joint = [[0f64; N]; N];
    let mut total = 0f64;
    for seed in 0..3000u64 {
        let mut a = CounterfactualAutomaton::new(N, 2, seed).unwrap();
        let value = (seed % N as u64) as usize + 1;
        let s = a.prepare(1, value).unwrap();
        assert_eq!(a.measure(s, 1).unwrap().0, value);
        for _ in 0..4 {
            let (o, _) = a.measure(s, 2).unwrap();
            joint[value - 1][o - 1] += 1.0;
            total += 1.0;
        }
    }
    let px: Vec<f64> = (0..N).map(|x| joint[x].iter().sum::<f64>() / total).collect();
    let py: Vec<f64> = (0..N).map(|y| (0..N).map(|x| joint[x][y]).sum::<f64>() / total).collect();
    let mut mi = 0.0;
    for x in 0..N {
        for y in 0..N {
            let pxy = joint[x][y] / total;
            if pxy > 0.0 {
                mi += pxy * (pxy / (px[x] * py[y])).log2();
            }
        }
    }
    // plug-in bias is about (N-1)²/(2·samples·ln 2) ≈ 2.4e-4 bits
    assert!(mi < 5e-3, "mutual information {mi} bits");
}
