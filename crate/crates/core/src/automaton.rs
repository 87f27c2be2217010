//! Deterministic Mealy automata `⟨S, I, O, δ, λ⟩`.
//!
//! States, inputs and outputs are dense `0..len` indices; each carries a
//! display label. Both tables are stored row-per-state, column-per-input.

use std::collections::HashSet;

use crate::error::{Diagnostic, Error, Result, Table};

/// An input word. Symbols are dense input indices.
pub type Word = Vec<usize>;

/// Raw tables used to build an automaton. Nothing is checked until
/// [`MealyAutomaton::validate`] is called.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AutomatonTables {
    pub states: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub delta: Vec<Vec<usize>>,
    pub lambda: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyAutomaton {
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    delta: Vec<Vec<usize>>,
    lambda: Vec<Vec<usize>>,
}

/// Labels `"1"..="n"`, the convention used by all canonical examples.
pub fn one_based_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String], empty: Diagnostic, dup: fn(String) -> Diagnostic, out: &mut Vec<Diagnostic>) {
    if labels.is_empty() {
        out.push(empty);
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            out.push(dup(l.clone()));
        }
    }
}

fn check_table(
    table: Table,
    rows: &[Vec<usize>],
    n_states: usize,
    n_inputs: usize,
    bound: usize,
    out: &mut Vec<Diagnostic>,
) {
    for state in 0..n_states {
        let Some(row) = rows.get(state) else {
            out.push(Diagnostic::MissingRow { table, state });
            continue;
        };
        for input in 0..n_inputs {
            match row.get(input) {
                None => out.push(Diagnostic::MissingEntry { table, state, input }),
                Some(&v) if v >= bound => out.push(match table {
                    Table::Delta => Diagnostic::TransitionOutOfRange { state, input, target: v },
                    Table::Lambda => Diagnostic::OutputOutOfRange { state, input, output: v },
                }),
                Some(_) => {}
            }
        }
        if row.len() > n_inputs {
            out.push(Diagnostic::ExtraEntries { table, state });
        }
    }
    if rows.len() > n_states {
        out.push(Diagnostic::ExtraRows { table });
    }
}

impl MealyAutomaton {
    /// Builds an automaton, or returns every violated invariant.
    pub fn validate(tables: AutomatonTables) -> Result<Self> {
        let AutomatonTables { states, inputs, outputs, delta, lambda } = tables;
        let mut diags = Vec::new();
        check_labels(&states, Diagnostic::EmptyStates, Diagnostic::DuplicateState, &mut diags);
        check_labels(&inputs, Diagnostic::EmptyInputs, Diagnostic::DuplicateInput, &mut diags);
        check_labels(&outputs, Diagnostic::EmptyOutputs, Diagnostic::DuplicateOutput, &mut diags);
        check_table(Table::Delta, &delta, states.len(), inputs.len(), states.len(), &mut diags);
        check_table(Table::Lambda, &lambda, states.len(), inputs.len(), outputs.len(), &mut diags);
        if diags.is_empty() {
            Ok(MealyAutomaton { states, inputs, outputs, delta, lambda })
        } else {
            Err(Error::InvalidAutomaton(diags))
        }
    }

    /// Builds an automaton with 1-based numeric labels from closures.
    pub fn from_fn(
        n_states: usize,
        n_inputs: usize,
        n_outputs: usize,
        delta: impl Fn(usize, usize) -> usize,
        lambda: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        Self::validate(AutomatonTables {
            states: one_based_labels(n_states),
            inputs: one_based_labels(n_inputs),
            outputs: one_based_labels(n_outputs),
            delta: (0..n_states).map(|s| (0..n_inputs).map(|i| delta(s, i)).collect()).collect(),
            lambda: (0..n_states).map(|s| (0..n_inputs).map(|i| lambda(s, i)).collect()).collect(),
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn state_labels(&self) -> &[String] {
        &self.states
    }

    pub fn input_labels(&self) -> &[String] {
        &self.inputs
    }

    pub fn output_labels(&self) -> &[String] {
        &self.outputs
    }

    pub fn delta_table(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn lambda_table(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    pub fn to_tables(&self) -> AutomatonTables {
        AutomatonTables {
            states: self.states.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            delta: self.delta.clone(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|l| l == label)
    }

    pub fn input_index(&self, label: &str) -> Option<usize> {
        self.inputs.iter().position(|l| l == label)
    }

    pub fn output_index(&self, label: &str) -> Option<usize> {
        self.outputs.iter().position(|l| l == label)
    }

    fn check(&self, state: usize, input: usize) -> Result<()> {
        if state >= self.num_states() {
            return Err(Error::UnknownState(state));
        }
        if input >= self.num_inputs() {
            return Err(Error::UnknownInput(input));
        }
        Ok(())
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.num_inputs()) {
            Some(&i) => Err(Error::UnknownInput(i)),
            None => Ok(()),
        }
    }

    /// One transition: `(δ(s,i), λ(s,i))`.
    pub fn step(&self, state: usize, input: usize) -> Result<(usize, usize)> {
        self.check(state, input)?;
        Ok((self.delta[state][input], self.lambda[state][input]))
    }

    /// Output word produced from `state` on `word`.
    pub fn run(&self, state: usize, word: &[usize]) -> Result<Vec<usize>> {
        self.run_with_final(state, word).map(|(out, _)| out)
    }

    /// Output word and the state reached, `δ*(s, w)`.
    pub fn run_with_final(&self, state: usize, word: &[usize]) -> Result<(Vec<usize>, usize)> {
        if state >= self.num_states() {
            return Err(Error::UnknownState(state));
        }
        self.check_word(word)?;
        let mut current = state;
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            out.push(self.lambda[current][i]);
            current = self.delta[current][i];
        }
        Ok((out, current))
    }

    /// Iterated transition `δ*(s, w)`.
    pub fn final_state(&self, state: usize, word: &[usize]) -> Result<usize> {
        self.run_with_final(state, word).map(|(_, s)| s)
    }

    /// Same automaton with `δ` replaced by the constant map onto `target`.
    pub fn with_constant_delta(&self, target: usize) -> Result<Self> {
        let mut tables = self.to_tables();
        for row in &mut tables.delta {
            row.iter_mut().for_each(|t| *t = target);
        }
        Self::validate(tables)
    }
}

/// All words of length `0..=max_len`, shortest first, lexicographic within a length.
pub fn words_up_to(num_inputs: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_len(num_inputs, len))
}

/// All words of exactly `len` symbols in lexicographic order.
pub fn words_of_len(num_inputs: usize, len: usize) -> impl Iterator<Item = Word> {
    let mut next = if num_inputs == 0 && len > 0 {
        None
    } else {
        Some(vec![0; len])
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < num_inputs {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    })
}
