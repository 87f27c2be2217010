//! Partition logics: contexts (partitions of one ground set) glued together.
//!
//! Two gluing disciplines are supported. [`Mode::SetIdentified`] pastes the
//! Boolean algebras by identifying every element that is the same subset of
//! the ground set. [`Mode::ContextTagged`] is the horizontal sum: only the
//! empty set and the ground set are shared, everything else stays tagged by
//! its context.
//!
//! Elements are extensional (sorted subsets of the ground set). The order is
//! the one pasting generates: `x ≤ y` when some context contains both and
//! `x ⊆ y`, closed under transitivity.

use std::collections::{BTreeMap, BTreeSet};

use crate::automaton::{one_based_labels, AutomatonTables, MealyAutomaton};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Product of per-context block counts above which two-valued-state
/// search refuses to run.
pub const STATE_SEARCH_LIMIT: u128 = 10_000_000;

/// Element count above which element and Hasse enumeration refuse to run.
pub const ELEMENT_LIMIT: u128 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    SetIdentified,
    ContextTagged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionLogic {
    labels: Vec<String>,
    contexts: Vec<Partition>,
    mode: Mode,
}

/// An atom together with every `(context, block)` it occurs as.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub set: Vec<usize>,
    pub occurrences: Vec<(usize, usize)>,
}

/// A logic element. `context` is `None` for elements shared by all contexts
/// (always the case in set-identified logics).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub set: Vec<usize>,
    pub context: Option<usize>,
}

/// Elements and covering pairs `(lower, upper)` of the logic's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hasse {
    pub elements: Vec<Element>,
    pub covers: Vec<(usize, usize)>,
}

fn check_ground(ground: usize, parts: &[Partition]) -> Result<()> {
    if ground == 0 {
        return Err(Error::InvalidPartition("empty ground set".into()));
    }
    match parts.iter().find(|p| p.ground() != ground) {
        Some(p) => Err(Error::GroundMismatch(ground, p.ground())),
        None => Ok(()),
    }
}

/// Pastes the Boolean algebras of `partitions` by identifying equal subsets.
/// Repeated partitions collapse into one context.
pub fn paste(ground: usize, partitions: &[Partition]) -> Result<PartitionLogic> {
    check_ground(ground, partitions)?;
    let mut contexts: Vec<Partition> = Vec::new();
    for p in partitions {
        if !contexts.contains(p) {
            contexts.push(p.clone());
        }
    }
    Ok(PartitionLogic { labels: one_based_labels(ground), contexts, mode: Mode::SetIdentified })
}

/// Horizontal sum: contexts share only `∅` and the ground set.
pub fn horizontal_sum(ground: usize, contexts: &[Partition]) -> Result<PartitionLogic> {
    check_ground(ground, contexts)?;
    Ok(PartitionLogic {
        labels: one_based_labels(ground),
        contexts: contexts.to_vec(),
        mode: Mode::ContextTagged,
    })
}

/// Whether `set` (sorted) is a union of blocks of `p`.
fn is_union_of_blocks(p: &Partition, set: &[usize]) -> bool {
    p.blocks().iter().all(|b| {
        let inside = b.iter().filter(|x| set.binary_search(x).is_ok()).count();
        inside == 0 || inside == b.len()
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn unions(p: &Partition) -> impl Iterator<Item = Vec<usize>> + '_ {
    let n = p.num_blocks();
    (0u64..1 << n).map(move |mask| {
        let mut set: Vec<usize> = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .flat_map(|b| p.blocks()[b].iter().copied())
            .collect();
        set.sort_unstable();
        set
    })
}

impl PartitionLogic {
    /// Builds a logic from already-validated parts; checks the invariants.
    pub fn new(labels: Vec<String>, contexts: Vec<Partition>, mode: Mode) -> Result<Self> {
        check_ground(labels.len(), &contexts)?;
        if mode == Mode::SetIdentified {
            for (i, c) in contexts.iter().enumerate() {
                if let Some(j) = contexts[..i].iter().position(|d| d == c) {
                    return Err(Error::DuplicateContext(j, i));
                }
            }
        }
        Ok(PartitionLogic { labels, contexts, mode })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::GroundMismatch(self.labels.len(), labels.len()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn ground(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contexts(&self) -> &[Partition] {
        &self.contexts
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Atoms in order of first appearance (context order, then block order).
    pub fn atoms(&self) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = Vec::new();
        for (c, p) in self.contexts.iter().enumerate() {
            for (b, block) in p.blocks().iter().enumerate() {
                let existing = match self.mode {
                    Mode::SetIdentified => atoms.iter_mut().find(|a| a.set == *block),
                    Mode::ContextTagged => None,
                };
                match existing {
                    Some(a) => a.occurrences.push((c, b)),
                    None => atoms.push(Atom { set: block.clone(), occurrences: vec![(c, b)] }),
                }
            }
        }
        atoms
    }

    /// Number of elements, without enumerating them for horizontal sums.
    pub fn element_count(&self) -> Result<u128> {
        match self.mode {
            Mode::ContextTagged => {
                let mut total: u128 = 2;
                for p in &self.contexts {
                    let per = 1u128
                        .checked_shl(p.num_blocks() as u32)
                        .filter(|_| p.num_blocks() < 128)
                        .ok_or(Error::SearchTooLarge { size: u128::MAX, limit: u128::MAX })?;
                    total = total
                        .checked_add(per - 2)
                        .ok_or(Error::SearchTooLarge { size: u128::MAX, limit: u128::MAX })?;
                }
                // a context with a single block contributes nothing and the
                // formula's "+2" already counts ∅ and ground
                Ok(total)
            }
            Mode::SetIdentified => Ok(self.elements()?.len() as u128),
        }
    }

    fn check_element_budget(&self) -> Result<()> {
        let bound: u128 = self
            .contexts
            .iter()
            .map(|p| 1u128.checked_shl(p.num_blocks() as u32).unwrap_or(u128::MAX))
            .fold(0u128, |a, b| a.saturating_add(b));
        if bound > ELEMENT_LIMIT {
            return Err(Error::SearchTooLarge { size: bound, limit: ELEMENT_LIMIT });
        }
        Ok(())
    }

    /// All elements, sorted by size, then set, then context.
    pub fn elements(&self) -> Result<Vec<Element>> {
        self.check_element_budget()?;
        let full: Vec<usize> = (0..self.ground()).collect();
        let mut out: BTreeSet<(usize, Element)> = BTreeSet::new();
        for (c, p) in self.contexts.iter().enumerate() {
            for set in unions(p) {
                let shared = self.mode == Mode::SetIdentified || set.is_empty() || set == full;
                let context = if shared { None } else { Some(c) };
                out.insert((set.len(), Element { set, context }));
            }
        }
        Ok(out.into_iter().map(|(_, e)| e).collect())
    }

    fn contexts_of(&self, e: &Element) -> Vec<usize> {
        match e.context {
            Some(c) => vec![c],
            None => (0..self.contexts.len())
                .filter(|&c| is_union_of_blocks(&self.contexts[c], &e.set))
                .collect(),
        }
    }

    /// Elements with the covering relation of the generated order.
    pub fn hasse(&self) -> Result<Hasse> {
        let elements = self.elements()?;
        let n = elements.len();
        let homes: Vec<Vec<usize>> = elements.iter().map(|e| self.contexts_of(e)).collect();
        let mut below = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && homes[x].iter().any(|c| homes[y].contains(c))
                    && is_subset(&elements[x].set, &elements[y].set)
                {
                    below[x][y] = true;
                }
            }
        }
        for k in 0..n {
            for x in 0..n {
                if below[x][k] {
                    for y in 0..n {
                        if below[k][y] {
                            below[x][y] = true;
                        }
                    }
                }
            }
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if below[x][y] && !(0..n).any(|z| below[x][z] && below[z][y]) {
                    covers.push((x, y));
                }
            }
        }
        Ok(Hasse { elements, covers })
    }

    /// `[c][d][b]`: join-block of block `b` of context `c` in `join(c, d)`.
    fn join_tables(&self) -> Vec<Vec<Vec<usize>>> {
        let k = self.contexts.len();
        let mut tables = vec![vec![Vec::new(); k]; k];
        for c in 0..k {
            for d in 0..k {
                if c == d {
                    continue;
                }
                let join = self.contexts[c].join(&self.contexts[d]).expect("same ground");
                let idx = join.block_indices();
                tables[c][d] = self.contexts[c].blocks().iter().map(|b| idx[b[0]]).collect();
            }
        }
        tables
    }

    /// Renders an element as `{1, 2}`; context-tagged elements get a `@c` suffix (1-based).
    pub fn render_element(&self, e: &Element) -> String {
        let body: Vec<&str> = e.set.iter().map(|&x| self.labels[x].as_str()).collect();
        let set = if body.is_empty() { "∅".to_string() } else { format!("{{{}}}", body.join(", ")) };
        match e.context {
            Some(c) => format!("{set}@{}", c + 1),
            None => set,
        }
    }
}

/// A `{0,1}` assignment choosing exactly one block (the one valued 1) per context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoValuedState {
    choice: Vec<usize>,
}

impl TwoValuedState {
    pub fn from_choice(choice: Vec<usize>) -> Self {
        TwoValuedState { choice }
    }

    /// Index of the block valued 1, per context.
    pub fn choice(&self) -> &[usize] {
        &self.choice
    }

    pub fn value(&self, context: usize, block: usize) -> u8 {
        u8::from(self.choice[context] == block)
    }

    /// Value of an element that is a union of blocks of `context`.
    pub fn value_of_set(&self, logic: &PartitionLogic, context: usize, set: &[usize]) -> u8 {
        let chosen = &logic.contexts()[context].blocks()[self.choice[context]];
        u8::from(is_subset(chosen, set))
    }

    pub fn value_of_atom(&self, atom: &Atom) -> u8 {
        let (c, b) = atom.occurrences[0];
        self.value(c, b)
    }

    /// Full assignment `(context, block) → {0,1}`.
    pub fn assignment(&self, logic: &PartitionLogic) -> BTreeMap<(usize, usize), u8> {
        logic
            .contexts()
            .iter()
            .enumerate()
            .flat_map(|(c, p)| (0..p.num_blocks()).map(move |b| ((c, b), self.value(c, b))))
            .collect()
    }
}

/// All two-valued states in lexicographic order of their block choices.
pub fn two_valued_states(logic: &PartitionLogic) -> Result<Vec<TwoValuedState>> {
    let sizes: Vec<usize> = logic.contexts().iter().map(Partition::num_blocks).collect();
    let space = sizes
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
        .unwrap_or(u128::MAX);
    if space > STATE_SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size: space, limit: STATE_SEARCH_LIMIT });
    }
    let joins = match logic.mode() {
        Mode::SetIdentified => Some(logic.join_tables()),
        Mode::ContextTagged => None,
    };
    let mut out = Vec::new();
    let mut choice = Vec::with_capacity(sizes.len());
    fn search(
        sizes: &[usize],
        joins: &Option<Vec<Vec<Vec<usize>>>>,
        choice: &mut Vec<usize>,
        out: &mut Vec<TwoValuedState>,
    ) {
        let c = choice.len();
        if c == sizes.len() {
            out.push(TwoValuedState { choice: choice.clone() });
            return;
        }
        for b in 0..sizes[c] {
            let consistent = match joins {
                None => true,
                Some(j) => choice.iter().enumerate().all(|(d, &bd)| j[c][d][b] == j[d][c][bd]),
            };
            if consistent {
                choice.push(b);
                search(sizes, joins, choice, out);
                choice.pop();
            }
        }
    }
    search(&sizes, &joins, &mut choice, &mut out);
    Ok(out)
}

/// The states induced by single ground elements: a block is 1 iff it
/// contains the element. Duplicates are merged, ground order kept.
pub fn point_induced_states(logic: &PartitionLogic) -> Result<Vec<TwoValuedState>> {
    if logic.mode() != Mode::SetIdentified {
        return Err(Error::ModeMismatch);
    }
    let indices: Vec<Vec<usize>> = logic.contexts().iter().map(Partition::block_indices).collect();
    let mut out: Vec<TwoValuedState> = Vec::new();
    for x in 0..logic.ground() {
        let state = TwoValuedState { choice: indices.iter().map(|idx| idx[x]).collect() };
        if !out.contains(&state) {
            out.push(state);
        }
    }
    Ok(out)
}

/// True iff every pair of distinct atoms is told apart by some state.
pub fn is_separating(logic: &PartitionLogic, states: &[TwoValuedState]) -> bool {
    let atoms = logic.atoms();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            if !states.iter().any(|s| s.value_of_atom(a) != s.value_of_atom(b)) {
                return false;
            }
        }
    }
    true
}

/// One input per context, one output per block of the largest context,
/// output = index of the block containing the state, and a transition
/// function collapsing everything onto the first ground element.
pub fn automaton_from_logic(logic: &PartitionLogic) -> Result<MealyAutomaton> {
    if logic.mode() != Mode::SetIdentified {
        return Err(Error::ModeMismatch);
    }
    if logic.contexts().is_empty() {
        return Err(Error::NoContexts);
    }
    let indices: Vec<Vec<usize>> = logic.contexts().iter().map(Partition::block_indices).collect();
    let outputs = logic.contexts().iter().map(Partition::num_blocks).max().unwrap_or(1);
    MealyAutomaton::validate(AutomatonTables {
        states: logic.labels().to_vec(),
        inputs: one_based_labels(logic.contexts().len()),
        outputs: one_based_labels(outputs),
        delta: vec![vec![0; indices.len()]; logic.ground()],
        lambda: (0..logic.ground()).map(|s| indices.iter().map(|idx| idx[s]).collect()).collect(),
    })
}
