//! Complete sets of comeasurable nits.
//!
//! For `k` particles in base `n` the product states are `1..=n^k`. A nit is a
//! partition of them into `n` blocks of `n^(k-1)` states. `k` nits form a
//! complete set when choosing one block from each always intersects in
//! exactly one state and those intersections cover every state. Equivalently
//! the nits are the coordinate functions of a bijection onto `{1..n}^k`.
//!
//! Canonical form of a set: all `k·n` blocks, each ascending, sorted
//! lexicographically. Sets are listed in lexicographic order of that form.

use std::fmt;

use num_bigint::BigUint;

use crate::automaton::{one_based_labels, AutomatonTables, MealyAutomaton};
use crate::error::{Error, Result};
use crate::logic::{horizontal_sum, PartitionLogic};
use crate::partition::Partition;

/// Default limit on the number of product states `n^k`.
pub const DEFAULT_STATE_LIMIT: usize = 16;

/// Largest result count enumeration will attempt.
pub const RESULT_LIMIT: u64 = 2_000_000;

type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompleteNitSet {
    n: usize,
    k: usize,
    partitions: Vec<Partition>,
}

fn product_states(n: usize, k: usize) -> Result<usize> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidShape(format!("n = {n}, k = {k}")));
    }
    (n as u64)
        .checked_pow(k as u32)
        .filter(|&s| s <= 64)
        .map(|s| s as usize)
        .ok_or_else(|| Error::SearchTooLarge { size: (n as u128).saturating_pow(k as u32), limit: 64 })
}

fn mask_of(block: &[usize]) -> Mask {
    block.iter().fold(0, |m, &x| m | 1 << x)
}

fn check_shape(partitions: &[Partition], n: usize, k: usize) -> Result<usize> {
    let states = product_states(n, k)?;
    if partitions.len() != k {
        return Err(Error::InvalidShape(format!("expected {k} partitions, got {}", partitions.len())));
    }
    let size = states / n;
    for p in partitions {
        if p.ground() != states {
            return Err(Error::GroundMismatch(states, p.ground()));
        }
        if p.num_blocks() != n || p.blocks().iter().any(|b| b.len() != size) {
            return Err(Error::InvalidShape(format!("{p} is not {n} blocks of {size}")));
        }
    }
    Ok(states)
}

/// Conditions (i) and (ii), checked over all `n^k` block choices.
pub fn is_complete_set(partitions: &[Partition], n: usize, k: usize) -> Result<bool> {
    let states = check_shape(partitions, n, k)?;
    let masks: Vec<Vec<Mask>> = partitions.iter().map(|p| p.blocks().iter().map(|b| mask_of(b)).collect()).collect();
    let mut covered: Mask = 0;
    let mut choice = vec![0usize; k];
    loop {
        let cell = choice.iter().enumerate().fold(Mask::MAX, |acc, (j, &b)| acc & masks[j][b]);
        if cell.count_ones() != 1 {
            return Ok(false);
        }
        covered |= cell;
        // odometer over block choices
        let mut pos = k;
        loop {
            if pos == 0 {
                let full: Mask = if states == 64 { Mask::MAX } else { (1 << states) - 1 };
                return Ok(covered == full);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// All partitions of `0..states` into `n` blocks of equal size, canonical order.
pub fn nit_partitions(n: usize, k: usize) -> Result<Vec<Partition>> {
    let states = product_states(n, k)?;
    let size = states / n;
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn fill(
        states: usize,
        size: usize,
        free: Mask,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Partition>,
    ) {
        if free == 0 {
            out.push(Partition::new(states, blocks.clone()).expect("valid by construction"));
            return;
        }
        let first = free.trailing_zeros() as usize;
        let rest: Vec<usize> = (first + 1..states).filter(|&x| free >> x & 1 == 1).collect();
        let mut block = vec![first];
        fn choose(
            rest: &[usize],
            need: usize,
            block: &mut Vec<usize>,
            states: usize,
            size: usize,
            free: Mask,
            blocks: &mut Vec<Vec<usize>>,
            out: &mut Vec<Partition>,
        ) {
            if need == 0 {
                let m = mask_of(block);
                blocks.push(block.clone());
                fill(states, size, free & !m, blocks, out);
                blocks.pop();
                return;
            }
            for (i, &x) in rest.iter().enumerate() {
                if rest.len() - i < need {
                    break;
                }
                block.push(x);
                choose(&rest[i + 1..], need - 1, block, states, size, free, blocks, out);
                block.pop();
            }
        }
        choose(&rest, size - 1, &mut block, states, size, free, blocks, out);
    }
    let all: Mask = if states == 64 { Mask::MAX } else { (1 << states) - 1 };
    fill(states, size, all, &mut blocks, &mut out);
    out.sort();
    Ok(out)
}

impl CompleteNitSet {
    /// Validates conditions (i)/(ii); partitions are stored sorted.
    pub fn new(mut partitions: Vec<Partition>, n: usize, k: usize) -> Result<Self> {
        if !is_complete_set(&partitions, n, k)? {
            return Err(Error::InvalidShape("partitions are not a complete set of nits".into()));
        }
        partitions.sort();
        Ok(CompleteNitSet { n, k, partitions })
    }

    pub fn base(&self) -> usize {
        self.n
    }

    pub fn particles(&self) -> usize {
        self.k
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn num_states(&self) -> usize {
        self.partitions[0].ground()
    }

    /// All blocks, sorted: the canonical form.
    pub fn canonical_blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = self.partitions.iter().flat_map(|p| p.blocks().iter().cloned()).collect();
        blocks.sort();
        blocks
    }

    /// Common refinement of the nits; discrete for a complete set.
    pub fn joint_partition(&self) -> Partition {
        let idx: Vec<Vec<usize>> = self.partitions.iter().map(Partition::block_indices).collect();
        Partition::from_key(self.num_states(), |x| idx.iter().map(|i| i[x]).collect::<Vec<_>>())
    }

    /// Applies a permutation of the product states (0-based image vector).
    pub fn permuted(&self, image: &[usize]) -> Result<Self> {
        let parts = self
            .partitions
            .iter()
            .map(|p| Partition::new(p.ground(), p.blocks().iter().map(|b| b.iter().map(|&x| image[x]).collect()).collect()))
            .collect::<Result<Vec<_>>>()?;
        CompleteNitSet::new(parts, self.n, self.k)
    }
}

impl PartialOrd for CompleteNitSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CompleteNitSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.k, self.canonical_blocks()).cmp(&(other.n, other.k, other.canonical_blocks()))
    }
}

impl fmt::Display for CompleteNitSet {
    /// `{{1, 2, 3}, {1, 4, 5}, ...}` with 1-based states.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .canonical_blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "{{{}}}", blocks.join(", "))
    }
}

/// Parses one export line and regroups its blocks into `k` nits.
pub fn parse_set(line: &str, n: usize, k: usize) -> Result<CompleteNitSet> {
    let states = product_states(n, k)?;
    let bad = |why: &str| Error::Parse(format!("{why}: {line:?}"));
    let inner = line
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad("expected outer braces"))?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for chunk in inner.split('}') {
        let chunk = chunk.trim().trim_start_matches(',').trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk.strip_prefix('{').ok_or_else(|| bad("expected block"))?;
        let block = body
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(x) if (1..=states).contains(&x) => Ok(x - 1),
                _ => Err(bad("bad state")),
            })
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    if blocks.len() != n * k {
        return Err(bad("wrong number of blocks"));
    }
    // every nit has exactly one block containing state 0
    let (seeds, rest): (Vec<_>, Vec<_>) = blocks.into_iter().partition(|b| b.contains(&0));
    if seeds.len() != k {
        return Err(bad("cannot regroup blocks into nits"));
    }
    let mut groups: Vec<Vec<Vec<usize>>> = seeds.into_iter().map(|b| vec![b]).collect();
    fn assign(rest: &[Vec<usize>], groups: &mut Vec<Vec<Vec<usize>>>, n: usize, k: usize, states: usize) -> Option<Vec<Partition>> {
        let Some((block, tail)) = rest.split_first() else {
            let parts: Option<Vec<Partition>> =
                groups.iter().map(|g| Partition::new(states, g.clone()).ok()).collect();
            return parts.filter(|p| is_complete_set(p, n, k).unwrap_or(false));
        };
        for g in 0..groups.len() {
            let fits = groups[g].len() < n && groups[g].iter().all(|b| b.iter().all(|x| !block.contains(x)));
            if fits {
                groups[g].push(block.clone());
                if let Some(found) = assign(tail, groups, n, k, states) {
                    return Some(found);
                }
                groups[g].pop();
            }
        }
        None
    }
    let parts = assign(&rest, &mut groups, n, k, states).ok_or_else(|| bad("not a complete set"))?;
    CompleteNitSet::new(parts, n, k)
}

/// `(n^k)! / (k! · (n!)^k)` for `n ≥ 2`, `1` for `n = 1`. Used as a size
/// estimate before enumerating.
pub fn count_formula(n: usize, k: usize) -> BigUint {
    let fact = |m: usize| (1..=m).fold(BigUint::from(1u32), |acc, x| acc * x);
    if n <= 1 {
        return BigUint::from(1u32);
    }
    let states = n.pow(k as u32);
    fact(states) / (fact(k) * fact(n).pow(k as u32))
}

/// `(n²)! / (2 · (n!)²)` for `n ≥ 2`, `1` for `n = 1`.
pub fn count_formula_k2(n: usize) -> BigUint {
    count_formula(n, 2)
}

pub fn enumerate_complete_sets(n: usize, k: usize) -> Result<Vec<CompleteNitSet>> {
    enumerate_complete_sets_with_limit(n, k, DEFAULT_STATE_LIMIT)
}

/// Exhaustive enumeration, refusing when `n^k > state_limit` or the expected
/// result count exceeds [`RESULT_LIMIT`].
pub fn enumerate_complete_sets_with_limit(n: usize, k: usize, state_limit: usize) -> Result<Vec<CompleteNitSet>> {
    let states = product_states(n, k)?;
    if states > state_limit {
        return Err(Error::SearchTooLarge { size: states as u128, limit: state_limit as u128 });
    }
    let expected = count_formula(n, k);
    if expected > BigUint::from(RESULT_LIMIT) {
        return Err(Error::SearchTooLarge {
            size: u128::try_from(&expected).unwrap_or(u128::MAX),
            limit: RESULT_LIMIT as u128,
        });
    }
    let nits = nit_partitions(n, k)?;
    let masks: Vec<Vec<Mask>> = nits.iter().map(|p| p.blocks().iter().map(|b| mask_of(b)).collect()).collect();
    let mut found = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    let full: Mask = if states == 64 { Mask::MAX } else { (1 << states) - 1 };
    // after j nits every cell of the induced grid must hold n^(k-j) states
    fn search(
        from: usize,
        cells: &[Mask],
        cell_size: usize,
        n: usize,
        k: usize,
        masks: &[Vec<Mask>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == k {
            found.push(chosen.clone());
            return;
        }
        let next_size = cell_size / n;
        for idx in from..masks.len() {
            let mut next = Vec::with_capacity(cells.len() * n);
            let ok = cells.iter().all(|&c| {
                masks[idx].iter().all(|&b| {
                    let m = c & b;
                    next.push(m);
                    m.count_ones() as usize == next_size
                })
            });
            if ok {
                chosen.push(idx);
                search(idx, &next, next_size, n, k, masks, chosen, found);
                chosen.pop();
            }
        }
    }
    search(0, &[full], states, n, k, &masks, &mut chosen, &mut found);
    let mut sets: Vec<CompleteNitSet> = found
        .into_iter()
        .map(|idx| CompleteNitSet::new(idx.into_iter().map(|i| nits[i].clone()).collect(), n, k))
        .collect::<Result<_>>()?;
    sets.sort();
    sets.dedup();
    Ok(sets)
}

/// Newline-delimited export, one set per line.
pub fn export_sets(sets: &[CompleteNitSet]) -> String {
    sets.iter().map(|s| format!("{s}\n")).collect()
}

pub fn parse_sets(text: &str, n: usize, k: usize) -> Result<Vec<CompleteNitSet>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| parse_set(l, n, k)).collect()
}

/// Horizontal sum with one context per complete set: the joint (discrete)
/// partition that measuring all nits together resolves.
pub fn nit_logic_from(sets: &[CompleteNitSet]) -> Result<PartitionLogic> {
    let first = sets.first().ok_or(Error::NoContexts)?;
    let contexts: Vec<Partition> = sets.iter().map(CompleteNitSet::joint_partition).collect();
    horizontal_sum(first.num_states(), &contexts)
}

pub fn nit_logic(n: usize, k: usize) -> Result<PartitionLogic> {
    nit_logic_from(&enumerate_complete_sets(n, k)?)
}

/// The automaton of a nit logic: `n^k` states and outputs, one input per
/// complete set, output = the state itself, constant transition.
pub fn nit_automaton(sets: &[CompleteNitSet]) -> Result<MealyAutomaton> {
    let logic = nit_logic_from(sets)?;
    let states = logic.ground();
    let idx: Vec<Vec<usize>> = logic.contexts().iter().map(Partition::block_indices).collect();
    MealyAutomaton::validate(AutomatonTables {
        states: one_based_labels(states),
        inputs: one_based_labels(sets.len()),
        outputs: one_based_labels(states),
        delta: vec![vec![0; sets.len()]; states],
        lambda: (0..states).map(|s| idx.iter().map(|i| i[s]).collect()).collect(),
    })
}

/// Placement of the product states on an `n × n` grid by two nits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tessellation {
    /// `grid[row][col]` is a 1-based product state.
    pub grid: Vec<Vec<usize>>,
}

pub fn render_tessellation(set: &CompleteNitSet) -> Result<Tessellation> {
    if set.particles() != 2 {
        return Err(Error::TessellationArity(set.particles()));
    }
    let n = set.base();
    let rows = set.partitions()[0].block_indices();
    let cols = set.partitions()[1].block_indices();
    let mut grid = vec![vec![0; n]; n];
    for x in 0..set.num_states() {
        grid[rows[x]][cols[x]] = x + 1;
    }
    Ok(Tessellation { grid })
}

impl Tessellation {
    fn width(&self) -> usize {
        self.grid.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1)
    }

    fn panel(&self, row_rules: bool, col_rules: bool) -> String {
        let w = self.width();
        let n = self.grid.len();
        let sep = if col_rules { "|" } else { " " };
        let rule = (0..n)
            .map(|_| "-".repeat(w))
            .collect::<Vec<_>>()
            .join(if col_rules { "+" } else { "-" });
        let mut lines = Vec::new();
        for (r, row) in self.grid.iter().enumerate() {
            if r > 0 && row_rules {
                lines.push(rule.clone());
            }
            lines.push(row.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join(sep));
        }
        lines.join("\n")
    }

    /// Grid with rules between rows only: the blocks of the first nit.
    pub fn first_nit(&self) -> String {
        self.panel(true, false)
    }

    /// Grid with rules between columns only: the blocks of the second nit.
    pub fn second_nit(&self) -> String {
        self.panel(false, true)
    }

    pub fn both(&self) -> String {
        self.panel(true, true)
    }
}

impl fmt::Display for Tessellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nit 1\n{}\n\nnit 2\n{}\n\nnits 1&2\n{}\n", self.first_nit(), self.second_nit(), self.both())
    }
}
