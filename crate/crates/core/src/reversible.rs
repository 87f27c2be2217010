//! Reversible automata: `I = O` and the combined map
//! `(s, i) ↦ (δ(s, i), λ(s, i))` is a permutation of `S × I`.
//!
//! Configurations `(s, i)` are indexed row-major, `index = s·|I| + i`, so for
//! two states and inputs `{0, 1}` the order is `(1,0), (1,1), (2,0), (2,1)`.
//! The matrix convention is `U[image][source] = 1`, making one evolution
//! step `Ψ'_r = Σ_c U[r][c] Ψ_c`.

use crate::automaton::{MealyAutomaton, AutomatonTables, one_based_labels};
use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From disjoint cycles written with 1-based points, e.g. `[[1, 2], [3, 4]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!("bad cycle point {x}")));
                }
                image[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation(image))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Permutation(inv)
    }

    /// Disjoint cycles with 1-based points, each starting at its minimum,
    /// sorted by first point, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.cycles().iter().fold(1, |acc, c| acc / gcd(acc, c.len()) * c.len())
    }

    /// `n × n` matrix with `m[p(j)][j] = 1`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.0.len();
        let mut m = vec![vec![0u8; n]; n];
        for (j, &r) in self.0.iter().enumerate() {
            m[r][j] = 1;
        }
        m
    }
}

/// Renders cycles as `(1,2)(3,4)`.
pub fn format_cycles(cycles: &[Vec<usize>]) -> String {
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect()
}

/// One-hot configuration vector over the row-major `S × I` order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Configuration {
    len: usize,
    index: usize,
}

impl Configuration {
    pub fn new(len: usize, index: usize) -> Result<Self> {
        if index >= len {
            return Err(Error::InvalidPermutation(format!("configuration {index} outside 0..{len}")));
        }
        Ok(Configuration { len, index })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn to_vector(&self) -> Vec<u8> {
        let mut v = vec![0; self.len];
        v[self.index] = 1;
        v
    }

    /// `(state, input)` as dense indices.
    pub fn pair(&self, num_inputs: usize) -> (usize, usize) {
        (self.index / num_inputs, self.index % num_inputs)
    }
}

fn require_io_equal(a: &MealyAutomaton) -> Result<()> {
    if a.input_labels() != a.output_labels() {
        return Err(Error::OutputsDifferFromInputs);
    }
    Ok(())
}

/// The combined map as an image vector over `S × I` (not necessarily bijective).
pub fn combined_map(a: &MealyAutomaton) -> Result<Vec<usize>> {
    require_io_equal(a)?;
    let ni = a.num_inputs();
    Ok((0..a.num_states() * ni)
        .map(|j| {
            let (s, i) = (j / ni, j % ni);
            a.delta_table()[s][i] * ni + a.lambda_table()[s][i]
        })
        .collect())
}

/// Fails with [`Error::OutputsDifferFromInputs`] when `I ≠ O`.
pub fn is_reversible(a: &MealyAutomaton) -> Result<bool> {
    Ok(Permutation::new(combined_map(a)?).is_ok())
}

/// The combined map as a permutation; errors unless reversible.
pub fn permutation(a: &MealyAutomaton) -> Result<Permutation> {
    Permutation::new(combined_map(a)?).map_err(|_| Error::NotReversible)
}

pub fn permutation_matrix(a: &MealyAutomaton) -> Result<Vec<Vec<u8>>> {
    Ok(permutation(a)?.matrix())
}

pub fn cycle_form(a: &MealyAutomaton) -> Result<Vec<Vec<usize>>> {
    Ok(permutation(a)?.cycles())
}

/// The automaton with `I = O = {0..|I|-1}` (labelled `0..`) whose combined
/// map is `p`. State labels are 1-based.
pub fn automaton_from_permutation(p: &Permutation, num_states: usize, num_inputs: usize) -> Result<MealyAutomaton> {
    if num_states * num_inputs != p.len() || p.is_empty() {
        return Err(Error::SizeMismatch { len: p.len(), states: num_states, inputs: num_inputs });
    }
    let symbols: Vec<String> = (0..num_inputs).map(|i| i.to_string()).collect();
    automaton_with_labels(p, one_based_labels(num_states), symbols)
}

fn automaton_with_labels(p: &Permutation, states: Vec<String>, symbols: Vec<String>) -> Result<MealyAutomaton> {
    let ni = symbols.len();
    let rows = |f: fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..states.len()).map(|s| (0..ni).map(|i| f(p.apply(s * ni + i), ni)).collect()).collect()
    };
    MealyAutomaton::validate(AutomatonTables {
        delta: rows(|img, ni| img / ni),
        lambda: rows(|img, ni| img % ni),
        states: states.clone(),
        inputs: symbols.clone(),
        outputs: symbols,
    })
}

/// Automaton of the inverse permutation, keeping the labels.
pub fn inverse(a: &MealyAutomaton) -> Result<MealyAutomaton> {
    let p = permutation(a)?.inverse();
    automaton_with_labels(&p, a.state_labels().to_vec(), a.input_labels().to_vec())
}

/// Applies the combined map `steps` times.
pub fn evolve(a: &MealyAutomaton, psi: Configuration, steps: usize) -> Result<Configuration> {
    let p = permutation(a)?;
    if psi.len() != p.len() {
        return Err(Error::SizeMismatch { len: psi.len(), states: a.num_states(), inputs: a.num_inputs() });
    }
    // the orbit is periodic, so only steps mod order matter
    let steps = steps % p.order();
    let mut index = psi.index();
    for _ in 0..steps {
        index = p.apply(index);
    }
    Ok(Configuration { len: psi.len(), index })
}

/// Row-major domain labels `(s,i)`.
pub fn domain_labels(a: &MealyAutomaton) -> Vec<String> {
    a.state_labels()
        .iter()
        .flat_map(|s| a.input_labels().iter().map(move |i| format!("({s},{i})")))
        .collect()
}
