//! Generalized urn models `⟨U, C, L, Λ⟩` and their translation to and from
//! Mealy automata.
//!
//! A ball type viewed through a single-color filter shows only the symbol
//! printed in that color; `Λ(u, c)` is that symbol. Going from an urn to an
//! automaton forces a constant transition function (every state collapses
//! to a fixed one), so only `λ` survives a round trip.

use crate::automaton::{AutomatonTables, MealyAutomaton};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UrnModel {
    ball_types: Vec<String>,
    colors: Vec<String>,
    symbols: Vec<String>,
    lookup: Vec<Vec<usize>>,
}

/// A bijection on `0..len`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bijection(Vec<usize>);

impl Bijection {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidTranslation(format!("{image:?} is not a bijection")));
            }
        }
        Ok(Bijection(image))
    }

    pub fn identity(len: usize) -> Self {
        Bijection((0..len).collect())
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

    pub fn inverse(&self) -> Bijection {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Bijection(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Bijection) -> Bijection {
        Bijection(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Three bijections matching ball types/states, colors/inputs and
/// symbols/outputs. Direction is given by the function that produced it:
/// urn → automaton maps are `(t_S, t_I, t_O)`, automaton → urn maps are
/// `(τ_U, τ_C, τ_L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub states: Bijection,
    pub inputs: Bijection,
    pub outputs: Bijection,
}

impl Translation {
    pub fn identity(states: usize, inputs: usize, outputs: usize) -> Self {
        Translation {
            states: Bijection::identity(states),
            inputs: Bijection::identity(inputs),
            outputs: Bijection::identity(outputs),
        }
    }

    /// Component-wise `self ∘ other`.
    pub fn compose(&self, other: &Translation) -> Translation {
        Translation {
            states: self.states.compose(&other.states),
            inputs: self.inputs.compose(&other.inputs),
            outputs: self.outputs.compose(&other.outputs),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.states.is_identity() && self.inputs.is_identity() && self.outputs.is_identity()
    }

    /// Component-wise inverse.
    pub fn inverse_all(&self) -> Translation {
        Translation {
            states: self.states.inverse(),
            inputs: self.inputs.inverse(),
            outputs: self.outputs.inverse(),
        }
    }
}

impl UrnModel {
    pub fn new(
        ball_types: Vec<String>,
        colors: Vec<String>,
        symbols: Vec<String>,
        lookup: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for (name, set) in [("ball types", &ball_types), ("colors", &colors), ("symbols", &symbols)] {
            if set.is_empty() {
                return Err(Error::InvalidUrn(format!("no {name}")));
            }
            for (i, l) in set.iter().enumerate() {
                if set[..i].contains(l) {
                    return Err(Error::InvalidUrn(format!("duplicate entry {l:?} in {name}")));
                }
            }
        }
        if lookup.len() != ball_types.len() {
            return Err(Error::InvalidUrn(format!(
                "lookup has {} rows for {} ball types",
                lookup.len(),
                ball_types.len()
            )));
        }
        for (u, row) in lookup.iter().enumerate() {
            if row.len() != colors.len() {
                return Err(Error::InvalidUrn(format!("lookup row {u} has {} entries", row.len())));
            }
            if let Some(c) = row.iter().position(|&v| v >= symbols.len()) {
                return Err(Error::InvalidUrn(format!("symbol out of range at ({u}, {c})")));
            }
        }
        Ok(UrnModel { ball_types, colors, symbols, lookup })
    }

    pub fn ball_types(&self) -> &[String] {
        &self.ball_types
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn lookup_table(&self) -> &[Vec<usize>] {
        &self.lookup
    }

    /// `Λ(u, c)`: the symbol ball type `u` shows in color `c`.
    pub fn lookup(&self, ball: usize, color: usize) -> Result<usize> {
        let row = self
            .lookup
            .get(ball)
            .ok_or_else(|| Error::InvalidUrn(format!("unknown ball type {ball}")))?;
        row.get(color)
            .copied()
            .ok_or_else(|| Error::InvalidUrn(format!("unknown color {color}")))
    }

    fn check_shape(&self, t: &Translation) -> Result<()> {
        if t.states.len() != self.ball_types.len()
            || t.inputs.len() != self.colors.len()
            || t.outputs.len() != self.symbols.len()
        {
            return Err(Error::InvalidTranslation("cardinalities do not match the urn".into()));
        }
        Ok(())
    }
}

fn permute_labels(labels: &[String], map: &Bijection) -> Vec<String> {
    let mut out = vec![String::new(); labels.len()];
    for (x, l) in labels.iter().enumerate() {
        out[map.apply(x)] = l.clone();
    }
    out
}

/// Urn → automaton with identity bijections.
pub fn automaton_from_urn(urn: &UrnModel) -> Result<(MealyAutomaton, Translation)> {
    let t = Translation::identity(urn.ball_types.len(), urn.colors.len(), urn.symbols.len());
    let a = automaton_from_urn_with(urn, &t)?;
    Ok((a, t))
}

/// Urn → automaton through the given `(t_S, t_I, t_O)`:
/// `λ(s, i) = t_O(Λ(t_S⁻¹(s), t_I⁻¹(i)))` and `δ(s, i) = s₀`, the first state.
pub fn automaton_from_urn_with(urn: &UrnModel, t: &Translation) -> Result<MealyAutomaton> {
    urn.check_shape(t)?;
    let (ts_inv, ti_inv) = (t.states.inverse(), t.inputs.inverse());
    let (ns, ni) = (urn.ball_types.len(), urn.colors.len());
    MealyAutomaton::validate(AutomatonTables {
        states: permute_labels(&urn.ball_types, &t.states),
        inputs: permute_labels(&urn.colors, &t.inputs),
        outputs: permute_labels(&urn.symbols, &t.outputs),
        delta: vec![vec![0; ni]; ns],
        lambda: (0..ns)
            .map(|s| (0..ni).map(|i| t.outputs.apply(urn.lookup[ts_inv.apply(s)][ti_inv.apply(i)])).collect())
            .collect(),
    })
}

/// Automaton → urn with identity bijections. `δ` is dropped.
pub fn urn_from_automaton(a: &MealyAutomaton) -> Result<(UrnModel, Translation)> {
    let t = Translation::identity(a.num_states(), a.num_inputs(), a.num_outputs());
    let urn = urn_from_automaton_with(a, &t)?;
    Ok((urn, t))
}

/// Automaton → urn through `(τ_U, τ_C, τ_L)`: `Λ(u, c) = τ_L(λ(τ_U⁻¹(u), τ_C⁻¹(c)))`.
pub fn urn_from_automaton_with(a: &MealyAutomaton, t: &Translation) -> Result<UrnModel> {
    if t.states.len() != a.num_states() || t.inputs.len() != a.num_inputs() || t.outputs.len() != a.num_outputs() {
        return Err(Error::InvalidTranslation("cardinalities do not match the automaton".into()));
    }
    let (tu_inv, tc_inv) = (t.states.inverse(), t.inputs.inverse());
    let lambda = a.lambda_table();
    UrnModel::new(
        permute_labels(a.state_labels(), &t.states),
        permute_labels(a.input_labels(), &t.inputs),
        permute_labels(a.output_labels(), &t.outputs),
        (0..a.num_states())
            .map(|u| (0..a.num_inputs()).map(|c| t.outputs.apply(lambda[tu_inv.apply(u)][tc_inv.apply(c)])).collect())
            .collect(),
    )
}

/// Outcome of automaton → urn → automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// `λ` came back unchanged.
    pub lambda_preserved: bool,
    /// Every composed bijection `t ∘ τ` is the identity.
    pub bijections_identity: bool,
    /// `δ` came back unchanged; false whenever the original `δ` was not
    /// already the constant map onto the first state.
    pub delta_preserved: bool,
    pub result: MealyAutomaton,
}

impl RoundTrip {
    /// The round trip holds when `λ` survives and the bijections cancel.
    /// `δ` is reported but not required.
    pub fn holds(&self) -> bool {
        self.lambda_preserved && self.bijections_identity
    }
}

/// Round trip through identity translations.
pub fn roundtrip_check(a: &MealyAutomaton) -> Result<RoundTrip> {
    let t = Translation::identity(a.num_states(), a.num_inputs(), a.num_outputs());
    roundtrip_check_with(a, &t, &t.inverse_all())
}

/// Round trip with explicit `τ` (automaton → urn) and `t` (urn → automaton).
pub fn roundtrip_check_with(a: &MealyAutomaton, tau: &Translation, t: &Translation) -> Result<RoundTrip> {
    let urn = urn_from_automaton_with(a, tau)?;
    let back = automaton_from_urn_with(&urn, t)?;
    Ok(RoundTrip {
        lambda_preserved: back.lambda_table() == a.lambda_table() && back.output_labels() == a.output_labels(),
        bijections_identity: t.compose(tau).is_identity(),
        delta_preserved: back.delta_table() == a.delta_table(),
        result: back,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::experiments::{finest_partitions, Depth};
    use crate::partition::Partition;

    #[test]
    fn fig1_lookup() {
        let urn = catalog::urn_fig1();
        let red = urn.colors().iter().position(|c| c == "red").unwrap();
        let blue = urn.colors().iter().position(|c| c == "blue").unwrap();
        assert_eq!(urn.symbols()[urn.lookup(0, red).unwrap()], "0");
        assert_eq!(urn.symbols()[urn.lookup(1, blue).unwrap()], "1");
        assert!(urn.lookup(3, 0).is_err());
    }

    #[test]
    fn single_ball() {
        let urn = UrnModel::new(vec!["u".into()], vec!["c".into()], vec!["v".into()], vec![vec![0]]).unwrap();
        assert_eq!(urn.lookup(0, 0).unwrap(), 0);
        let (a, t) = automaton_from_urn(&urn).unwrap();
        assert_eq!(a.num_states(), 1);
        assert!(t.is_identity());
    }

    #[test]
    fn fig1_urn_gives_mo3_partitions() {
        let (a, _) = automaton_from_urn(&catalog::urn_fig1()).unwrap();
        let mut expected = vec![
            Partition::from_one_based(3, &[&[1], &[2, 3]]).unwrap(),
            Partition::from_one_based(3, &[&[2], &[1, 3]]).unwrap(),
            Partition::from_one_based(3, &[&[3], &[1, 2]]).unwrap(),
        ];
        expected.sort();
        assert_eq!(finest_partitions(&a, Depth::Unbounded), expected);
    }

    #[test]
    fn mo3_urn_shows_one_in_own_color() {
        let (urn, _) = urn_from_automaton(&catalog::mo3()).unwrap();
        for u in 0..3 {
            for c in 0..3 {
                assert_eq!(urn.symbols()[urn.lookup(u, c).unwrap()] == "1", u == c);
            }
        }
    }

    #[test]
    fn constant_output() {
        let a = MealyAutomaton::from_fn(3, 2, 2, |s, _| s, |_, _| 1).unwrap();
        let (urn, _) = urn_from_automaton(&a).unwrap();
        assert!(urn.lookup_table().iter().flatten().all(|&v| v == 1));
    }

    #[test]
    fn roundtrips() {
        assert!(roundtrip_check(&catalog::mo3()).unwrap().holds());
        assert!(roundtrip_check(&catalog::mo3()).unwrap().delta_preserved);
        let id = MealyAutomaton::from_fn(3, 2, 2, |s, _| s, |s, i| (s + i) % 2).unwrap();
        let r = roundtrip_check(&id).unwrap();
        assert!(r.holds());
        assert!(!r.delta_preserved);
        let one = MealyAutomaton::from_fn(1, 1, 1, |_, _| 0, |_, _| 0).unwrap();
        assert!(roundtrip_check(&one).unwrap().holds());
    }

    #[test]
    fn nontrivial_relabelling() {
        let a = catalog::triangle();
        let tau = Translation {
            states: Bijection::new(vec![2, 0, 3, 1]).unwrap(),
            inputs: Bijection::new(vec![1, 2, 0]).unwrap(),
            outputs: Bijection::new(vec![2, 1, 0]).unwrap(),
        };
        let r = roundtrip_check_with(&a, &tau, &tau.inverse_all()).unwrap();
        assert!(r.holds());
        let wrong = roundtrip_check_with(&a, &tau, &tau).unwrap();
        assert!(!wrong.bijections_identity);
        assert!(!wrong.holds());
    }

    #[test]
    fn bad_bijection() {
        assert!(Bijection::new(vec![0, 0]).is_err());
        assert!(Bijection::new(vec![1, 2]).is_err());
    }
}
