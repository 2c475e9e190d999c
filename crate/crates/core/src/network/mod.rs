//! AND-NOT Boolean networks: variables, update functions and states.
//!
//! Every update function is either a constant or a conjunction of literals
//! with at most one literal per variable. A source variable (`f_v = v`) is a
//! conjunction with the single positive literal `v`.

mod format;
mod transform;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{parse_network, serialize_network};
pub use transform::{make_source, percolate_full, percolate_one_step, pin_assignment};

/// Position of a variable in the network's variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarId(pub usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Sign of a literal, and of the influence arc it induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    /// The value of the variable that satisfies a literal of this sign.
    pub fn satisfying_value(self) -> bool {
        self == Sign::Positive
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: VarId,
    pub sign: Sign,
}

impl Literal {
    pub fn positive(var: VarId) -> Self {
        Literal {
            var,
            sign: Sign::Positive,
        }
    }

    pub fn negative(var: VarId) -> Self {
        Literal {
            var,
            sign: Sign::Negative,
        }
    }

    pub fn is_satisfied_by(self, value: bool) -> bool {
        value == self.sign.satisfying_value()
    }
}

/// Update function of one variable.
///
/// Conjunction literals are kept sorted by variable index, so two functions
/// are equal exactly when they denote the same conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UpdateFunction {
    Constant(bool),
    Conjunction(Vec<Literal>),
}

impl UpdateFunction {
    /// Builds a conjunction, rejecting empty literal sets and repeated variables.
    pub fn conjunction(literals: impl IntoIterator<Item = Literal>) -> Result<Self, NetworkError> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        if literals.is_empty() {
            return Err(NetworkError::EmptyConjunction);
        }
        literals.sort();
        for pair in literals.windows(2) {
            if pair[0].var == pair[1].var {
                return Err(NetworkError::DuplicateLiteral {
                    line: None,
                    name: pair[0].var.to_string(),
                });
            }
        }
        Ok(UpdateFunction::Conjunction(literals))
    }

    pub fn source(var: VarId) -> Self {
        UpdateFunction::Conjunction(vec![Literal::positive(var)])
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, UpdateFunction::Constant(_))
    }

    pub fn constant_value(&self) -> Option<bool> {
        match self {
            UpdateFunction::Constant(value) => Some(*value),
            UpdateFunction::Conjunction(_) => None,
        }
    }

    pub fn literals(&self) -> &[Literal] {
        match self {
            UpdateFunction::Constant(_) => &[],
            UpdateFunction::Conjunction(literals) => literals,
        }
    }

    pub fn literal_of(&self, var: VarId) -> Option<Literal> {
        self.literals().iter().copied().find(|l| l.var == var)
    }

    pub fn evaluate(&self, state: &NetworkState) -> bool {
        match self {
            UpdateFunction::Constant(value) => *value,
            UpdateFunction::Conjunction(literals) => {
                literals.iter().all(|l| l.is_satisfied_by(state.get(l.var)))
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("{}variable `{name}` has more than one update function", line_prefix(*.line))]
    DuplicateTarget { line: Option<usize>, name: String },

    #[error("{}literal references unknown variable `{name}`", line_prefix(*.line))]
    UnknownVariable { line: Option<usize>, name: String },

    #[error("{}variable `{name}` appears twice in one conjunction", line_prefix(*.line))]
    DuplicateLiteral { line: Option<usize>, name: String },

    #[error("invalid variable name `{0}`")]
    InvalidName(String),

    #[error("conjunction has no literals")]
    EmptyConjunction,

    #[error("network has {variables} variables but {functions} update functions")]
    ArityMismatch { variables: usize, functions: usize },

    #[error("network declares no variables")]
    EmptyNetwork,
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An AND-NOT Boolean network with a fixed variable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanNetwork {
    names: Vec<String>,
    functions: Vec<UpdateFunction>,
}

impl BooleanNetwork {
    pub fn new(names: Vec<String>, functions: Vec<UpdateFunction>) -> Result<Self, NetworkError> {
        if names.is_empty() {
            return Err(NetworkError::EmptyNetwork);
        }
        if names.len() != functions.len() {
            return Err(NetworkError::ArityMismatch {
                variables: names.len(),
                functions: functions.len(),
            });
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(NetworkError::InvalidName(name.clone()));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(NetworkError::DuplicateTarget {
                    line: None,
                    name: name.clone(),
                });
            }
        }
        for function in &functions {
            if let UpdateFunction::Conjunction(literals) = function {
                if literals.is_empty() {
                    return Err(NetworkError::EmptyConjunction);
                }
                for l in literals {
                    if l.var.0 >= names.len() {
                        return Err(NetworkError::UnknownVariable {
                            line: None,
                            name: l.var.to_string(),
                        });
                    }
                }
                for pair in literals.windows(2) {
                    if pair[0].var >= pair[1].var {
                        let name = names[pair[1].var.0].clone();
                        return Err(NetworkError::DuplicateLiteral { line: None, name });
                    }
                }
            }
        }
        Ok(BooleanNetwork { names, functions })
    }

    /// Network whose functions are built by a closure of the variable index.
    pub(crate) fn with_functions(
        &self,
        f: impl Fn(VarId, &UpdateFunction) -> UpdateFunction,
    ) -> Self {
        let functions = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, func)| f(VarId(i), func))
            .collect();
        BooleanNetwork {
            names: self.names.clone(),
            functions,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.names[var.0]
    }

    pub fn find(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(VarId)
    }

    pub fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len()).map(VarId)
    }

    pub fn functions(&self) -> &[UpdateFunction] {
        &self.functions
    }

    pub fn function(&self, var: VarId) -> &UpdateFunction {
        &self.functions[var.0]
    }

    pub fn is_source(&self, var: VarId) -> bool {
        self.functions[var.0] == UpdateFunction::source(var)
    }

    pub fn constant_count(&self) -> usize {
        self.functions.iter().filter(|f| f.is_constant()).count()
    }

    /// Renders `f_v` in the text format (`0`, `1`, or `a & !b`).
    pub fn function_text(&self, var: VarId) -> String {
        match &self.functions[var.0] {
            UpdateFunction::Constant(value) => if *value { "1" } else { "0" }.to_string(),
            UpdateFunction::Conjunction(literals) => literals
                .iter()
                .map(|l| match l.sign {
                    Sign::Positive => self.names[l.var.0].clone(),
                    Sign::Negative => format!("!{}", self.names[l.var.0]),
                })
                .collect::<Vec<_>>()
                .join(" & "),
        }
    }
}

/// One Boolean value per variable, in variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetworkState(Vec<bool>);

impl NetworkState {
    pub fn new(bits: Vec<bool>) -> Self {
        NetworkState(bits)
    }

    pub fn zeros(len: usize) -> Self {
        NetworkState(vec![false; len])
    }

    /// Decodes a state index where variable `i` is bit `i`.
    pub fn from_index(index: u64, len: usize) -> Self {
        NetworkState((0..len).map(|i| index >> i & 1 == 1).collect())
    }

    /// Inverse of [`NetworkState::from_index`]; requires at most 64 variables.
    pub fn index(&self) -> u64 {
        assert!(self.0.len() <= 64, "state index needs at most 64 variables");
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: VarId) -> bool {
        self.0[var.0]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// `x[v <- value]`.
    pub fn with(&self, var: VarId, value: bool) -> Self {
        let mut bits = self.0.clone();
        bits[var.0] = value;
        NetworkState(bits)
    }
}

impl fmt::Display for NetworkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for NetworkState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("unexpected character `{other}` in state string")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(NetworkState)
    }
}

/// Renders a state index as a 0/1 string in variable order.
pub fn render_state(index: u64, len: usize) -> String {
    (0..len)
        .map(|i| if index >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Bit-mask form of a network for exhaustive state-space sweeps (≤ 64 variables).
#[derive(Clone, Debug)]
pub(crate) struct CompiledNetwork {
    len: usize,
    rules: Vec<Rule>,
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    Constant(bool),
    Conjunction { positive: u64, negative: u64 },
}

impl CompiledNetwork {
    pub(crate) fn new(network: &BooleanNetwork) -> Self {
        assert!(
            network.len() <= 64,
            "bit-mask evaluation needs at most 64 variables"
        );
        let rules = network
            .functions()
            .iter()
            .map(|f| match f {
                UpdateFunction::Constant(value) => Rule::Constant(*value),
                UpdateFunction::Conjunction(literals) => {
                    let (mut positive, mut negative) = (0u64, 0u64);
                    for l in literals {
                        match l.sign {
                            Sign::Positive => positive |= 1 << l.var.0,
                            Sign::Negative => negative |= 1 << l.var.0,
                        }
                    }
                    Rule::Conjunction { positive, negative }
                }
            })
            .collect();
        CompiledNetwork {
            len: network.len(),
            rules,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub(crate) fn eval(&self, var: usize, state: u64) -> bool {
        match self.rules[var] {
            Rule::Constant(value) => value,
            Rule::Conjunction { positive, negative } => {
                state & positive == positive && state & negative == 0
            }
        }
    }

    /// Mask of variables `v` with `f_v(state) != state_v`.
    #[inline]
    pub(crate) fn update_mask(&self, state: u64) -> u64 {
        let mut mask = 0u64;
        for v in 0..self.len {
            if self.eval(v, state) != (state >> v & 1 == 1) {
                mask |= 1 << v;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_validated() {
        assert!(is_valid_name("_x1"));
        assert!(is_valid_name("ErbB2_3"));
        assert!(!is_valid_name("1x"));
        assert!(!is_valid_name("a-b"));
        assert!(!is_valid_name(""));
    }

    #[test]
    fn conjunction_rejects_repeated_variables() {
        let err =
            UpdateFunction::conjunction([Literal::positive(VarId(1)), Literal::negative(VarId(1))]);
        assert!(matches!(err, Err(NetworkError::DuplicateLiteral { .. })));
        assert_eq!(
            UpdateFunction::conjunction([]),
            Err(NetworkError::EmptyConjunction)
        );
    }

    #[test]
    fn state_index_round_trips_with_rendering() {
        let state: NetworkState = "011".parse().unwrap();
        assert_eq!(state.index(), 0b110);
        assert_eq!(render_state(0b110, 3), "011");
        assert_eq!(NetworkState::from_index(6, 3), state);
        assert_eq!(state.to_string(), "011");
    }

    #[test]
    fn compiled_evaluation_matches_direct_evaluation() {
        let net = parse_network("a, !b & c\nb, !a & !c\nc, !a\n").unwrap();
        let compiled = CompiledNetwork::new(&net);
        for index in 0..8 {
            let state = NetworkState::from_index(index, 3);
            for v in net.variables() {
                assert_eq!(compiled.eval(v.0, index), net.function(v).evaluate(&state));
            }
        }
        // 111 can update every variable.
        assert_eq!(compiled.update_mask(0b111), 0b111);
    }

    #[test]
    fn new_rejects_inconsistent_inputs() {
        assert_eq!(
            BooleanNetwork::new(vec![], vec![]),
            Err(NetworkError::EmptyNetwork)
        );
        let err = BooleanNetwork::new(vec!["a".into()], vec![UpdateFunction::source(VarId(3))]);
        assert!(matches!(err, Err(NetworkError::UnknownVariable { .. })));
        let err = BooleanNetwork::new(
            vec!["a".into(), "a".into()],
            vec![
                UpdateFunction::Constant(true),
                UpdateFunction::Constant(false),
            ],
        );
        assert!(matches!(err, Err(NetworkError::DuplicateTarget { .. })));
    }
}
