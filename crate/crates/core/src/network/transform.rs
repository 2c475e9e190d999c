//! Network rewrites: percolation of constants, source conversion and pinning.

use std::collections::{BTreeMap, BTreeSet};

use super::{BooleanNetwork, UpdateFunction, VarId};

/// Substitutes the value of every constant variable into all non-constant
/// functions. Satisfied literals are dropped, a falsified literal makes the
/// function `0`, and a conjunction that loses all its literals becomes `1`.
pub fn percolate_one_step(network: &BooleanNetwork) -> BooleanNetwork {
    let constants: Vec<Option<bool>> = network
        .functions()
        .iter()
        .map(|f| f.constant_value())
        .collect();
    network.with_functions(|_, function| match function {
        UpdateFunction::Constant(_) => function.clone(),
        UpdateFunction::Conjunction(literals) => {
            let mut kept = Vec::with_capacity(literals.len());
            for l in literals {
                match constants[l.var.0] {
                    Some(value) if l.is_satisfied_by(value) => {}
                    Some(_) => return UpdateFunction::Constant(false),
                    None => kept.push(*l),
                }
            }
            if kept.is_empty() {
                UpdateFunction::Constant(true)
            } else {
                UpdateFunction::Conjunction(kept)
            }
        }
    })
}

/// Iterates [`percolate_one_step`] to its fixed point.
///
/// Each non-final step turns at least one more function constant, so this
/// runs at most `network.len()` steps.
pub fn percolate_full(network: &BooleanNetwork) -> BooleanNetwork {
    let mut current = network.clone();
    loop {
        let next = percolate_one_step(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `g_v = v` for every `v` in `vars`, `g_v = f_v` otherwise.
pub fn make_source(network: &BooleanNetwork, vars: &BTreeSet<VarId>) -> BooleanNetwork {
    network.with_functions(|v, function| {
        if vars.contains(&v) {
            UpdateFunction::source(v)
        } else {
            function.clone()
        }
    })
}

/// Replaces `f_v` by the constant `assignment[v]` for every assigned `v`.
pub fn pin_assignment(
    network: &BooleanNetwork,
    assignment: &BTreeMap<VarId, bool>,
) -> BooleanNetwork {
    network.with_functions(|v, function| match assignment.get(&v) {
        Some(&value) => UpdateFunction::Constant(value),
        None => function.clone(),
    })
}
