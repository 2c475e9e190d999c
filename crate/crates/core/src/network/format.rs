//! The line-oriented `.anbnet` text format.
//!
//! ```text
//! # comment
//! targets, factors
//! a, !b & c
//! b, !a & !c
//! c, !a
//! ```
//!
//! This is the `.bnet` convention restricted to constants and conjunctions
//! of literals; `|`, parentheses and any other operators are rejected.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{is_valid_name, BooleanNetwork, Literal, NetworkError, UpdateFunction, VarId};

enum RawExpr<'a> {
    Constant(bool),
    Literals(Vec<(&'a str, bool)>),
}

fn syntax(line: usize, message: impl Into<String>) -> NetworkError {
    NetworkError::Syntax {
        line,
        message: message.into(),
    }
}

fn is_header(line: &str) -> bool {
    let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    compact.eq_ignore_ascii_case("targets,factors")
}

fn parse_expr(line: usize, text: &str) -> Result<RawExpr<'_>, NetworkError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(syntax(line, "missing update function"));
    }
    if let Some(op) = text
        .chars()
        .find(|c| matches!(c, '|' | '(' | ')' | '^' | '~'))
    {
        return Err(syntax(
            line,
            format!("operator `{op}` is not allowed in an AND-NOT network"),
        ));
    }
    match text {
        "0" => return Ok(RawExpr::Constant(false)),
        "1" => return Ok(RawExpr::Constant(true)),
        _ => {}
    }
    let mut literals = Vec::new();
    for token in text.split('&') {
        let token = token.trim();
        let (positive, name) = match token.strip_prefix('!') {
            Some(rest) => (false, rest.trim()),
            None => (true, token),
        };
        if name.is_empty() {
            return Err(syntax(line, "empty literal"));
        }
        if !is_valid_name(name) {
            return Err(syntax(line, format!("invalid literal `{token}`")));
        }
        literals.push((name, positive));
    }
    Ok(RawExpr::Literals(literals))
}

/// Parses `.anbnet` text. Variable order is the order of the target lines.
pub fn parse_network(text: &str) -> Result<BooleanNetwork, NetworkError> {
    let mut targets: Vec<(usize, &str, RawExpr<'_>)> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || is_header(line) {
            continue;
        }
        let (target, expr) = line
            .split_once(',')
            .ok_or_else(|| syntax(line_no, "expected `<name>, <expression>`"))?;
        let target = target.trim();
        if !is_valid_name(target) {
            return Err(syntax(line_no, format!("invalid variable name `{target}`")));
        }
        if index.insert(target, targets.len()).is_some() {
            return Err(NetworkError::DuplicateTarget {
                line: Some(line_no),
                name: target.to_string(),
            });
        }
        targets.push((line_no, target, parse_expr(line_no, expr)?));
    }

    if targets.is_empty() {
        return Err(NetworkError::EmptyNetwork);
    }

    let mut functions = Vec::with_capacity(targets.len());
    for (line_no, _, expr) in &targets {
        let function = match expr {
            RawExpr::Constant(value) => UpdateFunction::Constant(*value),
            RawExpr::Literals(raw) => {
                for (k, &(name, _)) in raw.iter().enumerate() {
                    if raw[..k].iter().any(|&(other, _)| other == name) {
                        return Err(NetworkError::DuplicateLiteral {
                            line: Some(*line_no),
                            name: name.to_string(),
                        });
                    }
                }
                let mut literals = Vec::with_capacity(raw.len());
                for &(name, positive) in raw {
                    let var = *index
                        .get(name)
                        .ok_or_else(|| NetworkError::UnknownVariable {
                            line: Some(*line_no),
                            name: name.to_string(),
                        })?;
                    literals.push(if positive {
                        Literal::positive(VarId(var))
                    } else {
                        Literal::negative(VarId(var))
                    });
                }
                UpdateFunction::conjunction(literals)?
            }
        };
        functions.push(function);
    }

    let names = targets
        .iter()
        .map(|(_, name, _)| name.to_string())
        .collect();
    BooleanNetwork::new(names, functions)
}

/// Canonical text: one `name, expr` line per variable in variable order.
pub fn serialize_network(network: &BooleanNetwork) -> String {
    let mut out = String::new();
    for var in network.variables() {
        let _ = writeln!(out, "{}, {}", network.name(var), network.function_text(var));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Sign;

    const CYCLIC3: &str = "a, !b & c\nb, !a & !c\nc, !a\n";

    #[test]
    fn parses_three_variable_example() {
        let net = parse_network(CYCLIC3).unwrap();
        assert_eq!(net.names(), ["a", "b", "c"]);
        let f_a = net.function(VarId(0)).literals();
        assert_eq!(
            f_a,
            [Literal::negative(VarId(1)), Literal::positive(VarId(2))]
        );
        assert_eq!(net.function_text(VarId(1)), "!a & !c");
        assert_eq!(net.function_text(VarId(2)), "!a");
    }

    #[test]
    fn self_literal_is_a_source() {
        let net = parse_network("a, a").unwrap();
        assert!(net.is_source(VarId(0)));
        assert_eq!(net.function(VarId(0)).literals()[0].sign, Sign::Positive);
    }

    #[test]
    fn rejects_duplicate_literal() {
        let err = parse_network("a, b & !b\nb, 1").unwrap_err();
        assert!(
            matches!(err, NetworkError::DuplicateLiteral { line: Some(1), .. }),
            "{err}"
        );
        assert!(matches!(
            parse_network("a, b & !b"),
            Err(NetworkError::DuplicateLiteral { .. })
        ));
    }

    #[test]
    fn rejects_disjunction_and_parentheses() {
        assert!(matches!(
            parse_network("a, b | c\nb, 1\nc, 1"),
            Err(NetworkError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_network("a, (b)\nb, 1"),
            Err(NetworkError::Syntax { .. })
        ));
        assert!(matches!(
            parse_network("a b"),
            Err(NetworkError::Syntax { .. })
        ));
        assert!(matches!(
            parse_network("a, "),
            Err(NetworkError::Syntax { .. })
        ));
        assert!(matches!(
            parse_network("a, b & "),
            Err(NetworkError::Syntax { .. })
        ));
    }

    #[test]
    fn other_structural_errors() {
        assert!(matches!(
            parse_network("a, 1\na, 0"),
            Err(NetworkError::DuplicateTarget { line: Some(2), .. })
        ));
        assert!(matches!(
            parse_network("a, q"),
            Err(NetworkError::UnknownVariable { line: Some(1), .. })
        ));
        assert_eq!(
            parse_network("# nothing\n\n"),
            Err(NetworkError::EmptyNetwork)
        );
    }

    #[test]
    fn ignores_comments_header_and_whitespace() {
        let text = "# three variables\ntargets, factors\n\n  a ,  ! b&c \nb, !a & !c\nc,!a\n";
        assert_eq!(
            parse_network(text).unwrap(),
            parse_network(CYCLIC3).unwrap()
        );
    }

    #[test]
    fn later_declared_variables_may_be_referenced() {
        let net = parse_network("x, y\ny, 0").unwrap();
        assert_eq!(
            net.function(VarId(0)).literals(),
            [Literal::positive(VarId(1))]
        );
    }

    #[test]
    fn serializes_canonically() {
        let net = parse_network(CYCLIC3).unwrap();
        assert_eq!(serialize_network(&net), CYCLIC3);
        let constant = parse_network("a, 1\nb, 0").unwrap();
        assert_eq!(serialize_network(&constant), "a, 1\nb, 0\n");
        // Literal order is canonical (by variable index), not as written.
        let net = parse_network("a, c & !b\nb, 1\nc, 1").unwrap();
        assert!(serialize_network(&net).starts_with("a, !b & c\n"));
    }
}
