//! The first-order formula layer: atomic predicates on census tuples, the
//! composite point/path/betweenness formulas built from them, and the
//! order-recovery formulas.

pub mod atoms;
pub mod composite;
pub mod crosscheck;
pub mod order;

use serde::Serialize;

/// Which machinery produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Supports, attachment points, and the tree order, read off the
    /// instance directly.
    Semantic,
    /// Group-theoretic formulas evaluated over an enumerated group.
    Syntactic,
}

/// One evaluated formula instance, as reported by the command line tools.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub formula: String,
    pub args: Vec<String>,
    pub backend: Backend,
    pub value: bool,
    /// False when a quantifier or disjunction was truncated in a way that
    /// could change the value.
    pub complete: bool,
}

impl Verdict {
    pub fn new(formula: &str, args: Vec<String>, backend: Backend, value: bool) -> Verdict {
        Verdict { formula: formula.to_string(), args, backend, value, complete: true }
    }
}
