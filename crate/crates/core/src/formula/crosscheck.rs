//! Side-by-side evaluation of the semantic and syntactic backends on the
//! same census, reporting every disagreement.

use serde::Serialize;

use crate::a5::census::InstanceCensus;
use crate::formula::atoms::{rep_point_semantic, AtomBackend, SemanticAtoms, SyntacticAtoms};
use crate::formula::composite::rep_point_formula;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Discrepancy {
    pub atom: String,
    pub args: Vec<usize>,
    pub semantic: bool,
    pub syntactic: bool,
}

/// Compares every atomic predicate on every argument tuple.  The returned
/// list is empty exactly when the two backends agree on the census.
pub fn crosscheck_atoms(census: &InstanceCensus, syn: &SyntacticAtoms) -> Vec<Discrepancy> {
    let sem = SemanticAtoms::new(census);
    let n = census.entries.len();
    assert_eq!(n, syn.len(), "census and atom table sizes differ");
    let mut out = Vec::new();
    let mut push = |atom: &str, args: Vec<usize>, s: bool, y: bool| {
        if s != y {
            out.push(Discrepancy { atom: atom.to_string(), args, semantic: s, syntactic: y });
        }
    };
    for i in 0..n {
        push("indec", vec![i], sem.indec(i), syn.indec(i));
        for j in 0..n {
            push("disj", vec![i, j], sem.disj(i, j), syn.disj(i, j));
            push("subseteq", vec![i, j], sem.subseteq(i, j), syn.subseteq(i, j));
            push("same_pd", vec![i, j], sem.same_pd(i, j), syn.same_pd(i, j));
            push(
                "rep_point",
                vec![i, j],
                rep_point_semantic(census, i, j),
                rep_point_formula(syn, i, j),
            );
        }
    }
    out
}
