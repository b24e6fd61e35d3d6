//! Atomic predicates over census tuples, in two backends.
//!
//! The semantic backend reads supports and attachment points off the
//! instance.  The syntactic backend works at subgroup level over a fully
//! enumerated group: conjugation quantifiers become bitset scans, which is
//! sound because the atomic formulas are invariant under relisting.

use crate::a5::census::{AbstractCensus, InstanceCensus};
use crate::a5::model::{model, A5_ORDER, AUTOMORPHISMS};
use crate::error::{CfpoError, Result};
use crate::group::FiniteGroup;

/// The atomic predicates the composite formulas consume.  Arguments are
/// census-entry indices.
pub trait AtomBackend {
    fn len(&self) -> usize;
    fn indec(&self, i: usize) -> bool;
    fn disj(&self, i: usize, j: usize) -> bool;
    fn subseteq(&self, i: usize, j: usize) -> bool;
    fn same_pd(&self, i: usize, j: usize) -> bool;
    /// Whether the supports of the two tuples intersect.
    fn meets(&self, i: usize, j: usize) -> bool;

    fn subsetneq(&self, i: usize, j: usize) -> bool {
        self.subseteq(i, j) && !self.subseteq(j, i)
    }
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Semantic atoms: direct support/attachment characterizations.
pub struct SemanticAtoms<'a> {
    census: &'a InstanceCensus,
}

impl<'a> SemanticAtoms<'a> {
    pub fn new(census: &'a InstanceCensus) -> SemanticAtoms<'a> {
        SemanticAtoms { census }
    }

    fn supp_subset(&self, i: usize, j: usize) -> bool {
        let b = &self.census.entries[j].support;
        self.census.entries[i]
            .support
            .iter()
            .all(|p| b.binary_search(p).is_ok())
    }
}

impl AtomBackend for SemanticAtoms<'_> {
    fn len(&self) -> usize {
        self.census.entries.len()
    }
    fn indec(&self, i: usize) -> bool {
        self.census.entries[i].indec
    }
    fn disj(&self, i: usize, j: usize) -> bool {
        self.indec(i) && self.indec(j) && !self.meets(i, j)
    }
    fn subseteq(&self, i: usize, j: usize) -> bool {
        // Equal supports, or proper containment with the smaller tuple's
        // attachment point swallowed by the bigger support.  A shared
        // attachment point with unequal supports is side-by-side, not
        // nested.
        if !(self.indec(i) && self.indec(j) && self.meets(i, j) && self.supp_subset(i, j)) {
            return false;
        }
        self.census.entries[i].support.len() == self.census.entries[j].support.len()
            || self.census.entries[j]
                .support
                .binary_search(&self.census.entries[i].attachment.unwrap())
                .is_ok()
    }
    fn same_pd(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.census.entries[i], &self.census.entries[j]);
        a.indec && b.indec && a.attachment == b.attachment && a.direction == b.direction
    }
    fn meets(&self, i: usize, j: usize) -> bool {
        self.census.entries[i].supports_meet(&self.census.entries[j])
    }
}

/// Semantic represented-point pair: equal attachments, strictly opposite
/// directions, disjoint supports.
pub fn rep_point_semantic(census: &InstanceCensus, i: usize, j: usize) -> bool {
    let (a, b) = (&census.entries[i], &census.entries[j]);
    a.indec
        && b.indec
        && a.attachment == b.attachment
        && match (a.direction, b.direction) {
            (Some(da), Some(db)) => da.opposite_of(db),
            _ => false,
        }
        && !a.supports_meet(b)
}

type Bitset = Vec<u64>;

fn bit(bs: &Bitset, i: usize) -> bool {
    bs[i / 64] >> (i % 64) & 1 == 1
}
fn set_bit(bs: &mut Bitset, i: usize) {
    bs[i / 64] |= 1 << (i % 64);
}

/// Syntactic atoms, precomputed over a fully enumerated group.
pub struct SyntacticAtoms {
    n: usize,
    indec: Vec<bool>,
    disj: Vec<Vec<bool>>,
    subseteq: Vec<Vec<bool>>,
    same_pd: Vec<Vec<bool>>,
    meets: Vec<Vec<bool>>,
    /// Criterion data: the universal and negated-existential renderings of
    /// supp ⊑ were evaluated this many times and always agreed.
    pub renderings_checked: usize,
    pub renderings_agreed: usize,
    /// How often the transcription with the antecedent and consequent of the
    /// second clause exchanged deviates from the negated-existential form.
    pub exchanged_clause_disagreements: usize,
}

impl SyntacticAtoms {
    /// Builds all tables.  `supports`: the support sets of the aligned
    /// instance census when available (sorted dense indices); otherwise
    /// support intersection falls back to ¬disj.
    pub fn build<G: FiniteGroup + ?Sized>(
        group: &G,
        census: &AbstractCensus,
        supports: Option<&[Vec<usize>]>,
    ) -> Result<SyntacticAtoms> {
        if !census.complete {
            return Err(CfpoError::CensusIncomplete);
        }
        let n = census.subgroups.len();
        let ord = group.order();
        let words = ord.div_ceil(64);

        // Elementwise centralizing of subgroup pairs, via generators.
        let commute = |a: usize, b: usize| group.mul(a, b) == group.mul(b, a);
        let mut perp = vec![vec![false; n]; n];
        for i in 0..n {
            let (xi, yi) = census.subgroups[i].gens;
            for j in 0..n {
                let (xj, yj) = census.subgroups[j].gens;
                perp[i][j] =
                    commute(xi, xj) && commute(xi, yj) && commute(yi, xj) && commute(yi, yj);
            }
        }

        // Centralizer bitsets.
        let mut cent: Vec<Bitset> = Vec::with_capacity(n);
        for sub in &census.subgroups {
            let (x, y) = sub.gens;
            let mut bs = vec![0u64; words];
            for phi in 0..ord {
                if commute(phi, x) && commute(phi, y) {
                    set_bit(&mut bs, phi);
                }
            }
            cent.push(bs);
        }

        let indec = compute_indec(group, census, &perp);

        // Bad(F) = {φ : ¬disj(F^φ, F)}.
        let mut bad: Vec<Bitset> = Vec::with_capacity(n);
        for i in 0..n {
            let mut bs = vec![0u64; words];
            if !indec[i] {
                bs.iter_mut().for_each(|w| *w = !0);
            } else {
                let (x, y) = census.subgroups[i].gens;
                for phi in 0..ord {
                    let inv = group.inv(phi);
                    let cx = group.mul(group.mul(phi, x), inv);
                    let cy = group.mul(group.mul(phi, y), inv);
                    if !(bit(&cent[i], cx) && bit(&cent[i], cy)) {
                        set_bit(&mut bs, phi);
                    }
                }
            }
            bad.push(bs);
        }

        let mut disj = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                disj[i][j] = indec[i] && indec[j] && perp[i][j];
            }
        }

        // Masks off the padding bits past the group order.
        let tail_mask: u64 = if ord % 64 == 0 { !0 } else { (1u64 << (ord % 64)) - 1 };
        let subset = |a: &Bitset, b: &Bitset| -> bool {
            let last = words - 1;
            (0..words).all(|w| {
                let excess = a[w] & !b[w];
                if w == last { excess & tail_mask == 0 } else { excess == 0 }
            })
        };

        let mut subseteq = vec![vec![false; n]; n];
        let mut renderings_checked = 0;
        let mut renderings_agreed = 0;
        let mut exchanged = 0;
        for i in 0..n {
            for j in 0..n {
                let guard = indec[i] && indec[j] && !disj[i][j];
                // Universal rendering of the two conjugation clauses:
                // every φ not moving the left tuple clear of itself also
                // fails to move the right one clear; every φ centralizing
                // the left tuple centralizes the right.
                let forall = guard && subset(&bad[i], &bad[j]) && subset(&cent[i], &cent[j]);
                // Negated-existential rendering of the same clauses.
                let notexists = guard
                    && !(0..ord).any(|phi| bit(&bad[i], phi) && !bit(&bad[j], phi))
                    && !(0..ord).any(|phi| bit(&cent[i], phi) && !bit(&cent[j], phi));
                renderings_checked += 1;
                if forall == notexists {
                    renderings_agreed += 1;
                }
                // The transcription with the second clause's antecedent and
                // consequent exchanged: every φ moving the right tuple must
                // centralize the left one.
                let exchanged_form = guard
                    && subset(&bad[i], &bad[j])
                    && (0..ord).all(|phi| bit(&cent[j], phi) || bit(&cent[i], phi));
                if exchanged_form != notexists {
                    exchanged += 1;
                }
                subseteq[i][j] = notexists;
            }
        }

        let mut same_pd = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                same_pd[i][j] = (0..n).all(|h| {
                    (subseteq[h][i] && !subseteq[i][h]) == (subseteq[h][j] && !subseteq[j][h])
                });
            }
        }

        let mut meets = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                meets[i][j] = match supports {
                    Some(s) => {
                        let (a, b) = (&s[i], &s[j]);
                        a.iter().any(|p| b.binary_search(p).is_ok())
                    }
                    None => !disj[i][j],
                };
            }
        }

        Ok(SyntacticAtoms {
            n,
            indec,
            disj,
            subseteq,
            same_pd,
            meets,
            renderings_checked,
            renderings_agreed,
            exchanged_clause_disagreements: exchanged,
        })
    }
}

/// Syntactic indecomposability: no pair of entrywise-commuting census
/// listings multiplies entrywise to a listing of the subgroup.
fn compute_indec<G: FiniteGroup + ?Sized>(
    group: &G,
    census: &AbstractCensus,
    perp: &[Vec<bool>],
) -> Vec<bool> {
    let n = census.subgroups.len();
    let m = model();
    (0..n)
        .map(|f| {
            let target = &census.subgroups[f].listing;
            let mut decomposable = false;
            'outer: for g in 0..n {
                for h in 0..n {
                    if !perp[g][h] {
                        continue;
                    }
                    let g_list = &census.subgroups[g].listing;
                    let h_elems = &census.subgroups[h].elements;
                    for sigma in AUTOMORPHISMS.iter() {
                        // Candidate second factor: h_t = g_t⁻¹ · f_t.
                        let mut cand = [0usize; A5_ORDER];
                        let mut ok = true;
                        for t in 0..A5_ORDER {
                            let gt = g_list[sigma[t] as usize];
                            let ht = group.mul(group.inv(gt), target[t]);
                            if h_elems.binary_search(&ht).is_err() {
                                ok = false;
                                break;
                            }
                            cand[t] = ht;
                        }
                        if !ok {
                            continue;
                        }
                        // The candidate must itself follow the product
                        // pattern with distinct entries.
                        let mut seen = std::collections::BTreeSet::new();
                        if !cand.iter().all(|&e| seen.insert(e)) {
                            continue;
                        }
                        let pattern_ok = (0..A5_ORDER).all(|s| {
                            (0..A5_ORDER)
                                .all(|t| group.mul(cand[s], cand[t]) == cand[m.mul(s, t)])
                        });
                        if pattern_ok {
                            decomposable = true;
                            break 'outer;
                        }
                    }
                }
            }
            !decomposable
        })
        .collect()
}

impl AtomBackend for SyntacticAtoms {
    fn len(&self) -> usize {
        self.n
    }
    fn indec(&self, i: usize) -> bool {
        self.indec[i]
    }
    fn disj(&self, i: usize, j: usize) -> bool {
        self.disj[i][j]
    }
    fn subseteq(&self, i: usize, j: usize) -> bool {
        self.subseteq[i][j]
    }
    fn same_pd(&self, i: usize, j: usize) -> bool {
        self.same_pd[i][j]
    }
    fn meets(&self, i: usize, j: usize) -> bool {
        self.meets[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a5::census::census_from_group;
    use crate::generators::gen_star;
    use crate::group::automorphism_group;

    fn setup(u: usize, d: usize) -> (InstanceCensus, SyntacticAtoms) {
        let inst = gen_star(u, d).unwrap();
        let full = automorphism_group(&inst).enumerate(inst.len(), 1_000_000).unwrap();
        let (census, abs) = census_from_group(&inst, &full).unwrap();
        let supports: Vec<Vec<usize>> =
            census.entries.iter().map(|e| e.support.clone()).collect();
        let atoms = SyntacticAtoms::build(&full, &abs, Some(&supports)).unwrap();
        (census, atoms)
    }

    #[test]
    fn star5_atoms() {
        let (census, syn) = setup(5, 0);
        let sem = SemanticAtoms::new(&census);
        assert_eq!(syn.len(), 1);
        assert!(syn.indec(0) && sem.indec(0));
        assert!(syn.subseteq(0, 0) && sem.subseteq(0, 0));
        assert!(!syn.subsetneq(0, 0));
        assert!(syn.same_pd(0, 0) && sem.same_pd(0, 0));
        assert!(!syn.disj(0, 0) && !sem.disj(0, 0));
        assert_eq!(syn.renderings_checked, syn.renderings_agreed);
    }

    #[test]
    fn star_5_5_disjoint_pair() {
        let (census, syn) = setup(5, 5);
        let sem = SemanticAtoms::new(&census);
        // Locate the two one-sided tuples: the only indecomposable ones.
        let indec: Vec<usize> = (0..syn.len()).filter(|&i| syn.indec(i)).collect();
        assert_eq!(indec.len(), 2);
        let (a, b) = (indec[0], indec[1]);
        assert!(sem.indec(a) && sem.indec(b));
        assert!(syn.disj(a, b) && sem.disj(a, b));
        assert!(!syn.subseteq(a, b) && !sem.subseteq(a, b));
        // The 120 diagonal subgroups decompose both ways.
        for i in 0..syn.len() {
            assert_eq!(syn.indec(i), sem.indec(i), "entry {i}");
        }
        // Represented point: the two one-sided tuples at the root.
        assert!(rep_point_semantic(&census, a, b));
    }
}
