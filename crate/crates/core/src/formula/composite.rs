//! Composite first-order formulas over the atomic layer: represented
//! points, the two temporary path predicates, path-betweenness,
//! relatedness, and the betweenness relation B.
//!
//! All quantifiers range over the (finite) census, so every verdict here is
//! exact relative to the census fed in.

use crate::formula::atoms::AtomBackend;
use std::collections::HashMap;

/// An ordered pair of census indices representing a point.
pub type RepPair = (usize, usize);

/// Evaluates the represented-point formula for one ordered pair:
/// the two tuples are disjoint and every census tuple fails to be disjoint
/// from some tuple sharing a point-direction with one of them.
pub fn rep_point_formula(atoms: &dyn AtomBackend, i: usize, j: usize) -> bool {
    atoms.disj(i, j)
        && (0..atoms.len()).all(|g| {
            (0..atoms.len())
                .any(|h| !atoms.disj(g, h) && (atoms.same_pd(i, h) || atoms.same_pd(j, h)))
        })
}

/// All ordered pairs passing the direct support/attachment characterization
/// of a represented point.
pub fn semantic_reps(census: &crate::a5::census::InstanceCensus) -> Vec<RepPair> {
    let n = census.entries.len();
    let mut reps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if crate::formula::atoms::rep_point_semantic(census, i, j) {
                reps.push((i, j));
            }
        }
    }
    reps
}

/// The represented points of a census plus memo tables for the composite
/// predicates over them.
pub struct CompositeEval<'a> {
    atoms: &'a dyn AtomBackend,
    pub reps: Vec<RepPair>,
    temp1_memo: HashMap<(usize, usize, usize), bool>,
}

impl<'a> CompositeEval<'a> {
    /// Domain given by the represented-point formula itself.  In a finite
    /// structure this is conservative: the universal tuple quantifier can
    /// be defeated by far-away tuples that no locally supported tuple
    /// reaches, so pairs at peripheral points may be rejected.
    pub fn new(atoms: &'a dyn AtomBackend) -> CompositeEval<'a> {
        let n = atoms.len();
        let mut reps = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rep_point_formula(atoms, i, j) {
                    reps.push((i, j));
                }
            }
        }
        CompositeEval::with_reps(atoms, reps)
    }

    /// Domain supplied by the caller (for example, the pairs passing the
    /// direct support/attachment characterization).
    pub fn with_reps(atoms: &'a dyn AtomBackend, reps: Vec<RepPair>) -> CompositeEval<'a> {
        CompositeEval { atoms, reps, temp1_memo: HashMap::new() }
    }

    pub fn atoms(&self) -> &dyn AtomBackend {
        self.atoms
    }

    /// Same represented point: the pairs match componentwise up to swap.
    pub fn eq_rep(&self, p: usize, q: usize) -> bool {
        let (a, b) = (self.reps[p], self.reps[q]);
        (self.atoms.same_pd(a.0, b.0) && self.atoms.same_pd(a.1, b.1))
            || (self.atoms.same_pd(a.0, b.1) && self.atoms.same_pd(a.1, b.0))
    }

    /// Temp1PB(g; h, k): some pair at g's point meets both components of h
    /// on one side and both components of k on the other.
    pub fn temp1(&mut self, g: usize, h: usize, k: usize) -> bool {
        if let Some(&v) = self.temp1_memo.get(&(g, h, k)) {
            return v;
        }
        let (hp, kp) = (self.reps[h], self.reps[k]);
        let v = (0..self.reps.len()).any(|l| {
            let lp = self.reps[l];
            self.eq_rep(g, l)
                && !self.atoms.disj(lp.0, hp.0)
                && !self.atoms.disj(lp.0, hp.1)
                && !self.atoms.disj(lp.1, kp.0)
                && !self.atoms.disj(lp.1, kp.1)
        });
        self.temp1_memo.insert((g, h, k), v);
        v
    }

    /// Temp2PB(g; h, k): g's point is a local extremum of a path between the
    /// points of h and k.  Symmetrized over the two orientations of g's pair.
    pub fn temp2(&mut self, g: usize, h: usize, k: usize) -> bool {
        if self.eq_rep(g, h) || self.eq_rep(g, k) || self.eq_rep(h, k) {
            return false;
        }
        let gp = self.reps[g];
        for (g0, g1) in [(gp.0, gp.1), (gp.1, gp.0)] {
            let sides = [self.reps[h].0, self.reps[h].1, self.reps[k].0, self.reps[k].1];
            let phi = sides.iter().all(|&s| self.atoms.meets(s, g1))
                && sides.iter().all(|&s| !self.atoms.meets(s, g0));
            if !phi {
                continue;
            }
            let all_l = (0..self.reps.len()).all(|l| {
                let lp = self.reps[l];
                if !(self.atoms.meets(lp.0, g0) && self.atoms.meets(lp.1, g0)) {
                    return true;
                }
                self.temp1(g, l, k) && self.temp1(g, l, h)
            });
            if all_l {
                return true;
            }
        }
        false
    }

    /// PathBetween(g; h, k).
    pub fn path_between(&mut self, g: usize, h: usize, k: usize) -> bool {
        self.temp1(g, h, k) || self.temp2(g, h, k)
    }

    /// Related(f, g): every point on a path between them passes straight
    /// through.
    pub fn related(&mut self, f: usize, g: usize) -> bool {
        (0..self.reps.len()).all(|h| !self.path_between(h, f, g) || self.temp1(h, f, g))
    }

    /// B(h; f, g): h lies on the path between f and g and all three are
    /// pairwise related.  At an endpoint this closes up to Related(f, g).
    pub fn b_rel(&mut self, h: usize, f: usize, g: usize) -> bool {
        if self.eq_rep(h, f) || self.eq_rep(h, g) {
            return self.related(f, g);
        }
        self.path_between(h, f, g)
            && self.related(f, g)
            && self.related(f, h)
            && self.related(g, h)
    }

    /// Partitions the represented pairs into point classes under eq_rep.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut class_of: Vec<Option<usize>> = vec![None; self.reps.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for p in 0..self.reps.len() {
            if class_of[p].is_some() {
                continue;
            }
            let id = classes.len();
            let mut members = vec![p];
            class_of[p] = Some(id);
            for q in p + 1..self.reps.len() {
                if class_of[q].is_none() && self.eq_rep(p, q) {
                    class_of[q] = Some(id);
                    members.push(q);
                }
            }
            classes.push(members);
        }
        classes
    }
}

/// Semantic ground-truth counterparts, phrased directly on the tree.  The
/// arguments are dense point indices of an instance; all three must be
/// distinct for the temp predicates to be meaningful.
pub mod semantic {
    use crate::error::Result;
    use crate::instance::CfpoInstance;

    fn path_dense(inst: &CfpoInstance, a: usize, b: usize) -> Result<Vec<usize>> {
        let p = inst.path(inst.point_at(a), inst.point_at(b))?;
        p.points.iter().map(|&pt| inst.index_of(pt)).collect()
    }

    /// The point g is a strict interior point of the path h–k which the
    /// order passes straight through (g comparable with both neighbours on
    /// opposite sides).
    pub fn temp1(inst: &CfpoInstance, g: usize, h: usize, k: usize) -> Result<bool> {
        let path = path_dense(inst, h, k)?;
        let Some(pos) = path.iter().position(|&p| p == g) else { return Ok(false) };
        if pos == 0 || pos + 1 == path.len() {
            return Ok(false);
        }
        let (prev, next) = (path[pos - 1], path[pos + 1]);
        let up = |a: usize, b: usize| inst.up_dense(a).contains(&b);
        // Pass-through: one neighbour below g, the other above.
        Ok((up(prev, g) && up(g, next)) || (up(next, g) && up(g, prev)))
    }

    /// The point g is a strict interior local extremum of the path h–k.
    pub fn temp2(inst: &CfpoInstance, g: usize, h: usize, k: usize) -> Result<bool> {
        let path = path_dense(inst, h, k)?;
        let Some(pos) = path.iter().position(|&p| p == g) else { return Ok(false) };
        if pos == 0 || pos + 1 == path.len() {
            return Ok(false);
        }
        let (prev, next) = (path[pos - 1], path[pos + 1]);
        let up = |a: usize, b: usize| inst.up_dense(a).contains(&b);
        Ok((up(prev, g) && up(next, g)) || (up(g, prev) && up(g, next)))
    }

    /// Strict interior membership of the path.
    pub fn path_between(inst: &CfpoInstance, g: usize, h: usize, k: usize) -> Result<bool> {
        let path = path_dense(inst, h, k)?;
        Ok(path.len() > 2 && path[1..path.len() - 1].contains(&g))
    }

    /// Order-comparability.
    pub fn related(inst: &CfpoInstance, f: usize, g: usize) -> Result<bool> {
        Ok(inst.order_leq(inst.point_at(f), inst.point_at(g))?
            || inst.order_leq(inst.point_at(g), inst.point_at(f))?)
    }

    /// h on the path f–g with all three pairwise comparable.  Closes up to
    /// comparability of the endpoints when h coincides with one.
    pub fn b_rel(inst: &CfpoInstance, h: usize, f: usize, g: usize) -> Result<bool> {
        if h == f || h == g {
            return related(inst, f, g);
        }
        Ok(path_between(inst, h, f, g)?
            && related(inst, f, g)?
            && related(inst, f, h)?
            && related(inst, g, h)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::a5::census::engineered_census;
    use crate::formula::atoms::SemanticAtoms;
    use crate::generators::gen_nested_star;

    #[test]
    fn nested_star_composites_match_tree() {
        let inst = gen_nested_star(5, 5).unwrap();
        let census = engineered_census(&inst).unwrap();
        let atoms = SemanticAtoms::new(&census);
        let mut eval = CompositeEval::with_reps(&atoms, semantic_reps(&census));
        // One up/down pair per skeleton point: centre + 10 arm ends.
        let classes = eval.classes();
        assert_eq!(classes.len(), 11);

        // The formula-defined domain is narrower here: a tuple deep in one
        // arm defeats the universal quantifier for pairs at other arms, so
        // only the centre pair survives.
        let narrow = CompositeEval::new(&atoms);
        assert_eq!(narrow.classes().len(), 1);

        // Map each class to the shared attachment point of its first pair.
        let class_pts: Vec<usize> = classes
            .iter()
            .map(|c| census.entries[eval.reps[c[0]].0].attachment.unwrap())
            .collect();
        let rep_of = |cls: usize| classes[cls][0];

        for a in 0..classes.len() {
            for b in 0..classes.len() {
                if a == b {
                    continue;
                }
                let rel = eval.related(rep_of(a), rep_of(b));
                let truth = semantic::related(&inst, class_pts[a], class_pts[b]).unwrap();
                assert_eq!(rel, truth, "related on points {} {}", class_pts[a], class_pts[b]);
                for c in 0..classes.len() {
                    if c == a || c == b {
                        continue;
                    }
                    let pb = eval.path_between(rep_of(c), rep_of(a), rep_of(b));
                    let pb_truth =
                        semantic::path_between(&inst, class_pts[c], class_pts[a], class_pts[b])
                            .unwrap();
                    assert_eq!(pb, pb_truth, "path_between {:?}", (c, a, b));
                    let b_v = eval.b_rel(rep_of(c), rep_of(a), rep_of(b));
                    let b_truth =
                        semantic::b_rel(&inst, class_pts[c], class_pts[a], class_pts[b]).unwrap();
                    assert_eq!(b_v, b_truth, "b_rel {:?}", (c, a, b));
                }
            }
        }
    }
}
