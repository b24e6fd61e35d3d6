//! 60-tuples of instance automorphisms patterned on the canonical A5.

use std::collections::BTreeSet;

use crate::a5::model::{model, A5_ORDER};
use crate::error::{CfpoError, Result};
use crate::instance::{CfpoInstance, Direction};
use crate::perm::Perm;

/// A tuple (f_0, …, f_59) of pairwise distinct automorphisms whose
/// composition pattern matches the canonical A5 table.
#[derive(Clone)]
pub struct A5Tuple {
    entries: Vec<Perm>,
}

impl A5Tuple {
    /// Validates the tuple: 60 entries, pairwise distinct, and
    /// `f_i ∘ f_j = f_{i·j}` for all 3600 index pairs.
    pub fn try_new(entries: Vec<Perm>) -> Result<A5Tuple> {
        if entries.len() != A5_ORDER {
            return Err(CfpoError::WrongArity(entries.len()));
        }
        let m = model();
        let distinct: BTreeSet<&Perm> = entries.iter().collect();
        if distinct.len() != A5_ORDER {
            return Err(CfpoError::NotA5Tuple("entries are not pairwise distinct".into()));
        }
        for i in 0..A5_ORDER {
            for j in 0..A5_ORDER {
                if entries[i].compose(&entries[j]) != entries[m.mul(i, j)] {
                    return Err(CfpoError::NotA5Tuple(format!(
                        "product pattern fails at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(A5Tuple { entries })
    }

    /// Runs the full validity check on raw entries without consuming them.
    pub fn a5_check(entries: &[Perm]) -> Result<()> {
        A5Tuple::try_new(entries.to_vec()).map(|_| ())
    }

    pub fn entries(&self) -> &[Perm] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Perm {
        &self.entries[i]
    }

    pub fn degree(&self) -> usize {
        self.entries[0].degree()
    }

    /// Union of entry supports (dense indices, sorted).
    pub fn support(&self) -> Vec<usize> {
        let mut s: BTreeSet<usize> = BTreeSet::new();
        for p in &self.entries {
            s.extend(p.support());
        }
        s.into_iter().collect()
    }

    /// Points fixed by every entry.
    pub fn fixed_points(&self) -> Vec<usize> {
        let support: BTreeSet<usize> = self.support().into_iter().collect();
        (0..self.degree()).filter(|i| !support.contains(i)).collect()
    }

    /// Orbits of the tuple on all points.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        crate::group::orbits(&self.entries, self.degree())
    }

    /// Entrywise product `f̄ ∗ ḡ`.  Only valid as an A5 tuple when the two
    /// tuples commute entrywise, which `try_new` re-checks.
    pub fn star(&self, other: &A5Tuple) -> Result<A5Tuple> {
        let entries = (0..A5_ORDER)
            .map(|i| self.entries[i].compose(&other.entries[i]))
            .collect();
        A5Tuple::try_new(entries)
    }

    /// Entrywise commutation `Comm(f̄, ḡ)`: all 3600 pairs commute.
    pub fn commutes_with(&self, other: &A5Tuple) -> bool {
        self.entries
            .iter()
            .any(|f| other.entries.iter().any(|g| !f.commutes_with(g)))
            .eq(&false)
    }

    /// Conjugate tuple `f̄^φ = (φ f_i φ⁻¹)`.
    pub fn conjugate_by(&self, phi: &Perm) -> A5Tuple {
        let inv = phi.inverse();
        let entries = self
            .entries
            .iter()
            .map(|f| phi.compose(f).compose(&inv))
            .collect();
        A5Tuple { entries }
    }

    /// Relisting along an automorphism of the canonical A5 (a map on
    /// canonical indices): the tuple `i ↦ f_{σ(i)}`.
    pub fn relist(&self, sigma: &[u8; A5_ORDER]) -> A5Tuple {
        let entries = (0..A5_ORDER)
            .map(|i| self.entries[sigma[i] as usize].clone())
            .collect();
        A5Tuple { entries }
    }

    /// The subgroup {f_0, …, f_59} as a sorted element set (listing-free).
    pub fn element_set(&self) -> Vec<Perm> {
        let mut v = self.entries.clone();
        v.sort_unstable();
        v
    }

    /// Extended connected components of the support.
    ///
    /// Tree-components of the support are merged whenever some entry maps
    /// one onto another.  A merged class with at least two tree-components
    /// records the unique outside point adjacent to all of them as its
    /// junction.
    pub fn extended_components(&self, instance: &CfpoInstance) -> Result<Vec<EccComponent>> {
        let n = self.degree();
        let support = self.support();
        let in_support = {
            let mut v = vec![false; n];
            for &i in &support {
                v[i] = true;
            }
            v
        };
        // Tree components of the support.
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for &start in &support {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            comp_of[start] = id;
            let mut pts = vec![start];
            while let Some(v) = stack.pop() {
                for &u in instance.up_dense(v).iter().chain(instance.down_dense(v)) {
                    if in_support[u] && comp_of[u] == usize::MAX {
                        comp_of[u] = id;
                        pts.push(u);
                        stack.push(u);
                    }
                }
            }
            pts.sort_unstable();
            comps.push(pts);
        }
        // Union-find merge along the tuple action.
        let mut parent: Vec<usize> = (0..comps.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for f in &self.entries {
            for (c, pts) in comps.iter().enumerate() {
                let image_comp = comp_of[f.apply(pts[0])];
                let (a, b) = (find(&mut parent, c), find(&mut parent, image_comp));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for c in 0..comps.len() {
            let root = find(&mut parent, c);
            classes.entry(root).or_default().push(c);
        }
        let mut out = Vec::new();
        for (_, class) in classes {
            let mut points: Vec<usize> = class.iter().flat_map(|&c| comps[c].iter().copied()).collect();
            points.sort_unstable();
            let junction = if class.len() >= 2 {
                // The unique outside point adjacent to every tree-component.
                let mut counts = vec![0usize; n];
                for &c in &class {
                    let mut adj: BTreeSet<usize> = BTreeSet::new();
                    for &p in &comps[c] {
                        for &q in instance.up_dense(p).iter().chain(instance.down_dense(p)) {
                            if !in_support[q] {
                                adj.insert(q);
                            }
                        }
                    }
                    for q in adj {
                        counts[q] += 1;
                    }
                }
                let hubs: Vec<usize> =
                    (0..n).filter(|&q| counts[q] == class.len()).collect();
                if hubs.len() != 1 {
                    return Err(CfpoError::InvalidArgument(
                        "extended component has no unique junction point".into(),
                    ));
                }
                Some(hubs[0])
            } else {
                None
            };
            out.push(EccComponent { points, junction });
        }
        Ok(out)
    }

    /// Restriction `f̄|^X` where `X` (dense indices) must be a union of
    /// extended components.
    pub fn restrict(&self, x_set: &[usize], instance: &CfpoInstance) -> Result<A5Tuple> {
        let eccs = self.extended_components(instance)?;
        let x: BTreeSet<usize> = x_set.iter().copied().collect();
        let mut covered: BTreeSet<usize> = BTreeSet::new();
        for ecc in &eccs {
            let inside = ecc.points.iter().filter(|p| x.contains(p)).count();
            if inside != 0 && inside != ecc.points.len() {
                return Err(CfpoError::NotEccUnion);
            }
            if inside != 0 {
                covered.extend(ecc.points.iter().copied());
            }
        }
        if covered != x {
            return Err(CfpoError::NotEccUnion);
        }
        let entries = self
            .entries
            .iter()
            .map(|f| f.restrict(x_set, instance))
            .collect::<Result<Vec<_>>>()?;
        A5Tuple::try_new(entries)
    }

    /// Attachment point of an indecomposable tuple: the unique point outside
    /// the support adjacent to it.
    pub fn attachment_point(&self, instance: &CfpoInstance) -> Result<usize> {
        let n = self.degree();
        let support = self.support();
        if support.len() == n {
            return Err(CfpoError::SupportIsEverything);
        }
        let in_support = {
            let mut v = vec![false; n];
            for &i in &support {
                v[i] = true;
            }
            v
        };
        let mut boundary = BTreeSet::new();
        for &p in &support {
            for &q in instance.up_dense(p).iter().chain(instance.down_dense(p)) {
                if !in_support[q] {
                    boundary.insert(q);
                }
            }
        }
        match boundary.len() {
            1 => Ok(*boundary.iter().next().unwrap()),
            _ => Err(CfpoError::AttachmentNotUnique(
                boundary.iter().map(|&q| instance.point_at(q)).collect(),
            )),
        }
    }

    /// Side of the attachment point on which the support lies.
    pub fn direction_at(&self, instance: &CfpoInstance) -> Result<TupleDirection> {
        let x = self.attachment_point(instance)?;
        let support: BTreeSet<usize> = self.support().into_iter().collect();
        let up = instance.up_dense(x).iter().any(|u| support.contains(u));
        let down = instance.down_dense(x).iter().any(|u| support.contains(u));
        Ok(match (up, down) {
            (true, false) => TupleDirection::Up,
            (false, true) => TupleDirection::Down,
            (true, true) => TupleDirection::Both,
            (false, false) => unreachable!("attachment point is adjacent to the support"),
        })
    }
}

/// One extended connected component: its point set and, when it glues
/// several tree-components together, the junction point they share (which
/// is not part of the component's point set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccComponent {
    pub points: Vec<usize>,
    pub junction: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleDirection {
    Up,
    Down,
    Both,
}

impl TupleDirection {
    pub fn as_direction(self) -> Option<Direction> {
        match self {
            TupleDirection::Up => Some(Direction::Up),
            TupleDirection::Down => Some(Direction::Down),
            TupleDirection::Both => None,
        }
    }
    pub fn opposite_of(self, other: TupleDirection) -> bool {
        matches!(
            (self, other),
            (TupleDirection::Up, TupleDirection::Down)
                | (TupleDirection::Down, TupleDirection::Up)
        )
    }
}

/// The natural A5 tuple acting on five chosen leaves of a star-like
/// instance: entry `i` permutes `leaves` by the canonical element `i`.
pub fn natural_tuple_on(leaves: &[usize; 5], n: usize) -> A5Tuple {
    let m = model();
    let entries = (0..A5_ORDER)
        .map(|i| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for (pos, &leaf) in leaves.iter().enumerate() {
                images[leaf] = leaves[m.elems[i][pos] as usize] as u32;
            }
            Perm::from_images(images).expect("leaf action is a bijection")
        })
        .collect();
    A5Tuple::try_new(entries).expect("the natural action is a valid tuple")
}


/// Builds the tuple that permutes five pairwise-isomorphic cones at `apex`
/// (given by their dense root indices) by the canonical A5 action, using
/// canonical isomorphisms between the cones.
pub fn cone_action_tuple(
    instance: &CfpoInstance,
    apex: usize,
    cone_roots: &[usize; 5],
) -> Result<A5Tuple> {
    let n = instance.len();
    // A map per ordered pair (i, j): the canonical isomorphism cone_i → cone_j.
    // Realized by composing "cone_i → cone_0" with "cone_0 → cone_j" images.
    let swaps: Vec<Vec<Vec<u32>>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| cone_iso(instance, apex, cone_roots[i], cone_roots[j]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = model();
    let entries = (0..A5_ORDER)
        .map(|e| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 0..5 {
                let j = m.elems[e][i] as usize;
                let members = cone_members(instance, apex, cone_roots[i]);
                for &p in &members {
                    images[p] = swaps[i][j][p];
                }
            }
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    for p in &entries {
        if !p.is_automorphism_of(instance) {
            return Err(CfpoError::NotAnAutomorphism("cone action entry".into()));
        }
    }
    A5Tuple::try_new(entries)
}

/// Points of the cone at `apex` containing `root` (dense indices).
pub fn cone_members(instance: &CfpoInstance, apex: usize, root: usize) -> Vec<usize> {
    let n = instance.len();
    let mut seen = vec![false; n];
    seen[apex] = true;
    seen[root] = true;
    let mut out = vec![root];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &u in instance.up_dense(v).iter().chain(instance.down_dense(v)) {
            if !seen[u] {
                seen[u] = true;
                out.push(u);
                stack.push(u);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Image table of the canonical isomorphism from the cone at `a` to the cone
/// at `b` (both cones of `apex`), identity off the source cone.  Fails when
/// the cones are not isomorphic.
fn cone_iso(instance: &CfpoInstance, apex: usize, a: usize, b: usize) -> Result<Vec<u32>> {
    let n = instance.len();
    let mut images: Vec<u32> = (0..n as u32).collect();
    map_cone(instance, apex, a, apex, b, &mut images)?;
    Ok(images)
}

fn map_cone(
    instance: &CfpoInstance,
    parent_a: usize,
    a: usize,
    parent_b: usize,
    b: usize,
    images: &mut [u32],
) -> Result<()> {
    images[a] = b as u32;
    let code = |parent: usize, v: usize| -> (u8, String) {
        let dir = if instance.up_dense(parent).contains(&v) { 0u8 } else { 1u8 };
        (dir, instance.rooted_code(v, parent))
    };
    let mut kids_a: Vec<((u8, String), usize)> = instance
        .up_dense(a)
        .iter()
        .chain(instance.down_dense(a))
        .filter(|&&u| u != parent_a)
        .map(|&u| (code(a, u), u))
        .collect();
    let mut kids_b: Vec<((u8, String), usize)> = instance
        .up_dense(b)
        .iter()
        .chain(instance.down_dense(b))
        .filter(|&&u| u != parent_b)
        .map(|&u| (code(b, u), u))
        .collect();
    kids_a.sort();
    kids_b.sort();
    if kids_a.len() != kids_b.len()
        || kids_a.iter().map(|(k, _)| k).ne(kids_b.iter().map(|(k, _)| k))
    {
        return Err(CfpoError::InvalidArgument("cones are not isomorphic".into()));
    }
    for ((_, ua), (_, ub)) in kids_a.into_iter().zip(kids_b) {
        map_cone(instance, a, ua, b, ub, images)?;
    }
    Ok(())
}
