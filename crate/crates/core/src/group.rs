//! Permutation groups, automorphism groups of instances, and abstract
//! finite-group interfaces (multiplication table or enumerated elements).

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CfpoError, Result};
use crate::instance::{CfpoInstance, Direction, PointId};
use crate::perm::Perm;

/// Default cap on group enumeration.
pub const DEFAULT_GROUP_ORDER_BOUND: usize = 1_000_000;

/// A finite group presented only through composition: the reconstruction
/// pipeline consumes this interface and nothing else.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    /// Index of `a · b` (apply `b` first when elements are permutations).
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn id(&self) -> usize;

    fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.id() {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a sorted list of element indices.
    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.id()];
        seen[self.id()] = true;
        let mut queue: VecDeque<usize> = [self.id()].into();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Explicit multiplication table.
#[derive(Clone, Serialize, Deserialize)]
pub struct GroupTable {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n) {
            return Err(CfpoError::InvalidArgument("table is not square".into()));
        }
        for row in &table {
            if row.iter().any(|&x| x >= n) {
                return Err(CfpoError::InvalidArgument("table entry out of range".into()));
            }
        }
        let gt = GroupTable { order: n, table };
        // Identity: index e with e·x = x·e = x for all x.
        if gt.find_identity().is_none() {
            return Err(CfpoError::InvalidArgument("table has no identity".into()));
        }
        Ok(gt)
    }

    fn find_identity(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|x| self.table[e][x] == x && self.table[x][e] == x)
        })
    }

    pub fn read_json(path: &std::path::Path) -> Result<GroupTable> {
        let text = std::fs::read_to_string(path)?;
        let raw: GroupTable = serde_json::from_str(&text)?;
        GroupTable::new(raw.table)
    }
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.order
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    fn inv(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.table[a][b] == self.id())
            .expect("every row of a group table contains the identity")
    }
    fn id(&self) -> usize {
        self.find_identity().expect("validated at construction")
    }
}

/// A fully enumerated permutation group with fast index lookup.
pub struct EnumeratedGroup {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    identity: usize,
}

impl EnumeratedGroup {
    pub fn new(elements: Vec<Perm>) -> Result<EnumeratedGroup> {
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        if index.len() != elements.len() {
            return Err(CfpoError::InvalidArgument("duplicate group elements".into()));
        }
        let identity = elements
            .iter()
            .position(|p| p.is_identity())
            .ok_or_else(|| CfpoError::InvalidArgument("missing identity".into()))?;
        Ok(EnumeratedGroup { elements, index, identity })
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn to_table(&self) -> GroupTable {
        let n = self.elements.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
            .collect();
        GroupTable { order: n, table }
    }
}

impl FiniteGroup for EnumeratedGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]);
        self.index[&p]
    }
    fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }
    fn id(&self) -> usize {
        self.identity
    }
}

/// The automorphism group of an instance, held by generators with the exact
/// order computed structurally (product of factorials over sibling classes).
pub struct PermGroup {
    pub generators: Vec<Perm>,
    /// Exact order; `None` when it exceeds `u128`.
    pub order: Option<u128>,
}

impl PermGroup {
    pub fn from_generators(generators: Vec<Perm>, instance: &CfpoInstance) -> Result<PermGroup> {
        for g in &generators {
            if !g.is_automorphism_of(instance) {
                return Err(CfpoError::NotAnAutomorphism("generator".into()));
            }
        }
        Ok(PermGroup { generators, order: None })
    }

    /// Enumerates all elements, failing once `bound` is exceeded.
    pub fn enumerate(&self, n: usize, bound: usize) -> Result<EnumeratedGroup> {
        let mut elements = vec![Perm::identity(n)];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(elements[0].clone(), ());
        let mut queue: VecDeque<usize> = [0usize].into();
        while let Some(i) = queue.pop_front() {
            let base = elements[i].clone();
            for g in &self.generators {
                let p = g.compose(&base);
                if !seen.contains_key(&p) {
                    if elements.len() >= bound {
                        return Err(CfpoError::OrderExceedsBound {
                            bound,
                            reached: elements.len() + 1,
                        });
                    }
                    seen.insert(p.clone(), ());
                    elements.push(p);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        elements.sort_unstable();
        EnumeratedGroup::new(elements)
    }
}

/// Orbits of a set of permutations on dense indices, sorted by minimum point.
pub fn orbits(perms: &[Perm], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue: VecDeque<usize> = [start].into();
        while let Some(x) = queue.pop_front() {
            for p in perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Computes the automorphism group of an instance.
///
/// The underlying tree is rooted at a centre (every automorphism fixes the
/// centre, and when there are two centres the edge orientation pins both).
/// Generators are adjacent transpositions of isomorphic sibling subtrees;
/// the exact order is the product over all vertices and sibling classes of
/// `k!` where `k` is the class size.
pub fn automorphism_group(instance: &CfpoInstance) -> PermGroup {
    let n = instance.len();
    if n == 1 {
        return PermGroup { generators: vec![], order: Some(1) };
    }
    let root = tree_centre(instance);

    // BFS rooting: parent of each dense index, children grouped per vertex.
    let mut parent = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order_visit = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut head = 0;
    while head < order_visit.len() {
        let v = order_visit[head];
        head += 1;
        for &u in instance.up_dense(v).iter().chain(instance.down_dense(v)) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                children[v].push(u);
                order_visit.push(u);
            }
        }
    }

    // Canonical code of each rooted subtree, with edge direction folded in.
    let mut code: Vec<String> = vec![String::new(); n];
    for &v in order_visit.iter().rev() {
        let mut kid_codes: Vec<String> = children[v]
            .iter()
            .map(|&u| {
                let dir = if instance.up_dense(v).contains(&u) { 'u' } else { 'd' };
                format!("{dir}{}", code[u])
            })
            .collect();
        kid_codes.sort();
        code[v] = format!("({})", kid_codes.concat());
    }

    let mut generators = Vec::new();
    let mut order: Option<u128> = Some(1);
    for &v in &order_visit {
        // Group children by (direction, code).
        let mut classes: HashMap<(Direction, &str), Vec<usize>> = HashMap::new();
        for &u in &children[v] {
            let dir = if instance.up_dense(v).contains(&u) { Direction::Up } else { Direction::Down };
            classes.entry((dir, code[u].as_str())).or_default().push(u);
        }
        let mut keys: Vec<_> = classes.keys().cloned().collect();
        keys.sort_by(|a, b| (a.0 as u8, a.1).cmp(&(b.0 as u8, b.1)));
        for key in keys {
            let class = &classes[&key];
            let k = class.len() as u128;
            order = order.and_then(|o| (1..=k).try_fold(o, |acc, i| acc.checked_mul(i)));
            for w in class.windows(2) {
                generators.push(subtree_swap(instance, &children, w[0], w[1]));
            }
        }
    }
    PermGroup { generators, order }
}

/// Centre of the underlying (undirected) tree; when there are two, the one
/// with the smaller dense index.
fn tree_centre(instance: &CfpoInstance) -> usize {
    let n = instance.len();
    let mut degree: Vec<usize> = (0..n)
        .map(|v| instance.up_dense(v).len() + instance.down_dense(v).len())
        .collect();
    let mut removed = vec![false; n];
    let mut remaining = n;
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            remaining -= 1;
            for &u in instance.up_dense(v).iter().chain(instance.down_dense(v)) {
                if !removed[u] {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).find(|&v| !removed[v]).expect("tree has a centre")
}

/// The automorphism swapping the isomorphic subtrees rooted at `a` and `b`
/// (children of a common vertex), identity elsewhere.
fn subtree_swap(instance: &CfpoInstance, children: &[Vec<usize>], a: usize, b: usize) -> Perm {
    let n = instance.len();
    let mut images: Vec<u32> = (0..n as u32).collect();
    map_subtree(instance, children, a, b, &mut images);
    map_subtree(instance, children, b, a, &mut images);
    Perm::from_images(images).expect("subtree swap is a bijection")
}

/// Recursively maps the subtree at `a` onto the isomorphic subtree at `b`,
/// matching children in canonical order within each (direction, code) class.
fn map_subtree(
    instance: &CfpoInstance,
    children: &[Vec<usize>],
    a: usize,
    b: usize,
    images: &mut [u32],
) {
    images[a] = b as u32;
    let key = |v: usize, u: usize| -> (u8, String) {
        let dir = if instance.up_dense(v).contains(&u) { 0u8 } else { 1u8 };
        (dir, subtree_code(instance, children, u))
    };
    let mut kids_a: Vec<((u8, String), usize)> =
        children[a].iter().map(|&u| (key(a, u), u)).collect();
    let mut kids_b: Vec<((u8, String), usize)> =
        children[b].iter().map(|&u| (key(b, u), u)).collect();
    kids_a.sort();
    kids_b.sort();
    for ((ka, ua), (kb, ub)) in kids_a.into_iter().zip(kids_b) {
        debug_assert_eq!(ka, kb, "subtrees are isomorphic");
        map_subtree(instance, children, ua, ub, images);
    }
}

fn subtree_code(instance: &CfpoInstance, children: &[Vec<usize>], v: usize) -> String {
    let mut kid_codes: Vec<String> = children[v]
        .iter()
        .map(|&u| {
            let dir = if instance.up_dense(v).contains(&u) { 'u' } else { 'd' };
            format!("{dir}{}", subtree_code(instance, children, u))
        })
        .collect();
    kid_codes.sort();
    format!("({})", kid_codes.concat())
}

/// JSON form of a generator set, using external point ids.
#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    pub generators: Vec<PermFile>,
}

/// JSON form of one permutation: `images[i]` is the image of the i-th point
/// in the instance's sorted point list.
#[derive(Serialize, Deserialize)]
pub struct PermFile {
    pub images: Vec<PointId>,
}

impl PermFile {
    pub fn to_perm(&self, instance: &CfpoInstance) -> Result<Perm> {
        if self.images.len() != instance.len() {
            return Err(CfpoError::MismatchedPoints("permutation length".into()));
        }
        let mut images = Vec::with_capacity(self.images.len());
        for &pid in &self.images {
            images.push(instance.index_of(pid)? as u32);
        }
        Perm::from_images(images)
    }

    pub fn from_perm(p: &Perm, instance: &CfpoInstance) -> PermFile {
        PermFile { images: p.to_point_images(instance) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_star;

    #[test]
    fn star_5_automorphisms() {
        let inst = gen_star(5, 0).unwrap();
        let grp = automorphism_group(&inst);
        assert_eq!(grp.order, Some(120));
        let full = grp.enumerate(inst.len(), DEFAULT_GROUP_ORDER_BOUND).unwrap();
        assert_eq!(full.order(), 120);
        for p in &full.elements {
            assert!(p.is_automorphism_of(&inst));
        }
    }

    #[test]
    fn star_2_2_order_four() {
        let inst = gen_star(2, 2).unwrap();
        let grp = automorphism_group(&inst);
        assert_eq!(grp.order, Some(4));
        assert_eq!(grp.enumerate(inst.len(), 100).unwrap().order(), 4);
    }

    #[test]
    fn star_5_5_order() {
        let inst = gen_star(5, 5).unwrap();
        let grp = automorphism_group(&inst);
        assert_eq!(grp.order, Some(14400));
    }

    #[test]
    fn enumeration_bound_enforced() {
        let inst = gen_star(6, 0).unwrap();
        let grp = automorphism_group(&inst);
        assert_eq!(grp.order, Some(720));
        match grp.enumerate(inst.len(), 100) {
            Err(CfpoError::OrderExceedsBound { bound: 100, .. }) => {}
            Err(other) => panic!("expected bound error, got {other:?}"),
            Ok(_) => panic!("expected bound error, got a full enumeration"),
        }
    }

    #[test]
    fn orbits_of_star() {
        let inst = gen_star(5, 0).unwrap();
        let grp = automorphism_group(&inst);
        let full = grp.enumerate(inst.len(), 1000).unwrap();
        let orbs = orbits(&full.elements, inst.len());
        let mut sizes: Vec<usize> = orbs.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 5]);
    }

    #[test]
    fn table_round_trip_is_group() {
        let inst = gen_star(2, 2).unwrap();
        let full = automorphism_group(&inst).enumerate(inst.len(), 100).unwrap();
        let table = full.to_table();
        assert_eq!(table.order(), 4);
        // Abelian: Z2 × Z2.
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(table.mul(a, b), table.mul(b, a));
            }
        }
    }
}
