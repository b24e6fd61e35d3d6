//! Censuses of A5 tuples: abstract (pair scan over a finite group given by
//! composition only) and engineered (cone actions read off the instance).

use std::collections::HashMap;

use crate::a5::model::{model, A5_ORDER};
use crate::a5::tuple::{cone_action_tuple, A5Tuple, TupleDirection};
use crate::error::Result;
use crate::group::{EnumeratedGroup, FiniteGroup};
use crate::instance::CfpoInstance;

/// One A5 subgroup found abstractly: its sorted element-index set, one
/// generating pair (x of order 2, y of order 3, |xy| = 5) and the canonical
/// listing obtained by evaluating each canonical word at that pair.
pub struct AbstractSubgroup {
    pub elements: Vec<usize>,
    pub gens: (usize, usize),
    pub listing: Vec<usize>,
    /// Number of generating (2,3,5)-pairs observed for this subgroup.
    pub listing_count: usize,
}

pub struct AbstractCensus {
    pub subgroups: Vec<AbstractSubgroup>,
    /// True when the scan covered the whole group.
    pub complete: bool,
}

/// Finds every A5 subgroup of `g` by scanning pairs (x, y) with |x| = 2,
/// |y| = 3, |xy| = 5 whose closure has exactly 60 elements.
pub fn abstract_census<G: FiniteGroup + ?Sized>(g: &G) -> AbstractCensus {
    let n = g.order();
    let mut ord2 = Vec::new();
    let mut ord3 = Vec::new();
    for e in 0..n {
        match g.element_order(e) {
            2 => ord2.push(e),
            3 => ord3.push(e),
            _ => {}
        }
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subgroups: Vec<AbstractSubgroup> = Vec::new();
    for &x in &ord2 {
        for &y in &ord3 {
            if g.element_order(g.mul(x, y)) != 5 {
                continue;
            }
            let closure = bounded_closure(g, x, y, A5_ORDER);
            let Some(elements) = closure else { continue };
            if elements.len() != A5_ORDER {
                continue;
            }
            if let Some(&idx) = seen.get(&elements) {
                subgroups[idx].listing_count += 1;
                continue;
            }
            let listing = listing_from_pair(g, x, y);
            seen.insert(elements.clone(), subgroups.len());
            subgroups.push(AbstractSubgroup { elements, gens: (x, y), listing, listing_count: 1 });
        }
    }
    AbstractCensus { subgroups, complete: true }
}

/// Closure of {x, y}, abandoned (returning `None`) once it exceeds `cap`.
fn bounded_closure<G: FiniteGroup + ?Sized>(
    g: &G,
    x: usize,
    y: usize,
    cap: usize,
) -> Option<Vec<usize>> {
    let mut seen: HashMap<usize, ()> = HashMap::new();
    seen.insert(g.id(), ());
    let mut out = vec![g.id()];
    let mut stack = vec![g.id()];
    while let Some(e) = stack.pop() {
        for gen in [x, y] {
            let f = g.mul(gen, e);
            if !seen.contains_key(&f) {
                if out.len() >= cap {
                    return None;
                }
                seen.insert(f, ());
                out.push(f);
                stack.push(f);
            }
        }
    }
    out.sort_unstable();
    Some(out)
}

/// Listing `i ↦ word_i(x, y)` over the canonical BFS words.
pub fn listing_from_pair<G: FiniteGroup + ?Sized>(g: &G, x: usize, y: usize) -> Vec<usize> {
    let m = model();
    (0..A5_ORDER)
        .map(|i| {
            let mut acc = g.id();
            for letter in m.words[i].chars() {
                acc = g.mul(acc, if letter == 'a' { x } else { y });
            }
            acc
        })
        .collect()
}

/// One census tuple bound to an instance, with its derived invariants.
pub struct CensusEntry {
    pub tuple: A5Tuple,
    pub support: Vec<usize>,
    /// Single extended component and all orbits shorter than 30.
    pub indec: bool,
    pub attachment: Option<usize>,
    pub direction: Option<TupleDirection>,
}

impl CensusEntry {
    pub fn from_tuple(tuple: A5Tuple, instance: &CfpoInstance) -> Result<CensusEntry> {
        let support = tuple.support();
        let eccs = tuple.extended_components(instance)?;
        let indec = eccs.len() == 1 && tuple.orbits().iter().all(|o| o.len() < 30);
        let (attachment, direction) = if indec {
            (
                Some(tuple.attachment_point(instance)?),
                Some(tuple.direction_at(instance)?),
            )
        } else {
            (None, None)
        };
        Ok(CensusEntry { tuple, support, indec, attachment, direction })
    }

    pub fn supports_meet(&self, other: &CensusEntry) -> bool {
        let mut i = 0;
        let mut j = 0;
        while i < self.support.len() && j < other.support.len() {
            match self.support[i].cmp(&other.support[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

pub struct InstanceCensus {
    pub entries: Vec<CensusEntry>,
    /// False for engineered censuses, which list one tuple per subgroup of
    /// cone-permuting actions rather than everything the group contains.
    pub complete: bool,
}

/// Instance census from a fully enumerated automorphism group, aligned
/// index-by-index with the returned abstract census.
pub fn census_from_group(
    instance: &CfpoInstance,
    group: &EnumeratedGroup,
) -> Result<(InstanceCensus, AbstractCensus)> {
    let abs = abstract_census(group);
    let mut entries = Vec::new();
    for sub in &abs.subgroups {
        let perms = sub.listing.iter().map(|&i| group.elements[i].clone()).collect();
        let tuple = A5Tuple::try_new(perms)?;
        entries.push(CensusEntry::from_tuple(tuple, instance)?);
    }
    Ok((InstanceCensus { entries, complete: true }, abs))
}

/// Engineered census: for every point and direction, every 5-subset of a
/// maximal family of pairwise isomorphic cones yields one cone-action tuple.
pub fn engineered_census(instance: &CfpoInstance) -> Result<InstanceCensus> {
    let mut entries = Vec::new();
    for idx in 0..instance.len() {
        let pid = instance.point_at(idx);
        let cones = instance.cones(pid)?;
        // Group cone roots by (direction, code).
        let mut families: HashMap<(crate::instance::Direction, String), Vec<usize>> =
            HashMap::new();
        for c in &cones {
            let root = instance.index_of(c.root)?;
            families
                .entry((c.direction, instance.cone_code(idx, root)))
                .or_default()
                .push(root);
        }
        let mut keys: Vec<_> = families.keys().cloned().collect();
        keys.sort_by(|a, b| (a.0 as u8, &a.1).cmp(&(b.0 as u8, &b.1)));
        for key in keys {
            let mut roots = families[&key].clone();
            roots.sort_unstable();
            if roots.len() < 5 {
                continue;
            }
            for combo in combinations(&roots, 5) {
                let five: [usize; 5] = combo.try_into().unwrap();
                let tuple = cone_action_tuple(instance, idx, &five)?;
                entries.push(CensusEntry::from_tuple(tuple, instance)?);
            }
        }
    }
    Ok(InstanceCensus { entries, complete: false })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}
