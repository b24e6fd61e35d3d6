//! Constructed tuple families: the regular/right-translation pair on a
//! 60-leaf star, and the coset-product splitting of a 30-orbit.

use crate::a5::model::{model, A5_ORDER};
use crate::a5::tuple::A5Tuple;
use crate::error::{CfpoError, Result};
use crate::generators::gen_star;
use crate::instance::CfpoInstance;
use crate::perm::Perm;

/// The 60-leaf star together with three tuples: left translation `ḡ`
/// (leaf_x ↦ leaf_{i·x}), right translation `h̄` (leaf_x ↦ leaf_{x·i⁻¹}),
/// and their entrywise product, which acts on leaves by conjugation and
/// fixes the identity leaf.
pub struct Star60Family {
    pub instance: CfpoInstance,
    pub left: A5Tuple,
    pub right: A5Tuple,
    pub product: A5Tuple,
}

pub fn star60_family() -> Result<Star60Family> {
    let instance = gen_star(60, 0)?;
    let n = instance.len();
    let m = model();
    // Leaf for canonical element x is dense index x + 1 (0 is the root).
    let left_entries: Vec<Perm> = (0..A5_ORDER)
        .map(|i| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for x in 0..A5_ORDER {
                images[x + 1] = (m.mul(i, x) + 1) as u32;
            }
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    let right_entries: Vec<Perm> = (0..A5_ORDER)
        .map(|i| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for x in 0..A5_ORDER {
                images[x + 1] = (m.mul(x, m.inv(i)) + 1) as u32;
            }
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    let left = A5Tuple::try_new(left_entries)?;
    let right = A5Tuple::try_new(right_entries)?;
    let product = left.star(&right)?;
    Ok(Star60Family { instance, left, right, product })
}

/// All listings of the right-translation subgroup: relistings of `right`
/// along each automorphism of the canonical A5.
pub fn right_translation_listings(family: &Star60Family) -> Vec<A5Tuple> {
    crate::a5::model::AUTOMORPHISMS
        .iter()
        .map(|sigma| family.right.relist(sigma))
        .collect()
}

/// The 30-leaf star whose leaves are labelled by pairs (aG, bH) for fixed
/// subgroups G (order 12) and H (order 10) of the canonical A5 with
/// |G ∩ H| = 2, together with the diagonal tuple `f̄` (a single 30-orbit)
/// and the two coordinate tuples `ḡ`, `h̄` splitting it.
pub struct Star30Family {
    pub instance: CfpoInstance,
    pub diagonal: A5Tuple,
    pub first: A5Tuple,
    pub second: A5Tuple,
    /// Canonical element indices of the coset representatives, for tests.
    pub g_cosets: Vec<Vec<usize>>,
    pub h_cosets: Vec<Vec<usize>>,
}

pub fn star30_family() -> Result<Star30Family> {
    let m = model();
    let subgroup = |gens: &[usize]| -> Vec<usize> {
        let mut seen = [false; A5_ORDER];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut stack = vec![0usize];
        while let Some(e) = stack.pop() {
            for &g in gens {
                let f = m.mul(g, e);
                if !seen[f] {
                    seen[f] = true;
                    out.push(f);
                    stack.push(f);
                }
            }
        }
        out.sort_unstable();
        out
    };
    // Find an order-12 and an order-10 subgroup intersecting in 2 elements.
    let mut twelves = Vec::new();
    let mut tens = Vec::new();
    for x in 0..A5_ORDER {
        for y in 0..x {
            let s = subgroup(&[x, y]);
            match s.len() {
                12 if !twelves.contains(&s) => twelves.push(s),
                10 if !tens.contains(&s) => tens.push(s),
                _ => {}
            }
        }
    }
    let (g_sub, h_sub) = twelves
        .iter()
        .flat_map(|g| tens.iter().map(move |h| (g, h)))
        .find(|(g, h)| g.iter().filter(|e| h.contains(e)).count() == 2)
        .ok_or_else(|| CfpoError::InvalidArgument("no suitable subgroup pair".into()))?;

    let cosets = |sub: &[usize]| -> Vec<Vec<usize>> {
        let mut assigned = [usize::MAX; A5_ORDER];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for a in 0..A5_ORDER {
            if assigned[a] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = sub.iter().map(|&s| m.mul(a, s)).collect();
            coset.sort_unstable();
            for &e in &coset {
                assigned[e] = out.len();
            }
            out.push(coset);
        }
        out
    };
    let g_cosets = cosets(g_sub);
    let h_cosets = cosets(h_sub);
    assert_eq!(g_cosets.len(), 5);
    assert_eq!(h_cosets.len(), 6);
    let g_of = |e: usize| g_cosets.iter().position(|c| c.binary_search(&e).is_ok()).unwrap();
    let h_of = |e: usize| h_cosets.iter().position(|c| c.binary_search(&e).is_ok()).unwrap();

    // Leaf for the pair (aG index p, bH index q) is dense index 1 + p*6 + q.
    let instance = gen_star(30, 0)?;
    let n = instance.len();
    // For each canonical element i, the image coset of coset p under left
    // translation.
    let g_act: Vec<[usize; 5]> = (0..A5_ORDER)
        .map(|i| {
            let mut row = [0usize; 5];
            for (p, coset) in g_cosets.iter().enumerate() {
                row[p] = g_of(m.mul(i, coset[0]));
            }
            row
        })
        .collect();
    let h_act: Vec<[usize; 6]> = (0..A5_ORDER)
        .map(|i| {
            let mut row = [0usize; 6];
            for (q, coset) in h_cosets.iter().enumerate() {
                row[q] = h_of(m.mul(i, coset[0]));
            }
            row
        })
        .collect();
    let build = |move_first: bool, move_second: bool| -> Result<A5Tuple> {
        let entries: Vec<Perm> = (0..A5_ORDER)
            .map(|i| {
                let mut images: Vec<u32> = (0..n as u32).collect();
                for p in 0..5 {
                    for q in 0..6 {
                        let np = if move_first { g_act[i][p] } else { p };
                        let nq = if move_second { h_act[i][q] } else { q };
                        images[1 + p * 6 + q] = (1 + np * 6 + nq) as u32;
                    }
                }
                Perm::from_images(images)
            })
            .collect::<Result<_>>()?;
        A5Tuple::try_new(entries)
    };
    let diagonal = build(true, true)?;
    let first = build(true, false)?;
    let second = build(false, true)?;
    Ok(Star30Family { instance, diagonal, first, second, g_cosets, h_cosets })
}

/// Checks the no-cancelling-orbits inclusion for a decomposition
/// `f̄ = ḡ ∗ h̄`: the support of the product must cover the union of the
/// factor supports.
pub fn supports_cover(product: &A5Tuple, g: &A5Tuple, h: &A5Tuple) -> bool {
    let supp: std::collections::BTreeSet<usize> = product.support().into_iter().collect();
    g.support().iter().chain(h.support().iter()).all(|p| supp.contains(p))
}
