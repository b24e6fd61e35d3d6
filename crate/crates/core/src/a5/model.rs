//! The canonical copy of A5 as permutations of {0,…,4}.
//!
//! Elements are ordered by breadth-first search over words in the fixed
//! generators a = (0 1)(2 3) and b = (0 2 4), shortest word first and
//! lexicographically (a before b) within a length.  Index 0 is the identity.
//! The multiplication table composes right-to-left: `mul(i, j)` is the index
//! of `elem_i ∘ elem_j`.

use std::collections::HashMap;

use once_cell::sync::Lazy;

pub const A5_ORDER: usize = 60;

pub type Point5 = u8;
pub type Elem5 = [Point5; 5];

pub struct A5Model {
    pub elems: Vec<Elem5>,
    /// BFS word (over 'a', 'b') for each element; empty for the identity.
    pub words: Vec<String>,
    table: Vec<[u8; A5_ORDER]>,
    inv: [u8; A5_ORDER],
    orders: [u8; A5_ORDER],
    index: HashMap<Elem5, u8>,
}

fn compose5(a: &Elem5, b: &Elem5) -> Elem5 {
    let mut out = [0; 5];
    for x in 0..5 {
        out[x] = a[b[x] as usize];
    }
    out
}

fn build_model() -> A5Model {
    let identity: Elem5 = [0, 1, 2, 3, 4];
    let gen_a: Elem5 = [1, 0, 3, 2, 4]; // (0 1)(2 3)
    let gen_b: Elem5 = [2, 1, 4, 3, 0]; // (0 2 4)

    let mut elems = vec![identity];
    let mut words = vec![String::new()];
    let mut index: HashMap<Elem5, u8> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        let (base, word) = (elems[head], words[head].clone());
        head += 1;
        for (letter, g) in [('a', gen_a), ('b', gen_b)] {
            // New word extends on the right: w·g means apply g first.
            let next = compose5(&base, &g);
            if !index.contains_key(&next) {
                index.insert(next, elems.len() as u8);
                elems.push(next);
                words.push(format!("{word}{letter}"));
            }
        }
    }
    assert_eq!(elems.len(), A5_ORDER, "a and b generate all of A5");

    let mut table = vec![[0u8; A5_ORDER]; A5_ORDER];
    for i in 0..A5_ORDER {
        for j in 0..A5_ORDER {
            table[i][j] = index[&compose5(&elems[i], &elems[j])];
        }
    }
    let mut inv = [0u8; A5_ORDER];
    let mut orders = [0u8; A5_ORDER];
    for i in 0..A5_ORDER {
        inv[i] = (0..A5_ORDER).find(|&j| table[i][j] == 0).unwrap() as u8;
        let mut x = i as u8;
        let mut k = 1;
        while x != 0 {
            x = table[i][x as usize];
            k += 1;
        }
        orders[i] = k;
    }
    A5Model { elems, words, table, inv, orders, index }
}

static MODEL: Lazy<A5Model> = Lazy::new(build_model);

pub fn model() -> &'static A5Model {
    &MODEL
}

impl A5Model {
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j] as usize
    }
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i] as usize
    }
    pub fn order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }
    pub fn index_of(&self, e: &Elem5) -> usize {
        self.index[e] as usize
    }

    /// FNV-1a over the table bytes, used as a regression pin on the
    /// canonical ordering.
    pub fn table_checksum(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for row in &self.table {
            for &b in row.iter() {
                h ^= b as u64;
                h = h.wrapping_mul(0x1000_0000_01b3);
            }
        }
        h
    }
}

/// All automorphisms of A5 as maps on canonical element indices.
///
/// Since a² = b³ = (ab)⁵ = 1 presents A5, every pair (x, y) with
/// |x| = 2, |y| = 3, |xy| = 5 that generates the group induces exactly one
/// automorphism a ↦ x, b ↦ y, obtained by evaluating each element's
/// canonical word.
pub static AUTOMORPHISMS: Lazy<Vec<[u8; A5_ORDER]>> = Lazy::new(|| {
    let m = model();
    let mut auts = Vec::new();
    for x in 0..A5_ORDER {
        if m.order(x) != 2 {
            continue;
        }
        for y in 0..A5_ORDER {
            if m.order(y) != 3 || m.order(m.mul(x, y)) != 5 {
                continue;
            }
            if !generates_all(x, y) {
                continue;
            }
            let mut map = [0u8; A5_ORDER];
            for i in 0..A5_ORDER {
                let mut img = 0usize; // identity
                for letter in m.words[i].chars() {
                    img = m.mul(img, if letter == 'a' { x } else { y });
                }
                map[i] = img as u8;
            }
            auts.push(map);
        }
    }
    auts
});

fn generates_all(x: usize, y: usize) -> bool {
    let m = model();
    let mut seen = [false; A5_ORDER];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(e) = stack.pop() {
        for g in [x, y] {
            let f = m.mul(g, e);
            if !seen[f] {
                seen[f] = true;
                count += 1;
                stack.push(f);
            }
        }
    }
    count == A5_ORDER
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn sixty_elements_identity_first() {
        let m = model();
        assert_eq!(m.elems.len(), 60);
        assert_eq!(m.elems[0], [0, 1, 2, 3, 4]);
        assert_eq!(m.words[1], "a");
        assert_eq!(m.words[2], "b");
    }

    #[test]
    fn table_checksum_is_frozen() {
        // Regression pin on the canonical element ordering and table.
        assert_eq!(model().table_checksum(), 0xd30c_0b79_19fe_8559);
    }

    #[test]
    fn element_order_census() {
        // A5 has 1 identity, 15 involutions, 20 three-cycles, 24 five-cycles.
        let m = model();
        let mut counts = [0usize; 6];
        for i in 0..A5_ORDER {
            counts[m.order(i)] += 1;
        }
        assert_eq!(counts[1], 1);
        assert_eq!(counts[2], 15);
        assert_eq!(counts[3], 20);
        assert_eq!(counts[5], 24);
        assert_eq!(counts[4], 0);
    }

    #[test]
    fn table_is_a_group() {
        let m = model();
        for i in 0..A5_ORDER {
            assert_eq!(m.mul(i, 0), i);
            assert_eq!(m.mul(0, i), i);
            assert_eq!(m.mul(i, m.inv(i)), 0);
            // Associativity spot check against direct composition.
            for j in (0..A5_ORDER).step_by(7) {
                for k in (0..A5_ORDER).step_by(11) {
                    assert_eq!(m.mul(m.mul(i, j), k), m.mul(i, m.mul(j, k)));
                }
            }
        }
    }

    #[test]
    fn automorphism_group_has_order_120() {
        assert_eq!(AUTOMORPHISMS.len(), 120);
        let m = model();
        // Each is a bijective homomorphism.
        for phi in AUTOMORPHISMS.iter().step_by(13) {
            let distinct: BTreeSet<u8> = phi.iter().copied().collect();
            assert_eq!(distinct.len(), 60);
            for i in (0..A5_ORDER).step_by(3) {
                for j in (0..A5_ORDER).step_by(5) {
                    assert_eq!(
                        phi[m.mul(i, j)] as usize,
                        m.mul(phi[i] as usize, phi[j] as usize)
                    );
                }
            }
        }
        // They are pairwise distinct.
        let set: BTreeSet<[u8; A5_ORDER]> = AUTOMORPHISMS.iter().copied().collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn subgroup_order_catalogue() {
        // Orders of subgroups of A5: 1, 2, 3, 4, 5, 6, 10, 12, 60.
        let m = model();
        let mut orders = BTreeSet::new();
        for i in 0..A5_ORDER {
            for j in 0..A5_ORDER {
                let mut seen = [false; A5_ORDER];
                seen[0] = true;
                let mut stack = vec![0usize];
                let mut count = 1;
                while let Some(e) = stack.pop() {
                    for g in [i, j] {
                        let f = m.mul(g, e);
                        if !seen[f] {
                            seen[f] = true;
                            count += 1;
                            stack.push(f);
                        }
                    }
                }
                orders.insert(count);
            }
        }
        let expect: BTreeSet<usize> = [1, 2, 3, 4, 5, 6, 10, 12, 60].into();
        assert_eq!(orders, expect);
    }
}
