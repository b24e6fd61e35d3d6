//! Deterministic instance generators.  Point ids are assigned sequentially
//! from 0 in construction order, so repeated runs produce identical files.

use crate::error::{CfpoError, Result};
use crate::instance::{CfpoInstance, PointId};

struct Builder {
    name: String,
    next: PointId,
    edges: Vec<[PointId; 2]>, // [lower, upper]
}

impl Builder {
    fn new(name: impl Into<String>) -> Builder {
        Builder { name: name.into(), next: 0, edges: Vec::new() }
    }
    fn point(&mut self) -> PointId {
        let p = self.next;
        self.next += 1;
        p
    }
    fn edge_up(&mut self, lower: PointId, upper: PointId) {
        self.edges.push([lower, upper]);
    }
    fn leaf_above(&mut self, below: PointId) -> PointId {
        let p = self.point();
        self.edge_up(below, p);
        p
    }
    fn leaf_below(&mut self, above: PointId) -> PointId {
        let p = self.point();
        self.edge_up(p, above);
        p
    }
    fn finish(self) -> Result<CfpoInstance> {
        let edges = self.edges.iter().map(|e| (e[0], e[1])).collect();
        CfpoInstance::new(self.name, (0..self.next).collect(), edges)
    }
}

/// STAR(n_up, n_down): one root with `n_up` upper leaves and `n_down` lower
/// leaves.  Point 0 is the root.
pub fn gen_star(n_up: usize, n_down: usize) -> Result<CfpoInstance> {
    if n_up == 0 && n_down == 0 {
        return Err(CfpoError::InvalidArgument(
            "star requires at least one leaf".into(),
        ));
    }
    let mut b = Builder::new(format!("star:{n_up},{n_down}"));
    let root = b.point();
    for _ in 0..n_up {
        b.leaf_above(root);
    }
    for _ in 0..n_down {
        b.leaf_below(root);
    }
    b.finish()
}

/// ALT(b_up, b_down, r): starts from a single edge x < y and, for `r`
/// rounds, pads every point of the previous round with fresh leaves until
/// its ramification orders reach `(b_up, b_down)`.  Interior points of the
/// result (those filled in a round before the last) have ramification
/// exactly `(b_up, b_down)`.
pub fn gen_alternating_tree(b_up: usize, b_down: usize, radius: usize) -> Result<CfpoInstance> {
    if b_up == 0 || b_down == 0 {
        return Err(CfpoError::InvalidArgument(
            "alternating tree requires positive ramification orders".into(),
        ));
    }
    let mut b = Builder::new(format!("alt:{b_up},{b_down},{radius}"));
    let x = b.point();
    let y = b.point();
    b.edge_up(x, y);
    // (point, current up-degree, current down-degree)
    let mut frontier = vec![(x, 1usize, 0usize), (y, 0usize, 1usize)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for (p, ups, downs) in frontier {
            for _ in ups..b_up {
                next.push((b.leaf_above(p), 0, 1));
            }
            for _ in downs..b_down {
                next.push((b.leaf_below(p), 1, 0));
            }
        }
        frontier = next;
    }
    b.finish()
}

/// CHAIN-DEC(b_up, b_down, chain_len, r): the ALT(b_up, b_down, r) skeleton
/// with every node replaced by a monotone chain of `chain_len` points; a
/// skeleton edge u < w becomes an edge from the top of u's chain to the
/// bottom of w's chain.
pub fn gen_chain_decorated(
    b_up: usize,
    b_down: usize,
    chain_len: usize,
    radius: usize,
) -> Result<CfpoInstance> {
    if chain_len < 3 {
        return Err(CfpoError::InvalidArgument(
            "decoration chains need length at least 3".into(),
        ));
    }
    let skeleton = gen_alternating_tree(b_up, b_down, radius)?;
    let mut b = Builder::new(format!("chain-dec:{b_up},{b_down},{chain_len},{radius}"));
    // Chain for skeleton node i occupies ids [i*chain_len, (i+1)*chain_len),
    // ordered bottom to top.
    let m = skeleton.len();
    for node in 0..m {
        let bottom = b.point();
        let mut prev = bottom;
        for _ in 1..chain_len {
            let p = b.point();
            b.edge_up(prev, p);
            prev = p;
        }
        let _ = node;
    }
    let cl = chain_len as PointId;
    for (lo, hi) in skeleton.edges() {
        let top_of_lo = lo * cl + (cl - 1);
        let bottom_of_hi = hi * cl;
        b.edge_up(top_of_lo, bottom_of_hi);
    }
    b.finish()
}

/// NESTED-STAR(a_up, a_down): a centre with `a_up` upward arms and `a_down`
/// downward arms of length one; every arm point carries 5 upper and 5 lower
/// leaves.  The centre and each arm point then own at least five isomorphic
/// cones in some direction, which makes deep (supports-within-supports)
/// tuple configurations available at the centre.
pub fn gen_nested_star(a_up: usize, a_down: usize) -> Result<CfpoInstance> {
    if a_up < 5 || a_down < 5 {
        return Err(CfpoError::InvalidArgument(
            "nested star needs at least five arms each way".into(),
        ));
    }
    let mut b = Builder::new(format!("nested-star:{a_up},{a_down}"));
    let c = b.point();
    let mut arms = Vec::new();
    for _ in 0..a_up {
        arms.push(b.leaf_above(c));
    }
    for _ in 0..a_down {
        arms.push(b.leaf_below(c));
    }
    for arm in arms {
        for _ in 0..5 {
            b.leaf_above(arm);
        }
        for _ in 0..5 {
            b.leaf_below(arm);
        }
    }
    b.finish()
}

/// SPIDER(u_arms, d_arms, arm_len): a centre with monotone chain arms, every
/// skeleton point (centre included) bristled with 5 upper and 5 lower
/// leaves, so every skeleton point is representable in both directions.
pub fn gen_bristled_spider(u_arms: usize, d_arms: usize, arm_len: usize) -> Result<CfpoInstance> {
    if arm_len == 0 || (u_arms == 0 && d_arms == 0) {
        return Err(CfpoError::InvalidArgument("spider needs at least one arm".into()));
    }
    let mut b = Builder::new(format!("spider:{u_arms},{d_arms},{arm_len}"));
    let c = b.point();
    let mut skeleton = vec![c];
    for _ in 0..u_arms {
        let mut prev = c;
        for _ in 0..arm_len {
            prev = b.leaf_above(prev);
            skeleton.push(prev);
        }
    }
    for _ in 0..d_arms {
        let mut prev = c;
        for _ in 0..arm_len {
            prev = b.leaf_below(prev);
            skeleton.push(prev);
        }
    }
    for p in skeleton {
        for _ in 0..5 {
            b.leaf_above(p);
        }
        for _ in 0..5 {
            b.leaf_below(p);
        }
    }
    b.finish()
}

/// DOUBLE-STAR: an edge x < y with 5 lower leaves at x and 5 upper leaves
/// at y (x = 0, y = 1).
pub fn gen_double_star() -> Result<CfpoInstance> {
    let mut b = Builder::new("double-star");
    let x = b.point();
    let y = b.point();
    b.edge_up(x, y);
    for _ in 0..5 {
        b.leaf_above(y);
    }
    for _ in 0..5 {
        b.leaf_below(x);
    }
    b.finish()
}

/// Parses a generator spec string such as `star:5,0`, `alt:5,5,2`,
/// `chain-dec:5,5,3,2`, `nested-star:6,5`, `spider:6,5,3`, `double-star`.
pub fn generate_from_spec(spec: &str) -> Result<CfpoInstance> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k, r),
        None => (spec, ""),
    };
    let nums: Vec<usize> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| {
                    CfpoError::InvalidArgument(format!("bad spec number in {spec:?}"))
                })
            })
            .collect::<Result<_>>()?
    };
    let wrong = || CfpoError::InvalidArgument(format!("bad generator spec {spec:?}"));
    match (kind, nums.as_slice()) {
        ("star", [u, d]) => gen_star(*u, *d),
        ("alt", [u, d, r]) => gen_alternating_tree(*u, *d, *r),
        ("chain-dec", [u, d, l, r]) => gen_chain_decorated(*u, *d, *l, *r),
        ("nested-star", [u, d]) => gen_nested_star(*u, *d),
        ("spider", [u, d, l]) => gen_bristled_spider(*u, *d, *l),
        ("double-star", []) => gen_double_star(),
        _ => Err(wrong()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Direction;

    #[test]
    fn star_counts_and_ramification() {
        let s = gen_star(5, 2).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s.ramification_orders(0).unwrap(), (5, 2));
        assert_eq!(s.ramification_orders(1).unwrap(), (0, 1));
        assert!(gen_star(0, 0).is_err());
    }

    #[test]
    fn alt_point_counts() {
        assert_eq!(gen_alternating_tree(5, 5, 0).unwrap().len(), 2);
        assert_eq!(gen_alternating_tree(5, 5, 1).unwrap().len(), 20);
        assert_eq!(gen_alternating_tree(5, 5, 2).unwrap().len(), 182);
        assert_eq!(gen_alternating_tree(1, 1, 3).unwrap().len(), 8);
        assert_eq!(gen_alternating_tree(6, 5, 2).unwrap().len(), 222);
    }

    #[test]
    fn alt_1_1_is_a_chain() {
        let c = gen_alternating_tree(1, 1, 3).unwrap();
        // A chain: every point has at most one neighbour each way, and the
        // order is total.
        let mut comparable = 0;
        for i in 0..c.len() {
            let (u, d) = c.ramification_orders(c.point_at(i)).unwrap();
            assert!(u <= 1 && d <= 1);
            for j in 0..c.len() {
                if c.order_leq(c.point_at(i), c.point_at(j)).unwrap() {
                    comparable += 1;
                }
            }
        }
        assert_eq!(comparable, 8 * 9 / 2);
    }

    #[test]
    fn alt_interior_ramification() {
        let a = gen_alternating_tree(5, 5, 2).unwrap();
        // The two base points were filled in round one.
        assert_eq!(a.ramification_orders(0).unwrap(), (5, 5));
        assert_eq!(a.ramification_orders(1).unwrap(), (5, 5));
    }

    #[test]
    fn chain_decorated_counts() {
        assert_eq!(gen_chain_decorated(5, 5, 3, 1).unwrap().len(), 60);
        assert!(gen_chain_decorated(5, 5, 2, 1).is_err());
        let c = gen_chain_decorated(1, 1, 3, 1).unwrap();
        assert_eq!(c.len(), 12); // 4-chain skeleton × 3
    }

    #[test]
    fn nested_star_counts() {
        let n = gen_nested_star(6, 5).unwrap();
        assert_eq!(n.len(), 1 + 11 * 11);
        assert_eq!(n.ramification_orders(0).unwrap(), (6, 5));
    }

    #[test]
    fn spider_counts() {
        let s = gen_bristled_spider(2, 1, 3).unwrap();
        assert_eq!(s.len(), 10 + 10 * 10);
    }

    #[test]
    fn double_star_shape() {
        let d = gen_double_star().unwrap();
        assert_eq!(d.len(), 12);
        assert_eq!(d.ramification_orders(0).unwrap(), (1, 5));
        assert_eq!(d.ramification_orders(1).unwrap(), (5, 1));
        assert!(d.order_leq(0, 1).unwrap());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(generate_from_spec("star:5,0").unwrap().len(), 6);
        assert_eq!(generate_from_spec("alt:1,1,3").unwrap().len(), 8);
        assert_eq!(generate_from_spec("double-star").unwrap().len(), 12);
        assert!(generate_from_spec("star:xyz").is_err());
        assert!(generate_from_spec("unknown:1").is_err());
    }

    #[test]
    fn all_generated_instances_validate_and_round_trip() {
        for spec in ["star:5,5", "alt:5,5,1", "chain-dec:5,5,3,1", "nested-star:5,5"] {
            let inst = generate_from_spec(spec).unwrap();
            let json = inst.to_json_string().unwrap();
            let back = CfpoInstance::from_json_str(&json).unwrap();
            assert_eq!(back.len(), inst.len());
            assert_eq!(back.edges(), inst.edges());
        }
        // Directions stay oriented through the round trip.
        let s = generate_from_spec("star:1,1").unwrap();
        assert_eq!(s.cones(0).unwrap().iter().filter(|c| c.direction == Direction::Up).count(), 1);
    }
}
