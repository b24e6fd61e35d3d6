//! Finite cycle-free partial orders, represented by their covering trees.
//!
//! An instance is a finite tree whose edges are oriented from a lower point
//! to an upper point.  The order relation is recovered from the tree: `x <= y`
//! exactly when every step of the unique tree path from `x` to `y` goes
//! upward.  Because the covering graph is a tree, the partial order is
//! cycle-free: any two points are joined by a unique path, and every formula
//! about paths, cones, and betweenness can be evaluated by walking the tree.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CfpoError, Result};

/// External identifier of a point.  Instances use arbitrary (distinct)
/// non-negative identifiers; all algorithms translate to dense indices
/// internally.
pub type PointId = u32;

/// Direction of a single tree step, or of a cone at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Up => write!(f, "up"),
            Direction::Down => write!(f, "down"),
        }
    }
}

/// How a path behaves at an interior point: it can pass straight through
/// (rising or falling), or turn around at a local extremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Turn {
    PassThroughUp,
    PassThroughDown,
    LocalMax,
    LocalMin,
}

/// The unique tree path between two points, together with the turn behaviour
/// at each interior point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    /// Points visited, in order; starts at the source and ends at the target.
    /// A path from a point to itself is the singleton list.
    pub points: Vec<PointId>,
    /// Turn tags for the interior points `points[1..len-1]`.
    pub turns: Vec<Turn>,
}

impl PathResult {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when every step of the path goes upward (no turn tags other than
    /// `PassThroughUp`).
    pub fn is_monotone_up(&self) -> bool {
        self.turns.iter().all(|t| *t == Turn::PassThroughUp)
    }
}

/// One cone at a point: a direction together with the set of points of the
/// component of the tree minus the point that is attached through an edge in
/// that direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    /// The point the cone sits at.
    pub apex: PointId,
    /// Whether the edge from the apex into the cone goes up or down.
    pub direction: Direction,
    /// The neighbour of the apex inside the cone.
    pub root: PointId,
    /// All points of the cone, sorted.
    pub points: Vec<PointId>,
}

/// Serialized form of an instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceFile {
    name: String,
    points: Vec<PointId>,
    /// Edges as `[lower, upper]` pairs.
    edges: Vec<[PointId; 2]>,
}

/// A finite cycle-free partial order given by its covering tree.
#[derive(Debug, Clone)]
pub struct CfpoInstance {
    name: String,
    /// Sorted external point identifiers; index in this vector is the dense
    /// internal index.
    points: Vec<PointId>,
    /// Upward covers of each point (dense indices).
    up: Vec<Vec<usize>>,
    /// Downward covers of each point (dense indices).
    down: Vec<Vec<usize>>,
}

impl CfpoInstance {
    /// Builds an instance from a point list and `(lower, upper)` edges,
    /// validating that the covering graph is a tree on exactly the given
    /// points.
    pub fn new(
        name: impl Into<String>,
        points: Vec<PointId>,
        edges: Vec<(PointId, PointId)>,
    ) -> Result<CfpoInstance> {
        let name = name.into();
        let mut sorted = points;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CfpoError::InvalidInstance(format!(
                "duplicate point identifiers in `{name}`"
            )));
        }
        if sorted.is_empty() {
            return Err(CfpoError::InvalidInstance(format!(
                "instance `{name}` has no points"
            )));
        }
        let n = sorted.len();
        if edges.len() != n - 1 {
            return Err(CfpoError::InvalidInstance(format!(
                "instance `{name}` has {} points but {} edges; a tree needs {}",
                n,
                edges.len(),
                n - 1
            )));
        }
        let idx = |p: PointId| -> Result<usize> {
            sorted.binary_search(&p).map_err(|_| CfpoError::UnknownPoint(p))
        };
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(lo, hi) in &edges {
            if lo == hi {
                return Err(CfpoError::InvalidInstance(format!(
                    "self-loop at point {lo} in `{name}`"
                )));
            }
            let l = idx(lo)?;
            let h = idx(hi)?;
            up[l].push(h);
            down[h].push(l);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(CfpoError::InvalidInstance(format!(
                    "parallel edges in `{name}`"
                )));
            }
        }
        let inst = CfpoInstance { name, points: sorted, up, down };
        // n points and n-1 edges form a tree exactly when the graph is
        // connected.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1usize;
        while let Some(v) = stack.pop() {
            for &w in inst.up[v].iter().chain(inst.down[v].iter()) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(CfpoError::InvalidInstance(format!(
                "covering graph of `{}` is disconnected ({count} of {n} points reachable)",
                inst.name
            )));
        }
        Ok(inst)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted external point identifiers.
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    /// Dense index of an external identifier.
    pub fn index_of(&self, p: PointId) -> Result<usize> {
        self.points
            .binary_search(&p)
            .map_err(|_| CfpoError::UnknownPoint(p))
    }

    /// External identifier at a dense index.
    pub fn point_at(&self, i: usize) -> PointId {
        self.points[i]
    }

    /// Upward covers (dense indices) of the point with dense index `i`.
    pub fn up_dense(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Downward covers (dense indices) of the point with dense index `i`.
    pub fn down_dense(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// All covering edges as sorted `(lower, upper)` identifier pairs.
    pub fn edges(&self) -> Vec<(PointId, PointId)> {
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for (l, ups) in self.up.iter().enumerate() {
            for &h in ups {
                out.push((self.points[l], self.points[h]));
            }
        }
        out.sort_unstable();
        out
    }

    /// `x <= y` in the partial order: the tree path from `x` to `y` is
    /// monotone upward.
    pub fn order_leq(&self, x: PointId, y: PointId) -> Result<bool> {
        let xi = self.index_of(x)?;
        let yi = self.index_of(y)?;
        if xi == yi {
            return Ok(true);
        }
        // BFS upward from x.
        let mut seen = vec![false; self.len()];
        let mut queue = vec![xi];
        seen[xi] = true;
        while let Some(v) = queue.pop() {
            for &w in &self.up[v] {
                if w == yi {
                    return Ok(true);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        Ok(false)
    }

    /// The unique tree path from `x` to `y` with turn tags at interior
    /// points.
    pub fn path(&self, x: PointId, y: PointId) -> Result<PathResult> {
        let xi = self.index_of(x)?;
        let yi = self.index_of(y)?;
        if xi == yi {
            return Ok(PathResult { points: vec![x], turns: Vec::new() });
        }
        // BFS from x recording predecessors and the direction of the step
        // into each point.
        let n = self.len();
        let mut prev: Vec<Option<(usize, Direction)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[xi] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(xi);
        while let Some(v) = queue.pop_front() {
            if v == yi {
                break;
            }
            for &w in &self.up[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, Direction::Up));
                    queue.push_back(w);
                }
            }
            for &w in &self.down[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, Direction::Down));
                    queue.push_back(w);
                }
            }
        }
        let mut rev_points = vec![yi];
        let mut rev_dirs = Vec::new();
        let mut cur = yi;
        while let Some((p, d)) = prev[cur] {
            rev_dirs.push(d);
            rev_points.push(p);
            cur = p;
        }
        debug_assert_eq!(cur, xi);
        rev_points.reverse();
        rev_dirs.reverse();
        let points: Vec<PointId> = rev_points.iter().map(|&i| self.points[i]).collect();
        let mut turns = Vec::with_capacity(points.len().saturating_sub(2));
        for w in rev_dirs.windows(2) {
            turns.push(match (w[0], w[1]) {
                (Direction::Up, Direction::Up) => Turn::PassThroughUp,
                (Direction::Down, Direction::Down) => Turn::PassThroughDown,
                (Direction::Up, Direction::Down) => Turn::LocalMax,
                (Direction::Down, Direction::Up) => Turn::LocalMin,
            });
        }
        Ok(PathResult { points, turns })
    }

    /// `z` lies on the tree path between `x` and `y` (endpoints included).
    pub fn between(&self, z: PointId, x: PointId, y: PointId) -> Result<bool> {
        let p = self.path(x, y)?;
        self.index_of(z)?;
        Ok(p.points.contains(&z))
    }

    /// All cones at a point: one per neighbour, grouped into directions.
    pub fn cones(&self, x: PointId) -> Result<Vec<Cone>> {
        let xi = self.index_of(x)?;
        let mut out = Vec::new();
        for (dir, nbrs) in [
            (Direction::Up, &self.up[xi]),
            (Direction::Down, &self.down[xi]),
        ] {
            for &r in nbrs {
                let mut comp = Vec::new();
                let mut seen = vec![false; self.len()];
                seen[xi] = true;
                seen[r] = true;
                let mut stack = vec![r];
                comp.push(self.points[r]);
                while let Some(v) = stack.pop() {
                    for &w in self.up[v].iter().chain(self.down[v].iter()) {
                        if !seen[w] {
                            seen[w] = true;
                            comp.push(self.points[w]);
                            stack.push(w);
                        }
                    }
                }
                comp.sort_unstable();
                out.push(Cone {
                    apex: x,
                    direction: dir,
                    root: self.points[r],
                    points: comp,
                });
            }
        }
        Ok(out)
    }

    /// Upward and downward ramification orders of a point: the number of
    /// cones in each direction.
    pub fn ramification_orders(&self, x: PointId) -> Result<(usize, usize)> {
        let xi = self.index_of(x)?;
        Ok((self.up[xi].len(), self.down[xi].len()))
    }

    /// Canonical code of the cone at `apex` rooted at `root`, respecting
    /// edge orientation.  Two cones at points are isomorphic (as oriented
    /// rooted trees, with the apex edge direction taken into account by the
    /// caller) exactly when their codes are equal.
    pub(crate) fn cone_code(&self, apex_dense: usize, root_dense: usize) -> String {
        self.rooted_code(root_dense, apex_dense)
    }

    /// Canonical code of the oriented tree rooted at `v`, ignoring the
    /// subtree through `parent`.
    pub(crate) fn rooted_code(&self, v: usize, parent: usize) -> String {
        let mut ups: Vec<String> = self.up[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        let mut downs: Vec<String> = self.down[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.rooted_code(w, v))
            .collect();
        ups.sort();
        downs.sort();
        format!("(u[{}]d[{}])", ups.join(","), downs.join(","))
    }

    /// Reads an instance from a JSON file.
    pub fn read_json(path: impl AsRef<Path>) -> Result<CfpoInstance> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<CfpoInstance> {
        let file: InstanceFile = serde_json::from_str(text)?;
        CfpoInstance::new(
            file.name,
            file.points,
            file.edges.into_iter().map(|[l, h]| (l, h)).collect(),
        )
    }

    /// Writes the instance as JSON with sorted points and lexicographically
    /// sorted edges, so output is deterministic.
    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string()?)?;
        Ok(())
    }

    pub fn to_json_string(&self) -> Result<String> {
        let file = InstanceFile {
            name: self.name.clone(),
            points: self.points.clone(),
            edges: self.edges().into_iter().map(|(l, h)| [l, h]).collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    /// Checks that a point-identifier map given as parallel vectors is an
    /// automorphism: a bijection on the points preserving oriented edges.
    pub fn is_automorphism(&self, image: &[usize]) -> bool {
        let n = self.len();
        if image.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &im in image {
            if im >= n || seen[im] {
                return false;
            }
            seen[im] = true;
        }
        for (v, ups) in self.up.iter().enumerate() {
            let iv = image[v];
            for &w in ups {
                if !self.up[iv].contains(&image[w]) {
                    return false;
                }
            }
        }
        true
    }

    /// Set of all point identifiers, as a sorted set.
    pub fn point_set(&self) -> BTreeSet<PointId> {
        self.points.iter().copied().collect()
    }
}
