//! Simple graphs on at most 64 vertices, stored as adjacency bitmasks.

mod bush;
mod split;

pub use bush::{check_bush, forbidden_witness, BushMethod, ForbiddenShape};
pub use split::{
    accessibility_graph, find_split, sk_tree, split_decomposition, GraphTree, NodeKind, SkTree,
    Split, TreeNode, TreeVertex,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{interleave, LinearDiagram};
use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Distance value for vertices in different components.
pub const UNREACHABLE: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.vertex_count(),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        SimpleGraph::from_edges(r.vertices, &r.edges).map_err(serde::de::Error::custom)
    }
}

#[inline]
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn full_mask(v: usize) -> u64 {
    if v >= 64 {
        u64::MAX
    } else {
        (1u64 << v) - 1
    }
}

impl SimpleGraph {
    /// Edgeless graph on `v` vertices.
    pub fn new(v: usize) -> Self {
        assert!(v <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Self { adj: vec![0; v] }
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if v > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("{v} vertices exceed {MAX_VERTICES}")));
        }
        let mut g = Self::new(v);
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::InvalidGraph(format!("edge {a}-{b} out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    /// Graph whose edges are the set bits of `code`, where bit `k` stands for
    /// the `k`-th pair `(i, j)`, `i < j`, in the order (0,1), (0,2), (1,2), (0,3), ...
    pub fn from_code(v: usize, code: u64) -> Self {
        let mut g = Self::new(v);
        let mut k = 0;
        for j in 1..v {
            for i in 0..j {
                if code >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    /// Inverse of [`SimpleGraph::from_code`]; requires at most 11 vertices.
    pub fn code(&self) -> u64 {
        let mut code = 0;
        let mut k = 0;
        for j in 1..self.vertex_count() {
            for i in 0..j {
                if self.has_edge(i, j) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    pub fn complete(v: usize) -> Self {
        let mut g = Self::new(v);
        for i in 0..v {
            g.adj[i] = full_mask(v) & !(1 << i);
        }
        g
    }

    pub fn cycle(v: usize) -> Self {
        let mut g = Self::new(v);
        for i in 0..v {
            g.add_edge(i, (i + 1) % v);
        }
        g
    }

    pub fn path(v: usize) -> Self {
        let mut g = Self::new(v);
        for i in 1..v {
            g.add_edge(i - 1, i);
        }
        g
    }

    /// Star with center `0` and `leaves` further vertices.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for i in 1..=leaves {
            g.add_edge(0, i);
        }
        g
    }

    /// One vertex per chord, adjacent when the chords cross.
    pub fn interlacement(d: &LinearDiagram) -> Self {
        let ends = d.endpoints();
        let mut g = Self::new(ends.len());
        for a in 0..ends.len() {
            for b in a + 1..ends.len() {
                if interleave(ends[a], ends[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn all(&self) -> u64 {
        full_mask(self.vertex_count())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.vertex_count() {
            for b in bits(self.adj[a] >> a >> 1) {
                out.push((a, a + 1 + b));
            }
        }
        out
    }

    /// Induced subgraph on the vertices in `mask`, renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Self {
        let verts: Vec<usize> = bits(mask).collect();
        let mut g = Self::new(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Vertices reachable from `v` inside `within`.
    pub fn component_of(&self, v: usize, within: u64) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for x in bits(frontier) {
                next |= self.adj[x];
            }
            frontier = next & within & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.component_of(0, self.all()) == self.all()
    }

    pub fn component_masks(&self) -> Vec<u64> {
        let mut left = self.all();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.component_of(left.trailing_zeros() as usize, left);
            out.push(c);
            left &= !c;
        }
        out
    }

    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.component_masks().into_iter().map(|m| bits(m).collect()).collect()
    }

    /// Breadth-first distances from `v` inside `within`.
    pub fn distances_from(&self, v: usize, within: u64) -> Vec<u8> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        dist[v] = 0;
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        let mut d = 0u8;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for x in bits(frontier) {
                next |= self.adj[x];
            }
            frontier = next & within & !seen;
            seen |= frontier;
            for x in bits(frontier) {
                dist[x] = d;
            }
        }
        dist
    }

    /// All-pairs distance matrix, [`UNREACHABLE`] across components.
    pub fn distance_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.vertex_count())
            .map(|v| self.distances_from(v, self.all()))
            .collect()
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.vertex_count());
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    /// Parses the text format: a line `V=k` followed by one `u v` line per edge.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("missing V= header".into()))?;
        let v: usize = header
            .strip_prefix("V=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidGraph(format!("bad header {header:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => edges.push((a, b)),
                _ => return Err(Error::InvalidGraph(format!("bad edge line {line:?}"))),
            }
        }
        Self::from_edges(v, &edges)
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V={}", self.vertex_count())?;
        for (a, b) in self.edges() {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn interlacement_examples() {
        let g = SimpleGraph::interlacement(&parse_diagram("abab").unwrap());
        assert_eq!(g.edges(), vec![(0, 1)]);
        let g = SimpleGraph::interlacement(&parse_diagram("aabb").unwrap());
        assert_eq!(g.edge_count(), 0);
        let g = SimpleGraph::interlacement(&parse_diagram("abcabc").unwrap());
        assert_eq!(g, SimpleGraph::complete(3));
    }

    #[test]
    fn text_roundtrip() {
        let g = SimpleGraph::cycle(5);
        assert_eq!(SimpleGraph::parse(&g.to_string()).unwrap(), g);
        assert!(SimpleGraph::parse("V=2\n0 2\n").is_err());
        assert!(SimpleGraph::parse("V=2\n1 1\n").is_err());
        assert!(SimpleGraph::parse("0 1").is_err());
    }

    #[test]
    fn codes_roundtrip() {
        for code in 0..64 {
            assert_eq!(SimpleGraph::from_code(4, code).code(), code);
        }
    }

    #[test]
    fn distances_on_a_path() {
        let g = SimpleGraph::path(4);
        assert_eq!(g.distances_from(0, g.all()), vec![0, 1, 2, 3]);
        let cut = g.all() & !(1 << 1);
        assert_eq!(g.distances_from(0, cut)[2], UNREACHABLE);
    }

    #[test]
    fn components_and_induced() {
        let g = SimpleGraph::from_edges(5, &[(0, 3), (1, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 3], vec![1, 4], vec![2]]);
        assert_eq!(g.induced(0b11001).edges(), vec![(0, 1)]);
    }

    #[test]
    fn serde_shape() {
        let g = SimpleGraph::path(3);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<SimpleGraph>(&s).unwrap(), g);
    }
}
