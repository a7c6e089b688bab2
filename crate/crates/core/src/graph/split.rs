//! Split decomposition into reduced graph-trees.

use serde::{Deserialize, Serialize};

use super::{bits, full_mask, SimpleGraph};

/// A split `(A1, A2)` of the vertex set with frontiers `B1 ⊆ A1`, `B2 ⊆ A2`;
/// all sets are vertex masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub a1: u64,
    pub a2: u64,
    pub b1: u64,
    pub b2: u64,
}

/// First split in increasing order of the mask of `A1`, where `A1` always
/// contains vertex `0`. Returns `None` when the graph is indecomposable
/// or has fewer than four vertices.
pub fn find_split(g: &SimpleGraph) -> Option<Split> {
    let n = g.vertex_count();
    if n < 4 {
        return None;
    }
    let full = full_mask(n);
    // A1 = {0} ∪ rest, enumerated by the mask of the other vertices
    for rest in 1..(1u64 << (n - 1)) {
        let a1 = rest << 1 | 1;
        let size = a1.count_ones() as usize;
        if size < 2 || n - size < 2 {
            continue;
        }
        let a2 = full & !a1;
        if let Some(s) = split_for(g, a1, a2) {
            return Some(s);
        }
    }
    None
}

fn split_for(g: &SimpleGraph, a1: u64, a2: u64) -> Option<Split> {
    let mut b1 = 0;
    let mut b2 = 0;
    for a in bits(a1) {
        let out = g.neighbors(a) & a2;
        if out != 0 {
            if b1 != 0 && out != b2 {
                return None;
            }
            b1 |= 1 << a;
            b2 = out;
        }
    }
    (b1 != 0).then_some(Split { a1, a2, b1, b2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeVertex {
    Leaf(usize),
    Node(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Clique,
    Star { center: usize },
    Prime,
}

impl NodeKind {
    pub fn classify(g: &SimpleGraph) -> NodeKind {
        let n = g.vertex_count();
        let all = g.all();
        if (0..n).all(|v| g.neighbors(v) == all & !(1 << v)) {
            return NodeKind::Clique;
        }
        for c in 0..n {
            let others = all & !(1 << c);
            if g.neighbors(c) == others && bits(others).all(|v| g.neighbors(v) == 1 << c) {
                return NodeKind::Star { center: c };
            }
        }
        NodeKind::Prime
    }

    pub fn is_degenerate(self) -> bool {
        !matches!(self, NodeKind::Prime)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub graph: SimpleGraph,
    pub kind: NodeKind,
    /// `phi[i]` is the tree neighbor attached to vertex `i` of `graph`.
    pub phi: Vec<TreeVertex>,
}

impl TreeNode {
    fn new(graph: SimpleGraph, phi: Vec<TreeVertex>) -> Self {
        let kind = NodeKind::classify(&graph);
        Self { graph, kind, phi }
    }

    /// Vertex of this node attached to the given tree neighbor.
    pub fn marker(&self, t: TreeVertex) -> Option<usize> {
        self.phi.iter().position(|&p| p == t)
    }
}

/// A tree whose leaves are `0..leaves` and whose internal nodes carry graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphTree {
    pub leaves: usize,
    pub nodes: Vec<TreeNode>,
}

impl GraphTree {
    /// Node and vertex a leaf hangs from.
    pub fn leaf_attachment(&self, leaf: usize) -> Option<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .find_map(|(k, node)| node.marker(TreeVertex::Leaf(leaf)).map(|i| (k, i)))
    }

    /// Internal nodes have degree at least three, no two cliques are
    /// adjacent, and star-star edges join two centers or two non-centers.
    pub fn is_reduced(&self) -> bool {
        if self.leaves <= 2 {
            return self.nodes.len() <= 1;
        }
        for (k, node) in self.nodes.iter().enumerate() {
            if node.graph.vertex_count() < 3 {
                return false;
            }
            for (i, &t) in node.phi.iter().enumerate() {
                let TreeVertex::Node(m) = t else { continue };
                let other = &self.nodes[m];
                let Some(j) = other.marker(TreeVertex::Node(k)) else {
                    return false;
                };
                match (node.kind, other.kind) {
                    (NodeKind::Clique, NodeKind::Clique) => return false,
                    (NodeKind::Star { center: c1 }, NodeKind::Star { center: c2 })
                        if (i == c1) != (j == c2) =>
                    {
                        return false
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

/// Reduced graph-tree of a connected graph. Graphs on one or two vertices
/// give a single node decorated by the graph itself.
pub fn split_decomposition(g: &SimpleGraph) -> GraphTree {
    let n = g.vertex_count();
    if n == 0 {
        return GraphTree { leaves: 0, nodes: Vec::new() };
    }
    let phi = (0..n).map(TreeVertex::Leaf).collect();
    let mut nodes = vec![TreeNode::new(g.clone(), phi)];
    let mut k = 0;
    while k < nodes.len() {
        if nodes[k].kind.is_degenerate() {
            k += 1;
            continue;
        }
        match find_split(&nodes[k].graph) {
            Some(s) => split_node(&mut nodes, k, s),
            None => k += 1,
        }
    }
    let mut tree = GraphTree { leaves: n, nodes };
    while merge_once(&mut tree) {}
    tree
}

/// Replaces node `k` by two nodes joined through new marker vertices.
fn split_node(nodes: &mut Vec<TreeNode>, k: usize, s: Split) {
    let node = nodes[k].clone();
    let fresh = nodes.len();
    let side = |a: u64, b: u64, across: usize| {
        let verts: Vec<usize> = bits(a).collect();
        let m = verts.len();
        let mut h = SimpleGraph::new(m + 1);
        for (x, y) in node.graph.induced(a).edges() {
            h.add_edge(x, y);
        }
        for (i, &v) in verts.iter().enumerate() {
            if b >> v & 1 == 1 {
                h.add_edge(i, m);
            }
        }
        let mut phi: Vec<TreeVertex> = verts.iter().map(|&v| node.phi[v]).collect();
        phi.push(TreeVertex::Node(across));
        (TreeNode::new(h, phi), verts)
    };
    let (left, _) = side(s.a1, s.b1, fresh);
    let (right, right_verts) = side(s.a2, s.b2, k);
    // neighbors that pointed at k from the right side now point at `fresh`
    for &v in &right_verts {
        if let TreeVertex::Node(m) = node.phi[v] {
            let pos = nodes[m].marker(TreeVertex::Node(k)).expect("tree link");
            nodes[m].phi[pos] = TreeVertex::Node(fresh);
        }
    }
    nodes[k] = left;
    nodes.push(right);
}

/// Merges one adjacent clique pair or one star pair joined center to
/// non-center. Returns whether anything changed.
fn merge_once(tree: &mut GraphTree) -> bool {
    for k in 0..tree.nodes.len() {
        for i in 0..tree.nodes[k].phi.len() {
            let TreeVertex::Node(m) = tree.nodes[k].phi[i] else { continue };
            let j = tree.nodes[m].marker(TreeVertex::Node(k)).expect("tree link");
            let mergeable = match (tree.nodes[k].kind, tree.nodes[m].kind) {
                (NodeKind::Clique, NodeKind::Clique) => true,
                (NodeKind::Star { center: c1 }, NodeKind::Star { center: c2 }) => {
                    (i == c1) != (j == c2)
                }
                _ => false,
            };
            if mergeable {
                merge(tree, k, i, m, j);
                return true;
            }
        }
    }
    false
}

/// Composes node `m` into node `k` along the link between marker `i` of `k`
/// and marker `j` of `m`, then deletes `m`.
fn merge(tree: &mut GraphTree, k: usize, i: usize, m: usize, j: usize) {
    let a = tree.nodes[k].clone();
    let b = tree.nodes[m].clone();
    let keep_a: Vec<usize> = (0..a.graph.vertex_count()).filter(|&x| x != i).collect();
    let keep_b: Vec<usize> = (0..b.graph.vertex_count()).filter(|&y| y != j).collect();
    let total = keep_a.len() + keep_b.len();
    let mut g = SimpleGraph::new(total);
    let na = keep_a.len();
    for (x, y) in a.graph.edges() {
        if x != i && y != i {
            g.add_edge(idx(&keep_a, x), idx(&keep_a, y));
        }
    }
    for (x, y) in b.graph.edges() {
        if x != j && y != j {
            g.add_edge(na + idx(&keep_b, x), na + idx(&keep_b, y));
        }
    }
    for x in bits(a.graph.neighbors(i)) {
        for y in bits(b.graph.neighbors(j)) {
            g.add_edge(idx(&keep_a, x), na + idx(&keep_b, y));
        }
    }
    let mut phi: Vec<TreeVertex> = keep_a.iter().map(|&x| a.phi[x]).collect();
    phi.extend(keep_b.iter().map(|&y| b.phi[y]));
    // neighbors of m now hang from k
    for &t in &phi[na..] {
        if let TreeVertex::Node(o) = t {
            let pos = tree.nodes[o].marker(TreeVertex::Node(m)).expect("tree link");
            tree.nodes[o].phi[pos] = TreeVertex::Node(k);
        }
    }
    tree.nodes[k] = TreeNode::new(g, phi);
    // move the last node into slot m
    let last = tree.nodes.len() - 1;
    tree.nodes.swap_remove(m);
    if m != last {
        for t in tree.nodes[m].phi.clone() {
            if let TreeVertex::Node(o) = t {
                let pos = tree.nodes[o].marker(TreeVertex::Node(last)).expect("tree link");
                tree.nodes[o].phi[pos] = TreeVertex::Node(m);
            }
        }
    }
}

fn idx(v: &[usize], x: usize) -> usize {
    v.iter().position(|&y| y == x).expect("kept vertex")
}

/// The graph on the leaves in which two leaves are adjacent when every node
/// along the path between them joins the entry and exit markers by an edge.
pub fn accessibility_graph(t: &GraphTree) -> SimpleGraph {
    let mut g = SimpleGraph::new(t.leaves);
    for leaf in 0..t.leaves {
        let Some((k, i)) = t.leaf_attachment(leaf) else { continue };
        let mut stack = vec![(k, i)];
        while let Some((k, i)) = stack.pop() {
            let node = &t.nodes[k];
            for j in bits(node.graph.neighbors(i)) {
                match node.phi[j] {
                    TreeVertex::Leaf(other) => {
                        if other != leaf {
                            g.add_edge(leaf, other);
                        }
                    }
                    TreeVertex::Node(m) => {
                        let entry = t.nodes[m].marker(TreeVertex::Node(k)).expect("tree link");
                        stack.push((m, entry));
                    }
                }
            }
        }
    }
    g
}

/// A reduced graph-tree with only clique and star nodes, rooted at a leaf.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkTree {
    pub tree: GraphTree,
    pub root: usize,
}

/// The SK-tree of a connected bush on at least three vertices, rooted at leaf 0.
pub fn sk_tree(g: &SimpleGraph) -> Option<SkTree> {
    if g.vertex_count() < 3 || !g.is_connected() {
        return None;
    }
    let tree = split_decomposition(g);
    tree.nodes
        .iter()
        .all(|n| n.kind.is_degenerate())
        .then_some(SkTree { tree, root: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_bush, BushMethod};

    fn is_bush(g: &SimpleGraph) -> bool {
        check_bush(g, BushMethod::Reduction)
    }

    #[test]
    fn cliques_split_and_five_cycle_does_not() {
        let s = find_split(&SimpleGraph::complete(4)).unwrap();
        assert_eq!(s.a1.count_ones(), 2);
        assert!(find_split(&SimpleGraph::cycle(5)).is_none());
    }

    #[test]
    fn path_split_has_single_frontiers() {
        let s = find_split(&SimpleGraph::path(4)).unwrap();
        assert_eq!(s.b1.count_ones(), 1);
        assert_eq!(s.b2.count_ones(), 1);
    }

    #[test]
    fn small_graphs_give_one_node() {
        let t = split_decomposition(&SimpleGraph::complete(3));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::Clique);
        let t = split_decomposition(&SimpleGraph::cycle(5));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::Prime);
    }

    #[test]
    fn clique_and_star_stay_whole() {
        let t = split_decomposition(&SimpleGraph::complete(6));
        assert_eq!(t.nodes.len(), 1);
        let t = split_decomposition(&SimpleGraph::star(5));
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].kind, NodeKind::Star { center: 0 });
    }

    #[test]
    fn path_tree_shape() {
        // P5: stars joined center to center or leaf to leaf
        let g = SimpleGraph::path(5);
        let t = split_decomposition(&g);
        assert!(t.is_reduced());
        assert_eq!(t.nodes.len(), 3);
        assert_eq!(accessibility_graph(&t), g);
    }

    #[test]
    fn roundtrip_on_all_connected_five_vertex_graphs() {
        for code in 0..1u64 << 10 {
            let g = SimpleGraph::from_code(5, code);
            if !g.is_connected() {
                continue;
            }
            let t = split_decomposition(&g);
            assert!(t.is_reduced(), "{g}");
            assert_eq!(accessibility_graph(&t), g);
            assert_eq!(sk_tree(&g).is_some(), is_bush(&g), "{g}");
        }
    }
}
