//! Pulleys and cordages: the tree factorization of connected analytic
//! rooted diagrams.
//!
//! A rooted diagram is stored as a canonical word whose root chord `0`
//! starts at position `0`. Its left side is the part of the word between the
//! two root endpoints and its right side is the part after the second one.

use serde::{Deserialize, Serialize};

use crate::analyticity::is_analytic;
use crate::diagram::{LinearDiagram, RootedDiagram};
use crate::error::{Error, Result};
use crate::graph::{bits, sk_tree, GraphTree, NodeKind, SimpleGraph, TreeVertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Pulley {
    /// `0 1..n 0 1..n`: all chords cross pairwise.
    T { n: usize },
    /// `0 1..n 0 n..1`: the root crosses every chord, the others are nested.
    DStar { n: usize },
    /// `0 1..k m k..1 0 (k+2)..(k+l+1) m (k+l+1)..(k+2)` with `m = k+1`:
    /// only `m` crosses the root, `k` chords surround its left end and `l`
    /// its right end.
    DPrime { k: usize, l: usize },
}

impl Pulley {
    /// Number of non-root chords, which is the number of children.
    pub fn arity(self) -> usize {
        match self {
            Pulley::T { n } | Pulley::DStar { n } => n,
            Pulley::DPrime { k, l } => k + l + 1,
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            Pulley::T { n } | Pulley::DStar { n } => n > 1,
            Pulley::DPrime { k, l } => k + l > 0,
        }
    }

    /// The pulley as a canonical rooted word.
    pub fn word(self) -> Vec<u8> {
        let up = |a: usize, b: usize| (a..=b).map(|c| c as u8).collect::<Vec<_>>();
        let down = |a: usize, b: usize| (a..=b).rev().map(|c| c as u8).collect::<Vec<_>>();
        let mut w = vec![0u8];
        match self {
            Pulley::T { n } => {
                w.extend(up(1, n));
                w.push(0);
                w.extend(up(1, n));
            }
            Pulley::DStar { n } => {
                w.extend(up(1, n));
                w.push(0);
                w.extend(down(1, n));
            }
            Pulley::DPrime { k, l } => {
                let m = k + 1;
                w.extend(up(1, k));
                w.push(m as u8);
                w.extend(down(1, k));
                w.push(0);
                w.extend(up(m + 1, m + l));
                w.push(m as u8);
                w.extend(down(m + 1, m + l));
            }
        }
        w
    }

    pub fn diagram(self) -> RootedDiagram {
        LinearDiagram::from_raw(&self.word())
    }

    /// Index of the child crossing the root in a `D'` pulley.
    pub fn crossing_child(self) -> Option<usize> {
        match self {
            Pulley::DPrime { k, .. } => Some(k),
            _ => None,
        }
    }
}

/// A plane tree of pulleys. Children of a node are listed in the reading
/// order of the pulley's non-root chords, starting after the root head.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cordage {
    /// The crossing pair `0 1 0 1`, contributing one chord.
    Leaf,
    Node {
        pulley: Pulley,
        children: Vec<Cordage>,
    },
}

impl Cordage {
    /// Number of leaves, which is the number of non-root chords after contraction.
    pub fn size(&self) -> usize {
        match self {
            Cordage::Leaf => 1,
            Cordage::Node { children, .. } => children.iter().map(Cordage::size).sum(),
        }
    }

    pub fn pulley(&self) -> Option<Pulley> {
        match self {
            Cordage::Leaf => None,
            Cordage::Node { pulley, .. } => Some(*pulley),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        match self {
            Cordage::Leaf => true,
            Cordage::Node { pulley, children } => {
                pulley.is_valid()
                    && children.len() == pulley.arity()
                    && children.iter().all(Cordage::is_well_formed)
            }
        }
    }
}

/// Adjacency restrictions of reduced cordages: no `T` under `T`, no `D*`
/// under `D*`, and under `D'` the crossing child is not `D'` while the
/// other children are not `D*`.
pub fn is_reduced(c: &Cordage) -> bool {
    let Cordage::Node { pulley, children } = c else {
        return true;
    };
    if !pulley.is_valid() || children.len() != pulley.arity() {
        return false;
    }
    children
        .iter()
        .enumerate()
        .all(|(i, child)| allowed(*pulley, i, child) && is_reduced(child))
}

/// Left and right sides of the contraction, root excluded.
fn expand(c: &Cordage, next: &mut u8) -> (Vec<u8>, Vec<u8>) {
    match c {
        Cordage::Leaf => {
            let id = *next;
            *next += 1;
            (vec![id], vec![id])
        }
        Cordage::Node { pulley, children } => {
            let sides: Vec<(Vec<u8>, Vec<u8>)> =
                children.iter().map(|ch| expand(ch, next)).collect();
            let word = pulley.word();
            let mut seen = vec![false; pulley.arity() + 1];
            let (mut left, mut right) = (Vec::new(), Vec::new());
            let mut after_root = false;
            for &c in &word[1..] {
                if c == 0 {
                    after_root = true;
                    continue;
                }
                let (l, r) = &sides[c as usize - 1];
                // first occurrence receives the child's right side
                let piece = if seen[c as usize] { l } else { r };
                seen[c as usize] = true;
                if after_root {
                    right.extend_from_slice(piece);
                } else {
                    left.extend_from_slice(piece);
                }
            }
            (left, right)
        }
    }
}

/// Inserts every child pulley into its chord: the child's left side goes
/// to the chord's second endpoint and its right side to the first.
pub fn contract(c: &Cordage) -> RootedDiagram {
    let mut next = 1u8;
    let (left, right) = expand(c, &mut next);
    let mut raw = vec![0u8];
    raw.extend(left);
    raw.push(0);
    raw.extend(right);
    LinearDiagram::from_raw(&raw)
}

/// Leaves of the subtree reached from node `k` through its vertex `v`.
fn leaves_through(t: &GraphTree, k: usize, v: usize) -> u64 {
    match t.nodes[k].phi[v] {
        TreeVertex::Leaf(x) => 1 << x,
        TreeVertex::Node(m) => {
            let entry = t.nodes[m].marker(TreeVertex::Node(k)).expect("tree link");
            (0..t.nodes[m].phi.len())
                .filter(|&u| u != entry)
                .map(|u| leaves_through(t, m, u))
                .fold(0, |a, b| a | b)
        }
    }
}

/// The unique reduced cordage contracting to `d`, rooted at chord `0`.
pub fn decompose(d: &RootedDiagram) -> Result<Cordage> {
    if d.chords() < 2 {
        return Err(Error::InvalidCordage(
            "a rooted diagram needs at least two chords".into(),
        ));
    }
    let g = SimpleGraph::interlacement(d);
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !is_analytic(d) {
        return Err(Error::NotAnalytic);
    }
    decompose_checked(d)
}

fn decompose_checked(d: &RootedDiagram) -> Result<Cordage> {
    if d.chords() == 2 {
        return Ok(Cordage::Leaf);
    }
    let g = SimpleGraph::interlacement(d);
    let sk = sk_tree(&g).ok_or(Error::NotAnalytic)?;
    let t = &sk.tree;
    let (k, p) = t.leaf_attachment(0).expect("root leaf");
    let node = &t.nodes[k];
    let verts: Vec<usize> = (0..node.phi.len()).filter(|&v| v != p).collect();
    let groups: Vec<u64> = verts.iter().map(|&v| leaves_through(t, k, v)).collect();

    // which group each chord belongs to
    let mut group_of = vec![usize::MAX; d.chords()];
    for (i, &mask) in groups.iter().enumerate() {
        for c in bits(mask) {
            group_of[c] = i;
        }
    }
    // collapse each run of a group into one letter and remember the runs
    let w = d.word();
    let mut collapsed: Vec<u8> = vec![0];
    let mut runs: Vec<Vec<Vec<u8>>> = vec![Vec::new(); groups.len()];
    let mut prev: Option<usize> = None;
    for &c in &w[1..] {
        if c == 0 {
            collapsed.push(0);
            prev = None;
            continue;
        }
        let gi = group_of[c as usize];
        if prev == Some(gi) {
            runs[gi].last_mut().expect("open run").push(c);
        } else {
            runs[gi].push(vec![c]);
            collapsed.push(gi as u8 + 1);
            prev = Some(gi);
        }
    }
    if runs.iter().any(|r| r.len() != 2) {
        return Err(Error::InvalidCordage(format!(
            "a split side of {d} does not occupy exactly two arcs"
        )));
    }
    // canonical relabeling fixes the child order
    let canon = LinearDiagram::from_raw(&collapsed);
    let arity = groups.len();
    let pulley = match node.kind {
        NodeKind::Clique => Pulley::T { n: arity },
        NodeKind::Star { center } if center == p => Pulley::DStar { n: arity },
        NodeKind::Star { .. } => {
            let m = (1..=arity)
                .find(|&c| canon.crosses(0, c))
                .ok_or_else(|| Error::InvalidCordage("no chord crosses the root".into()))?;
            Pulley::DPrime {
                k: m - 1,
                l: arity - m,
            }
        }
        NodeKind::Prime => return Err(Error::NotAnalytic),
    };
    if canon.word() != pulley.word().as_slice() {
        return Err(Error::InvalidCordage(format!(
            "collapsed word {canon} is not the pulley {pulley:?}"
        )));
    }
    // map canonical labels back to groups
    let mut order = Vec::with_capacity(arity);
    let mut seen = vec![false; arity + 1];
    for &c in &collapsed[1..] {
        if c != 0 && !seen[c as usize] {
            seen[c as usize] = true;
            order.push(c as usize - 1);
        }
    }
    let children = order
        .into_iter()
        .map(|gi| {
            let (first, second) = (&runs[gi][0], &runs[gi][1]);
            // child = x L x R with L at the second run and R at the first
            let x = u8::MAX - 1;
            let mut raw = vec![x];
            raw.extend_from_slice(second);
            raw.push(x);
            raw.extend_from_slice(first);
            decompose_checked(&LinearDiagram::from_raw(&raw))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cordage::Node { pulley, children })
}

/// All reduced cordages with `size` leaves.
pub fn reduced_cordages(size: usize) -> Vec<Cordage> {
    let mut memo: Vec<Option<Vec<Cordage>>> = vec![None; size + 1];
    build(size, &mut memo)
}

fn build(size: usize, memo: &mut Vec<Option<Vec<Cordage>>>) -> Vec<Cordage> {
    if let Some(v) = &memo[size] {
        return v.clone();
    }
    let mut out = Vec::new();
    if size == 1 {
        out.push(Cordage::Leaf);
    }
    for arity in 2..=size {
        let mut pulleys = vec![Pulley::T { n: arity }, Pulley::DStar { n: arity }];
        for k in 0..arity {
            pulleys.push(Pulley::DPrime {
                k,
                l: arity - 1 - k,
            });
        }
        for pulley in pulleys {
            for parts in compositions(size, arity) {
                let options: Vec<Vec<Cordage>> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| {
                        build(s, memo)
                            .into_iter()
                            .filter(|ch| allowed(pulley, i, ch))
                            .collect()
                    })
                    .collect();
                product(&options, &mut Vec::new(), &mut |children| {
                    out.push(Cordage::Node {
                        pulley,
                        children: children.to_vec(),
                    })
                });
            }
        }
    }
    memo[size] = Some(out.clone());
    out
}

fn allowed(parent: Pulley, i: usize, child: &Cordage) -> bool {
    child.pulley().is_none_or(|p| edge_ok(parent, i, p))
}

/// Whether pulley `child` may hang from child slot `i` of `parent`.
fn edge_ok(parent: Pulley, i: usize, child: Pulley) -> bool {
    match (parent, child) {
        (Pulley::T { .. }, Pulley::T { .. }) => false,
        (Pulley::DStar { .. }, Pulley::DStar { .. }) => false,
        (Pulley::DPrime { k, .. }, p) if i == k => !matches!(p, Pulley::DPrime { .. }),
        (Pulley::DPrime { .. }, p) => !matches!(p, Pulley::DStar { .. }),
        _ => true,
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product(options: &[Vec<Cordage>], acc: &mut Vec<Cordage>, f: &mut dyn FnMut(&[Cordage])) {
    if acc.len() == options.len() {
        f(acc);
        return;
    }
    for c in &options[acc.len()] {
        acc.push(c.clone());
        product(options, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    #[test]
    fn pulley_words() {
        assert_eq!(Pulley::T { n: 2 }.word(), vec![0, 1, 2, 0, 1, 2]);
        assert_eq!(Pulley::DStar { n: 2 }.word(), vec![0, 1, 2, 0, 2, 1]);
        assert_eq!(Pulley::DPrime { k: 1, l: 0 }.word(), vec![0, 1, 2, 1, 0, 2]);
        assert_eq!(Pulley::DPrime { k: 0, l: 1 }.word(), vec![0, 1, 0, 2, 1, 2]);
        for p in [Pulley::T { n: 3 }, Pulley::DStar { n: 4 }, Pulley::DPrime { k: 2, l: 1 }] {
            assert_eq!(LinearDiagram::from_raw(&p.word()).word(), p.word().as_slice());
        }
    }

    #[test]
    fn leaf_contracts_to_crossing_pair() {
        assert_eq!(contract(&Cordage::Leaf), parse_diagram("abab").unwrap());
        assert_eq!(decompose(&parse_diagram("abab").unwrap()).unwrap(), Cordage::Leaf);
    }

    #[test]
    fn t2_with_two_leaves() {
        let c = Cordage::Node {
            pulley: Pulley::T { n: 2 },
            children: vec![Cordage::Leaf, Cordage::Leaf],
        };
        let d = contract(&c);
        assert_eq!(d.chords(), 3);
        assert!(is_analytic(&d));
        assert!(SimpleGraph::interlacement(&d).is_connected());
        assert_eq!(decompose(&d).unwrap(), c);
    }

    #[test]
    fn reducedness_rules() {
        let t2 = |a, b| Cordage::Node {
            pulley: Pulley::T { n: 2 },
            children: vec![a, b],
        };
        assert!(is_reduced(&Cordage::Leaf));
        assert!(is_reduced(&t2(Cordage::Leaf, Cordage::Leaf)));
        assert!(!is_reduced(&t2(t2(Cordage::Leaf, Cordage::Leaf), Cordage::Leaf)));
        let ds = Cordage::Node {
            pulley: Pulley::DStar { n: 2 },
            children: vec![Cordage::Leaf, Cordage::Leaf],
        };
        let dp = |children| Cordage::Node {
            pulley: Pulley::DPrime { k: 1, l: 0 },
            children,
        };
        assert!(!is_reduced(&dp(vec![ds.clone(), Cordage::Leaf])));
        assert!(is_reduced(&dp(vec![Cordage::Leaf, ds])));
        assert!(!is_reduced(&dp(vec![Cordage::Leaf, dp(vec![Cordage::Leaf, Cordage::Leaf])])));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            decompose(&parse_diagram("aabb").unwrap()),
            Err(Error::Disconnected)
        );
        assert_eq!(
            decompose(&parse_diagram("abcadcedbe").unwrap()),
            Err(Error::NotAnalytic)
        );
        assert!(decompose(&parse_diagram("aa").unwrap()).is_err());
    }

    #[test]
    fn small_reduced_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| reduced_cordages(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 27, 226]);
    }
}
