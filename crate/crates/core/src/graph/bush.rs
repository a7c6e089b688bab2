//! Four independent tests for distance-hereditary graphs ("bushes" when connected).

use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{bits, SimpleGraph, UNREACHABLE};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BushMethod {
    /// Repeatedly delete pendant vertices, isolated vertices and twins.
    Reduction,
    /// Induced subgraphs keep the distances of the whole graph.
    Metric,
    /// Two of the three opposite-pair distance sums agree.
    FourPoint,
    /// No induced house, gem, domino or long cycle.
    Forbidden,
}

impl BushMethod {
    pub const ALL: [BushMethod; 4] = [
        BushMethod::Reduction,
        BushMethod::Metric,
        BushMethod::FourPoint,
        BushMethod::Forbidden,
    ];
}

impl FromStr for BushMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "reduction" => Ok(Self::Reduction),
            "metric" => Ok(Self::Metric),
            "four_point" | "four-point" => Ok(Self::FourPoint),
            "forbidden" => Ok(Self::Forbidden),
            _ => Err(Error::InvalidGraph(format!("unknown method {s:?}"))),
        }
    }
}

pub fn check_bush(g: &SimpleGraph, method: BushMethod) -> bool {
    match method {
        BushMethod::Reduction => by_reduction(g),
        BushMethod::Metric => by_metric(g),
        BushMethod::FourPoint => by_four_points(g),
        BushMethod::Forbidden => forbidden_witness(g).is_none(),
    }
}

fn by_reduction(g: &SimpleGraph) -> bool {
    let mut adj: Vec<u64> = (0..g.vertex_count()).map(|v| g.neighbors(v)).collect();
    let mut alive = g.all();
    let mut edges = g.edge_count();
    'outer: while edges > 0 {
        for v in bits(alive) {
            if adj[v].count_ones() <= 1 {
                edges -= adj[v].count_ones() as usize;
                remove(&mut adj, &mut alive, v);
                continue 'outer;
            }
        }
        for u in bits(alive) {
            for v in bits(alive & !((2u64 << u) - 1)) {
                let mask = !(1u64 << u | 1u64 << v);
                if adj[u] & mask == adj[v] & mask {
                    edges -= adj[v].count_ones() as usize;
                    remove(&mut adj, &mut alive, v);
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

fn remove(adj: &mut [u64], alive: &mut u64, v: usize) {
    for x in bits(adj[v]) {
        adj[x] &= !(1 << v);
    }
    adj[v] = 0;
    *alive &= !(1 << v);
}

fn by_metric(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    let dist = g.distance_matrix();
    // layers[u][d] = vertices at distance d from u in g
    let layers: Vec<Vec<u64>> = dist
        .iter()
        .map(|row| {
            let mut l = vec![0u64; n + 1];
            for (x, &d) in row.iter().enumerate() {
                if d != UNREACHABLE {
                    l[d as usize] |= 1 << x;
                }
            }
            l
        })
        .collect();
    let full = g.all();
    let mut sub = full;
    loop {
        for u in bits(sub) {
            let mut seen = 1u64 << u;
            let mut frontier = seen;
            let mut d = 0;
            while frontier != 0 {
                d += 1;
                let mut next = 0;
                for x in bits(frontier) {
                    next |= g.neighbors(x);
                }
                frontier = next & sub & !seen;
                if frontier & !layers[u][d] != 0 {
                    return false;
                }
                seen |= frontier;
            }
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & full;
    }
}

fn by_four_points(g: &SimpleGraph) -> bool {
    let dist = g.distance_matrix();
    for comp in g.component_masks() {
        let vs: Vec<usize> = bits(comp).collect();
        if vs.len() < 4 {
            continue;
        }
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                for c in b + 1..vs.len() {
                    for e in c + 1..vs.len() {
                        let (w, x, y, z) = (vs[a], vs[b], vs[c], vs[e]);
                        let s1 = dist[w][x] as u32 + dist[y][z] as u32;
                        let s2 = dist[w][y] as u32 + dist[x][z] as u32;
                        let s3 = dist[w][z] as u32 + dist[x][y] as u32;
                        if s1 != s2 && s2 != s3 && s1 != s3 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForbiddenShape {
    House,
    Gem,
    Domino,
    /// Induced cycle with the given number of vertices (at least 5).
    Cycle(usize),
}

impl ForbiddenShape {
    /// A labeled copy of the shape.
    pub fn graph(self) -> SimpleGraph {
        match self {
            ForbiddenShape::House => grow(&SimpleGraph::cycle(4), &[0, 1]),
            ForbiddenShape::Gem => grow(&SimpleGraph::path(4), &[0, 1, 2, 3]),
            ForbiddenShape::Domino => {
                let mut g = SimpleGraph::cycle(6);
                g.add_edge(1, 4);
                g
            }
            ForbiddenShape::Cycle(k) => SimpleGraph::cycle(k),
        }
    }
}

fn grow(g: &SimpleGraph, to: &[usize]) -> SimpleGraph {
    let n = g.vertex_count();
    let mut edges = g.edges();
    edges.extend(to.iter().map(|&t| (t, n)));
    SimpleGraph::from_edges(n + 1, &edges).expect("valid shape")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        p.swap(j, k - 1);
    }
}

type ShapeTable = Vec<Option<ForbiddenShape>>;

/// Labeled 5- and 6-vertex graphs isomorphic to a forbidden shape, by edge code.
fn tables() -> &'static (ShapeTable, ShapeTable) {
    static T: OnceLock<(ShapeTable, ShapeTable)> = OnceLock::new();
    T.get_or_init(|| {
        let mut five = vec![None; 1 << 10];
        for shape in [ForbiddenShape::House, ForbiddenShape::Gem, ForbiddenShape::Cycle(5)] {
            let g = shape.graph();
            for p in permutations(5) {
                five[g.permuted(&p).code() as usize] = Some(shape);
            }
        }
        let mut six = vec![None; 1 << 15];
        for shape in [ForbiddenShape::Domino, ForbiddenShape::Cycle(6)] {
            let g = shape.graph();
            for p in permutations(6) {
                six[g.permuted(&p).code() as usize] = Some(shape);
            }
        }
        (five, six)
    })
}

/// Smallest induced forbidden subgraph, as a vertex mask and its shape.
pub fn forbidden_witness(g: &SimpleGraph) -> Option<(u64, ForbiddenShape)> {
    let n = g.vertex_count();
    if n < 5 {
        return None;
    }
    let (five, six) = tables();
    for size in 5..=n {
        let mut found = None;
        for_each_subset(n, size, &mut |mask| {
            let shape = match size {
                5 => five[g.induced(mask).code() as usize],
                6 => six[g.induced(mask).code() as usize],
                _ => is_induced_cycle(g, mask).then_some(ForbiddenShape::Cycle(size)),
            };
            match shape {
                Some(s) => {
                    found = Some((mask, s));
                    false
                }
                None => true,
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn is_induced_cycle(g: &SimpleGraph, mask: u64) -> bool {
    bits(mask).all(|v| (g.neighbors(v) & mask).count_ones() == 2)
        && g.component_of(mask.trailing_zeros() as usize, mask) == mask
}

/// Calls `f` on each `k`-subset of `0..n` in colexicographic order until it
/// returns `false`.
pub(crate) fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(u64) -> bool) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    if k == 64 {
        f(u64::MAX);
        return;
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit_bit = n;
    loop {
        if !f(s) {
            return;
        }
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 {
            return;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if limit_bit < 64 && s >> limit_bit != 0 {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_agree(g: &SimpleGraph) -> bool {
        let r = check_bush(g, BushMethod::Reduction);
        BushMethod::ALL.iter().all(|&m| check_bush(g, m) == r)
    }

    #[test]
    fn five_cycle_fails_every_test() {
        let g = SimpleGraph::cycle(5);
        for m in BushMethod::ALL {
            assert!(!check_bush(&g, m), "{m:?}");
        }
    }

    #[test]
    fn shapes_are_rejected() {
        for s in [
            ForbiddenShape::House,
            ForbiddenShape::Gem,
            ForbiddenShape::Domino,
            ForbiddenShape::Cycle(7),
        ] {
            let g = s.graph();
            for m in BushMethod::ALL {
                assert!(!check_bush(&g, m), "{s:?} {m:?}");
            }
            assert_eq!(forbidden_witness(&g).map(|w| w.1), Some(s));
        }
    }

    #[test]
    fn small_shapes_have_expected_sizes() {
        assert_eq!(ForbiddenShape::House.graph().edge_count(), 6);
        assert_eq!(ForbiddenShape::Gem.graph().edge_count(), 7);
        assert_eq!(ForbiddenShape::Domino.graph().edge_count(), 7);
    }

    #[test]
    fn cliques_stars_paths_and_c4_are_bushes() {
        for g in [
            SimpleGraph::complete(6),
            SimpleGraph::star(5),
            SimpleGraph::path(7),
            SimpleGraph::cycle(4),
            SimpleGraph::new(3),
        ] {
            for m in BushMethod::ALL {
                assert!(check_bush(&g, m), "{g:?} {m:?}");
            }
        }
    }

    #[test]
    fn methods_agree_on_all_six_vertex_graphs() {
        for code in 0..1u64 << 15 {
            let g = SimpleGraph::from_code(6, code);
            assert!(all_agree(&g), "{g}");
        }
    }

    #[test]
    fn subset_walk_counts() {
        let mut c = 0;
        for_each_subset(7, 3, &mut |_| {
            c += 1;
            true
        });
        assert_eq!(c, 35);
        let mut c = 0;
        for_each_subset(64, 1, &mut |_| {
            c += 1;
            true
        });
        assert_eq!(c, 64);
    }

    #[test]
    fn method_names_parse() {
        assert_eq!("four_point".parse::<BushMethod>().unwrap(), BushMethod::FourPoint);
        assert!("nope".parse::<BushMethod>().is_err());
    }
}
