//! Exhaustive enumeration of sphere curves and the rooting construction
//! (breadth-first numbering of boundaries, canonical marked points).

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;

use super::{CombinatorialCurve, CombinatorialMap, Passport};
use crate::analyticity::is_analytic;
use crate::enumeration::{all_diagrams, Budget};
use crate::error::{Error, Result};

/// Calls `f` with every fixed-point-free involution on `0..n`.
pub fn for_each_matching(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(p: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        let Some(i) = p.iter().position(|&x| x == usize::MAX) else {
            f(p);
            return;
        };
        for j in i + 1..p.len() {
            if p[j] == usize::MAX {
                p[i] = j;
                p[j] = i;
                go(p, f);
                p[i] = usize::MAX;
                p[j] = usize::MAX;
            }
        }
    }
    if n.is_multiple_of(2) {
        go(&mut vec![usize::MAX; n], f);
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap_or(i);
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Passports with the same root size and the tail reordered in every
/// distinct way.
fn tail_orderings(k: &Passport) -> Vec<Vec<usize>> {
    let parts = k.parts();
    let mut tail = parts[1..].to_vec();
    tail.sort_unstable();
    let mut out = Vec::new();
    loop {
        let mut p = vec![parts[0]];
        p.extend_from_slice(&tail);
        out.push(p);
        if !next_permutation(&mut tail) {
            break;
        }
    }
    out
}

/// Connected genus-0 maps whose vertex `v` has rays
/// `offset_v .. offset_v + 2k_v`, ray `offset_v` being its mark.
pub fn marked_slicings(k: &Passport) -> Vec<CombinatorialMap> {
    let degrees: Vec<usize> = k.parts().iter().map(|&x| 2 * x).collect();
    let mut out = Vec::new();
    for_each_matching(2 * k.c(), &mut |alpha| {
        let map = CombinatorialMap::from_degrees(&degrees, alpha.to_vec()).expect("valid map");
        if map.is_connected() && map.euler_characteristic() == 2 {
            out.push(map);
        }
    });
    out
}

/// Forgets numbering and marks: groups the marked slicings over all
/// orderings of `k_2..k_s` by the rooted map they induce at ray 0.
pub fn rooted_dissection_fibers(k: &Passport) -> BTreeMap<Vec<u32>, usize> {
    let mut fibers = BTreeMap::new();
    for order in tail_orderings(k) {
        let p = Passport(order);
        for map in marked_slicings(&p) {
            *fibers.entry(map.rooted_code(0)).or_insert(0) += 1;
        }
    }
    fibers
}

/// Sizes `k` read in breadth-first order from `root`.
fn bfs_passport(map: &CombinatorialMap, root: usize) -> Vec<usize> {
    let vertices = map.vertices();
    map.bfs_numbering(root)
        .iter()
        .map(|&(v, _)| vertices[v].len() / 2)
        .collect()
}

/// Chord involutions of all analytic linear diagrams with `k` chords.
fn analytic_partners(k: usize) -> Vec<Vec<usize>> {
    all_diagrams(k)
        .filter(is_analytic)
        .map(|d| d.partners())
        .collect()
}

/// Rooted analytic curves on the sphere with passport `k`, counted up to
/// isomorphism preserving the root ray. The passport of a rooted curve is
/// read in the breadth-first numbering of its vertices.
pub fn brute_force_rooted_curves(k: &Passport, budget: &Budget) -> Result<BigUint> {
    if k.s() == 0 {
        return Err(Error::InvalidPassport("empty passport".into()));
    }
    if k.c() > budget.max_curve_edges {
        return Err(Error::BudgetExceeded {
            what: "curve edges",
            value: k.c(),
            limit: budget.max_curve_edges,
        });
    }
    let max = k.parts().iter().copied().max().unwrap_or(0);
    let taus: Vec<Vec<Vec<usize>>> = (0..=max).map(analytic_partners).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for order in tail_orderings(k) {
        let p = Passport(order);
        let offsets: Vec<usize> = p
            .parts()
            .iter()
            .scan(0, |acc, &kv| {
                let o = *acc;
                *acc += 2 * kv;
                Some(o)
            })
            .collect();
        for map in marked_slicings(&p) {
            if bfs_passport(&map, 0) != k.parts() {
                continue;
            }
            // odometer over one analytic diagram per vertex
            let mut choice = vec![0usize; p.s()];
            let mut tau = vec![0usize; map.ray_count()];
            loop {
                for (v, &kv) in p.parts().iter().enumerate() {
                    for (i, &j) in taus[kv][choice[v]].iter().enumerate() {
                        tau[offsets[v] + i] = offsets[v] + j;
                    }
                }
                let curve = CombinatorialCurve {
                    map: map.clone(),
                    tau: tau.clone(),
                };
                seen.insert(curve.rooted_code(0));
                let mut v = 0;
                while v < p.s() {
                    choice[v] += 1;
                    if choice[v] < taus[p.parts()[v]].len() {
                        break;
                    }
                    choice[v] = 0;
                    v += 1;
                }
                if v == p.s() {
                    break;
                }
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// Rooted analytic sphere curves with `c` edges, over all passports.
pub fn sphere_total(c: usize, budget: &Budget) -> Result<BigUint> {
    Passport::compositions(c)
        .iter()
        .map(|k| brute_force_rooted_curves(k, budget))
        .sum()
}

/// Distinguished ray on every vertex, listed in breadth-first order from
/// `root`. Each is the endpoint of the least path from the root that
/// enters every vertex at most once and walks around vertices along `σ`;
/// paths compare by their vertex sequence (shorter first, then
/// lexicographic in the numbering), then by the steps taken at each vertex.
pub fn boundary_marking(map: &CombinatorialMap, root: usize) -> Vec<usize> {
    let order = map.bfs_numbering(root);
    let vertex_of = map.vertex_of();
    let nv = order.len();
    let mut number = vec![0; map.vertices().len()];
    for (i, &(v, _)) in order.iter().enumerate() {
        number[v] = i + 1;
    }

    type Key = (usize, Vec<usize>, Vec<usize>);
    let mut best: Vec<Option<(Key, usize)>> = vec![None; nv];

    struct Search<'a> {
        map: &'a CombinatorialMap,
        vertex_of: &'a [usize],
        number: &'a [usize],
        visited: Vec<bool>,
        u: Vec<usize>,
        steps: Vec<usize>,
        best: &'a mut [Option<(Key, usize)>],
    }

    impl Search<'_> {
        fn go(&mut self, entry: usize) {
            let w = self.vertex_of[entry];
            let target = self.number[w] - 1;
            let mut key_steps = self.steps.clone();
            key_steps.push(0);
            let key = (self.u.len(), self.u.clone(), key_steps);
            if self.best[target].as_ref().is_none_or(|(k, _)| key < *k) {
                self.best[target] = Some((key, entry));
            }
            let mut x = entry;
            let mut a = 0;
            loop {
                let y = self.map.alpha[x];
                let w2 = self.vertex_of[y];
                if !self.visited[w2] {
                    self.visited[w2] = true;
                    self.u.push(self.number[w2]);
                    self.steps.push(a);
                    self.go(y);
                    self.steps.pop();
                    self.u.pop();
                    self.visited[w2] = false;
                }
                x = self.map.sigma[x];
                a += 1;
                if x == entry {
                    break;
                }
            }
        }
    }

    let mut visited = vec![false; number.len()];
    visited[vertex_of[root]] = true;
    let mut search = Search {
        map,
        vertex_of: &vertex_of,
        number: &number,
        visited,
        u: vec![1],
        steps: Vec::new(),
        best: &mut best,
    };
    search.go(root);
    best.into_iter()
        .map(|b| b.map(|(_, r)| r).expect("connected map"))
        .collect()
}
