//! Combinatorial curves: chord diagrams glued by a ray pairing, seen as
//! combinatorial maps `(R, σ, α)` with an extra chord involution `τ`.

mod brute;
mod count;

pub use brute::{
    boundary_marking, brute_force_rooted_curves, for_each_matching, marked_slicings,
    rooted_dissection_fibers, sphere_total,
};
pub use count::{
    marked_curve_count, pluecker_admissible, rooted_curve_count, rp2_bound, sphere_bound,
    tutte_slicings, Variant, RHO,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::LinearDiagram;
use crate::error::{Error, Result};

/// Chords per vertex, `(k_1, ..., k_s)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Passport(Vec<usize>);

impl Passport {
    pub fn new(k: Vec<usize>) -> Result<Self> {
        if k.contains(&0) {
            return Err(Error::InvalidPassport("every vertex needs at least one chord".into()));
        }
        Ok(Self(k))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices `s`.
    pub fn s(&self) -> usize {
        self.0.len()
    }

    /// Number of edges `c = Σ k_v`.
    pub fn c(&self) -> usize {
        self.0.iter().sum()
    }

    /// All passports with `c` edges, as ordered tuples.
    pub fn compositions(c: usize) -> Vec<Passport> {
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Passport>) {
            if rest == 0 {
                out.push(Passport(cur.clone()));
                return;
            }
            for k in 1..=rest {
                cur.push(k);
                go(rest - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if c > 0 {
            go(c, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Passport {
    type Error = Error;

    fn try_from(k: Vec<usize>) -> Result<Self> {
        Self::new(k)
    }
}

impl From<Passport> for Vec<usize> {
    fn from(p: Passport) -> Self {
        p.0
    }
}

impl FromStr for Passport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self(Vec::new()));
        }
        let k = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::InvalidPassport(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::new(k)
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn is_involution(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| j < p.len() && j != i && p[j] == i)
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            cyc.push(r);
            r = p[r];
        }
        out.push(cyc);
    }
    out
}

/// Orbits of the group generated by two permutations.
fn orbits(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let r = orbit[i];
            for next in [a[r], b[r]] {
                if !seen[next] {
                    seen[next] = true;
                    orbit.push(next);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// A combinatorial map on rays `0..n`: vertex rotation `σ` and edge
/// pairing `α`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CombinatorialMap {
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
}

impl CombinatorialMap {
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self> {
        if sigma.len() != alpha.len() || !is_permutation(&sigma) {
            return Err(Error::InvalidCurve("sigma must be a permutation of the rays".into()));
        }
        if !is_involution(&alpha) {
            return Err(Error::InvalidCurve("alpha must be a fixed-point-free involution".into()));
        }
        Ok(Self { sigma, alpha })
    }

    /// Map whose vertex `v` carries rays `offset_v .. offset_v + degrees[v]`
    /// in rotation order.
    pub fn from_degrees(degrees: &[usize], alpha: Vec<usize>) -> Result<Self> {
        let mut sigma = Vec::with_capacity(alpha.len());
        let mut off = 0;
        for &d in degrees {
            sigma.extend((0..d).map(|i| off + (i + 1) % d));
            off += d;
        }
        Self::new(sigma, alpha)
    }

    pub fn ray_count(&self) -> usize {
        self.sigma.len()
    }

    /// Vertices as the cycles of `σ`, each listed from its smallest ray.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.sigma)
    }

    /// `vertex_of[r]` indexes [`Self::vertices`].
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.ray_count()];
        for (v, cyc) in self.vertices().iter().enumerate() {
            for &r in cyc {
                out[r] = v;
            }
        }
        out
    }

    /// Faces as the cycles of `σ∘α`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let phi: Vec<usize> = self.alpha.iter().map(|&a| self.sigma[a]).collect();
        cycles(&phi)
    }

    pub fn is_connected(&self) -> bool {
        self.ray_count() == 0 || orbits(&self.sigma, &self.alpha).len() == 1
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().len() as i64 - (self.ray_count() / 2) as i64 + self.faces().len() as i64
    }

    /// Genus `(2 - V + E - F)/2` of a connected map.
    pub fn genus(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let twice = 2 - self.euler_characteristic();
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::InvalidCurve(format!("Euler characteristic {}", 2 - twice)));
        }
        Ok((twice / 2) as usize)
    }

    /// Vertices in breadth-first order from the vertex of `root`. Neighbors
    /// of a vertex are visited in rotation order, starting from the ray
    /// through which it was reached (from `root` for the first vertex).
    /// Also returns, for each vertex in that order, its starting ray.
    pub fn bfs_numbering(&self, root: usize) -> Vec<(usize, usize)> {
        let vertex_of = self.vertex_of();
        let nv = self.vertices().len();
        let mut numbered = vec![false; nv];
        let mut order = vec![(vertex_of[root], root)];
        numbered[vertex_of[root]] = true;
        let mut i = 0;
        while i < order.len() {
            let (_, start) = order[i];
            let mut r = start;
            loop {
                let other = self.alpha[r];
                let w = vertex_of[other];
                if !numbered[w] {
                    numbered[w] = true;
                    order.push((w, other));
                }
                r = self.sigma[r];
                if r == start {
                    break;
                }
            }
            i += 1;
        }
        order
    }

    /// Code of the rooted map: rays renumbered in discovery order of a
    /// search from `root` through `σ` and `α`. Equal codes mean rooted
    /// isomorphic maps (for connected maps).
    pub fn rooted_code(&self, root: usize) -> Vec<u32> {
        self.rooted_code_with(root, None)
    }

    fn rooted_code_with(&self, root: usize, tau: Option<&[usize]>) -> Vec<u32> {
        let n = self.ray_count();
        const NONE: u32 = u32::MAX;
        let mut label = vec![NONE; n];
        let mut order = vec![root];
        label[root] = 0;
        let mut i = 0;
        while i < order.len() {
            let r = order[i];
            let gens = [Some(self.sigma[r]), Some(self.alpha[r]), tau.map(|t| t[r])];
            for next in gens.into_iter().flatten() {
                if label[next] == NONE {
                    label[next] = order.len() as u32;
                    order.push(next);
                }
            }
            i += 1;
        }
        let mut code = Vec::with_capacity(3 * n);
        for &r in &order {
            code.push(label[self.sigma[r]]);
            code.push(label[self.alpha[r]]);
            if let Some(t) = tau {
                code.push(label[t[r]]);
            }
        }
        code
    }
}

/// Diagrams `C_1..C_s` glued by a ray pairing `α`. Rays of vertex `v`
/// follow the letters of its word; `τ` pairs equal letters.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CombinatorialCurve {
    pub map: CombinatorialMap,
    pub tau: Vec<usize>,
}

impl CombinatorialCurve {
    pub fn new(diagrams: &[LinearDiagram], alpha: Vec<usize>) -> Result<Self> {
        let degrees: Vec<usize> = diagrams.iter().map(LinearDiagram::len).collect();
        if degrees.contains(&0) {
            return Err(Error::InvalidCurve("empty diagram at a vertex".into()));
        }
        let map = CombinatorialMap::from_degrees(&degrees, alpha)?;
        let mut tau = Vec::with_capacity(map.ray_count());
        let mut off = 0;
        for d in diagrams {
            let partners = d.partners();
            tau.extend(partners.iter().map(|&p| off + p));
            off += d.len();
        }
        Self::from_permutations(map.sigma, map.alpha, tau)
    }

    pub fn from_permutations(sigma: Vec<usize>, alpha: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        let map = CombinatorialMap::new(sigma, alpha)?;
        if tau.len() != map.ray_count() || !is_involution(&tau) {
            return Err(Error::InvalidCurve("tau must be a fixed-point-free involution".into()));
        }
        let vertex_of = map.vertex_of();
        if (0..tau.len()).any(|r| vertex_of[r] != vertex_of[tau[r]]) {
            return Err(Error::InvalidCurve("tau must pair rays of the same vertex".into()));
        }
        Ok(Self { map, tau })
    }

    pub fn ray_count(&self) -> usize {
        self.map.ray_count()
    }

    pub fn genus(&self) -> Result<usize> {
        self.map.genus()
    }

    /// Orbits of `⟨α, τ⟩`.
    pub fn strands(&self) -> Vec<Vec<usize>> {
        orbits(&self.map.alpha, &self.tau)
    }

    /// Chord diagram at each vertex, read from its smallest ray.
    pub fn diagrams(&self) -> Vec<LinearDiagram> {
        self.map
            .vertices()
            .iter()
            .map(|cyc| {
                let pos = |r: usize| cyc.iter().position(|&x| x == r).unwrap_or(0);
                let mut word = vec![usize::MAX; cyc.len()];
                let mut next = 0;
                for (i, &r) in cyc.iter().enumerate() {
                    if word[i] == usize::MAX {
                        word[i] = next;
                        word[pos(self.tau[r])] = next;
                        next += 1;
                    }
                }
                LinearDiagram::from_word(&word).expect("tau pairs rays within a vertex")
            })
            .collect()
    }

    pub fn rooted_code(&self, root: usize) -> Vec<u32> {
        self.map.rooted_code_with(root, Some(&self.tau))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_diagram;

    #[test]
    fn circle_on_the_sphere() {
        let c = CombinatorialCurve::new(&[parse_diagram("aa").unwrap()], vec![1, 0]).unwrap();
        assert_eq!(c.genus().unwrap(), 0);
        assert_eq!(c.strands().len(), 1);
    }

    #[test]
    fn torus_map() {
        let m = CombinatorialMap::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
        assert_eq!((m.vertices().len(), m.faces().len()), (1, 1));
        assert_eq!(m.genus().unwrap(), 1);
        // conjugating by a relabeling keeps the genus
        let p = [2, 0, 3, 1];
        let mut sigma = vec![0; 4];
        let mut alpha = vec![0; 4];
        for r in 0..4 {
            sigma[p[r]] = p[m.sigma[r]];
            alpha[p[r]] = p[m.alpha[r]];
        }
        assert_eq!(CombinatorialMap::new(sigma, alpha).unwrap().genus().unwrap(), 1);
    }

    #[test]
    fn two_vertices_two_edges() {
        let aa = parse_diagram("aa").unwrap();
        let c = CombinatorialCurve::new(&[aa.clone(), aa], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(c.genus().unwrap(), 0);
        assert_eq!(c.strands().len(), 1);
        assert_eq!(c.map.bfs_numbering(0).iter().map(|p| p.0).collect::<Vec<_>>(), [0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        let aa = parse_diagram("aa").unwrap();
        assert!(CombinatorialCurve::new(std::slice::from_ref(&aa), vec![0, 1]).is_err());
        let disconnected = CombinatorialCurve::new(&[aa.clone(), aa], vec![1, 0, 3, 2]).unwrap();
        assert!(matches!(disconnected.genus(), Err(Error::Disconnected)));
        assert!(CombinatorialCurve::from_permutations(vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![2, 3, 0, 1]).is_err());
        assert!("1,0".parse::<Passport>().is_err());
    }

    #[test]
    fn diagrams_round_trip() {
        let d = parse_diagram("abab").unwrap();
        let c = CombinatorialCurve::new(std::slice::from_ref(&d), vec![1, 0, 3, 2]).unwrap();
        assert_eq!(c.diagrams(), [d]);
    }

    #[test]
    fn compositions_count() {
        for c in 1..=6 {
            assert_eq!(Passport::compositions(c).len(), 1 << (c - 1));
        }
        assert_eq!("2, 1".parse::<Passport>().unwrap().parts(), [2, 1]);
    }
}
