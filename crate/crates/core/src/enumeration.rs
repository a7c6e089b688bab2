//! Exhaustive generation and counting of diagrams and labeled bushes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analyticity::is_analytic;
use crate::diagram::{is_cyclic_representative, stabilizing_shifts, LinearDiagram};
use crate::error::{Error, Result};
use crate::graph::{check_bush, BushMethod, SimpleGraph};

const FREE: u8 = u8::MAX;

/// Exhaustive search limits. Defaults can be raised through the
/// environment variables `ACHORD_MAX_CHORDS`, `ACHORD_MAX_VERTICES` and
/// `ACHORD_MAX_CURVE_EDGES`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_chords: usize,
    pub max_vertices: usize,
    pub max_curve_edges: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_chords: 8,
            max_vertices: 6,
            max_curve_edges: 5,
        }
    }
}

impl Budget {
    pub fn from_env() -> Self {
        let read = |key: &str, default: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        };
        let d = Self::default();
        Self {
            max_chords: read("ACHORD_MAX_CHORDS", d.max_chords),
            max_vertices: read("ACHORD_MAX_VERTICES", d.max_vertices),
            max_curve_edges: read("ACHORD_MAX_CURVE_EDGES", d.max_curve_edges),
        }
    }

    /// A budget that allows everything up to the hard limits.
    pub fn unlimited() -> Self {
        Self {
            max_chords: 64,
            max_vertices: 11,
            max_curve_edges: usize::MAX,
        }
    }

    fn chords(&self, n: usize) -> Result<()> {
        if n > self.max_chords {
            return Err(Error::BudgetExceeded {
                what: "chords",
                value: n,
                limit: self.max_chords,
            });
        }
        Ok(())
    }

    fn vertices(&self, v: usize) -> Result<()> {
        let limit = self.max_vertices.min(11);
        if v > limit {
            return Err(Error::BudgetExceeded {
                what: "vertices",
                value: v,
                limit,
            });
        }
        Ok(())
    }
}

/// Perfect matchings of `0..2n` as canonical words. The first free position
/// is paired with each later free position in increasing order, so the
/// stream is deterministic and chord labels follow first occurrence.
pub struct WordStream {
    n: usize,
    word: Vec<u8>,
    first: Vec<usize>,
    second: Vec<usize>,
    /// Chords below this level are never changed.
    floor: usize,
    state: StreamState,
}

#[derive(PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl WordStream {
    pub fn new(n: usize) -> Self {
        let mut s = Self {
            n,
            word: vec![FREE; 2 * n],
            first: vec![0; n],
            second: vec![0; n],
            floor: 0,
            state: StreamState::Fresh,
        };
        s.fill_from(0);
        s
    }

    /// Only the matchings in which position `0` is paired with `partner`.
    pub fn with_first_pair(n: usize, partner: usize) -> Self {
        assert!(n >= 1 && (1..2 * n).contains(&partner));
        let mut s = Self {
            n,
            word: vec![FREE; 2 * n],
            first: vec![0; n],
            second: vec![0; n],
            floor: 1,
            state: StreamState::Fresh,
        };
        s.first[0] = 0;
        s.second[0] = partner;
        s.word[0] = 0;
        s.word[partner] = 0;
        s.fill_from(1);
        s
    }

    fn fill_from(&mut self, k0: usize) {
        for k in k0..self.n {
            let a = self.word.iter().position(|&c| c == FREE).expect("free slot");
            let b = a + 1 + self.word[a + 1..].iter().position(|&c| c == FREE).expect("pair");
            self.first[k] = a;
            self.second[k] = b;
            self.word[a] = k as u8;
            self.word[b] = k as u8;
        }
    }

    fn advance(&mut self) -> bool {
        let mut k = self.n;
        while k > self.floor {
            k -= 1;
            self.word[self.first[k]] = FREE;
            self.word[self.second[k]] = FREE;
            let from = self.second[k] + 1;
            if let Some(off) = self.word[from..].iter().position(|&c| c == FREE) {
                let b = from + off;
                self.second[k] = b;
                self.word[self.first[k]] = k as u8;
                self.word[b] = k as u8;
                self.fill_from(k + 1);
                return true;
            }
        }
        false
    }

    /// Next canonical word, borrowed until the following call.
    pub fn next_word(&mut self) -> Option<&[u8]> {
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => self.state = StreamState::Running,
            StreamState::Running => {
                if !self.advance() {
                    self.state = StreamState::Done;
                    return None;
                }
            }
        }
        Some(&self.word)
    }
}

impl Iterator for WordStream {
    type Item = LinearDiagram;

    fn next(&mut self) -> Option<LinearDiagram> {
        self.next_word().map(|w| LinearDiagram::from_canonical(w.to_vec()))
    }
}

/// All `(2n-1)!!` diagrams with `n` chords, each exactly once.
pub fn all_diagrams(n: usize) -> WordStream {
    WordStream::new(n)
}

/// Counts words with `n` chords satisfying `pred`, splitting the work by
/// the partner of position `0`.
pub fn count_words<F>(n: usize, pred: F) -> u64
where
    F: Fn(&[u8]) -> bool + Sync,
{
    if n == 0 {
        return pred(&[]) as u64;
    }
    (1..2 * n)
        .into_par_iter()
        .map(|j| {
            let mut s = WordStream::with_first_pair(n, j);
            let mut c = 0u64;
            while let Some(w) = s.next_word() {
                c += pred(w) as u64;
            }
            c
        })
        .sum()
}

fn analytic_word(w: &[u8]) -> bool {
    is_analytic(&LinearDiagram::from_canonical(w.to_vec()))
}

fn connected_word(w: &[u8]) -> bool {
    SimpleGraph::interlacement(&LinearDiagram::from_canonical(w.to_vec())).is_connected()
}

/// `A_n`: analytic linear diagrams with `n` chords.
pub fn count_analytic_linear(n: usize, budget: &Budget) -> Result<BigUint> {
    budget.chords(n)?;
    Ok(count_words(n, analytic_word).into())
}

/// `C_n`: connected analytic rooted diagrams with `n` non-root chords.
pub fn count_connected_rooted(n: usize, budget: &Budget) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidDiagram("size must be at least 1".into()));
    }
    budget.chords(n + 1)?;
    Ok(count_words(n + 1, |w| connected_word(w) && analytic_word(w)).into())
}

/// Rotation classes of analytic diagrams, with both Burnside aggregates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCount {
    pub n: usize,
    /// Orbits counted directly through canonical representatives.
    pub orbits: BigUint,
    /// Sum of stabilizer orders over all analytic linear diagrams.
    pub stabilizer_sum: BigUint,
    /// `stabilizer_sum / 2n`, the orbit count by Burnside's lemma.
    pub over_2n: BigRational,
    /// `stabilizer_sum / n`.
    pub over_n: BigRational,
}

pub fn count_cyclic_analytic(n: usize, budget: &Budget) -> Result<CyclicCount> {
    if n == 0 {
        return Err(Error::EmptyDiagram);
    }
    budget.chords(n)?;
    let (orbits, stab): (u64, u64) = (1..2 * n)
        .into_par_iter()
        .map(|j| {
            let mut s = WordStream::with_first_pair(n, j);
            let (mut o, mut st) = (0u64, 0u64);
            while let Some(w) = s.next_word() {
                let d = LinearDiagram::from_canonical(w.to_vec());
                if is_analytic(&d) {
                    st += stabilizing_shifts(&d).len() as u64;
                    o += is_cyclic_representative(&d) as u64;
                }
            }
            (o, st)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let big = |x: u64| num_bigint::BigInt::from(x);
    Ok(CyclicCount {
        n,
        orbits: orbits.into(),
        stabilizer_sum: stab.into(),
        over_2n: BigRational::new(big(stab), big(2 * n as u64)),
        over_n: BigRational::new(big(stab), big(n as u64)),
    })
}

/// Dihedral classes of analytic diagrams, counted two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralCount {
    pub n: usize,
    /// Diagrams equal to their dihedral canonical form.
    pub orbits: BigUint,
    /// Burnside count over the dihedral group of order `4n`.
    pub burnside: BigUint,
}

pub fn count_dihedral_analytic(n: usize, budget: &Budget) -> Result<DihedralCount> {
    if n == 0 {
        return Err(Error::EmptyDiagram);
    }
    budget.chords(n)?;
    let (orbits, fixed): (u64, u64) = (1..2 * n)
        .into_par_iter()
        .map(|j| {
            let mut s = WordStream::with_first_pair(n, j);
            let (mut o, mut f) = (0u64, 0u64);
            while let Some(w) = s.next_word() {
                let d = LinearDiagram::from_canonical(w.to_vec());
                if !is_analytic(&d) {
                    continue;
                }
                if crate::diagram::canonical_dihedral(&d).rep == d {
                    o += 1;
                }
                f += fixed_by_dihedral(&d);
            }
            (o, f)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let (q, r) = fixed.div_rem(&(4 * n as u64));
    if r != 0 {
        return Err(Error::NonIntegral {
            series: "dihedral Burnside sum",
            index: n,
            value: format!("{fixed}/{}", 4 * n),
        });
    }
    Ok(DihedralCount {
        n,
        orbits: orbits.into(),
        burnside: q.into(),
    })
}

/// Number of elements of the dihedral group of the `2n` points that map the
/// chord set to itself.
fn fixed_by_dihedral(d: &LinearDiagram) -> u64 {
    let len = d.len();
    let partner = d.partners();
    let mut count = 0;
    for c in 0..len {
        if (0..len).all(|p| partner[(p + c) % len] == (partner[p] + c) % len) {
            count += 1;
        }
        let refl = |p: usize| (c + len - p) % len;
        if (0..len).all(|p| partner[refl(p)] == refl(partner[p])) {
            count += 1;
        }
    }
    count
}

/// Number of analytic diagrams with `n` chords, by stabilizer order.
pub fn classify_stabilizers(n: usize, budget: &Budget) -> Result<BTreeMap<usize, BigUint>> {
    if n == 0 {
        return Err(Error::EmptyDiagram);
    }
    budget.chords(n)?;
    let maps: Vec<BTreeMap<usize, u64>> = (1..2 * n)
        .into_par_iter()
        .map(|j| {
            let mut s = WordStream::with_first_pair(n, j);
            let mut m = BTreeMap::new();
            while let Some(w) = s.next_word() {
                let d = LinearDiagram::from_canonical(w.to_vec());
                if is_analytic(&d) {
                    *m.entry(stabilizing_shifts(&d).len()).or_insert(0) += 1;
                }
            }
            m
        })
        .collect();
    let mut out = BTreeMap::new();
    for m in maps {
        for (k, v) in m {
            *out.entry(k).or_insert_with(BigUint::default) += v;
        }
    }
    Ok(out)
}

/// A diagram folded along a rotational symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub diagram: LinearDiagram,
    /// Per quotient chord, how many periods the lift of its first endpoint
    /// travels before meeting its partner; values lie in `0..order`.
    pub monodromy: Vec<usize>,
    /// Order of the rotation group generated by the symmetry.
    pub order: usize,
}

/// Quotient of `d` by the rotation group generated by the shift `shift`.
/// Returns `None` when some element of that group sends an endpoint of a
/// chord to the other endpoint, and an error when the shift is not a
/// symmetry of `d`.
pub fn quotient(d: &LinearDiagram, shift: usize) -> Result<Option<Quotient>> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let len = d.len();
    let shift = shift % len;
    let partner = d.partners();
    if (0..len).any(|p| partner[(p + shift) % len] != (partner[p] + shift) % len) {
        return Err(Error::NotAStabilizer(shift));
    }
    let period = shift.gcd(&len);
    let order = len / period;
    if (0..len).any(|p| partner[p] != p && (partner[p] + len - p).is_multiple_of(period)) {
        return Ok(None);
    }
    let raw: Vec<u8> = (0..period)
        .map(|p| {
            let q = partner[p] % period;
            p.min(q) as u8
        })
        .collect();
    let diagram = LinearDiagram::from_raw(&raw);
    let mut monodromy = vec![0; diagram.chords()];
    for (c, (a, b)) in diagram.endpoints().into_iter().enumerate() {
        monodromy[c] = (partner[a] - b) / period;
    }
    Ok(Some(Quotient {
        diagram,
        monodromy,
        order,
    }))
}

/// Unfolds a quotient: chord `(a, b)` with monodromy `m` lifts at level `k`
/// to the pair `(a + gk, b + g(k + m))` modulo `2n`, where `g` is the
/// quotient length.
pub fn lift(q: &Quotient) -> LinearDiagram {
    let g = q.diagram.len();
    let len = g * q.order;
    let mut raw = vec![0u8; len];
    let per = q.diagram.chords();
    for (c, (a, b)) in q.diagram.endpoints().into_iter().enumerate() {
        for k in 0..q.order {
            let id = (c * q.order + k) as u8;
            raw[(a + g * k) % len] = id;
            raw[(b + g * (k + q.monodromy[c])) % len] = id;
        }
    }
    debug_assert!(per * q.order * 2 == len);
    LinearDiagram::from_raw(&raw)
}

/// Connected distance-hereditary graphs on `v + 1` labeled vertices, by
/// exhaustive search. Matches `n!·[z^n]B`, whose constant term is `0`.
pub fn count_labeled_bushes(v: usize, budget: &Budget) -> Result<BigUint> {
    if v == 0 {
        return Ok(BigUint::default());
    }
    let verts = v + 1;
    budget.vertices(verts)?;
    let pairs = verts * (verts - 1) / 2;
    let total = 1u64 << pairs;
    let chunks = 64u64.min(total);
    let step = total / chunks;
    let count: u64 = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let hi = if i + 1 == chunks { total } else { (i + 1) * step };
            (i * step..hi)
                .filter(|&code| {
                    let g = SimpleGraph::from_code(verts, code);
                    g.is_connected() && check_bush(&g, BushMethod::Reduction)
                })
                .count() as u64
        })
        .sum();
    Ok(count.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn double_factorial(n: usize) -> u64 {
        (1..=n as u64).map(|k| 2 * k - 1).product()
    }

    #[test]
    fn stream_sizes_and_canonicity() {
        for n in 0..=6 {
            let all: Vec<_> = all_diagrams(n).collect();
            assert_eq!(all.len() as u64, double_factorial(n));
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            for d in &all {
                assert_eq!(crate::diagram::relabel(d.word()), d.word());
            }
        }
        let empty: Vec<_> = all_diagrams(0).collect();
        assert_eq!(empty, vec![LinearDiagram::empty()]);
    }

    #[test]
    fn partitions_cover_the_stream() {
        let n = 5;
        let total: usize = (1..2 * n).map(|j| WordStream::with_first_pair(n, j).count()).sum();
        assert_eq!(total as u64, double_factorial(n));
    }

    #[test]
    fn small_counts() {
        let b = Budget::default();
        assert_eq!(count_analytic_linear(0, &b).unwrap(), 1u32.into());
        assert_eq!(count_analytic_linear(5, &b).unwrap(), 923u32.into());
        assert_eq!(count_connected_rooted(2, &b).unwrap(), 4u32.into());
        assert!(count_analytic_linear(9, &b).is_err());
    }

    #[test]
    fn cyclic_small_cases() {
        let b = Budget::default();
        assert_eq!(count_cyclic_analytic(1, &b).unwrap().orbits, 1u32.into());
        let c = count_cyclic_analytic(2, &b).unwrap();
        assert_eq!(c.orbits, 2u32.into());
        assert_eq!(c.over_2n, BigRational::from_integer(2.into()));
    }

    #[test]
    fn stabilizer_classes() {
        let b = Budget::default();
        let m = classify_stabilizers(1, &b).unwrap();
        assert_eq!(m, BTreeMap::from([(2, BigUint::from(1u32))]));
        let total: BigUint = classify_stabilizers(5, &b).unwrap().values().sum();
        assert_eq!(total, 923u32.into());
    }

    #[test]
    fn quotient_examples() {
        let d = parse_diagram("abab").unwrap();
        assert_eq!(quotient(&d, 2).unwrap(), None);
        let d = parse_diagram("aabb").unwrap();
        let q = quotient(&d, 2).unwrap().unwrap();
        assert_eq!(q.diagram.chords(), 1);
        assert_eq!(q.order, 2);
        assert_eq!(lift(&q), d);
        let d = parse_diagram("abba").unwrap();
        let q = quotient(&d, 2).unwrap().unwrap();
        assert_eq!(q.monodromy, vec![1]);
        assert_eq!(lift(&q), d);
        assert!(matches!(
            quotient(&parse_diagram("aabccb").unwrap(), 1),
            Err(Error::NotAStabilizer(1))
        ));
    }

    #[test]
    fn bush_counts() {
        let b = Budget::default();
        assert_eq!(count_labeled_bushes(0, &b).unwrap(), 0u32.into());
        assert_eq!(count_labeled_bushes(2, &b).unwrap(), 4u32.into());
        assert_eq!(count_labeled_bushes(3, &b).unwrap(), 38u32.into());
        assert!(count_labeled_bushes(6, &b).is_err());
    }
}
