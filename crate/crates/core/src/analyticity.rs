//! Deciding analyticity of chord diagrams.
//!
//! The direct test repeatedly deletes a chord that forms one of four local
//! patterns (isolated chord, fork, true twins, false twins); a diagram is
//! analytic when this empties it. The graph test asks whether the
//! interlacement graph is distance-hereditary.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{canonical_cyclic, LinearDiagram};
use crate::graph::{check_bush, forbidden_witness, BushMethod, ForbiddenShape, SimpleGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// `aa`
    Isolated,
    /// `b ... aba`
    Fork,
    /// `ab ... ab`
    TrueTwins,
    /// `ab ... ba`
    FalseTwins,
}

/// One reducible pattern: deleting `chord` simplifies the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    pub kind: PatternKind,
    pub chord: usize,
    /// The other chord of a fork or twin pair.
    pub partner: Option<usize>,
}

impl Pattern {
    pub fn apply(&self, d: &LinearDiagram) -> LinearDiagram {
        d.remove_chord(self.chord)
    }
}

struct Scan<'a> {
    w: &'a [u8],
    ends: Vec<(usize, usize)>,
}

impl<'a> Scan<'a> {
    fn new(w: &'a [u8]) -> Self {
        let mut ends = vec![(usize::MAX, 0); w.len() / 2];
        for (i, &c) in w.iter().enumerate() {
            let e = &mut ends[c as usize];
            if e.0 == usize::MAX {
                e.0 = i;
            } else {
                e.1 = i;
            }
        }
        Self { w, ends }
    }

    fn at(&self, p: usize, delta: isize) -> usize {
        let len = self.w.len() as isize;
        (p as isize + delta).rem_euclid(len) as usize
    }

    fn isolated(&self, a: usize) -> bool {
        let (x, y) = self.ends[a];
        self.at(x, 1) == y || self.at(y, 1) == x
    }

    /// The chord `a` is the outer chord of a fork around `b`.
    fn fork(&self, a: usize) -> Option<usize> {
        let (x, y) = self.ends[a];
        let mid = if self.at(x, 2) == y {
            self.at(x, 1)
        } else if self.at(y, 2) == x {
            self.at(y, 1)
        } else {
            return None;
        };
        let b = self.w[mid] as usize;
        (b != a).then_some(b)
    }

    /// Twin kind when each endpoint of `a` is next to a distinct endpoint of `b`.
    fn twins(&self, a: usize, b: usize) -> Option<PatternKind> {
        let (a0, a1) = self.ends[a];
        let (b0, b1) = self.ends[b];
        let adj = |p: usize, q: usize| self.at(p, 1) == q || self.at(q, 1) == p;
        if !(adj(a0, b0) && adj(a1, b1) || adj(a0, b1) && adj(a1, b0)) {
            return None;
        }
        let cross = (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1);
        Some(if cross {
            PatternKind::TrueTwins
        } else {
            PatternKind::FalseTwins
        })
    }

    fn twin_of(&self, a: usize) -> Option<(usize, PatternKind)> {
        let (x, y) = self.ends[a];
        let mut cands = [
            self.w[self.at(x, -1)],
            self.w[self.at(x, 1)],
            self.w[self.at(y, -1)],
            self.w[self.at(y, 1)],
        ];
        cands.sort_unstable();
        cands
            .iter()
            .map(|&b| b as usize)
            .filter(|&b| b != a)
            .find_map(|b| self.twins(a, b).map(|k| (b, k)))
    }

    /// Search order: isolated chords, then forks, then twins, chords in
    /// index order. A fork whose two chords are also twins is reported as
    /// a twin pair.
    fn first(&self) -> Option<Pattern> {
        let n = self.ends.len();
        if let Some(a) = (0..n).find(|&a| self.isolated(a)) {
            return Some(Pattern {
                kind: PatternKind::Isolated,
                chord: a,
                partner: None,
            });
        }
        for a in 0..n {
            if let Some(b) = self.fork(a) {
                let kind = self.twins(a, b).unwrap_or(PatternKind::Fork);
                return Some(Pattern {
                    kind,
                    chord: a,
                    partner: Some(b),
                });
            }
        }
        for a in 0..n {
            if let Some((b, kind)) = self.twin_of(a) {
                return Some(Pattern {
                    kind,
                    chord: a,
                    partner: Some(b),
                });
            }
        }
        None
    }

    fn all(&self) -> Vec<Pattern> {
        let n = self.ends.len();
        let mut out = Vec::new();
        for a in 0..n {
            if self.isolated(a) {
                out.push(Pattern {
                    kind: PatternKind::Isolated,
                    chord: a,
                    partner: None,
                });
            }
            if let Some(b) = self.fork(a) {
                out.push(Pattern {
                    kind: PatternKind::Fork,
                    chord: a,
                    partner: Some(b),
                });
            }
            for b in 0..n {
                if b != a {
                    if let Some(kind) = self.twins(a, b) {
                        out.push(Pattern {
                            kind,
                            chord: a,
                            partner: Some(b),
                        });
                    }
                }
            }
        }
        out
    }
}

pub fn find_reducible_pattern(d: &LinearDiagram) -> Option<Pattern> {
    if d.is_empty() {
        return None;
    }
    Scan::new(d.word()).first()
}

/// Every pattern occurrence, one entry per deletable chord and partner.
pub fn all_reducible_patterns(d: &LinearDiagram) -> Vec<Pattern> {
    if d.is_empty() {
        return Vec::new();
    }
    Scan::new(d.word()).all()
}

/// Simplifies until the diagram is empty (analytic) or stuck (not analytic).
pub fn is_analytic(d: &LinearDiagram) -> bool {
    let mut w = d.word().to_vec();
    while !w.is_empty() {
        let Some(p) = Scan::new(&w).first() else {
            return false;
        };
        remove_in_place(&mut w, p.chord as u8);
    }
    true
}

fn remove_in_place(w: &mut Vec<u8>, c: u8) {
    w.retain(|&x| x != c);
    for x in w.iter_mut() {
        if *x > c {
            *x -= 1;
        }
    }
}

/// One step of a reduction: the pattern used and the diagram it leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub before: LinearDiagram,
    pub pattern: Pattern,
    pub after: LinearDiagram,
}

/// Full reduction sequence; the last `after` is the empty diagram exactly
/// when `d` is analytic.
pub fn reduction_trace(d: &LinearDiagram) -> Vec<ReductionStep> {
    let mut steps = Vec::new();
    let mut cur = d.clone();
    while let Some(pattern) = find_reducible_pattern(&cur) {
        let after = pattern.apply(&cur);
        steps.push(ReductionStep {
            before: cur,
            pattern,
            after: after.clone(),
        });
        cur = after;
    }
    steps
}

pub fn is_analytic_via_graph(d: &LinearDiagram) -> bool {
    check_bush(&SimpleGraph::interlacement(d), BushMethod::Reduction)
}

/// A set of chords whose sub-diagram has a forbidden interlacement graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenSubdiagram {
    pub chords: Vec<usize>,
    pub shape: ForbiddenShape,
    pub subdiagram: LinearDiagram,
}

/// Smallest sub-diagram whose interlacement is a house, gem, domino or a
/// cycle of length at least five.
pub fn forbidden_subdiagram(d: &LinearDiagram) -> Option<ForbiddenSubdiagram> {
    let g = SimpleGraph::interlacement(d);
    forbidden_witness(&g).map(|(mask, shape)| ForbiddenSubdiagram {
        chords: crate::graph::bits(mask).collect(),
        shape,
        subdiagram: d.restrict(mask),
    })
}

pub fn has_forbidden_subdiagram(d: &LinearDiagram) -> bool {
    forbidden_subdiagram(d).is_some()
}

/// Memoized analyticity keyed on the cyclic class, meant to be owned by
/// one worker. Only diagrams with at most `max_chords` chords are stored.
#[derive(Debug)]
pub struct AnalyticityMemo {
    table: HashMap<Vec<u8>, bool>,
    max_chords: usize,
    max_entries: usize,
}

impl Default for AnalyticityMemo {
    fn default() -> Self {
        Self::new(10, 1 << 22)
    }
}

impl AnalyticityMemo {
    pub fn new(max_chords: usize, max_entries: usize) -> Self {
        Self {
            table: HashMap::new(),
            max_chords,
            max_entries,
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn is_analytic(&mut self, d: &LinearDiagram) -> bool {
        if d.is_empty() {
            return true;
        }
        let storable = d.chords() <= self.max_chords;
        let key = storable.then(|| canonical_cyclic(d).rep.word().to_vec());
        if let Some(&v) = key.as_ref().and_then(|k| self.table.get(k)) {
            return v;
        }
        let verdict = match find_reducible_pattern(d) {
            None => false,
            Some(p) => self.is_analytic(&p.apply(d)),
        };
        if let Some(k) = key {
            if self.table.len() >= self.max_entries {
                self.table.clear();
            }
            self.table.insert(k, verdict);
        }
        verdict
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn dia(s: &str) -> LinearDiagram {
        parse_diagram(s).unwrap()
    }

    #[test]
    fn pattern_examples() {
        let p = find_reducible_pattern(&dia("aabb")).unwrap();
        assert_eq!((p.kind, p.chord), (PatternKind::Isolated, 0));
        let p = find_reducible_pattern(&dia("abab")).unwrap();
        assert_eq!(p.kind, PatternKind::TrueTwins);
        assert_eq!(p.partner, Some(1));
        let p = find_reducible_pattern(&dia("abcabc")).unwrap();
        assert_eq!(p.kind, PatternKind::TrueTwins);
        let p = find_reducible_pattern(&dia("abccab")).unwrap();
        assert_eq!(p.kind, PatternKind::Isolated);
        assert_eq!(p.chord, 2);
    }

    #[test]
    fn fork_and_false_twins() {
        // a surrounds one end of b; b also crosses c
        let p = find_reducible_pattern(&dia("abacbc")).unwrap();
        assert_eq!(p.kind, PatternKind::Fork);
        assert_eq!((p.chord, p.partner), (0, Some(1)));
        let d = dia("abcdbadc");
        let pats = all_reducible_patterns(&d);
        assert!(pats.iter().any(|p| p.kind == PatternKind::FalseTwins));
    }

    #[test]
    fn empty_is_analytic() {
        assert!(is_analytic(&LinearDiagram::empty()));
        assert!(reduction_trace(&LinearDiagram::empty()).is_empty());
    }

    #[test]
    fn five_cycle_diagram_is_not_analytic() {
        let d = dia("abcadcedbe");
        let g = SimpleGraph::interlacement(&d);
        assert!(g.is_connected());
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert!(!is_analytic(&d));
        assert!(!is_analytic_via_graph(&d));
        assert!(find_reducible_pattern(&d).is_none());
        let w = forbidden_subdiagram(&d).unwrap();
        assert_eq!(w.shape, ForbiddenShape::Cycle(5));
        assert_eq!(w.subdiagram, d);
    }

    #[test]
    fn trace_ends_empty_for_analytic() {
        let d = dia("abcabc");
        let t = reduction_trace(&d);
        assert_eq!(t.len(), 3);
        assert!(t.last().unwrap().after.is_empty());
    }

    #[test]
    fn memo_agrees() {
        let mut memo = AnalyticityMemo::default();
        for s in ["abab", "abcadcedbe", "abcabc", "abacbc"] {
            let d = dia(s);
            assert_eq!(memo.is_analytic(&d), is_analytic(&d));
        }
        assert!(!memo.is_empty());
    }
}
