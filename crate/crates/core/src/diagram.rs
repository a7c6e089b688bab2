//! Chord diagrams as double-occurrence words.
//!
//! A [`LinearDiagram`] is a word of length `2n` in which each of the `n`
//! chord identifiers occurs exactly twice. Words are always stored in
//! canonical form: identifiers are renamed `0, 1, 2, ...` in order of first
//! occurrence. The position `0` of the word is the marked point of the
//! circle; reading the word cyclically gives the underlying chord diagram.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Largest number of chords a diagram may carry (graphs use 64-bit masks).
pub const MAX_CHORDS: usize = 64;

const FREE: u8 = u8::MAX;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LinearDiagram {
    word: Vec<u8>,
}

/// A rooted diagram is a linear diagram whose root chord is the one read
/// first from the marked point; the root head `v+` sits at position `0`.
pub type RootedDiagram = LinearDiagram;

impl TryFrom<Vec<usize>> for LinearDiagram {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        LinearDiagram::from_word(&word)
    }
}

impl From<LinearDiagram> for Vec<usize> {
    fn from(d: LinearDiagram) -> Self {
        d.word.iter().map(|&c| c as usize).collect()
    }
}

/// Renames chord identifiers in order of first occurrence.
pub fn relabel(word: &[u8]) -> Vec<u8> {
    let mut map = [FREE; 256];
    let mut next = 0u8;
    word.iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == FREE {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}

impl LinearDiagram {
    pub fn empty() -> Self {
        Self { word: Vec::new() }
    }

    /// Validates an arbitrary word over chord identifiers and canonicalizes it.
    pub fn from_word(word: &[usize]) -> Result<Self> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::InvalidDiagram(format!("odd length {}", word.len())));
        }
        let mut counts = std::collections::BTreeMap::new();
        for &c in word {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        if let Some((c, k)) = counts.iter().find(|(_, &k)| k != 2) {
            return Err(Error::InvalidDiagram(format!("symbol {c} occurs {k} times")));
        }
        if counts.len() > MAX_CHORDS {
            return Err(Error::InvalidDiagram(format!(
                "{} chords exceed the maximum of {MAX_CHORDS}",
                counts.len()
            )));
        }
        let dense: std::collections::BTreeMap<usize, u8> =
            counts.keys().enumerate().map(|(i, &c)| (c, i as u8)).collect();
        let raw: Vec<u8> = word.iter().map(|c| dense[c]).collect();
        Ok(Self { word: relabel(&raw) })
    }

    /// Builds a diagram from a word known to be a valid double-occurrence word
    /// over `u8` identifiers; the word is canonicalized.
    pub(crate) fn from_raw(raw: &[u8]) -> Self {
        Self { word: relabel(raw) }
    }

    /// Wraps a word that is already canonical.
    pub(crate) fn from_canonical(word: Vec<u8>) -> Self {
        debug_assert_eq!(relabel(&word), word);
        Self { word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Number of chords `n`.
    pub fn chords(&self) -> usize {
        self.word.len() / 2
    }

    /// Length of the word, `2n`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Positions `(first, second)` of each chord, indexed by chord.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.chords()];
        for (i, &c) in self.word.iter().enumerate() {
            let e = &mut ends[c as usize];
            if e.0 == usize::MAX {
                e.0 = i;
            } else {
                e.1 = i;
            }
        }
        ends
    }

    /// For each position, the position of the other endpoint of its chord.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; self.len()];
        for (a, b) in self.endpoints() {
            partner[a] = b;
            partner[b] = a;
        }
        partner
    }

    /// Moves the marked point `k` positions forward.
    pub fn rotate(&self, k: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut raw = Vec::with_capacity(self.len());
        raw.extend_from_slice(&self.word[k..]);
        raw.extend_from_slice(&self.word[..k]);
        Self::from_raw(&raw)
    }

    /// Mirror image: the word read backwards.
    pub fn reflect(&self) -> Self {
        let raw: Vec<u8> = self.word.iter().rev().copied().collect();
        Self::from_raw(&raw)
    }

    /// Sub-diagram formed by the chords whose bit is set in `mask`.
    pub fn restrict(&self, mask: u64) -> Self {
        let raw: Vec<u8> = self
            .word
            .iter()
            .copied()
            .filter(|&c| mask >> c & 1 == 1)
            .collect();
        Self::from_raw(&raw)
    }

    /// The diagram with one chord deleted.
    pub fn remove_chord(&self, chord: usize) -> Self {
        let raw: Vec<u8> = self
            .word
            .iter()
            .copied()
            .filter(|&c| c as usize != chord)
            .collect();
        Self::from_raw(&raw)
    }

    /// Whether chords `a` and `b` interleave cyclically.
    pub fn crosses(&self, a: usize, b: usize) -> bool {
        let ends = self.endpoints();
        interleave(ends[a], ends[b])
    }

    /// Text form: letters when there are at most 26 chords, otherwise
    /// comma-separated integers.
    pub fn to_text(&self) -> String {
        if self.chords() <= 26 {
            self.word.iter().map(|&c| (b'a' + c) as char).collect()
        } else {
            self.to_int_text()
        }
    }

    pub fn to_int_text(&self) -> String {
        self.word
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for LinearDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn interleave((a0, a1): (usize, usize), (b0, b1): (usize, usize)) -> bool {
    (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1)
}

/// Parses a letter word (`"abab"`) or comma-separated integers (`"0,1,0,1"`).
pub fn parse_diagram(text: &str) -> Result<LinearDiagram> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(LinearDiagram::empty());
    }
    let word: Vec<usize> = if text.chars().all(|c| c.is_ascii_alphabetic()) {
        if let Some(c) = text.chars().find(|&c| text.matches(c).count() != 2) {
            let k = text.matches(c).count();
            return Err(Error::InvalidDiagram(format!("letter {c:?} occurs {k} times")));
        }
        text.chars().map(|c| c as usize).collect()
    } else {
        text.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidDiagram(format!("bad token {tok:?}")))
            })
            .collect::<Result<_>>()?
    };
    LinearDiagram::from_word(&word)
}

/// Compares the relabeled rotation of `word` starting at `k` with `best`.
fn cmp_rotation(word: &[u8], k: usize, best: &[u8]) -> Ordering {
    let len = word.len();
    let mut map = [FREE; 256];
    let mut next = 0u8;
    for i in 0..len {
        let c = word[(k + i) % len];
        let slot = &mut map[c as usize];
        if *slot == FREE {
            *slot = next;
            next += 1;
        }
        match (*slot).cmp(&best[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn min_rotation(word: &[u8]) -> (Vec<u8>, usize) {
    let mut best = word.to_vec();
    let mut best_k = 0;
    for k in 1..word.len() {
        if cmp_rotation(word, k, &best) == Ordering::Less {
            let mut raw = word[k..].to_vec();
            raw.extend_from_slice(&word[..k]);
            best = relabel(&raw);
            best_k = k;
        }
    }
    (best, best_k)
}

/// A chord diagram up to rotation, stored through its least canonical word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CyclicDiagram {
    pub rep: LinearDiagram,
}

/// A chord diagram up to rotation and reflection.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DihedralDiagram {
    pub rep: LinearDiagram,
}

pub fn canonical_cyclic(d: &LinearDiagram) -> CyclicDiagram {
    let (rep, _) = min_rotation(d.word());
    CyclicDiagram {
        rep: LinearDiagram::from_canonical(rep),
    }
}

/// Whether `d` is already the representative of its rotation class.
pub fn is_cyclic_representative(d: &LinearDiagram) -> bool {
    let w = d.word();
    (1..w.len()).all(|k| cmp_rotation(w, k, w) != Ordering::Less)
}

pub fn canonical_dihedral(d: &LinearDiagram) -> DihedralDiagram {
    let a = canonical_cyclic(d).rep;
    let b = canonical_cyclic(&d.reflect()).rep;
    DihedralDiagram { rep: a.min(b) }
}

/// Order of the stabilizer of `d` under rotation of its `2n` points.
pub fn stabilizer_order(d: &LinearDiagram) -> Result<usize> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let w = d.word();
    Ok((0..w.len())
        .filter(|&k| cmp_rotation(w, k, w) == Ordering::Equal)
        .count())
}

/// The rotations (as shifts) that fix the unlabeled diagram.
pub fn stabilizing_shifts(d: &LinearDiagram) -> Vec<usize> {
    let w = d.word();
    (0..w.len())
        .filter(|&k| cmp_rotation(w, k, w) == Ordering::Equal)
        .collect()
}

/// Elements of the rectangle group acting on the sub-diagram carried by two
/// intervals. Picture the intervals as the bottom (`I1`, read left to right)
/// and top (`I2`, read right to left) sides of a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RectangleSymmetry {
    Identity,
    /// Half-turn: the two sides trade places.
    HalfTurn,
    /// Reflection in the vertical axis: each side is reversed in place.
    VerticalFlip,
    /// Reflection in the horizontal axis: sides trade places and reverse.
    HorizontalFlip,
}

impl RectangleSymmetry {
    pub const ALL: [RectangleSymmetry; 4] = [
        RectangleSymmetry::Identity,
        RectangleSymmetry::HalfTurn,
        RectangleSymmetry::VerticalFlip,
        RectangleSymmetry::HorizontalFlip,
    ];

    pub fn compose(self, other: Self) -> Self {
        use RectangleSymmetry::*;
        let code = |s| match s {
            Identity => 0u8,
            HalfTurn => 1,
            VerticalFlip => 2,
            HorizontalFlip => 3,
        };
        match code(self) ^ code(other) {
            0 => Identity,
            1 => HalfTurn,
            2 => VerticalFlip,
            _ => HorizontalFlip,
        }
    }
}

/// Result of [`mutate`]: the new diagram and where each old chord went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub diagram: LinearDiagram,
    /// `relabel[old_chord] = new_chord`.
    pub relabel: Vec<usize>,
}

/// Applies a rectangle-group symmetry to the sub-diagram carried by the
/// position ranges `first` and `second` (`first.end <= second.start`).
/// Every chord touching the ranges must have both endpoints inside them.
pub fn mutate(
    d: &LinearDiagram,
    first: Range<usize>,
    second: Range<usize>,
    sym: RectangleSymmetry,
) -> Result<Mutation> {
    let len = d.len();
    if first.start > first.end || second.start > second.end {
        return Err(Error::InvalidInterval("reversed range".into()));
    }
    if first.end > second.start || second.end > len {
        return Err(Error::InvalidInterval(format!(
            "ranges {first:?} and {second:?} must be ordered, disjoint and within 0..{len}"
        )));
    }
    let w = d.word();
    let inside = |p: usize| first.contains(&p) || second.contains(&p);
    for (c, (a, b)) in d.endpoints().into_iter().enumerate() {
        if inside(a) != inside(b) {
            return Err(Error::NotASubDiagram(c));
        }
    }
    let u = &w[first.clone()];
    let v = &w[second.clone()];
    let rev = |s: &[u8]| s.iter().rev().copied().collect::<Vec<u8>>();
    let (new_u, new_v) = match sym {
        RectangleSymmetry::Identity => (u.to_vec(), v.to_vec()),
        RectangleSymmetry::HalfTurn => (v.to_vec(), u.to_vec()),
        RectangleSymmetry::VerticalFlip => (rev(u), rev(v)),
        RectangleSymmetry::HorizontalFlip => (rev(v), rev(u)),
    };
    let mut raw = Vec::with_capacity(len);
    raw.extend_from_slice(&w[..first.start]);
    raw.extend_from_slice(&new_u);
    raw.extend_from_slice(&w[first.end..second.start]);
    raw.extend_from_slice(&new_v);
    raw.extend_from_slice(&w[second.end..]);
    let canonical = relabel(&raw);
    let mut map = vec![usize::MAX; d.chords()];
    for (old, new) in raw.iter().zip(&canonical) {
        map[*old as usize] = *new as usize;
    }
    Ok(Mutation {
        diagram: LinearDiagram::from_canonical(canonical),
        relabel: map,
    })
}

/// Components of the interlacement graph, each sorted, in order of their
/// smallest chord.
pub fn connected_components(d: &LinearDiagram) -> Vec<Vec<usize>> {
    SimpleGraph::interlacement(d).components()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dia(s: &str) -> LinearDiagram {
        parse_diagram(s).unwrap()
    }

    #[test]
    fn parses_letters_and_integers() {
        assert_eq!(dia("abab").word(), &[0, 1, 0, 1]);
        assert_eq!(dia("xyyx").word(), &[0, 1, 1, 0]);
        assert_eq!(dia("3, 7,3,7").word(), &[0, 1, 0, 1]);
        assert!(dia("").is_empty());
        assert_eq!(dia("").chords(), 0);
    }

    #[test]
    fn rejects_malformed_words() {
        assert!(matches!(parse_diagram("aba"), Err(Error::InvalidDiagram(_))));
        assert!(matches!(parse_diagram("abcabcaa"), Err(Error::InvalidDiagram(_))));
        assert!(matches!(parse_diagram("aaab"), Err(Error::InvalidDiagram(_))));
        assert!(parse_diagram("0,1,x").is_err());
    }

    #[test]
    fn text_roundtrip_on_canonical_words() {
        for s in ["", "aa", "abab", "abcabc", "aabccb"] {
            let d = dia(s);
            assert_eq!(parse_diagram(&d.to_text()).unwrap(), d);
            assert_eq!(parse_diagram(&d.to_int_text()).unwrap(), d);
        }
    }

    #[test]
    fn cyclic_canonical_form_is_rotation_invariant() {
        let d = dia("abab");
        assert_eq!(canonical_cyclic(&d.rotate(1)), canonical_cyclic(&d));
        assert_eq!(canonical_cyclic(&dia("aabb")), canonical_cyclic(&dia("abba")));
        let c = canonical_cyclic(&dia("abcbca"));
        assert!(is_cyclic_representative(&c.rep));
    }

    #[test]
    fn stabilizer_orders() {
        assert_eq!(stabilizer_order(&dia("abab")).unwrap(), 4);
        assert_eq!(stabilizer_order(&dia("aabb")).unwrap(), 2);
        assert_eq!(stabilizer_order(&dia("aa")).unwrap(), 2);
        assert_eq!(stabilizer_order(&dia("")), Err(Error::EmptyDiagram));
    }

    #[test]
    fn dihedral_identifies_mirror_images() {
        let d = dia("abacbdcd");
        assert_eq!(canonical_dihedral(&d), canonical_dihedral(&d.reflect()));
    }

    #[test]
    fn mutation_basics() {
        let d = dia("aabccb");
        let m = mutate(&d, 0..2, 2..6, RectangleSymmetry::Identity).unwrap();
        assert_eq!(m.diagram, d);
        let swapped = mutate(&d, 0..2, 3..5, RectangleSymmetry::HalfTurn).unwrap();
        assert_eq!(swapped.diagram, d);
        // chord b enters at 2 and leaves at 5
        let leaking = mutate(&d, 0..2, 2..4, RectangleSymmetry::HalfTurn);
        assert_eq!(leaking, Err(Error::NotASubDiagram(1)));
        assert!(mutate(&d, 0..3, 2..4, RectangleSymmetry::Identity).is_err());
    }

    #[test]
    fn half_turn_twice_is_identity() {
        let d = dia("abcdbadc");
        // chords a,b live in 0..2 and 4..6
        let m1 = mutate(&d, 0..2, 4..6, RectangleSymmetry::HalfTurn).unwrap();
        let m2 = mutate(&m1.diagram, 0..2, 4..6, RectangleSymmetry::HalfTurn).unwrap();
        assert_eq!(m2.diagram, d);
    }

    #[test]
    fn rectangle_group_is_klein() {
        for a in RectangleSymmetry::ALL {
            assert_eq!(a.compose(a), RectangleSymmetry::Identity);
            for b in RectangleSymmetry::ALL {
                assert_eq!(a.compose(b), b.compose(a));
            }
        }
    }

    #[test]
    fn components_of_small_diagrams() {
        assert_eq!(connected_components(&dia("aabb")), vec![vec![0], vec![1]]);
        assert_eq!(connected_components(&dia("abab")), vec![vec![0, 1]]);
    }

    #[test]
    fn serde_uses_plain_words() {
        let d = dia("abab");
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, "[0,1,0,1]");
        let back: LinearDiagram = serde_json::from_str("[5,5]").unwrap();
        assert_eq!(back, dia("aa"));
        assert!(serde_json::from_str::<LinearDiagram>("[1,2]").is_err());
    }
}
