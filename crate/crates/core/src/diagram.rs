//! Knot diagrams: a spherical curve plus over/under data at every crossing.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::DiagramError;
use crate::map::{DartId, GaussCode, GaussToken, Label, Mark, Passage, SphericalCurveMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingSign {
    Negative,
    Positive,
}

impl CrossingSign {
    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

impl fmt::Display for CrossingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingSign::Positive => "+",
            CrossingSign::Negative => "-",
        })
    }
}

/// A knot diagram on the sphere.
///
/// For every crossing we record whether the over-strand is the passage
/// marked `leftward` in the underlying map. This survives any relabeling
/// of passage positions done by local moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    map: SphericalCurveMap,
    leftward_over: BTreeMap<Label, bool>,
}

impl KnotDiagram {
    pub fn trivial() -> Self {
        KnotDiagram {
            map: SphericalCurveMap::circle(),
            leftward_over: BTreeMap::new(),
        }
    }

    pub(crate) fn from_parts(map: SphericalCurveMap, leftward_over: BTreeMap<Label, bool>) -> Self {
        debug_assert_eq!(leftward_over.len(), map.crossing_count());
        KnotDiagram { map, leftward_over }
    }

    /// Builds a diagram from a map and, per crossing label, the passage
    /// index that goes over.
    pub fn with_over_passages(
        map: SphericalCurveMap,
        over: &BTreeMap<Label, usize>,
    ) -> Result<Self, DiagramError> {
        let mut leftward_over = BTreeMap::new();
        for label in map.labels() {
            let p = *over.get(&label).ok_or(DiagramError::MissingCrossing(label))?;
            if map.passages().get(p).map(|x| x.label) != Some(label) {
                return Err(DiagramError::MissingCrossing(label));
            }
            leftward_over.insert(label, map.passages()[p].leftward);
        }
        Ok(KnotDiagram { map, leftward_over })
    }

    /// Realizes an annotated Gauss code (`O1 U2 ...`).
    pub fn from_gauss_code(code: &GaussCode) -> Result<Self, DiagramError> {
        let map = crate::map::build_from_gauss_code(&code.unmarked())?;
        if map.crossing_count() > 0 && !code.is_annotated() {
            return Err(DiagramError::MissingCrossing(map.labels()[0]));
        }
        let over = code
            .tokens()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.mark == Some(Mark::Over))
            .map(|(i, t)| (t.label, i))
            .collect();
        Self::with_over_passages(map, &over)
    }

    pub fn map(&self) -> &SphericalCurveMap {
        &self.map
    }

    pub fn into_map(self) -> SphericalCurveMap {
        self.map
    }

    pub(crate) fn leftward_over(&self) -> &BTreeMap<Label, bool> {
        &self.leftward_over
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossing_count()
    }

    pub fn is_trivial(&self) -> bool {
        self.map.is_circle()
    }

    pub fn is_over(&self, passage: usize) -> bool {
        let p = self.map.passages()[passage];
        p.leftward == self.leftward_over[&p.label]
    }

    pub fn over_passage(&self, label: Label) -> Option<usize> {
        let (a, b) = self.map.passages_of(label)?;
        Some(if self.is_over(a) { a } else { b })
    }

    /// Incoming dart of the over passage of a crossing.
    pub fn over_dart(&self, label: Label) -> Option<DartId> {
        self.over_passage(label).map(|p| 2 * p)
    }

    /// +1 when the under-strand direction is the over-strand direction
    /// turned a quarter counterclockwise.
    ///
    /// The over passage's `leftward` flag says whether the under-strand
    /// crosses it from right to left, which is exactly that condition.
    pub fn crossing_sign(&self, label: Label) -> Option<CrossingSign> {
        self.leftward_over.get(&label).map(|&lo| {
            if lo {
                CrossingSign::Positive
            } else {
                CrossingSign::Negative
            }
        })
    }

    pub fn writhe(&self) -> i64 {
        self.leftward_over
            .keys()
            .map(|&l| self.crossing_sign(l).unwrap().value())
            .sum()
    }

    /// Each crossing's second visit (from the basepoint) goes over.
    pub fn ascending(map: SphericalCurveMap) -> Self {
        let mut leftward_over = BTreeMap::new();
        let mut seen = BTreeMap::new();
        for p in map.passages() {
            if seen.insert(p.label, ()).is_some() {
                leftward_over.insert(p.label, p.leftward);
            }
        }
        KnotDiagram { map, leftward_over }
    }

    /// Canonical Gauss code with over/under marks.
    pub fn canonical_code(&self) -> GaussCode {
        let (relabeled, _) = self.map.relabeled();
        GaussCode::new(
            relabeled
                .passages()
                .iter()
                .enumerate()
                .map(|(i, p)| GaussToken {
                    label: p.label,
                    mark: Some(if self.is_over(i) { Mark::Over } else { Mark::Under }),
                })
                .collect(),
        )
    }

    /// Identifies the diagram up to relabeling and choice of basepoint.
    pub fn cyclic_key(&self) -> Vec<u32> {
        crate::map::cyclic_key(self.map.passages(), |i| self.is_over(i) as u32)
    }

    pub fn with_outer(self, anchor: Option<crate::map::FaceAnchor>) -> Self {
        KnotDiagram {
            map: self.map.with_outer(anchor),
            leftward_over: self.leftward_over,
        }
    }

    /// The same diagram with the basepoint moved to just before passage
    /// `start`.
    pub fn rebased(&self, start: usize) -> Self {
        KnotDiagram {
            map: self.map.rebased(start),
            leftward_over: self.leftward_over.clone(),
        }
    }

    /// Closure of a braid on `strands` strands. Letter `k` is σ_k and `-k`
    /// its inverse.
    ///
    /// Positions are numbered from the outside in: the closure is drawn in
    /// an annulus around the origin with strands running counterclockwise,
    /// position 1 outermost. In σ_k the strand moving from position `k` to
    /// `k + 1` passes over the strand moving the other way, which makes σ_k
    /// a negative crossing and σ_k⁻¹ a positive one. The basepoint sits at
    /// the start of the word on position 1.
    pub fn from_braid(word: &[i64], strands: usize) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::MalformedBraid("no strands".into()));
        }
        for &g in word {
            let k = g.unsigned_abs() as usize;
            if g == 0 || k >= strands {
                return Err(DiagramError::MalformedBraid(format!(
                    "generator {g} outside 1..{}",
                    strands - 1
                )));
            }
        }
        // strand permutation: position after the whole word
        let mut perm: Vec<usize> = (0..strands).collect();
        for &g in word {
            let k = g.unsigned_abs() as usize - 1;
            perm.swap(k, k + 1);
        }
        // perm[pos] = strand that ends at pos; traversal needs where each
        // start position ends up
        let mut end_of = vec![0; strands];
        for (pos, &s) in perm.iter().enumerate() {
            end_of[s] = pos;
        }
        let mut components = 0;
        let mut visited = vec![false; strands];
        for s in 0..strands {
            if !visited[s] {
                components += 1;
                let mut x = s;
                while !visited[x] {
                    visited[x] = true;
                    x = end_of[x];
                }
            }
        }
        if components != 1 {
            return Err(DiagramError::NotAKnot(components));
        }
        if word.is_empty() {
            return Ok(KnotDiagram::trivial());
        }
        let mut passages = Vec::with_capacity(2 * word.len());
        let mut over = BTreeMap::new();
        let mut pos = 0usize;
        loop {
            for (t, &g) in word.iter().enumerate() {
                let k = g.unsigned_abs() as usize - 1;
                if pos != k && pos != k + 1 {
                    continue;
                }
                let from_inner = pos == k + 1;
                let label = t as Label + 1;
                // the strand moving outward (towards position 1) is crossed
                // from its right by the inward-moving one
                passages.push(Passage { label, leftward: from_inner });
                let inner_over = g < 0;
                if from_inner == inner_over {
                    over.insert(label, passages.len() - 1);
                }
                pos = if from_inner { k } else { k + 1 };
            }
            if pos == 0 {
                break;
            }
        }
        let map = SphericalCurveMap::from_passages(passages)?;
        Self::with_over_passages(map, &over)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::build_from_gauss_code;

    fn curve(s: &str) -> SphericalCurveMap {
        build_from_gauss_code(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn trivial_diagram() {
        let t = KnotDiagram::trivial();
        assert!(t.is_trivial());
        assert_eq!(t.writhe(), 0);
        assert!(KnotDiagram::ascending(SphericalCurveMap::circle()).is_trivial());
    }

    #[test]
    fn kink_sign_flips_with_over_under() {
        let d = KnotDiagram::ascending(curve("1 1"));
        assert!(!d.is_trivial());
        assert_eq!(d.writhe().abs(), 1);
        let (a, b) = d.map().passages_of(1).unwrap();
        let swapped = KnotDiagram::with_over_passages(
            d.map().clone(),
            &BTreeMap::from([(1, if d.over_passage(1) == Some(a) { b } else { a })]),
        )
        .unwrap();
        assert_eq!(swapped.writhe(), -d.writhe());
    }

    #[test]
    fn annotated_code_round_trip() {
        let d = KnotDiagram::ascending(curve("1 2 3 1 2 3"));
        let code = d.canonical_code();
        assert_eq!(code.to_string(), "U1 U2 U3 O1 O2 O3");
        let back = KnotDiagram::from_gauss_code(&code).unwrap();
        assert_eq!(back.canonical_code(), code);
    }

    #[test]
    fn braid_errors() {
        assert!(matches!(
            KnotDiagram::from_braid(&[3], 3),
            Err(DiagramError::MalformedBraid(_))
        ));
        assert!(matches!(
            KnotDiagram::from_braid(&[0], 3),
            Err(DiagramError::MalformedBraid(_))
        ));
        assert_eq!(KnotDiagram::from_braid(&[1, 1], 2), Err(DiagramError::NotAKnot(2)));
        assert!(KnotDiagram::from_braid(&[], 1).unwrap().is_trivial());
    }

    #[test]
    fn braid_closure_counts() {
        let d = KnotDiagram::from_braid(&[-1, -2, -1, 2], 3).unwrap();
        assert_eq!(d.crossing_count(), 4);
        let t = KnotDiagram::from_braid(&[1, 1, 1], 2).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe().abs(), 3);
    }
}
