//! Generic closed curves on the sphere as 4-valent combinatorial maps.
//!
//! A map with `n` crossings is stored as its signed traversal word: the
//! `2n` passages through crossings met when walking the curve from the
//! basepoint, each tagged with the crossing label and with the side from
//! which the other strand crosses it. The dart table (rotation system) is
//! derived from the word and is what faces, smoothing and moves read.
//!
//! Dart numbering is fixed by the word. Passage `k` owns the incoming
//! half-edge `2k` and the outgoing half-edge `2k + 1`; edge `k` runs from
//! passage `k` to passage `k + 1` and the basepoint sits on the last edge,
//! just before dart `0`.

mod gauss;
mod smoothing;

pub use gauss::{build_from_gauss_code, realizations, GaussCode, GaussToken, Mark};
pub use smoothing::SmoothedCircle;

use std::collections::BTreeMap;

use crate::error::MapError;

pub type Label = u32;
pub type DartId = usize;
pub type FaceId = usize;

/// Largest code length accepted by the exhaustive embedder.
pub const MAX_REALIZE_CROSSINGS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub id: DartId,
    pub twin: DartId,
    /// Next dart counterclockwise around the same crossing.
    pub vertex_next: DartId,
    /// Next dart along the curve orientation.
    pub strand_next: DartId,
}

/// One visit of the curve to a crossing.
///
/// `leftward` is set when the other strand at this crossing travels from
/// the right-hand side of this passage to its left-hand side. Exactly one
/// of the two passages of a crossing has it set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub label: Label,
    pub leftward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Names a face: the face to the left of a dart, or one side of the
/// crossing-free circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceAnchor {
    Dart(DartId),
    Circle(Side),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Boundary darts in face-traversal order; each dart stands for its
    /// left-hand side. Empty for the two faces of the crossing-free circle.
    pub darts: Vec<DartId>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len().max(1)
    }
}

/// Orbit decomposition of a map into faces.
#[derive(Debug, Clone)]
pub struct FaceTable {
    pub faces: Vec<Face>,
    /// `face_of[d]` is the face to the left of dart `d`.
    pub face_of: Vec<FaceId>,
}

impl FaceTable {
    pub fn anchor(&self, face: FaceId) -> FaceAnchor {
        let f = &self.faces[face];
        match f.darts.first() {
            Some(&d) => FaceAnchor::Dart(d),
            None if face == 0 => FaceAnchor::Circle(Side::Left),
            None => FaceAnchor::Circle(Side::Right),
        }
    }

    pub fn resolve(&self, anchor: FaceAnchor) -> Option<FaceId> {
        match anchor {
            FaceAnchor::Dart(d) => self.face_of.get(d).copied(),
            FaceAnchor::Circle(Side::Left) if self.face_of.is_empty() => Some(0),
            FaceAnchor::Circle(Side::Right) if self.face_of.is_empty() => Some(1),
            FaceAnchor::Circle(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalCurveMap {
    passages: Vec<Passage>,
    partner: Vec<usize>,
    darts: Vec<Dart>,
    outer: Option<FaceAnchor>,
}

impl SphericalCurveMap {
    /// The crossing-free circle.
    pub fn circle() -> Self {
        SphericalCurveMap {
            passages: Vec::new(),
            partner: Vec::new(),
            darts: Vec::new(),
            outer: None,
        }
    }

    /// Builds a map from a signed traversal word, checking that every
    /// label is visited twice with opposite crossing sides and that the
    /// resulting rotation system lives on the sphere.
    pub fn from_passages(passages: Vec<Passage>) -> Result<Self, MapError> {
        let map = Self::from_passages_unchecked(passages)?;
        let n = map.crossing_count();
        let f = map.face_table().faces.len();
        if n > 0 && f != n + 2 {
            return Err(MapError::InvalidMap(format!(
                "rotation system has {f} faces, a spherical curve with {n} crossings needs {}",
                n + 2
            )));
        }
        Ok(map)
    }

    /// Same as [`from_passages`](Self::from_passages) without the Euler check.
    pub(crate) fn from_passages_unchecked(passages: Vec<Passage>) -> Result<Self, MapError> {
        let mut seen: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
        for (i, p) in passages.iter().enumerate() {
            seen.entry(p.label).or_default().push(i);
        }
        let mut partner = vec![0; passages.len()];
        for (label, idx) in &seen {
            if idx.len() != 2 {
                return Err(MapError::InvalidMap(format!(
                    "crossing {label} visited {} times",
                    idx.len()
                )));
            }
            let (a, b) = (idx[0], idx[1]);
            if passages[a].leftward == passages[b].leftward {
                return Err(MapError::InvalidMap(format!(
                    "crossing {label} has inconsistent rotation"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        let darts = build_darts(&passages, &partner);
        Ok(SphericalCurveMap {
            passages,
            partner,
            darts,
            outer: None,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn is_circle(&self) -> bool {
        self.passages.is_empty()
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d]
    }

    /// The dart at which traversal starts, `None` for the circle.
    pub fn basepoint(&self) -> Option<DartId> {
        (!self.is_circle()).then_some(0)
    }

    pub fn outer_anchor(&self) -> Option<FaceAnchor> {
        self.outer
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer.and_then(|a| self.face_table().resolve(a))
    }

    pub fn with_outer(mut self, anchor: Option<FaceAnchor>) -> Self {
        self.outer = anchor;
        self
    }

    /// Crossing labels in first-visit order.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.crossing_count());
        for (i, p) in self.passages.iter().enumerate() {
            if self.partner[i] > i {
                out.push(p.label);
            }
        }
        out
    }

    pub fn max_label(&self) -> Label {
        self.passages.iter().map(|p| p.label).max().unwrap_or(0)
    }

    pub fn partner(&self, passage: usize) -> usize {
        self.partner[passage]
    }

    /// Passage indices `(first, second)` of a crossing.
    pub fn passages_of(&self, label: Label) -> Option<(usize, usize)> {
        let i = self.passages.iter().position(|p| p.label == label)?;
        Some((i, self.partner[i]))
    }

    pub fn passage_of_dart(d: DartId) -> usize {
        d / 2
    }

    pub fn is_outgoing(d: DartId) -> bool {
        d % 2 == 1
    }

    pub fn label_of_dart(&self, d: DartId) -> Label {
        self.passages[d / 2].label
    }

    /// Edge index (edge `k` joins passage `k` to passage `k + 1`).
    pub fn edge_of(&self, d: DartId) -> usize {
        let len = self.passages.len();
        if Self::is_outgoing(d) {
            d / 2
        } else {
            (d / 2 + len - 1) % len
        }
    }

    /// The outgoing dart of edge `k`.
    pub fn edge_dart(k: usize) -> DartId {
        2 * k + 1
    }

    pub fn edge_count(&self) -> usize {
        self.passages.len().max(1)
    }

    pub fn vertex_prev(&self, d: DartId) -> DartId {
        let n1 = self.darts[d].vertex_next;
        let n2 = self.darts[n1].vertex_next;
        self.darts[n2].vertex_next
    }

    /// Next dart around the face lying to the left of `d`.
    pub fn face_next(&self, d: DartId) -> DartId {
        self.vertex_prev(self.darts[d].twin)
    }

    pub fn face_table(&self) -> FaceTable {
        if self.is_circle() {
            return FaceTable {
                faces: vec![
                    Face { id: 0, darts: Vec::new() },
                    Face { id: 1, darts: Vec::new() },
                ],
                face_of: Vec::new(),
            };
        }
        let mut face_of = vec![usize::MAX; self.darts.len()];
        let mut faces = Vec::new();
        for start in 0..self.darts.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                darts.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, darts });
        }
        FaceTable { faces, face_of }
    }

    pub fn faces(&self) -> Vec<Face> {
        self.face_table().faces
    }

    /// Face degree histogram `degree -> count`.
    pub fn face_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for f in self.faces() {
            *census.entry(f.degree()).or_insert(0) += 1;
        }
        census
    }

    /// The same curve with the basepoint moved onto the edge that ends at
    /// passage `start`.
    pub fn rebased(&self, start: usize) -> Self {
        if self.is_circle() {
            return self.clone();
        }
        let len = self.passages.len();
        let start = start % len;
        let mut passages = self.passages.clone();
        passages.rotate_left(start);
        let shift = 2 * start;
        let total = self.darts.len();
        let outer = self.outer.map(|a| match a {
            FaceAnchor::Dart(d) => FaceAnchor::Dart((d + total - shift) % total),
            other => other,
        });
        Self::from_passages_unchecked(passages)
            .expect("rotation preserves validity")
            .with_outer(outer)
    }

    /// The same curve traversed backwards from the same basepoint.
    pub fn reversed(&self) -> Self {
        let len = self.passages.len();
        let passages: Vec<Passage> = self.passages.iter().rev().copied().collect();
        let outer = self.outer.map(|a| match a {
            FaceAnchor::Dart(d) => {
                let k = d / 2;
                let nk = len - 1 - k;
                FaceAnchor::Dart(if Self::is_outgoing(d) { 2 * nk } else { 2 * nk + 1 })
            }
            FaceAnchor::Circle(s) => FaceAnchor::Circle(s.flip()),
        });
        Self::from_passages_unchecked(passages)
            .expect("reversal preserves validity")
            .with_outer(outer)
    }

    /// Crossing labels renumbered `1..=n` in first-visit order.
    pub fn relabeled(&self) -> (Self, BTreeMap<Label, Label>) {
        let mut map = BTreeMap::new();
        for p in &self.passages {
            let next = map.len() as Label + 1;
            map.entry(p.label).or_insert(next);
        }
        let passages = self
            .passages
            .iter()
            .map(|p| Passage { label: map[&p.label], leftward: p.leftward })
            .collect();
        let relabeled = Self::from_passages_unchecked(passages)
            .expect("relabeling preserves validity")
            .with_outer(self.outer);
        (relabeled, map)
    }

    /// Traversal from the basepoint with labels in first-visit order.
    pub fn canonical_code(&self) -> GaussCode {
        let (relabeled, _) = self.relabeled();
        GaussCode::new(
            relabeled
                .passages
                .iter()
                .map(|p| GaussToken { label: p.label, mark: None })
                .collect(),
        )
    }

    /// Key identifying the embedded curve up to relabeling and choice of
    /// basepoint (orientation and the outer mark are kept).
    pub fn cyclic_key(&self) -> Vec<u32> {
        cyclic_key(&self.passages, |_| 0)
    }

    pub fn remark_outer_face(&self, face: FaceId) -> Result<Self, MapError> {
        let table = self.face_table();
        if face >= table.faces.len() {
            return Err(MapError::NoSuchFace(face));
        }
        Ok(self.clone().with_outer(Some(table.anchor(face))))
    }
}

/// Smallest relabeled encoding over all rotations of a passage word;
/// `extra` contributes per-passage bits (over/under for diagrams).
pub(crate) fn cyclic_key(passages: &[Passage], extra: impl Fn(usize) -> u32) -> Vec<u32> {
    let len = passages.len();
    let mut best: Option<Vec<u32>> = None;
    let mut relabel: BTreeMap<Label, u32> = BTreeMap::new();
    for start in 0..len {
        relabel.clear();
        let key: Vec<u32> = (0..len)
            .map(|off| {
                let i = (start + off) % len;
                let p = passages[i];
                let next = relabel.len() as u32;
                let id = *relabel.entry(p.label).or_insert(next);
                (id << 3) | ((p.leftward as u32) << 2) | extra(i)
            })
            .collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

fn build_darts(passages: &[Passage], partner: &[usize]) -> Vec<Dart> {
    let len = passages.len();
    let mut darts = Vec::with_capacity(2 * len);
    for k in 0..len {
        let inc = 2 * k;
        let out = 2 * k + 1;
        let prev_out = 2 * ((k + len - 1) % len) + 1;
        let next_in = 2 * ((k + 1) % len);
        darts.push(Dart { id: inc, twin: prev_out, vertex_next: 0, strand_next: out });
        darts.push(Dart { id: out, twin: next_in, vertex_next: 0, strand_next: next_in });
    }
    // Counterclockwise order at a crossing whose leftward passage is i and
    // other passage is j: out_i, out_j, in_i, in_j.
    for i in 0..len {
        if !passages[i].leftward {
            continue;
        }
        let j = partner[i];
        let (in_i, out_i, in_j, out_j) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        darts[out_i].vertex_next = out_j;
        darts[out_j].vertex_next = in_i;
        darts[in_i].vertex_next = in_j;
        darts[in_j].vertex_next = out_i;
    }
    darts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> SphericalCurveMap {
        build_from_gauss_code(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn circle_has_two_faces() {
        let c = SphericalCurveMap::circle();
        let faces = c.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.degree() == 1));
    }

    #[test]
    fn figure_eight_faces() {
        let m = code("1 1");
        assert_eq!(m.crossing_count(), 1);
        let census = m.face_census();
        assert_eq!(m.faces().len(), 3);
        assert_eq!(census.get(&1), Some(&2));
        assert_eq!(census.get(&2), Some(&1));
    }

    #[test]
    fn dart_invariants_hold() {
        for s in ["1 1", "1 2 3 1 2 3", "1 2 2 1", "1 1 2 2 3 3"] {
            let m = code(s);
            for d in m.darts() {
                assert_ne!(d.twin, d.id);
                assert_eq!(m.dart(d.twin).twin, d.id);
                let mut x = d.id;
                let mut len = 0;
                loop {
                    x = m.dart(x).vertex_next;
                    len += 1;
                    if x == d.id {
                        break;
                    }
                }
                assert_eq!(len, 4);
            }
            let mut x = 0;
            let mut visited = 0;
            loop {
                x = m.dart(x).strand_next;
                visited += 1;
                if x == 0 {
                    break;
                }
            }
            assert_eq!(visited, m.darts().len());
            let n = m.crossing_count() as i64;
            assert_eq!(n - 2 * n + m.faces().len() as i64, 2);
            assert_eq!(m.faces().iter().map(Face::degree).sum::<usize>(), 4 * n as usize);
        }
    }

    #[test]
    fn canonical_code_examples() {
        assert!(SphericalCurveMap::circle().canonical_code().is_empty());
        assert_eq!(code("1 1").canonical_code().to_string(), "1 1");
        assert_eq!(code("7 4 9 7 4 9").canonical_code().to_string(), "1 2 3 1 2 3");
    }

    #[test]
    fn remark_to_same_face_is_identity() {
        let m = code("1 2 3 1 2 3");
        let m = m.remark_outer_face(2).unwrap();
        assert_eq!(m.remark_outer_face(2).unwrap(), m);
        assert_eq!(m.remark_outer_face(99), Err(MapError::NoSuchFace(99)));
    }

    #[test]
    fn rebase_and_reverse_keep_faces() {
        let m = code("1 2 3 1 2 3").remark_outer_face(1).unwrap();
        let outer_deg = m.faces()[m.outer_face().unwrap()].degree();
        for s in 0..6 {
            let r = m.rebased(s);
            assert_eq!(r.face_census(), m.face_census());
            assert_eq!(r.faces()[r.outer_face().unwrap()].degree(), outer_deg);
            assert_eq!(r.cyclic_key(), m.cyclic_key());
        }
        let rev = m.reversed();
        assert_eq!(rev.face_census(), m.face_census());
        assert_eq!(rev.faces()[rev.outer_face().unwrap()].degree(), outer_deg);
        assert_eq!(rev.reversed(), m);
    }
}
