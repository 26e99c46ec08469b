//! Local surgery on the signed traversal word of a spherical curve.
//!
//! These operate on the underlying curve only; over/under bookkeeping is
//! layered on top in the engine.

use crate::error::MoveError;
use crate::map::{DartId, FaceTable, Label, Passage, Side, SphericalCurveMap};

/// A monogon: the loop edge `edge`, whose end passages `edge` and
/// `edge + 1` are the two visits of one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonogonSite {
    pub edge: usize,
    pub label: Label,
}

/// A bigon bounded by edges `edges[0]` and `edges[1]`, listed in face
/// traversal order; `along[i]` tells whether the face traversal runs with
/// the curve orientation on that edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BigonSite {
    pub edges: [usize; 2],
    pub along: [bool; 2],
    pub labels: [Label; 2],
}

impl BigonSite {
    /// Both strands run the same way (the face boundary goes with the
    /// orientation on one edge and against it on the other).
    pub fn is_parallel(&self) -> bool {
        self.along[0] != self.along[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrigonSite {
    pub edges: [usize; 3],
    pub along: [bool; 3],
    pub labels: [Label; 3],
}

fn face_darts<'a>(map: &SphericalCurveMap, table: &'a FaceTable, d: DartId) -> Result<&'a [DartId], MoveError> {
    if d >= map.darts().len() {
        return Err(MoveError::inapplicable(format!("no dart {d}")));
    }
    Ok(&table.faces[table.face_of[d]].darts)
}

fn end_labels(map: &SphericalCurveMap, edge: usize) -> (Label, Label) {
    let len = map.passages().len();
    (map.passages()[edge].label, map.passages()[(edge + 1) % len].label)
}

pub fn monogon_site(map: &SphericalCurveMap, table: &FaceTable, d: DartId) -> Result<MonogonSite, MoveError> {
    let darts = face_darts(map, table, d)?;
    if darts.len() != 1 {
        return Err(MoveError::inapplicable(format!(
            "face at dart {d} has degree {}, not a monogon",
            darts.len()
        )));
    }
    let edge = map.edge_of(darts[0]);
    let (a, b) = end_labels(map, edge);
    debug_assert_eq!(a, b);
    Ok(MonogonSite { edge, label: a })
}

pub fn bigon_site(map: &SphericalCurveMap, table: &FaceTable, d: DartId) -> Result<BigonSite, MoveError> {
    let darts = face_darts(map, table, d)?;
    if darts.len() != 2 {
        return Err(MoveError::inapplicable(format!(
            "face at dart {d} has degree {}, not a bigon",
            darts.len()
        )));
    }
    let edges = [map.edge_of(darts[0]), map.edge_of(darts[1])];
    let (u, v) = end_labels(map, edges[0]);
    let (u2, v2) = end_labels(map, edges[1]);
    if u == v || !((u == u2 && v == v2) || (u == v2 && v == u2)) || edges[0] == edges[1] {
        return Err(MoveError::inapplicable(format!("bigon at dart {d} is degenerate")));
    }
    Ok(BigonSite {
        edges,
        along: [SphericalCurveMap::is_outgoing(darts[0]), SphericalCurveMap::is_outgoing(darts[1])],
        labels: [u, v],
    })
}

pub fn trigon_site(map: &SphericalCurveMap, table: &FaceTable, d: DartId) -> Result<TrigonSite, MoveError> {
    let darts = face_darts(map, table, d)?;
    if darts.len() != 3 {
        return Err(MoveError::inapplicable(format!(
            "face at dart {d} has degree {}, not a trigon",
            darts.len()
        )));
    }
    let edges = [map.edge_of(darts[0]), map.edge_of(darts[1]), map.edge_of(darts[2])];
    let mut labels = Vec::with_capacity(6);
    for &e in &edges {
        let (a, b) = end_labels(map, e);
        if a == b {
            return Err(MoveError::inapplicable(format!("trigon at dart {d} is degenerate")));
        }
        labels.push(a);
        labels.push(b);
    }
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 3 || edges[0] == edges[1] || edges[1] == edges[2] || edges[0] == edges[2] {
        return Err(MoveError::inapplicable(format!("trigon at dart {d} is degenerate")));
    }
    Ok(TrigonSite {
        edges,
        along: [
            SphericalCurveMap::is_outgoing(darts[0]),
            SphericalCurveMap::is_outgoing(darts[1]),
            SphericalCurveMap::is_outgoing(darts[2]),
        ],
        labels: [distinct[0], distinct[1], distinct[2]],
    })
}

/// `(-1)^q` for a trigon, with edges numbered by first encounter when the
/// curve is traversed starting just after edge `base_edge`.
pub fn trigon_sign_from(site: &TrigonSite, len: usize, base_edge: usize) -> i64 {
    let key = |e: usize| (e + len - base_edge - 1) % len;
    let keys = site.edges.map(key);
    let first = (0..3).min_by_key(|&i| keys[i]).unwrap();
    // does face traversal order meet the edges in increasing order?
    let forward = keys[(first + 1) % 3] < keys[(first + 2) % 3];
    let along = site.along.iter().filter(|&&a| a).count();
    let q = if forward { along } else { 3 - along };
    if q % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Default base edge for a trigon sign: the basepoint edge when it is off
/// the trigon, otherwise the first edge that is.
pub fn trigon_base_edge(site: &TrigonSite, len: usize) -> usize {
    if !site.edges.contains(&(len - 1)) {
        return len - 1;
    }
    (0..len).find(|e| !site.edges.contains(e)).expect("a trigon never uses every edge")
}

pub fn trigon_sign(site: &TrigonSite, len: usize) -> i64 {
    trigon_sign_from(site, len, trigon_base_edge(site, len))
}

fn sorted(mut e: [usize; 3]) -> [usize; 3] {
    e.sort_unstable();
    e
}

/// The trigon bounded by exactly the given edges, if any.
pub fn trigon_on_edges(map: &SphericalCurveMap, table: &FaceTable, edges: [usize; 3]) -> Option<TrigonSite> {
    let d = SphericalCurveMap::edge_dart(edges[0]);
    [d, map.dart(d).twin]
        .into_iter()
        .filter_map(|x| trigon_site(map, table, x).ok())
        .find(|s| sorted(s.edges) == sorted(edges))
}

/// A curve reached by one step, with the change of `(a2, b2)` it records.
pub type CurveStep = (SphericalCurveMap, (i64, i64));

/// Every curve reachable by one local move, with the change it causes in
/// the doubled spherical combinations `(a2, b2)`.
pub fn curve_steps(map: &SphericalCurveMap) -> (Vec<CurveStep>, Vec<CurveStep>) {
    let table = map.face_table();
    let len = map.passages().len();
    let mut deletions = Vec::new();
    let mut flips = Vec::new();
    for f in &table.faces {
        let Some(&d) = f.darts.first() else { continue };
        match f.darts.len() {
            1 => {
                let site = monogon_site(map, &table, d).expect("degree one");
                deletions.push((delete_monogon(map, &site), (0, 1)));
            }
            2 => {
                if let Ok(site) = bigon_site(map, &table, d) {
                    let delta = if site.is_parallel() { (-2, 0) } else { (0, 2) };
                    deletions.push((delete_bigon(map, &site), delta));
                }
            }
            3 => {
                if let Ok(site) = trigon_site(map, &table, d) {
                    let next = flip_trigon(map, &site);
                    let created = trigon_on_edges(&next, &next.face_table(), site.edges)
                        .expect("a flipped trigon leaves a trigon on the same edges");
                    let s = 2 * trigon_sign(&created, len);
                    flips.push((next, (s, s)));
                }
            }
            _ => {}
        }
    }
    (deletions, flips)
}

fn rebuild(passages: Vec<Passage>) -> SphericalCurveMap {
    if passages.is_empty() {
        return SphericalCurveMap::circle();
    }
    SphericalCurveMap::from_passages_unchecked(passages).expect("surgery keeps the word well formed")
}

fn remove_positions(map: &SphericalCurveMap, positions: &[usize]) -> Vec<Passage> {
    map.passages()
        .iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, p)| *p)
        .collect()
}

pub fn delete_monogon(map: &SphericalCurveMap, site: &MonogonSite) -> SphericalCurveMap {
    let len = map.passages().len();
    rebuild(remove_positions(map, &[site.edge, (site.edge + 1) % len]))
}

pub fn delete_bigon(map: &SphericalCurveMap, site: &BigonSite) -> SphericalCurveMap {
    let len = map.passages().len();
    let [a, b] = site.edges;
    rebuild(remove_positions(map, &[a, (a + 1) % len, b, (b + 1) % len]))
}

/// Slides one strand across the crossing of the other two: every trigon
/// edge has its two end passages exchanged.
pub fn flip_trigon(map: &SphericalCurveMap, site: &TrigonSite) -> SphericalCurveMap {
    let len = map.passages().len();
    let mut passages = map.passages().to_vec();
    for &e in &site.edges {
        passages.swap(e, (e + 1) % len);
    }
    rebuild(passages)
}

/// Inserts a kink with crossing `label` on an edge (`None` on the circle),
/// its monogon on the given side of the curve. Returns the new map and
/// the index of the kink's loop edge.
pub fn create_kink(map: &SphericalCurveMap, edge: Option<usize>, side: Side, label: Label) -> (SphericalCurveMap, usize) {
    // the loop is counterclockwise (monogon on its left) for a left kink,
    // so the second visit is the one crossed from the right
    let first = Passage { label, leftward: side == Side::Right };
    let second = Passage { label, leftward: side == Side::Left };
    let mut passages = map.passages().to_vec();
    let at = edge.map_or(0, |e| e + 1);
    passages.insert(at, second);
    passages.insert(at, first);
    (rebuild(passages), at)
}

/// Pushes a finger of the strand through `over_dart` across the face to the
/// left of that dart and through the strand of `under_dart`, which must
/// border the same face. Crossing `labels.0` is met first along the pushed
/// strand.
pub fn create_bigon(
    map: &SphericalCurveMap,
    table: &FaceTable,
    over_dart: DartId,
    under_dart: DartId,
    labels: (Label, Label),
) -> Result<(SphericalCurveMap, bool), MoveError> {
    let nd = map.darts().len();
    if over_dart >= nd || under_dart >= nd {
        return Err(MoveError::inapplicable("RII anchor dart out of range"));
    }
    if table.face_of[over_dart] != table.face_of[under_dart] {
        return Err(MoveError::inapplicable(format!(
            "darts {over_dart} and {under_dart} do not border a common face on their left"
        )));
    }
    let ka = map.edge_of(over_dart);
    let kb = map.edge_of(under_dart);
    if ka == kb {
        return Err(MoveError::inapplicable("RII anchors lie on the same edge"));
    }
    // Picture the face as a strip with the pushed strand A below and B
    // above; A's dart points east and B's dart points west.
    let a_east = SphericalCurveMap::is_outgoing(over_dart);
    let b_east = !SphericalCurveMap::is_outgoing(under_dart);
    let parallel = a_east == b_east;
    let (c1, c2) = labels;
    // A heads north through c1 and south through c2.
    let a1 = Passage { label: c1, leftward: !b_east };
    let a2 = Passage { label: c2, leftward: b_east };
    let b1 = Passage { label: c1, leftward: b_east };
    let b2 = Passage { label: c2, leftward: !b_east };
    let on_a = [a1, a2];
    let on_b = if parallel { [b1, b2] } else { [b2, b1] };
    let mut passages = map.passages().to_vec();
    let (hi, hi_ins, lo, lo_ins) = if ka > kb { (ka, on_a, kb, on_b) } else { (kb, on_b, ka, on_a) };
    passages.splice(hi + 1..hi + 1, hi_ins);
    passages.splice(lo + 1..lo + 1, lo_ins);
    Ok((rebuild(passages), parallel))
}
