//! The curves Γ_n, the ascending diagrams D_n on them, and a shortest
//! unknotting script for D_n.

use std::collections::HashSet;
use std::fmt;

use crate::diagram::{CrossingSign, KnotDiagram};
use crate::error::FamilyError;
use crate::invariants::{
    self, move_delta, track_backward, BoundReport, InvariantState, MinimalityCertificate, Quantity,
};
use crate::map::{FaceAnchor, Label, SphericalCurveMap};
use crate::moves::{self, surgery, ClassifiedMove, Direction, Move, MoveClass, MoveKind, RiiKind};

/// Braid word on `n + 1` strands whose closure is D_n: `n` blocks, block
/// `b` running through σ_1..σ_n with σ_k inverted unless `k > n - b`.
pub fn braid_word(n: usize) -> Result<Vec<i64>, FamilyError> {
    if n < 2 {
        return Err(FamilyError::OutOfRange(n, 2));
    }
    let mut word = Vec::with_capacity(n * n);
    for b in 0..n {
        for k in 1..=n {
            word.push(if k > n - b { k as i64 } else { -(k as i64) });
        }
    }
    Ok(word)
}

fn braid_closure(n: usize) -> Result<KnotDiagram, FamilyError> {
    Ok(KnotDiagram::from_braid(&braid_word(n)?, n + 1)?)
}

/// Γ_n with its outer face (an n-gon) marked.
pub fn gamma_curve(n: usize) -> Result<SphericalCurveMap, FamilyError> {
    let map = braid_closure(n)?.into_map();
    // the basepoint strand is outermost and runs counterclockwise, so the
    // unbounded face lies to the left of the backward dart 0
    Ok(map.with_outer(Some(FaceAnchor::Dart(0))))
}

pub fn dn_diagram(n: usize) -> Result<KnotDiagram, FamilyError> {
    Ok(KnotDiagram::ascending(gamma_curve(n)?))
}

/// `n(n² + 5)/6`.
pub fn script_length(n: usize) -> usize {
    n * (n * n + 5) / 6
}

/// `(n, C(n,2), C(n,3))`.
pub fn expected_counts(n: usize) -> (usize, usize, usize) {
    (n, n * n.saturating_sub(1) / 2, n * n.saturating_sub(1) * n.saturating_sub(2) / 6)
}

/// The only moves a shortest unknotting of D_n may use.
pub fn is_reducing(class: MoveClass) -> bool {
    matches!(
        class,
        MoveClass::RI { sign: CrossingSign::Positive, direction: Direction::Delete }
            | MoveClass::RII { kind: RiiKind::Unmatched, direction: Direction::Delete }
            | MoveClass::RIII { sign: CrossingSign::Positive }
    )
}

/// Whether a deletion removes passages next to the basepoint, which would
/// keep the reversed script from restoring it.
fn touches_basepoint(d: &KnotDiagram, c: &ClassifiedMove) -> bool {
    let face = match c.mv {
        Move::DeleteRI { face } | Move::DeleteRII { face } => face,
        _ => return false,
    };
    let map = d.map();
    let last = map.passages().len() - 1;
    let table = map.face_table();
    table.faces[table.face_of[face]].darts.iter().any(|&x| {
        let e = map.edge_of(x);
        e == last || e == 0
    })
}

/// The edge a move drags the top strand along: the over-over segment of a
/// trigon or bigon, or the loop of a kink.
fn top_edge(d: &KnotDiagram, c: &ClassifiedMove) -> Option<usize> {
    let face = match c.mv {
        Move::DeleteRI { face } | Move::DeleteRII { face } | Move::RIII { face } => face,
        _ => return None,
    };
    let map = d.map();
    let len = map.passages().len();
    let table = map.face_table();
    table.faces[table.face_of[face]]
        .darts
        .iter()
        .map(|&x| map.edge_of(x))
        .find(|&e| c.class.kind() == MoveKind::RI || (d.is_over(e) && d.is_over((e + 1) % len)))
}

/// The crossing closed by the last passage. In D_n its loop is the final
/// stretch of the curve, lying above everything else.
fn focus(d: &KnotDiagram) -> Label {
    let map = d.map();
    map.passages()[map.passages().len() - 1].label
}

fn candidates(d: &KnotDiagram, focus: Label) -> Vec<ClassifiedMove> {
    let (first, second) = d.map().passages_of(focus).expect("focus crossing present");
    let inside = first..second;
    let mut moves: Vec<(usize, ClassifiedMove)> = moves::local_moves(d)
        .into_iter()
        .filter(|c| is_reducing(c.class))
        // the focus crossing stays put until its kink is dropped
        .filter(|c| (c.class.kind() == MoveKind::RI) == corners(d, c).contains(&focus))
        .filter_map(|c| top_edge(d, &c).filter(|e| inside.contains(e)).map(|e| (e, c)))
        .collect();
    // shrink the loop from its far end
    moves.sort_by_key(|(e, c)| (std::cmp::Reverse(*e), touches_basepoint(d, c)));
    moves.into_iter().map(|(_, c)| c).collect()
}

/// Moves of each kind still to be spent: RI, RII, RIII.
type Budget = [usize; 3];

fn slot(kind: MoveKind) -> usize {
    match kind {
        MoveKind::RI => 0,
        MoveKind::RII => 1,
        MoveKind::RIII => 2,
    }
}

/// Moves needed to take D_m to D_{m-1}: pull the last loop in with
/// `C(m-1, 2)` third moves and `m - 1` bigon deletions, then drop its kink.
fn level_budget(crossings: usize) -> Option<Budget> {
    let m = (crossings as f64).sqrt().round() as usize;
    (m * m == crossings && m > 0).then(|| [1, m - 1, (m - 1) * m.saturating_sub(2) / 2])
}

/// The crossings at the corners of the face a deletion or third move acts on.
fn corners(d: &KnotDiagram, c: &ClassifiedMove) -> Vec<Label> {
    let map = d.map();
    let table = map.face_table();
    match c.mv {
        Move::DeleteRI { face } => surgery::monogon_site(map, &table, face).map(|s| vec![s.label]),
        Move::DeleteRII { face } => surgery::bigon_site(map, &table, face).map(|s| s.labels.to_vec()),
        Move::RIII { face } => surgery::trigon_site(map, &table, face).map(|s| s.labels.to_vec()),
        _ => Ok(Vec::new()),
    }
    .unwrap_or_default()
}

type SeenKey = (Vec<(u32, bool, bool)>, Option<usize>);

fn search(
    d: &KnotDiagram,
    level: Option<(Label, Budget)>,
    script: &mut Vec<Move>,
    seen: &mut HashSet<SeenKey>,
) -> bool {
    if d.is_trivial() {
        return true;
    }
    let (focus, mut left) = match level {
        Some(l) => l,
        None => match level_budget(d.crossing_count()) {
            Some(b) => (focus(d), b),
            None => return false,
        },
    };
    for c in candidates(d, focus) {
        // every admissible move changes the invariants by a fixed amount,
        // so the number of moves of each kind is known in advance
        let k = slot(c.class.kind());
        if left[k] == 0 {
            continue;
        }
        if c.class.kind() == MoveKind::RI && left != [1, 0, 0] {
            continue;
        }
        let next = moves::apply_move(d, &c.mv).expect("enumerated moves apply");
        left[k] -= 1;
        let next_level = (k != 0).then_some((focus, left));
        let key = (moves::exact_key(&next), next_level.and_then(|_| next.map().passages_of(focus).map(|p| p.0)));
        if seen.insert(key) {
            script.push(c.mv);
            if search(&next, next_level, script, seen) {
                return true;
            }
            script.pop();
        }
        left[k] += 1;
    }
    false
}

/// A script taking D_n to the trivial diagram using only positive kink
/// deletions, unmatched bigon deletions and positive third moves.
///
/// Every such move raises J⁻/2+St-w/2 by one, so any script of this shape
/// has the shortest possible length; it is found by depth-first search.
pub fn unknotting_script(n: usize) -> Result<Vec<Move>, FamilyError> {
    let d = dn_diagram(n)?;
    let mut script = Vec::with_capacity(script_length(n));
    let mut seen = HashSet::new();
    if search(&d, None, &mut script, &mut seen) {
        Ok(script)
    } else {
        Err(FamilyError::ScriptSearchFailed(n))
    }
}

/// The unknotting script run backwards: from the trivial diagram to D_n.
pub fn construction_script(n: usize) -> Result<Vec<Move>, FamilyError> {
    let script = unknotting_script(n)?;
    let mut states = vec![dn_diagram(n)?];
    for mv in &script {
        let next = moves::apply_move(states.last().unwrap(), mv)?;
        states.push(next);
    }
    let mut out = Vec::with_capacity(script.len());
    for (i, mv) in script.iter().enumerate().rev() {
        out.push(moves::inverse(&states[i], mv)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: usize,
    pub length: usize,
    pub counts: (usize, usize, usize),
    pub endpoint_ok: bool,
    pub counts_ok: bool,
    pub classes_ok: bool,
    /// Values of D_n obtained by tracking the script back from the circle.
    pub tracked: InvariantState,
    pub values_ok: bool,
    /// Values of D_n from the reduction search, when it was run.
    pub oracle: Option<InvariantState>,
    pub bound: BoundReport,
    pub certificate: MinimalityCertificate,
}

impl TheoremReport {
    pub fn oracle_ok(&self) -> bool {
        self.oracle.is_none_or(|o| o == self.tracked)
    }

    pub fn ok(&self) -> bool {
        self.endpoint_ok
            && self.counts_ok
            && self.classes_ok
            && self.values_ok
            && self.oracle_ok()
            && self.certificate.valid
            && self.bound.lower_bound as usize == self.length
    }

    /// The first failing check.
    pub fn check(&self) -> Result<(), FamilyError> {
        let fail = |component, detail: String| Err(FamilyError::CheckFailed { component, detail });
        if !self.endpoint_ok {
            return fail("endpoint", "script does not end at the trivial diagram".into());
        }
        if !self.counts_ok {
            return fail("counts", format!("{:?} != {:?}", self.counts, expected_counts(self.n)));
        }
        if !self.classes_ok {
            return fail("classification", "script uses a move outside RI+ / unmatched RII / RIII+".into());
        }
        if !self.values_ok {
            return fail("values", format!("tracked {}", self.tracked));
        }
        if !self.oracle_ok() {
            return fail("oracle", format!("reduction gives {}", self.oracle.unwrap()));
        }
        if !self.certificate.valid {
            return fail("certificate", format!("offending moves {:?}", self.certificate.offending()));
        }
        if self.bound.lower_bound as usize != self.length {
            return fail("bound", format!("lower bound {} != length {}", self.bound.lower_bound, self.length));
        }
        Ok(())
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.counts;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "length={} expected={}", self.length, script_length(self.n))?;
        writeln!(f, "counts RI={a} RII={b} RIII={c} ok={}", self.counts_ok)?;
        writeln!(f, "endpoint_trivial={}", self.endpoint_ok)?;
        writeln!(f, "classes_ok={}", self.classes_ok)?;
        writeln!(
            f,
            "tracked J+/2+St={} J-/2+St-w/2={} w={} ok={}",
            self.tracked.get(Quantity::A),
            self.tracked.get(Quantity::BMinus),
            self.tracked.w,
            self.values_ok
        )?;
        match self.oracle {
            Some(o) => writeln!(
                f,
                "oracle J+/2+St={} J-/2+St-w/2={} agrees={}",
                o.get(Quantity::A),
                o.get(Quantity::BMinus),
                self.oracle_ok()
            )?,
            None => writeln!(f, "oracle skipped")?,
        }
        writeln!(f, "{}", self.bound)?;
        writeln!(f, "{}", self.certificate)?;
        write!(f, "ok={}", self.ok())
    }
}

/// Runs the unknotting script on D_n and collects every check, without
/// failing on the first bad one. The reduction oracle runs when `oracle`
/// is set.
pub fn theorem_report(n: usize, oracle: bool) -> Result<TheoremReport, FamilyError> {
    if n < 3 {
        return Err(FamilyError::OutOfRange(n, 3));
    }
    let d = dn_diagram(n)?;
    let script = unknotting_script(n)?;
    let (end, log) = moves::run_script(&d, &script)?;
    let classes: Vec<MoveClass> = log.iter().map(|c| c.class).collect();
    let count = |k| classes.iter().filter(|c| c.kind() == k).count();
    let counts = (count(MoveKind::RI), count(MoveKind::RII), count(MoveKind::RIII));

    let tracked = track_backward(InvariantState::circle(), &classes);
    let (nn, ni) = (n as i64, script_length(n) as i64);
    let values_ok = tracked.get(Quantity::BMinus).doubled() == -2 * ni
        && tracked.get(Quantity::A).doubled() == -2 * expected_counts(n).2 as i64
        && tracked.w == d.writhe()
        && tracked.w == nn
        && tracked.n == nn * nn
        && tracked.is_consistent();
    let oracle = if oracle {
        let (a2, b2) = invariants::reduce_and_compute(d.map())?;
        Some(InvariantState { a2, b2, w: d.writhe(), n: d.crossing_count() as i64 })
    } else {
        None
    };
    let mut bound = BoundReport::between(tracked, InvariantState::circle());
    bound.achieved_by = Some(script.len());
    let certificate = invariants::audit(&d, &script)?;
    debug_assert!(classes.iter().all(|&c| move_delta(c).of(Quantity::BMinus).abs() <= 1));
    Ok(TheoremReport {
        n,
        length: script.len(),
        counts,
        endpoint_ok: end.is_trivial(),
        counts_ok: counts == expected_counts(n) && script.len() == script_length(n),
        classes_ok: classes.iter().all(|&c| is_reducing(c)),
        tracked,
        values_ok,
        oracle,
        bound,
        certificate,
    })
}

/// [`theorem_report`] that fails with the first check that does not hold.
pub fn verify_theorem(n: usize, oracle: bool) -> Result<TheoremReport, FamilyError> {
    let report = theorem_report(n, oracle)?;
    report.check()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(braid_word(2).unwrap(), vec![-1, -2, -1, 2]);
        assert_eq!(braid_word(3).unwrap().len(), 9);
        assert!(matches!(braid_word(1), Err(FamilyError::OutOfRange(1, 2))));
    }

    #[test]
    fn gamma_shapes() {
        for n in 2..=5 {
            let g = gamma_curve(n).unwrap();
            assert_eq!(g.crossing_count(), n * n);
            let mut expected = std::collections::BTreeMap::new();
            *expected.entry(n).or_insert(0) += 2;
            *expected.entry(3).or_insert(0) += 2 * n;
            if n > 2 {
                *expected.entry(4).or_insert(0) += n * (n - 2);
            }
            assert_eq!(g.face_census(), expected, "n={n}");
            let outer = g.outer_face().unwrap();
            assert_eq!(g.faces()[outer].degree(), n);
        }
    }

    #[test]
    fn dn_writhe() {
        for n in 2..=5 {
            assert_eq!(dn_diagram(n).unwrap().writhe(), n as i64);
        }
    }

    #[test]
    fn lengths() {
        assert_eq!([3, 4, 5, 6, 7].map(script_length), [7, 14, 25, 41, 63]);
        for n in 3..10 {
            assert_eq!(script_length(n) - script_length(n - 1), 1 + (n - 1) + (n - 1) * (n - 2) / 2);
        }
    }

    #[test]
    fn small_theorem() {
        let r = verify_theorem(3, true).unwrap();
        assert_eq!(r.length, 7);
        assert!(r.to_string().ends_with("ok=true"));
        assert!(matches!(theorem_report(2, false), Err(FamilyError::OutOfRange(2, 3))));
    }
}
