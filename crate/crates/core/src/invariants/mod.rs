//! Exact bookkeeping of the spherical curve invariants J⁺/2+St and
//! J⁻/2+St together with the writhe.
//!
//! Everything is stored doubled, so `a2 = J⁺ + 2St` and `b2 = J⁻ + 2St`
//! are integers.

mod certificate;
mod reduce;

pub use certificate::{audit, lower_bound, minimality_certificate, BoundReport, MinimalityCertificate, Quantity};
pub use reduce::{reduce_and_compute, reduce_with_budget, DEFAULT_BUDGET};

use std::fmt;

use crate::diagram::{CrossingSign, KnotDiagram};
use crate::error::InvariantError;
use crate::half::Half;
use crate::map::{FaceAnchor, Side, SphericalCurveMap};
use crate::moves::{surgery, Direction, MoveClass, RiiKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct InvariantState {
    pub a2: i64,
    pub b2: i64,
    pub w: i64,
    pub n: i64,
}

impl InvariantState {
    /// The crossing-free circle.
    pub fn circle() -> Self {
        InvariantState::default()
    }

    pub fn get(&self, q: Quantity) -> Half {
        match q {
            Quantity::A => Half::from_doubled(self.a2),
            Quantity::BMinus => Half::from_doubled(self.b2 - self.w),
            Quantity::BPlus => Half::from_doubled(self.b2 + self.w),
        }
    }

    pub fn apply(self, d: MoveDelta) -> Self {
        InvariantState {
            a2: self.a2 + d.da2,
            b2: self.b2 + d.db2,
            w: self.w + d.dw,
            n: self.n + d.da2 - d.db2,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.a2 - self.b2 == self.n
    }
}

impl fmt::Display for InvariantState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a2/2={} b2/2={} w={} n={}",
            Half::from_doubled(self.a2),
            Half::from_doubled(self.b2),
            self.w,
            self.n
        )
    }
}

/// Change of `(a2, b2, w)` caused by one move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MoveDelta {
    pub da2: i64,
    pub db2: i64,
    pub dw: i64,
}

impl MoveDelta {
    pub fn of(&self, q: Quantity) -> i64 {
        let h = match q {
            Quantity::A => self.da2,
            Quantity::BMinus => self.db2 - self.dw,
            Quantity::BPlus => self.db2 + self.dw,
        };
        debug_assert_eq!(h % 2, 0);
        h / 2
    }

    fn neg(self) -> Self {
        MoveDelta { da2: -self.da2, db2: -self.db2, dw: -self.dw }
    }
}

pub fn move_delta(class: MoveClass) -> MoveDelta {
    let (created, direction) = match class {
        MoveClass::RI { sign, direction } => {
            let dw = sign.value();
            (MoveDelta { da2: 0, db2: -1, dw }, direction)
        }
        MoveClass::RII { kind: RiiKind::Matched, direction } => (MoveDelta { da2: 2, db2: 0, dw: 0 }, direction),
        MoveClass::RII { kind: RiiKind::Unmatched, direction } => (MoveDelta { da2: 0, db2: -2, dw: 0 }, direction),
        MoveClass::RIII { sign } => {
            let s = 2 * sign.value();
            (MoveDelta { da2: s, db2: s, dw: 0 }, Direction::Create)
        }
    };
    match direction {
        Direction::Create => created,
        Direction::Delete => created.neg(),
    }
}

/// Folds the deltas of a classified trace into `start`.
pub fn track(start: InvariantState, trace: &[MoveClass]) -> InvariantState {
    trace.iter().fold(start, |s, &c| s.apply(move_delta(c)))
}

/// Every intermediate state along a trace, `start` included.
pub fn trajectory(start: InvariantState, trace: &[MoveClass]) -> Vec<InvariantState> {
    let mut out = Vec::with_capacity(trace.len() + 1);
    out.push(start);
    for &c in trace {
        out.push(out.last().unwrap().apply(move_delta(c)));
    }
    out
}

/// The state before a trace, given the state after it.
pub fn track_backward(end: InvariantState, trace: &[MoveClass]) -> InvariantState {
    trace.iter().rev().fold(end, |s, &c| s.apply(move_delta(c).neg()))
}

pub fn invariants_of_diagram(d: &KnotDiagram) -> Result<InvariantState, InvariantError> {
    invariants_with_budget(d, DEFAULT_BUDGET)
}

pub fn invariants_with_budget(d: &KnotDiagram, budget: usize) -> Result<InvariantState, InvariantError> {
    let (a2, b2) = reduce_with_budget(d.map(), budget)?;
    Ok(InvariantState { a2, b2, w: d.writhe(), n: d.crossing_count() as i64 })
}

/// `x = 4 c2 - a2/2`.
pub fn cowrithe_of(state: &InvariantState, c2: i64) -> Half {
    Half::from_int(4 * c2) - Half::from_doubled(state.a2)
}

pub fn cowrithe(d: &KnotDiagram, c2: i64) -> Result<Half, InvariantError> {
    Ok(cowrithe_of(&invariants_of_diagram(d)?, c2))
}

/// `(x + n/2 - w/2, x + n/2 + w/2)`.
pub fn corollary_quantities_of(state: &InvariantState, c2: i64) -> (Half, Half) {
    let x = cowrithe_of(state, c2);
    let n = Half::from_doubled(state.n);
    let w = Half::from_doubled(state.w);
    (x + n - w, x + n + w)
}

pub fn corollary_quantities(d: &KnotDiagram, c2: i64) -> Result<(Half, Half), InvariantError> {
    Ok(corollary_quantities_of(&invariants_of_diagram(d)?, c2))
}

/// The standard plane curve K_i: a figure eight for `i = 0`, otherwise a
/// circle with `i - 1` small kinks inside it. The outer face is marked, so
/// the Whitney index is `±i`.
pub fn standard_curve(i: usize) -> SphericalCurveMap {
    if i == 0 {
        let (m, _) = surgery::create_kink(&SphericalCurveMap::circle(), None, Side::Left, 1);
        // the face left of the long edge is the one outside both lobes
        return m.with_outer(Some(FaceAnchor::Dart(3)));
    }
    let mut m = SphericalCurveMap::circle();
    for k in 1..i {
        let edge = (!m.is_circle()).then(|| m.passages().len() - 1);
        m = surgery::create_kink(&m, edge, Side::Left, k as u32).0;
    }
    let outer = if m.is_circle() { FaceAnchor::Circle(Side::Right) } else { FaceAnchor::Dart(0) };
    m.with_outer(Some(outer))
}

/// `(J⁺, J⁻, St)` of K_i, the normalization of the plane invariants.
pub fn standard_values(i: usize) -> (i64, i64, i64) {
    if i == 0 {
        (0, -1, 0)
    } else {
        let i = i as i64 - 1;
        (-2 * i, -3 * i, i)
    }
}

/// The doubled spherical combinations `(a2, b2)` implied by
/// [`standard_values`].
pub fn standard_combinations(i: usize) -> (i64, i64) {
    let (jp, jm, st) = standard_values(i);
    (jp + 2 * st, jm + 2 * st)
}

/// Positive kink on the circle.
pub fn positive_kink() -> KnotDiagram {
    crate::moves::apply_move(
        &KnotDiagram::trivial(),
        &crate::moves::Move::CreateRI { edge: None, side: Side::Left, sign: CrossingSign::Positive },
    )
    .expect("the circle takes a kink")
}
