use std::fmt;

use super::{invariants_of_diagram, move_delta, InvariantState};
use crate::diagram::KnotDiagram;
use crate::error::{InvariantError, MoveError};
use crate::moves::{run_script, Direction, Move, MoveClass, RiiKind};

/// The three combinations that change by at most one per move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// J⁺/2 + St
    A,
    /// J⁻/2 + St - w/2
    BMinus,
    /// J⁻/2 + St + w/2
    BPlus,
}

impl Quantity {
    pub const ALL: [Quantity; 3] = [Quantity::A, Quantity::BMinus, Quantity::BPlus];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::A => "a2/2",
            Quantity::BMinus => "(b2-w)/2",
            Quantity::BPlus => "(b2+w)/2",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub start: InvariantState,
    pub end: InvariantState,
    pub gap_a: i64,
    pub gap_bm: i64,
    pub gap_bp: i64,
    pub lower_bound: i64,
    pub achieved_by: Option<usize>,
}

impl BoundReport {
    pub fn between(start: InvariantState, end: InvariantState) -> Self {
        let gap = |q| (end.get(q) - start.get(q)).abs().to_integer().expect("integral gap");
        let (gap_a, gap_bm, gap_bp) = (gap(Quantity::A), gap(Quantity::BMinus), gap(Quantity::BPlus));
        BoundReport {
            start,
            end,
            gap_a,
            gap_bm,
            gap_bp,
            lower_bound: gap_a.max(gap_bm).max(gap_bp),
            achieved_by: None,
        }
    }

    pub fn gap(&self, q: Quantity) -> i64 {
        match q {
            Quantity::A => self.gap_a,
            Quantity::BMinus => self.gap_bm,
            Quantity::BPlus => self.gap_bp,
        }
    }

    /// The first quantity whose gap equals the bound.
    pub fn sharpest(&self) -> Quantity {
        Quantity::ALL.into_iter().find(|&q| self.gap(q) == self.lower_bound).unwrap()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in Quantity::ALL {
            writeln!(
                f,
                "quantity={} start={} end={} gap={}",
                q,
                self.start.get(q),
                self.end.get(q),
                self.gap(q)
            )?;
        }
        if let Some(len) = self.achieved_by {
            writeln!(f, "achieved_by={len}")?;
        }
        write!(f, "lower_bound={}", self.lower_bound)
    }
}

/// Bound on the number of moves between two diagrams of the same knot.
pub fn lower_bound(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<BoundReport, InvariantError> {
    Ok(BoundReport::between(invariants_of_diagram(d1)?, invariants_of_diagram(d2)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub quantity: Quantity,
    pub classes: Vec<MoveClass>,
    pub per_move_deltas: Vec<i64>,
    pub total: i64,
    pub valid: bool,
}

impl MinimalityCertificate {
    /// Moves whose delta differs from the prevailing unit step.
    pub fn offending(&self) -> Vec<usize> {
        let unit = prevailing_unit(&self.per_move_deltas);
        (0..self.per_move_deltas.len())
            .filter(|&i| self.per_move_deltas[i] != unit)
            .collect()
    }
}

fn prevailing_unit(deltas: &[i64]) -> i64 {
    let up = deltas.iter().filter(|&&d| d == 1).count();
    let down = deltas.iter().filter(|&&d| d == -1).count();
    if down > up {
        -1
    } else {
        1
    }
}

fn short_class(c: &MoveClass) -> String {
    let dir = |d: &Direction| match d {
        Direction::Create => "create",
        Direction::Delete => "delete",
    };
    match c {
        MoveClass::RI { sign, direction } => format!("RI{sign}_{}", dir(direction)),
        MoveClass::RII { kind, direction } => {
            let k = if *kind == RiiKind::Matched { "matched" } else { "unmatched" };
            format!("RII_{k}_{}", dir(direction))
        }
        MoveClass::RIII { sign } => format!("RIII{sign}"),
    }
}

impl fmt::Display for MinimalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quantity={} total={}", self.quantity, self.total)?;
        for (i, (c, d)) in self.classes.iter().zip(&self.per_move_deltas).enumerate() {
            writeln!(f, "{i} {} {d:+}", short_class(c))?;
        }
        write!(f, "certified={}", self.valid)
    }
}

/// Audits a script: picks the tracked quantity that best explains it and
/// reports whether it moves by the same unit on every move.
pub fn audit(start: &KnotDiagram, script: &[Move]) -> Result<MinimalityCertificate, MoveError> {
    let (_, log) = run_script(start, script)?;
    let classes: Vec<MoveClass> = log.iter().map(|c| c.class).collect();
    let build = |q: Quantity| {
        let deltas: Vec<i64> = classes.iter().map(|&c| move_delta(c).of(q)).collect();
        let total: i64 = deltas.iter().sum();
        let unit = prevailing_unit(&deltas);
        let valid = deltas.iter().all(|&d| d == unit) && total.unsigned_abs() as usize == deltas.len();
        MinimalityCertificate { quantity: q, classes: classes.clone(), per_move_deltas: deltas, total, valid }
    };
    let all: Vec<MinimalityCertificate> = Quantity::ALL.into_iter().map(build).collect();
    let best = all
        .iter()
        .find(|c| c.valid)
        .or_else(|| all.iter().min_by_key(|c| c.offending().len()))
        .unwrap()
        .clone();
    Ok(best)
}

/// A certificate that `script` is a shortest route from `start` to where
/// it ends.
pub fn minimality_certificate(start: &KnotDiagram, script: &[Move]) -> Result<MinimalityCertificate, InvariantError> {
    let cert = audit(start, script)?;
    if cert.valid {
        Ok(cert)
    } else {
        Err(InvariantError::InvalidCertificate { offending: cert.offending() })
    }
}
