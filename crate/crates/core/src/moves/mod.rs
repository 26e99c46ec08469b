//! Reidemeister moves on knot diagrams.
//!
//! Moves are addressed by darts of the current diagram: a face is named by
//! any dart on its boundary, an edge by either of its darts.

mod engine;
pub mod surgery;

use std::fmt;
use std::str::FromStr;

pub(crate) use engine::exact_key;
pub use engine::{
    apply, apply_move, classify, creation_moves, enumerate_moves, inverse, local_moves, run_script,
    same_diagram, triangle_sign, triangle_sign_from,
};

use crate::diagram::CrossingSign;
use crate::error::ParseError;
use crate::map::{DartId, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    /// Adds a kink on the edge of `edge` (`None` on the crossing-free
    /// circle), with its loop on `side` of the curve.
    CreateRI {
        edge: Option<DartId>,
        side: Side,
        sign: CrossingSign,
    },
    DeleteRI { face: DartId },
    /// Pushes the strand of `over` across the face left of `over` and over
    /// the strand of `under`.
    CreateRII { over: DartId, under: DartId },
    DeleteRII { face: DartId },
    RIII { face: DartId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    RI,
    RII,
    RIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Create,
    Delete,
}

/// Direct (strands parallel) or inverse self-tangency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RiiKind {
    Matched,
    Unmatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveClass {
    RI { sign: CrossingSign, direction: Direction },
    RII { kind: RiiKind, direction: Direction },
    /// Sign of the trigon the move creates.
    RIII { sign: CrossingSign },
}

impl MoveClass {
    pub fn kind(self) -> MoveKind {
        match self {
            MoveClass::RI { .. } => MoveKind::RI,
            MoveClass::RII { .. } => MoveKind::RII,
            MoveClass::RIII { .. } => MoveKind::RIII,
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            MoveClass::RI { direction, .. } | MoveClass::RII { direction, .. } => Some(direction),
            MoveClass::RIII { .. } => None,
        }
    }

    /// The class of the move that undoes this one.
    pub fn inverse(self) -> MoveClass {
        let flip = |d| match d {
            Direction::Create => Direction::Delete,
            Direction::Delete => Direction::Create,
        };
        match self {
            MoveClass::RI { sign, direction } => MoveClass::RI { sign, direction: flip(direction) },
            MoveClass::RII { kind, direction } => MoveClass::RII { kind, direction: flip(direction) },
            MoveClass::RIII { sign } => MoveClass::RIII { sign: sign.flip() },
        }
    }
}

impl fmt::Display for MoveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |d: &Direction| match d {
            Direction::Create => "create",
            Direction::Delete => "delete",
        };
        match self {
            MoveClass::RI { sign, direction } => write!(f, "RI{sign} {}", dir(direction)),
            MoveClass::RII { kind, direction } => {
                let k = match kind {
                    RiiKind::Matched => "matched",
                    RiiKind::Unmatched => "unmatched",
                };
                write!(f, "RII {k} {}", dir(direction))
            }
            MoveClass::RIII { sign } => write!(f, "RIII{sign}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassifiedMove {
    pub mv: Move,
    pub class: MoveClass,
}

impl fmt::Display for ClassifiedMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  ({})", self.mv, self.class)
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::CreateRI { edge, side, sign } => {
                write!(f, "RI{sign} create at ")?;
                match edge {
                    Some(d) => write!(f, "{d}")?,
                    None => f.write_str("-")?,
                }
                write!(f, " {}", side_name(*side))
            }
            Move::DeleteRI { face } => write!(f, "RI delete face {face}"),
            Move::CreateRII { over, under } => write!(f, "RII create {over} {under}"),
            Move::DeleteRII { face } => write!(f, "RII delete face {face}"),
            Move::RIII { face } => write!(f, "RIII face {face}"),
        }
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let dart = |w: &str| w.parse::<DartId>().map_err(|_| format!("bad dart `{w}`"));
        match words.as_slice() {
            [ri, "create", "at", edge, side] if ri.starts_with("RI") && ri.len() == 3 => {
                let sign = match &ri[2..] {
                    "+" => CrossingSign::Positive,
                    "-" => CrossingSign::Negative,
                    other => return Err(format!("bad kink sign `{other}`")),
                };
                let edge = if *edge == "-" { None } else { Some(dart(edge)?) };
                let side = match *side {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => return Err(format!("bad side `{other}`")),
                };
                Ok(Move::CreateRI { edge, side, sign })
            }
            ["RI", "delete", "face", d] => Ok(Move::DeleteRI { face: dart(d)? }),
            ["RII", "create", a, b] => Ok(Move::CreateRII { over: dart(a)?, under: dart(b)? }),
            ["RII", "delete", "face", d] => Ok(Move::DeleteRII { face: dart(d)? }),
            ["RIII", "face", d] => Ok(Move::RIII { face: dart(d)? }),
            _ => Err(format!("unrecognized move `{}`", s.trim())),
        }
    }
}

/// Parses a move script: one move per line, `#` comments and blank lines
/// ignored.
pub fn parse_script(text: &str) -> Result<Vec<Move>, ParseError> {
    let mut moves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        moves.push(line.parse().map_err(|e| ParseError::at(i + 1, e))?);
    }
    Ok(moves)
}

pub fn format_script(moves: &[Move]) -> String {
    let mut out = String::new();
    for m in moves {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_round_trip() {
        let moves = vec![
            Move::CreateRI { edge: None, side: Side::Left, sign: CrossingSign::Positive },
            Move::CreateRI { edge: Some(3), side: Side::Right, sign: CrossingSign::Negative },
            Move::DeleteRI { face: 1 },
            Move::CreateRII { over: 4, under: 9 },
            Move::DeleteRII { face: 12 },
            Move::RIII { face: 7 },
        ];
        let text = format_script(&moves);
        assert_eq!(parse_script(&text).unwrap(), moves);
    }

    #[test]
    fn script_errors_carry_line_numbers() {
        let err = parse_script("# header\nRIII face 2\nRII frobnicate\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        assert!(parse_script("RI* create at 1 left").is_err());
        assert!(parse_script("RI+ create at 1 up").is_err());
    }

    #[test]
    fn inverse_classes() {
        let c = MoveClass::RIII { sign: CrossingSign::Positive };
        assert_eq!(c.inverse(), MoveClass::RIII { sign: CrossingSign::Negative });
        let r = MoveClass::RII { kind: RiiKind::Matched, direction: Direction::Create };
        assert_eq!(r.inverse().inverse(), r);
        assert_eq!(r.to_string(), "RII matched create");
    }
}
