use super::surgery;
use super::{ClassifiedMove, Direction, Move, MoveClass, MoveKind, RiiKind};
use crate::diagram::{CrossingSign, KnotDiagram};
use crate::error::MoveError;
use crate::map::{DartId, Side, SphericalCurveMap};

fn sign_of(v: i64) -> CrossingSign {
    if v > 0 {
        CrossingSign::Positive
    } else {
        CrossingSign::Negative
    }
}

fn check_dart(map: &SphericalCurveMap, d: DartId) -> Result<(), MoveError> {
    if d < map.darts().len() {
        Ok(())
    } else {
        Err(MoveError::inapplicable(format!("no dart {d}")))
    }
}

/// Sign of the trigon to the left of `face_dart`, numbering its edges from
/// the basepoint (or from just after the first edge off the trigon when the
/// basepoint lies on it).
pub fn triangle_sign(map: &SphericalCurveMap, face_dart: DartId) -> Result<CrossingSign, MoveError> {
    check_dart(map, face_dart)?;
    let site = surgery::trigon_site(map, &map.face_table(), face_dart)?;
    Ok(sign_of(surgery::trigon_sign(&site, map.passages().len())))
}

/// Same as [`triangle_sign`] with the traversal started just after
/// `base_edge`, which must not bound the trigon.
pub fn triangle_sign_from(
    map: &SphericalCurveMap,
    face_dart: DartId,
    base_edge: usize,
) -> Result<CrossingSign, MoveError> {
    check_dart(map, face_dart)?;
    let site = surgery::trigon_site(map, &map.face_table(), face_dart)?;
    if site.edges.contains(&base_edge) || base_edge >= map.passages().len() {
        return Err(MoveError::inapplicable(format!("edge {base_edge} cannot carry the basepoint")));
    }
    Ok(sign_of(surgery::trigon_sign_from(&site, map.passages().len(), base_edge)))
}

/// Applies a move and reports its classification.
pub fn apply(d: &KnotDiagram, mv: &Move) -> Result<(KnotDiagram, ClassifiedMove), MoveError> {
    let map = d.map();
    let mut over = d.leftward_over().clone();
    let (new_map, class) = match *mv {
        Move::CreateRI { edge, side, sign } => {
            let k = match (edge, map.is_circle()) {
                (None, true) => None,
                (Some(e), false) => {
                    check_dart(map, e)?;
                    Some(map.edge_of(e))
                }
                (None, false) => return Err(MoveError::inapplicable("kink needs an edge dart")),
                (Some(_), true) => return Err(MoveError::inapplicable("the circle has no darts; use `-`")),
            };
            let label = map.max_label() + 1;
            let (m2, _) = surgery::create_kink(map, k, side, label);
            over.insert(label, sign == CrossingSign::Positive);
            (m2, MoveClass::RI { sign, direction: Direction::Create })
        }
        Move::DeleteRI { face } => {
            check_dart(map, face)?;
            let site = surgery::monogon_site(map, &map.face_table(), face)?;
            let sign = d.crossing_sign(site.label).expect("crossing present");
            over.remove(&site.label);
            (surgery::delete_monogon(map, &site), MoveClass::RI { sign, direction: Direction::Delete })
        }
        Move::CreateRII { over: a, under: b } => {
            check_dart(map, a)?;
            check_dart(map, b)?;
            let labels = (map.max_label() + 1, map.max_label() + 2);
            let (m2, parallel) = surgery::create_bigon(map, &map.face_table(), a, b, labels)?;
            // the pushed strand goes over; its flags are fixed by the
            // direction of the other strand
            let west = SphericalCurveMap::is_outgoing(b);
            over.insert(labels.0, west);
            over.insert(labels.1, !west);
            let kind = if parallel { RiiKind::Matched } else { RiiKind::Unmatched };
            (m2, MoveClass::RII { kind, direction: Direction::Create })
        }
        Move::DeleteRII { face } => {
            check_dart(map, face)?;
            let site = surgery::bigon_site(map, &map.face_table(), face)?;
            let len = map.passages().len();
            let e = site.edges[0];
            if d.is_over(e) != d.is_over((e + 1) % len) {
                return Err(MoveError::inapplicable(format!(
                    "bigon at dart {face} is not bounded by an over-over strand"
                )));
            }
            for l in site.labels {
                over.remove(&l);
            }
            let kind = if site.is_parallel() { RiiKind::Matched } else { RiiKind::Unmatched };
            (surgery::delete_bigon(map, &site), MoveClass::RII { kind, direction: Direction::Delete })
        }
        Move::RIII { face } => {
            check_dart(map, face)?;
            let site = surgery::trigon_site(map, &map.face_table(), face)?;
            let len = map.passages().len();
            let pattern: Vec<(bool, bool)> = site
                .edges
                .iter()
                .map(|&e| (d.is_over(e), d.is_over((e + 1) % len)))
                .collect();
            let top = pattern.iter().filter(|&&p| p == (true, true)).count();
            let bottom = pattern.iter().filter(|&&p| p == (false, false)).count();
            if top != 1 || bottom != 1 {
                return Err(MoveError::inapplicable(format!(
                    "trigon at dart {face} has no top, middle and bottom strand"
                )));
            }
            let m2 = surgery::flip_trigon(map, &site);
            let created = surgery::trigon_on_edges(&m2, &m2.face_table(), site.edges)
                .expect("a flipped trigon leaves a trigon on the same edges");
            let sign = sign_of(surgery::trigon_sign(&created, len));
            (m2, MoveClass::RIII { sign })
        }
    };
    Ok((KnotDiagram::from_parts(new_map, over), ClassifiedMove { mv: *mv, class }))
}

pub fn apply_move(d: &KnotDiagram, mv: &Move) -> Result<KnotDiagram, MoveError> {
    apply(d, mv).map(|(d, _)| d)
}

pub fn classify(d: &KnotDiagram, mv: &Move) -> Result<MoveClass, MoveError> {
    apply(d, mv).map(|(_, c)| c.class)
}

/// Runs a script, stopping at the first move that does not apply.
pub fn run_script(d: &KnotDiagram, moves: &[Move]) -> Result<(KnotDiagram, Vec<ClassifiedMove>), MoveError> {
    let mut cur = d.clone();
    let mut log = Vec::with_capacity(moves.len());
    for (index, mv) in moves.iter().enumerate() {
        let (next, c) = apply(&cur, mv).map_err(|e| MoveError::Script { index, source: Box::new(e) })?;
        log.push(c);
        cur = next;
    }
    Ok((cur, log))
}

/// Every applicable deletion and third move, one per face.
pub fn local_moves(d: &KnotDiagram) -> Vec<ClassifiedMove> {
    let map = d.map();
    let mut out = Vec::new();
    for f in map.face_table().faces {
        let Some(&anchor) = f.darts.iter().min() else { continue };
        let mv = match f.darts.len() {
            1 => Move::DeleteRI { face: anchor },
            2 => Move::DeleteRII { face: anchor },
            3 => Move::RIII { face: anchor },
            _ => continue,
        };
        if let Ok((_, c)) = apply(d, &mv) {
            out.push(c);
        }
    }
    out
}

/// Every kink and finger move the diagram admits.
pub fn creation_moves(d: &KnotDiagram) -> Vec<ClassifiedMove> {
    let map = d.map();
    let mut moves = Vec::new();
    let edges: Vec<Option<DartId>> = if map.is_circle() {
        vec![None]
    } else {
        (0..map.passages().len()).map(|k| Some(SphericalCurveMap::edge_dart(k))).collect()
    };
    for edge in edges {
        for side in [Side::Left, Side::Right] {
            for sign in [CrossingSign::Positive, CrossingSign::Negative] {
                moves.push(Move::CreateRI { edge, side, sign });
            }
        }
    }
    for f in map.face_table().faces {
        for &a in &f.darts {
            for &b in &f.darts {
                if map.edge_of(a) != map.edge_of(b) {
                    moves.push(Move::CreateRII { over: a, under: b });
                }
            }
        }
    }
    moves.into_iter().filter_map(|m| apply(d, &m).ok().map(|(_, c)| c)).collect()
}

pub fn enumerate_moves(d: &KnotDiagram) -> Vec<ClassifiedMove> {
    let mut all = local_moves(d);
    all.extend(creation_moves(d));
    all
}

pub(crate) fn exact_key(d: &KnotDiagram) -> Vec<(u32, bool, bool)> {
    let (m, _) = d.map().relabeled();
    m.passages()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.label, p.leftward, d.is_over(i)))
        .collect()
}

/// Equal as based diagrams, up to the names of the crossings.
pub fn same_diagram(a: &KnotDiagram, b: &KnotDiagram) -> bool {
    exact_key(a) == exact_key(b)
}

/// A move undoing `mv` on `d`, addressed in the diagram `mv` produces.
///
/// When the move touched the basepoint edge an exact undo may not exist;
/// the result then restores `d` up to the choice of basepoint.
pub fn inverse(d: &KnotDiagram, mv: &Move) -> Result<Move, MoveError> {
    let (after, c) = apply(d, mv)?;
    let want = c.class.inverse();
    let candidates: Vec<ClassifiedMove> = match c.class.kind() {
        MoveKind::RIII => local_moves(&after),
        _ if c.class.direction() == Some(Direction::Create) => local_moves(&after),
        _ => creation_moves(&after),
    };
    let candidates: Vec<ClassifiedMove> = candidates.into_iter().filter(|x| x.class == want).collect();
    let target = exact_key(d);
    let mut fallback = None;
    let key = d.cyclic_key();
    for cand in &candidates {
        let back = apply_move(&after, &cand.mv)?;
        if exact_key(&back) == target {
            return Ok(cand.mv);
        }
        if fallback.is_none() && back.cyclic_key() == key {
            fallback = Some(cand.mv);
        }
    }
    fallback.ok_or_else(|| MoveError::inapplicable(format!("no inverse found for `{mv}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::build_from_gauss_code;

    fn trefoil() -> KnotDiagram {
        KnotDiagram::from_gauss_code(&"O1 U2 O3 U1 O2 U3".parse().unwrap()).unwrap()
    }

    #[test]
    fn kink_on_circle_and_back() {
        let t = KnotDiagram::trivial();
        for side in [Side::Left, Side::Right] {
            for sign in [CrossingSign::Positive, CrossingSign::Negative] {
                let mv = Move::CreateRI { edge: None, side, sign };
                let (k, c) = apply(&t, &mv).unwrap();
                assert_eq!(k.writhe(), sign.value());
                assert_eq!(c.class, MoveClass::RI { sign, direction: Direction::Create });
                let inv = inverse(&t, &mv).unwrap();
                assert!(matches!(inv, Move::DeleteRI { .. }));
                assert!(apply_move(&k, &inv).unwrap().is_trivial());
            }
        }
        assert!(apply(&t, &Move::CreateRI { edge: Some(0), side: Side::Left, sign: CrossingSign::Positive }).is_err());
    }

    #[test]
    fn trefoil_is_rigid() {
        let d = trefoil();
        assert!(local_moves(&d).is_empty());
        assert!(!creation_moves(&d).is_empty());
    }

    #[test]
    fn finger_move_round_trip() {
        let k = apply_move(
            &KnotDiagram::trivial(),
            &Move::CreateRI { edge: None, side: Side::Left, sign: CrossingSign::Positive },
        )
        .unwrap();
        let mut seen = 0;
        for c in creation_moves(&k).into_iter().filter(|c| c.class.kind() == MoveKind::RII) {
            let (after, _) = apply(&k, &c.mv).unwrap();
            assert_eq!(after.crossing_count(), 3);
            let undo = inverse(&k, &c.mv).unwrap();
            let back = apply_move(&after, &undo).unwrap();
            assert!(same_diagram(&back, &k) || back.cyclic_key() == k.cyclic_key());
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn script_errors_name_the_move() {
        let t = KnotDiagram::trivial();
        let script = [
            Move::CreateRI { edge: None, side: Side::Left, sign: CrossingSign::Positive },
            Move::RIII { face: 0 },
        ];
        let err = run_script(&t, &script).unwrap_err();
        assert_eq!(err.script_index(), Some(1));
    }

    #[test]
    fn triangle_sign_ignores_basepoint() {
        let m = build_from_gauss_code(&"1 2 3 1 2 3".parse().unwrap()).unwrap();
        for f in m.faces().iter().filter(|f| f.degree() == 3) {
            let site = surgery::trigon_site(&m, &m.face_table(), f.darts[0]).unwrap();
            let signs: Vec<_> = (0..6)
                .filter(|e| !site.edges.contains(e))
                .map(|e| triangle_sign_from(&m, f.darts[0], e).unwrap())
                .collect();
            assert!(signs.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
