//! One randomized case per call for each structural property; shared by
//! the property tests and the acceptance run.

use rand::seq::SliceRandom;
use rand::Rng;
use reidemeister::diagram::CrossingSign;
use reidemeister::format::{parse_curve, parse_diagram, write_curve, write_diagram};
use reidemeister::invariants::{invariants_of_diagram, move_delta, reduce_and_compute, Quantity};
use reidemeister::map::realizations;
use reidemeister::moves::{
    apply, apply_move, creation_moves, enumerate_moves, format_script, inverse, parse_script, triangle_sign,
    triangle_sign_from, Move, MoveClass,
};

use super::gen;

pub type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random move on a random diagram with at most six crossings changes
/// the reduced values by exactly its tabulated delta.
pub fn move_delta_case(seed: u64) -> Outcome {
    let mut rng = gen::rng(seed);
    let d = gen::random_diagram(&mut rng, 6);
    let moves = enumerate_moves(&d);
    let m = moves.choose(&mut rng).ok_or("no moves")?;
    let (after, c) = apply(&d, &m.mv).map_err(|e| e.to_string())?;
    let before_v = reduce_and_compute(d.map()).map_err(|e| e.to_string())?;
    let after_v = reduce_and_compute(after.map()).map_err(|e| e.to_string())?;
    let delta = move_delta(c.class);
    ensure(
        (after_v.0 - before_v.0, after_v.1 - before_v.1, after.writhe() - d.writhe())
            == (delta.da2, delta.db2, delta.dw),
        || format!("{m} on {}: {before_v:?} -> {after_v:?}, table {delta:?}", d.canonical_code()),
    )
}

/// `(a2, b2)` of a random curve does not depend on the marked face, the
/// basepoint or the chosen embedding of its Gauss code.
pub fn embedding_case(seed: u64) -> Outcome {
    let mut rng = gen::rng(seed);
    let m = gen::random_word_curve(&mut rng, 6);
    let v = reduce_and_compute(&m).map_err(|e| e.to_string())?;
    let code = m.canonical_code();
    for f in 0..m.faces().len() {
        let r = reduce_and_compute(&m.remark_outer_face(f).unwrap()).map_err(|e| e.to_string())?;
        ensure(r == v, || format!("{code}: outer face {f} gives {r:?}, expected {v:?}"))?;
    }
    let start = rng.gen_range(0..m.passages().len());
    let r = reduce_and_compute(&m.rebased(start)).map_err(|e| e.to_string())?;
    ensure(r == v, || format!("{code}: basepoint {start} gives {r:?}, expected {v:?}"))?;
    for (i, e) in realizations(&code).map_err(|e| e.to_string())?.iter().enumerate() {
        let r = reduce_and_compute(e).map_err(|e| e.to_string())?;
        ensure(r == v, || format!("{code}: embedding {i} gives {r:?}, expected {v:?}"))?;
    }
    Ok(())
}

fn class_sign(c: MoveClass) -> Option<CrossingSign> {
    match c {
        MoveClass::RIII { sign } => Some(sign),
        _ => None,
    }
}

/// Conservation of `a2 - b2 = n`, unit steps, opposite trigon signs across
/// a third move, and basepoint independence of the trigon sign.
pub fn structure_case(seed: u64) -> Outcome {
    let mut rng = gen::rng(seed);
    let d = gen::random_diagram(&mut rng, 6);
    let s = invariants_of_diagram(&d).map_err(|e| e.to_string())?;
    ensure(s.a2 - s.b2 == d.crossing_count() as i64, || format!("{}: {s}", d.canonical_code()))?;
    let map = d.map();
    for m in enumerate_moves(&d) {
        let delta = move_delta(m.class);
        for q in Quantity::ALL {
            ensure(delta.of(q).abs() <= 1, || format!("{} moves {q} by {}", m.class, delta.of(q)))?;
        }
        let (after, _) = apply(&d, &m.mv).map_err(|e| e.to_string())?;
        let sa = invariants_of_diagram(&after).map_err(|e| e.to_string())?;
        ensure(sa.is_consistent(), || format!("{m}: {sa}"))?;
        let (Some(created), Move::RIII { face }) = (class_sign(m.class), m.mv) else { continue };
        let deleted = triangle_sign(map, face).map_err(|e| e.to_string())?;
        ensure(deleted == created.flip(), || format!("{m} on {}: deleted {deleted}, created {created}", d.canonical_code()))?;
        for base in 0..map.passages().len() {
            if let Ok(other) = triangle_sign_from(map, face, base) {
                ensure(other == deleted, || format!("{m}: base edge {base} gives {other}"))?;
            }
        }
    }
    Ok(())
}

/// File formats round-trip, and a creation followed by its inverse
/// restores the canonical code.
pub fn roundtrip_case(seed: u64) -> Outcome {
    let mut rng = gen::rng(seed);
    let d = gen::random_diagram(&mut rng, 6);
    let text = write_diagram(&d);
    let back = parse_diagram(&text).map_err(|e| e.to_string())?;
    ensure(back == d && write_diagram(&back) == text, || format!("diagram file of {}", d.canonical_code()))?;
    let curve = parse_curve(&write_curve(d.map())).map_err(|e| e.to_string())?;
    ensure(curve == d.map().relabeled().0, || format!("curve file of {}", d.canonical_code()))?;
    let code = d.canonical_code();
    let reread = reidemeister::diagram::KnotDiagram::from_gauss_code(&code.to_string().parse().map_err(|e: reidemeister::error::MapError| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(reread.canonical_code() == code, || format!("gauss code {code}"))?;

    let moves: Vec<Move> = enumerate_moves(&d).into_iter().map(|c| c.mv).collect();
    ensure(parse_script(&format_script(&moves)).ok() == Some(moves), || "script text".into())?;

    let creations = creation_moves(&d);
    let c = creations.choose(&mut rng).ok_or("no creation move")?;
    let after = apply_move(&d, &c.mv).map_err(|e| e.to_string())?;
    let undo = inverse(&d, &c.mv).map_err(|e| e.to_string())?;
    let restored = apply_move(&after, &undo).map_err(|e| e.to_string())?;
    ensure(restored.canonical_code() == code, || {
        format!("{} then {undo} on {code} gives {}", c.mv, restored.canonical_code())
    })
}
