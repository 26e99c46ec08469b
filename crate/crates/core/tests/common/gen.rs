//! Random curves and diagrams for property tests.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use reidemeister::diagram::KnotDiagram;
use reidemeister::map::{realizations, GaussCode, GaussToken, SphericalCurveMap};
use reidemeister::moves::{apply_move, creation_moves, local_moves};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random realizable double-occurrence word on at most `max_n` labels,
/// embedded in a randomly chosen way.
pub fn random_word_curve(rng: &mut StdRng, max_n: usize) -> SphericalCurveMap {
    loop {
        let n = rng.gen_range(1..=max_n);
        let mut labels: Vec<u32> = (1..=n as u32).flat_map(|l| [l, l]).collect();
        labels.shuffle(rng);
        let code = GaussCode::new(labels.into_iter().map(|label| GaussToken { label, mark: None }).collect());
        let all = realizations(&code).unwrap();
        if let Some(m) = all.choose(rng) {
            return m.clone();
        }
    }
}

pub fn random_over(rng: &mut StdRng, map: SphericalCurveMap) -> KnotDiagram {
    let mut over = BTreeMap::new();
    for l in map.labels() {
        let (a, b) = map.passages_of(l).unwrap();
        over.insert(l, if rng.gen_bool(0.5) { a } else { b });
    }
    KnotDiagram::with_over_passages(map, &over).unwrap()
}

/// A diagram grown from the circle by random creations and local moves,
/// kept to at most `max_n` crossings.
pub fn random_walk_diagram(rng: &mut StdRng, max_n: usize, steps: usize) -> KnotDiagram {
    let mut d = KnotDiagram::trivial();
    for _ in 0..steps {
        let mut moves = local_moves(&d);
        if d.crossing_count() + 2 <= max_n {
            moves.extend(creation_moves(&d));
        } else if d.crossing_count() < max_n {
            moves.extend(
                creation_moves(&d)
                    .into_iter()
                    .filter(|m| m.class.kind() == reidemeister::moves::MoveKind::RI),
            );
        }
        let Some(m) = moves.choose(rng) else { break };
        d = apply_move(&d, &m.mv).unwrap();
    }
    d
}

pub fn random_diagram(rng: &mut StdRng, max_n: usize) -> KnotDiagram {
    if rng.gen_bool(0.5) {
        let m = random_word_curve(rng, max_n);
        random_over(rng, m)
    } else {
        let steps = rng.gen_range(1..12);
        random_walk_diagram(rng, max_n, steps)
    }
}
