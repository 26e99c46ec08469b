//! Absolute values of the spherical combinations by reduction to the circle.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::InvariantError;
use crate::map::SphericalCurveMap;
use crate::moves::surgery::{curve_steps, CurveStep};

/// States the reduction may visit before giving up.
pub const DEFAULT_BUDGET: usize = 1_000_000;

struct Search {
    used: usize,
    budget: usize,
}

impl Search {
    fn tick(&mut self) -> Result<(), InvariantError> {
        self.used += 1;
        if self.used > self.budget {
            Err(InvariantError::ReductionFailed { budget: self.budget })
        } else {
            Ok(())
        }
    }
}

fn add(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 + b.0, a.1 + b.1)
}

/// `(a2, b2)` of a curve, with the default budget.
pub fn reduce_and_compute(map: &SphericalCurveMap) -> Result<(i64, i64), InvariantError> {
    reduce_with_budget(map, DEFAULT_BUDGET)
}

/// Reduces the curve to the circle by monogon and bigon deletions and
/// triangle moves, and reads off `(a2, b2)` from the changes recorded on
/// the way (the circle has `(0, 0)`).
///
/// Deletions are taken greedily. When none is available, triangle moves
/// are searched with iterative deepening (up to depth `2n`) for a curve
/// that has one. If that gets stuck, a breadth-first search over all
/// reducing and triangle moves from the original curve takes over.
pub fn reduce_with_budget(map: &SphericalCurveMap, budget: usize) -> Result<(i64, i64), InvariantError> {
    let mut search = Search { used: 0, budget };
    let mut cur = map.clone();
    let mut acc = (0, 0);
    loop {
        search.tick()?;
        if cur.is_circle() {
            return Ok((-acc.0, -acc.1));
        }
        let (deletions, _) = curve_steps(&cur);
        if let Some((next, d)) = deletions.into_iter().next() {
            cur = next;
            acc = add(acc, d);
            continue;
        }
        match expose(&cur, &mut search)? {
            Some((next, d)) => {
                cur = next;
                acc = add(acc, d);
            }
            None => break,
        }
    }
    breadth_first(map, &mut search)
}

/// Iterative deepening over triangle moves until a deletion is possible.
fn expose(
    start: &SphericalCurveMap,
    search: &mut Search,
) -> Result<Option<CurveStep>, InvariantError> {
    let max_depth = 2 * start.crossing_count();
    for limit in 1..=max_depth {
        let mut seen = HashMap::new();
        if let Some(found) = deepen(start, limit, (0, 0), &mut seen, search)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn deepen(
    cur: &SphericalCurveMap,
    remaining: usize,
    acc: (i64, i64),
    seen: &mut HashMap<Vec<u32>, usize>,
    search: &mut Search,
) -> Result<Option<CurveStep>, InvariantError> {
    search.tick()?;
    let (deletions, flips) = curve_steps(cur);
    if !deletions.is_empty() {
        return Ok(Some((cur.clone(), acc)));
    }
    if remaining == 0 {
        return Ok(None);
    }
    for (next, d) in flips {
        let key = next.cyclic_key();
        if seen.get(&key).is_some_and(|&r| r >= remaining - 1) {
            continue;
        }
        seen.insert(key, remaining - 1);
        if let Some(found) = deepen(&next, remaining - 1, add(acc, d), seen, search)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn breadth_first(start: &SphericalCurveMap, search: &mut Search) -> Result<(i64, i64), InvariantError> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.cyclic_key());
    queue.push_back((start.clone(), (0, 0)));
    while let Some((cur, acc)) = queue.pop_front() {
        search.tick()?;
        if cur.is_circle() {
            return Ok((-acc.0, -acc.1));
        }
        let (deletions, flips) = curve_steps(&cur);
        for (next, d) in deletions.into_iter().chain(flips) {
            if seen.insert(next.cyclic_key()) {
                queue.push_back((next, add(acc, d)));
            }
        }
    }
    Err(InvariantError::ReductionFailed { budget: search.budget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::build_from_gauss_code;

    fn curve(s: &str) -> SphericalCurveMap {
        build_from_gauss_code(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_curves() {
        assert_eq!(reduce_and_compute(&SphericalCurveMap::circle()).unwrap(), (0, 0));
        assert_eq!(reduce_and_compute(&curve("1 1")).unwrap(), (0, -1));
        assert_eq!(reduce_and_compute(&curve("1 1 2 2")).unwrap(), (0, -2));
    }

    #[test]
    fn difference_is_crossing_count() {
        for s in ["1 2 3 1 2 3", "1 2 2 1", "1 2 3 3 2 1", "1 2 3 4 1 4 3 2"] {
            let Ok(m) = build_from_gauss_code(&s.parse().unwrap()) else { continue };
            let (a2, b2) = reduce_and_compute(&m).unwrap();
            assert_eq!(a2 - b2, m.crossing_count() as i64, "{s}");
        }
    }

    #[test]
    fn tiny_budget_fails_loudly() {
        let m = curve("1 2 3 1 2 3");
        assert_eq!(
            reduce_with_budget(&m, 2),
            Err(InvariantError::ReductionFailed { budget: 2 })
        );
    }
}
