use super::{DartId, FaceId, Side, SphericalCurveMap};
use crate::error::MapError;

/// A circle of the oriented smoothing, as the cyclic list of darts it runs
/// along (incoming and outgoing half-edges alternate).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothedCircle {
    pub darts: Vec<DartId>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl SphericalCurveMap {
    /// Smooths every crossing along the orientation: the incoming half of
    /// each passage is joined to the outgoing half of the other passage.
    pub fn smooth_all(&self) -> Vec<SmoothedCircle> {
        if self.is_circle() {
            return vec![SmoothedCircle { darts: Vec::new() }];
        }
        let mut seen = vec![false; self.darts().len()];
        let mut circles = Vec::new();
        for start in (1..self.darts().len()).step_by(2) {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut out = start;
            while !seen[out] {
                seen[out] = true;
                darts.push(out);
                let inc = self.dart(out).twin;
                seen[inc] = true;
                darts.push(inc);
                let other = self.partner(Self::passage_of_dart(inc));
                out = 2 * other + 1;
            }
            circles.push(SmoothedCircle { darts });
        }
        circles
    }

    /// Whitney index of the planar curve obtained by putting the point at
    /// infinity inside `outer`.
    ///
    /// A smoothed circle counts `+1` when the face `outer` lies on its
    /// right-hand side (the disk it bounds in the plane is then on its
    /// left) and `-1` otherwise.
    pub fn whitney_index(&self, outer: FaceId) -> Result<i64, MapError> {
        let table = self.face_table();
        if outer >= table.faces.len() {
            return Err(MapError::NoSuchFace(outer));
        }
        if self.is_circle() {
            // face 0 is on the left of the circle
            return Ok(if outer == 0 { -1 } else { 1 });
        }
        let circles = self.smooth_all();
        let mut on_circle = vec![usize::MAX; self.darts().len()];
        for (ci, c) in circles.iter().enumerate() {
            for &d in &c.darts {
                on_circle[d] = ci;
            }
        }
        let mut index = 0;
        for (ci, c) in circles.iter().enumerate() {
            let mut uf = UnionFind::new(table.faces.len());
            for k in 0..self.passages().len() {
                let out = Self::edge_dart(k);
                if on_circle[out] != ci {
                    uf.union(table.face_of[out], table.face_of[self.dart(out).twin]);
                }
            }
            // Where the circle uses both smoothing arcs of a crossing, the
            // two middle corners form one band between them.
            for i in 0..self.passages().len() {
                let p = self.passages()[i];
                let j = self.partner(i);
                if p.leftward && on_circle[2 * i] == ci && on_circle[2 * j] == ci {
                    uf.union(table.face_of[2 * i + 1], table.face_of[2 * i]);
                }
            }
            let left = table.face_of[c.darts[0]];
            let right = table.face_of[self.dart(c.darts[0]).twin];
            debug_assert_ne!(uf.find(left), uf.find(right));
            index += if uf.find(left) == uf.find(outer) { -1 } else { 1 };
        }
        Ok(index)
    }

    /// Face on the given side of the crossing-free circle.
    pub fn circle_face(side: Side) -> FaceId {
        match side {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::build_from_gauss_code;

    fn code(s: &str) -> SphericalCurveMap {
        build_from_gauss_code(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn smoothing_counts() {
        assert_eq!(SphericalCurveMap::circle().smooth_all().len(), 1);
        assert_eq!(code("1 1").smooth_all().len(), 2);
        let m = code("1 2 3 1 2 3");
        let circles = m.smooth_all();
        let total: usize = circles.iter().map(|c| c.darts.len()).sum();
        assert_eq!(total, m.darts().len());
    }

    #[test]
    fn circle_index_flips_with_outer_side() {
        let c = SphericalCurveMap::circle();
        assert_eq!(c.whitney_index(SphericalCurveMap::circle_face(Side::Right)).unwrap(), 1);
        assert_eq!(c.whitney_index(SphericalCurveMap::circle_face(Side::Left)).unwrap(), -1);
    }

    #[test]
    fn figure_eight_index() {
        let m = code("1 1");
        let faces = m.faces();
        let big = faces.iter().find(|f| f.degree() == 2).unwrap().id;
        assert_eq!(m.whitney_index(big).unwrap(), 0);
        for f in faces.iter().filter(|f| f.degree() == 1) {
            assert_eq!(m.whitney_index(f.id).unwrap().abs(), 2);
        }
    }

    #[test]
    fn index_flips_under_reversal() {
        for s in ["1 1", "1 2 3 1 2 3", "1 1 2 2 3 3", "1 2 2 1"] {
            let m = code(s);
            let rev = m.reversed();
            for f in m.faces() {
                let marked = m.remark_outer_face(f.id).unwrap();
                let rev_marked = marked.reversed();
                let w = marked.whitney_index(f.id).unwrap();
                let wr = rev_marked.whitney_index(rev_marked.outer_face().unwrap()).unwrap();
                assert_eq!(w, -wr, "{s} face {}", f.id);
                assert_eq!(rev.faces().len(), m.faces().len());
            }
        }
    }
}
