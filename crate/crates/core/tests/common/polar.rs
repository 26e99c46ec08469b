//! Γ_n traced directly from its polar equation r = 2 + cos(nθ/(n+1)),
//! θ ∈ [0, 2(n+1)π), basepoint at θ = 0, oriented by increasing θ.
//!
//! Self-intersections solve cos(nθ/(n+1)) = cos(n(θ+2πk)/(n+1)), which
//! gives θ/π = ((n+1)m − nk)/n exactly; orientation at each crossing comes
//! from the cross product of the two analytic tangents.

use reidemeister::map::{Passage, SphericalCurveMap};

fn tangent(n: usize, theta: f64) -> (f64, f64) {
    let nf = n as f64;
    let a = nf * theta / (nf + 1.0);
    let r = 2.0 + a.cos();
    let dr = -(nf / (nf + 1.0)) * a.sin();
    (dr * theta.cos() - r * theta.sin(), dr * theta.sin() + r * theta.cos())
}

pub fn polar_gamma(n: usize) -> SphericalCurveMap {
    let n_i = n as i64;
    let period = 2 * n_i * (n_i + 1); // 2(n+1)π in units of π/n
    // (position numerator, label, partner numerator)
    let mut visits: Vec<(i64, u32, i64)> = Vec::new();
    let mut label = 0;
    for k in 1..=n_i {
        for m in -(4 * n_i)..(4 * n_i + 4) {
            let num = (n_i + 1) * m - n_i * k;
            let other = num + 2 * n_i * k;
            if num >= 0 && other < period {
                label += 1;
                visits.push((num, label, other));
                visits.push((other, label, num));
            }
        }
    }
    visits.sort();
    let passages = visits
        .iter()
        .map(|&(num, label, other)| {
            let t1 = num as f64 * std::f64::consts::PI / n as f64;
            let t2 = other as f64 * std::f64::consts::PI / n as f64;
            let (ax, ay) = tangent(n, t1);
            let (bx, by) = tangent(n, t2);
            Passage { label, leftward: ax * by - ay * bx > 0.0 }
        })
        .collect();
    SphericalCurveMap::from_passages(passages).expect("polar curve is spherical")
}
