mod common;

use common::polar::polar_gamma;
use reidemeister::diagram::KnotDiagram;
use reidemeister::family::{
    braid_word, construction_script, dn_diagram, expected_counts, gamma_curve, script_length, unknotting_script,
    verify_theorem,
};
use reidemeister::invariants::{invariants_of_diagram, Quantity};
use reidemeister::moves::{run_script, same_diagram};

#[test]
fn gamma_matches_polar_trace() {
    for n in 2..=7 {
        let g = gamma_curve(n).unwrap();
        let p = polar_gamma(n);
        assert_eq!(g.crossing_count(), n * n);
        assert_eq!(g.cyclic_key(), p.cyclic_key(), "n={n}");
    }
}

#[test]
fn dn_is_the_braid_closure() {
    for n in 2..=7 {
        let d = dn_diagram(n).unwrap();
        let b = KnotDiagram::from_braid(&braid_word(n).unwrap(), n + 1).unwrap();
        assert!(same_diagram(&d, &b), "n={n}");
        assert_eq!(d.writhe(), n as i64);
    }
}

#[test]
fn construction_rebuilds_dn() {
    for n in 3..=5 {
        let (end, log) = run_script(&KnotDiagram::trivial(), &construction_script(n).unwrap()).unwrap();
        assert!(same_diagram(&end, &dn_diagram(n).unwrap()), "n={n}");
        assert_eq!(log.len(), script_length(n));
    }
}

#[test]
fn scripts_have_the_expected_shape() {
    for n in 3..=7 {
        let s = unknotting_script(n).unwrap();
        assert_eq!(s.len(), script_length(n));
        let report = verify_theorem(n, false).unwrap();
        assert_eq!(report.counts, expected_counts(n));
    }
}

#[test]
fn reduction_agrees_with_tracking() {
    for n in 3..=4 {
        let report = verify_theorem(n, true).unwrap();
        let direct = invariants_of_diagram(&dn_diagram(n).unwrap()).unwrap();
        assert_eq!(report.tracked, direct);
        assert_eq!(direct.get(Quantity::BMinus).doubled(), -2 * script_length(n) as i64);
    }
}
