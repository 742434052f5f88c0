//! Quasiline charts: the τ-distance sandwich, equivariance of coordinates and
//! the action of the central direction.

mod common;

use common::path;
use num_traits::Signed;
use raag_hhg::{parse_quasimorphism, QuasilineChart, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

#[test]
fn sandwich_on_ball_for_exponent_chart() {
    let r = path(&["a", "b", "c"]);
    let chart = QuasilineChart::exponent(&r, 1, Some(q(3))).unwrap();
    for g in r.ball_enumerate(4).unwrap() {
        let bounds = chart.tau_distance_bounds(&g).unwrap();
        let exact = chart.tau_distance_exact(&g, 4, 8).unwrap().expect("within cap") as u64;
        assert!(bounds.lower <= exact && exact <= bounds.upper, "{}: {bounds:?} vs {exact}", r.format(&g));
    }
    assert_eq!(chart.tau_distance_exact(&r.element("b^10").unwrap(), 2, 8).unwrap(), Some(5));
}

#[test]
fn sandwich_for_phi_lambda_chart() {
    let r = path(&["a", "b", "c"]);
    let m = parse_quasimorphism(&r, "lam:1:exp:b:brooks:ac").unwrap();
    let chart = QuasilineChart::new(m, 1, None).unwrap();
    for g in r.ball_enumerate(3).unwrap().iter().step_by(4) {
        let bounds = chart.tau_distance_bounds(g).unwrap();
        let exact = chart.tau_distance_exact(g, 3, 4).unwrap().expect("within cap") as u64;
        assert!(bounds.lower <= exact && exact <= bounds.upper);
    }
    // (a c)^20 b^30 has coordinate 50 and integer values, so elements of τ
    // have |m| ≤ C - 1: lower bound ⌈(50 + D) / (C - 1 + D)⌉.
    let far = r.element("(a c)^20 b^30").unwrap();
    let bounds = chart.tau_distance_bounds(&far).unwrap();
    let d = chart.defect_bound();
    let slack = chart.cutoff() - q(1) + d;
    assert_eq!(bounds.lower, ((q(50) + d) / slack).ceil().to_integer() as u64);
    assert!(bounds.upper >= bounds.lower);
}

#[test]
fn coordinates_are_coarsely_equivariant() {
    let r = path(&["a", "b", "c"]);
    let charts = [
        QuasilineChart::exponent(&r, 1, Some(q(3))).unwrap(),
        QuasilineChart::new(parse_quasimorphism(&r, "lam:2:exp:b:brooks:ac").unwrap(), 1, None).unwrap(),
    ];
    let sample = r.ball_enumerate(3).unwrap();
    let shifts = r.ball_enumerate(2).unwrap();
    for chart in &charts {
        let bound = q(2) * chart.defect_bound();
        for (g, g2) in sample.iter().step_by(7).zip(sample.iter().skip(3).step_by(11)) {
            let base = chart.coord(g).unwrap() - chart.coord(g2).unwrap();
            for h in &shifts {
                let moved = chart.coord(&r.multiply(h, g).unwrap()).unwrap()
                    - chart.coord(&r.multiply(h, g2).unwrap()).unwrap();
                assert!((moved - base).abs() <= bound);
            }
        }
    }
}

#[test]
fn central_direction_is_cobounded_and_link_orbits_bounded() {
    let r = path(&["a", "b", "c"]);
    let chart = QuasilineChart::new(parse_quasimorphism(&r, "lam:3:exp:b:brooks:ac").unwrap(), 1, None).unwrap();
    let z = r.element("b").unwrap();
    let values: Vec<Rational> = (-20..=20).map(|n| chart.coord(&r.power(&z, n)).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(values[40], q(20));
    for w in ["a", "c"] {
        let w = r.element(w).unwrap();
        assert!((-20..=20).all(|n| chart.coord(&r.power(&w, n)).unwrap() == q(0)));
    }
}
