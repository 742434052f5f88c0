//! Homogeneity, conjugation invariance, averaging and straightening checks
//! for the constructed quasimorphisms.

mod common;

use common::{path, word_strategy};
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raag_hhg::{
    defect_lower_bound, straighten, verify_straightening, ExtensionData, GroupWord, Letter, ParabolicSubset,
    Quasimorphism, Raag, Rational, RepAction, StraighteningInput, StraighteningRow,
};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn ac() -> ParabolicSubset {
    ParabolicSubset::new([0, 2])
}

/// The quasimorphisms used throughout, on the path a–b–c.
fn family(r: &Raag) -> Vec<(String, Quasimorphism)> {
    let phi = Quasimorphism::exponent_hom(r, 1);
    let psi = Quasimorphism::brooks_homogenized(r, &r.element("a c").unwrap(), ac()).unwrap();
    let mut out = vec![
        ("exp".to_string(), phi.clone()),
        ("brooks".to_string(), psi.clone()),
        ("zero".to_string(), Quasimorphism::zero(r)),
    ];
    for lambda in [q(-2), Rational::new(1, 3), q(4)] {
        let m = Quasimorphism::phi_lambda(&phi, &psi, lambda).unwrap();
        out.push((format!("phi^{lambda}"), m.clone()));
        let ext = ExtensionData::new(r, 1, vec![swap_rep(r)]).unwrap();
        out.push((format!("avg phi^{lambda}"), Quasimorphism::average(&m, ext).unwrap()));
    }
    out
}

/// The order-two automorphism a ↔ c, b ↦ b⁻¹.
fn swap_rep(r: &Raag) -> RepAction {
    RepAction {
        label: "t".into(),
        inner: r.identity(),
        images: vec![Letter::pos(2), Letter::neg(1), Letter::pos(0)],
    }
}

#[test]
fn exact_homogeneity_on_ball() {
    let r = path(&["a", "b", "c"]);
    let ball = r.ball_enumerate(3).unwrap();
    for (name, m) in family(&r) {
        for g in ball.iter().filter(|g| m.in_domain(g)) {
            let base = m.eval(g).unwrap();
            for n in -5..=5 {
                assert_eq!(m.eval(&r.power(g, n)).unwrap(), base * q(n), "{name} at {}", r.format(g));
            }
        }
    }
}

#[test]
fn conjugation_invariance() {
    let r = path(&["a", "b", "c"]);
    let ball = r.ball_enumerate(3).unwrap();
    let conj = r.ball_enumerate(2).unwrap();
    for (name, m) in family(&r) {
        for g in ball.iter().step_by(3).filter(|g| m.in_domain(g)) {
            for x in &conj {
                let moved = r.conjugate(x, g);
                if m.in_domain(&moved) && m.in_domain(x) {
                    assert_eq!(m.eval(&moved).unwrap(), m.eval(g).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn brooks_matches_power_difference_oracle() {
    let r = path(&["a", "b", "c"]);
    let pattern = r.element("a c").unwrap();
    let hom = Quasimorphism::brooks_homogenized(&r, &pattern, ac()).unwrap();
    let raw = Quasimorphism::brooks_raw(&r, &pattern, ac()).unwrap();
    for g in r.ball_enumerate(5).unwrap().iter().filter(|g| hom.in_domain(g)) {
        let oracle = raw.eval(&r.power(g, 3)).unwrap() - raw.eval(&r.power(g, 2)).unwrap();
        assert_eq!(hom.eval(g).unwrap(), oracle, "{}", r.format(g));
    }
}

fn random_free_word(r: &Raag, rng: &mut ChaCha8Rng, gens: &[u32], max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(gens[rng.gen_range(0..gens.len())], rng.gen_bool(0.5)))
        .collect();
    r.word(&letters)
}

#[test]
fn brooks_defect_bound_dominates_sampled_defect() {
    let r = path(&["a", "b", "c"]);
    let pattern = r.element("a c").unwrap();
    let m = Quasimorphism::brooks_homogenized(&r, &pattern, ac()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs: Vec<(GroupWord, GroupWord)> = (0..10_000)
        .map(|_| {
            (
                random_free_word(&r, &mut rng, &[0, 2], 14),
                random_free_word(&r, &mut rng, &[0, 2], 14),
            )
        })
        .collect();
    let observed = defect_lower_bound(&m, &pairs).unwrap();
    assert!(observed >= q(1));
    assert!(observed <= m.defect_bound(), "observed {observed}");
}

#[test]
fn averaging_postconditions() {
    let r = path(&["a", "b", "c"]);
    let phi = Quasimorphism::exponent_hom(&r, 1);
    let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac()).unwrap();
    let z = r.element("b").unwrap();
    for lambda in [q(0), q(1), q(-3)] {
        let m = Quasimorphism::phi_lambda(&phi, &psi, lambda).unwrap();
        let ext = ExtensionData::new(&r, 1, vec![swap_rep(&r)]).unwrap();
        let mg = Quasimorphism::average(&m, ext.clone()).unwrap();
        assert_eq!(mg.eval(&z).unwrap(), m.eval(&z).unwrap());
        // Direct formula: ½(m(z) + ε(t)·m(t z t⁻¹)) = ½(1 + (−1)(−1)).
        assert_eq!(
            (m.eval(&z).unwrap() - m.eval(&ext.reps()[1].act(&r, &z)).unwrap()) / q(2),
            q(1)
        );
        for h in r.ball_enumerate(3).unwrap() {
            for rep in ext.reps() {
                let moved = rep.act(&r, &h);
                assert_eq!(mg.eval(&moved).unwrap().abs(), mg.eval(&h).unwrap().abs());
            }
        }
    }
    let zero = Quasimorphism::average(&Quasimorphism::zero(&r), ExtensionData::new(&r, 1, vec![swap_rep(&r)]).unwrap())
        .unwrap();
    assert!(r.ball_enumerate(2).unwrap().iter().all(|g| zero.eval(g).unwrap() == q(0)));
}

#[test]
fn averaging_reports_conjugates_leaving_the_domain() {
    let r = path(&["a", "b", "c", "d"]);
    let m = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac()).unwrap();
    // d fixes c but conjugates a out of ⟨a, c⟩.
    let ext = ExtensionData::new(&r, 2, vec![RepAction::inner(&r, r.element("d").unwrap())]).unwrap();
    let mg = Quasimorphism::average(&m, ext).unwrap();
    assert!(matches!(mg.eval(&r.element("c a").unwrap()), Err(raag_hhg::Error::Domain { .. })));
}

proptest! {
    #[test]
    fn phi_lambda_is_affine_in_lambda(w in word_strategy(3, 14), l1 in -20i64..20, l2 in -20i64..20) {
        let r = path(&["a", "b", "c"]);
        let g = r.word(&w);
        let phi = Quasimorphism::exponent_hom(&r, 1);
        let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac()).unwrap();
        let at = |l: i64| Quasimorphism::phi_lambda(&phi, &psi, q(l)).unwrap().eval(&g).unwrap();
        prop_assert_eq!(at(l1 + l2) + at(0), at(l1) + at(l2));
    }

    #[test]
    fn quasimorphism_defect_holds(u in word_strategy(3, 10), v in word_strategy(3, 10)) {
        let r = path(&["a", "b", "c"]);
        let (g, h) = (r.word(&u), r.word(&v));
        for (name, m) in family(&r) {
            if m.in_domain(&g) && m.in_domain(&h) {
                let d = (m.eval(&r.multiply(&g, &h).unwrap()).unwrap() - m.eval(&g).unwrap() - m.eval(&h).unwrap()).abs();
                prop_assert!(d <= m.defect_bound(), "{} defect {}", name, d);
            }
        }
    }

    #[test]
    fn straightening_output_verifies(
        n in 1i64..6,
        rows in prop::collection::vec((prop::bool::ANY, prop::bool::ANY, -4i64..5), 0..4),
    ) {
        let rows: Vec<StraighteningRow> = rows
            .into_iter()
            .map(|(g, z, m)| StraighteningRow { sign_g: if g { 1 } else { -1 }, sign_z: if z { 1 } else { -1 }, twist: m })
            .collect();
        let input = StraighteningInput { n, rows };
        match straighten(&input) {
            Ok((p, qz)) => prop_assert!(verify_straightening(&input, p, qz)),
            Err(_) => {
                // Brute force over small exponents confirms there is no solution.
                let found = (1..=4).any(|a| (-40..=40).any(|qz| verify_straightening(&input, a * 2 * n, qz)));
                prop_assert!(!found);
            }
        }
    }
}

#[test]
fn straightening_reference_cases() {
    let row = |g, z, m| StraighteningRow { sign_g: g, sign_z: z, twist: m };
    let n = 3;
    let cases = [
        (vec![], Some((6, 0))),
        (vec![row(-1, 1, 5)], Some((12, -5))),
        (vec![row(1, -1, 5)], Some((12, 5))),
        (vec![row(-1, -1, 0)], Some((6, 0))),
        (vec![row(1, 1, 1)], None),
    ];
    for (rows, expected) in cases {
        let input = StraighteningInput { n, rows };
        assert_eq!(straighten(&input).ok(), expected);
    }
}
