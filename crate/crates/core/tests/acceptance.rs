//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with the
//! measured values. Runs without the libtest harness so the lines always
//! appear in the test output; exits nonzero when any criterion fails.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{all_words, oracle_nf, path};
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use raag_hhg::{
    delta_hyperbolicity_estimate, divergence_scan, four_point_check, parse_quasimorphism, BlowupBall, ChartAtlas,
    DefiningGraph, DeltaParams, DivergenceParams, ExtensionData, GroupWord, Letter, Quasimorphism,
    QuasilineChart, Raag, Rational, Realiser, RepAction, ShortStructure,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn path3() -> Raag {
    path(&["a", "b", "c"])
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, seconds: f64) -> Result<f64, String> {
    let t = started.elapsed().as_secs_f64();
    ensure(t < seconds, || format!("took {t:.2}s, limit {seconds}s"))?;
    Ok(t)
}

/// Random word of length at most `max_len` over the generators of `r`.
fn random_letters(r: &Raag, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..r.rank() as u32), rng.gen_bool(0.5)))
        .collect()
}

fn word_problem() -> Outcome {
    let started = Instant::now();
    let r = path3();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = Vec::new();
    for _ in 0..5_000 {
        pairs.push((random_letters(&r, &mut rng, 6), random_letters(&r, &mut rng, 6)));
    }
    // Equal pairs: insert a cancelling pair into a shorter word.
    for _ in 0..5_000 {
        let u = random_letters(&r, &mut rng, 4);
        let mut v = u.clone();
        let l = Letter::new(rng.gen_range(0..3), rng.gen_bool(0.5));
        let at = rng.gen_range(0..=v.len());
        v.splice(at..at, [l, l.inv()]);
        pairs.push((u, v));
    }
    let mut equal = 0;
    for (u, v) in &pairs {
        let oracle = oracle_nf(r.graph(), u) == oracle_nf(r.graph(), v);
        let lib = r.equals(&r.word(u), &r.word(v)).map_err(|e| e.to_string())?;
        ensure(lib == oracle, || format!("disagreement on {u:?} vs {v:?}"))?;
        equal += usize::from(oracle);
    }
    let t = within(started, 60.0)?;
    Ok(format!("{} pairs agree ({equal} equal), {t:.2}s", pairs.len()))
}

fn ball_count() -> Outcome {
    let r = path3();
    let oracle: HashSet<Vec<Letter>> = all_words(3, 2).iter().map(|w| oracle_nf(r.graph(), w)).collect();
    let lib = r.ball_enumerate(2).map_err(|e| e.to_string())?.len();
    ensure(oracle.len() == 29 && lib == 29, || format!("oracle {} library {lib}", oracle.len()))?;
    Ok("|B_2| = 29".into())
}

/// The order-two automorphism a ↔ c, b ↦ b⁻¹ of the path group.
fn swap_rep() -> RepAction {
    RepAction {
        label: "t".into(),
        inner: path3().identity(),
        images: vec![Letter::pos(2), Letter::neg(1), Letter::pos(0)],
    }
}

fn constructed(r: &Raag) -> Result<Vec<(String, Quasimorphism)>, String> {
    let specs = ["exp:a", "exp:b", "exp:c", "brooks:ac", "lam:1:exp:b:brooks:ac", "lam:3:exp:b:brooks:ac", "zero"];
    let mut out: Vec<(String, Quasimorphism)> = specs
        .iter()
        .map(|s| parse_quasimorphism(r, s).map(|m| (s.to_string(), m)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let base = parse_quasimorphism(r, "lam:1:exp:b:brooks:ac").map_err(|e| e.to_string())?;
    let ext = ExtensionData::new(r, 1, vec![swap_rep()]).map_err(|e| e.to_string())?;
    out.push(("avg".into(), Quasimorphism::average(&base, ext).map_err(|e| e.to_string())?));
    Ok(out)
}

fn quasimorphism_exactness() -> Outcome {
    let r = path3();
    let ball = r.ball_enumerate(3).map_err(|e| e.to_string())?;
    let family = constructed(&r)?;
    let mut checks = 0usize;
    for (name, m) in &family {
        for g in ball.iter().filter(|g| m.in_domain(g)) {
            let base = m.eval(g).map_err(|e| e.to_string())?;
            for n in -5..=5 {
                let v = m.eval(&r.power(g, n)).map_err(|e| e.to_string())?;
                ensure(v == base * q(n), || format!("{name}: homogeneity fails at {}^{n}", r.format(g)))?;
                checks += 1;
            }
            for x in &ball {
                let moved = r.conjugate(x, g);
                if m.in_domain(&moved) {
                    let v = m.eval(&moved).map_err(|e| e.to_string())?;
                    ensure(v == base, || format!("{name}: conjugation by {} moves {}", r.format(x), r.format(g)))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{} quasimorphisms, {checks} exact identities on B_3", family.len()))
}

fn averaging_contract() -> Outcome {
    let r = path3();
    let m = parse_quasimorphism(&r, "lam:1:exp:b:brooks:ac").map_err(|e| e.to_string())?;
    let ext = ExtensionData::new(&r, 1, vec![swap_rep()]).map_err(|e| e.to_string())?;
    let mg = Quasimorphism::average(&m, ext.clone()).map_err(|e| e.to_string())?;
    let z = r.element("b").map_err(|e| e.to_string())?;
    let (mgz, mz) = (mg.eval(&z).map_err(|e| e.to_string())?, m.eval(&z).map_err(|e| e.to_string())?);
    ensure(mgz == mz, || format!("m^G(z) = {mgz}, m(z) = {mz}"))?;
    let pool = r.ball_enumerate(5).map_err(|e| e.to_string())?;
    let conj = r.ball_enumerate(2).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let g = pool.choose(&mut rng).unwrap();
        let x = conj.choose(&mut rng).unwrap();
        let base = mg.eval(g).map_err(|e| e.to_string())?.abs();
        for moved in [r.conjugate(x, g), ext.reps()[1].act(&r, g)] {
            let v = mg.eval(&moved).map_err(|e| e.to_string())?.abs();
            ensure(v == base, || format!("|m^G| differs at {} and {}", r.format(g), r.format(&moved)))?;
        }
    }
    Ok(format!("m^G(z) = m(z) = {mz}; |m^G| invariant on 1000 samples"))
}

fn tau_sandwich() -> Outcome {
    let started = Instant::now();
    let r = path3();
    let chart = QuasilineChart::exponent(&r, 1, Some(q(3))).map_err(|e| e.to_string())?;
    let ball = r.ball_enumerate(4).map_err(|e| e.to_string())?;
    for g in &ball {
        let b = chart.tau_distance_bounds(g).map_err(|e| e.to_string())?;
        let exact = chart
            .tau_distance_exact(g, 4, 8)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("search cap reached at {}", r.format(g)))? as u64;
        ensure(b.lower <= exact && exact <= b.upper, || format!("{}: {b:?} vs {exact}", r.format(g)))?;
    }
    let b10 = chart
        .tau_distance_exact(&r.element("b^10").unwrap(), 2, 8)
        .map_err(|e| e.to_string())?;
    ensure(b10 == Some(5), || format!("d_tau(b^10) = {b10:?}"))?;
    let t = within(started, 30.0)?;
    Ok(format!("{} elements sandwiched, d_tau(b^10) = 5, {t:.2}s", ball.len()))
}

fn divergence() -> Outcome {
    let started = Instant::now();
    let r = path3();
    let p = DivergenceParams {
        vertex: 1,
        z: r.element("b").unwrap(),
        g: r.element("a c").unwrap(),
        psi: parse_quasimorphism(&r, "brooks:ac").map_err(|e| e.to_string())?,
        lambda1: q(1),
        lambda2: q(3),
    };
    let pairs: Vec<(i64, i64)> = (1..=50).map(|l| (l, 2 * l)).collect();
    let rows = divergence_scan(&p, &pairs).map_err(|e| e.to_string())?;
    for (row, l) in rows.iter().zip(1i64..) {
        // Oracle: φ^λ(b^{2l}) = 2l, φ^λ((ac)^l) = λl; the λ=1 median is
        // (ac)^l, the λ=3 median is b^{2l}, and φ^3 separates them by l.
        let medians = |lambda: i64| {
            let mut v = [(0, 0), (2 * l, 1), (lambda * l, 2)];
            v.sort();
            v[1].1
        };
        let values3 = [0, 2 * l, 3 * l];
        let expected = (values3[medians(1)] - values3[medians(3)]).abs();
        ensure(row.divergence == q(expected) && expected == l, || format!("l = {l}: {}", row.divergence))?;
    }
    ensure(rows.windows(2).all(|w| w[0].divergence < w[1].divergence), || "not increasing".into())?;
    let t = within(started, 5.0)?;
    Ok(format!("divergence = l for l = 1..50, strictly increasing to {}, {t:.3}s", rows[49].divergence))
}

fn median_axioms() -> Outcome {
    let r = path3();
    let support = r.extension_ball(&r.standard_vertex(1), 1).map_err(|e| e.to_string())?;
    let psi = parse_quasimorphism(&r, "brooks:ac").map_err(|e| e.to_string())?;
    let mixed = ShortStructure::phi_lambda(&r, support.clone(), 1, &psi, q(3)).map_err(|e| e.to_string())?;
    let pure = ShortStructure::new(ChartAtlas::exponent(&r, None).map_err(|e| e.to_string())?, support)
        .map_err(|e| e.to_string())?;
    let pool = r.ball_enumerate(5).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pick = |rng: &mut ChaCha8Rng| pool.choose(rng).unwrap().clone();
    for _ in 0..1000 {
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let m = mixed.median_tuple([&x, &y, &z]).map_err(|e| e.to_string())?;
        for perm in [[&y, &x, &z], [&z, &y, &x], [&x, &z, &y], [&y, &z, &x], [&z, &x, &y]] {
            ensure(mixed.median_tuple(perm).map_err(|e| e.to_string())? == m, || "symmetry fails".into())?;
        }
        let local = mixed.median_tuple([&x, &x, &y]).map_err(|e| e.to_string())?;
        ensure(local.tuple == mixed.coordinates(&x).map_err(|e| e.to_string())?, || {
            format!("localisation fails at {}", r.format(&x))
        })?;
    }
    let quadruples: Vec<[GroupWord; 4]> = (0..500).map(|_| [(); 4].map(|_| pick(&mut rng))).collect();
    let pure_stat = four_point_check(&pure, &quadruples).map_err(|e| e.to_string())?;
    ensure(pure_stat.max == q(0), || format!("homomorphism charts give {}", pure_stat.max))?;
    let mixed_stat = four_point_check(&mixed, &quadruples).map_err(|e| e.to_string())?;
    let max_defect = mixed
        .atlas()
        .charts()
        .map(|c| c.defect_bound())
        .max()
        .unwrap_or_else(|| q(0));
    ensure(mixed_stat.max <= q(10) * max_defect, || format!("mixed statistic {}", mixed_stat.max))?;
    Ok(format!(
        "localisation and symmetry exact on 1000 triples; four-point {} (homomorphism), {} (Brooks-mixed, defect {max_defect})",
        pure_stat.max, mixed_stat.max
    ))
}

fn path_blowup() -> Result<BlowupBall, String> {
    let r = path3();
    let support = r.extension_ball(&r.standard_vertex(1), 1).map_err(|e| e.to_string())?;
    BlowupBall::new(support, ChartAtlas::exponent(&r, None).map_err(|e| e.to_string())?, q(1)).map_err(|e| e.to_string())
}

fn links_and_saturations() -> Outcome {
    let started = Instant::now();
    let ball = path_blowup()?;
    let simplices = ball.simplices();
    let mut saturations = 0;
    for s in &simplices {
        let generic = ball.link_generic(s).map_err(|e| e.to_string())?;
        let closed = ball.link_closed_form(s).map_err(|e| e.to_string())?;
        ensure(generic == closed, || format!("link of {}", ball.format_simplex(s)))?;
        if let Some(sat) = ball.saturation_closed_form(s).map_err(|e| e.to_string())? {
            ensure(sat == ball.saturation(s).map_err(|e| e.to_string())?, || {
                format!("saturation of {}", ball.format_simplex(s))
            })?;
            saturations += 1;
        }
    }
    ensure(simplices.len() >= 300, || format!("only {} simplices", simplices.len()))?;
    let t = within(started, 30.0)?;
    Ok(format!("{} links and {saturations} saturations agree, {t:.2}s", simplices.len()))
}

fn realisations() -> Outcome {
    let ball = path_blowup()?;
    let realiser = Realiser::new(&ball, 6).map_err(|e| e.to_string())?;
    let maximal = ball.maximal_simplices();
    for s in &maximal {
        let f = realiser.realisation(s).map_err(|e| e.to_string())?;
        ensure(!f.elements.is_empty() && !f.possibly_empty, || format!("f({}) empty", ball.format_simplex(s)))?;
    }
    Ok(format!("{} maximal simplices, all realisations nonempty in B_6 at R = {}", maximal.len(), ball.level_radius()))
}

fn delta_sanity() -> Outcome {
    let tree = Raag::new(
        DefiningGraph::new(&["a", "b", "c", "d", "e"], &[("a", "b"), ("b", "c"), ("b", "d"), ("d", "e")])
            .map_err(|e| e.to_string())?,
    );
    let params = DeltaParams::default();
    let defining: Vec<Vec<usize>> = (0..5u32)
        .map(|v| tree.graph().link(v).into_iter().map(|w| w as usize).collect())
        .collect();
    let d_tree = delta_hyperbolicity_estimate(&defining, &params).max_delta();
    let ext = tree.extension_ball(&tree.standard_vertex(1), 2).map_err(|e| e.to_string())?;
    let ext_adj: Vec<Vec<usize>> = (0..ext.len()).map(|i| ext.neighbours(i).to_vec()).collect();
    let d_ext = delta_hyperbolicity_estimate(&ext_adj, &params).max_delta();
    ensure(d_tree == q(0) && d_ext == q(0), || format!("tree δ {d_tree}, extension tree δ {d_ext}"))?;
    let r = path3();
    let ball = r.extension_ball(&r.standard_vertex(1), 3).map_err(|e| e.to_string())?;
    let adj: Vec<Vec<usize>> = (0..ball.len()).map(|i| ball.neighbours(i).to_vec()).collect();
    let est = delta_hyperbolicity_estimate(&adj, &params);
    Ok(format!(
        "trees δ = 0; path radius-3 extension ball ({} vertices, {} components) δ = {}",
        ball.len(),
        est.components.len(),
        est.max_delta()
    ))
}

fn consistency() -> Outcome {
    let r = path3();
    let support = r.extension_ball(&r.standard_vertex(1), 1).map_err(|e| e.to_string())?;
    let psi = parse_quasimorphism(&r, "brooks:ac").map_err(|e| e.to_string())?;
    let s = ShortStructure::phi_lambda(&r, support, 1, &psi, q(1)).map_err(|e| e.to_string())?;
    let pairs = s.transverse_ell_pairs();
    let pool = r.ball_enumerate(5).map_err(|e| e.to_string())?;
    let run = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample: Vec<GroupWord> = (0..1000).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
        s.consistency_sample(&sample, &pairs)
    };
    let first = run(11).map_err(|e| e.to_string())?;
    let second = run(11).map_err(|e| e.to_string())?;
    ensure(first == second, || "runs with the same seed differ".into())?;
    let w = first.witness.as_ref().ok_or("no witness")?;
    Ok(format!(
        "max {} over {} evaluations ({} pairs), witness {} on ({}, {}); deterministic",
        first.max,
        first.evaluations,
        pairs.len(),
        r.format(&w.element),
        s.format_domain(&w.first),
        s.format_domain(&w.second)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("word-problem oracle equivalence", word_problem),
        ("ball count", ball_count),
        ("quasimorphism exactness", quasimorphism_exactness),
        ("averaged quasimorphism contract", averaging_contract),
        ("tau-distance sandwich", tau_sandwich),
        ("divergence reproduction", divergence),
        ("median axioms", median_axioms),
        ("link and saturation closed forms", links_and_saturations),
        ("realisation non-emptiness", realisations),
        ("delta sanity", delta_sanity),
        ("consistency statistic", consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
