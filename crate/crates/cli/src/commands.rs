//! One function per subcommand. Each resolves its parameters (defaults
//! included) into the artifact metadata before computing anything.

use std::collections::BTreeMap;
use std::fs;
use std::io;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use raag_hhg::{
    delta_hyperbolicity_estimate, divergence_scan, parse_quasimorphism, strong_bgi_check, BgiParams, BlowupBall,
    ChartAtlas, DefiningGraph, DeltaParams, DivergenceParams, Error, ExtBall, QuasilineChart, Raag, Rational,
    Realiser, ShortStructure,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::output::{csv_artifact, dot_artifact, emit, json_artifact, Metadata};
use crate::{BlowupArgs, Cli, Command, FamilyArgs, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// 2 for invalid input, 3 for a resource cap, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::ResourceCap { .. }) => 3,
            CliError::Lib(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Loaded {
    raag: Raag,
    text: String,
}

fn load(cli: &Cli) -> Result<Loaded> {
    let path = cli
        .global
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage("--graph is required".into()))?;
    let text = fs::read_to_string(path)?;
    let graph = DefiningGraph::from_json(&text).map_err(Error::from)?;
    Ok(Loaded {
        raag: Raag::new(graph).with_enumeration_cap(cli.global.cap),
        text,
    })
}

fn metadata(cli: &Cli, command: &'static str, loaded: &Loaded) -> Metadata {
    let mut meta = Metadata::new(command, &loaded.text);
    meta.param("seed", cli.global.seed).param("cap", cli.global.cap);
    meta
}

fn write(cli: &Cli, text: &str) -> Result<()> {
    emit(cli.global.out.as_deref(), text)?;
    Ok(())
}

fn opt(value: &Option<Rational>) -> String {
    value.map_or_else(|| "default".to_string(), |v| v.to_string())
}

pub fn run(cli: &Cli) -> Result<()> {
    let loaded = load(cli)?;
    let raag = &loaded.raag;
    match &cli.command {
        Command::ValidateGraph => {
            raag.graph().require_experiment_ready().map_err(Error::from)?;
            let meta = metadata(cli, "validate-graph", &loaded);
            let g = raag.graph();
            let result = json!({
                "valid": true,
                "vertices": g.names(),
                "edges": g.edges().map(|(a, b)| [g.name(a), g.name(b)]).collect::<Vec<_>>(),
            });
            write(cli, &json_artifact(&meta, result))
        }
        Command::NormalForm { word } => {
            let mut meta = metadata(cli, "normal-form", &loaded);
            meta.param("word", word);
            let nf = raag.normal_form(&raag.parse(word)?)?;
            let result = json!({
                "input": word,
                "normal_form": raag.format(&nf),
                "length": nf.len(),
            });
            write(cli, &json_artifact(&meta, result))
        }
        Command::Ball { r, list } => {
            let mut meta = metadata(cli, "ball", &loaded);
            meta.param("r", r).param("list", list);
            let ball = raag.ball_enumerate(*r)?;
            let mut spheres = vec![0usize; r + 1];
            for g in &ball {
                spheres[g.len()] += 1;
            }
            let mut result = json!({ "radius": r, "size": ball.len(), "spheres": spheres });
            if *list {
                result["elements"] = ball.iter().map(|g| raag.format(g)).collect::<Vec<_>>().into();
            }
            write(cli, &json_artifact(&meta, result))
        }
        Command::ExtBall {
            center,
            conj_radius,
            format,
        } => {
            let mut meta = metadata(cli, "ext-ball", &loaded);
            meta.param("center", center)
                .param("conj_radius", conj_radius)
                .param("format", format!("{format:?}").to_lowercase());
            let ball = raag.extension_ball(&raag.parse_vertex(center)?, *conj_radius)?;
            match format {
                Format::Dot => write(cli, &dot_artifact(&meta, &ball.to_dot(raag))),
                Format::Json => {
                    let result = json!({
                        "vertex_count": ball.len(),
                        "edge_count": ball.edge_count(),
                        "properly_colored": ball.is_properly_colored(),
                        "ball": ball.to_export(raag),
                    });
                    write(cli, &json_artifact(&meta, result))
                }
            }
        }
        Command::QmEval { chart, words } => {
            let mut meta = metadata(cli, "qm-eval", &loaded);
            meta.param("chart", chart).param("words", words.join(";"));
            let m = parse_quasimorphism(raag, chart)?;
            let values: Vec<Value> = words
                .iter()
                .map(|w| {
                    let g = raag.parse(w)?;
                    Ok(json!({ "word": w, "normal_form": raag.format(&raag.normal_form(&g)?), "value": m.eval(&g)?.to_string() }))
                })
                .collect::<Result<_>>()?;
            let result = json!({
                "quasimorphism": m.describe(),
                "defect_bound": m.defect_bound().to_string(),
                "homogeneous": m.is_homogeneous(),
                "values": values,
            });
            write(cli, &json_artifact(&meta, result))
        }
        Command::QuasilineDist {
            vertex,
            chart,
            cutoff,
            words,
            letter_radius,
            search_cap,
        } => {
            let v = raag.gen(vertex)?;
            let spec = chart.clone().unwrap_or_else(|| format!("exp:{vertex}"));
            let q = QuasilineChart::new(parse_quasimorphism(raag, &spec)?, v, *cutoff)?;
            let mut meta = metadata(cli, "quasiline-dist", &loaded);
            meta.param("vertex", vertex)
                .param("chart", &spec)
                .param("cutoff", q.cutoff())
                .param("cutoff_defaulted", q.cutoff_defaulted())
                .param("words", words.join(";"))
                .param("letter_radius", letter_radius)
                .param("search_cap", search_cap);
            let rows: Vec<Value> = words
                .iter()
                .map(|w| {
                    let g = raag.parse(w)?;
                    let bounds = q.tau_distance_bounds(&g)?;
                    let exact = q.tau_distance_exact(&g, *letter_radius, *search_cap)?;
                    Ok(json!({
                        "word": w,
                        "coordinate": q.coord(&g)?.to_string(),
                        "lower": bounds.lower,
                        "upper": bounds.upper,
                        "exact": exact,
                        "truncated": exact.is_none(),
                    }))
                })
                .collect::<Result<_>>()?;
            let result = json!({ "defect_bound": q.defect_bound().to_string(), "rows": rows });
            write(cli, &json_artifact(&meta, result))
        }
        Command::BlowupExport { blowup, format } => {
            let mut meta = metadata(cli, "blowup-export", &loaded);
            blowup_params(&mut meta, blowup);
            meta.param("format", format!("{format:?}").to_lowercase());
            let ball = build_blowup(raag, blowup)?;
            match format {
                Format::Dot => write(cli, &dot_artifact(&meta, &ball.to_dot())),
                Format::Json => write(cli, &json_artifact(&meta, json!(ball.to_export()))),
            }
        }
        Command::AxiomCheck {
            blowup,
            radius,
            samples,
        } => {
            let mut meta = metadata(cli, "axiom-check", &loaded);
            blowup_params(&mut meta, blowup);
            meta.param("radius", radius).param("samples", samples);
            let result = axiom_check(raag, blowup, *radius, *samples, cli.global.seed)?;
            write(cli, &json_artifact(&meta, result))
        }
        Command::Median {
            family,
            conj_radius,
            x,
            y,
            z,
        } => {
            let mut meta = metadata(cli, "median", &loaded);
            family_params(&mut meta, family);
            meta.param("conj_radius", conj_radius).param("x", x).param("y", y).param("z", z);
            let v = raag.gen(&family.vertex)?;
            let psi = parse_quasimorphism(raag, &family.psi)?;
            let support = raag.extension_ball(&raag.standard_vertex(v), *conj_radius)?;
            let inputs = [raag.parse(x)?, raag.parse(y)?, raag.parse(z)?];
            let medians: Vec<Value> = family
                .lambda
                .iter()
                .map(|&lambda| {
                    let s = ShortStructure::phi_lambda(raag, support.clone(), v, &psi, lambda)?;
                    let m = s.median_tuple([&inputs[0], &inputs[1], &inputs[2]])?;
                    let domains: Vec<Value> = m
                        .tuple
                        .iter()
                        .map(|(d, c)| {
                            json!({
                                "domain": s.format_domain(d),
                                "coordinate": s.format_coordinate(c),
                                "representative": raag.format(&m.representatives[d]),
                            })
                        })
                        .collect();
                    Ok(json!({ "lambda": lambda.to_string(), "domains": domains }))
                })
                .collect::<Result<_>>()?;
            write(cli, &json_artifact(&meta, json!({ "medians": medians })))
        }
        Command::DivergeScan {
            family,
            z,
            g,
            l,
            k,
            k_factor,
        } => {
            let mut meta = metadata(cli, "diverge-scan", &loaded);
            family_params(&mut meta, family);
            let ls = &l.0;
            meta.param("z", z).param("g", g).param("l", join(ls));
            match k {
                Some(ks) => meta.param("k", join(&ks.0)),
                None => meta.param("k_factor", k_factor),
            };
            let [lambda1, lambda2] = family.lambda[..] else {
                return Err(CliError::Usage("diverge-scan needs exactly two lambda values".into()));
            };
            if lambda1 == lambda2 {
                return Err(CliError::Usage("the two lambda values must differ".into()));
            }
            let params = DivergenceParams {
                vertex: raag.gen(&family.vertex)?,
                z: raag.parse(z)?,
                g: raag.parse(g)?,
                psi: parse_quasimorphism(raag, &family.psi)?,
                lambda1,
                lambda2,
            };
            let pairs: Vec<(i64, i64)> = match k {
                Some(ks) => ls.iter().flat_map(|&l| ks.0.iter().map(move |&k| (l, k))).collect(),
                None => ls.iter().map(|&l| (l, k_factor * l)).collect(),
            };
            let rows = divergence_scan(&params, &pairs)?;
            let mut csv = csv::Writer::from_writer(Vec::new());
            csv.write_record([
                "l",
                "k",
                "lambda1",
                "lambda2",
                "phi1_of_triple",
                "phi2_of_triple",
                "x1",
                "x2",
                "divergence",
                "divergence_lambda1",
            ])
            .map_err(io::Error::from)?;
            for r in rows {
                csv.write_record([
                    r.l.to_string(),
                    r.k.to_string(),
                    r.lambda1.to_string(),
                    r.lambda2.to_string(),
                    join(&r.phi1_of_triple),
                    join(&r.phi2_of_triple),
                    raag.format(&r.x1),
                    raag.format(&r.x2),
                    r.divergence.to_string(),
                    r.divergence_lambda1.to_string(),
                ])
                .map_err(io::Error::from)?;
            }
            let body = csv.into_inner().map_err(|e| e.into_error())?;
            write(cli, &csv_artifact(&meta, &String::from_utf8(body).expect("CSV output is UTF-8")))
        }
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn family_params(meta: &mut Metadata, f: &FamilyArgs) {
    meta.param("vertex", &f.vertex)
        .param("psi", &f.psi)
        .param("lambda", join(&f.lambda));
}

fn blowup_params(meta: &mut Metadata, b: &BlowupArgs) {
    meta.param("center", &b.center)
        .param("conj_radius", b.conj_radius)
        .param("window", b.window)
        .param("cutoff", opt(&b.cutoff))
        .param("R", b.level_radius)
        .param("T", b.staple_threshold);
}

fn build_support(raag: &Raag, b: &BlowupArgs) -> Result<(ExtBall, ChartAtlas)> {
    let support = raag.extension_ball(&raag.parse_vertex(&b.center)?, b.conj_radius)?;
    Ok((support, ChartAtlas::exponent(raag, b.cutoff)?))
}

fn build_blowup(raag: &Raag, b: &BlowupArgs) -> Result<BlowupBall> {
    let (support, atlas) = build_support(raag, b)?;
    Ok(BlowupBall::new(support, atlas, b.window)?.with_params(b.level_radius, b.staple_threshold))
}

fn axiom_check(raag: &Raag, b: &BlowupArgs, radius: usize, samples: usize, seed: u64) -> Result<Value> {
    let ball = build_blowup(raag, b)?;
    let simplices = ball.simplices();
    let mut link_agree = 0;
    let mut saturation_agree = 0;
    let mut saturation_closed = 0;
    let mut classes = BTreeMap::new();
    for s in &simplices {
        let (class, link) = ball.link_and_classify(s)?;
        *classes.entry(format!("{class:?}")).or_insert(0usize) += 1;
        if ball.link_closed_form(s)? == link {
            link_agree += 1;
        }
        if let Some(closed) = ball.saturation_closed_form(s)? {
            saturation_closed += 1;
            if closed == ball.saturation(s)? {
                saturation_agree += 1;
            }
        }
    }

    let realiser = Realiser::new(&ball, radius)?;
    let maximal = ball.maximal_simplices();
    let (mut nonempty, mut possibly_empty, mut undecided) = (0, 0, 0);
    for s in &maximal {
        let r = realiser.realisation(s)?;
        if r.elements.is_empty() {
            possibly_empty += 1;
        } else {
            nonempty += 1;
        }
        undecided += r.undecided;
    }

    let support = ball.support();
    let adjacency: Vec<Vec<usize>> = (0..support.len()).map(|i| support.neighbours(i).to_vec()).collect();
    let delta = delta_hyperbolicity_estimate(
        &adjacency,
        &DeltaParams {
            seed,
            ..DeltaParams::default()
        },
    );

    let bgi_params = BgiParams {
        seed,
        ..BgiParams::default()
    };
    let bgi: Vec<_> = (0..support.len())
        .map(|w| strong_bgi_check(&ball, w, &bgi_params))
        .collect::<std::result::Result<_, _>>()?;
    let bgi_violations: usize = bgi.iter().map(|r| r.violations.len()).sum();
    let bgi_reports: Vec<Value> = bgi
        .iter()
        .map(|r| {
            json!({
                "w": r.w,
                "checked": r.checked,
                "vacuous": r.vacuous,
                "passed": r.passed,
                "violations": r.violations.iter().map(|v| json!({
                    "u": v.u,
                    "v": v.v,
                    "separation": v.separation.to_string(),
                    "distance": v.distance,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();

    let structure = ShortStructure::new(ball.atlas().clone(), support.clone())?;
    let pairs = structure.transverse_ell_pairs();
    let pool = raag.ball_enumerate(5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<_> = (0..samples).map(|_| pool.choose(&mut rng).expect("balls contain the identity").clone()).collect();
    let consistency = structure.consistency_sample(&sample, &pairs)?;
    let witness = consistency.witness.as_ref().map(|w| {
        json!({
            "element": raag.format(&w.element),
            "first": structure.format_domain(&w.first),
            "second": structure.format_domain(&w.second),
            "terms": [w.terms[0].to_string(), w.terms[1].to_string()],
        })
    });

    Ok(json!({
        "links": {
            "simplices": simplices.len(),
            "classes": classes,
            "closed_form_agree": link_agree,
            "saturation_closed_forms": saturation_closed,
            "saturation_agree": saturation_agree,
        },
        "realisation": {
            "group_radius": radius,
            "maximal_simplices": maximal.len(),
            "nonempty": nonempty,
            "possibly_empty": possibly_empty,
            "undecided": undecided,
            "truncated": possibly_empty > 0 || undecided > 0,
        },
        "delta": {
            "max": delta.max_delta().to_string(),
            "components": delta.components.iter().map(|c| json!({
                "vertices": c.vertices.len(),
                "delta": c.delta.to_string(),
                "exhaustive": c.exhaustive,
                "quadruples": c.quadruples,
            })).collect::<Vec<_>>(),
        },
        "strong_bgi": { "violations": bgi_violations, "reports": bgi_reports },
        "consistency": {
            "transverse_pairs": pairs.len(),
            "evaluations": consistency.evaluations,
            "max": consistency.max.to_string(),
            "witness": witness,
        },
    }))
}
