use galmod_core::deformation::tangent_report;
use galmod_core::engine::{self, EngineError, EngineOutput};
use galmod_core::hyperelliptic::{self, HyperellipticError};
use galmod_core::modular::local::{compare_local, Subgroup};
use galmod_core::modular::{self, brauer_value, ConjugacyClass, ModularError, ModularParams, QuadraticValue};
use galmod_core::synthetic::{self, ModeKind, SyntheticConfig};
use galmod_core::{arith, genus, CoverData, Decomposition, GroupData, Mode};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, Suite};
use crate::input::InputDocument;
use crate::render::{big, bigs, Report};
use crate::CliError;

type Outcome = Result<(Report, Option<CliError>), CliError>;

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::RiemannRoch { file } => from_file(file, cli.trace, |_| Ok(Mode::RiemannRoch)),
        Command::PolyDiff { file, m } => from_file(file, cli.trace, |doc| {
            let m = m.or(doc.m).ok_or_else(|| {
                CliError::Usage("poly-diff needs --m or an `m` field in the input".into())
            })?;
            Ok(Mode::PolyDifferential { m })
        }),
        Command::Diff { file } => from_file(file, cli.trace, |_| Ok(Mode::Differentials)),
        Command::Tangent { file } => tangent(file),
        Command::Hyperelliptic { p, m, expect } => hyperelliptic_cmd(*p, *m, *expect, cli.trace),
        Command::Modular { l, m, s01, audit } => modular_cmd(*l, *m, *s01, *audit, cli.trace),
        Command::Sweep { suite, max, parallel, seed } => sweep(*suite, *max, *parallel, *seed),
    }
}

fn engine_error(e: EngineError) -> CliError {
    CliError::Failed(format!("{}: {e}", e.name()))
}

fn modular_error(e: ModularError) -> CliError {
    CliError::Failed(e.to_string())
}

fn hyperelliptic_error(e: HyperellipticError) -> CliError {
    match e {
        HyperellipticError::Engine(e) => engine_error(e),
        other => CliError::Failed(other.to_string()),
    }
}

fn summand_rows(d: &Decomposition) -> Vec<Map<String, Value>> {
    d.iter()
        .filter(|(_, k)| **k != BigInt::from(0))
        .map(|(label, k)| {
            let mut row = Map::new();
            row.insert("a".into(), json!(label.a));
            row.insert("b".into(), json!(label.b));
            row.insert("multiplicity".into(), big(k));
            row
        })
        .collect()
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::RiemannRoch => "riemann-roch",
        Mode::PolyDifferential { .. } => "poly-diff",
        Mode::Differentials => "diff",
    }
}

fn engine_report(mode: Mode, out: &EngineOutput, trace: bool) -> Report {
    let mut r = Report { rows: summand_rows(&out.decomposition), ..Report::default() };
    r.set("mode", mode_name(mode));
    if let Mode::PolyDifferential { m } = mode {
        r.set("m", m);
    }
    r.set("genus_x", big(&out.trace.genus_x));
    r.set("genus_y", big(&out.trace.genus_y));
    r.set("total_dimension", big(&out.decomposition.total_dimension()));
    r.set("expected_dimension", big(&out.expected_dimension));
    if trace {
        let t = &out.trace;
        let mut m = Map::new();
        m.insert("layers".into(), json!(t.layers));
        m.insert("stride".into(), json!(t.stride));
        m.insert("n_j".into(), bigs(&t.n_j));
        m.insert("n_j_alt".into(), t.n_j_alt.as_deref().map_or(Value::Null, bigs));
        m.insert("e".into(), Value::Array(t.e.iter().map(|row| bigs(row)).collect()));
        m.insert("ell".into(), json!(t.ell));
        m.insert("n_aj".into(), Value::Array(t.n_aj.iter().map(|row| bigs(row)).collect()));
        r.set("trace", Value::Object(m));
    }
    r
}

fn from_file(
    file: &std::path::Path,
    trace: bool,
    mode: impl FnOnce(&InputDocument) -> Result<Mode, CliError>,
) -> Outcome {
    let doc = InputDocument::read(file)?;
    let mode = mode(&doc)?;
    let (group, cover) = doc.build()?;
    let out = engine::decompose(&group, &cover, mode).map_err(engine_error)?;
    Ok((engine_report(mode, &out, trace), None))
}

fn tangent(file: &std::path::Path) -> Outcome {
    let doc = InputDocument::read(file)?;
    let (group, cover) = doc.build()?;
    let report = tangent_report(&group, &cover).map_err(engine_error)?;
    let gx = genus::genus_x(&group, &cover).map_err(|e| engine_error(e.into()))?;
    let mut r = Report { rows: summand_rows(&report.bicanonical), ..Report::default() };
    r.set("genus_x", big(&gx));
    r.set("total_dimension", big(&report.bicanonical.total_dimension()));
    r.set("tangent_dimension", big(&report.tangent_dimension));
    r.set("coinvariant_dimension", big(&report.coinvariant_dimension));
    let failure = (report.tangent_dimension != report.coinvariant_dimension).then(|| {
        CliError::Failed(format!(
            "TangentMismatch: layer formula gives {}, coinvariants give {}",
            report.tangent_dimension, report.coinvariant_dimension
        ))
    });
    Ok((r, failure))
}

fn hyperelliptic_cmd(p: u64, m: u64, expect: bool, trace: bool) -> Outcome {
    let (group, cover) = hyperelliptic::build_cover(p).map_err(hyperelliptic_error)?;
    let mode = Mode::PolyDifferential { m };
    let out = engine::decompose(&group, &cover, mode).map_err(engine_error)?;
    let mut r = engine_report(mode, &out, trace);
    r.set("p", p);
    let mut failure = None;
    if expect {
        let expected = hyperelliptic::expected(p, m).map_err(hyperelliptic_error)?;
        let agrees = expected == out.decomposition;
        r.set("closed_form", if agrees { "match" } else { "mismatch" });
        if !agrees {
            failure = Some(CliError::Failed(format!(
                "Mismatch: engine {} differs from the closed form {expected}",
                out.decomposition
            )));
        }
    }
    Ok((r, failure))
}

fn quadratic(v: &QuadraticValue) -> String {
    let root = format!("({})*sqrt({})", v.irrational, v.radicand);
    match (v.rational.is_zero(), v.irrational.is_zero()) {
        (_, true) => v.rational.to_string(),
        (true, false) => root,
        (false, false) => format!("{} + {root}", v.rational),
    }
}

fn modular_cmd(ell: u64, m: u64, s01: i64, audit: bool, trace: bool) -> Outcome {
    let d = modular::decompose(ell, m, s01).map_err(modular_error)?;
    let q = d.params;
    let mut r = Report::default();
    let mut biserial = false;
    for (label, k) in &d.non_projective {
        biserial |= matches!(label, modular::NonProjectiveLabel::Biserial { .. });
        let mut row = Map::new();
        row.insert("kind".into(), json!("non-projective"));
        row.insert("label".into(), json!(label.to_string()));
        row.insert("multiplicity".into(), json!(k));
        row.insert("dimension".into(), json!(label.dimension(&q)));
        r.rows.push(row);
    }
    for (simple, k) in d.projective.iter().filter(|(_, k)| *k != BigInt::from(0)) {
        let mut row = Map::new();
        row.insert("kind".into(), json!("projective"));
        row.insert("label".into(), json!(format!("P({simple})")));
        row.insert("multiplicity".into(), big(k));
        row.insert("dimension".into(), json!(simple.projective_dimension(&q)));
        r.rows.push(row);
    }
    r.set("ell", ell);
    r.set("m", m);
    r.set("s01", s01);
    r.set("case", format!("{:?}", q.case()).to_lowercase());
    r.set("epsilon", q.epsilon);
    r.set("epsilon_prime", q.epsilon_prime);
    r.set("n", q.n);
    r.set("n_prime", q.n_prime);
    r.set("total_dimension", big(&d.total_dimension()));
    r.set("expected_dimension", q.total_dimension());
    if biserial {
        r.set("biserial_t0_count", "working determination, pinned by the dimension audit");
    }
    if trace {
        let mut t = Map::new();
        for (name, class) in [
            ("r1", ConjugacyClass::R(1)),
            ("r2", ConjugacyClass::R(2)),
            ("s", ConjugacyClass::S),
        ] {
            let v = brauer_value(ell, m, class).map_err(modular_error)?;
            t.insert(format!("brauer_{name}"), json!(quadratic(&v)));
        }
        r.set("trace", Value::Object(t));
    }
    let mut failure = None;
    if audit {
        match modular::audit(ell, m, s01) {
            Ok(_) => r.set("audit", "pass"),
            Err(e) => {
                r.set("audit", "fail");
                failure = Some(modular_error(e));
            }
        }
    }
    Ok((r, failure))
}

type Row = Result<Map<String, Value>, (Map<String, Value>, String)>;

fn run_rows<T: Sync>(items: &[T], parallel: bool, f: impl Fn(&T) -> Row + Sync + Send) -> Vec<Row> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

fn row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn with_status(mut base: Map<String, Value>, status: Result<(), String>) -> Row {
    match status {
        Ok(()) => {
            base.insert("status".into(), json!("ok"));
            Ok(base)
        }
        Err(why) => {
            base.insert("status".into(), json!(format!("FAIL: {why}")));
            Err((base, why))
        }
    }
}

fn synthetic_check(group: &GroupData, cover: &CoverData, mode: Mode, out: &EngineOutput) -> Result<(), String> {
    let gx = genus::genus_x(group, cover).map_err(|e| e.to_string())?;
    let predicted = match mode {
        Mode::RiemannRoch => genus::degree(group, cover) + 1 - gx,
        Mode::PolyDifferential { m } => BigInt::from(2 * m - 1) * (gx - 1),
        Mode::Differentials => gx,
    };
    if out.decomposition.total_dimension() != predicted {
        return Err(format!("dimension {} != {predicted}", out.decomposition.total_dimension()));
    }
    if out.trace.n_j_alt.as_ref().is_some_and(|alt| alt != &out.trace.n_j) {
        return Err("n_j routes differ".into());
    }
    if out.trace.n_aj.iter().any(|r| r.windows(2).any(|w| w[0] < w[1])) {
        return Err("n(a, j) increases".into());
    }
    Ok(())
}

fn sweep(suite: Suite, max: Option<u64>, parallel: bool, seed: u64) -> Outcome {
    let rows: Vec<Row> = match suite {
        Suite::Hyperelliptic => {
            let cases = hyperelliptic::grid(max.unwrap_or(31));
            run_rows(&cases, parallel, |&(p, m)| {
                let base = row(&[("p", json!(p)), ("m", json!(m))]);
                with_status(base, hyperelliptic::verify(p, m).map(|_| ()).map_err(|e| e.to_string()))
            })
        }
        Suite::Modular => {
            let mut cases = Vec::new();
            for ell in (7..=max.unwrap_or(61)).filter(|&l| arith::is_prime(l)) {
                for m in 2..=12 {
                    for s01 in [1i64, -1] {
                        cases.push((ell, m, s01));
                    }
                }
            }
            run_rows(&cases, parallel, |&(ell, m, s01)| {
                let base = row(&[("ell", json!(ell)), ("m", json!(m)), ("s01", json!(s01))]);
                with_status(base, modular::audit(ell, m, s01).map(|_| ()).map_err(|e| e.to_string()))
            })
        }
        Suite::Local => {
            let mut cases = Vec::new();
            for ell in (7..=max.unwrap_or(19)).filter(|&l| arith::is_prime(l)) {
                let q = ModularParams::new(ell, 2).map_err(modular_error)?;
                for sub in Subgroup::ALL.into_iter().filter(|s| s.applies(&q)) {
                    for m in 2..=8 {
                        cases.push((ell, sub, m));
                    }
                }
            }
            run_rows(&cases, parallel, |&(ell, sub, m)| {
                let base = row(&[("ell", json!(ell)), ("subgroup", json!(sub.to_string())), ("m", json!(m))]);
                let status = compare_local(ell, m, sub).map_err(|e| e.to_string()).and_then(|c| {
                    if c.agrees() {
                        Ok(())
                    } else {
                        Err(format!("engine {} expected {}", c.engine, c.expected))
                    }
                });
                with_status(base, status)
            })
        }
        Suite::Synthetic => {
            let count = max.unwrap_or(1000);
            let indices: Vec<u64> = (0..count).collect();
            let config = SyntheticConfig::default();
            run_rows(&indices, parallel, |&i| {
                let kind = ModeKind::ALL[(i % 3) as usize];
                let mut rng = synthetic::rng(seed.wrapping_mul(1_000_003).wrapping_add(i));
                let (case, out) = synthetic::generate(&mut rng, &config, kind);
                let base = row(&[
                    ("index", json!(i)),
                    ("mode", json!(mode_name(case.mode))),
                    ("p", json!(case.group.p)),
                    ("n", json!(case.group.n)),
                    ("c", json!(case.group.c)),
                    ("orbits", json!(case.cover.orbits.len())),
                    ("layers", json!(out.trace.layers)),
                    ("dimension", big(&out.decomposition.total_dimension())),
                ]);
                with_status(base, synthetic_check(&case.group, &case.cover, case.mode, &out))
            })
        }
    };
    let mut r = Report::default();
    let mut failures = Vec::new();
    for row in rows {
        match row {
            Ok(map) => r.rows.push(map),
            Err((map, why)) => {
                r.rows.push(map);
                failures.push(why);
            }
        }
    }
    r.set("suite", format!("{suite:?}").to_lowercase());
    r.set("cases", r.rows.len());
    r.set("failures", failures.len());
    let failure = failures
        .first()
        .map(|first| CliError::Failed(format!("AuditFailed: {} case(s) failed; first: {first}", failures.len())));
    Ok((r, failure))
}
