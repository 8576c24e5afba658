use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superloop_core::exactnum::{format_scalar, int, SparseVec};
use superloop_core::loopeval::decompose_loop;
use superloop_core::schema::{SpecFile, SCHEMA_VERSION};
use superloop_core::superalg::{build, root_datum, AlgebraKind, SuperAlgebra};
use superloop_core::taumod::{extract_spec, is_evaluation, iso_check_g, iso_check_gprime};
use superloop_core::verify::{check_annihilator_tau, run_suites, CorpusEntry, Instance, SuiteOptions};

#[derive(Parser)]
#[command(name = "superloop", version, about = "Loop modules of sl(m,n) and C(m) in exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Degree window for graded data, as LO..HI.
    #[arg(long, global = true, value_parser = parse_window, allow_hyphen_values = true, default_value = "-4..4")]
    window: (i64, i64),
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra data.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Module construction.
    Module {
        #[command(subcommand)]
        command: ModuleCommand,
    },
    /// Run verification suites over the built-in corpus and any --spec files.
    Verify {
        /// Suite names, or `all`.
        #[arg(default_value = "all")]
        suites: Vec<String>,
        #[arg(long = "spec")]
        specs: Vec<PathBuf>,
        /// Skip the built-in corpus.
        #[arg(long)]
        no_corpus: bool,
        /// Include per-check wall time in the output.
        #[arg(long)]
        timings: bool,
        /// Corrupt one structure constant of sl(2,1) before the structure suite.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Decide whether two specs give isomorphic modules.
    Iso {
        #[arg(long = "spec", num_args = 1)]
        specs: Vec<PathBuf>,
        files: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Dimension, roots, z element and ℤ-grading.
    Info {
        /// `sl(m,n)`, `C(m)`, or a JSON descriptor such as {"type":"sl","m":2,"n":1}.
        descriptor: Option<String>,
        /// Take the algebra from a spec file.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Build the module of a spec file and dump its data.
    Build {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn parse_descriptor(s: &str) -> anyhow::Result<AlgebraKind> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).context("invalid algebra descriptor");
    }
    let (name, rest) = s.split_once('(').ok_or_else(|| anyhow!("invalid algebra descriptor {s:?}"))?;
    let args: Vec<usize> = rest
        .trim_end_matches(')')
        .split([',', '|'])
        .map(|a| a.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("invalid algebra descriptor {s:?}"))?;
    match (name.trim(), args.as_slice()) {
        ("sl", &[m, n]) => Ok(AlgebraKind::Sl { m, n }),
        ("C", &[m]) => Ok(AlgebraKind::C { m }),
        _ => bail!("invalid algebra descriptor {s:?}; expected sl(m,n) or C(m)"),
    }
}

fn read_spec(path: &PathBuf) -> anyhow::Result<SpecFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SpecFile::parse(&text).with_context(|| format!("in {}", path.display()))
}

fn progress(msg: &str) {
    eprintln!("superloop: {msg}");
}

fn print_json(v: &Value) {
    // serde_json maps are ordered by key
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn print_text(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        println!("{pad}{k}:");
                        print_text(x, indent + 1);
                    }
                    _ => println!("{pad}{k}: {}", scalar_text(x)),
                }
            }
        }
        other => println!("{pad}{}", scalar_text(other)),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn emit(format: Format, v: &Value) {
    match format {
        Format::Json => print_json(v),
        Format::Text => print_text(v, 0),
    }
}

fn algebra_info(alg: &SuperAlgebra) -> Value {
    let rd = root_datum(alg);
    let kind = alg.kind;
    let describe = |ws: &[superloop_core::repcore::Weight]| ws.iter().map(|w| kind.describe(w)).collect::<Vec<_>>();
    json!({
        "schema": SCHEMA_VERSION,
        "algebra": kind.label(),
        "dim": alg.dim(),
        "dim_even": alg.even_indices().len(),
        "dim_odd": alg.dim() - alg.even_indices().len(),
        "positive_roots": {
            "even": describe(&rd.even_positive),
            "odd": describe(&rd.odd_positive),
            "even_count": rd.even_positive.len(),
            "odd_count": rd.odd_positive.len(),
        },
        "simple_roots": describe(&rd.simple),
        "gram": rd.gram,
        "z": kind.z_diag().iter().map(format_scalar).collect::<Vec<_>>(),
        "grading": {
            "minus": alg.grade_indices(-1).len(),
            "zero": alg.grade_indices(0).len(),
            "plus": alg.grade_indices(1).len(),
        },
    })
}

fn module_build(file: &SpecFile, window: (i64, i64)) -> anyhow::Result<Value> {
    progress(&format!("building {} module over {}", serde_json::to_value(file.kind)?.as_str().unwrap_or("?"), file.algebra.label()));
    let inst = Instance::build("spec", file)?;
    let m = &inst.vhat.module;
    let kind = inst.algebra.kind;
    progress(&format!("dimension {}", m.dim()));
    let mut weights: Vec<(superloop_core::repcore::Weight, usize)> = m.weight_multiplicities().into_iter().collect();
    let height = kind.height_functional();
    weights.sort_by(|(a, _), (b, _)| b.dot(&height).cmp(&a.dot(&height)).then_with(|| a.cmp(b)));
    let weights: Vec<Value> = weights.iter().map(|(w, k)| json!([kind.describe(w), k])).collect();
    let offset = &inst.spec.offset;
    let slices: Vec<Value> = (window.0..=window.1)
        .map(|s| json!({"degree": s, "d": format_scalar(&(int(s) + offset)), "dim": m.dim()}))
        .collect();
    let mut warnings = inst.spec.warnings(&inst.algebra);
    let components = if (1..=2).contains(&inst.period) {
        progress("decomposing the graded module");
        match decompose_loop(&inst.vhat.graded, &SparseVec::unit(inst.vhat.top), inst.period, window.0, window.1) {
            Ok(cs) => Value::Array(
                cs.iter()
                    .map(|c| json!({"index": c.index, "slice_dims": c.slice_dims().into_iter().collect::<Vec<_>>()}))
                    .collect(),
            ),
            Err(e) => {
                warnings.push(e.to_string());
                Value::Null
            }
        }
    } else {
        Value::Null
    };
    progress("checking the annihilator");
    let ann = check_annihilator_tau(&inst.algebra, &inst.vhat, "spec");
    progress("extracting the spec from the module");
    let extracted = extract_spec(&inst.algebra, &inst.vhat.graded, inst.vhat.top)?;
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "algebra": kind.label(),
        "kind": serde_json::to_value(file.kind)?,
        "dim": m.dim(),
        "top_weight": kind.describe(m.weight(inst.vhat.top)),
        "weights": weights,
        "window": [window.0, window.1],
        "slices": slices,
        "period": inst.period,
        "components": components,
        "irreducible": m.is_irreducible(),
        "integrable": m.is_integrable(),
        "evaluation": is_evaluation(&inst.spec.tau),
        "ideal": inst.spec.ideal().to_string(),
        "annihilator": {"verdict": serde_json::to_value(ann.verdict)?, "detail": ann.detail},
        "warnings": warnings,
        "spec": serde_json::to_value(SpecFile::from_tau_spec(&extracted))?,
    }))
}

fn iso(a: &SpecFile, b: &SpecFile) -> anyhow::Result<Value> {
    if a.algebra != b.algebra {
        bail!("specs are over different algebras: {} and {}", a.algebra.label(), b.algebra.label());
    }
    let alg = Arc::new(build(a.algebra)?);
    let s1 = a.to_tau_spec(&alg)?;
    let s2 = b.to_tau_spec(&alg)?;
    let gprime = iso_check_gprime(&s1, &s2)?;
    let witness = iso_check_g(&alg, &s1, &s2)?;
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "algebra": a.algebra.label(),
        "isomorphic": witness.is_some(),
        "isomorphic_gprime": gprime,
        "witness": serde_json::to_value(witness)?,
    }))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Algebra { command: AlgebraCommand::Info { descriptor, spec } } => {
            let kind = match (descriptor, spec) {
                (Some(d), None) => parse_descriptor(&d)?,
                (None, Some(p)) => read_spec(&p)?.algebra,
                _ => bail!("give exactly one of DESCRIPTOR or --spec"),
            };
            let alg = build(kind)?;
            emit(cli.format, &algebra_info(&alg));
        }
        Command::Module { command: ModuleCommand::Build { spec } } => {
            let file = read_spec(&spec)?;
            emit(cli.format, &module_build(&file, cli.window)?);
        }
        Command::Verify { suites, specs, no_corpus, timings, inject_fault } => {
            let extra = specs
                .iter()
                .map(|p| Ok(CorpusEntry { name: p.display().to_string(), spec: read_spec(p)? }))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let opts = SuiteOptions { window: cli.window, inject_fault, extra, no_corpus };
            let reports = run_suites(&suites, &opts, &|m| progress(m))?;
            let mut failed = 0usize;
            let mut by_check: BTreeMap<String, (usize, usize)> = BTreeMap::new();
            for r in &reports {
                let e = by_check.entry(r.check.clone()).or_default();
                e.0 += 1;
                if !r.ok() {
                    failed += 1;
                    e.1 += 1;
                }
                match cli.format {
                    Format::Json => {
                        let mut v = serde_json::to_value(r)?;
                        if !timings {
                            v.as_object_mut().expect("report object").remove("millis");
                        }
                        println!("{}", serde_json::to_string(&v)?);
                    }
                    Format::Text => {
                        let tag = match (r.ok(), r.expected == r.verdict && !r.passed()) {
                            (true, true) => "CONTROL",
                            (true, false) => "PASS",
                            (false, _) => "FAIL",
                        };
                        let t = if timings { format!(" [{} ms]", r.millis) } else { String::new() };
                        println!("{tag:<8}{:<22}{} : {}{t}", r.check, r.instance, r.detail);
                    }
                }
            }
            for (check, (n, f)) in &by_check {
                progress(&format!("{check}: {} of {n} ok", n - f));
            }
            progress(&format!("{} checks, {failed} unexpected results", reports.len()));
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Iso { specs, files } => {
            let paths: Vec<PathBuf> = specs.into_iter().chain(files).collect();
            if paths.len() != 2 {
                bail!("iso takes exactly two spec files, got {}", paths.len());
            }
            let a = read_spec(&paths[0])?;
            let b = read_spec(&paths[1])?;
            emit(cli.format, &iso(&a, &b)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
