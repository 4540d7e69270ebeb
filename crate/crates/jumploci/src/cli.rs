//! Command-line surface. File-based JSON inputs, deterministic seeded
//! sampling, exit code 0 exactly when every requested check passes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::cdga::{cdga_from_json, chevalley_eilenberg, Cdga};
use crate::conn::{in_f1, is_flat, segre, sweep_coordinate_planes, GOneForm};
use crate::exactnum::{Matrix, Rat};
use crate::jsonutil::{format_rat, parse_rat, parse_rat_str};
use crate::liealg::{lie_from_json, sl2};
use crate::polyz::{bundle_from_json, charvar};
use crate::reson::{germ_report, pi_membership, sl2_irrep, twisted_dims, Sl2Rep};
use crate::reson::{h1_basis, trivial_resonance, TrivialVerdict};
use crate::sampling::{thread_cap, Sampler};
use crate::verify::{run_suite, SuiteResult, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "jumploci", about = "Exact jump loci of Lie algebras and torus-bundle groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Exactly one source for a CDGA: a Lie algebra file (Chevalley-Eilenberg
/// complex is taken) or a direct CDGA file.
#[derive(Args)]
struct AlgebraInput {
    /// Lie algebra JSON file; its Chevalley-Eilenberg algebra is used
    #[arg(long, value_name = "FILE", conflicts_with = "cdga")]
    lie: Option<PathBuf>,
    /// CDGA JSON file
    #[arg(long, value_name = "FILE")]
    cdga: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of a CDGA or Chevalley-Eilenberg algebra
    Betti {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Germ of the sl2 resonance variety at the trivial connection
    Resonance {
        #[command(flatten)]
        input: AlgebraInput,
        /// irreducible summand dimensions, e.g. "2" or "2,2"
        #[arg(long, default_value = "2")]
        rep: String,
        /// report a single degree instead of all of them
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// scaling probes per degree
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Flatness of an sl2-valued one-form on a CDGA
    McCheck {
        #[command(flatten)]
        input: AlgebraInput,
        /// one-form JSON: {"matrix": [[h, xp, xm], ...]}, one row per
        /// degree-one basis element
        #[arg(long, value_name = "FILE")]
        form: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Sweep all coordinate planes of the representation variety of a
    /// metabelian algebra into sl2
    RepScan {
        /// Jordan data "lambda:size,...", e.g. "2:1,3:1"
        #[arg(long)]
        jordan: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Sample the decomposable locus with singular rep image and test
    /// that twisted cohomology jumps wherever the Betti numbers allow
    PiLocus {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long, default_value = "2")]
        rep: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Rank-one characteristic variety of a torus-bundle group
    Charvar {
        /// bundle JSON: {"n": 2, "matrix": [[2,1],[1,1]]}
        #[arg(long, value_name = "FILE")]
        bundle: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Decide (or probabilistically support) triviality of the rank-one
    /// resonance variety in one degree
    Certify {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        /// sampled lines when no certificate is available
        #[arg(long, default_value_t = 40)]
        samples: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run a verification suite ("all" for every suite)
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn load_json(path: &PathBuf) -> Result<Value, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{} is not JSON: {e}", path.display()))
}

fn load_cdga(input: &AlgebraInput) -> Result<Cdga, String> {
    match (&input.lie, &input.cdga) {
        (Some(p), None) => {
            let h = lie_from_json(&load_json(p)?).map_err(|e| e.to_string())?;
            Ok(chevalley_eilenberg(&h))
        }
        (None, Some(p)) => cdga_from_json(&load_json(p)?).map_err(|e| e.to_string()),
        _ => Err("exactly one of --lie or --cdga is required".into()),
    }
}

fn parse_rep(list: &str) -> Result<Sl2Rep, String> {
    let mut rep: Option<Sl2Rep> = None;
    for part in list.split(',') {
        let m: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad summand dimension {part:?}"))?;
        if m == 0 {
            return Err("summand dimensions must be positive".into());
        }
        let next = sl2_irrep(m);
        rep = Some(match rep {
            None => next,
            Some(r) => r.direct_sum(&next),
        });
    }
    rep.ok_or_else(|| "empty representation list".into())
}

fn parse_jordan(list: &str) -> Result<Vec<(Rat, usize)>, String> {
    let mut out = Vec::new();
    for part in list.split(',') {
        let (l, r) = part
            .split_once(':')
            .ok_or_else(|| format!("expected lambda:size, got {part:?}"))?;
        let lambda = parse_rat_str(l.trim())?;
        let size: usize = r.trim().parse().map_err(|_| format!("bad block size {r:?}"))?;
        if size == 0 {
            return Err("block sizes must be positive".into());
        }
        out.push((lambda, size));
    }
    if out.is_empty() {
        return Err("empty Jordan data".into());
    }
    Ok(out)
}

fn form_from_json(v: &Value, rows: usize) -> Result<GOneForm, String> {
    let arr = v["matrix"]
        .as_array()
        .ok_or_else(|| "one-form file needs a \"matrix\" array".to_string())?;
    if arr.len() != rows {
        return Err(format!("one-form has {} rows, algebra has {rows} degree-one generators", arr.len()));
    }
    let mut mat = Matrix::zero(rows, 3);
    for (i, row) in arr.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| format!("row {i} must have 3 entries (H, X+, X-)"))?;
        for (j, e) in row.iter().enumerate() {
            mat[(i, j)] = parse_rat(e)?;
        }
    }
    Ok(GOneForm { mat })
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Betti { input, format } => {
            let a = load_cdga(&input)?;
            let betti = a.betti();
            match format {
                Format::Table => {
                    let row: Vec<String> = betti.iter().map(usize::to_string).collect();
                    println!("{}", row.join(" "));
                }
                Format::Json => println!("{}", json!({ "betti": betti })),
            }
            Ok(0)
        }
        Command::Resonance { input, rep, degree, seed, samples, format } => {
            let a = load_cdga(&input)?;
            let theta = parse_rep(&rep)?;
            let reports = germ_report(&a, &theta, seed, samples);
            let selected: Vec<_> = reports
                .into_iter()
                .filter(|r| degree.map_or(true, |d| r.degree == d))
                .collect();
            if selected.is_empty() {
                return Err(format!("degree out of range (top degree {})", a.top_degree()));
            }
            match format {
                Format::Table => {
                    for r in &selected {
                        println!("degree {}: {}", r.degree, r.verdict);
                        if !r.resonance_points.is_empty() {
                            println!("  resonance points on the H^1 line: {}",
                                r.resonance_points.join(", "));
                        }
                    }
                }
                Format::Json => {
                    let arr: Vec<Value> = selected.iter().map(|r| r.to_json()).collect();
                    println!("{}", Value::Array(arr));
                }
            }
            Ok(0)
        }
        Command::McCheck { input, form, format } => {
            let a = load_cdga(&input)?;
            let omega = form_from_json(&load_json(&form)?, a.dim(1))?;
            let g = sl2();
            let flat = is_flat(&a, &g, &omega).map_err(|e| e.to_string())?;
            let rank_one = in_f1(&a, &omega);
            match format {
                Format::Table => {
                    println!("flat: {flat}");
                    println!("rank one: {rank_one}");
                }
                Format::Json => println!("{}", json!({ "flat": flat, "rank_one": rank_one })),
            }
            Ok(if flat { 0 } else { 1 })
        }
        Command::RepScan { jordan, format } => {
            let data = parse_jordan(&jordan)?;
            let sweep = sweep_coordinate_planes(&data);
            match format {
                Format::Table => {
                    println!("planes swept: {}", sweep.planes);
                    println!("family lines: {}", sweep.family_lines);
                    if sweep.violations.is_empty() {
                        println!("violations: none");
                    } else {
                        for v in &sweep.violations {
                            println!("violation: {v}");
                        }
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "planes": sweep.planes,
                        "family_lines": sweep.family_lines,
                        "violations": sweep.violations,
                    })
                ),
            }
            Ok(if sweep.violations.is_empty() { 0 } else { 1 })
        }
        Command::PiLocus { input, rep, seed, samples, format } => {
            let a = load_cdga(&input)?;
            let theta = parse_rep(&rep)?;
            let betti = a.betti();
            let kernel = h1_basis(&a);
            let mut s = Sampler::new(seed);
            let mut checked = 0usize;
            let mut failures: Vec<Value> = Vec::new();
            for _ in 0..samples {
                let eta = if kernel.is_empty() {
                    vec![Rat::zero(); a.dim(1)]
                } else {
                    let coeffs = s.vec(kernel.len());
                    let mut e = vec![Rat::zero(); a.dim(1)];
                    for (v, c) in kernel.iter().zip(&coeffs) {
                        for (o, x) in e.iter_mut().zip(v) {
                            *o += c.clone() * x.clone();
                        }
                    }
                    e
                };
                // nilpotent image: a^2 + bc = 0
                let x = s.rat();
                let b = s.nonzero_rat();
                let g = vec![x.clone(), b.clone(), -(x.clone() * x) / b];
                let omega = segre(&eta, &g);
                let member = pi_membership(&a, &theta, &omega);
                let dims = twisted_dims(&a, &theta, &omega).map_err(|e| e.to_string())?;
                let jumps = (0..=a.top_degree())
                    .all(|i| betti[i] == 0 || dims[i] >= 1);
                checked += 1;
                if !(member && jumps) {
                    failures.push(json!({
                        "eta": eta.iter().map(format_rat).collect::<Vec<_>>(),
                        "g": g.iter().map(format_rat).collect::<Vec<_>>(),
                        "member": member,
                        "twisted_dims": dims,
                    }));
                }
            }
            let ok = failures.is_empty();
            match format {
                Format::Table => {
                    println!("sampled points: {checked}");
                    if ok {
                        println!("all points resonate in every degree with nonzero Betti number");
                    } else {
                        println!("failures: {}", serde_json::to_string_pretty(&failures).unwrap());
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({ "samples": checked, "passed": ok, "failures": failures })
                ),
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Charvar { bundle, degree, format } => {
            let g = bundle_from_json(&load_json(&bundle)?).map_err(|e| e.to_string())?;
            let v = charvar(&g, degree).map_err(|e| e.to_string())?;
            match format {
                Format::Table => {
                    let report = v.to_json();
                    println!("degree {degree}:");
                    for p in report["points"].as_array().unwrap() {
                        println!("  chi = {}, lambda = {} [{}]",
                            p["chi"], p["lambda"], p["provenance"].as_str().unwrap());
                    }
                }
                Format::Json => println!("{}", v.to_json()),
            }
            Ok(0)
        }
        Command::Certify { input, degree, seed, samples, format } => {
            let a = load_cdga(&input)?;
            if degree > a.top_degree() {
                return Err(format!("degree out of range (top degree {})", a.top_degree()));
            }
            let verdict = trivial_resonance(&a, degree, seed, samples);
            let (label, lines) = match &verdict {
                TrivialVerdict::CertifiedTrivial => ("certified-trivial", 0),
                TrivialVerdict::CertifiedNontrivial => ("certified-nontrivial", 0),
                TrivialVerdict::ProbabilisticallyTrivial(n) => ("probabilistically-trivial", *n),
            };
            match format {
                Format::Table => {
                    if lines > 0 {
                        println!("{label} ({lines} resonance-free sampled lines)");
                    } else {
                        println!("{label}");
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({ "degree": degree, "verdict": label, "sampled_lines": lines })
                ),
            }
            Ok(0)
        }
        Command::Verify { suite, seed, format } => {
            let results = if suite == "all" {
                run_suites_parallel(seed)
            } else {
                vec![run_suite(&suite, seed).ok_or_else(|| {
                    format!("unknown suite {suite:?}; available: all, {}", SUITE_NAMES.join(", "))
                })?]
            };
            let all_passed = results.iter().all(|r| r.passed);
            match format {
                Format::Table => {
                    for r in &results {
                        let tag = if r.passed { "pass" } else { "FAIL" };
                        println!("{tag} {}: {}", r.name, r.detail);
                    }
                }
                Format::Json => {
                    let arr: Vec<Value> = results
                        .iter()
                        .map(|r| json!({ "suite": r.name, "passed": r.passed, "detail": r.detail }))
                        .collect();
                    println!("{}", json!({ "passed": all_passed, "suites": arr }));
                }
            }
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

/// Fan the suites out over at most JUMPLOCI_THREADS workers; results are
/// re-sorted into registry order, so the report is order-independent.
fn run_suites_parallel(seed: u64) -> Vec<SuiteResult> {
    let workers = thread_cap().min(SUITE_NAMES.len()).max(1);
    let mut indexed: Vec<(usize, SuiteResult)> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for (i, name) in SUITE_NAMES.iter().enumerate() {
                    if i % workers == w {
                        out.push((i, run_suite(name, seed).expect("registered suite")));
                    }
                }
                out
            }));
        }
        for h in handles {
            indexed.extend(h.join().expect("suite worker"));
        }
    });
    indexed.sort_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, r)| r).collect()
}
