use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use gf2quad::baselines::{self, CherlyTables, CitedCost, Method, MethodCostRow};
use gf2quad::poly;
use gf2quad::solver::{self, reduced_form};
use gf2quad::verify::{self, VerifyOptions};
use gf2quad::{Field, FieldElement, GeneralRoots, SolverTables, XorCostReport};

use crate::{BenchArgs, FieldArgs, Format, Output, SolveArgs, TablesArgs, VerifyArgs};

fn field_from(args: &FieldArgs) -> Result<Field> {
    let field = match args.modulus {
        Some(p) => Field::new(args.m, p),
        None => Field::with_default_modulus(args.m),
    };
    field.with_context(|| format!("invalid field for m = {}", args.m))
}

fn element(field: &Field, name: &str, v: u64) -> Result<FieldElement> {
    field
        .element(v)
        .with_context(|| format!("--{name} {v:#x} does not fit in {} bits", field.m()))
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// `b0(c) + b3(c) = 0` for a criterion row with bits 0 and 3 set.
fn criterion_text(row: u64) -> String {
    let terms: Vec<String> = (0..64)
        .filter(|j| row >> j & 1 == 1)
        .map(|j| format!("b{j}(c)"))
        .collect();
    format!("{} = 0", terms.join(" + "))
}

pub fn tables(args: &TablesArgs) -> Result<ExitCode> {
    let field = field_from(&args.field)?;
    let t = SolverTables::build(&field)?;
    let text = match args.output.format {
        Format::Json => to_json(&t.to_json())?,
        Format::Text => {
            let m = field.m() as usize;
            // I0 is (0 | I0) without its zero column.
            let i0: Vec<String> = reduced_form(m)
                .to_string()
                .lines()
                .map(|l| l.get(2..).unwrap_or("").to_string())
                .collect();
            let mut s = String::new();
            writeln!(s, "{field} ({})", poly::to_hex(field.modulus()))?;
            writeln!(s, "zero row of I0: {}", t.ell_star())?;
            writeln!(s, "solvable iff {}", criterion_text(t.criterion_row()))?;
            writeln!(s, "roots: x0 = w_i with i = P*b(c) (row 0 cleared), x1 = x0 + 1")?;
            writeln!(s)?;
            writeln!(s, "P:")?;
            writeln!(s, "{}", t.p())?;
            writeln!(s)?;
            writeln!(s, "I0:")?;
            writeln!(s, "{}", i0.join("\n"))?;
            writeln!(s)?;
            writeln!(s, "B:")?;
            writeln!(s, "{}", t.b())?;
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SolveReport {
    pub m: u32,
    pub modulus_hex: String,
    pub c: String,
    pub solvable: bool,
    pub syndrome: String,
    pub roots: Vec<String>,
    pub cost: XorCostReport,
    pub check_xors: u64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GeneralReport {
    pub m: u32,
    pub modulus_hex: String,
    pub a: String,
    pub b: String,
    pub d: String,
    /// `all`, `none`, `single`, `double` or `pair`.
    pub kind: String,
    pub roots: Vec<String>,
}

pub fn solve(args: &SolveArgs) -> Result<ExitCode> {
    let field = field_from(&args.field)?;
    let t = SolverTables::build(&field)?;
    let modulus_hex = poly::to_hex(field.modulus());

    let (text, solvable) = if let Some(c) = args.c {
        let c = element(&field, "c", c)?;
        let (out, cost) = t.solve_with_cost(c)?;
        let (_, check) = t.is_solvable_with_cost(c)?;
        let report = SolveReport {
            m: field.m(),
            modulus_hex,
            c: c.to_string(),
            solvable: out.solvable,
            syndrome: format!("{:#04x}", out.syndrome),
            roots: out
                .roots
                .map(|(a, b)| vec![a.to_string(), b.to_string()])
                .unwrap_or_default(),
            cost,
            check_xors: check.sequential_xors,
        };
        let text = match args.output.format {
            Format::Json => to_json(&report)?,
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "{field}")?;
                writeln!(s, "x^2 + x + {}", report.c)?;
                if report.solvable {
                    writeln!(s, "roots: {}", report.roots.join(", "))?;
                } else {
                    writeln!(s, "no roots")?;
                }
                writeln!(s, "syndrome: {}", report.syndrome)?;
                writeln!(s, "solvability check: {} XORs", report.check_xors)?;
                writeln!(
                    s,
                    "root extraction: {} XORs, depth {}, {} columns summed",
                    cost.sequential_xors, cost.depth, cost.columns_summed
                )?;
                s
            }
        };
        (text, out.solvable)
    } else {
        let (Some(a), Some(b), Some(d)) = (args.a, args.b, args.d) else {
            bail!("give either --c or all of --a, --b, --d");
        };
        let (a, b, d) = (
            element(&field, "a", a)?,
            element(&field, "b", b)?,
            element(&field, "d", d)?,
        );
        let roots = t.solve_general(a, b, d)?;
        let kind = match roots {
            GeneralRoots::AllElements => "all",
            GeneralRoots::NoRoots => "none",
            GeneralRoots::Single(_) => "single",
            GeneralRoots::Double(_) => "double",
            GeneralRoots::Pair(..) => "pair",
        };
        let report = GeneralReport {
            m: field.m(),
            modulus_hex,
            a: a.to_string(),
            b: b.to_string(),
            d: d.to_string(),
            kind: kind.into(),
            roots: roots.distinct().iter().map(|r| r.to_string()).collect(),
        };
        let text = match args.output.format {
            Format::Json => to_json(&report)?,
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "{field}")?;
                writeln!(s, "{}*y^2 + {}*y + {}", report.a, report.b, report.d)?;
                match roots {
                    GeneralRoots::AllElements => writeln!(s, "every element is a root")?,
                    GeneralRoots::NoRoots => writeln!(s, "no roots")?,
                    GeneralRoots::Double(y) => writeln!(s, "double root: {y}")?,
                    _ => writeln!(s, "roots: {}", report.roots.join(", "))?,
                }
                s
            }
        };
        (text, roots != GeneralRoots::NoRoots)
    };
    emit(&args.output, &text)?;
    Ok(if solvable {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let degrees = match args.m {
        Some(m) => vec![m],
        None => (gf2quad::field::MIN_DEGREE..=args.exhaustive_limit.max(gf2quad::field::MIN_DEGREE)).collect(),
    };
    let report = verify::run(&VerifyOptions {
        degrees,
        modulus: args.modulus,
        exhaustive_limit: args.exhaustive_limit,
        inject_fault: args.inject_fault,
    })?;
    let text = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = String::new();
            for suite in &report.suites {
                let scope = suite.m.map(|m| format!("m={m} ")).unwrap_or_default();
                writeln!(
                    s,
                    "{scope}{}: {} ({} passed, {} failed)",
                    suite.suite,
                    if suite.ok() { "pass" } else { "FAIL" },
                    suite.passed,
                    suite.failed
                )?;
            }
            let failed = report.suites.iter().filter(|s| !s.ok()).count();
            writeln!(s, "{} suites, {failed} failed", report.suites.len())?;
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    #[serde(flatten)]
    pub cost: MethodCostRow,
    pub ns_median: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub m: u32,
    pub rows: Vec<BenchRow>,
    pub cited: Vec<CitedCost>,
}

const TIMING_ROUNDS: usize = 11;
const CHIEN_TIMED_CALLS: usize = 5;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    v[v.len() / 2]
}

/// Median over rounds of the mean per-call time across `inputs`.
fn time_per_call<T>(inputs: &[FieldElement], mut f: impl FnMut(FieldElement) -> T) -> f64 {
    let rounds = (0..TIMING_ROUNDS)
        .map(|_| {
            let start = Instant::now();
            for &c in inputs {
                std::hint::black_box(f(std::hint::black_box(c)));
            }
            start.elapsed().as_nanos() as f64 / inputs.len() as f64
        })
        .collect();
    median(rounds)
}

fn random_solvable(field: &Field, n: usize, seed: u64) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let c = field
            .element(rng.gen::<u64>() & field.mask() as u64)
            .expect("masked");
        if field.trace(c).expect("same field") == 0 {
            out.push(c);
        }
    }
    out
}

pub fn bench_report(field: &Field, samples: usize, seed: u64) -> Result<BenchReport> {
    let t = SolverTables::build(field)?;
    let sample = random_solvable(field, samples.max(1), seed);
    let rows = baselines::compare_methods(&t, &sample)?;
    let cherly = CherlyTables::canonical(field);

    let rows = rows
        .into_iter()
        .map(|cost| {
            let ns_median = if !cost.applicable {
                None
            } else {
                Some(match cost.method {
                    Method::Proposed => time_per_call(&sample, |c| t.solve_reduced(c)),
                    Method::ProposedCheck => time_per_call(&sample, |c| t.is_solvable(c)),
                    Method::HalfTrace => {
                        time_per_call(&sample, |c| baselines::half_trace_root(field, c))
                    }
                    Method::Cherly => {
                        time_per_call(&sample, |c| baselines::cherly_root(field, &cherly, c))
                    }
                    Method::TraceCheck => time_per_call(&sample, |c| field.trace(c)),
                    Method::Chien => {
                        let calls = sample
                            .iter()
                            .take(CHIEN_TIMED_CALLS)
                            .map(|&c| {
                                let coeffs = baselines::reduced_coeffs(field, c);
                                let start = Instant::now();
                                std::hint::black_box(baselines::chien_roots(field, &coeffs).ok());
                                start.elapsed().as_nanos() as f64
                            })
                            .collect();
                        median(calls)
                    }
                })
            };
            BenchRow { cost, ns_median }
        })
        .collect();
    Ok(BenchReport {
        m: field.m(),
        rows,
        cited: baselines::cited_costs(field.m()),
    })
}

fn opt(v: Option<u64>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

pub fn bench(args: &BenchArgs) -> Result<ExitCode> {
    let field = field_from(&args.field)?;
    let report = bench_report(&field, args.samples, args.seed)?;
    let text = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let m = field.m();
            let mut s = String::new();
            writeln!(s, "{field}, {} solvable samples", args.samples.max(1))?;
            writeln!(
                s,
                "{:<15} {:>8} {:>8} {:>8} {:>8} {:>14}",
                "method", "adds", "muls", "exps", "xors", "ns/solve"
            )?;
            for row in &report.rows {
                let c = &row.cost;
                if !c.applicable {
                    writeln!(s, "{:<15} inapplicable", c.method.name())?;
                    continue;
                }
                writeln!(
                    s,
                    "{:<15} {:>8} {:>8} {:>8} {:>8} {:>14.1}",
                    c.method.name(),
                    opt(c.adds),
                    opt(c.muls),
                    opt(c.exps),
                    opt(c.xors),
                    row.ns_median.unwrap_or(f64::NAN)
                )?;
                if let Some(alt) = c.adds_table_convention {
                    writeln!(s, "{:<15} adds under published convention: {alt}", "")?;
                }
            }
            writeln!(
                s,
                "bounds: proposed <= {} XORs, check <= {} XORs, depth <= {}",
                solver::xor_bound(m),
                m - 1,
                solver::depth_bound(m)
            )?;
            for cited in report.cited.iter().filter(|c| c.applicable) {
                let rel = if cited.lower_bound { ">" } else { "" };
                writeln!(
                    s,
                    "cited {}: adds {rel}{}, muls {}, exps {rel}{}",
                    cited.method,
                    opt(cited.adds),
                    opt(cited.muls),
                    opt(cited.exps)
                )?;
            }
            s
        }
    };
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}
