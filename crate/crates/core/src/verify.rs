//! Self-check harness: every invariant suite over a range of fields, with
//! per-suite pass/fail counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{self, CherlyTables};
use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::fixtures;
use crate::reed_muller;
use crate::solver::{self, SolverTables};
use crate::BitMatrix;

pub const DEFAULT_EXHAUSTIVE_LIMIT: u32 = 16;
pub const CHIEN_LIMIT: u32 = 12;
pub const RM_IDENTITY_LIMIT: u32 = 10;
pub const BASELINE_LIMIT: u32 = 11;
/// Elements drawn per field when `m` exceeds the exhaustive limit.
pub const SAMPLE_SIZE: usize = 4096;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub degrees: Vec<u32>,
    /// Fields with default moduli; `None` uses the built-in table.
    pub modulus: Option<u64>,
    pub exhaustive_limit: u32,
    /// Flip one bit of `P` after construction (negative control).
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            degrees: (2..=DEFAULT_EXHAUSTIVE_LIMIT).collect(),
            modulus: None,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub m: Option<u32>,
    pub passed: u64,
    pub failed: u64,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

#[derive(Default)]
struct Counter {
    passed: u64,
    failed: u64,
}

impl Counter {
    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn finish(self, suite: &str, m: Option<u32>) -> SuiteResult {
        SuiteResult {
            suite: suite.to_string(),
            m,
            passed: self.passed,
            failed: self.failed,
        }
    }
}

/// Deterministic element sample (SplitMix64) for fields too large to
/// enumerate. Always includes 0 and 1.
pub fn sample_elements(field: &Field, n: usize, seed: u64) -> Vec<FieldElement> {
    let mut state = seed ^ field.modulus();
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut out = vec![field.zero(), field.one()];
    out.extend((2..n).map(|_| {
        field
            .element(next() & field.mask() as u64)
            .expect("masked to m bits")
    }));
    out
}

fn field_suites(field: Field, exhaustive: bool, inject_fault: bool) -> Result<Vec<SuiteResult>> {
    let m = field.m();
    let mut tables = SolverTables::build(&field)?;
    if inject_fault {
        // A flip in a column whose B row is zero leaves P valid, so aim at
        // one that is not.
        let col = (0..m as usize)
            .find(|&j| tables.b().row(j) != 0)
            .expect("B is nonzero");
        tables.corrupt_p(1, col);
    }
    let elements: Vec<FieldElement> = if exhaustive {
        field.elements().collect()
    } else {
        sample_elements(&field, SAMPLE_SIZE, 0x5eed)
    };
    let mut out = Vec::new();
    let tag = Some(m);

    let mut identity = Counter::default();
    identity.check(tables.p().mul(tables.b())? == solver::reduced_form(m as usize));
    identity.check(tables.p().is_invertible());
    out.push(identity.finish("tables-identity", tag));

    let mut vs_trace = Counter::default();
    let mut substitution = Counter::default();
    let mut xor_bound = Counter::default();
    let mut check_cost = Counter::default();
    let mut solvable_count = 0u64;
    for &c in &elements {
        let (outcome, cost) = tables.solve_with_cost(c)?;
        let (check, ccost) = tables.is_solvable_with_cost(c)?;
        let trace_zero = field.trace(c)? == 0;
        vs_trace.check(outcome.solvable == trace_zero && check == trace_zero);
        solvable_count += outcome.solvable as u64;
        if let Some((x0, x1)) = outcome.roots {
            let f = |x: FieldElement| field.square(x).map(|s| s + x + c);
            substitution.check(
                f(x0)?.is_zero() && f(x1)?.is_zero() && x0 + x1 == field.one() && x0.bit(0) == 0,
            );
        }
        xor_bound.check(
            cost.sequential_xors <= solver::xor_bound(m) && cost.depth <= solver::depth_bound(m),
        );
        check_cost.check(
            ccost.sequential_xors < m as u64 && ccost.depth <= solver::depth_bound(m),
        );
    }
    out.push(vs_trace.finish("solver-vs-trace", tag));
    out.push(substitution.finish("root-substitution", tag));
    out.push(xor_bound.finish("xor-bound", tag));
    out.push(check_cost.finish("check-cost", tag));
    if exhaustive {
        let mut count = Counter::default();
        count.check(solvable_count == field.order() / 2);
        out.push(count.finish("solvable-count", tag));
    }

    if exhaustive && m <= CHIEN_LIMIT {
        let mut chien = Counter::default();
        for &c in &elements {
            let oracle = baselines::chien_roots(&field, &baselines::reduced_coeffs(&field, c))?;
            let got: std::collections::BTreeSet<_> = tables
                .solve_reduced(c)?
                .roots
                .map(|(a, b)| [a, b].into_iter().collect())
                .unwrap_or_default();
            chien.check(oracle == got);
        }
        out.push(chien.finish("solver-vs-chien", tag));
    }

    if m <= RM_IDENTITY_LIMIT {
        let mut frob = Counter::default();
        for j in 0..m {
            frob.check(reed_muller::verify_frobenius_rows(&field, 1 << j)?);
        }
        out.push(frob.finish("rm-evaluation-identity", tag));

        let mut message = Counter::default();
        let probes = [field.zero(), field.one(), field.alpha(), field.element(field.order() - 1)?];
        for c in probes {
            for bit in 0..m {
                message.check(reed_muller::verify_message_polynomial(&field, c, bit)?);
            }
        }
        out.push(message.finish("rm-message-polynomial", tag));
    }

    if exhaustive && m <= BASELINE_LIMIT {
        let mut agree = Counter::default();
        let pre = CherlyTables::canonical(&field);
        for &c in &elements {
            let Some((x0, x1)) = tables.solve_reduced(c)?.roots else {
                continue;
            };
            if field.trace(c)? != 0 {
                // Faulty tables can claim roots for unsolvable c.
                agree.check(false);
                continue;
            }
            let r = baselines::cherly_root(&field, &pre, c)?;
            agree.check(r == x0 || r == x1);
            if m % 2 == 1 {
                let h = baselines::half_trace_root(&field, c)?;
                agree.check(h == x0 || h == x1);
            }
        }
        out.push(agree.finish("baseline-agreement", tag));
    }
    Ok(out)
}

fn fixture_suites() -> Result<Vec<SuiteResult>> {
    let f7 = Field::new(7, fixtures::MODULUS_M7)?;
    let mut b = Counter::default();
    b.check(solver::build_b(&f7) == fixtures::b_m7());
    let mut p = Counter::default();
    p.check(fixtures::p_m7().mul(&fixtures::b_m7())? == solver::reduced_form(7));
    let mut table = Counter::default();
    for (m, modulus, grid) in fixtures::table_p_fixtures() {
        let field = Field::new(m, modulus)?;
        table.check(SolverTables::with_p(&field, BitMatrix::from_grid(&grid)?).is_ok());
    }
    Ok(vec![
        b.finish("fixture B (m=7, x^7+x^3+1)", None),
        p.finish("fixture P (m=7) annihilates B to (0|I0)", None),
        table.finish("fixture P (m=3..8) accepted", None),
    ])
}

pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    let fields = options
        .degrees
        .iter()
        .map(|&m| match options.modulus {
            Some(p) => Field::new(m, p),
            None => Field::with_default_modulus(m),
        })
        .collect::<Result<Vec<_>>>()?;
    let per_field: Vec<Vec<SuiteResult>> = fields
        .par_iter()
        .map(|&f| field_suites(f, f.m() <= options.exhaustive_limit, options.inject_fault))
        .collect::<Result<_>>()?;
    let mut suites = fixture_suites()?;
    suites.extend(per_field.into_iter().flatten());
    Ok(VerifyReport { suites })
}
