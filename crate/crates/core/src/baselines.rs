//! Classical root finders for `x^2 + x + c`, used as oracles and as the
//! comparison set for operation counting.
//!
//! Every method is written against [`FieldOps`] so the same code runs
//! uninstrumented for cross-checks and through a [`TalliedField`] for cost
//! rows.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldOps, OpTally, TalliedField};
use crate::solver::SolverTables;

/// Largest `m` for which `compare_methods` runs the exhaustive search.
pub const CHIEN_COMPARE_MAX_DEGREE: u32 = 24;

fn check(field: &Field, a: &FieldElement) -> Result<()> {
    if field.contains(a) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

fn chien_with<F: FieldOps>(ops: &F, coeffs: &[FieldElement]) -> Result<BTreeSet<FieldElement>> {
    let field = ops.field();
    let Some((&constant, rest)) = coeffs.split_first() else {
        return Err(Error::Precondition("polynomial needs at least one coefficient"));
    };
    for c in coeffs {
        check(&field, c)?;
    }
    let one = field.one();
    let mut roots = BTreeSet::new();
    for x in field.elements() {
        let mut acc = constant;
        let mut power = x;
        for (k, &coeff) in rest.iter().enumerate() {
            let degree = k + 1;
            if degree == 2 {
                power = ops.square(x)?;
            } else if degree > 2 {
                power = ops.mul(power, x)?;
            }
            if coeff.is_zero() {
                continue;
            }
            let term = if coeff == one { power } else { ops.mul(coeff, power)? };
            acc = ops.add(acc, term)?;
        }
        if acc.is_zero() {
            roots.insert(x);
        }
    }
    Ok(roots)
}

/// Exhaustive root search; `coeffs[k]` multiplies `x^k`.
pub fn chien_roots(field: &Field, coeffs: &[FieldElement]) -> Result<BTreeSet<FieldElement>> {
    chien_with(field, coeffs)
}

/// [`chien_roots`] with operation counts. Squaring counts as a
/// multiplication; unit coefficients are not multiplied.
pub fn chien_roots_tallied(
    field: &Field,
    coeffs: &[FieldElement],
) -> Result<(BTreeSet<FieldElement>, OpTally)> {
    let ops = TalliedField::new(*field);
    let roots = chien_with(&ops, coeffs)?;
    Ok((roots, ops.tally()))
}

/// Coefficients `(c, 1, 1)` of `x^2 + x + c`.
pub fn reduced_coeffs(field: &Field, c: FieldElement) -> [FieldElement; 3] {
    [c, field.one(), field.one()]
}

fn half_trace_with<F: FieldOps>(ops: &F, c: FieldElement) -> Result<FieldElement> {
    let field = ops.field();
    check(&field, &c)?;
    if field.m().is_multiple_of(2) {
        return Err(Error::Precondition("half-trace needs odd m"));
    }
    if field.trace(c)? != 0 {
        return Err(Error::Precondition("trace(c) must be 0"));
    }
    // Σ c^(2^j) over even j in 0..m
    let mut acc = c;
    let mut t = c;
    for _ in 0..(field.m() - 1) / 2 {
        t = ops.frobenius(t, 2)?;
        acc = ops.add(acc, t)?;
    }
    Ok(acc)
}

/// Half-trace root for odd `m`.
pub fn half_trace_root(field: &Field, c: FieldElement) -> Result<FieldElement> {
    half_trace_with(field, c)
}

pub fn half_trace_root_tallied(field: &Field, c: FieldElement) -> Result<(FieldElement, OpTally)> {
    let ops = TalliedField::new(*field);
    let x = half_trace_with(&ops, c)?;
    Ok((x, ops.tally()))
}

/// Addition count for the half-trace under the published convention,
/// `(m - 3) / 2`, which is one fewer than the `(m - 1) / 2` additions
/// actually performed.
pub fn half_trace_table_adds(m: u32) -> u64 {
    (m.saturating_sub(3) / 2) as u64
}

/// Smallest-index element with trace 1.
pub fn find_trace_one_element(field: &Field) -> FieldElement {
    field
        .elements()
        .find(|&u| field.trace(u).expect("same field") == 1)
        .expect("trace is onto GF(2)")
}

/// Per-field precomputation for the trace-one method: partial sums
/// `U_j = Σ_{ℓ<j} u^(2^ℓ)` for `j = 1..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherlyTables {
    u: FieldElement,
    partial_sums: Vec<FieldElement>,
}

impl CherlyTables {
    pub fn new(field: &Field, u: FieldElement) -> Result<Self> {
        check(field, &u)?;
        if field.trace(u)? != 1 {
            return Err(Error::Precondition("trace(u) must be 1"));
        }
        // partial_sums[j] = U_j, index 0 unused.
        let mut partial_sums = Vec::with_capacity(field.m() as usize);
        partial_sums.push(field.zero());
        let (mut sum, mut power) = (field.zero(), u);
        for _ in 1..field.m() {
            sum = sum + power;
            partial_sums.push(sum);
            power = field.square(power)?;
        }
        Ok(Self { u, partial_sums })
    }

    pub fn canonical(field: &Field) -> Self {
        Self::new(field, find_trace_one_element(field)).expect("u has trace 1")
    }

    pub fn u(&self) -> FieldElement {
        self.u
    }
}

fn cherly_with<F: FieldOps>(ops: &F, pre: &CherlyTables, c: FieldElement) -> Result<FieldElement> {
    let field = ops.field();
    check(&field, &c)?;
    check(&field, &pre.u)?;
    if field.trace(c)? != 0 {
        return Err(Error::Precondition("trace(c) must be 0"));
    }
    let mut acc: Option<FieldElement> = None;
    let mut t = c;
    for j in 1..field.m() as usize {
        t = ops.frobenius(t, 1)?;
        let term = ops.mul(t, pre.partial_sums[j])?;
        acc = Some(match acc {
            None => term,
            Some(a) => ops.add(a, term)?,
        });
    }
    Ok(acc.unwrap_or_else(|| field.zero()))
}

/// Root of `x^2 + x + c` as `Σ_{j=1}^{m-1} c^(2^j) · U_j` for a trace-one `u`.
pub fn cherly_root(field: &Field, pre: &CherlyTables, c: FieldElement) -> Result<FieldElement> {
    cherly_with(field, pre, c)
}

pub fn cherly_root_tallied(
    field: &Field,
    pre: &CherlyTables,
    c: FieldElement,
) -> Result<(FieldElement, OpTally)> {
    let ops = TalliedField::new(*field);
    let x = cherly_with(&ops, pre, c)?;
    Ok((x, ops.tally()))
}

fn trace_check_with<F: FieldOps>(ops: &F, c: FieldElement) -> Result<bool> {
    let field = ops.field();
    check(&field, &c)?;
    let mut acc = c;
    let mut t = c;
    for _ in 1..field.m() {
        t = ops.frobenius(t, 1)?;
        acc = ops.add(acc, t)?;
    }
    Ok(acc.is_zero())
}

/// Classical solvability test `Tr(c) = 0` with operation counts.
pub fn trace_check_tallied(field: &Field, c: FieldElement) -> Result<(bool, OpTally)> {
    let ops = TalliedField::new(*field);
    let ok = trace_check_with(&ops, c)?;
    Ok((ok, ops.tally()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Chien,
    HalfTrace,
    Cherly,
    TraceCheck,
    Proposed,
    ProposedCheck,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Chien => "chien",
            Method::HalfTrace => "half-trace",
            Method::Cherly => "cherly",
            Method::TraceCheck => "trace-check",
            Method::Proposed => "proposed",
            Method::ProposedCheck => "proposed-check",
        }
    }
}

/// Worst-case tallies of one method over a sample of `c` values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodCostRow {
    pub method: Method,
    pub adds: Option<u64>,
    pub muls: Option<u64>,
    pub exps: Option<u64>,
    pub xors: Option<u64>,
    pub applicable: bool,
    /// Additions under the published counting convention, where it differs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adds_table_convention: Option<u64>,
}

impl MethodCostRow {
    fn inapplicable(method: Method) -> Self {
        Self {
            method,
            adds: None,
            muls: None,
            exps: None,
            xors: None,
            applicable: false,
            adds_table_convention: None,
        }
    }

    fn from_tallies(method: Method, tallies: &[OpTally]) -> Self {
        let max = |f: fn(&OpTally) -> u64| tallies.iter().map(f).max();
        Self {
            method,
            adds: max(|t| t.adds),
            muls: max(|t| t.muls),
            exps: max(|t| t.exps),
            xors: None,
            applicable: !tallies.is_empty(),
            adds_table_convention: None,
        }
    }
}

/// Runs every applicable method on `sample` under instrumentation. Root
/// finders only see the solvable members; if none are solvable `c = 0` is
/// used. The exhaustive search runs once (its cost does not depend on `c`)
/// and is skipped above [`CHIEN_COMPARE_MAX_DEGREE`].
pub fn compare_methods(tables: &SolverTables, sample: &[FieldElement]) -> Result<Vec<MethodCostRow>> {
    let field = *tables.field();
    let m = field.m();
    for c in sample {
        check(&field, c)?;
    }
    let mut solvable: Vec<FieldElement> = Vec::new();
    for &c in sample {
        if field.trace(c)? == 0 {
            solvable.push(c);
        }
    }
    if solvable.is_empty() {
        solvable.push(field.zero());
    }
    let all: &[FieldElement] = if sample.is_empty() { &solvable } else { sample };

    let mut rows = Vec::new();

    if m <= CHIEN_COMPARE_MAX_DEGREE {
        let c = all[0];
        let (_, t) = chien_roots_tallied(&field, &reduced_coeffs(&field, c))?;
        rows.push(MethodCostRow::from_tallies(Method::Chien, &[t]));
    } else {
        rows.push(MethodCostRow::inapplicable(Method::Chien));
    }

    if m % 2 == 1 {
        let tallies = solvable
            .iter()
            .map(|&c| half_trace_root_tallied(&field, c).map(|(_, t)| t))
            .collect::<Result<Vec<_>>>()?;
        let mut row = MethodCostRow::from_tallies(Method::HalfTrace, &tallies);
        row.adds_table_convention = Some(half_trace_table_adds(m));
        rows.push(row);
    } else {
        rows.push(MethodCostRow::inapplicable(Method::HalfTrace));
    }

    let pre = CherlyTables::canonical(&field);
    let tallies = solvable
        .iter()
        .map(|&c| cherly_root_tallied(&field, &pre, c).map(|(_, t)| t))
        .collect::<Result<Vec<_>>>()?;
    rows.push(MethodCostRow::from_tallies(Method::Cherly, &tallies));

    let tallies = all
        .iter()
        .map(|&c| trace_check_tallied(&field, c).map(|(_, t)| t))
        .collect::<Result<Vec<_>>>()?;
    rows.push(MethodCostRow::from_tallies(Method::TraceCheck, &tallies));

    let mut worst_solve = 0;
    let mut worst_check = 0;
    for &c in all {
        worst_solve = worst_solve.max(tables.solve_with_cost(c)?.1.sequential_xors);
        worst_check = worst_check.max(tables.is_solvable_with_cost(c)?.1.sequential_xors);
    }
    for (method, xors) in [(Method::Proposed, worst_solve), (Method::ProposedCheck, worst_check)] {
        rows.push(MethodCostRow {
            xors: Some(xors),
            applicable: true,
            ..MethodCostRow::inapplicable(method)
        });
    }
    Ok(rows)
}

/// Published operation counts for methods whose formulas are not
/// reproduced here. `lower_bound` marks counts given only as bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CitedCost {
    pub method: String,
    pub applicable: bool,
    pub adds: Option<u64>,
    pub muls: Option<u64>,
    pub exps: Option<u64>,
    pub lower_bound: bool,
}

pub fn cited_costs(m: u32) -> Vec<CitedCost> {
    let even = m.is_multiple_of(2);
    let half = ((m.saturating_sub(2)) / 2) as u64;
    let walker = match m {
        2 => Some((None, Some(2), None)),
        4 => Some((Some(2), Some(5), None)),
        8 => Some((Some(4), Some(7), Some(2))),
        _ => None,
    };
    vec![
        CitedCost {
            method: "chen-even".into(),
            applicable: even,
            adds: even.then_some(half),
            muls: None,
            exps: even.then_some(half),
            lower_bound: true,
        },
        CitedCost {
            method: "walker".into(),
            applicable: walker.is_some(),
            adds: walker.and_then(|w| w.0),
            muls: walker.and_then(|w| w.1),
            exps: walker.and_then(|w| w.2),
            lower_bound: false,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> Field {
        Field::with_default_modulus(m).unwrap()
    }

    fn is_root(f: &Field, x: FieldElement, c: FieldElement) -> bool {
        (f.square(x).unwrap() + x + c).is_zero()
    }

    #[test]
    fn chien_small() {
        let f = gf(3);
        let roots = chien_roots(&f, &reduced_coeffs(&f, f.zero())).unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![f.zero(), f.one()]);
        assert!(chien_roots(&f, &[]).is_err());
        // constant polynomial 1 has no roots
        assert!(chien_roots(&f, &[f.one()]).unwrap().is_empty());
    }

    #[test]
    fn chien_trace_one_has_no_roots() {
        for m in 2..=10 {
            let f = gf(m);
            for c in f.elements() {
                let n = chien_roots(&f, &reduced_coeffs(&f, c)).unwrap().len();
                assert!(n == 0 || n == 2);
                assert_eq!(n == 0, f.trace(c).unwrap() == 1);
            }
        }
    }

    #[test]
    fn chien_tally_m7() {
        let f = gf(7);
        let (_, t) = chien_roots_tallied(&f, &reduced_coeffs(&f, f.alpha())).unwrap();
        assert_eq!((t.adds, t.muls), (256, 128));
    }

    #[test]
    fn half_trace_examples() {
        let f = gf(3);
        assert_eq!(half_trace_root(&f, f.zero()).unwrap(), f.zero());
        let c = f.element(6).unwrap();
        assert!(is_root(&f, half_trace_root(&f, c).unwrap(), c));
        assert!(half_trace_root(&gf(4), gf(4).zero()).is_err());
        // trace(1) = 1 in GF(2^3)
        assert!(half_trace_root(&f, f.one()).is_err());
        let (_, t) = half_trace_root_tallied(&gf(7), gf(7).zero()).unwrap();
        assert_eq!((t.exps, t.adds, t.squarings), (3, 3, 6));
        assert_eq!(half_trace_table_adds(7), 2);
    }

    #[test]
    fn trace_one_element() {
        assert_eq!(find_trace_one_element(&gf(7)), gf(7).one());
        let f4 = gf(4);
        let u = find_trace_one_element(&f4);
        let first = (0..16)
            .find(|&i| f4.trace(f4.element(i).unwrap()).unwrap() == 1)
            .unwrap();
        assert_eq!(u.index(), first);
        for m in 2..=20 {
            let f = gf(m);
            assert_eq!(f.trace(find_trace_one_element(&f)).unwrap(), 1);
        }
    }

    #[test]
    fn cherly_examples() {
        let f = gf(4);
        let pre = CherlyTables::canonical(&f);
        assert_eq!(cherly_root(&f, &pre, f.zero()).unwrap(), f.zero());
        for c in f.elements().filter(|&c| f.trace(c).unwrap() == 0) {
            assert!(is_root(&f, cherly_root(&f, &pre, c).unwrap(), c));
        }
        assert!(CherlyTables::new(&f, f.zero()).is_err());
        let (_, t) = cherly_root_tallied(&f, &pre, f.element(2).unwrap()).unwrap();
        assert_eq!((t.exps, t.muls, t.adds), (3, 3, 2));
    }

    #[test]
    fn trace_check_cost() {
        let f = gf(9);
        let (ok, t) = trace_check_tallied(&f, f.one()).unwrap();
        assert!(!ok);
        assert_eq!((t.exps, t.adds), (8, 8));
    }

    #[test]
    fn compare_rows() {
        let f = gf(7);
        let t = SolverTables::build(&f).unwrap();
        let sample: Vec<_> = f.elements().collect();
        let rows = compare_methods(&t, &sample).unwrap();
        let get = |m: Method| rows.iter().find(|r| r.method == m).unwrap();
        assert_eq!(get(Method::Chien).adds, Some(256));
        assert_eq!(get(Method::Chien).muls, Some(128));
        assert!(get(Method::Proposed).xors.unwrap() <= 36);
        assert!(get(Method::ProposedCheck).xors.unwrap() <= 6);
        assert_eq!(get(Method::HalfTrace).adds_table_convention, Some(2));

        let f8 = gf(8);
        let t8 = SolverTables::build(&f8).unwrap();
        let rows = compare_methods(&t8, &[f8.zero()]).unwrap();
        assert!(!rows.iter().find(|r| r.method == Method::HalfTrace).unwrap().applicable);
    }

    #[test]
    fn cited() {
        let c = cited_costs(8);
        assert!(c.iter().all(|r| r.applicable));
        let c = cited_costs(7);
        assert!(c.iter().all(|r| !r.applicable));
    }
}
