//! XOR-only solver for `x^2 + x + c = 0` over GF(2^m).
//!
//! The map `x ↦ x^2 + x` is GF(2)-linear, so in coordinates it is an
//! `m × m` bit matrix `B` whose column `j` holds the bits of `α^j + α^{2j}`.
//! Its kernel is `{0, 1}`, so `B` has rank `m - 1` and column 0 is zero.
//! Recording the row operations `P` that bring `B` to `(0 | I₀)` turns the
//! whole solve into one bit-matrix/vector product `s = P · bits(c)`:
//! `s_0` decides solvability and `s_1 … s_{m-1}` are the root's coordinates
//! `i_1 … i_{m-1}` (with `i_0` free, giving the two roots `x₀` and `x₀ + 1`).

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly;

/// Row of `P · B` that is all zero. Fixed to the top row.
pub const ELL_STAR: usize = 0;

/// `B`: entry `(ℓ, j)` is bit `ℓ` of `α^j + α^{2j}`.
pub fn build_b(field: &Field) -> BitMatrix {
    let m = field.m() as usize;
    let alpha = field.alpha();
    let mut b = BitMatrix::zeros(m, m);
    let mut aj = field.one();
    for j in 0..m {
        let col = aj + field.square(aj).expect("same field");
        for ell in 0..m {
            if col.bit(ell as u32) == 1 {
                b.set(ell, j, true);
            }
        }
        aj = aj * alpha;
    }
    b
}

/// `(0 | I₀)`: the `m × m` identity with its top row cleared.
pub fn reduced_form(m: usize) -> BitMatrix {
    let mut t = BitMatrix::identity(m);
    t.set(ELL_STAR, ELL_STAR, false);
    t
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Largest sequential XOR count a root extraction may need, `(m-1)^2`.
pub fn xor_bound(m: u32) -> u64 {
    let k = (m - 1) as u64;
    k * k
}

/// Largest XOR-tree depth a solve may need, `⌈log₂ m⌉`.
pub fn depth_bound(m: u32) -> u32 {
    ceil_log2(m as u64)
}

/// Precomputed `(B, P)` for one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverTables {
    field: Field,
    b: BitMatrix,
    p: BitMatrix,
    /// Column `j` of `P`, row `k` at bit `k`.
    p_columns: Vec<u32>,
}

/// Result of solving `x^2 + x + c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    pub solvable: bool,
    /// `s = P · bits(c)`, bit `k` holding row `k`.
    pub syndrome: u32,
    /// `(x₀, x₁)` with bit 0 of `x₀` clear and `x₁ = x₀ + 1`.
    pub roots: Option<(FieldElement, FieldElement)>,
}

/// XOR accounting for one matrix/vector product evaluated as a balanced
/// tree of pairwise merges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XorCostReport {
    pub sequential_xors: u64,
    pub depth: u32,
    pub columns_summed: u32,
}

/// Pairwise merge of `terms`, each `width` useful bits wide. Returns the sum
/// and the XOR count/depth actually spent.
fn merge_tree(mut terms: Vec<u32>, width: u64) -> (u32, XorCostReport) {
    let mut report = XorCostReport {
        columns_summed: terms.len() as u32,
        ..Default::default()
    };
    if terms.is_empty() {
        return (0, report);
    }
    while terms.len() > 1 {
        let next: Vec<u32> = terms
            .chunks(2)
            .map(|pair| match *pair {
                [a, b] => {
                    report.sequential_xors += width;
                    a ^ b
                }
                [a] => a,
                _ => unreachable!(),
            })
            .collect();
        report.depth += 1;
        terms = next;
    }
    (terms[0], report)
}

impl SolverTables {
    /// Eliminates `B` with recorded row operations and reorders the rows so
    /// the pivot for column `k` sits on row `k` and the zero row on top.
    pub fn build(field: &Field) -> Result<Self> {
        let m = field.m() as usize;
        let b = build_b(field);
        let e = b.gauss_jordan();
        let rank = e.rank();
        if rank != m - 1 || e.pivot_row[0].is_some() {
            return Err(Error::InternalRank {
                rank,
                expected: m - 1,
            });
        }
        let mut order = vec![0usize; m];
        let mut used = vec![false; m];
        for (slot, pivot) in order.iter_mut().zip(&e.pivot_row).skip(1) {
            let r = pivot.expect("rank m-1 with column 0 empty");
            *slot = r;
            used[r] = true;
        }
        order[ELL_STAR] = used.iter().position(|&u| !u).expect("one free row");
        let p = e.transform.permute_rows(&order);
        Self::from_parts(*field, b, p)
    }

    /// Wraps a caller-supplied `P`, checking `P · B = (0 | I₀)` and that `P`
    /// is invertible.
    pub fn with_p(field: &Field, p: BitMatrix) -> Result<Self> {
        Self::from_parts(*field, build_b(field), p)
    }

    fn from_parts(field: Field, b: BitMatrix, p: BitMatrix) -> Result<Self> {
        let m = field.m() as usize;
        if p.nrows() != m || p.ncols() != m {
            return Err(Error::Precondition("P must be m x m"));
        }
        if p.mul(&b)? != reduced_form(m) {
            return Err(Error::Internal("P * B differs from (0 | I0)"));
        }
        if !p.is_invertible() {
            return Err(Error::Internal("P is singular"));
        }
        let p_columns = (0..m).map(|j| p.column(j) as u32).collect();
        Ok(Self {
            field,
            b,
            p,
            p_columns,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn b(&self) -> &BitMatrix {
        &self.b
    }

    pub fn p(&self) -> &BitMatrix {
        &self.p
    }

    pub fn ell_star(&self) -> usize {
        ELL_STAR
    }

    /// Row `ℓ*` of `P`: `f` is solvable iff this row dotted with `bits(c)`
    /// is zero.
    pub fn criterion_row(&self) -> u64 {
        self.p.row(ELL_STAR)
    }

    /// Flips one entry of `P` without revalidating. Negative control for
    /// the verification harness only.
    #[doc(hidden)]
    pub fn corrupt_p(&mut self, row: usize, col: usize) {
        let v = self.p.get(row, col);
        self.p.set(row, col, !v);
        self.p_columns[col] ^= 1 << row;
    }

    fn check(&self, c: &FieldElement) -> Result<()> {
        if self.field.contains(c) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Solvability from row `ℓ*` of `P` alone, as a tree of single-bit XORs.
    pub fn is_solvable_with_cost(&self, c: FieldElement) -> Result<(bool, XorCostReport)> {
        self.check(&c)?;
        let selected = self.criterion_row() & c.bits() as u64;
        let terms = vec![1u32; selected.count_ones() as usize];
        let (parity, cost) = merge_tree(terms, 1);
        debug_assert_eq!(parity, selected.count_ones() & 1);
        Ok((parity == 0, cost))
    }

    pub fn is_solvable(&self, c: FieldElement) -> Result<bool> {
        self.check(&c)?;
        Ok((self.criterion_row() & c.bits() as u64).count_ones() & 1 == 0)
    }

    /// `s = P · bits(c)` as the XOR of the columns `P_j` selected by `c`.
    pub fn syndrome(&self, c: FieldElement) -> Result<u32> {
        self.check(&c)?;
        let mut bits = c.bits();
        let mut s = 0u32;
        while bits != 0 {
            s ^= self.p_columns[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        Ok(s)
    }

    fn outcome(&self, syndrome: u32) -> SolveOutcome {
        let solvable = syndrome >> ELL_STAR & 1 == 0;
        let roots = solvable.then(|| {
            let x0 = self
                .field
                .element((syndrome & !(1 << ELL_STAR)) as u64)
                .expect("syndrome fits m bits");
            (x0, x0 + self.field.one())
        });
        SolveOutcome {
            solvable,
            syndrome,
            roots,
        }
    }

    /// `s = Σ P_j` over the set bits `j` of `c`, counting the XORs on the
    /// `m - 1` rows other than `ℓ*`.
    pub fn solve_with_cost(&self, c: FieldElement) -> Result<(SolveOutcome, XorCostReport)> {
        self.check(&c)?;
        let bits = c.bits();
        let columns: Vec<u32> = (0..self.field.m())
            .filter(|&j| bits >> j & 1 == 1)
            .map(|j| self.p_columns[j as usize])
            .collect();
        let width = (self.field.m() - 1) as u64;
        let (syndrome, cost) = merge_tree(columns, width);
        Ok((self.outcome(syndrome), cost))
    }

    pub fn solve_reduced(&self, c: FieldElement) -> Result<SolveOutcome> {
        self.syndrome(c).map(|s| self.outcome(s))
    }

    /// Roots of `a·y^2 + b·y + d = 0` by full case analysis; the generic
    /// case substitutes `y = b·x/a`, which maps it to `x^2 + x + a·d/b^2`.
    pub fn solve_general(
        &self,
        a: FieldElement,
        b: FieldElement,
        d: FieldElement,
    ) -> Result<GeneralRoots> {
        let f = &self.field;
        for v in [&a, &b, &d] {
            self.check(v)?;
        }
        Ok(match (a.is_zero(), b.is_zero()) {
            (true, true) if d.is_zero() => GeneralRoots::AllElements,
            (true, true) => GeneralRoots::NoRoots,
            (true, false) => GeneralRoots::Single(f.div(d, b)?),
            (false, true) => GeneralRoots::Double(f.sqrt(f.div(d, a)?)?),
            (false, false) => {
                let c = f.div(a * d, f.square(b)?)?;
                match self.solve_reduced(c)?.roots {
                    None => GeneralRoots::NoRoots,
                    Some((x0, x1)) => {
                        let scale = f.div(b, a)?;
                        GeneralRoots::Pair(scale * x0, scale * x1)
                    }
                }
            }
        })
    }

    pub fn to_json(&self) -> TablesJson {
        TablesJson {
            m: self.field.m(),
            modulus_hex: poly::to_hex(self.field.modulus()),
            ell_star: ELL_STAR,
            p: self.p.rows().iter().map(|&r| poly::to_hex(r)).collect(),
            b: self.b.rows().iter().map(|&r| poly::to_hex(r)).collect(),
        }
    }

    /// Rebuilds tables from their JSON form; `B` must match the field and
    /// `P` must satisfy the defining identity.
    pub fn from_json(json: &TablesJson) -> Result<Self> {
        let field = Field::new(json.m, poly::parse_hex(&json.modulus_hex)?)?;
        if json.ell_star != ELL_STAR {
            return Err(Error::Precondition("ell_star must be 0"));
        }
        let parse_rows = |rows: &[String]| -> Result<BitMatrix> {
            let rows = rows.iter().map(|r| poly::parse_hex(r)).collect::<Result<_>>()?;
            BitMatrix::from_rows(json.m as usize, rows)
        };
        let b = parse_rows(&json.b)?;
        if b != build_b(&field) {
            return Err(Error::Precondition("B does not match the field"));
        }
        Self::from_parts(field, b, parse_rows(&json.p)?)
    }
}

/// Serialized `(P, B)` pair; each row is hex with column 0 at bit 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesJson {
    pub m: u32,
    pub modulus_hex: String,
    pub ell_star: usize,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

/// Root set of a general quadratic `a·y^2 + b·y + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralRoots {
    /// `0 = 0`: every element is a root.
    AllElements,
    NoRoots,
    /// Linear equation `b·y = d`.
    Single(FieldElement),
    /// `a·y^2 = d`, one root of multiplicity two.
    Double(FieldElement),
    Pair(FieldElement, FieldElement),
}

impl GeneralRoots {
    /// Distinct roots, except `AllElements` which yields none here.
    pub fn distinct(&self) -> Vec<FieldElement> {
        match *self {
            GeneralRoots::AllElements | GeneralRoots::NoRoots => Vec::new(),
            GeneralRoots::Single(y) | GeneralRoots::Double(y) => vec![y],
            GeneralRoots::Pair(y0, y1) => vec![y0, y1],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tables(m: u32) -> SolverTables {
        SolverTables::build(&Field::with_default_modulus(m).unwrap()).unwrap()
    }

    #[test]
    fn b_matches_fixture_m7() {
        let f = Field::new(7, 0x89).unwrap();
        assert_eq!(build_b(&f), fixtures::b_m7());
    }

    #[test]
    fn b_gf4() {
        let f = Field::new(2, 0b111).unwrap();
        let b = build_b(&f);
        assert_eq!(b.column(0), 0);
        assert_eq!(b.column(1), 0b01);
    }

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = (0..=9).map(ceil_log2).collect();
        assert_eq!(got, vec![0, 0, 1, 2, 2, 3, 3, 3, 3, 4]);
        assert_eq!(depth_bound(16), 4);
        assert_eq!(depth_bound(17), 5);
        assert_eq!(xor_bound(7), 36);
    }

    #[test]
    fn merge_tree_costs() {
        let (s, r) = merge_tree(vec![1, 2, 4, 8, 16], 3);
        assert_eq!(s, 31);
        assert_eq!(r.sequential_xors, 12);
        assert_eq!(r.depth, 3);
        assert_eq!(r.columns_summed, 5);
        assert_eq!(merge_tree(vec![], 3).1, XorCostReport::default());
    }

    #[test]
    fn tables_identity_and_invertibility() {
        for m in 2..=32 {
            let t = tables(m);
            assert_eq!(t.p().mul(t.b()).unwrap(), reduced_form(m as usize));
            assert!(t.p().is_invertible());
            assert_eq!(t.b().column(0), 0);
            assert_eq!(t.b().rank(), m as usize - 1);
        }
    }

    #[test]
    fn published_p_fixtures_accepted() {
        for (m, modulus, grid) in fixtures::table_p_fixtures() {
            let f = Field::new(m, modulus).unwrap();
            let p = BitMatrix::from_grid(&grid).unwrap();
            assert!(SolverTables::with_p(&f, p).is_ok(), "m={m}");
        }
    }

    #[test]
    fn bad_p_rejected() {
        let f = Field::new(7, 0x89).unwrap();
        assert!(SolverTables::with_p(&f, BitMatrix::identity(7)).is_err());
        assert!(SolverTables::with_p(&f, BitMatrix::identity(6)).is_err());
    }

    #[test]
    fn criterion_m7_is_bit0() {
        let t = SolverTables::build(&Field::new(7, 0x89).unwrap()).unwrap();
        assert_eq!(t.criterion_row(), 1);
        for c in t.field().elements() {
            assert_eq!(t.is_solvable(c).unwrap(), c.bit(0) == 0);
        }
    }

    #[test]
    fn solve_examples() {
        let t = tables(7);
        let f = *t.field();
        let out = t.solve_reduced(f.zero()).unwrap();
        assert_eq!(out.roots, Some((f.zero(), f.one())));

        let c = f.element(6).unwrap();
        let out = t.solve_reduced(c).unwrap();
        assert_eq!(out.roots, Some((f.element(2).unwrap(), f.element(3).unwrap())));

        let t2 = tables(2);
        let f2 = *t2.field();
        let out = t2.solve_reduced(f2.one()).unwrap();
        assert_eq!(out.roots, Some((f2.alpha(), f2.element(3).unwrap())));

        let out = t.solve_reduced(f.one()).unwrap();
        assert!(!out.solvable);
        assert_eq!(out.syndrome & 1, 1);
        assert!(out.roots.is_none());
    }

    #[test]
    fn fast_and_instrumented_paths_agree() {
        for m in [2, 5, 8, 11] {
            let t = tables(m);
            for c in t.field().elements() {
                let fast = t.solve_reduced(c).unwrap();
                let (slow, _) = t.solve_with_cost(c).unwrap();
                assert_eq!(fast, slow);
                assert_eq!(fast.syndrome as u64, t.p().mul_vec(c.index()));
                assert_eq!(
                    t.is_solvable(c).unwrap(),
                    t.is_solvable_with_cost(c).unwrap().0
                );
            }
        }
    }

    #[test]
    fn zero_cost_for_zero_c() {
        let t = tables(9);
        let (_, cost) = t.solve_with_cost(t.field().zero()).unwrap();
        assert_eq!(cost, XorCostReport::default());
        let (ok, cost) = t.is_solvable_with_cost(t.field().zero()).unwrap();
        assert!(ok);
        assert_eq!(cost.sequential_xors, 0);
    }

    #[test]
    fn solve_rejects_other_field() {
        let t = tables(5);
        let g = Field::new(5, 0b101001).unwrap();
        assert_eq!(t.solve_reduced(g.one()), Err(Error::FieldMismatch));
        assert_eq!(t.is_solvable(g.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn general_cases() {
        let t = tables(7);
        let f = *t.field();
        let (z, one, a) = (f.zero(), f.one(), f.alpha());
        assert_eq!(t.solve_general(z, z, z).unwrap(), GeneralRoots::AllElements);
        assert_eq!(t.solve_general(z, z, one).unwrap(), GeneralRoots::NoRoots);
        assert_eq!(
            t.solve_general(one, one, z).unwrap(),
            GeneralRoots::Pair(z, one)
        );
        assert_eq!(
            t.solve_general(one, z, a * a).unwrap(),
            GeneralRoots::Double(a)
        );
        // a = 0: alpha * y = alpha^2
        assert_eq!(t.solve_general(z, a, a * a).unwrap(), GeneralRoots::Single(a));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let t = tables(8);
        let json = t.to_json();
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"P\""));
        let back: TablesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(SolverTables::from_json(&back).unwrap(), t);

        let mut bad = json.clone();
        bad.p[3] = "0x0".into();
        assert!(SolverTables::from_json(&bad).is_err());
        let mut bad = json;
        bad.b[1] = "0x1".into();
        assert!(SolverTables::from_json(&bad).is_err());
    }

    #[test]
    fn non_primitive_modulus() {
        // x^4+x^3+x^2+x+1 is irreducible but α has order 5.
        let f = Field::new(4, 0b11111).unwrap();
        let t = SolverTables::build(&f).unwrap();
        for c in f.elements() {
            let out = t.solve_reduced(c).unwrap();
            assert_eq!(out.solvable, f.trace(c).unwrap() == 0);
            if let Some((x0, x1)) = out.roots {
                assert_eq!(f.square(x0).unwrap() + x0 + c, f.zero());
                assert_eq!(f.square(x1).unwrap() + x1 + c, f.zero());
            }
        }
    }
}
