//! Rows of the Reed–Muller matrix `R_m` and the evaluation identities
//! behind the solver.
//!
//! `R_0 = (1)`, `R_{j+1} = [[R_j, R_j], [0, R_j]]`. Entry `(r, c)` of `R_m`
//! is 1 exactly when `r` is a submask of `c`. Rows are built on demand; the
//! full `2^m × 2^m` matrix is never stored.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub const MAX_ROW_DEGREE: u32 = 16;
/// Largest `m` for which the checks below enumerate all `2^m` elements.
pub const MAX_VERIFY_DEGREE: u32 = 12;
/// Largest `m` for which `rm_row` cross-checks against the recursion.
pub const RECURSION_CHECK_DEGREE: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmRow {
    m: u32,
    row_index: u64,
    words: Vec<u64>,
}

impl RmRow {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn row_index(&self) -> u64 {
        self.row_index
    }

    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, c: usize) -> bool {
        self.words[c / 64] >> (c % 64) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len()).map(|c| self.get(c) as u8).collect()
    }

    fn from_bits(m: u32, row_index: u64, bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = vec![0u64; (1usize << m).div_ceil(64)];
        for (c, b) in bits.into_iter().enumerate() {
            if b {
                words[c / 64] |= 1 << (c % 64);
            }
        }
        Self { m, row_index, words }
    }
}

fn check_row_args(m: u32, r: u64) -> Result<()> {
    if !(1..=MAX_ROW_DEGREE).contains(&m) {
        return Err(Error::DegreeOutOfRange {
            m,
            min: 1,
            max: MAX_ROW_DEGREE,
        });
    }
    if r >> m != 0 {
        return Err(Error::OutOfRange {
            value: r,
            bound: 1 << m,
        });
    }
    Ok(())
}

/// Row `r` of `R_m` via the submask rule.
pub fn rm_row(m: u32, r: u64) -> Result<RmRow> {
    check_row_args(m, r)?;
    let row = RmRow::from_bits(m, r, (0..1u64 << m).map(|c| c & r == r));
    if m <= RECURSION_CHECK_DEGREE {
        debug_assert_eq!(row, rm_row_recursive(m, r)?);
    }
    Ok(row)
}

/// Row `r` of `R_m` unrolled straight from the block recursion.
pub fn rm_row_recursive(m: u32, r: u64) -> Result<RmRow> {
    check_row_args(m, r)?;
    fn build(j: u32, r: u64) -> Vec<bool> {
        if j == 0 {
            return vec![true];
        }
        let half = 1u64 << (j - 1);
        if r < half {
            let top = build(j - 1, r);
            [top.clone(), top].concat()
        } else {
            let bottom = build(j - 1, r - half);
            [vec![false; half as usize], bottom].concat()
        }
    }
    Ok(RmRow::from_bits(m, r, build(m, r)))
}

fn check_verify_degree(field: &Field) -> Result<()> {
    if field.m() > MAX_VERIFY_DEGREE {
        return Err(Error::DegreeOutOfRange {
            m: field.m(),
            min: 1,
            max: MAX_VERIFY_DEGREE,
        });
    }
    Ok(())
}

/// Checks that for a power of two `ell`, the evaluation vector
/// `(w_0^ell, …, w_{2^m-1}^ell)` equals `Σ_j α^{j·ell} · R_m(2^j)`.
pub fn verify_frobenius_rows(field: &Field, ell: u64) -> Result<bool> {
    check_verify_degree(field)?;
    let m = field.m();
    if !ell.is_power_of_two() || ell >= 1 << m {
        return Err(Error::Precondition("ell must be a power of two below 2^m"));
    }
    let alpha = field.alpha();
    let coeffs: Vec<FieldElement> = (0..m as u64)
        .map(|j| field.pow(alpha, j * ell))
        .collect::<Result<_>>()?;
    let rows: Vec<RmRow> = (0..m).map(|j| rm_row(m, 1 << j)).collect::<Result<_>>()?;

    for (i, w) in field.elements().enumerate() {
        let lhs = field.pow(w, ell)?;
        let rhs = coeffs
            .iter()
            .zip(&rows)
            .filter(|(_, row)| row.get(i))
            .fold(field.zero(), |acc, (&k, _)| acc + k);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that bit `ell_bit` of `f(w_i) = w_i^2 + w_i + c` equals the affine
/// message polynomial `b(c) + Σ_j b(α^j + α^{2j}) · i_j` at every `i`.
pub fn verify_message_polynomial(field: &Field, c: FieldElement, ell_bit: u32) -> Result<bool> {
    check_verify_degree(field)?;
    if !field.contains(&c) {
        return Err(Error::FieldMismatch);
    }
    let m = field.m();
    if ell_bit >= m {
        return Err(Error::OutOfRange {
            value: ell_bit as u64,
            bound: m as u64,
        });
    }
    let alpha = field.alpha();
    // Linear part as a bit mask over the inputs i_j.
    let mut linear = 0u64;
    for j in 0..m as u64 {
        let a = field.pow(alpha, j)? + field.pow(alpha, 2 * j)?;
        linear |= (a.bit(ell_bit) as u64) << j;
    }
    let constant = c.bit(ell_bit) as u32;

    for w in field.elements() {
        let f = field.square(w)? + w + c;
        let g = (constant + (w.index() & linear).count_ones()) & 1;
        if f.bit(ell_bit) as u32 != g {
            return Ok(false);
        }
    }
    Ok(true)
}
