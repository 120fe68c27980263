//! Dense matrices over GF(2), one `u64` per row with column `j` at bit `j`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_COLS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<u64>,
}

/// Outcome of Gauss–Jordan elimination with the row operations recorded.
#[derive(Clone, Debug)]
pub struct Elimination {
    /// Reduced matrix, rows left in place (no swaps are performed).
    pub reduced: BitMatrix,
    /// Accumulated row operations: `transform · original = reduced`.
    pub transform: BitMatrix,
    /// `pivot_row[j]` is the row holding the pivot of column `j`, if any.
    pub pivot_row: Vec<Option<usize>>,
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.pivot_row.iter().flatten().count()
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && (1..=MAX_COLS).contains(&cols), "bad shape {rows}x{cols}");
        Self {
            cols,
            rows: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut id = Self::zeros(n, n);
        for (i, row) in id.rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        id
    }

    /// Builds from packed rows; every row must fit in `cols` bits.
    pub fn from_rows(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.is_empty() || !(1..=MAX_COLS).contains(&cols) {
            return Err(Error::Precondition("matrix must have at least one row and 1..=64 columns"));
        }
        let mask = col_mask(cols);
        if let Some(&bad) = rows.iter().find(|&&r| r & !mask != 0) {
            return Err(Error::OutOfRange {
                value: bad,
                bound: mask.wrapping_add(1),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Builds from a row-major 0/1 grid, as matrices are usually printed.
    pub fn from_grid(grid: &[&[u8]]) -> Result<Self> {
        let cols = grid.first().map_or(0, |r| r.len());
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::Precondition("ragged grid"));
        }
        let rows = grid
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| acc | ((b & 1) as u64) << j)
            })
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> u64 {
        self.rows[r]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(c < self.cols);
        if v {
            self.rows[r] |= 1 << c;
        } else {
            self.rows[r] &= !(1 << c);
        }
    }

    /// Column `c` packed with row `r` at bit `r` (needs `nrows <= 64`).
    pub fn column(&self, c: usize) -> u64 {
        assert!(self.nrows() <= MAX_COLS);
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | (row >> c & 1) << r)
    }

    pub fn transpose(&self) -> BitMatrix {
        let cols = (0..self.cols).map(|c| self.column(c)).collect();
        BitMatrix::from_rows(self.nrows(), cols).expect("transpose shape")
    }

    /// `self · v` where bit `j` of `v` is entry `j` of the column vector.
    pub fn mul_vec(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, &row)| acc | (((row & v).count_ones() & 1) as u64) << r)
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.nrows() {
            return Err(Error::Precondition("inner dimensions differ"));
        }
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    acc ^= rhs.rows[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BitMatrix::from_rows(rhs.cols, rows)
    }

    /// Gauss–Jordan over GF(2). For each column in order the pivot is the
    /// smallest-index row not already holding a pivot; it is then cleared
    /// from every other row.
    pub fn gauss_jordan(&self) -> Elimination {
        let n = self.nrows();
        assert!(n <= MAX_COLS, "row tracking supports at most {MAX_COLS} rows");
        let mut reduced = self.clone();
        let mut transform = BitMatrix::identity(n);
        let mut used = vec![false; n];
        let mut pivot_row = vec![None; self.cols];
        for (col, slot) in pivot_row.iter_mut().enumerate() {
            let Some(p) = (0..n).find(|&r| !used[r] && reduced.get(r, col)) else {
                continue;
            };
            used[p] = true;
            *slot = Some(p);
            let (prow, ptrans) = (reduced.rows[p], transform.rows[p]);
            for r in (0..n).filter(|&r| r != p) {
                if reduced.get(r, col) {
                    reduced.rows[r] ^= prow;
                    transform.rows[r] ^= ptrans;
                }
            }
        }
        Elimination {
            reduced,
            transform,
            pivot_row,
        }
    }

    pub fn rank(&self) -> usize {
        self.gauss_jordan().rank()
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.nrows() != self.cols {
            return None;
        }
        let e = self.gauss_jordan();
        if e.rank() != self.cols {
            return None;
        }
        // Reduced is a permutation matrix; reorder transform rows so the
        // pivot of column j lands on row j.
        let rows = e
            .pivot_row
            .iter()
            .map(|p| e.transform.rows[p.expect("full rank")])
            .collect();
        Some(BitMatrix::from_rows(self.cols, rows).expect("square"))
    }

    pub fn is_invertible(&self) -> bool {
        self.nrows() == self.cols && self.rank() == self.cols
    }

    /// Rows permuted so new row `i` is old row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> BitMatrix {
        assert_eq!(order.len(), self.nrows());
        let rows = order.iter().map(|&i| self.rows[i]).collect();
        BitMatrix::from_rows(self.cols, rows).expect("same shape")
    }
}

fn col_mask(cols: usize) -> u64 {
    if cols == 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", row >> c & 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
