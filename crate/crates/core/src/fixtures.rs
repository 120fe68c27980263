//! Published reference matrices for the shipped small fields.
//!
//! `B` and `P` for GF(2^7) mod x^7+x^3+1, and the `P` matrices printed for
//! the default moduli with `m = 3..=8`. Grids are row-major with column `j`
//! multiplying `b_j(c)`.

use crate::bitmatrix::BitMatrix;

const B_M7: [[u8; 7]; 7] = [
    [0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 1, 1],
];

const P_M3: [[u8; 3]; 3] = [[1, 0, 0], [0, 0, 1], [0, 1, 1]];

const P_M4: [[u8; 4]; 4] = [[0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 0, 0], [0, 1, 1, 0]];

const P_M5: [[u8; 5]; 5] = [
    [1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 1, 1, 0, 1],
    [0, 0, 0, 1, 0],
];

const P_M6: [[u8; 6]; 6] = [
    [0, 0, 0, 0, 0, 1],
    [1, 1, 0, 0, 0, 0],
    [0, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 0],
];

const P_M7: [[u8; 7]; 7] = [
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 1, 0, 1],
    [0, 0, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 1],
];

const P_M8: [[u8; 8]; 8] = [
    [0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 1, 0, 1, 0, 0, 0],
    [1, 0, 0, 1, 1, 0, 1, 0],
    [0, 1, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 1],
    [0, 1, 1, 1, 1, 0, 1, 0],
    [1, 1, 1, 0, 1, 0, 0, 1],
    [1, 1, 1, 0, 1, 0, 0, 0],
];

fn grid<const N: usize>(rows: &'static [[u8; N]; N]) -> Vec<&'static [u8]> {
    rows.iter().map(|r| r.as_slice()).collect()
}

/// Modulus paired with the m = 7 fixtures.
pub const MODULUS_M7: u64 = 0x89;

pub fn b_m7() -> BitMatrix {
    BitMatrix::from_grid(&grid(&B_M7)).expect("fixture shape")
}

pub fn p_m7() -> BitMatrix {
    BitMatrix::from_grid(&grid(&P_M7)).expect("fixture shape")
}

/// `(m, modulus, P)` for every published small field.
pub fn table_p_fixtures() -> Vec<(u32, u64, Vec<&'static [u8]>)> {
    vec![
        (3, 0xb, grid(&P_M3)),
        (4, 0x13, grid(&P_M4)),
        (5, 0x25, grid(&P_M5)),
        (6, 0x43, grid(&P_M6)),
        (7, 0x89, grid(&P_M7)),
        (8, 0x11d, grid(&P_M8)),
    ]
}
