//! Shared inputs for the criterion benches.

use gf2quad::verify::sample_elements;
use gf2quad::{Field, FieldElement};

/// `n` solvable constants (trace 0) for `field`, deterministic per seed.
pub fn solvable_sample(field: &Field, n: usize, seed: u64) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(n);
    let mut round = 0;
    while out.len() < n {
        out.extend(
            sample_elements(field, 2 * n, seed.wrapping_add(round))
                .into_iter()
                .filter(|&c| field.trace(c).expect("same field") == 0),
        );
        round += 1;
    }
    out.truncate(n);
    out
}
