//! Polynomials over GF(2) packed into a `u64`, bit `i` holding the
//! coefficient of `x^i`.

use crate::error::{Error, Result};

/// Degree of `p`, or `-1` for the zero polynomial.
pub fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product of two polynomials of degree < 32.
pub fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        let low = b.trailing_zeros();
        acc ^= a << low;
        b &= b - 1;
    }
    acc
}

/// Remainder of `a` modulo `modulus` (`modulus` nonzero).
pub fn rem(mut a: u64, modulus: u64) -> u64 {
    let dm = degree(modulus);
    while degree(a) >= dm {
        a ^= modulus << (degree(a) - dm);
    }
    a
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    rem(clmul(a as u32, b as u32), modulus)
}

/// Rabin's test: a degree-`n` polynomial `f` is irreducible iff
/// `x^(2^n) = x mod f` and `gcd(x^(2^(n/q)) - x, f) = 1` for every prime `q | n`.
pub fn is_irreducible(f: u64) -> bool {
    let n = degree(f);
    if n < 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // Work on residues mod f, which have degree < n <= 32.
    let x = 2u64;
    let frob = |k: i32| -> u64 {
        let mut t = x;
        for _ in 0..k {
            t = mulmod(t, t, f);
        }
        t
    };
    if frob(n) != x {
        return false;
    }
    prime_factors(n as u64)
        .into_iter()
        .all(|q| gcd(f, frob(n / q as i32) ^ x) == 1)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Formats as lower-case hex with a `0x` prefix.
pub fn to_hex(v: u64) -> String {
    format!("{v:#x}")
}

/// Parses hex with or without a `0x` prefix.
pub fn parse_hex(s: &str) -> Result<u64> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if digits.is_empty() {
        return Err(Error::Hex(s.to_string()));
    }
    u64::from_str_radix(digits, 16).map_err(|_| Error::Hex(s.to_string()))
}

/// Renders a polynomial as `x^7+x^3+1`.
pub fn display(p: u64) -> String {
    if p == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if p >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}
