//! Arithmetic in GF(2^m) under a polynomial basis.
//!
//! An element is stored as its coordinate vector over `(1, α, …, α^{m-1})`,
//! bit `j` holding the coefficient of `α^j`, where `α` is the class of `x`
//! modulo the field polynomial. Read as an integer, those bits are the
//! element's index `i`, so `w_i = Σ i_j α^j`.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 32;

/// Built-in primitive polynomials for `m = 2..=32`, indexed by `m - 2`.
///
/// Entries for `m <= 24` are the primitive polynomials tabulated in Lin and
/// Costello, *Error Control Coding* (2nd ed.), Table 2.7, which is also the
/// usual choice in BCH/RS literature. The remaining entries are low-weight
/// primitive polynomials. Primitivity of every entry is checked by the test
/// suite, not at runtime.
const DEFAULT_MODULI: [u64; 31] = [
    0x7,         // x^2+x+1
    0xb,         // x^3+x+1
    0x13,        // x^4+x+1
    0x25,        // x^5+x^2+1
    0x43,        // x^6+x+1
    0x89,        // x^7+x^3+1
    0x11d,       // x^8+x^4+x^3+x^2+1
    0x211,       // x^9+x^4+1
    0x409,       // x^10+x^3+1
    0x805,       // x^11+x^2+1
    0x1053,      // x^12+x^6+x^4+x+1
    0x201b,      // x^13+x^4+x^3+x+1
    0x4443,      // x^14+x^10+x^6+x+1
    0x8003,      // x^15+x+1
    0x1100b,     // x^16+x^12+x^3+x+1
    0x20009,     // x^17+x^3+1
    0x40081,     // x^18+x^7+1
    0x80027,     // x^19+x^5+x^2+x+1
    0x100009,    // x^20+x^3+1
    0x200005,    // x^21+x^2+1
    0x400003,    // x^22+x+1
    0x800021,    // x^23+x^5+1
    0x1000087,   // x^24+x^7+x^2+x+1
    0x2000009,   // x^25+x^3+1
    0x4000047,   // x^26+x^6+x^2+x+1
    0x8000027,   // x^27+x^5+x^2+x+1
    0x10000009,  // x^28+x^3+1
    0x20000005,  // x^29+x^2+1
    0x40800007,  // x^30+x^23+x^2+x+1
    0x80000009,  // x^31+x^3+1
    0x100400007, // x^32+x^22+x^2+x+1
];

fn check_degree(m: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange {
            m,
            min: MIN_DEGREE,
            max: MAX_DEGREE,
        })
    }
}

/// The shipped field polynomial for GF(2^m).
pub fn default_modulus(m: u32) -> Result<u64> {
    check_degree(m)?;
    Ok(DEFAULT_MODULI[(m - MIN_DEGREE) as usize])
}

/// Descriptor of GF(2^m): the degree and the irreducible field polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Field {
    m: u32,
    modulus: u64,
}

impl Field {
    /// Builds GF(2^m) modulo `modulus`, rejecting reducible polynomials.
    pub fn new(m: u32, modulus: u64) -> Result<Self> {
        check_degree(m)?;
        let degree = poly::degree(modulus);
        if degree != m as i32 {
            return Err(Error::ModulusDegree { modulus, degree, m });
        }
        if !poly::is_irreducible(modulus) {
            return Err(Error::NotIrreducible { modulus });
        }
        Ok(Self { m, modulus })
    }

    pub fn with_default_modulus(m: u32) -> Result<Self> {
        Self::new(m, default_modulus(m)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn mask(&self) -> u32 {
        (self.order() - 1) as u32
    }

    fn wrap(&self, bits: u32) -> FieldElement {
        debug_assert_eq!(bits & !self.mask(), 0);
        FieldElement { bits, field: *self }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `x`, i.e. `w_2`.
    pub fn alpha(&self) -> FieldElement {
        self.wrap(2)
    }

    /// `w_i`: the element whose coordinate bits spell `index`.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index >= self.order() {
            return Err(Error::OutOfRange {
                value: index,
                bound: self.order(),
            });
        }
        Ok(self.wrap(index as u32))
    }

    /// Every element in index order `w_0, w_1, …`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.wrap(i as u32))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.field == *self
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn reduce(&self, mut p: u64) -> u32 {
        let m = self.m as i32;
        while p >> self.m != 0 {
            p ^= self.modulus << (poly::degree(p) - m);
        }
        p as u32
    }

    #[inline]
    fn mul_bits(&self, a: u32, b: u32) -> u32 {
        self.reduce(poly::clmul(a, b))
    }

    fn frobenius_bits(&self, mut a: u32, k: u32) -> u32 {
        for _ in 0..k {
            a = self.mul_bits(a, a);
        }
        a
    }

    fn pow_bits(&self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_bits(acc, base);
            }
            base = self.mul_bits(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.wrap(a.bits ^ b.bits))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.wrap(self.mul_bits(a.bits, b.bits)))
    }

    pub fn square(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        Ok(self.wrap(self.mul_bits(a.bits, a.bits)))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(&a)?;
        Ok(self.wrap(self.pow_bits(a.bits, e)))
    }

    /// `a^(2^k)` by `k` squarings.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        self.check(&a)?;
        Ok(self.wrap(self.frobenius_bits(a.bits, k)))
    }

    /// Multiplicative inverse `a^(2^m - 2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        if a.is_zero() {
            return Err(Error::Precondition("zero has no inverse"));
        }
        Ok(self.wrap(self.pow_bits(a.bits, self.order() - 2)))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let b_inv = self.inv(b)?;
        self.mul(a, b_inv)
    }

    /// Absolute trace `Σ_{i<m} a^(2^i)`, which always lands in {0, 1}.
    pub fn trace(&self, a: FieldElement) -> Result<u8> {
        self.check(&a)?;
        let mut t = a.bits;
        let mut acc = 0u32;
        for _ in 0..self.m {
            acc ^= t;
            t = self.mul_bits(t, t);
        }
        debug_assert!(acc <= 1, "trace left GF(2): {acc:#x}");
        Ok(acc as u8)
    }

    /// Square root `a^(2^(m-1))`; squaring is a bijection in characteristic 2.
    pub fn sqrt(&self, a: FieldElement) -> Result<FieldElement> {
        self.frobenius(a, self.m - 1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.m, poly::display(self.modulus))
    }
}

/// An element of GF(2^m) tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    // Ord derives on `bits` first so sorted sets read in index order.
    bits: u32,
    field: Field,
}

impl FieldElement {
    /// Coordinate bits over `(1, α, …, α^{m-1})`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Index `i` of `w_i`; equal to `bits` read as an integer.
    pub fn index(&self) -> u64 {
        self.bits as u64
    }

    /// `b_ℓ(self)`: coordinate `ell` of the binary vector.
    pub fn bit(&self, ell: u32) -> u8 {
        (self.bits >> ell & 1) as u8
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#04x}", self.bits)
    }
}

// Operator forms panic on mixed fields; the `Field` methods return
// `Error::FieldMismatch` instead.
impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: Self) -> Self {
        self.field.add(self, rhs).expect("operands belong to different fields")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: Self) -> Self {
        self.field.mul(self, rhs).expect("operands belong to different fields")
    }
}

/// Operation counts of one instrumented computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTally {
    pub adds: u64,
    pub muls: u64,
    /// Exponentiation calls; `a^(2^k)` by repeated squaring counts once.
    pub exps: u64,
    /// Raw squarings, whether standalone or inside an exponentiation.
    pub squarings: u64,
    /// Bit-level XORs; a field addition costs `m`.
    pub xors: u64,
}

/// Arithmetic surface shared by the plain and instrumented field handles,
/// so a baseline runs the same code path with or without counting.
pub trait FieldOps {
    fn field(&self) -> Field;
    fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement>;
    fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement>;
    fn square(&self, a: FieldElement) -> Result<FieldElement>;
    fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement>;
    fn frobenius(&self, a: FieldElement, k: u32) -> Result<FieldElement>;
}

impl FieldOps for Field {
    fn field(&self) -> Field {
        *self
    }
    fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Field::add(self, a, b)
    }
    fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Field::mul(self, a, b)
    }
    fn square(&self, a: FieldElement) -> Result<FieldElement> {
        Field::square(self, a)
    }
    fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        Field::pow(self, a, e)
    }
    fn frobenius(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        Field::frobenius(self, a, k)
    }
}

/// A field handle that counts every operation routed through it.
///
/// Not `Sync`: a tally belongs to one thread of execution.
#[derive(Debug)]
pub struct TalliedField {
    field: Field,
    tally: Cell<OpTally>,
}

impl TalliedField {
    pub fn new(field: Field) -> Self {
        Self {
            field,
            tally: Cell::new(OpTally::default()),
        }
    }

    pub fn tally(&self) -> OpTally {
        self.tally.get()
    }

    pub fn reset(&self) {
        self.tally.set(OpTally::default());
    }

    fn record(&self, f: impl FnOnce(&mut OpTally)) {
        let mut t = self.tally.get();
        f(&mut t);
        self.tally.set(t);
    }
}

impl FieldOps for TalliedField {
    fn field(&self) -> Field {
        self.field
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let r = self.field.add(a, b)?;
        let m = self.field.m as u64;
        self.record(|t| {
            t.adds += 1;
            t.xors += m;
        });
        Ok(r)
    }

    fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let r = self.field.mul(a, b)?;
        self.record(|t| t.muls += 1);
        Ok(r)
    }

    fn square(&self, a: FieldElement) -> Result<FieldElement> {
        let r = self.field.square(a)?;
        self.record(|t| {
            t.muls += 1;
            t.squarings += 1;
        });
        Ok(r)
    }

    fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        let r = self.field.pow(a, e)?;
        self.record(|t| t.exps += 1);
        Ok(r)
    }

    fn frobenius(&self, a: FieldElement, k: u32) -> Result<FieldElement> {
        let r = self.field.frobenius(a, k)?;
        self.record(|t| {
            t.exps += 1;
            t.squarings += k as u64;
        });
        Ok(r)
    }
}
