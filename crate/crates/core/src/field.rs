//! Arithmetic in GF(2^s) for 2 ≤ s ≤ 16.
//!
//! Elements are stored as the bit pattern of their residue modulo a
//! primitive polynomial. Multiplication, division, powers and square roots go
//! through log/antilog tables built once per [`Field`]. The field is immutable
//! after construction and can be shared freely between threads.

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 16;

/// One conventional primitive polynomial per extension degree, indexed by `s`.
///
/// Trinomials where one exists, otherwise the usual pentanomial. `0x11D` is the
/// common choice for GF(256).
const PRIMITIVE_POLYS: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
];

/// Built-in primitive polynomial for `GF(2^s)`, as a bitmask including the `X^s` term.
pub fn default_primitive_poly(s: u32) -> Option<u32> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&s) {
        Some(PRIMITIVE_POLYS[s as usize])
    } else {
        None
    }
}

/// An element of GF(2^s).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw bit pattern. The caller is responsible for keeping it below `2^s`;
    /// [`Field::element`] is the checked constructor.
    pub const fn from_raw(v: u16) -> Self {
        Elem(v)
    }

    pub const fn value(self) -> u16 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl Sub for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl std::iter::Sum for Elem {
    fn sum<I: Iterator<Item = Elem>>(iter: I) -> Elem {
        iter.fold(Elem::ZERO, |a, b| a + b)
    }
}

/// Counts field multiplications charged by instrumented routines.
///
/// One table multiplication, division or inversion costs one unit; additions
/// are free.
#[derive(Debug, Default)]
pub struct MulCounter(Cell<u64>);

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn charge(&self, k: u64) {
        self.0.set(self.0.get() + k);
    }

    pub fn get(&self) -> u64 {
        self.0.get()
    }

    /// Returns the current count and resets it to zero.
    pub fn take(&self) -> u64 {
        self.0.replace(0)
    }
}

/// The field GF(2^s) together with its log/antilog tables.
#[derive(Clone)]
pub struct Field {
    s: u32,
    poly: u32,
    n: usize,
    // log[0] is unused.
    log: Vec<u32>,
    // exp has length 2n so that log a + log b never needs a reduction.
    exp: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("s", &self.s)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl Field {
    /// GF(2^s) with the built-in primitive polynomial.
    pub fn new(s: u32) -> Result<Self> {
        let poly = default_primitive_poly(s).ok_or(Error::FieldDegree(s))?;
        Self::with_poly(s, poly)
    }

    /// GF(2^s) defined by `poly`, which must be primitive of degree exactly `s`.
    pub fn with_poly(s: u32, poly: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&s) {
            return Err(Error::FieldDegree(s));
        }
        if poly >> s != 1 {
            return Err(Error::NotPrimitive { s, poly });
        }
        let size = 1usize << s;
        let n = size - 1;
        let mut log = vec![0u32; size];
        let mut exp = vec![Elem::ZERO; 2 * n];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(n).enumerate() {
            if i > 0 && x == 1 {
                return Err(Error::NotPrimitive { s, poly });
            }
            *slot = Elem(x as u16);
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (1 << s) != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { s, poly });
        }
        exp.copy_within(0..n, n);
        Ok(Field { s, poly, n, log, exp })
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn primitive_poly(&self) -> u32 {
        self.poly
    }

    /// Multiplicative order `n = 2^s − 1`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of field elements, `2^s`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// Checked constructor: `v` must be below `2^s`.
    pub fn element(&self, v: u32) -> Result<Elem> {
        if (v as usize) < self.size() {
            Ok(Elem(v as u16))
        } else {
            Err(Error::Parse(format!("{v:#x} is not an element of GF(2^{})", self.s)))
        }
    }

    /// The primitive element γ (the class of `X`).
    pub fn gamma(&self) -> Elem {
        self.exp[1 % self.n]
    }

    /// γ^i for any integer exponent, reduced modulo `n`.
    #[inline]
    pub fn gamma_pow(&self, i: i64) -> Elem {
        self.exp[i.rem_euclid(self.n as i64) as usize]
    }

    /// Discrete logarithm base γ, in `0..n`. `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as usize)
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            Elem::ZERO
        } else {
            self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize]
        }
    }

    /// [`Field::mul`], charging one unit to `counter`.
    #[inline]
    pub fn mul_counted(&self, a: Elem, b: Elem, counter: &MulCounter) -> Elem {
        counter.charge(1);
        self.mul(a, b)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        match self.log(a) {
            None => Err(Error::ZeroInverse),
            Some(l) => Ok(self.exp[(self.n - l) % self.n]),
        }
    }

    /// `a / b` as a single table lookup.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let lb = self.log(b).ok_or(Error::ZeroInverse)?;
        Ok(match self.log(a) {
            None => Elem::ZERO,
            Some(la) => self.exp[la + self.n - lb],
        })
    }

    /// `a^k` for any integer `k`; negative powers of zero are reported as errors.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        match self.log(a) {
            None if k < 0 => Err(Error::ZeroInverse),
            None if k == 0 => Ok(Elem::ONE),
            None => Ok(Elem::ZERO),
            Some(l) => {
                let e = (l as i128 * k as i128).rem_euclid(self.n as i128);
                Ok(self.exp[e as usize])
            }
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// The unique square root, `a^(2^(s−1))`.
    pub fn sqrt(&self, a: Elem) -> Elem {
        match self.log(a) {
            None => Elem::ZERO,
            Some(l) => {
                let half = 1usize << (self.s - 1);
                self.exp[(l * half) % self.n]
            }
        }
    }

    /// All field elements in order of their bit patterns.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(|v| Elem(v as u16))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Shift-and-xor multiplication reduced modulo the field polynomial.
    fn schoolbook_mul(a: u32, b: u32, s: u32, poly: u32) -> u32 {
        let mut acc = 0u32;
        for i in 0..s {
            if b >> i & 1 == 1 {
                acc ^= a << i;
            }
        }
        for bit in (s..2 * s).rev() {
            if acc >> bit & 1 == 1 {
                acc ^= poly << (bit - s);
            }
        }
        acc
    }

    #[test]
    fn builtin_polys_are_primitive() {
        for s in MIN_DEGREE..=MAX_DEGREE {
            let f = Field::new(s).unwrap();
            assert_eq!(f.order(), (1 << s) - 1);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(1).unwrap_err(), Error::FieldDegree(1));
        assert_eq!(Field::new(17).unwrap_err(), Error::FieldDegree(17));
        // X^4 + X^3 + X^2 + X + 1 is irreducible but has order 5.
        assert!(matches!(Field::with_poly(4, 0x1F), Err(Error::NotPrimitive { .. })));
        assert!(matches!(Field::with_poly(8, 0x1D), Err(Error::NotPrimitive { .. })));
    }

    #[test]
    fn add_properties() {
        let f = Field::new(4).unwrap();
        for x in f.elements() {
            assert_eq!(x + x, Elem::ZERO);
            assert_eq!(x + Elem::ZERO, x);
        }
        // γ = X, γ² = X², so γ + γ² = 0b0110.
        let g = f.gamma();
        assert_eq!(g + f.square(g), Elem::from_raw(0b0110));
    }

    #[test]
    fn mul_matches_schoolbook_in_gf256() {
        let f = Field::with_poly(8, 0x11D).unwrap();
        let mut state = 0x1234_5678u32;
        for _ in 0..100 {
            state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
            let a = (state >> 8) & 0xFF;
            let b = (state >> 20) & 0xFF;
            let expect = schoolbook_mul(a, b, 8, 0x11D);
            assert_eq!(f.mul(Elem(a as u16), Elem(b as u16)).value() as u32, expect);
        }
    }

    #[test]
    fn group_axioms_exhaustive_small_fields() {
        for s in 2..=6 {
            let f = Field::new(s).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(Elem::ONE, a), a);
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), Elem::ONE);
                assert_eq!(f.pow(a, -1).unwrap(), ai);
                assert_eq!(f.pow(a, f.order() as i64).unwrap(), Elem::ONE);
                for b in f.elements().skip(1) {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.div(f.mul(a, b), b).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn inverse_and_pow_edge_cases() {
        let f = Field::new(8).unwrap();
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::ZeroInverse));
        assert_eq!(f.div(Elem::ONE, Elem::ZERO), Err(Error::ZeroInverse));
        assert_eq!(f.pow(Elem::ZERO, 0).unwrap(), Elem::ONE);
        assert_eq!(f.pow(Elem::ZERO, 3).unwrap(), Elem::ZERO);
        assert!(f.pow(Elem::ZERO, -2).is_err());
    }

    #[test]
    fn gamma_is_primitive() {
        let f = Field::new(8).unwrap();
        let g = f.gamma();
        let mut x = Elem::ONE;
        for k in 1..f.order() {
            x = f.mul(x, g);
            assert_ne!(x, Elem::ONE, "γ^{k} = 1");
        }
        assert_eq!(f.mul(x, g), Elem::ONE);
        for a in f.elements().skip(1) {
            assert_eq!(f.gamma_pow(f.log(a).unwrap() as i64), a);
        }
        assert_eq!(f.gamma_pow(-1), f.inv(g).unwrap());
    }

    #[test]
    fn sqrt_exhaustive_gf256() {
        let f = Field::new(8).unwrap();
        assert_eq!(f.sqrt(Elem::ZERO), Elem::ZERO);
        assert_eq!(f.sqrt(Elem::ONE), Elem::ONE);
        for a in f.elements() {
            assert_eq!(f.square(f.sqrt(a)), a);
        }
    }

    #[test]
    fn counter_charges_one_per_mul() {
        let f = Field::new(4).unwrap();
        let c = MulCounter::new();
        f.mul_counted(f.gamma(), f.gamma(), &c);
        f.mul_counted(Elem::ZERO, f.gamma(), &c);
        assert_eq!(c.take(), 2);
        assert_eq!(c.get(), 0);
    }
}
