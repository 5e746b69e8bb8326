//! Dense univariate polynomials over GF(2^s).
//!
//! Coefficients are stored in ascending degree order and always normalized so
//! that the last stored coefficient is nonzero; the zero polynomial is the
//! empty vector and has degree `None` (the −∞ sentinel).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, MulCounter};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming high zeros.
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `X^i`; zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    /// Degree, with `None` standing for deg(0) = −∞.
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Number of stored coefficients, `deg + 1` (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += f.mul(a, b);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// `c·self`, charging `deg + 1` multiplications.
    pub fn scale_counted(&self, c: Elem, f: &Field, counter: &MulCounter) -> Poly {
        counter.charge(self.len() as u64);
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        self.scale_counted(c, f, &MulCounter::new())
    }

    /// `(X + a)·self`, charging `deg + 1` multiplications for the `a·self` part.
    pub fn mul_x_plus_counted(&self, a: Elem, f: &Field, counter: &MulCounter) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        counter.charge(self.len() as u64);
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(Elem::ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += f.mul(a, c);
        }
        Poly::from_coeffs(coeffs)
    }

    /// `X^k·self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Horner evaluation at `x`, charging exactly `deg` multiplications.
    pub fn eval_counted(&self, x: Elem, f: &Field, counter: &MulCounter) -> Elem {
        let mut it = self.coeffs.iter().rev();
        let Some(&top) = it.next() else {
            return Elem::ZERO;
        };
        counter.charge((self.len() - 1) as u64);
        it.fold(top, |acc, &c| f.mul(acc, x) + c)
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.eval_counted(x, f, &MulCounter::new())
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = d.deg().ok_or(Error::ZeroDivisor)?;
        let lead_inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[i - dd] = q;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] += f.mul(q, dj);
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn divide_exact(&self, d: &Poly, f: &Field) -> Result<Poly> {
        let (q, r) = self.div_rem(d, f)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// `self mod X^k`.
    pub fn mod_xk(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().take(k).copied().collect())
    }

    /// Formal derivative in characteristic 2: even-degree terms vanish.
    pub fn formal_derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Elem::ZERO })
                .collect(),
        )
    }

    /// `f_odd` with `f(X) = f_even(X²) + X·f_odd(X²)`.
    pub fn odd_part(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().skip(1).step_by(2).copied().collect())
    }

    /// `f_even` with `f(X) = f_even(X²) + X·f_odd(X²)`.
    pub fn even_part(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().step_by(2).copied().collect())
    }

    /// The gluing map `(u, v) ↦ v(X²) + X·u(X²)`.
    pub fn mu(u: &Poly, v: &Poly) -> Poly {
        let len = (2 * u.len()).max(2 * v.len().max(1) - 1);
        let mut coeffs = vec![Elem::ZERO; len];
        for (i, &c) in v.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        for (i, &c) in u.coeffs.iter().enumerate() {
            coeffs[2 * i + 1] = c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Inverse of [`Poly::mu`]: `(odd part, even part)`.
    pub fn mu_inverse(&self) -> (Poly, Poly) {
        (self.odd_part(), self.even_part())
    }

    /// `self(X²)`.
    pub fn compose_square(&self) -> Poly {
        Poly::mu(&Poly::zero(), self)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self, f: &Field) -> Poly {
        match f.inv(self.leading()) {
            Ok(l) => self.scale(l, f),
            Err(_) => Poly::zero(),
        }
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y, f)?;
            x = y;
            y = r;
        }
        Ok(x.monic(f))
    }

    /// Comma-separated hex coefficients in ascending degree, e.g. `1,0,1d`.
    pub fn to_hex_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| format!("{:x}", c.value()))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the format produced by [`Poly::to_hex_string`].
    pub fn parse_hex(s: &str, f: &Field) -> Result<Poly> {
        let coeffs = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let tok = tok.strip_prefix("0x").unwrap_or(tok);
                let v = u32::from_str_radix(tok, 16).map_err(|e| Error::Parse(format!("coefficient {tok:?}: {e}")))?;
                f.element(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u16]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&c| Elem::from_raw(c)).collect())
    }

    fn gf16() -> Field {
        Field::new(4).unwrap()
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().deg(), None);
        assert_eq!(p(&[0, 0]).deg(), None);
        assert_eq!(p(&[1, 0, 3, 0]).deg(), Some(2));
    }

    #[test]
    fn eval_basics() {
        let f = gf16();
        let c = MulCounter::new();
        assert_eq!(Poly::zero().eval_counted(f.gamma(), &f, &c), Elem::ZERO);
        assert_eq!(c.get(), 0);
        assert_eq!(p(&[1, 1]).eval(Elem::ONE, &f), Elem::ZERO);
        let q = p(&[3, 0, 7, 1, 9, 2]);
        q.eval_counted(f.gamma(), &f, &c);
        assert_eq!(c.get(), 5);
    }

    #[test]
    fn eval_matches_power_sum() {
        let f = gf16();
        let q = p(&[3, 0, 7, 1, 9, 2]);
        for x in f.elements() {
            let mut expect = Elem::ZERO;
            for (i, &c) in q.coeffs().iter().enumerate() {
                expect += f.mul(c, f.pow(x, i as i64).unwrap());
            }
            assert_eq!(q.eval(x, &f), expect);
        }
    }

    #[test]
    fn ring_basics() {
        let f = gf16();
        let q = p(&[3, 0, 7, 1]);
        assert_eq!(q.mul(&Poly::one(), &f), q);
        assert_eq!(p(&[1, 1, 1]).mod_xk(2), p(&[1, 1]));
        assert_eq!(q.add(&q), Poly::zero());
        assert_eq!(q.shift(2), p(&[0, 0, 3, 0, 7, 1]));
    }

    #[test]
    fn inexact_division_is_reported() {
        let f = gf16();
        assert_eq!(p(&[1, 0, 1]).divide_exact(&p(&[0, 1]), &f), Err(Error::InexactDivision));
        assert_eq!(p(&[1]).divide_exact(&Poly::zero(), &f), Err(Error::ZeroDivisor));
        // X² + 1 = (X + 1)² in characteristic 2.
        assert_eq!(p(&[1, 0, 1]).divide_exact(&p(&[1, 1]), &f).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 1]).formal_derivative(), Poly::zero());
        assert_eq!(p(&[1, 1, 0, 1]).formal_derivative(), p(&[1, 0, 1]));
    }

    #[test]
    fn odd_even_examples() {
        let q = p(&[1, 1, 1, 1]);
        assert_eq!(q.odd_part(), p(&[1, 1]));
        assert_eq!(q.even_part(), p(&[1, 1]));
        assert_eq!(Poly::zero().even_part(), Poly::zero());
        assert_eq!(Poly::zero().odd_part(), Poly::zero());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(Poly::mu(&Poly::zero(), &Poly::one()), Poly::one());
        assert_eq!(Poly::mu(&Poly::one(), &Poly::zero()), p(&[0, 1]));
        assert_eq!(Poly::mu(&Poly::zero(), &Poly::zero()), Poly::zero());
        assert_eq!(p(&[0, 1]).mu_inverse(), (Poly::one(), Poly::zero()));
        assert_eq!(Poly::one().mu_inverse(), (Poly::zero(), Poly::one()));
    }

    #[test]
    fn gcd_examples() {
        let f = gf16();
        let q = p(&[3, 0, 7, 2]);
        assert_eq!(Poly::gcd(&q, &Poly::zero(), &f).unwrap(), q.monic(&f));
        assert_eq!(Poly::gcd(&Poly::zero(), &q, &f).unwrap(), q.monic(&f));
        assert_eq!(Poly::gcd(&q, &Poly::one(), &f).unwrap(), Poly::one());
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero(), &f), Err(Error::ZeroGcd));

        let (a, b, c) = (f.gamma(), f.gamma_pow(5), f.gamma_pow(11));
        let lin = |r: Elem| Poly::from_coeffs(vec![r, Elem::ONE]);
        let g = Poly::gcd(&lin(a).mul(&lin(b), &f), &lin(a).mul(&lin(c), &f), &f).unwrap();
        assert_eq!(g, lin(a));
    }

    #[test]
    fn monic_of_scaled() {
        let f = gf16();
        let q = p(&[3, 0, 7, 2]);
        let m = q.monic(&f);
        assert_eq!(m.leading(), Elem::ONE);
        assert_eq!(m.scale(Elem::from_raw(2), &f), q);
    }

    #[test]
    fn mul_x_plus_counts() {
        let f = gf16();
        let c = MulCounter::new();
        let q = p(&[3, 0, 7]);
        let a = f.gamma_pow(3);
        let expect = p(&[0, 1]).add(&Poly::constant(a)).mul(&q, &f);
        assert_eq!(q.mul_x_plus_counted(a, &f, &c), expect);
        assert_eq!(c.take(), 3);
        assert_eq!(q.scale_counted(a, &f, &c), q.mul(&Poly::constant(a), &f));
        assert_eq!(c.take(), 3);
    }

    #[test]
    fn hex_format() {
        let f = Field::new(8).unwrap();
        let q = Poly::parse_hex("1, 0x0, 1d", &f).unwrap();
        assert_eq!(q, p(&[1, 0, 0x1d]));
        assert_eq!(q.to_hex_string(), "1,0,1d");
        assert_eq!(Poly::parse_hex(&q.to_string(), &f).unwrap(), q);
        assert!(Poly::parse_hex("100", &f).is_err());
        assert!(Poly::parse_hex("zz", &f).is_err());
        assert_eq!(Poly::parse_hex("0", &f).unwrap(), Poly::zero());
    }
}
