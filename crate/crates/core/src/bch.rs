//! Primitive narrow-sense binary BCH codes: construction, systematic encoding
//! and syndromes.
//!
//! Coordinate `i` of a word of length `n = 2^s − 1` is the coefficient of
//! `X^i` and carries the locator `γ^i`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct BchCode {
    field: Field,
    t: usize,
    n: usize,
    k: usize,
    generator: Poly,
}

impl BchCode {
    /// The code of length `2^s − 1` with zeros `γ, γ³, …, γ^{2t−1}` and their conjugates.
    pub fn new(field: Field, t: usize) -> Result<Self> {
        let n = field.order();
        if t == 0 {
            return Err(Error::InvalidCode("t must be at least 1".into()));
        }
        let mut zeros = BTreeSet::new();
        for j in (1..2 * t).step_by(2) {
            let mut e = j % n;
            while zeros.insert(e) {
                e = (2 * e) % n;
            }
        }
        if zeros.len() >= n {
            return Err(Error::InvalidCode(format!(
                "t = {t} leaves no information bits at n = {n}"
            )));
        }
        let generator = zeros.iter().fold(Poly::one(), |g, &e| {
            g.mul(&Poly::from_coeffs(vec![field.gamma_pow(e as i64), Elem::ONE]), &field)
        });
        debug_assert!(generator.coeffs().iter().all(|c| c.value() <= 1));
        let k = n - zeros.len();
        Ok(BchCode {
            field,
            t,
            n,
            k,
            generator,
        })
    }

    /// Builds the code from its length `n = 2^s − 1`, with an optional primitive polynomial.
    pub fn from_length(n: usize, t: usize, prim_poly: Option<u32>) -> Result<Self> {
        let s = (n + 1).trailing_zeros();
        if n < 3 || (n + 1).count_ones() != 1 {
            return Err(Error::InvalidCode(format!("length {n} is not of the form 2^s − 1")));
        }
        Self::from_degree(s, t, prim_poly)
    }

    pub fn from_degree(s: u32, t: usize, prim_poly: Option<u32>) -> Result<Self> {
        let field = match prim_poly {
            Some(p) => Field::with_poly(s, p)?,
            None => Field::new(s)?,
        };
        Self::new(field, t)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Designed distance `2t + 1`.
    pub fn d(&self) -> usize {
        2 * self.t + 1
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Generator polynomial; every coefficient is 0 or 1.
    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    /// Generator coefficients as bits, ascending degree.
    pub fn generator_bits(&self) -> Vec<bool> {
        self.generator.coeffs().iter().map(|c| !c.is_zero()).collect()
    }

    /// The locator `γ^i` of coordinate `i`.
    pub fn locator(&self, i: usize) -> Elem {
        self.field.gamma_pow(i as i64)
    }

    /// Coordinate index of a nonzero locator.
    pub fn position(&self, locator: Elem) -> Option<usize> {
        self.field.log(locator)
    }

    /// Systematic encoding: the message occupies coordinates `n − k .. n`.
    pub fn encode(&self, message: &[bool]) -> Result<Vec<bool>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        let r = self.n - self.k;
        let g = self.generator_bits();
        let mut word = vec![false; self.n];
        word[r..].copy_from_slice(message);
        // Remainder of X^r·m(X) modulo g(X), computed in place.
        let mut rem = word.clone();
        for i in (r..self.n).rev() {
            if rem[i] {
                for (j, &gj) in g.iter().enumerate() {
                    rem[i - r + j] ^= gj;
                }
            }
        }
        word[..r].copy_from_slice(&rem[..r]);
        Ok(word)
    }

    /// Syndromes `S_1 … S_2t` of `y`. Odd-index values are evaluated directly,
    /// even-index values obtained as `S_2i = S_i²`.
    pub fn syndrome(&self, y: &[bool]) -> Result<Syndrome> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        let support: Vec<usize> = (0..self.n).filter(|&i| y[i]).collect();
        Ok(self.syndrome_of_support(&support))
    }

    /// Syndrome of the binary vector with the given support.
    pub fn syndrome_of_support(&self, support: &[usize]) -> Syndrome {
        let f = &self.field;
        let mut values = vec![Elem::ZERO; 2 * self.t];
        for j in (1..=2 * self.t).step_by(2) {
            values[j - 1] = support.iter().map(|&i| f.gamma_pow((i * j) as i64)).sum();
        }
        for j in (2..=2 * self.t).step_by(2) {
            values[j - 1] = f.square(values[j / 2 - 1]);
        }
        Syndrome { values }
    }

    /// Compares only the odd syndromes of `support` against `s`: `t·|support|`
    /// additions and no multiplications. The even ones follow by squaring.
    pub fn support_matches_syndrome(&self, support: &[usize], s: &Syndrome) -> bool {
        let f = &self.field;
        (1..=2 * self.t).step_by(2).all(|j| {
            let v: Elem = support.iter().map(|&i| f.gamma_pow((i * j) as i64)).sum();
            v == s.get(j)
        })
    }

    pub fn is_codeword(&self, y: &[bool]) -> Result<bool> {
        Ok(self.syndrome(y)?.is_zero())
    }

    /// Error locator polynomial `∏ (1 + α_i X)` over the support of `error`.
    pub fn elp_of_error(&self, error: &[bool]) -> Poly {
        let support: Vec<usize> = (0..error.len()).filter(|&i| error[i]).collect();
        self.elp_of_support(&support)
    }

    pub fn elp_of_support(&self, support: &[usize]) -> Poly {
        support.iter().fold(Poly::one(), |acc, &i| {
            acc.mul(&Poly::from_coeffs(vec![Elem::ONE, self.locator(i)]), &self.field)
        })
    }

    /// Indicator vector of length `n` for a set of coordinates.
    pub fn indicator(&self, support: &[usize]) -> Vec<bool> {
        let mut v = vec![false; self.n];
        for &i in support {
            v[i] = true;
        }
        v
    }
}

/// Syndromes `S_1 … S_2t` of a received word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    values: Vec<Elem>,
}

impl Syndrome {
    /// Wraps raw values `S_1 … S_2t`.
    pub fn from_values(values: Vec<Elem>) -> Self {
        Syndrome { values }
    }

    /// `S_j` for `1 ≤ j ≤ 2t`.
    pub fn get(&self, j: usize) -> Elem {
        self.values[j - 1]
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// `2t`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `S(X) = S_1 + S_2 X + ⋯ + S_2t X^{2t−1}`.
    pub fn poly(&self) -> Poly {
        Poly::from_coeffs(self.values.clone())
    }
}

/// Hex serialization of a bit vector: the most significant bit is the
/// coefficient of `X^{n−1}`, padded up to a whole number of hex digits.
pub fn bits_to_hex(bits: &[bool]) -> String {
    let digits = bits.len().div_ceil(4).max(1);
    (0..digits)
        .rev()
        .map(|d| {
            let nibble = (0..4).fold(0u32, |acc, b| {
                let i = 4 * d + b;
                acc | ((i < bits.len() && bits[i]) as u32) << b
            });
            char::from_digit(nibble, 16).unwrap()
        })
        .collect()
}

/// Parses [`bits_to_hex`] output into a vector of length `n`. Set bits at or
/// beyond position `n` are rejected.
pub fn hex_to_bits(s: &str, n: usize) -> Result<Vec<bool>> {
    let s = s.trim();
    let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    if s.is_empty() {
        return Err(Error::Parse("empty hex word".into()));
    }
    let mut bits = vec![false; n];
    for (d, ch) in s.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?;
        for b in 0..4 {
            if nibble >> b & 1 == 1 {
                let i = 4 * d + b;
                if i >= n {
                    return Err(Error::Parse(format!("word has a set bit at position {i} ≥ n = {n}")));
                }
                bits[i] = true;
            }
        }
    }
    Ok(bits)
}
