//! Pairs in F[X]² and the weighted monomial order `<_w`.
//!
//! A monomial is `(X^j, 0)` (on the left) or `(0, X^j)` (on the right). Its
//! `(1, w)`-weighted degree is `j` on the left and `j + w` on the right, and
//! `<_w` compares weighted degrees first, breaking ties in favor of the right
//! side. Weights may be half-integers, so every weight and weighted degree is
//! carried doubled as an exact integer.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, MulCounter};
use crate::poly::Poly;

/// A weight `w` stored as `2w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    twice: i64,
}

impl Weight {
    pub const fn from_twice(twice: i64) -> Self {
        Weight { twice }
    }

    pub const fn integer(w: i64) -> Self {
        Weight { twice: 2 * w }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_half_integer(self) -> bool {
        self.twice % 2 != 0
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub side: Side,
    pub degree: usize,
}

impl Monomial {
    pub const fn left(degree: usize) -> Self {
        Monomial {
            side: Side::Left,
            degree,
        }
    }

    pub const fn right(degree: usize) -> Self {
        Monomial {
            side: Side::Right,
            degree,
        }
    }

    /// Doubled `(1, w)`-weighted degree.
    pub fn wdeg(self, w: Weight) -> i64 {
        match self.side {
            Side::Left => 2 * self.degree as i64,
            Side::Right => 2 * self.degree as i64 + w.twice,
        }
    }

    /// `X·self`.
    pub fn times_x(self) -> Self {
        Monomial {
            side: self.side,
            degree: self.degree + 1,
        }
    }
}

/// Total order `<_w` on monomials of F[X]².
pub fn compare_monomials(m1: Monomial, m2: Monomial, w: Weight) -> Ordering {
    match (m1.side, m2.side) {
        (Side::Left, Side::Left) | (Side::Right, Side::Right) => m1.degree.cmp(&m2.degree),
        // (X^j1, 0) <_w (0, X^j2) iff j1 ≤ j2 + w.
        (Side::Left, Side::Right) => {
            if m1.wdeg(w) <= m2.wdeg(w) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (Side::Right, Side::Left) => compare_monomials(m2, m1, w).reverse(),
    }
}

/// An element `(g0, g1)` of F[X]², identified with `g0(X) + Y·g1(X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Pair {
    pub g0: Poly,
    pub g1: Poly,
}

impl Pair {
    pub fn new(g0: Poly, g1: Poly) -> Self {
        Pair { g0, g1 }
    }

    /// `(1, 0)`.
    pub fn unit_left() -> Self {
        Pair::new(Poly::one(), Poly::zero())
    }

    /// `(0, 1)`.
    pub fn unit_right() -> Self {
        Pair::new(Poly::zero(), Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.g0.is_zero() && self.g1.is_zero()
    }

    pub fn add(&self, other: &Pair) -> Pair {
        Pair::new(self.g0.add(&other.g0), self.g1.add(&other.g1))
    }

    /// Multiplies both coordinates by the scalar polynomial `a`.
    pub fn mul_poly(&self, a: &Poly, f: &Field) -> Pair {
        Pair::new(self.g0.mul(a, f), self.g1.mul(a, f))
    }

    pub fn shift(&self, k: usize) -> Pair {
        Pair::new(self.g0.shift(k), self.g1.shift(k))
    }

    pub fn scale_counted(&self, c: Elem, f: &Field, counter: &MulCounter) -> Pair {
        Pair::new(
            self.g0.scale_counted(c, f, counter),
            self.g1.scale_counted(c, f, counter),
        )
    }

    pub fn mul_x_plus_counted(&self, a: Elem, f: &Field, counter: &MulCounter) -> Pair {
        Pair::new(
            self.g0.mul_x_plus_counted(a, f, counter),
            self.g1.mul_x_plus_counted(a, f, counter),
        )
    }

    /// Sum of the degrees of the nonzero coordinates.
    pub fn degree_sum(&self) -> usize {
        self.g0.deg().unwrap_or(0) + self.g1.deg().unwrap_or(0)
    }

    /// Doubled weighted degree `max(2·deg g0, 2·deg g1 + 2w)`; `None` for `(0, 0)`.
    pub fn wdeg(&self, w: Weight) -> Option<i64> {
        let left = self.g0.deg().map(|d| Monomial::left(d).wdeg(w));
        let right = self.g1.deg().map(|d| Monomial::right(d).wdeg(w));
        left.max(right)
    }

    /// Order `max(deg g0 + 1, deg g1)`; `None` for `(0, 0)`.
    pub fn ord(&self) -> Option<i64> {
        let left = self.g0.deg().map(|d| d as i64 + 1);
        let right = self.g1.deg().map(|d| d as i64);
        left.max(right)
    }

    /// The `<_w`-largest monomial appearing in the pair.
    pub fn leading_monomial(&self, w: Weight) -> Result<Monomial> {
        match (self.g0.deg(), self.g1.deg()) {
            (None, None) => Err(Error::ZeroPair),
            (Some(d), None) => Ok(Monomial::left(d)),
            (None, Some(d)) => Ok(Monomial::right(d)),
            (Some(d0), Some(d1)) => {
                let (l, r) = (Monomial::left(d0), Monomial::right(d1));
                Ok(match compare_monomials(l, r, w) {
                    Ordering::Greater => l,
                    _ => r,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xk(k: usize) -> Poly {
        Poly::monomial(Elem::ONE, k)
    }

    fn all_monomials(max_deg: usize) -> Vec<Monomial> {
        (0..=max_deg)
            .flat_map(|d| [Monomial::left(d), Monomial::right(d)])
            .collect()
    }

    #[test]
    fn wdeg_examples() {
        assert_eq!(Pair::unit_left().wdeg(Weight::from_twice(-7)), Some(0));
        assert_eq!(Pair::unit_right().wdeg(Weight::integer(-1)), Some(-2));
        assert_eq!(Pair::new(xk(2), xk(1)).wdeg(Weight::from_twice(-1)), Some(4));
        assert_eq!(Pair::default().wdeg(Weight::integer(0)), None);
    }

    #[test]
    fn ord_examples() {
        assert_eq!(Pair::unit_left().ord(), Some(1));
        assert_eq!(Pair::unit_right().ord(), Some(0));
        // ord = wdeg at w = −1, plus one.
        let p = Pair::new(xk(3), xk(5));
        assert_eq!(p.ord().unwrap(), p.wdeg(Weight::integer(-1)).unwrap() / 2 + 1);
    }

    #[test]
    fn compare_examples() {
        let w = Weight::integer(-1);
        // 0 ≤ 0 + (−1) is false, so the right monomial is smaller.
        assert_eq!(
            compare_monomials(Monomial::left(0), Monomial::right(0), w),
            Ordering::Greater
        );
        assert_eq!(
            compare_monomials(Monomial::left(1), Monomial::left(3), w),
            Ordering::Less
        );
        assert_eq!(
            compare_monomials(Monomial::right(2), Monomial::right(2), w),
            Ordering::Equal
        );
    }

    #[test]
    fn leading_monomial_examples() {
        let half = Weight::from_twice(-1);
        assert_eq!(Pair::unit_left().leading_monomial(half).unwrap(), Monomial::left(0));
        assert_eq!(
            Pair::new(xk(2), xk(1)).leading_monomial(half).unwrap(),
            Monomial::left(2)
        );
        assert_eq!(Pair::default().leading_monomial(half), Err(Error::ZeroPair));
        // Integer weight tie: (X^1, 0) vs (0, X^0) at w = 1; the right side wins.
        let p = Pair::new(xk(1), xk(0));
        assert_eq!(p.leading_monomial(Weight::integer(1)).unwrap(), Monomial::right(0));
    }

    #[test]
    fn order_axioms_exhaustive() {
        for w in [Weight::integer(-1), Weight::from_twice(-1), Weight::from_twice(3)] {
            let ms = all_monomials(6);
            for &a in &ms {
                assert_eq!(compare_monomials(a, a, w), Ordering::Equal);
                for &b in &ms {
                    let ab = compare_monomials(a, b, w);
                    assert_eq!(ab, compare_monomials(b, a, w).reverse());
                    if ab == Ordering::Equal {
                        assert_eq!(a, b);
                    }
                    if ab == Ordering::Less {
                        assert_eq!(compare_monomials(a.times_x(), b.times_x(), w), Ordering::Less);
                    }
                    for &c in &ms {
                        if ab == Ordering::Less && compare_monomials(b, c, w) == Ordering::Less {
                            assert_eq!(compare_monomials(a, c, w), Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn half_integer_weights_never_tie_across_sides() {
        let w = Weight::from_twice(-3);
        for a in 0..10 {
            for b in 0..10 {
                assert_ne!(Monomial::left(a).wdeg(w), Monomial::right(b).wdeg(w));
            }
        }
    }

    #[test]
    fn adjacent_integer_orders_differ_only_on_weighted_ties() {
        let ms = all_monomials(8);
        for wi in -4..=4 {
            let (w, w1) = (Weight::integer(wi), Weight::integer(wi + 1));
            for &a in &ms {
                for &b in &ms {
                    if compare_monomials(a, b, w1) == Ordering::Less && compare_monomials(a, b, w) == Ordering::Greater
                    {
                        assert_eq!(a.wdeg(w1), b.wdeg(w1), "{a:?} {b:?} w={wi}");
                    }
                }
            }
        }
    }
}
