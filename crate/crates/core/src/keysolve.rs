//! Hard-decision decoding in the halved-dimension solution module.
//!
//! The key equation `σ′ ≡ S·σ (mod X^{2t})` has a solution set `M` that is a
//! module under `f·u := f(X²)u`. Splitting `u` into odd and even parts maps it
//! onto
//!
//! ```text
//! N = { (u, v) : u ≡ Ŝ·v (mod X^t) },   Ŝ = S_even / (1 + X·S_odd) mod X^t,
//! ```
//!
//! and `(u, v) ↦ v(X²) + X·u(X²)` sends `N` back onto `M`. A Gröbner basis
//! `{h1, h2}` of `N` under `<_{−1}` is built with `t` Kötter steps, one per
//! coefficient constraint, and the locator of a correctable error is the image
//! of the basis element with the smaller leading monomial.

use std::cmp::Ordering;

use crate::bch::{BchCode, Syndrome};
use crate::field::{Elem, Field, MulCounter};
use crate::modorder::{compare_monomials, Pair, Side, Weight};
use crate::poly::Poly;

/// `Ŝ(X)`, of degree below `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedSyndrome {
    pub shat: Poly,
    pub t: usize,
}

/// Computes `Ŝ = S_even / (1 + X·S_odd) mod X^t` with the power-series
/// recursion `a_i = b_i + a_{i−1}c_0 + ⋯ + a_0 c_{i−1}`, where `b_i = S_{2i+1}`
/// and `c_i = S_{2i+2}`. Charges exactly `t(t−1)/2` multiplications.
pub fn modified_syndrome(s: &Syndrome, f: &Field, counter: &MulCounter) -> ModifiedSyndrome {
    let t = s.len() / 2;
    let b = |i: usize| s.get(2 * i + 1);
    let c = |i: usize| s.get(2 * i + 2);
    let mut a: Vec<Elem> = Vec::with_capacity(t);
    for i in 0..t {
        let mut ai = b(i);
        for k in 0..i {
            ai += f.mul_counted(a[i - 1 - k], c(k), counter);
        }
        a.push(ai);
    }
    ModifiedSyndrome {
        shat: Poly::from_coeffs(a),
        t,
    }
}

impl ModifiedSyndrome {
    /// The functional `D_k(u, v)`: coefficient of `X^k` in `u − Ŝ·v`.
    pub fn constraint(&self, k: usize, p: &Pair, f: &Field) -> Elem {
        let mut acc = p.g0.coeff(k);
        for i in 0..=k.min(self.shat.len().saturating_sub(1)) {
            acc += f.mul(self.shat.coeff(i), p.g1.coeff(k - i));
        }
        acc
    }

    /// Membership test for `N`.
    pub fn contains(&self, p: &Pair, f: &Field) -> bool {
        (0..self.t).all(|k| self.constraint(k, p, f).is_zero())
    }
}

/// Outcome of one Kötter step.
#[derive(Clone, Debug)]
pub struct KoetterStep {
    pub basis: [Pair; 2],
    pub discrepancies: [Elem; 2],
    /// Index of the vector multiplied by `X − D(X·g)/Δ`; `None` if both discrepancies vanished.
    pub pivot: Option<usize>,
}

/// One Kötter iteration for a rank-2 submodule of F[X]².
///
/// `basis[j]` must be a Gröbner basis under `<_w` with the leading monomial of
/// `basis[0]` on the left and that of `basis[1]` on the right; `functional`
/// must be linear and its kernel intersected with the module must again be a
/// module. The result is a Gröbner basis of that intersection with the same
/// leading-monomial sides.
pub fn koetter_step(basis: &[Pair; 2], functional: impl Fn(&Pair) -> Elem, w: Weight, f: &Field) -> KoetterStep {
    let discrepancies = [functional(&basis[0]), functional(&basis[1])];
    let active: Vec<usize> = (0..2).filter(|&j| !discrepancies[j].is_zero()).collect();
    let Some(&first) = active.first() else {
        return KoetterStep {
            basis: basis.clone(),
            discrepancies,
            pivot: None,
        };
    };
    let pivot = active.iter().copied().fold(first, |best, j| {
        let lm = |i: usize| basis[i].leading_monomial(w).expect("basis vectors are nonzero");
        match compare_monomials(lm(j), lm(best), w) {
            Ordering::Less => j,
            _ => best,
        }
    });
    let dp = discrepancies[pivot];
    let mut out = basis.clone();
    for &j in &active {
        if j != pivot {
            let c = f.div(discrepancies[j], dp).expect("pivot discrepancy is nonzero");
            out[j] = basis[j].add(&basis[pivot].scale_counted(c, f, &MulCounter::new()));
        }
    }
    let xg = basis[pivot].shift(1);
    let c = f.div(functional(&xg), dp).expect("pivot discrepancy is nonzero");
    out[pivot] = xg.add(&basis[pivot].scale_counted(c, f, &MulCounter::new()));
    KoetterStep {
        basis: out,
        discrepancies,
        pivot: Some(pivot),
    }
}

/// Gröbner basis `{h1, h2}` of `N` under `<_{−1}` and the derived data used by
/// the Chase stage.
#[derive(Clone, Debug)]
pub struct KeyBasis {
    /// Leading monomial on the left.
    pub h1: Pair,
    /// Leading monomial on the right.
    pub h2: Pair,
    /// `ĥ1 = h11(X²) + X·h10(X²)`.
    pub hhat1: Poly,
    /// `ĥ2 = h21(X²) + X·h20(X²)`.
    pub hhat2: Poly,
    /// Chase weight `w = 2·deg(h21) − t − 1/2`.
    pub w: Weight,
    pub t: usize,
}

impl KeyBasis {
    /// `w' = 2·deg(h21) − t − 1`, the integer alternative to [`KeyBasis::w`].
    pub fn integer_weight(&self) -> Weight {
        Weight::from_twice(self.w.twice() - 1)
    }

    /// The basis element with the smaller leading monomial under `<_{−1}`.
    pub fn minimal(&self) -> &Pair {
        let w = Weight::integer(-1);
        let l1 = self.h1.leading_monomial(w).expect("nonzero");
        let l2 = self.h2.leading_monomial(w).expect("nonzero");
        if compare_monomials(l1, l2, w) == Ordering::Less {
            &self.h1
        } else {
            &self.h2
        }
    }

    /// `μ(g0·h1 + g1·h2) = g0(X²)ĥ1 + g1(X²)ĥ2`.
    pub fn glue(&self, g: &Pair, f: &Field) -> Poly {
        g.g0.compose_square()
            .mul(&self.hhat1, f)
            .add(&g.g1.compose_square().mul(&self.hhat2, f))
    }
}

/// Runs `t` Kötter steps from `{(1,0), (0,1)}`, imposing one coefficient of
/// `u ≡ Ŝ·v (mod X^t)` per step.
pub fn solve_key_basis(shat: &ModifiedSyndrome, f: &Field) -> KeyBasis {
    let w = Weight::integer(-1);
    let mut basis = [Pair::unit_left(), Pair::unit_right()];
    for k in 0..shat.t {
        basis = koetter_step(&basis, |p| shat.constraint(k, p, f), w, f).basis;
    }
    let [h1, h2] = basis;
    debug_assert_eq!(h1.leading_monomial(w).map(|m| m.side), Ok(Side::Left));
    debug_assert_eq!(h2.leading_monomial(w).map(|m| m.side), Ok(Side::Right));
    let hhat1 = Poly::mu(&h1.g0, &h1.g1);
    let hhat2 = Poly::mu(&h2.g0, &h2.g1);
    let deg_h21 = h2.g1.deg().expect("leading coordinate is nonzero") as i64;
    let t = shat.t as i64;
    let w = Weight::from_twice(2 * (2 * deg_h21 - t) - 1);
    KeyBasis {
        h1,
        h2,
        hhat1,
        hhat2,
        w,
        t: shat.t,
    }
}

/// Syndrome → modified syndrome → key basis.
pub fn key_basis_for(s: &Syndrome, f: &Field) -> KeyBasis {
    solve_key_basis(&modified_syndrome(s, f, &MulCounter::new()), f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HdOutcome {
    /// Sorted error positions; empty for a codeword.
    Decoded(Vec<usize>),
    Failure,
}

impl HdOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, HdOutcome::Decoded(_))
    }
}

/// Positions `i` with `σ(γ^{−i}) = 0`, by substitution over all of F*.
pub fn locator_roots(code: &BchCode, sigma: &Poly) -> Vec<usize> {
    let f = code.field();
    (0..code.n())
        .filter(|&i| sigma.eval(f.gamma_pow(-(i as i64)), f).is_zero())
        .collect()
}

/// Hard-decision decoding up to `t` errors given a precomputed key basis.
pub fn hd_decode_with_key(code: &BchCode, key: &KeyBasis) -> HdOutcome {
    let m = key.minimal();
    let sigma = Poly::mu(&m.g0, &m.g1);
    match sigma.deg() {
        Some(d) if d <= code.t() => {
            let roots = locator_roots(code, &sigma);
            if roots.len() == d {
                HdOutcome::Decoded(roots)
            } else {
                HdOutcome::Failure
            }
        }
        _ => HdOutcome::Failure,
    }
}

pub fn hd_decode(code: &BchCode, s: &Syndrome) -> HdOutcome {
    if s.is_zero() {
        return HdOutcome::Decoded(Vec::new());
    }
    hd_decode_with_key(code, &key_basis_for(s, code.field()))
}
