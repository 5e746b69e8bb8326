//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use fastchase::bch::BchCode;
use fastchase::field::Elem;
use rand::seq::index::sample;
use rand::Rng;

/// All subsets of `0..n` of size exactly `k`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..=k).flat_map(|j| subsets(n, j)).collect()
}

/// Symmetric difference of two sorted supports.
pub fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (a, b): (BTreeSet<_>, BTreeSet<_>) = (a.iter().copied().collect(), b.iter().copied().collect());
    a.symmetric_difference(&b).copied().collect()
}

/// Nearest-codeword table: syndrome → the unique error of weight ≤ t.
pub struct HdTable {
    map: HashMap<Vec<Elem>, Vec<usize>>,
}

impl HdTable {
    pub fn new(code: &BchCode) -> Self {
        let mut map = HashMap::new();
        for e in subsets_up_to(code.n(), code.t()) {
            let prev = map.insert(code.syndrome_of_support(&e).values().to_vec(), e);
            assert!(prev.is_none(), "two errors of weight <= t share a syndrome");
        }
        HdTable { map }
    }

    pub fn decode(&self, code: &BchCode, support: &[usize]) -> Option<Vec<usize>> {
        self.map.get(code.syndrome_of_support(support).values()).cloned()
    }
}

/// Plain Chase: for each test pattern `P` on `unreliable` of weight ≤ `r_max`
/// (the empty pattern included), flip `P` and hard-decode; the candidate is
/// `P ⊕ e′`.
pub fn chase_oracle(
    code: &BchCode,
    table: &HdTable,
    y_support: &[usize],
    unreliable: &[usize],
    r_max: usize,
) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for p in subsets_up_to(unreliable.len(), r_max) {
        let pattern: Vec<usize> = {
            let mut v: Vec<usize> = p.iter().map(|&k| unreliable[k]).collect();
            v.sort_unstable();
            v
        };
        let flipped = sym_diff(y_support, &pattern);
        if let Some(e) = table.decode(code, &flipped) {
            out.insert(sym_diff(&pattern, &e));
        }
    }
    out
}

pub fn random_support(rng: &mut impl Rng, n: usize, weight: usize) -> Vec<usize> {
    let mut v = sample(rng, n, weight).into_vec();
    v.sort_unstable();
    v
}

use fastchase::field::Field;
use fastchase::modorder::{compare_monomials, Monomial, Pair, Side, Weight};
use fastchase::poly::Poly;

/// Incrementally built span of vectors over GF(2^s), kept in echelon form.
pub struct Span<'a> {
    f: &'a Field,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl<'a> Span<'a> {
    pub fn new(f: &'a Field) -> Self {
        Span { f, rows: Vec::new() }
    }

    /// Adds `v`; returns `true` if it was already in the span.
    pub fn insert(&mut self, mut v: Vec<Elem>) -> bool {
        for (p, row) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x += self.f.mul(c, r);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => true,
            Some(p) => {
                let inv = self.f.inv(v[p]).unwrap();
                let v: Vec<Elem> = v.iter().map(|&x| self.f.mul(x, inv)).collect();
                for (_, row) in self.rows.iter_mut() {
                    let c = row[p];
                    if !c.is_zero() {
                        for (x, &r) in row.iter_mut().zip(&v) {
                            *x += self.f.mul(c, r);
                        }
                    }
                }
                self.rows.push((p, v));
                false
            }
        }
    }
}

pub fn monomial_pair(m: Monomial) -> Pair {
    let x = Poly::monomial(Elem::ONE, m.degree);
    match m.side {
        Side::Left => Pair::new(x, Poly::zero()),
        Side::Right => Pair::new(Poly::zero(), x),
    }
}

/// Leading monomials under `<_w` of nonzero elements of the module cut out by
/// the linear `constraints`, among monomials of degree at most `max_deg`.
/// A monomial `m` is a leading monomial iff its constraint column lies in the
/// span of the columns of all smaller monomials.
pub fn leading_monomials(
    f: &Field,
    constraints: impl Fn(&Pair) -> Vec<Elem>,
    w: Weight,
    max_deg: usize,
) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = (0..=max_deg)
        .flat_map(|d| [Monomial::left(d), Monomial::right(d)])
        .collect();
    ms.sort_by(|&a, &b| compare_monomials(a, b, w));
    let mut span = Span::new(f);
    ms.into_iter()
        .filter(|&m| span.insert(constraints(&monomial_pair(m))))
        .collect()
}

/// The leading monomials generated by a two-element basis with leading
/// monomials `l1` (left) and `l2` (right), up to degree `max_deg`.
pub fn generated_monomials(l1: Monomial, l2: Monomial, max_deg: usize) -> BTreeSet<(bool, usize)> {
    let mut out = BTreeSet::new();
    for d in 0..=max_deg {
        if d >= l1.degree {
            out.insert((false, d));
        }
        if d >= l2.degree {
            out.insert((true, d));
        }
    }
    out
}

pub fn as_keys(ms: &[Monomial], max_deg: usize) -> BTreeSet<(bool, usize)> {
    ms.iter()
        .filter(|m| m.degree <= max_deg)
        .map(|m| (m.side == Side::Right, m.degree))
        .collect()
}
