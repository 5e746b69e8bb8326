//! Fast Chase decoding over the tree of test patterns.
//!
//! Vertices at depth `r` are the weight-`r` subsets of the `η` least reliable
//! coordinates; each non-root vertex hangs off the subset obtained by deleting
//! its largest index. Every edge runs one Kötter iteration on a two-element
//! Gröbner basis of the module `L(J)` of pairs `(g0, g1)` whose image
//! `g0(X²)ĥ1 + g1(X²)ĥ2` vanishes at `α⁻¹` for each flipped locator `α ∈ J`.
//! A zero discrepancy on the minimal basis vector triggers an exhaustive
//! search for the error locator.

use std::cell::OnceCell;
use std::cmp::Ordering;
use std::collections::HashSet;

use serde::Serialize;

use crate::bch::{BchCode, Syndrome};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, MulCounter};
use crate::keysolve::KeyBasis;
use crate::modorder::{compare_monomials, Pair, Weight};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EvalMethod {
    /// Strip `gcd(g0, g1)` and compare the locator degree with its root count.
    GcdDivision,
    /// Keep roots of `σ̂` that are not roots of `σ̂′`, then check the syndrome.
    DerivativeScreen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChaseConfig {
    pub eta: usize,
    pub r_max: usize,
    pub eval: EvalMethod,
    /// Keep traversing after the first verified candidate.
    pub collect_all: bool,
    /// Run both evaluation methods on every fire and count disagreements.
    pub cross_check: bool,
    /// Use the integer weight `2·deg(h21) − t − 1` instead of the half-integer one.
    #[doc(hidden)]
    pub integer_weight: bool,
}

impl ChaseConfig {
    pub fn new(eta: usize, r_max: usize) -> Self {
        ChaseConfig {
            eta,
            r_max,
            eval: EvalMethod::GcdDivision,
            collect_all: false,
            cross_check: false,
            integer_weight: false,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.r_max == 0 || self.r_max > self.eta || self.eta > n {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= r_max <= eta <= n, got r_max = {}, eta = {}, n = {n}",
                self.r_max, self.eta
            )));
        }
        Ok(())
    }
}

/// One edge of the decoding tree. `path` lists indices into the unreliable
/// set in increasing order; the edge adds `path.last()` to its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub path: Vec<usize>,
}

impl TreeEdge {
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    pub fn added(&self) -> usize {
        *self.path.last().expect("edges have nonempty paths")
    }

    pub fn parent(&self) -> &[usize] {
        &self.path[..self.path.len() - 1]
    }
}

/// Depth-first enumeration of all nonempty subsets of `{0, …, η−1}` of size at
/// most `r_max`, children in increasing order of the added index.
pub fn tree_schedule(eta: usize, r_max: usize) -> Vec<TreeEdge> {
    fn visit(path: &mut Vec<usize>, eta: usize, r_max: usize, out: &mut Vec<TreeEdge>) {
        if path.len() == r_max {
            return;
        }
        let start = path.last().map_or(0, |&m| m + 1);
        for i in start..eta {
            path.push(i);
            out.push(TreeEdge { path: path.clone() });
            visit(path, eta, r_max, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    visit(&mut Vec::new(), eta, r_max, &mut out);
    out
}

/// Per-position values for the unreliable set.
#[derive(Clone, Debug)]
pub struct UnreliableSet {
    pub positions: Vec<usize>,
    /// `α⁻²`.
    pub inv_sq: Vec<Elem>,
    /// `ĥ2(α⁻¹)/ĥ1(α⁻¹)` where `ĥ1(α⁻¹) ≠ 0`.
    pub ratio: Vec<Option<Elem>>,
}

impl UnreliableSet {
    pub fn new(code: &BchCode, key: &KeyBasis, positions: &[usize]) -> Self {
        let f = code.field();
        let mut inv_sq = Vec::with_capacity(positions.len());
        let mut ratio = Vec::with_capacity(positions.len());
        for &p in positions {
            let x = f.gamma_pow(-(p as i64));
            inv_sq.push(f.square(x));
            let h1 = key.hhat1.eval(x, f);
            let h2 = key.hhat2.eval(x, f);
            debug_assert!(!(h1.is_zero() && h2.is_zero()));
            ratio.push(f.div(h2, h1).ok());
        }
        UnreliableSet {
            positions: positions.to_vec(),
            inv_sq,
            ratio,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Values at `x = γ^{−i}` for every position `i`.
#[derive(Clone, Debug)]
struct GlobalTables {
    x_sq: Vec<Elem>,
    h1: Vec<Elem>,
    h2: Vec<Elem>,
    dh1: Vec<Elem>,
    dh2: Vec<Elem>,
}

impl GlobalTables {
    fn new(code: &BchCode, key: &KeyBasis) -> Self {
        let f = code.field();
        let (d1, d2) = (key.hhat1.formal_derivative(), key.hhat2.formal_derivative());
        let xs: Vec<Elem> = (0..code.n()).map(|i| f.gamma_pow(-(i as i64))).collect();
        let table = |p: &Poly| xs.iter().map(|&x| p.eval(x, f)).collect();
        GlobalTables {
            x_sq: xs.iter().map(|&x| f.square(x)).collect(),
            h1: table(&key.hhat1),
            h2: table(&key.hhat2),
            dh1: table(&d1),
            dh2: table(&d2),
        }
    }
}

/// Result of one edge update.
#[derive(Clone, Debug)]
pub struct EdgeUpdate {
    pub basis: [Pair; 2],
    pub deltas: [Elem; 2],
    /// The vector multiplied by `X + α⁻²`; `None` never occurs for valid input.
    pub pivot: Option<usize>,
    pub muls: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verification {
    DegreeCheck,
    SyndromeCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    /// Sorted error positions relative to the received word.
    pub error: Vec<usize>,
    /// Flipped positions of the vertex whose incoming edge fired.
    pub path: Vec<usize>,
    pub verification: Verification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DepthStats {
    pub edges: u64,
    pub muls: u64,
    pub max_muls: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChaseStats {
    pub edges: u64,
    pub fires: u64,
    /// Fires whose evaluation rejected.
    pub false_fires: u64,
    /// Accepted evaluations, duplicates included.
    pub accepted: u64,
    pub edge_muls: u64,
    pub eval_muls: u64,
    /// Indexed by depth; slot 0 is unused.
    pub per_depth: Vec<DepthStats>,
    /// Edges at depth `r` whose output degree sum exceeds `2r − 1`.
    pub degree_violations: u64,
    /// Edges at depth `r` charged more than `4r + 1` multiplications.
    pub cost_violations: u64,
    /// Fires on which the two evaluation methods disagreed (cross-check only).
    pub method_disagreements: u64,
}

#[derive(Clone, Debug, Default)]
pub struct ChaseOutcome {
    pub candidates: Vec<Candidate>,
    pub stats: ChaseStats,
}

impl ChaseOutcome {
    /// The candidate with the smallest total reliability over its error positions.
    pub fn best(&self, reliabilities: &[f64]) -> Option<&Candidate> {
        let cost = |c: &Candidate| c.error.iter().map(|&i| reliabilities[i]).sum::<f64>();
        self.candidates.iter().min_by(|a, b| cost(a).total_cmp(&cost(b)))
    }
}

/// Everything the traversal reports about one edge.
#[derive(Debug)]
pub struct EdgeEvent<'a> {
    pub edge: &'a TreeEdge,
    pub input: &'a [Pair; 2],
    pub update: &'a EdgeUpdate,
    /// Index of the input vector that triggered evaluation.
    pub fired: Option<usize>,
    /// Error support accepted by the configured method.
    pub accepted: Option<&'a [usize]>,
}

/// Fast Chase decoder state for one received word.
pub struct ChaseDecoder<'a> {
    code: &'a BchCode,
    key: &'a KeyBasis,
    syndrome: &'a Syndrome,
    unreliable: UnreliableSet,
    weight: Weight,
    tables: OnceCell<GlobalTables>,
}

impl<'a> ChaseDecoder<'a> {
    pub fn new(code: &'a BchCode, key: &'a KeyBasis, syndrome: &'a Syndrome, positions: &[usize]) -> Self {
        ChaseDecoder {
            code,
            key,
            syndrome,
            unreliable: UnreliableSet::new(code, key, positions),
            weight: key.w,
            tables: OnceCell::new(),
        }
    }

    #[doc(hidden)]
    pub fn with_integer_weight(mut self) -> Self {
        self.weight = self.key.integer_weight();
        self
    }

    pub fn unreliable(&self) -> &UnreliableSet {
        &self.unreliable
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    fn field(&self) -> &Field {
        self.code.field()
    }

    fn tables(&self) -> &GlobalTables {
        self.tables.get_or_init(|| GlobalTables::new(self.code, self.key))
    }

    /// Discrepancy of `g` against the point with unreliable index `u`.
    fn discrepancy(&self, g: &Pair, u: usize, counter: &MulCounter) -> Elem {
        let f = self.field();
        let a = self.unreliable.inv_sq[u];
        let v1 = g.g1.eval_counted(a, f, counter);
        match self.unreliable.ratio[u] {
            Some(ratio) => {
                let v0 = g.g0.eval_counted(a, f, counter);
                if g.g1.is_zero() {
                    v0
                } else {
                    v0 + f.mul_counted(ratio, v1, counter)
                }
            }
            None => v1,
        }
    }

    /// Edge update: adjoins the point with unreliable index `u` to the module
    /// whose Gröbner basis is `basis`.
    pub fn edge(&self, basis: &[Pair; 2], u: usize) -> EdgeUpdate {
        let f = self.field();
        let counter = MulCounter::new();
        let deltas = [
            self.discrepancy(&basis[0], u, &counter),
            self.discrepancy(&basis[1], u, &counter),
        ];
        assert!(
            !(deltas[0].is_zero() && deltas[1].is_zero()),
            "both discrepancies vanished on a tree edge"
        );
        let active: Vec<usize> = (0..2).filter(|&j| !deltas[j].is_zero()).collect();
        let pivot = active
            .iter()
            .copied()
            .min_by(|&i, &j| self.compare_lm(&basis[i], &basis[j]))
            .expect("at least one discrepancy is nonzero");
        let mut out = basis.clone();
        for &j in &active {
            if j == pivot {
                out[j] = basis[j].mul_x_plus_counted(self.unreliable.inv_sq[u], f, &counter);
            } else {
                counter.charge(1);
                let c = f.div(deltas[pivot], deltas[j]).expect("nonzero discrepancy");
                out[j] = basis[j].scale_counted(c, f, &counter).add(&basis[pivot]);
            }
        }
        EdgeUpdate {
            basis: out,
            deltas,
            pivot: Some(pivot),
            muls: counter.get(),
        }
    }

    fn compare_lm(&self, a: &Pair, b: &Pair) -> Ordering {
        let lm = |p: &Pair| p.leading_monomial(self.weight).expect("basis vectors are nonzero");
        compare_monomials(lm(a), lm(b), self.weight)
    }

    /// Index of the input vector whose zero discrepancy signals a hit: `g1`
    /// on depth-1 edges, the `<_w`-minimal vector deeper down.
    pub fn watched(&self, depth: usize, input: &[Pair; 2]) -> usize {
        if depth == 1 {
            return 0;
        }
        match self.compare_lm(&input[0], &input[1]) {
            Ordering::Greater => 1,
            _ => 0,
        }
    }

    pub fn stopping_criterion(&self, depth: usize, input: &[Pair; 2], deltas: &[Elem; 2]) -> Option<usize> {
        let j = self.watched(depth, input);
        deltas[j].is_zero().then_some(j)
    }

    /// `σ̃ = μ(f1·h1 + f2·h2)` with `(f1, f2) = g / gcd(g0, g1)`; accepts the
    /// root set `E` iff `deg σ̃ = |E|`.
    pub fn evaluate_gcd_division(&self, g: &Pair, counter: &MulCounter) -> Option<Vec<usize>> {
        let f = self.field();
        let tab = self.tables();
        let t = Poly::gcd(&g.g0, &g.g1, f).ok()?;
        let f1 = g.g0.divide_exact(&t, f).expect("gcd divides");
        let f2 = g.g1.divide_exact(&t, f).expect("gcd divides");
        let deg_h10 = self.key.h1.g0.deg().expect("LM of h1 is on the left");
        let deg_h21 = self.key.h2.g1.deg().expect("LM of h2 is on the right");
        let delta = f1
            .deg()
            .map(|d| 2 * d + 2 * deg_h10 + 1)
            .max(f2.deg().map(|d| 2 * d + 2 * deg_h21))
            .expect("nonzero pair");
        let mut e = Vec::new();
        for i in 0..self.code.n() {
            let a = f1.eval_counted(tab.x_sq[i], f, counter);
            let b = f2.eval_counted(tab.x_sq[i], f, counter);
            let v = f.mul_counted(a, tab.h1[i], counter) + f.mul_counted(b, tab.h2[i], counter);
            if v.is_zero() {
                e.push(i);
                if e.len() > delta {
                    return None;
                }
            }
        }
        (e.len() == delta).then_some(e)
    }

    /// Roots of `σ̂ = g0(X²)ĥ1 + g1(X²)ĥ2` that are not roots of `σ̂′`,
    /// accepted iff their odd syndromes match.
    pub fn evaluate_derivative_screen(&self, g: &Pair, counter: &MulCounter) -> Option<Vec<usize>> {
        let f = self.field();
        let tab = self.tables();
        let mut e = Vec::new();
        for i in 0..self.code.n() {
            let a = g.g0.eval_counted(tab.x_sq[i], f, counter);
            let b = g.g1.eval_counted(tab.x_sq[i], f, counter);
            let s = f.mul_counted(a, tab.h1[i], counter) + f.mul_counted(b, tab.h2[i], counter);
            if !s.is_zero() {
                continue;
            }
            let ds = f.mul_counted(a, tab.dh1[i], counter) + f.mul_counted(b, tab.dh2[i], counter);
            if !ds.is_zero() {
                e.push(i);
            }
        }
        self.code.support_matches_syndrome(&e, self.syndrome).then_some(e)
    }

    pub fn evaluate(&self, method: EvalMethod, g: &Pair, counter: &MulCounter) -> Option<Vec<usize>> {
        match method {
            EvalMethod::GcdDivision => self.evaluate_gcd_division(g, counter),
            EvalMethod::DerivativeScreen => self.evaluate_derivative_screen(g, counter),
        }
    }

    /// Runs edge updates along a single chain `∅ → {p0} → {p0, p1} → ⋯` of
    /// unreliable indices and returns each edge's update and fired index.
    pub fn run_path(&self, path: &[usize]) -> Vec<(EdgeUpdate, Option<usize>, [Pair; 2])> {
        let mut basis = [Pair::unit_left(), Pair::unit_right()];
        let mut out = Vec::with_capacity(path.len());
        for (r, &u) in path.iter().enumerate() {
            let update = self.edge(&basis, u);
            let fired = self.stopping_criterion(r + 1, &basis, &update.deltas);
            let input = std::mem::replace(&mut basis, update.basis.clone());
            out.push((update, fired, input));
        }
        out
    }

    /// Depth-first traversal of the decoding tree, reporting every edge to
    /// `observer`.
    pub fn traverse(&self, cfg: &ChaseConfig, mut observer: impl FnMut(&EdgeEvent)) -> ChaseOutcome {
        let schedule = tree_schedule(self.unreliable.len(), cfg.r_max.min(self.unreliable.len()));
        let mut slots: Vec<[Pair; 2]> = vec![[Pair::unit_left(), Pair::unit_right()]];
        let mut stats = ChaseStats {
            per_depth: vec![DepthStats::default(); cfg.r_max + 1],
            ..Default::default()
        };
        let mut seen = HashSet::new();
        let mut candidates = Vec::new();
        let eval_counter = MulCounter::new();

        for edge in &schedule {
            let r = edge.depth();
            let update = self.edge(&slots[r - 1], edge.added());
            stats.edges += 1;
            stats.edge_muls += update.muls;
            let d = &mut stats.per_depth[r];
            d.edges += 1;
            d.muls += update.muls;
            d.max_muls = d.max_muls.max(update.muls);
            if update.muls > 4 * r as u64 + 1 {
                stats.cost_violations += 1;
            }
            let deg_sum = update.basis[0].degree_sum() + update.basis[1].degree_sum();
            if deg_sum > 2 * r - 1 {
                stats.degree_violations += 1;
            }
            debug_assert!(deg_sum < 2 * r, "degree sum {deg_sum} at depth {r}");

            let fired = self.stopping_criterion(r, &slots[r - 1], &update.deltas);
            let mut accepted = None;
            if let Some(j) = fired {
                stats.fires += 1;
                let g = &slots[r - 1][j];
                accepted = self.evaluate(cfg.eval, g, &eval_counter);
                if cfg.cross_check {
                    let other = match cfg.eval {
                        EvalMethod::GcdDivision => EvalMethod::DerivativeScreen,
                        EvalMethod::DerivativeScreen => EvalMethod::GcdDivision,
                    };
                    if self.evaluate(other, g, &MulCounter::new()) != accepted {
                        stats.method_disagreements += 1;
                    }
                }
                match &accepted {
                    Some(_) => stats.accepted += 1,
                    None => stats.false_fires += 1,
                }
            }
            observer(&EdgeEvent {
                edge,
                input: &slots[r - 1],
                update: &update,
                fired,
                accepted: accepted.as_deref(),
            });

            slots.truncate(r);
            slots.push(update.basis);
            if let Some(error) = accepted {
                if seen.insert(error.clone()) {
                    let path = edge.path.iter().map(|&u| self.unreliable.positions[u]).collect();
                    let verification = match cfg.eval {
                        EvalMethod::GcdDivision => Verification::DegreeCheck,
                        EvalMethod::DerivativeScreen => Verification::SyndromeCheck,
                    };
                    candidates.push(Candidate {
                        error,
                        path,
                        verification,
                    });
                }
                if !cfg.collect_all {
                    break;
                }
            }
        }
        stats.eval_muls = eval_counter.get();
        ChaseOutcome { candidates, stats }
    }
}

/// The `η` least reliable positions, ties broken by lower index.
pub fn least_reliable(reliabilities: &[f64], eta: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..reliabilities.len()).collect();
    idx.sort_by(|&a, &b| reliabilities[a].total_cmp(&reliabilities[b]).then(a.cmp(&b)));
    idx.truncate(eta);
    idx
}

/// Chase decoding of a word with syndrome `syndrome` and key basis `key`.
pub fn chase_decode(
    code: &BchCode,
    key: &KeyBasis,
    syndrome: &Syndrome,
    reliabilities: &[f64],
    cfg: &ChaseConfig,
) -> Result<ChaseOutcome> {
    cfg.validate(code.n())?;
    if reliabilities.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: reliabilities.len(),
        });
    }
    let positions = least_reliable(reliabilities, cfg.eta);
    let mut dec = ChaseDecoder::new(code, key, syndrome, &positions);
    if cfg.integer_weight {
        dec = dec.with_integer_weight();
    }
    Ok(dec.traverse(cfg, |_| {}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keysolve::key_basis_for;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn schedule_small_cases() {
        let s = tree_schedule(2, 2);
        let paths: Vec<_> = s.iter().map(|e| e.path.clone()).collect();
        assert_eq!(paths, vec![vec![0], vec![0, 1], vec![1]]);
        assert_eq!(tree_schedule(4, 2).len(), 10);
        for (eta, r) in [(5, 5), (6, 3), (8, 8)] {
            assert_eq!(
                tree_schedule(eta, r).len(),
                (1..=r).map(|k| binom(eta, k)).sum::<usize>()
            );
        }
    }

    #[test]
    fn schedule_parents_precede_children() {
        let s = tree_schedule(5, 5);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(vec![]);
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        for e in &s {
            let parent = e.parent().to_vec();
            assert!(seen.contains(&parent));
            assert!(parent.iter().all(|&p| p < e.added()));
            // The parent must be the most recent vertex at depth r − 1.
            stack.truncate(e.depth());
            assert_eq!(stack.last().unwrap(), &parent);
            stack.push(e.path.clone());
            assert!(seen.insert(e.path.clone()));
        }
    }

    #[test]
    fn config_validation() {
        assert!(ChaseConfig::new(4, 2).validate(15).is_ok());
        assert!(ChaseConfig::new(4, 0).validate(15).is_err());
        assert!(ChaseConfig::new(4, 5).validate(15).is_err());
        assert!(ChaseConfig::new(16, 2).validate(15).is_err());
    }

    #[test]
    fn least_reliable_breaks_ties_by_index() {
        assert_eq!(least_reliable(&[0.5, 0.1, 0.5, 0.1, 2.0], 3), vec![1, 3, 0]);
    }

    #[test]
    fn root_edge_discrepancies() {
        let code = BchCode::from_degree(6, 3, None).unwrap();
        let y = code.indicator(&[1, 9, 20, 33]);
        let s = code.syndrome(&y).unwrap();
        let key = key_basis_for(&s, code.field());
        let dec = ChaseDecoder::new(&code, &key, &s, &[5, 7]);
        let up = dec.edge(&[Pair::unit_left(), Pair::unit_right()], 0);
        match dec.unreliable().ratio[0] {
            Some(ratio) => assert_eq!(up.deltas, [Elem::ONE, ratio]),
            None => assert_eq!(up.deltas, [Elem::ZERO, Elem::ONE]),
        }
    }
}
