//! Reproducible experiment inputs: BPSK over AWGN, controlled error
//! injection, and the false-fire measurement for the stopping criterion.
//!
//! Every trial draws from its own ChaCha8 stream, `seed_from_u64(seed)` with
//! the stream number set to the trial index, so results are independent of
//! scheduling and replay bit-for-bit across platforms.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::bch::BchCode;
use crate::chase::{ChaseConfig, ChaseDecoder, EvalMethod};
use crate::error::{Error, Result};
use crate::field::MulCounter;
use crate::keysolve::key_basis_for;
use crate::pipeline::decode;

/// The generator for `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSample {
    pub hard_bits: Vec<bool>,
    /// Lower means less reliable.
    pub reliabilities: Vec<f64>,
    pub codeword: Vec<bool>,
    pub error: Vec<bool>,
}

impl ChannelSample {
    pub fn error_support(&self) -> Vec<usize> {
        (0..self.error.len()).filter(|&i| self.error[i]).collect()
    }
}

pub fn random_codeword(code: &BchCode, rng: &mut impl Rng) -> Vec<bool> {
    let msg: Vec<bool> = (0..code.k()).map(|_| rng.random()).collect();
    code.encode(&msg).expect("message has length k")
}

/// BPSK (`0 ↦ +1`, `1 ↦ −1`) through AWGN at the given `Eb/N0` in dB. The
/// noise variance is `1 / (2·R·Eb/N0)`; the reliability of a position is the
/// magnitude of its channel output.
pub fn awgn_sample(code: &BchCode, codeword: &[bool], ebn0_db: f64, rng: &mut impl Rng) -> ChannelSample {
    let esn0 = code.rate() * 10f64.powf(ebn0_db / 10.0);
    let sigma = (1.0 / (2.0 * esn0)).sqrt();
    let mut hard_bits = Vec::with_capacity(codeword.len());
    let mut reliabilities = Vec::with_capacity(codeword.len());
    for &c in codeword {
        let x = if c { -1.0 } else { 1.0 };
        let noise: f64 = rng.sample(StandardNormal);
        let r = x + sigma * noise;
        hard_bits.push(r < 0.0);
        reliabilities.push(r.abs());
    }
    let error = hard_bits.iter().zip(codeword).map(|(&y, &c)| y != c).collect();
    ChannelSample {
        hard_bits,
        reliabilities,
        codeword: codeword.to_vec(),
        error,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InjectionSpec {
    pub epsilon: usize,
    /// Errors placed among the `eta` least reliable positions.
    pub inside: usize,
    pub eta: usize,
}

impl InjectionSpec {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.eta > n || self.inside > self.epsilon.min(self.eta) || self.epsilon - self.inside > n - self.eta {
            return Err(Error::InvalidConfig(format!(
                "infeasible injection: epsilon = {}, inside = {}, eta = {}, n = {n}",
                self.epsilon, self.inside, self.eta
            )));
        }
        Ok(())
    }
}

/// Picks `eta` random positions to be the least reliable (scores in
/// `(0, 0.5)`, all others in `(1, 2)`), then flips `inside` of them and
/// `epsilon − inside` of the rest.
pub fn inject(code: &BchCode, codeword: &[bool], spec: &InjectionSpec, rng: &mut impl Rng) -> Result<ChannelSample> {
    let n = code.n();
    spec.validate(n)?;
    if codeword.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: codeword.len(),
        });
    }
    let perm = sample(rng, n, n).into_vec();
    let (unreliable, reliable) = perm.split_at(spec.eta);
    let mut reliabilities = vec![0.0; n];
    for &i in unreliable {
        reliabilities[i] = rng.random_range(f64::MIN_POSITIVE..0.5);
    }
    for &i in reliable {
        reliabilities[i] = rng.random_range(1.0..2.0);
    }
    let mut error = vec![false; n];
    for k in sample(rng, spec.eta, spec.inside) {
        error[unreliable[k]] = true;
    }
    for k in sample(rng, n - spec.eta, spec.epsilon - spec.inside) {
        error[reliable[k]] = true;
    }
    let hard_bits = codeword.iter().zip(&error).map(|(&c, &e)| c ^ e).collect();
    Ok(ChannelSample {
        hard_bits,
        reliabilities,
        codeword: codeword.to_vec(),
        error,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    /// Path positions avoid the error support.
    AvoidErrors,
    /// Path positions are any distinct positions.
    Uniform,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FprReport {
    pub trials: u64,
    pub edges: u64,
    pub fires: u64,
    /// Fires accepted by the gcd evaluation.
    pub accepted: u64,
    pub method_disagreements: u64,
    pub degree_violations: u64,
    pub cost_violations: u64,
}

impl FprReport {
    /// Fires per edge; `None` when no edge was run.
    pub fn rate(&self) -> Option<f64> {
        (self.edges > 0).then(|| self.fires as f64 / self.edges as f64)
    }

    fn merge(mut self, o: FprReport) -> FprReport {
        self.trials += o.trials;
        self.edges += o.edges;
        self.fires += o.fires;
        self.accepted += o.accepted;
        self.method_disagreements += o.method_disagreements;
        self.degree_violations += o.degree_violations;
        self.cost_violations += o.cost_violations;
        self
    }
}

/// Draws `trials` random weight-`epsilon` errors and runs the edge update along a
/// random path of `path_len` distinct positions, counting criterion fires.
/// Each fire is evaluated by both methods and disagreements are counted.
pub fn false_fire_experiment(
    code: &BchCode,
    epsilon: usize,
    path_len: usize,
    trials: u64,
    seed: u64,
    mode: PathMode,
) -> Result<FprReport> {
    let n = code.n();
    let pool = match mode {
        PathMode::AvoidErrors => n.checked_sub(epsilon),
        PathMode::Uniform => Some(n),
    };
    if epsilon > n || pool.is_none_or(|p| p < path_len) {
        return Err(Error::InvalidConfig(format!(
            "cannot draw {path_len} path positions with epsilon = {epsilon}, n = {n}"
        )));
    }
    let report = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let support = sample(&mut rng, n, epsilon).into_vec();
            let candidates: Vec<usize> = match mode {
                PathMode::AvoidErrors => (0..n).filter(|i| !support.contains(i)).collect(),
                PathMode::Uniform => (0..n).collect(),
            };
            let path: Vec<usize> = sample(&mut rng, candidates.len(), path_len)
                .into_iter()
                .map(|k| candidates[k])
                .collect();
            let s = code.syndrome_of_support(&support);
            let key = key_basis_for(&s, code.field());
            let dec = ChaseDecoder::new(code, &key, &s, &path);
            let idx: Vec<usize> = (0..path_len).collect();
            let mut rep = FprReport {
                trials: 1,
                ..Default::default()
            };
            for (r, (update, fired, input)) in dec.run_path(&idx).into_iter().enumerate() {
                let depth = r + 1;
                rep.edges += 1;
                let deg = update.basis[0].degree_sum() + update.basis[1].degree_sum();
                rep.degree_violations += u64::from(deg > 2 * depth - 1);
                rep.cost_violations += u64::from(update.muls > 4 * depth as u64 + 1);
                if let Some(j) = fired {
                    rep.fires += 1;
                    let ctr = MulCounter::new();
                    let a = dec.evaluate(EvalMethod::GcdDivision, &input[j], &ctr);
                    let b = dec.evaluate(EvalMethod::DerivativeScreen, &input[j], &ctr);
                    rep.accepted += u64::from(a.is_some());
                    rep.method_disagreements += u64::from(a != b);
                }
            }
            rep
        })
        .reduce(FprReport::default, FprReport::merge);
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SimPoint {
    pub ebn0_db: f64,
    pub trials: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub channel_bit_errors: u64,
    pub hd_frame_errors: u64,
    pub chase_invocations: u64,
    pub chase_edges: u64,
    pub chase_fires: u64,
    pub chase_false_fires: u64,
    pub chase_edge_muls: u64,
}

impl SimPoint {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.trials as f64
    }
}

/// FER/BER of the full decoder at one `Eb/N0`, with hard-decision-only frame
/// errors alongside for comparison.
pub fn simulate_point(code: &BchCode, cfg: &ChaseConfig, ebn0_db: f64, trials: u64, seed: u64) -> Result<SimPoint> {
    cfg.validate(code.n())?;
    let rows: Vec<SimPoint> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let c = random_codeword(code, &mut rng);
            let smp = awgn_sample(code, &c, ebn0_db, &mut rng);
            let rep = decode(code, &smp.hard_bits, &smp.reliabilities, cfg).expect("validated input");
            let decoded = rep.corrected(&smp.hard_bits);
            let bit_errors = match &decoded {
                Some(d) => d.iter().zip(&c).filter(|(a, b)| a != b).count(),
                None => smp.error.iter().filter(|&&e| e).count(),
            } as u64;
            let channel_bit_errors = smp.error.iter().filter(|&&e| e).count() as u64;
            let mut p = SimPoint {
                ebn0_db,
                trials: 1,
                frame_errors: u64::from(decoded.as_deref() != Some(c.as_slice())),
                bit_errors,
                channel_bit_errors,
                hd_frame_errors: u64::from(channel_bit_errors > code.t() as u64),
                ..Default::default()
            };
            if let Some(st) = rep.chase {
                p.chase_invocations = 1;
                p.chase_edges = st.edges;
                p.chase_fires = st.fires;
                p.chase_false_fires = st.false_fires;
                p.chase_edge_muls = st.edge_muls;
            }
            p
        })
        .collect();
    Ok(rows.into_iter().fold(
        SimPoint {
            ebn0_db,
            ..Default::default()
        },
        |mut a, p| {
            a.trials += p.trials;
            a.frame_errors += p.frame_errors;
            a.bit_errors += p.bit_errors;
            a.channel_bit_errors += p.channel_bit_errors;
            a.hd_frame_errors += p.hd_frame_errors;
            a.chase_invocations += p.chase_invocations;
            a.chase_edges += p.chase_edges;
            a.chase_fires += p.chase_fires;
            a.chase_false_fires += p.chase_false_fires;
            a.chase_edge_muls += p.chase_edge_muls;
            a
        },
    ))
}
