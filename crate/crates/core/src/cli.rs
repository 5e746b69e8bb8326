//! Command-line front end.
//!
//! Every flag may also be given in a TOML file passed with `--config`, using
//! the flag name with dashes replaced by underscores. Flags win on conflict.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bch::{bits_to_hex, hex_to_bits, BchCode};
use crate::channel::{
    false_fire_experiment, inject, random_codeword, simulate_point, trial_rng, InjectionSpec, PathMode,
};
use crate::chase::{least_reliable, ChaseConfig, ChaseDecoder, EvalMethod};
use crate::error::{Error, Result};
use crate::keysolve::key_basis_for;
use crate::pipeline::decode;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DECODE_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "fastchase", version, about = "Fast Chase decoding of binary BCH codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the code parameters and generator polynomial.
    Info(CommonArgs),
    /// Decode one received word; prints JSON.
    Decode(DecodeArgs),
    /// FER/BER over BPSK/AWGN, or success rate under error injection; prints CSV.
    Simulate(CommonArgs),
    /// False-fire rate of the stopping criterion; prints CSV.
    Fpr(CommonArgs),
    /// Per-depth multiplication counts over full-tree traversals; prints CSV.
    Bench(CommonArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalArg {
    Gcd,
    Deriv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Avoid,
    Uniform,
    Both,
}

#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonArgs {
    /// TOML file with defaults for any of these flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Field degree; the code length is 2^s − 1.
    #[arg(long)]
    pub s: Option<u32>,
    /// Code length 2^s − 1 (alternative to --s).
    #[arg(long)]
    pub n: Option<usize>,
    /// Designed correction radius.
    #[arg(long)]
    pub t: Option<usize>,
    /// Primitive polynomial in hex, e.g. 0x11d.
    #[arg(long)]
    pub prim_poly: Option<String>,
    /// Number of least reliable positions.
    #[arg(long)]
    pub eta: Option<usize>,
    /// Maximum number of flips.
    #[arg(long)]
    pub rmax: Option<usize>,
    #[arg(long, value_enum)]
    pub eval: Option<EvalArg>,
    /// Keep traversing after the first verified candidate.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub collect_all: Option<bool>,
    /// Comma-separated Eb/N0 values in dB.
    #[arg(long)]
    pub snr: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Errors placed among the eta least reliable positions.
    #[arg(long)]
    pub inside: Option<usize>,
    /// Total number of injected errors.
    #[arg(long)]
    pub epsilon: Option<usize>,
    /// Path length for fpr (default epsilon − t).
    #[arg(long)]
    pub path_len: Option<usize>,
    /// Path positions for fpr: avoiding errors, anywhere, or both.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Output file (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Received word in hex, most significant bit = coordinate n − 1.
    #[arg(long)]
    pub word: String,
    /// Comma-separated reliabilities, one per coordinate (default all 1).
    #[arg(long)]
    pub reliab: Option<String>,
}

impl CommonArgs {
    /// Fills unset fields from the `--config` file, if any.
    pub fn resolve(mut self) -> Result<Self> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = fs::read_to_string(&path).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        let file: CommonArgs = toml::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        macro_rules! fill {
            ($($f:ident),*) => { $( if self.$f.is_none() { self.$f = file.$f; } )* };
        }
        fill!(
            s,
            n,
            t,
            prim_poly,
            eta,
            rmax,
            eval,
            collect_all,
            snr,
            trials,
            seed,
            inside,
            epsilon,
            path_len,
            mode,
            out
        );
        Ok(self)
    }

    pub fn code(&self) -> Result<BchCode> {
        let t = self.t.ok_or_else(|| Error::InvalidConfig("--t is required".into()))?;
        let prim = self
            .prim_poly
            .as_deref()
            .map(|p| {
                u32::from_str_radix(p.trim_start_matches("0x").trim_start_matches("0X"), 16)
                    .map_err(|e| Error::Parse(format!("--prim-poly {p}: {e}")))
            })
            .transpose()?;
        match (self.s, self.n) {
            (Some(s), None) => BchCode::from_degree(s, t, prim),
            (None, Some(n)) => BchCode::from_length(n, t, prim),
            (Some(s), Some(n)) => {
                let code = BchCode::from_degree(s, t, prim)?;
                if code.n() != n {
                    return Err(Error::InvalidConfig(format!("--n {n} does not match --s {s}")));
                }
                Ok(code)
            }
            (None, None) => Err(Error::InvalidConfig("one of --s or --n is required".into())),
        }
    }

    pub fn chase(&self, code: &BchCode) -> Result<ChaseConfig> {
        let eta = self.eta.unwrap_or(8.min(code.n()));
        let mut cfg = ChaseConfig::new(eta, self.rmax.unwrap_or(eta.min(3)));
        cfg.eval = match self.eval.unwrap_or(EvalArg::Gcd) {
            EvalArg::Gcd => EvalMethod::GcdDivision,
            EvalArg::Deriv => EvalMethod::DerivativeScreen,
        };
        cfg.collect_all = self.collect_all.unwrap_or(false);
        cfg.validate(code.n())?;
        Ok(cfg)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    fn trials(&self) -> u64 {
        self.trials.unwrap_or(1000)
    }

    fn snrs(&self) -> Result<Vec<f64>> {
        let list = self.snr.as_deref().unwrap_or("4");
        list.split(',')
            .map(|v| {
                let x: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("--snr value {v:?}")))?;
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(Error::Parse(format!("--snr value {v:?} is not finite")))
                }
            })
            .collect()
    }

    /// Runs `f` against the `--out` file, or against `stdout` if none was given.
    fn emit(&self, stdout: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<i32>) -> Result<i32> {
        match &self.out {
            Some(p) => {
                let mut file =
                    fs::File::create(p).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?;
                f(&mut file)
            }
            None => f(stdout),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidConfig(format!("write failed: {e}"))
}

fn cmd_info(args: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let code = args.code()?;
    let f = code.field();
    writeln!(out, "n = {}", code.n()).map_err(io_err)?;
    writeln!(out, "k = {}", code.k()).map_err(io_err)?;
    writeln!(out, "d = {}", code.d()).map_err(io_err)?;
    writeln!(out, "t = {}", code.t()).map_err(io_err)?;
    writeln!(out, "rate = {:.6}", code.rate()).map_err(io_err)?;
    writeln!(
        out,
        "field = GF(2^{}), primitive polynomial 0x{:x}",
        f.degree(),
        f.primitive_poly()
    )
    .map_err(io_err)?;
    let g = code.generator_bits();
    writeln!(out, "generator = 0x{}", bits_to_hex(&g)).map_err(io_err)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DecodeJson<'a> {
    n: usize,
    k: usize,
    t: usize,
    #[serde(flatten)]
    report: &'a crate::pipeline::DecodeReport,
    codeword: Option<String>,
}

fn cmd_decode(args: &DecodeArgs, common: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let code = common.code()?;
    let cfg = common.chase(&code)?;
    let y = hex_to_bits(&args.word, code.n())?;
    let reliab: Vec<f64> = match &args.reliab {
        Some(r) => r
            .split(',')
            .map(|v| {
                let x: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("reliability {v:?}")))?;
                if x.is_finite() && x >= 0.0 {
                    Ok(x)
                } else {
                    Err(Error::Parse(format!(
                        "reliability {v:?} must be finite and nonnegative"
                    )))
                }
            })
            .collect::<Result<_>>()?,
        None => vec![1.0; code.n()],
    };
    let report = decode(&code, &y, &reliab, &cfg)?;
    let json = DecodeJson {
        n: code.n(),
        k: code.k(),
        t: code.t(),
        report: &report,
        codeword: report.corrected(&y).map(|c| bits_to_hex(&c)),
    };
    serde_json::to_writer_pretty(&mut *out, &json).map_err(io_err)?;
    writeln!(out).map_err(io_err)?;
    Ok(if report.success() { EXIT_OK } else { EXIT_DECODE_FAILURE })
}

#[derive(Serialize)]
struct InjectRow {
    epsilon: usize,
    inside: usize,
    eta: usize,
    r_max: usize,
    trials: u64,
    recovered: u64,
    decoded_other: u64,
    failures: u64,
    chase_edges: u64,
    chase_fires: u64,
    chase_edge_muls: u64,
}

fn cmd_simulate(args: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let code = args.code()?;
    let cfg = args.chase(&code)?;
    let mut w = csv::Writer::from_writer(out);
    if let Some(epsilon) = args.epsilon {
        let spec = InjectionSpec {
            epsilon,
            inside: args.inside.unwrap_or(0),
            eta: cfg.eta,
        };
        spec.validate(code.n())?;
        let mut row = InjectRow {
            epsilon,
            inside: spec.inside,
            eta: cfg.eta,
            r_max: cfg.r_max,
            trials: 0,
            recovered: 0,
            decoded_other: 0,
            failures: 0,
            chase_edges: 0,
            chase_fires: 0,
            chase_edge_muls: 0,
        };
        if args.trials() == 0 {
            w.write_record(INJECT_HEADER).map_err(io_err)?;
        }
        for trial in 0..args.trials() {
            let mut rng = trial_rng(args.seed(), trial);
            let c = random_codeword(&code, &mut rng);
            let smp = inject(&code, &c, &spec, &mut rng)?;
            let rep = decode(&code, &smp.hard_bits, &smp.reliabilities, &cfg)?;
            row.trials += 1;
            match rep.corrected(&smp.hard_bits) {
                Some(d) if d == c => row.recovered += 1,
                Some(_) => row.decoded_other += 1,
                None => row.failures += 1,
            }
            if let Some(st) = rep.chase {
                row.chase_edges += st.edges;
                row.chase_fires += st.fires;
                row.chase_edge_muls += st.edge_muls;
            }
        }
        if row.trials > 0 {
            w.serialize(&row).map_err(io_err)?;
        }
    } else {
        let snrs = args.snrs()?;
        if args.trials() == 0 {
            w.write_record(SIM_HEADER).map_err(io_err)?;
        } else {
            for (k, &snr) in snrs.iter().enumerate() {
                let p = simulate_point(&code, &cfg, snr, args.trials(), args.seed().wrapping_add(k as u64))?;
                w.serialize(&p).map_err(io_err)?;
            }
        }
    }
    w.flush().map_err(io_err)?;
    Ok(EXIT_OK)
}

const INJECT_HEADER: &[&str] = &[
    "epsilon",
    "inside",
    "eta",
    "r_max",
    "trials",
    "recovered",
    "decoded_other",
    "failures",
    "chase_edges",
    "chase_fires",
    "chase_edge_muls",
];

const SIM_HEADER: &[&str] = &[
    "ebn0_db",
    "trials",
    "frame_errors",
    "bit_errors",
    "channel_bit_errors",
    "hd_frame_errors",
    "chase_invocations",
    "chase_edges",
    "chase_fires",
    "chase_false_fires",
    "chase_edge_muls",
];

#[derive(Serialize)]
struct FprRow {
    n: usize,
    t: usize,
    epsilon: usize,
    path_len: usize,
    mode: PathMode,
    trials: u64,
    edges: u64,
    fires: u64,
    accepted: u64,
    rate: Option<f64>,
    inverse_rate: Option<f64>,
    method_disagreements: u64,
}

fn cmd_fpr(args: &CommonArgs, out: &mut dyn Write) -> Result<i32> {
    let code = args.code()?;
    let epsilon = args.epsilon.unwrap_or(code.t() + 6);
    let path_len = args.path_len.unwrap_or(epsilon.saturating_sub(code.t()).max(1));
    let modes = match args.mode.unwrap_or(ModeArg::Avoid) {
        ModeArg::Avoid => vec![PathMode::AvoidErrors],
        ModeArg::Uniform => vec![PathMode::Uniform],
        ModeArg::Both => vec![PathMode::AvoidErrors, PathMode::Uniform],
    };
    let mut w = csv::Writer::from_writer(out);
    for mode in modes {
        let rep = false_fire_experiment(&code, epsilon, path_len, args.trials(), args.seed(), mode)?;
        let rate = rep.rate();
        w.serialize(FprRow {
            n: code.n(),
            t: code.t(),
            epsilon,
            path_len,
            mode,
            trials: rep.trials,
            edges: rep.edges,
            fires: rep.fires,
            accepted: rep.accepted,
            rate,
            inverse_rate: rate.filter(|&r| r > 0.0).map(|r| 1.0 / r),
            method_disagreements: rep.method_disagreements,
        })
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct BenchRow {
    depth: usize,
    edges: u64,
    muls_total: u64,
    muls_max: u64,
    muls_avg: f64,
    bound_4r_plus_1: u64,
}

/// Full-tree traversals (every vertex visited) on random injected words.
fn cmd_bench(args: &CommonArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let code = args.code()?;
    let mut cfg = args.chase(&code)?;
    cfg.collect_all = true;
    let t = code.t();
    let eta = cfg.eta;
    let mut per_depth = vec![(0u64, 0u64, 0u64); cfg.r_max + 1];
    let (mut tree_max, mut tree_sum, mut runs, mut violations) = (0u64, 0u64, 0u64, 0u64);
    for trial in 0..args.trials().max(1) {
        let mut rng = trial_rng(args.seed(), trial);
        let epsilon = args.epsilon.unwrap_or(t + 1).min(code.n());
        let inside = args.inside.unwrap_or(0).min(eta.min(epsilon));
        let spec = InjectionSpec { epsilon, inside, eta };
        let c = random_codeword(&code, &mut rng);
        let smp = inject(&code, &c, &spec, &mut rng)?;
        let s = code.syndrome(&smp.hard_bits)?;
        let key = key_basis_for(&s, code.field());
        let pos = least_reliable(&smp.reliabilities, eta);
        let dec = ChaseDecoder::new(&code, &key, &s, &pos);
        let o = dec.traverse(&cfg, |ev| {
            let r = ev.edge.depth();
            let e = &mut per_depth[r];
            e.0 += 1;
            e.1 += ev.update.muls;
            e.2 = e.2.max(ev.update.muls);
        });
        violations += o.stats.cost_violations;
        tree_max = tree_max.max(o.stats.edge_muls);
        tree_sum += o.stats.edge_muls;
        runs += 1;
    }
    let mut w = csv::Writer::from_writer(out);
    for (r, &(edges, total, max)) in per_depth.iter().enumerate().skip(1) {
        w.serialize(BenchRow {
            depth: r,
            edges,
            muls_total: total,
            muls_max: max,
            muls_avg: if edges > 0 { total as f64 / edges as f64 } else { 0.0 },
            bound_4r_plus_1: 4 * r as u64 + 1,
        })
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)?;
    let bound = ((eta as u64) << (eta + 1)) + (1u64 << eta) - 1;
    writeln!(
        err,
        "tree total over {runs} runs: max {tree_max}, avg {:.1}; bound for eta = {eta} with r_max = eta: {bound}",
        tree_sum as f64 / runs as f64
    )
    .map_err(io_err)?;
    if violations > 0 {
        writeln!(err, "error: {violations} edges exceeded 4r + 1 multiplications").map_err(io_err)?;
        return Ok(EXIT_DECODE_FAILURE);
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the selected command, returning the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Info(a) => a.resolve().and_then(|a| a.emit(stdout, |w| cmd_info(&a, w))),
        Command::Decode(d) => d
            .common
            .clone()
            .resolve()
            .and_then(|a| a.emit(stdout, |w| cmd_decode(&d, &a, w))),
        Command::Simulate(a) => a.resolve().and_then(|a| a.emit(stdout, |w| cmd_simulate(&a, w))),
        Command::Fpr(a) => a.resolve().and_then(|a| a.emit(stdout, |w| cmd_fpr(&a, w))),
        Command::Bench(a) => a.resolve().and_then(|a| a.emit(stdout, |w| cmd_bench(&a, w, stderr))),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
