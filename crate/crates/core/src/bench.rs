//! Expected-size formulas and Monte Carlo size experiments over random
//! sequences.
//!
//! Trial `t` at length `n` uses the sequence
//! `random_sequence(n, trial_seed(seed, n, t))` for every method, so all
//! methods are measured on the same sequences and results do not depend on
//! thread scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{
    berlekamp_massey, du10_rnlu, du11_rnlu, max_order_complexity, nlfsr_from_windows,
};
use crate::bitseq::{random_sequence, splitmix64, BitSequence};
use crate::boolfn::{CostModel, FactorOptions, MinimizeOptions};
use crate::error::{Error, Result};
use crate::register::{GenericRegister, Register};
use crate::rnlu::{construct_rnlu, ConstructOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    Du10,
    Du11,
    LfsrBm,
    NlfsrMoc,
    Presented,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Presented,
        Method::Du10,
        Method::Du11,
        Method::LfsrBm,
        Method::NlfsrMoc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Du10 => "du10",
            Method::Du11 => "du11",
            Method::LfsrBm => "lfsr_bm",
            Method::NlfsrMoc => "nlfsr_moc",
            Method::Presented => "presented",
        }
    }

    /// Whether a device can be built and measured at this `p`; shift
    /// registers and the even/odd construction emit one bit per cycle.
    pub fn measurable(self, p: usize) -> bool {
        matches!(self, Method::Presented | Method::Du11) || p == 1
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown method {s:?} (expected presented, du10, du11, lfsr_bm or nlfsr_moc)"
                ))
            })
    }
}

/// Explicit terms of the expected-size expression of `method` for length
/// `n` and parallelization `p`; asymptotic residuals are left out.
///
/// * presented: `beta (p + log2 m) + p alpha m / log2 m` with `m = n/p`
/// * du10, du11: `alpha n + beta log2 n`
/// * lfsr_bm: `beta n / 2`
/// * nlfsr_moc: `2 beta log2 n + alpha p n^2 / (2 log2 n)`
pub fn model_size(method: Method, n: usize, p: usize, cm: &CostModel) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "size model needs n >= 2, got {n}"
        )));
    }
    if p == 0 || p > n {
        return Err(Error::InvalidArgument(format!(
            "size model needs 1 <= p <= n, got p = {p}"
        )));
    }
    let (a, b) = (cm.alpha, cm.beta);
    let nf = n as f64;
    let pf = p as f64;
    let ln = nf.log2();
    Ok(match method {
        Method::Presented => {
            let mf = nf / pf;
            if mf < 2.0 {
                return Err(Error::InvalidArgument(format!(
                    "size model needs n >= 2p, got n = {n}, p = {p}"
                )));
            }
            let lm = mf.log2();
            b * (pf + lm) + pf * a * mf / lm
        }
        Method::Du10 | Method::Du11 => a * nf + b * ln,
        Method::LfsrBm => b * nf / 2.0,
        Method::NlfsrMoc => 2.0 * b * ln + a * pf * nf * nf / (2.0 * ln),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub p: usize,
    pub trials: usize,
    pub seed: u64,
    pub cost: CostModel,
    pub methods: Vec<Method>,
    pub factor: FactorOptions,
    pub minimize: MinimizeOptions,
    /// NLFSR devices are only built up to this length; the feedback table
    /// has about `n^2` rows.
    pub nlfsr_max_n: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            lengths: (8..=13).map(|e| 1 << e).collect(),
            p: 1,
            trials: 20,
            seed: 1,
            cost: CostModel::default(),
            methods: Method::ALL.to_vec(),
            factor: FactorOptions::default(),
            minimize: MinimizeOptions::default(),
            nlfsr_max_n: 1 << 12,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.p == 0 {
            return bad("p must be at least 1");
        }
        if self.lengths.is_empty() || self.methods.is_empty() {
            return bad("need at least one length and one method");
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return bad("lengths must be strictly ascending");
        }
        if self.lengths[0] < 1 {
            return bad("lengths must be positive");
        }
        Ok(())
    }

    fn measured(&self, method: Method, n: usize) -> bool {
        method.measurable(self.p) && (method != Method::NlfsrMoc || n <= self.nlfsr_max_n)
    }
}

/// Seed of trial `trial` at length `n`.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    splitmix64(seed ^ splitmix64((n as u64) << 32 ^ trial as u64))
}

/// Aggregate over the trials of one `(n, method)` cell. Measured columns
/// are empty when the method is not built at this size or parallelization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub p: usize,
    pub method: Method,
    pub mean_size: Option<f64>,
    /// Sample standard deviation; 0 for a single trial.
    pub std_size: Option<f64>,
    pub mean_stages: Option<f64>,
    pub model_size: Option<f64>,
}

/// One built and verified device.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub stages: usize,
    pub logic: f64,
    pub total: f64,
}

fn checked(
    reg: &GenericRegister,
    seq: &BitSequence,
    cm: &CostModel,
    f: &FactorOptions,
) -> Result<Measurement> {
    reg.verify(seq)?;
    let s = reg.size(cm, f);
    Ok(Measurement {
        stages: reg.stage_count(),
        logic: s.logic,
        total: s.total,
    })
}

/// Builds the device of `method` for `seq`, checks it against `seq` with the
/// simulator and sizes it.
pub fn measure(
    method: Method,
    seq: &BitSequence,
    p: usize,
    cm: &CostModel,
    factor: &FactorOptions,
    minimize: &MinimizeOptions,
) -> Result<Measurement> {
    if !method.measurable(p) {
        return Err(Error::InvalidArgument(format!(
            "{method} emits one bit per cycle, p = {p} requested"
        )));
    }
    match method {
        Method::Presented => {
            let opts = ConstructOptions {
                minimize: *minimize,
                ..Default::default()
            };
            let r = construct_rnlu(seq, p, &opts)?;
            r.verify(seq)?;
            let s = r.size(cm, factor);
            Ok(Measurement {
                stages: r.stage_count(),
                logic: s.logic,
                total: s.total,
            })
        }
        Method::Du10 => checked(&du10_rnlu(seq, minimize)?, seq, cm, factor),
        Method::Du11 => checked(&du11_rnlu(seq, p, minimize)?, seq, cm, factor),
        Method::LfsrBm => {
            let bm = berlekamp_massey(seq);
            let mut m = checked(&bm.register(seq)?, seq, cm, factor)?;
            m.stages = bm.length;
            // a zero-length LFSR has no storage
            if bm.length == 0 {
                m.total = m.logic;
            }
            Ok(m)
        }
        Method::NlfsrMoc => {
            let k = max_order_complexity(seq);
            let mut m = checked(&nlfsr_from_windows(seq, k, minimize)?, seq, cm, factor)?;
            m.stages = k;
            if k == 0 {
                m.total = m.logic;
            }
            Ok(m)
        }
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &n in &cfg.lengths {
        let seqs = (0..cfg.trials)
            .map(|t| {
                Ok((
                    trial_seed(cfg.seed, n, t),
                    random_sequence(n, trial_seed(cfg.seed, n, t))?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        for &method in &cfg.methods {
            let model = model_size(method, n, cfg.p, &cfg.cost).ok();
            let mut row = BenchRow {
                n,
                p: cfg.p,
                method,
                mean_size: None,
                std_size: None,
                mean_stages: None,
                model_size: model,
            };
            if cfg.measured(method, n) {
                let results =
                    seqs.par_iter()
                        .map(|(seed, seq)| {
                            measure(method, seq, cfg.p, &cfg.cost, &cfg.factor, &cfg.minimize)
                                .map_err(|e| {
                                    Error::Verification(format!(
                                        "{method} failed at n = {n}, sequence seed {seed}: {e}"
                                    ))
                                })
                        })
                        .collect::<Result<Vec<_>>>()?;
                let sizes: Vec<f64> = results.iter().map(|m| m.total).collect();
                let stages: Vec<f64> = results.iter().map(|m| m.stages as f64).collect();
                let (mean, std) = mean_std(&sizes);
                row.mean_size = Some(mean);
                row.std_size = Some(std);
                row.mean_stages = Some(mean_std(&stages).0);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 7] = [
    "n",
    "p",
    "method",
    "mean_size",
    "std_size",
    "mean_stages",
    "model_size",
];

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV with one line per row, sorted by method then `n`; empty cells mark
/// values that were not measured.
pub fn emit_csv(rows: &[BenchRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::InvalidArgument("no rows to write".into()));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by_key(|r| (r.method, r.n, r.p));
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in &sorted {
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            r.method.to_string(),
            cell(r.mean_size),
            cell(r.std_size),
            cell(r.mean_stages),
            cell(r.model_size),
        ])
        .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let bad = |line: usize, m: String| Error::Description { line, message: m };
    let header = r.headers().map_err(|e| bad(1, e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(bad(1, "unexpected header".into()));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        let int = |j: usize| -> Result<usize> {
            rec[j]
                .parse()
                .map_err(|_| bad(line, format!("bad integer {:?}", &rec[j])))
        };
        let real = |j: usize| -> Result<Option<f64>> {
            if rec[j].is_empty() {
                return Ok(None);
            }
            rec[j]
                .parse()
                .map(Some)
                .map_err(|_| bad(line, format!("bad number {:?}", &rec[j])))
        };
        rows.push(BenchRow {
            n: int(0)?,
            p: int(1)?,
            method: rec[2].parse()?,
            mean_size: real(3)?,
            std_size: real(4)?,
            mean_stages: real(5)?,
            model_size: real(6)?,
        });
    }
    Ok(rows)
}

/// Companion metadata describing how a CSV was produced.
pub fn metadata_json(cfg: &BenchConfig) -> String {
    let skipped: Vec<String> = cfg
        .lengths
        .iter()
        .flat_map(|&n| cfg.methods.iter().map(move |&m| (n, m)))
        .filter(|&(n, m)| !cfg.measured(m, n))
        .map(|(n, m)| format!("{m}@{n}"))
        .collect();
    let v = serde_json::json!({
        "toolkit": "rnlu-core",
        "toolkit_version": env!("CARGO_PKG_VERSION"),
        "lengths": cfg.lengths,
        "p": cfg.p,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "methods": cfg.methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
        "cost_model": cfg.cost,
        "xor_detect": cfg.factor.xor_detect,
        "share_gates": cfg.factor.share,
        "multilevel": cfg.factor.multilevel,
        "exact_threshold": cfg.minimize.exact_threshold,
        "nlfsr_max_n": cfg.nlfsr_max_n,
        "model_size": "explicit terms only; asymptotic residual terms omitted",
        "size_unit": "2-input gate = 1, inverter = not_cost, storage element = beta",
        "prng": "splitmix64 seeding, xorshift64* stream, one bit per output word (most significant bit)",
        "trial_seed": "splitmix64(seed ^ splitmix64((n << 32) ^ trial)), shared by all methods",
        "unmeasured": skipped,
    });
    serde_json::to_string_pretty(&v).expect("serializable")
}
