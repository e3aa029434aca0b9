//! Extra-bit state generators: Fibonacci LFSRs with primitive feedback
//! polynomials and binary counters.
//!
//! Stage `t` of an `r`-stage generator is bit `t` of its state word. An LFSR
//! shifts towards stage 0 and feeds the XOR of the stages named by the
//! non-leading exponents of its polynomial into stage `r - 1`; for
//! `1 + x + x^4` that is `s3' = s0 ^ s1`, `s2' = s3`, `s1' = s2`, `s0' = s1`,
//! which walks `1, 8, 4, 2, 9, 12, 6, 11, 5, 10, ...`.

use std::fmt;
use std::str::FromStr;

use crate::boolfn::{Anf, Cover, Cube, GateNetwork, NetworkBuilder, NodeId};
use crate::error::{Error, Result};

/// Exponents of one primitive polynomial per degree 2..=32, trinomials
/// where one exists, otherwise the lexicographically first pentanomial.
const PRIMITIVE_TABLE: [&[usize]; 31] = [
    &[0, 1, 2],
    &[0, 1, 3],
    &[0, 1, 4],
    &[0, 2, 5],
    &[0, 1, 6],
    &[0, 1, 7],
    &[0, 1, 2, 7, 8],
    &[0, 4, 9],
    &[0, 3, 10],
    &[0, 2, 11],
    &[0, 1, 2, 8, 12],
    &[0, 1, 2, 5, 13],
    &[0, 1, 2, 12, 14],
    &[0, 1, 15],
    &[0, 1, 3, 12, 16],
    &[0, 3, 17],
    &[0, 7, 18],
    &[0, 1, 2, 5, 19],
    &[0, 3, 20],
    &[0, 2, 21],
    &[0, 1, 22],
    &[0, 5, 23],
    &[0, 1, 2, 7, 24],
    &[0, 3, 25],
    &[0, 1, 2, 6, 26],
    &[0, 1, 2, 5, 27],
    &[0, 3, 28],
    &[0, 2, 29],
    &[0, 1, 2, 23, 30],
    &[0, 3, 31],
    &[0, 1, 2, 22, 32],
];

pub const MIN_TABLE_DEGREE: usize = 2;
pub const MAX_TABLE_DEGREE: usize = 32;
pub const MAX_PERIOD_CHECK_DEGREE: usize = 20;
/// Widest generator a `u64` state word can hold.
pub const MAX_GENERATOR_STAGES: usize = 63;

/// A polynomial over GF(2) given by its non-zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    exponents: Vec<usize>,
}

impl Polynomial {
    pub fn new(mut exponents: Vec<usize>) -> Result<Self> {
        exponents.sort_unstable();
        exponents.dedup();
        match (exponents.first(), exponents.last()) {
            (Some(0), Some(&d)) if (1..=MAX_GENERATOR_STAGES).contains(&d) => Ok(Self { exponents }),
            _ => Err(Error::InvalidArgument(format!(
                "feedback polynomial needs a constant term and a degree in 1..={MAX_GENERATOR_STAGES}, got exponents {exponents:?}"
            ))),
        }
    }

    pub fn degree(&self) -> usize {
        *self.exponents.last().expect("non-empty")
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// Stages XORed into the top stage.
    pub fn taps(&self) -> &[usize] {
        &self.exponents[..self.exponents.len() - 1]
    }

    pub fn feedback_mask(&self) -> u64 {
        self.taps().iter().fold(0, |m, &e| m | 1 << e)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .exponents
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Accepts sums such as `1+x+x^4` (spaces allowed, any term order).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse polynomial {s:?}"));
        let mut exps = Vec::new();
        for term in s.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let e = match term.as_str() {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            exps.push(e);
        }
        Polynomial::new(exps)
    }
}

/// The embedded primitive polynomial of degree `r`.
pub fn primitive_polynomial(r: usize) -> Result<Polynomial> {
    if !(MIN_TABLE_DEGREE..=MAX_TABLE_DEGREE).contains(&r) {
        return Err(Error::UnsupportedDegree(r));
    }
    Polynomial::new(PRIMITIVE_TABLE[r - MIN_TABLE_DEGREE].to_vec())
}

/// Period check: the LFSR orbit of state 1 must have length `2^r - 1`.
pub fn is_primitive(poly: &Polynomial) -> Result<bool> {
    let r = poly.degree();
    if r > MAX_PERIOD_CHECK_DEGREE {
        return Err(Error::UnsupportedDegree(r));
    }
    let g = Generator::lfsr(poly.clone());
    let full = (1u64 << r) - 1;
    let mut s = 1u64;
    for step in 1..=full {
        s = g.step_unchecked(s);
        if s == 1 {
            return Ok(step == full);
        }
    }
    Ok(false)
}

/// Generator selection named on the command line before `r` is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Lfsr(Polynomial),
    Counter,
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// `counter` or `lfsr:<polynomial>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "counter" {
            return Ok(GeneratorSpec::Counter);
        }
        match s.strip_prefix("lfsr:") {
            Some(poly) => Ok(GeneratorSpec::Lfsr(poly.parse()?)),
            None => Err(Error::InvalidArgument(format!(
                "generator must be `counter` or `lfsr:<polynomial>`, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Lfsr(Polynomial),
    Counter,
    /// Zero stages, one state.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    kind: GeneratorKind,
    r: usize,
}

impl Generator {
    pub fn lfsr(poly: Polynomial) -> Self {
        let r = poly.degree();
        Self {
            kind: GeneratorKind::Lfsr(poly),
            r,
        }
    }

    pub fn counter(r: usize) -> Result<Self> {
        if r > MAX_GENERATOR_STAGES {
            return Err(Error::UnsupportedWidth {
                width: r,
                max: MAX_GENERATOR_STAGES,
            });
        }
        if r == 0 {
            return Ok(Self::empty());
        }
        Ok(Self {
            kind: GeneratorKind::Counter,
            r,
        })
    }

    pub fn empty() -> Self {
        Self {
            kind: GeneratorKind::Empty,
            r: 0,
        }
    }

    /// LFSR when `m < 2^r`, counter when `m = 2^r`, the empty generator when
    /// `m = 1` and `r = 0`.
    pub fn choose(m: u128, r: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "state count must be positive".into(),
            ));
        }
        if r > MAX_GENERATOR_STAGES {
            return Err(Error::UnsupportedWidth {
                width: r,
                max: MAX_GENERATOR_STAGES,
            });
        }
        let states = 1u128 << r;
        if m > states {
            return Err(Error::Capacity {
                needed: m,
                available: states,
            });
        }
        if r == 0 {
            Ok(Self::empty())
        } else if m < states {
            Ok(Self::lfsr(primitive_polynomial(r)?))
        } else {
            Self::counter(r)
        }
    }

    pub fn from_spec(spec: &GeneratorSpec, r: usize) -> Result<Self> {
        match spec {
            GeneratorSpec::Lfsr(p) => Ok(Self::lfsr(p.clone())),
            GeneratorSpec::Counter => Self::counter(r),
        }
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn stages(&self) -> usize {
        self.r
    }

    pub fn is_lfsr(&self) -> bool {
        matches!(self.kind, GeneratorKind::Lfsr(_))
    }

    /// Number of distinct states visited before repeating.
    pub fn capacity(&self) -> u128 {
        match self.kind {
            GeneratorKind::Lfsr(_) => (1u128 << self.r) - 1,
            GeneratorKind::Counter => 1u128 << self.r,
            GeneratorKind::Empty => 1,
        }
    }

    /// `1` for LFSRs, `0` otherwise.
    pub fn default_initial_state(&self) -> u64 {
        u64::from(self.is_lfsr())
    }

    pub fn validate_state(&self, s: u64) -> Result<()> {
        if self.r < 64 && s >> self.r != 0 {
            return Err(Error::InvalidArgument(format!(
                "state {s:#b} does not fit in {} stages",
                self.r
            )));
        }
        if self.is_lfsr() && s == 0 {
            return Err(Error::DegenerateState);
        }
        Ok(())
    }

    fn step_unchecked(&self, s: u64) -> u64 {
        match &self.kind {
            GeneratorKind::Lfsr(p) => {
                let fb = (s & p.feedback_mask()).count_ones() as u64 & 1;
                (s >> 1) | fb << (self.r - 1)
            }
            GeneratorKind::Counter => {
                if self.r == 64 {
                    s.wrapping_add(1)
                } else {
                    (s + 1) & ((1u64 << self.r) - 1)
                }
            }
            GeneratorKind::Empty => 0,
        }
    }

    pub fn next_state(&self, s: u64) -> Result<u64> {
        self.validate_state(s)?;
        Ok(self.step_unchecked(s))
    }

    /// `g0, g1, ..., g_{m-1}`; `m` may not exceed [`Generator::capacity`].
    pub fn state_sequence(&self, g0: u64, m: usize) -> Result<Vec<u64>> {
        self.validate_state(g0)?;
        if m as u128 > self.capacity() {
            return Err(Error::Capacity {
                needed: m as u128,
                available: self.capacity(),
            });
        }
        let mut out = Vec::with_capacity(m);
        let mut s = g0;
        for _ in 0..m {
            out.push(s);
            s = self.step_unchecked(s);
        }
        Ok(out)
    }

    /// Updating function of every stage in algebraic normal form over the
    /// generator's own `r` stages.
    pub fn update_anf(&self) -> Vec<Anf> {
        let r = self.r;
        match &self.kind {
            GeneratorKind::Empty => Vec::new(),
            GeneratorKind::Lfsr(p) => (0..r)
                .map(|t| {
                    if t + 1 < r {
                        Anf::parity(r, &[t + 1])
                    } else {
                        Anf::parity(r, p.taps())
                    }
                    .expect("taps are below the degree")
                })
                .collect(),
            GeneratorKind::Counter => (0..r)
                .map(|t| {
                    let carry: Vec<usize> = (0..t).collect();
                    Anf::new(r, vec![vec![t], carry]).expect("in range")
                })
                .collect(),
        }
    }

    /// Updating functions as sum-of-products covers over the `r` stages.
    pub fn update_covers(&self) -> Vec<Cover> {
        let r = self.r;
        let cube = |lits: &[(usize, bool)]| {
            let (mut m, mut v) = (0u128, 0u128);
            for &(x, pos) in lits {
                m |= 1 << x;
                v |= (pos as u128) << x;
            }
            Cube::new(m, v)
        };
        match &self.kind {
            GeneratorKind::Empty => Vec::new(),
            GeneratorKind::Lfsr(p) => (0..r)
                .map(|t| {
                    if t + 1 < r {
                        return Cover::literal(r, t + 1, true);
                    }
                    let taps = p.taps();
                    let cubes = (0u64..1 << taps.len())
                        .filter(|a| a.count_ones() % 2 == 1)
                        .map(|a| {
                            let lits: Vec<(usize, bool)> = taps
                                .iter()
                                .enumerate()
                                .map(|(i, &x)| (x, a >> i & 1 == 1))
                                .collect();
                            cube(&lits)
                        })
                        .collect();
                    Cover::new(r, cubes).expect("in range")
                })
                .collect(),
            GeneratorKind::Counter => (0..r)
                .map(|t| {
                    // x_t ^ (x_0 ... x_{t-1})
                    let mut cubes: Vec<Cube> =
                        (0..t).map(|j| cube(&[(t, true), (j, false)])).collect();
                    let all: Vec<(usize, bool)> =
                        (0..t).map(|j| (j, true)).chain([(t, false)]).collect();
                    cubes.push(cube(&all));
                    Cover::new(r, cubes).expect("in range")
                })
                .collect(),
        }
    }

    /// Shared network computing all `r` updating functions: XOR tree for the
    /// LFSR feedback, ripple carry chain for the counter.
    pub fn network(&self) -> GateNetwork {
        let r = self.r;
        let mut b = NetworkBuilder::new(r);
        let outs: Vec<NodeId> = match &self.kind {
            GeneratorKind::Empty => Vec::new(),
            GeneratorKind::Lfsr(p) => (0..r)
                .map(|t| {
                    if t + 1 < r {
                        b.input(t + 1)
                    } else {
                        let ids: Vec<NodeId> = p.taps().iter().map(|&x| b.input(x)).collect();
                        b.reduce(&ids, false, NetworkBuilder::xor)
                    }
                })
                .collect(),
            GeneratorKind::Counter => {
                let mut outs = Vec::with_capacity(r);
                let mut carry = b.constant(true);
                for t in 0..r {
                    let x = b.input(t);
                    outs.push(b.xor(x, carry));
                    carry = b.and(carry, x);
                }
                outs
            }
        };
        b.finish(&outs)
    }

    /// `lfsr:<poly>`, `counter` or `none`.
    pub fn spec_string(&self) -> String {
        match &self.kind {
            GeneratorKind::Lfsr(p) => format!("lfsr:{p}"),
            GeneratorKind::Counter => "counter".into(),
            GeneratorKind::Empty => "none".into(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GeneratorKind::Lfsr(p) => write!(f, "{}-stage LFSR g(x) = {p}", self.r),
            GeneratorKind::Counter => write!(f, "{}-stage binary counter", self.r),
            GeneratorKind::Empty => f.write_str("no extra bits"),
        }
    }
}

/// Formats `s` as `r` bits, most significant stage first.
pub fn state_bits(s: u64, r: usize) -> String {
    (0..r)
        .rev()
        .map(|t| if s >> t & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`state_bits`].
pub fn parse_state_bits(text: &str) -> Result<u64> {
    let text = text.trim();
    if text.len() > 64 {
        return Err(Error::UnsupportedWidth {
            width: text.len(),
            max: 64,
        });
    }
    let mut s = 0u64;
    for (position, c) in text.chars().enumerate() {
        s = s << 1
            | match c {
                '0' => 0,
                '1' => 1,
                found => return Err(Error::Parse { position, found }),
            };
    }
    Ok(s)
}
