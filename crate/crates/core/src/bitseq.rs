//! Binary sequences, their partitioning into `p`-bit vectors and the
//! reproducible random source used by the benchmarks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A non-empty binary sequence `a_0, ..., a_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSequence {
    bits: Vec<bool>,
}

impl BitSequence {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { bits })
    }

    /// Builds a sequence from `0`/`1` integers. Panics on an empty slice or
    /// any other value; meant for literals in tests and examples.
    pub fn from_bits(bits: &[u8]) -> Self {
        assert!(!bits.is_empty(), "empty sequence");
        Self {
            bits: bits
                .iter()
                .map(|&b| match b {
                    0 => false,
                    1 => true,
                    other => panic!("not a bit: {other}"),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Keeps the first `len` bits. `len` must be in `1..=n`.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate a {}-bit sequence to {len} bits",
                self.len()
            )));
        }
        Ok(Self {
            bits: self.bits[..len].to_vec(),
        })
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parses `0`/`1` characters; commas and whitespace are ignored. The error
/// position is the character offset of the first offending symbol.
pub fn parse_sequence(text: &str) -> Result<BitSequence> {
    let mut bits = Vec::new();
    for (position, c) in text.chars().enumerate() {
        match c {
            '0' => bits.push(false),
            '1' => bits.push(true),
            ',' => {}
            c if c.is_whitespace() => {}
            found => return Err(Error::Parse { position, found }),
        }
    }
    BitSequence::new(bits)
}

/// A sequence cut into `m = ceil(n/p)` vectors of `p` bits. The last vector
/// is padded on the right with `pad_count` zeros when `p` does not divide `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    p: usize,
    vectors: Vec<Vec<bool>>,
    pad_count: usize,
}

impl Partition {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<bool>] {
        &self.vectors
    }

    pub fn pad_count(&self) -> usize {
        self.pad_count
    }

    /// Multiplicity of every distinct vector.
    pub fn histogram(&self) -> HashMap<&[bool], usize> {
        let mut counts: HashMap<&[bool], usize> = HashMap::new();
        for v in &self.vectors {
            *counts.entry(v.as_slice()).or_default() += 1;
        }
        counts
    }

    /// Concatenates the vectors and drops the padding.
    pub fn to_sequence(&self) -> BitSequence {
        let mut bits: Vec<bool> = self.vectors.iter().flatten().copied().collect();
        bits.truncate(bits.len() - self.pad_count);
        BitSequence { bits }
    }
}

pub fn partition(seq: &BitSequence, p: usize) -> Result<Partition> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "degree of parallelization must be at least 1".into(),
        ));
    }
    let vectors: Vec<Vec<bool>> = seq
        .bits
        .chunks(p)
        .map(|chunk| {
            let mut v = chunk.to_vec();
            v.resize(p, false);
            v
        })
        .collect();
    let pad_count = vectors.len() * p - seq.len();
    Ok(Partition {
        p,
        vectors,
        pad_count,
    })
}

/// `ceil(log2 x)` with `ceil(log2 1) = 0`. `x` must be positive.
pub fn ceil_log2(x: u128) -> usize {
    assert!(x > 0, "ceil_log2(0) is undefined");
    (u128::BITS - (x - 1).leading_zeros()) as usize
}

/// Largest multiplicity among the `p`-bit vectors of the partition.
pub fn n_max(seq: &BitSequence, p: usize) -> Result<usize> {
    let part = partition(seq, p)?;
    Ok(part.histogram().into_values().max().unwrap_or(1))
}

/// Minimum stage count of any RNLU generating `seq` `p` bits per cycle:
/// `ceil(log2 N_max) + p`.
pub fn k_min(seq: &BitSequence, p: usize) -> Result<usize> {
    Ok(ceil_log2(n_max(seq, p)? as u128) + p)
}

/// Deterministic bit source.
///
/// The seed is passed through one SplitMix64 step to obtain the initial
/// state of a xorshift64* generator (Vigna's parameters 12/25/27 and the
/// multiplier `0x2545F4914F6CDD1D`). Each bit is the most significant bit of
/// one xorshift64* output. A zero state is replaced by `0x9E3779B97F4A7C15`.
#[derive(Debug, Clone)]
pub struct BitSource {
    state: u64,
}

impl BitSource {
    pub fn new(seed: u64) -> Self {
        let state = splitmix64(seed);
        Self {
            state: if state == 0 {
                0x9E37_79B9_7F4A_7C15
            } else {
                state
            },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn next_bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

/// One SplitMix64 output for input `x`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `n` independent uniform bits from [`BitSource`] seeded with `seed`.
pub fn random_sequence(n: usize, seed: u64) -> Result<BitSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "random sequence length must be at least 1".into(),
        ));
    }
    let mut src = BitSource::new(seed);
    Ok(BitSequence {
        bits: (0..n).map(|_| src.next_bit()).collect(),
    })
}
