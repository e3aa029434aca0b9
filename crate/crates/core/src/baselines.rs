//! Comparison constructions: the shortest LFSR (Berlekamp-Massey), the
//! shortest FSR (maximum order complexity), and two minimum-stage RNLUs
//! built from explicit state assignments.
//!
//! Every construction yields a [`GenericRegister`] that reproduces the
//! sequence from its stored initial state.

use std::collections::HashMap;

use crate::bitseq::{ceil_log2, partition, BitSequence};
use crate::boolfn::{Anf, IncompleteFunction, MinimizeOptions, MAX_INPUTS};
use crate::error::{Error, Result};
use crate::register::{GenericRegister, Logic, OutputTap, UpdateFn};

/// Shortest LFSR: `a_i = c_1 a_{i-1} ^ ... ^ c_L a_{i-L}` for all `i >= L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSynthesisResult {
    /// Linear complexity `L`.
    pub length: usize,
    /// `c_1 .. c_L`.
    pub connection: Vec<bool>,
}

pub fn berlekamp_massey(seq: &BitSequence) -> LfsrSynthesisResult {
    let s = seq.bits();
    let n = s.len();
    let mut c = vec![false; n + 1];
    let mut b = vec![false; n + 1];
    c[0] = true;
    b[0] = true;
    let mut l = 0usize;
    let mut shift = 1usize;
    for i in 0..n {
        let d = (1..=l).fold(s[i], |acc, j| acc ^ (c[j] & s[i - j]));
        if !d {
            shift += 1;
            continue;
        }
        let prev = (2 * l <= i).then(|| c.clone());
        for j in 0..=n - shift {
            c[j + shift] ^= b[j];
        }
        match prev {
            Some(t) => {
                l = i + 1 - l;
                b = t;
                shift = 1;
            }
            None => shift += 1,
        }
    }
    LfsrSynthesisResult {
        length: l,
        connection: c[1..=l].to_vec(),
    }
}

impl LfsrSynthesisResult {
    /// Fibonacci LFSR seeded with the first `L` bits: stage `i` holds
    /// `a_{t+i}` and the last stage takes the parity of stages `L - j` for
    /// every `c_j = 1`. A zero-length result becomes one stage fed with 0.
    pub fn register(&self, seq: &BitSequence) -> Result<GenericRegister> {
        let l = self.length;
        if l > seq.len() {
            return Err(Error::InvalidArgument(format!(
                "LFSR of length {l} cannot be seeded from {} bits",
                seq.len()
            )));
        }
        if l == 0 {
            return GenericRegister::fsr(UpdateFn::constant(false), vec![false]);
        }
        let taps: Vec<usize> = (1..=l)
            .filter(|&j| self.connection[j - 1])
            .map(|j| l - j)
            .collect();
        let inputs: Vec<usize> = (0..l).collect();
        let fb = UpdateFn::new(inputs, Logic::Anf(Anf::parity(l, &taps)?))?.compact();
        GenericRegister::fsr(fb, seq.bits()[..l].to_vec())
    }
}

/// Berlekamp-Massey followed by [`LfsrSynthesisResult::register`].
pub fn lfsr_register(seq: &BitSequence) -> Result<GenericRegister> {
    berlekamp_massey(seq).register(seq)
}

fn windows_consistent(s: &[bool], k: usize) -> bool {
    let mut seen: HashMap<&[bool], bool> = HashMap::with_capacity(s.len());
    for i in 0..s.len().saturating_sub(k) {
        match seen.insert(&s[i..i + k], s[i + k]) {
            Some(prev) if prev != s[i + k] => return false,
            _ => {}
        }
    }
    true
}

/// Smallest `k` such that equal `k`-bit windows are always followed by equal
/// bits: the length of the shortest FSR generating the sequence.
pub fn max_order_complexity(seq: &BitSequence) -> usize {
    let s = seq.bits();
    if windows_consistent(s, 0) {
        return 0;
    }
    // consistency is monotone in k
    let mut hi = 1;
    while !windows_consistent(s, hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if windows_consistent(s, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Successor bit of every `k`-bit window occurring in a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowTable {
    k: usize,
    /// Variable `i` is the `i`-th oldest bit of the window.
    function: IncompleteFunction,
}

impl WindowTable {
    pub fn new(seq: &BitSequence, k: usize) -> Result<Self> {
        if k > MAX_INPUTS {
            return Err(Error::UnsupportedWidth {
                width: k,
                max: MAX_INPUTS,
            });
        }
        let s = seq.bits();
        let mut function = IncompleteFunction::new(k)?;
        for i in 0..s.len().saturating_sub(k) {
            let w = s[i..i + k]
                .iter()
                .enumerate()
                .fold(0u128, |acc, (v, &b)| acc | (b as u128) << v);
            if function.specify(w, s[i + k]).is_err() {
                return Err(Error::InfeasibleLength {
                    k,
                    required: max_order_complexity(seq),
                });
            }
        }
        Ok(Self { k, function })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn function(&self) -> &IncompleteFunction {
        &self.function
    }
}

/// `k`-stage NLFSR seeded with the first `k` bits; windows that never occur
/// are don't-cares of the feedback. `k = 0` gives one stage fed with the
/// constant bit.
pub fn nlfsr_from_windows(
    seq: &BitSequence,
    k: usize,
    opts: &MinimizeOptions,
) -> Result<GenericRegister> {
    if k > seq.len() {
        return Err(Error::InvalidArgument(format!(
            "cannot seed {k} stages from {} bits",
            seq.len()
        )));
    }
    if k == 0 {
        if !windows_consistent(seq.bits(), 0) {
            return Err(Error::InfeasibleLength {
                k,
                required: max_order_complexity(seq),
            });
        }
        let bit = seq.get(0);
        return GenericRegister::fsr(UpdateFn::constant(bit), vec![bit]);
    }
    let table = WindowTable::new(seq, k)?;
    let fb = UpdateFn::from_table(table.function(), (0..k).collect(), opts)?;
    GenericRegister::fsr(fb, seq.bits()[..k].to_vec())
}

fn word_bits(w: u128, k: usize) -> Vec<bool> {
    (0..k).map(|b| w >> b & 1 == 1).collect()
}

/// Register whose state walks through `words` (stage `b` = bit `b`), with
/// every unvisited transition left free and stages `0..p` as outputs.
fn walk_register(
    words: &[u128],
    k: usize,
    p: usize,
    opts: &MinimizeOptions,
) -> Result<GenericRegister> {
    if k > MAX_INPUTS {
        return Err(Error::UnsupportedWidth {
            width: k,
            max: MAX_INPUTS,
        });
    }
    let mut tables = vec![IncompleteFunction::new(k)?; k];
    for pair in words.windows(2) {
        for (b, t) in tables.iter_mut().enumerate() {
            t.specify(pair[0], pair[1] >> b & 1 == 1)
                .map_err(|_| Error::Verification("state assignment repeats a state".into()))?;
        }
    }
    let functions = tables
        .iter()
        .map(|t| UpdateFn::from_table(t, (0..k).collect(), opts))
        .collect::<Result<Vec<_>>>()?;
    GenericRegister::new(functions, OutputTap::Stages(p), word_bits(words[0], k))
}

/// The `i`-th 0 becomes `2i` and the `i`-th 1 becomes `2i + 1`.
pub fn du10_states(seq: &BitSequence) -> Vec<u128> {
    let mut count = [0u128; 2];
    seq.bits()
        .iter()
        .map(|&b| {
            let c = &mut count[b as usize];
            let s = 2 * *c + b as u128;
            *c += 1;
            s
        })
        .collect()
}

/// Stages needed to hold the integers of [`du10_states`].
pub fn du10_stage_count(seq: &BitSequence) -> usize {
    let max = du10_states(seq).into_iter().max().unwrap_or(0);
    ceil_log2(max + 1).max(1)
}

/// RNLU stepping through [`du10_states`]; stage 0 is the output.
pub fn du10_rnlu(seq: &BitSequence, opts: &MinimizeOptions) -> Result<GenericRegister> {
    walk_register(&du10_states(seq), du10_stage_count(seq), 1, opts)
}

/// Each `p`-bit vector `v` becomes `(occurrence index of v) * 2^p + value(v)`,
/// where `value` reads the vector as a binary number, first bit most
/// significant.
pub fn du11_states(seq: &BitSequence, p: usize) -> Result<Vec<u128>> {
    du11_width(seq, p)?;
    Ok(du11_assign(seq, p)?
        .into_iter()
        .map(|(occ, v)| {
            let value = v.iter().fold(0u128, |acc, &b| acc << 1 | b as u128);
            occ.checked_shl(p as u32).unwrap_or(0) | value
        })
        .collect())
}

fn du11_width(seq: &BitSequence, p: usize) -> Result<usize> {
    let k = crate::bitseq::k_min(seq, p)?;
    if k > MAX_INPUTS {
        return Err(Error::UnsupportedWidth {
            width: k,
            max: MAX_INPUTS,
        });
    }
    Ok(k)
}

fn du11_assign(seq: &BitSequence, p: usize) -> Result<Vec<(u128, Vec<bool>)>> {
    let part = partition(seq, p)?;
    let mut seen: HashMap<&[bool], u128> = HashMap::new();
    Ok(part
        .vectors()
        .iter()
        .map(|v| {
            let c = seen.entry(v.as_slice()).or_insert(0);
            let occ = *c;
            *c += 1;
            (occ, v.clone())
        })
        .collect())
}

/// Minimum-stage RNLU: stage `j < p` carries bit `j` of the current vector
/// and the stages above it hold the occurrence index.
pub fn du11_rnlu(seq: &BitSequence, p: usize, opts: &MinimizeOptions) -> Result<GenericRegister> {
    let k = du11_width(seq, p)?;
    let words: Vec<u128> = du11_assign(seq, p)?
        .into_iter()
        .map(|(occ, v)| {
            let value = v
                .iter()
                .enumerate()
                .fold(0u128, |acc, (j, &b)| acc | (b as u128) << j);
            occ.checked_shl(p as u32).unwrap_or(0) | value
        })
        .collect();
    walk_register(&words, k, p, opts)
}
