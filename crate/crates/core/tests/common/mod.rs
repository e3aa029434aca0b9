//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::HashMap;

use rnlu_core::boolfn::{Anf, GateKind, GateNetwork};
use rnlu_core::{BitSequence, GenericRegister, Logic, UpdateFn};

pub const FORTY_BITS: &str = "1001 0010 0011 0010 1010 1010 0001 1000 0110 1110";

pub const FIFTEEN_BITS: [u8; 15] = [1, 0, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0];

/// The ten rows `x7 x6 x5 x4 | f3 f2 f1 f0` in visiting order.
pub const FORTY_BIT_TABLE: [(&str, &str); 10] = [
    ("0001", "1001"),
    ("1000", "0100"),
    ("0100", "1100"),
    ("0010", "0100"),
    ("1001", "0101"),
    ("1100", "0101"),
    ("0110", "1000"),
    ("1011", "0001"),
    ("0101", "0110"),
    ("1010", "0111"),
];

pub fn seq(text: &str) -> BitSequence {
    text.parse().unwrap()
}

fn anf_fn(k: usize, terms: Vec<Vec<usize>>) -> UpdateFn {
    UpdateFn::new((0..k).collect(), Logic::Anf(Anf::new(k, terms).unwrap()))
        .unwrap()
        .compact()
}

/// Four-stage NLFSR with feedback `x0 ^ x3 ^ x1 x2 ^ x2 x3`, init 0001.
pub fn nlfsr4() -> GenericRegister {
    let fb = anf_fn(4, vec![vec![0], vec![3], vec![1, 2], vec![2, 3]]);
    GenericRegister::fsr(fb, vec![true, false, false, false]).unwrap()
}

/// Four-stage register `f3 = x0 ^ x3, f2 = x3 ^ x1 x2, f1 = x2, f0 = x1`,
/// init 0001.
pub fn rnlu4() -> GenericRegister {
    let f = vec![
        anf_fn(4, vec![vec![1]]),
        anf_fn(4, vec![vec![2]]),
        anf_fn(4, vec![vec![3], vec![1, 2]]),
        anf_fn(4, vec![vec![0], vec![3]]),
    ];
    GenericRegister::new(
        f,
        rnlu_core::OutputTap::Stages(1),
        vec![true, false, false, false],
    )
    .unwrap()
}

/// Shortest LFSR length by trying every connection vector of every length.
pub fn brute_force_linear_complexity(s: &[bool]) -> usize {
    let n = s.len();
    for l in 0..=n {
        for c in 0u64..1 << l {
            let ok = (l..n).all(|i| {
                let mut x = false;
                for j in 1..=l {
                    if c >> (j - 1) & 1 == 1 {
                        x ^= s[i - j];
                    }
                }
                x == s[i]
            });
            if ok {
                return l;
            }
        }
    }
    n
}

/// Smallest `k` whose windows all have a unique successor, by direct scan.
pub fn naive_max_order_complexity(s: &[bool]) -> usize {
    (0..=s.len())
        .find(|&k| {
            let mut seen: HashMap<Vec<bool>, bool> = HashMap::new();
            (0..s.len().saturating_sub(k))
                .all(|i| *seen.entry(s[i..i + k].to_vec()).or_insert(s[i + k]) == s[i + k])
        })
        .unwrap()
}

/// Counts gates by walking back from the outputs.
pub fn walk_gate_count(net: &GateNetwork, not_cost: f64) -> f64 {
    let nodes = net.nodes();
    let mut seen = vec![false; nodes.len()];
    let mut stack: Vec<usize> = net.outputs().to_vec();
    let mut total = 0.0;
    while let Some(i) = stack.pop() {
        if std::mem::replace(&mut seen[i], true) {
            continue;
        }
        match nodes[i] {
            GateKind::Not(a) => {
                total += not_cost;
                stack.push(a);
            }
            GateKind::And(a, b) | GateKind::Or(a, b) | GateKind::Xor(a, b) => {
                total += 1.0;
                stack.extend([a, b]);
            }
            _ => {}
        }
    }
    total
}

/// All cubes over `r <= 4` variables as `(mask, value)` pairs.
fn all_cubes(r: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for code in 0..3u32.pow(r as u32) {
        let (mut c, mut mask, mut value) = (code, 0, 0);
        for v in 0..r {
            match c % 3 {
                1 => mask |= 1 << v,
                2 => {
                    mask |= 1 << v;
                    value |= 1 << v;
                }
                _ => {}
            }
            c /= 3;
        }
        out.push((mask, value));
    }
    out
}

fn cube_minterms(r: usize, (mask, value): (u32, u32)) -> u32 {
    (0..1u32 << r)
        .filter(|x| x & mask == value)
        .fold(0, |acc, x| acc | 1 << x)
}

/// Minimum number of cubes covering the ON set of a complete function on
/// `r <= 4` variables, by depth-first search over its prime implicants.
pub fn exhaustive_min_cover(r: usize, on: u32) -> usize {
    if on == 0 {
        return 0;
    }
    let implicants: Vec<u32> = all_cubes(r)
        .into_iter()
        .map(|c| cube_minterms(r, c))
        .filter(|m| m & !on == 0)
        .collect();
    let mut primes: Vec<u32> = implicants
        .iter()
        .copied()
        .filter(|&m| !implicants.iter().any(|&o| o != m && o & m == m))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    fn search(primes: &[u32], left: u32, depth: usize, limit: usize) -> bool {
        if left == 0 {
            return true;
        }
        if depth == limit {
            return false;
        }
        let bit = left & left.wrapping_neg();
        primes
            .iter()
            .filter(|&&p| p & bit != 0)
            .any(|&p| search(primes, left & !p, depth + 1, limit))
    }
    (1..).find(|&limit| search(&primes, on, 0, limit)).unwrap()
}
