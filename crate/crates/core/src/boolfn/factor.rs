//! Factoring covers into networks of 1- and 2-input gates.
//!
//! Two realizations are built for every function and the cheaper one is
//! kept:
//!
//! * two-level: one AND chain per cube, an OR over the cubes, one inverter
//!   per complemented variable; with XOR detection a pair of cubes
//!   `r·a·b' + r·a'·b` becomes `r·(a ⊕ b)`;
//! * multi-level: Shannon cofactoring from the highest variable down, where
//!   every distinct subfunction is built once and reused, a subfunction
//!   whose complement already exists costs one inverter, and complementary
//!   cofactors become a single XOR when XOR detection is on.
//!
//! The multi-level form is only tried up to [`MULTILEVEL_MAX_INPUTS`].

use std::collections::HashMap;

use super::cover::{Cover, Cube};
use super::network::{GateNetwork, NetworkBuilder, NodeId};

pub const MULTILEVEL_MAX_INPUTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorOptions {
    pub xor_detect: bool,
    /// Share gates across the functions passed to [`factor_all`].
    pub share: bool,
    pub multilevel: bool,
    /// Inverter weight used when choosing between realizations.
    pub not_cost: f64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            xor_detect: true,
            share: false,
            multilevel: true,
            not_cost: 0.5,
        }
    }
}

pub fn factor(cover: &Cover, opts: &FactorOptions) -> GateNetwork {
    factor_all(std::slice::from_ref(cover), opts)
}

/// One output per cover, in order.
pub fn factor_all(covers: &[Cover], opts: &FactorOptions) -> GateNetwork {
    let width = covers.iter().map(Cover::num_inputs).max().unwrap_or(0);
    if opts.share {
        let mut b = NetworkBuilder::new(width);
        let mut seen = Vec::new();
        let outs: Vec<NodeId> = covers
            .iter()
            .map(|c| build_best(&mut b, c, opts, &mut seen))
            .collect();
        return b.finish(&outs);
    }
    let mut net = GateNetwork::empty(width);
    for c in covers {
        let mut b = NetworkBuilder::new(c.num_inputs());
        let out = build_best(&mut b, c, opts, &mut Vec::new());
        net.append(&b.finish(&[out]));
    }
    net
}

pub(crate) fn build_best(
    b: &mut NetworkBuilder,
    cover: &Cover,
    opts: &FactorOptions,
    seen: &mut Vec<bool>,
) -> NodeId {
    let sop = build_sop(b, cover, opts.xor_detect);
    if !opts.multilevel || cover.num_inputs() > MULTILEVEL_MAX_INPUTS {
        b.marginal_cost(&[sop], seen, opts.not_cost);
        return sop;
    }
    let ml = build_multilevel(b, cover, opts.xor_detect);
    let mut s1 = seen.clone();
    let c_sop = b.marginal_cost(&[sop], &mut s1, opts.not_cost);
    let mut s2 = seen.clone();
    let c_ml = b.marginal_cost(&[ml], &mut s2, opts.not_cost);
    if c_ml < c_sop {
        *seen = s2;
        ml
    } else {
        *seen = s1;
        sop
    }
}

fn build_cube(b: &mut NetworkBuilder, cube: &Cube) -> NodeId {
    let mut acc = b.constant(true);
    for (v, pos) in cube.literals() {
        let lit = b.literal(v, pos);
        acc = b.and(acc, lit);
    }
    acc
}

/// Two-level realization.
pub(crate) fn build_sop(b: &mut NetworkBuilder, cover: &Cover, xor_detect: bool) -> NodeId {
    let cubes = cover.cubes();
    let mut used = vec![false; cubes.len()];
    let mut terms = Vec::with_capacity(cubes.len());
    for i in 0..cubes.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let ci = cubes[i];
        let partner = if xor_detect {
            (i + 1..cubes.len()).find(|&j| {
                let cj = cubes[j];
                !used[j] && cj.mask() == ci.mask() && (ci.value() ^ cj.value()).count_ones() == 2
            })
        } else {
            None
        };
        match partner {
            Some(j) => {
                used[j] = true;
                let diff = ci.value() ^ cubes[j].value();
                let a = diff.trailing_zeros() as usize;
                let bv = (127 - diff.leading_zeros()) as usize;
                let rest = Cube::new(ci.mask() & !diff, ci.value());
                let xa = b.input(a);
                let xb = b.input(bv);
                let mut x = b.xor(xa, xb);
                // equal polarities in ci mean x_a == x_b
                if (ci.value() >> a & 1) == (ci.value() >> bv & 1) {
                    x = b.not(x);
                }
                let r = build_cube(b, &rest);
                terms.push(b.and(r, x));
            }
            None => terms.push(build_cube(b, &ci)),
        }
    }
    let mut acc = b.constant(false);
    for t in terms {
        acc = b.or(acc, t);
    }
    acc
}

/// Packed truth table over `nv` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Table {
    nv: usize,
    words: Vec<u64>,
}

impl Table {
    fn width_mask(nv: usize) -> u64 {
        if nv >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << nv)) - 1
        }
    }

    fn is_const(&self) -> Option<bool> {
        let m = Self::width_mask(self.nv);
        if self.words.iter().all(|&w| w & m == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w & m == m) {
            Some(true)
        } else {
            None
        }
    }

    fn complement(&self) -> Table {
        let m = Self::width_mask(self.nv);
        Table {
            nv: self.nv,
            words: self.words.iter().map(|&w| !w & m).collect(),
        }
    }

    /// Cofactors with respect to the top variable.
    fn split(&self) -> (Table, Table) {
        let nv = self.nv - 1;
        if self.nv > 6 {
            let half = self.words.len() / 2;
            (
                Table {
                    nv,
                    words: self.words[..half].to_vec(),
                },
                Table {
                    nv,
                    words: self.words[half..].to_vec(),
                },
            )
        } else {
            let bits = 1u32 << nv;
            let m = Self::width_mask(nv);
            let w = self.words[0];
            (
                Table {
                    nv,
                    words: vec![w & m],
                },
                Table {
                    nv,
                    words: vec![(w >> bits) & m],
                },
            )
        }
    }
}

fn cover_table(cover: &Cover) -> Table {
    let nv = cover.num_inputs();
    let len = (1usize << nv).div_ceil(64);
    let mut words = vec![0u64; len];
    for c in cover.cubes() {
        for x in c.minterms(nv) {
            let x = x as usize;
            words[x / 64] |= 1 << (x % 64);
        }
    }
    Table { nv, words }
}

/// Multi-level realization by shared Shannon cofactoring.
pub(crate) fn build_multilevel(b: &mut NetworkBuilder, cover: &Cover, xor_detect: bool) -> NodeId {
    let table = cover_table(cover);
    let mut memo: HashMap<Table, NodeId> = HashMap::new();
    decompose(b, &table, xor_detect, &mut memo)
}

fn decompose(
    b: &mut NetworkBuilder,
    f: &Table,
    xor_detect: bool,
    memo: &mut HashMap<Table, NodeId>,
) -> NodeId {
    if let Some(c) = f.is_const() {
        return b.constant(c);
    }
    if let Some(&id) = memo.get(f) {
        return id;
    }
    let neg = f.complement();
    if let Some(&id) = memo.get(&neg) {
        let id = b.not(id);
        memo.insert(f.clone(), id);
        return id;
    }
    let v = f.nv - 1;
    let (f0, f1) = f.split();
    let id = if f0 == f1 {
        decompose(b, &f0, xor_detect, memo)
    } else {
        let x = b.input(v);
        match (f0.is_const(), f1.is_const()) {
            (Some(false), _) => {
                let g = decompose(b, &f1, xor_detect, memo);
                b.and(x, g)
            }
            (_, Some(false)) => {
                let g = decompose(b, &f0, xor_detect, memo);
                let nx = b.not(x);
                b.and(nx, g)
            }
            (Some(true), _) => {
                let g = decompose(b, &f1, xor_detect, memo);
                let nx = b.not(x);
                b.or(nx, g)
            }
            (_, Some(true)) => {
                let g = decompose(b, &f0, xor_detect, memo);
                b.or(x, g)
            }
            _ if xor_detect && f0 == f1.complement() => {
                let g = decompose(b, &f0, xor_detect, memo);
                b.xor(x, g)
            }
            _ => {
                let g0 = decompose(b, &f0, xor_detect, memo);
                let g1 = decompose(b, &f1, xor_detect, memo);
                let nx = b.not(x);
                let t1 = b.and(x, g1);
                let t0 = b.and(nx, g0);
                b.or(t1, t0)
            }
        }
    };
    memo.insert(f.clone(), id);
    id
}
