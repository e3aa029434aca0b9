//! Two-level minimization of incompletely specified functions.
//!
//! Up to `exact_threshold` inputs the prime implicants are generated by
//! Quine-McCluskey tabulation and a minimum-cardinality cover is found by
//! branch and bound. Wider functions use a greedy expand/irredundant pass,
//! over a dense table when it fits in memory and over a decision-tree
//! partition of the specified rows otherwise.

use std::collections::{HashMap, HashSet};

use super::cover::{width_mask, Cover, Cube};
use super::function::IncompleteFunction;
use crate::error::Result;

const DENSE_MAX_INPUTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimizeOptions {
    /// Functions with at most this many inputs are minimized exactly.
    pub exact_threshold: usize,
    /// Search-node budget of the exact covering step. When exhausted the
    /// best cover found so far is returned.
    pub node_limit: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            exact_threshold: 8,
            node_limit: 200_000,
        }
    }
}

pub fn minimize(f: &IncompleteFunction, opts: &MinimizeOptions) -> Result<Cover> {
    let r = f.num_inputs();
    let on: Vec<u128> = f.on_set().collect();
    if on.is_empty() {
        return Ok(Cover::zero(r));
    }
    if f.off_set().next().is_none() {
        return Ok(Cover::one(r));
    }
    let mut cubes = if r <= opts.exact_threshold {
        exact(f, opts.node_limit)
    } else if r <= DENSE_MAX_INPUTS {
        dense_heuristic(f)
    } else {
        sparse_heuristic(f)
    };
    cubes.sort_by(|a, b| {
        b.mask()
            .count_ones()
            .cmp(&a.mask().count_ones())
            .then(a.cmp(b))
    });
    let cover = Cover::new(r, cubes)?;
    debug_assert!(cover.is_consistent_with(f));
    Ok(cover)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Row {
    Off,
    On,
    DontCare,
}

fn dense_rows(f: &IncompleteFunction) -> Vec<Row> {
    let mut rows = vec![Row::DontCare; 1usize << f.num_inputs()];
    for (input, out) in f.rows() {
        rows[input as usize] = if out { Row::On } else { Row::Off };
    }
    rows
}

/// Prime implicants of ON ∪ DC by iterated merging of adjacent cubes.
pub(crate) fn prime_implicants(f: &IncompleteFunction) -> Vec<Cube> {
    let r = f.num_inputs();
    let rows = dense_rows(f);
    let mut level: HashSet<Cube> = rows
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != Row::Off)
        .map(|(x, _)| Cube::minterm(x as u128, r))
        .collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut next = HashSet::new();
        let mut merged: HashSet<Cube> = HashSet::new();
        for c in &level {
            for v in 0..r {
                if c.mask() >> v & 1 == 0 {
                    continue;
                }
                let partner = Cube::new(c.mask(), c.value() ^ (1 << v));
                if level.contains(&partner) {
                    merged.insert(*c);
                    next.insert(c.without(v));
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    primes.sort();
    primes
}

type RowSet = Vec<u64>;

fn rs_new(n: usize) -> RowSet {
    vec![0; n.div_ceil(64)]
}

fn rs_set(s: &mut RowSet, i: usize) {
    s[i / 64] |= 1 << (i % 64);
}

fn rs_is_empty(s: &RowSet) -> bool {
    s.iter().all(|&w| w == 0)
}

fn rs_count_and(a: &RowSet, b: &RowSet) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn rs_ones(s: &RowSet) -> impl Iterator<Item = usize> + '_ {
    s.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let t = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(w * 64 + t)
        })
    })
}

struct CoverProblem {
    /// rows covered by each column
    cols: Vec<RowSet>,
    /// columns covering each row
    rows: Vec<Vec<usize>>,
    literals: Vec<u32>,
}

struct Search<'a> {
    p: &'a CoverProblem,
    best: Vec<usize>,
    nodes: usize,
    limit: usize,
}

impl Search<'_> {
    fn lower_bound(&self, uncovered: &RowSet) -> usize {
        // rows pairwise sharing no column need distinct columns
        let mut blocked = vec![false; self.p.cols.len()];
        let mut order: Vec<usize> = rs_ones(uncovered).collect();
        order.sort_by_key(|&r| self.p.rows[r].len());
        let mut bound = 0;
        for r in order {
            if self.p.rows[r].iter().any(|&c| blocked[c]) {
                continue;
            }
            bound += 1;
            for &c in &self.p.rows[r] {
                blocked[c] = true;
            }
        }
        bound
    }

    fn solve(&mut self, uncovered: &RowSet, chosen: &mut Vec<usize>) {
        if self.nodes >= self.limit {
            return;
        }
        self.nodes += 1;
        if rs_is_empty(uncovered) {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let row = rs_ones(uncovered)
            .min_by_key(|&r| self.p.rows[r].len())
            .expect("non-empty");
        let mut candidates: Vec<(u32, u32, usize)> = self.p.rows[row]
            .iter()
            .map(|&c| {
                (
                    rs_count_and(&self.p.cols[c], uncovered),
                    self.p.literals[c],
                    c,
                )
            })
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        for (_, _, c) in candidates {
            let rest: RowSet = uncovered
                .iter()
                .zip(&self.p.cols[c])
                .map(|(u, col)| u & !col)
                .collect();
            chosen.push(c);
            self.solve(&rest, chosen);
            chosen.pop();
        }
    }
}

fn greedy_cover(p: &CoverProblem, all: &RowSet) -> Vec<usize> {
    let mut uncovered = all.clone();
    let mut chosen = Vec::new();
    while !rs_is_empty(&uncovered) {
        let best = (0..p.cols.len())
            .max_by(|&a, &b| {
                rs_count_and(&p.cols[a], &uncovered)
                    .cmp(&rs_count_and(&p.cols[b], &uncovered))
                    .then(p.literals[b].cmp(&p.literals[a]))
                    .then(b.cmp(&a))
            })
            .expect("columns cover every row");
        for (u, col) in uncovered.iter_mut().zip(&p.cols[best]) {
            *u &= !col;
        }
        chosen.push(best);
    }
    chosen
}

fn exact(f: &IncompleteFunction, node_limit: usize) -> Vec<Cube> {
    let r = f.num_inputs();
    let on: Vec<u128> = f.on_set().collect();
    let on_index: HashMap<u128, usize> = on.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let primes: Vec<Cube> = prime_implicants(f)
        .into_iter()
        .filter(|c| c.minterms(r).any(|x| on_index.contains_key(&x)))
        .collect();
    let mut cols = Vec::with_capacity(primes.len());
    let mut rows = vec![Vec::new(); on.len()];
    for (ci, c) in primes.iter().enumerate() {
        let mut set = rs_new(on.len());
        for x in c.minterms(r) {
            if let Some(&ri) = on_index.get(&x) {
                rs_set(&mut set, ri);
                rows[ri].push(ci);
            }
        }
        cols.push(set);
    }
    let problem = CoverProblem {
        literals: primes.iter().map(|c| c.literal_count() as u32).collect(),
        cols,
        rows,
    };
    let mut all = rs_new(on.len());
    for i in 0..on.len() {
        rs_set(&mut all, i);
    }
    let greedy = greedy_cover(&problem, &all);
    let mut search = Search {
        p: &problem,
        best: greedy,
        nodes: 0,
        limit: node_limit,
    };
    search.solve(&all, &mut Vec::new());
    let mut chosen = search.best;
    chosen.sort_unstable();
    chosen.into_iter().map(|c| primes[c]).collect()
}

/// Drops cubes whose specified ON inputs are all covered by other cubes,
/// smallest cubes first.
fn irredundant(cubes: Vec<Cube>, on_inside: impl Fn(&Cube) -> Vec<u128>) -> Vec<Cube> {
    let mut count: HashMap<u128, usize> = HashMap::new();
    let members: Vec<Vec<u128>> = cubes.iter().map(&on_inside).collect();
    for m in &members {
        for &x in m {
            *count.entry(x).or_default() += 1;
        }
    }
    let mut order: Vec<usize> = (0..cubes.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(cubes[i].literal_count()));
    let mut keep = vec![true; cubes.len()];
    for i in order {
        if members[i].iter().all(|x| count[x] > 1) {
            keep[i] = false;
            for x in &members[i] {
                *count.get_mut(x).expect("counted") -= 1;
            }
        }
    }
    cubes
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect()
}

fn dense_heuristic(f: &IncompleteFunction) -> Vec<Cube> {
    let r = f.num_inputs();
    let rows = dense_rows(f);
    let mut covered = vec![false; rows.len()];
    let mut cubes = Vec::new();
    for seed in 0..rows.len() {
        if rows[seed] != Row::On || covered[seed] {
            continue;
        }
        let mut cube = Cube::minterm(seed as u128, r);
        loop {
            let mut best: Option<(usize, usize)> = None;
            for v in 0..r {
                if cube.mask() >> v & 1 == 0 {
                    continue;
                }
                let mut legal = true;
                let mut gain = 0;
                for x in cube.minterms(r) {
                    let y = (x ^ (1 << v)) as usize;
                    match rows[y] {
                        Row::Off => {
                            legal = false;
                            break;
                        }
                        Row::On if !covered[y] => gain += 1,
                        _ => {}
                    }
                }
                if legal && best.is_none_or(|(_, g)| gain > g) {
                    best = Some((v, gain));
                }
            }
            match best {
                Some((v, _)) => cube = cube.without(v),
                None => break,
            }
        }
        for x in cube.minterms(r) {
            covered[x as usize] = true;
        }
        cubes.push(cube);
    }
    irredundant(cubes, |c| {
        c.minterms(r)
            .filter(|&x| rows[x as usize] == Row::On)
            .collect()
    })
}

fn sparse_heuristic(f: &IncompleteFunction) -> Vec<Cube> {
    let r = f.num_inputs();
    let on: Vec<u128> = f.on_set().collect();
    let off: Vec<u128> = f.off_set().collect();
    let mut leaves = Vec::new();
    split(&on, &off, Cube::UNIVERSE, width_mask(r), &mut leaves);

    // expand each leaf against the OFF-set, fixed variable order
    let mut cubes: Vec<Cube> = Vec::with_capacity(leaves.len());
    for leaf in leaves {
        let mut cube = leaf;
        for v in 0..r {
            if cube.mask() >> v & 1 == 0 {
                continue;
            }
            let wider = cube.without(v);
            if !off.iter().any(|&o| wider.contains(o)) {
                cube = wider;
            }
        }
        if !cubes.iter().any(|c| c.covers(&cube)) {
            cubes.retain(|c| !cube.covers(c));
            cubes.push(cube);
        }
    }
    irredundant(cubes, |c| {
        on.iter().copied().filter(|&x| c.contains(x)).collect()
    })
}

/// Decision-tree partition: every leaf holding only ON rows becomes a cube.
fn split(on: &[u128], off: &[u128], path: Cube, free: u128, leaves: &mut Vec<Cube>) {
    if on.is_empty() {
        return;
    }
    if off.is_empty() {
        leaves.push(path);
        return;
    }
    let mut best: Option<(usize, usize)> = None;
    let mut f = free;
    while f != 0 {
        let v = f.trailing_zeros() as usize;
        f &= f - 1;
        let on1 = on.iter().filter(|&&x| x >> v & 1 == 1).count();
        let off1 = off.iter().filter(|&&x| x >> v & 1 == 1).count();
        let (on0, off0) = (on.len() - on1, off.len() - off1);
        if (on1 + off1 == 0) || (on0 + off0 == 0) {
            continue;
        }
        let impurity = on0.min(off0) + on1.min(off1);
        if best.is_none_or(|(_, s)| impurity < s) {
            best = Some((v, impurity));
        }
    }
    let (v, _) = best.expect("distinct ON and OFF rows differ in a free variable");
    let free = free & !(1 << v);
    for polarity in [false, true] {
        let keep = |x: &&u128| (**x >> v & 1 == 1) == polarity;
        let on_b: Vec<u128> = on.iter().filter(keep).copied().collect();
        let off_b: Vec<u128> = off.iter().filter(keep).copied().collect();
        let child = Cube::new(path.mask() | 1 << v, path.value() | (polarity as u128) << v);
        split(&on_b, &off_b, child, free, leaves);
    }
}
