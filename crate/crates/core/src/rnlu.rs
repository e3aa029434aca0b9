//! Construction of an RNLU whose output updating functions read only the
//! extra-bit stages.
//!
//! Stages `0..p` are output stages, stages `p..p+r` hold the state of the
//! extra-bit generator (stage `p + t` is generator bit `t`). The sequence is
//! cut into `m = ceil(n/p)` vectors and vector `i` is tagged with generator
//! state `g_i`; output function `f_j` maps `g_i` to bit `j` of vector `i`
//! and is free on the `2^r - m` states never visited.
//!
//! In registered mode the output stages start with vector 0 and the extra
//! bits with `g_1`, so the vector latched at the end of cycle `i` is
//! `f(g_{i+1})`. In stripped mode there are no output stages, the extra
//! bits start with `g_0` and the outputs are read combinationally.

use crate::bitseq::{ceil_log2, partition, BitSequence};
use crate::boolfn::{
    render_table, Anf, CostModel, Cover, FactorOptions, IncompleteFunction, MinimizeOptions,
};
use crate::error::{Error, Result};
use crate::extragen::{Generator, GeneratorSpec};
use crate::register::{GenericRegister, Logic, OutputTap, Register, SizeReport, UpdateFn};

#[derive(Debug, Clone, Default)]
pub struct ConstructOptions {
    /// Overrides the LFSR/counter selection rule.
    pub generator: Option<GeneratorSpec>,
    /// Overrides the generator's default initial state.
    pub g0: Option<u64>,
    pub minimize: MinimizeOptions,
}

#[derive(Debug, Clone)]
pub struct Rnlu {
    p: usize,
    n: usize,
    pad_count: usize,
    generator: Generator,
    states: Vec<u64>,
    first_vector: Vec<bool>,
    /// Defining table of `f_j`, variable `t` = extra bit `t`.
    tables: Vec<IncompleteFunction>,
    covers: Vec<Cover>,
    stripped: bool,
}

/// Builds an RNLU generating `seq` with `p` output bits per cycle.
pub fn construct_rnlu(seq: &BitSequence, p: usize, opts: &ConstructOptions) -> Result<Rnlu> {
    let part = partition(seq, p)?;
    let m = part.m();
    let r = ceil_log2(m as u128);
    let generator = match &opts.generator {
        Some(spec) => Generator::from_spec(spec, r)?,
        None => Generator::choose(m as u128, r)?,
    };
    let g0 = opts.g0.unwrap_or_else(|| generator.default_initial_state());
    let states = generator.state_sequence(g0, m)?;
    let width = generator.stages();

    let mut tables = vec![IncompleteFunction::new(width)?; p];
    for (g, v) in states.iter().zip(part.vectors()) {
        for (t, &bit) in tables.iter_mut().zip(v) {
            t.specify(*g as u128, bit)
                .map_err(|e| Error::Verification(format!("generator revisits a state: {e}")))?;
        }
    }
    let covers = tables
        .iter()
        .map(|t| crate::boolfn::minimize(t, &opts.minimize))
        .collect::<Result<Vec<_>>>()?;

    Ok(Rnlu {
        p,
        n: seq.len(),
        pad_count: part.pad_count(),
        generator,
        states,
        first_vector: part.vectors()[0].clone(),
        tables,
        covers,
        stripped: false,
    })
}

impl Rnlu {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn r(&self) -> usize {
        self.generator.stages()
    }

    /// Storage elements: `p + r`, or `r` once the output stages are stripped.
    pub fn stage_count(&self) -> usize {
        if self.stripped {
            self.r()
        } else {
            self.p + self.r()
        }
    }

    pub fn m(&self) -> usize {
        self.states.len()
    }

    /// Length of the target sequence.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pad_count(&self) -> usize {
        self.pad_count
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn g0(&self) -> u64 {
        self.states[0]
    }

    /// Generator states `g_0 .. g_{m-1}` in visiting order.
    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn defining_tables(&self) -> &[IncompleteFunction] {
        &self.tables
    }

    /// Minimized output functions over the `r` extra bits.
    pub fn output_covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Unspecified rows per output function.
    pub fn dont_care_count(&self) -> u128 {
        (1u128 << self.r()) - self.m() as u128
    }

    pub fn is_stripped(&self) -> bool {
        self.stripped
    }

    /// Same device with the output stages removed and the outputs taken
    /// from the updating functions directly.
    pub fn strip_output_stages(&self) -> Rnlu {
        Rnlu {
            stripped: true,
            ..self.clone()
        }
    }

    /// The defining table in visiting order, extra bits most significant
    /// first and output functions from `f_{p-1}` down to `f_0`.
    pub fn defining_table_text(&self) -> String {
        let (p, r) = (self.p, self.r());
        let labels: Vec<String> = (0..r).rev().map(|t| format!("x{}", p + t)).collect();
        let columns: Vec<(String, &IncompleteFunction)> = (0..p)
            .rev()
            .map(|j| (format!("f{j}"), &self.tables[j]))
            .collect();
        let rows: Vec<u128> = self.states.iter().map(|&s| s as u128).collect();
        render_table(&labels, &columns, &rows)
    }

    /// Initial state, stage 0 first.
    pub fn initial_state(&self) -> Vec<bool> {
        let r = self.r();
        let extra = if self.stripped || self.m() == 1 {
            self.states[0]
        } else {
            self.states[1]
        };
        let bits = (0..r).map(|t| extra >> t & 1 == 1);
        if self.stripped {
            bits.collect()
        } else {
            self.first_vector.iter().copied().chain(bits).collect()
        }
    }

    /// The device as a register over all its stages.
    pub fn to_register(&self) -> GenericRegister {
        let (p, r) = (self.p, self.r());
        let base = if self.stripped { 0 } else { p };
        let extra: Vec<usize> = (base..base + r).collect();
        let outputs: Vec<UpdateFn> = self
            .covers
            .iter()
            .map(|c| {
                UpdateFn::new(extra.clone(), Logic::Sop(c.clone()))
                    .expect("cover width is r")
                    .compact()
            })
            .collect();
        let generator: Vec<UpdateFn> = self
            .generator
            .update_anf()
            .into_iter()
            .map(|a: Anf| {
                UpdateFn::new(extra.clone(), Logic::Anf(a))
                    .expect("generator width is r")
                    .compact()
            })
            .collect();
        let reg = if self.stripped {
            GenericRegister::new(
                generator,
                OutputTap::Functions(outputs),
                self.initial_state(),
            )
        } else {
            let functions = outputs.into_iter().chain(generator).collect();
            GenericRegister::new(functions, OutputTap::Stages(p), self.initial_state())
        }
        .expect("consistent construction");
        if self.generator.is_lfsr() {
            reg.with_nonzero_stages(base, base + r)
                .expect("generator has stages")
        } else {
            reg
        }
    }

    /// Runs `cycles` clock cycles from the initial state.
    pub fn simulate(&self, cycles: usize) -> Result<BitSequence> {
        let reg = self.to_register();
        reg.simulate(&reg.initial_state(), cycles)
    }

    /// The first `n` generated bits.
    pub fn reproduce(&self) -> Result<BitSequence> {
        self.simulate(self.m())?.truncated(self.n)
    }

    /// Checks the generated bits against `seq`.
    pub fn verify(&self, seq: &BitSequence) -> Result<()> {
        if seq.len() != self.n {
            return Err(Error::WidthMismatch {
                expected: self.n,
                found: seq.len(),
            });
        }
        self.to_register().verify(seq)
    }

    pub fn size(&self, cm: &CostModel, opts: &FactorOptions) -> SizeReport {
        self.to_register().size(cm, opts)
    }
}
