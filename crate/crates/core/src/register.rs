//! Registers with arbitrary updating functions and the cycle-accurate
//! simulator shared by every construction.
//!
//! Stage `i` holds state variable `x_i`. Each clock cycle the register first
//! emits its outputs (the `p` lowest stages in order `0..p`, or a list of
//! combinational output functions), then replaces every stage by the value
//! of its updating function on the current state.

use crate::bitseq::BitSequence;
use crate::boolfn::{
    factor::build_best, gate_count, minimize, Anf, CostModel, Cover, FactorOptions, GateNetwork,
    IncompleteFunction, MinimizeOptions, NetworkBuilder, NodeId, TruthTable,
};
use crate::error::{Error, Result};

/// Anything that can be clocked to produce a sequence.
pub trait Register {
    fn stage_count(&self) -> usize;
    /// Bits emitted per clock cycle.
    fn parallelism(&self) -> usize;
    fn initial_state(&self) -> Vec<bool>;
    /// Runs `cycles` clock cycles from `init` and returns the emitted bits.
    fn simulate(&self, init: &[bool], cycles: usize) -> Result<BitSequence>;

    /// Runs from [`Register::initial_state`] long enough to cover `seq` and
    /// compares bit for bit.
    fn verify(&self, seq: &BitSequence) -> Result<()> {
        let cycles = seq.len().div_ceil(self.parallelism());
        let out = self.simulate(&self.initial_state(), cycles)?;
        match out.bits()[..seq.len()]
            .iter()
            .zip(seq.bits())
            .position(|(a, b)| a != b)
        {
            None => Ok(()),
            Some(i) => Err(Error::Verification(format!(
                "generated bit {i} differs from the target sequence"
            ))),
        }
    }
}

/// Storage and logic cost of a register under a [`CostModel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeReport {
    pub storage_elements: usize,
    /// Logic in 2-input-AND equivalents.
    pub logic: f64,
    /// `beta * storage_elements + logic`.
    pub total: f64,
}

impl SizeReport {
    pub fn new(storage_elements: usize, logic: f64, cm: &CostModel) -> Self {
        Self {
            storage_elements,
            logic,
            total: cm.beta * storage_elements as f64 + logic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Logic {
    Sop(Cover),
    Anf(Anf),
}

impl Logic {
    pub fn num_inputs(&self) -> usize {
        match self {
            Logic::Sop(c) => c.num_inputs(),
            Logic::Anf(a) => a.num_inputs(),
        }
    }

    fn build(&self, b: &mut NetworkBuilder, opts: &FactorOptions, seen: &mut Vec<bool>) -> NodeId {
        match self {
            Logic::Sop(c) => build_best(b, c, opts, seen),
            Logic::Anf(a) => a.build(b),
        }
    }
}

/// One Boolean function reading the listed stages; local variable `v` of
/// the logic is stage `inputs[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateFn {
    inputs: Vec<usize>,
    logic: Logic,
}

impl UpdateFn {
    pub fn new(inputs: Vec<usize>, logic: Logic) -> Result<Self> {
        if logic.num_inputs() != inputs.len() {
            return Err(Error::WidthMismatch {
                expected: inputs.len(),
                found: logic.num_inputs(),
            });
        }
        Ok(Self { inputs, logic })
    }

    /// Copy of stage `stage`.
    pub fn wire(stage: usize) -> Self {
        Self {
            inputs: vec![stage],
            logic: Logic::Anf(Anf::parity(1, &[0]).expect("valid")),
        }
    }

    pub fn constant(value: bool) -> Self {
        Self {
            inputs: Vec::new(),
            logic: Logic::Anf(Anf::constant(0, value)),
        }
    }

    /// Minimizes a defining table whose variable `v` is stage `inputs[v]`
    /// and keeps only the stages the minimized cover reads.
    pub fn from_table(
        table: &IncompleteFunction,
        inputs: Vec<usize>,
        opts: &MinimizeOptions,
    ) -> Result<Self> {
        let cover = minimize(table, opts)?;
        Self::new(inputs, Logic::Sop(cover)).map(|f| f.compact())
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn logic(&self) -> &Logic {
        &self.logic
    }

    /// Drops inputs the logic never reads.
    pub fn compact(self) -> Self {
        let used: Vec<usize> = match &self.logic {
            Logic::Sop(c) => {
                let m = c.used_variables();
                (0..c.num_inputs()).filter(|v| m >> v & 1 == 1).collect()
            }
            Logic::Anf(a) => {
                let mut vs: Vec<usize> = a.terms().iter().flatten().copied().collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            }
        };
        if used.len() == self.inputs.len() {
            return self;
        }
        let mut map = vec![usize::MAX; self.inputs.len()];
        for (new, &old) in used.iter().enumerate() {
            map[old] = new;
        }
        let inputs = used.iter().map(|&v| self.inputs[v]).collect();
        let logic = match self.logic {
            Logic::Sop(c) => Logic::Sop(c.remap(&map, used.len()).expect("narrower")),
            Logic::Anf(a) => Logic::Anf(
                Anf::new(
                    used.len(),
                    a.terms()
                        .iter()
                        .map(|t| t.iter().map(|&v| map[v]).collect())
                        .collect(),
                )
                .expect("narrower"),
            ),
        };
        Self { inputs, logic }
    }

    pub fn eval(&self, state: &[bool]) -> bool {
        match &self.logic {
            Logic::Sop(c) => {
                let word = self
                    .inputs
                    .iter()
                    .enumerate()
                    .fold(0u128, |acc, (v, &s)| acc | (state[s] as u128) << v);
                c.eval_word(word)
            }
            Logic::Anf(a) => a.eval_with(|v| state[self.inputs[v]]),
        }
    }

    /// Truth table over the local inputs, for small functions.
    pub fn truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.inputs.len(), |x| match &self.logic {
            Logic::Sop(c) => c.eval_word(x as u128),
            Logic::Anf(a) => a.eval_with(|v| x >> v & 1 == 1),
        })
    }

    /// Gate network over the local inputs.
    pub fn network(&self, opts: &FactorOptions) -> GateNetwork {
        let mut b = NetworkBuilder::new(self.inputs.len());
        let out = self.logic.build(&mut b, opts, &mut Vec::new());
        b.finish(&[out])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputTap {
    /// Stages `0..p` are read every cycle.
    Stages(usize),
    /// Combinational functions of the current state.
    Functions(Vec<UpdateFn>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRegister {
    functions: Vec<UpdateFn>,
    outputs: OutputTap,
    init: Vec<bool>,
    /// Stages that may never be all zero at once (an LFSR's state).
    nonzero: Option<(usize, usize)>,
}

impl GenericRegister {
    pub fn new(functions: Vec<UpdateFn>, outputs: OutputTap, init: Vec<bool>) -> Result<Self> {
        let k = functions.len();
        if init.len() != k {
            return Err(Error::WidthMismatch {
                expected: k,
                found: init.len(),
            });
        }
        let check = |f: &UpdateFn| -> Result<()> {
            match f.inputs.iter().find(|&&s| s >= k) {
                Some(&s) => Err(Error::InvalidArgument(format!(
                    "function reads stage {s} of a {k}-stage register"
                ))),
                None => Ok(()),
            }
        };
        functions.iter().try_for_each(check)?;
        match &outputs {
            OutputTap::Stages(p) if *p == 0 || *p > k => {
                return Err(Error::InvalidArgument(format!(
                    "cannot tap {p} output stages of a {k}-stage register"
                )))
            }
            OutputTap::Functions(fs) if fs.is_empty() => {
                return Err(Error::InvalidArgument("register has no outputs".into()))
            }
            OutputTap::Functions(fs) => fs.iter().try_for_each(check)?,
            _ => {}
        }
        Ok(Self {
            functions,
            outputs,
            init,
            nonzero: None,
        })
    }

    /// Feedback shift register: stage `i` takes stage `i + 1`, the last
    /// stage takes `feedback`; stage 0 is the output.
    pub fn fsr(feedback: UpdateFn, init: Vec<bool>) -> Result<Self> {
        let k = init.len();
        if k == 0 {
            return Err(Error::InvalidArgument(
                "shift register needs a stage".into(),
            ));
        }
        let mut functions: Vec<UpdateFn> = (1..k).map(UpdateFn::wire).collect();
        functions.push(feedback);
        Self::new(functions, OutputTap::Stages(1), init)
    }

    /// Declares that stages `start..end` must never be all zero.
    pub fn with_nonzero_stages(mut self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.functions.len() {
            return Err(Error::InvalidArgument(format!(
                "invalid stage range {start}..{end}"
            )));
        }
        self.nonzero = Some((start, end));
        Ok(self)
    }

    pub fn nonzero_stages(&self) -> Option<(usize, usize)> {
        self.nonzero
    }

    pub fn functions(&self) -> &[UpdateFn] {
        &self.functions
    }

    pub fn outputs(&self) -> &OutputTap {
        &self.outputs
    }

    /// All updating functions followed by any combinational outputs, as one
    /// network over the stages.
    pub fn logic_network(&self, opts: &FactorOptions) -> GateNetwork {
        let k = self.functions.len();
        let all: Vec<&UpdateFn> = match &self.outputs {
            OutputTap::Stages(_) => self.functions.iter().collect(),
            OutputTap::Functions(fs) => self.functions.iter().chain(fs).collect(),
        };
        if opts.share {
            let mut b = NetworkBuilder::new(k);
            let mut seen = Vec::new();
            let outs: Vec<NodeId> = all
                .iter()
                .map(|f| {
                    b.set_input_map(Some(f.inputs.clone()));
                    f.logic.build(&mut b, opts, &mut seen)
                })
                .collect();
            return b.finish(&outs);
        }
        let mut net = GateNetwork::empty(k);
        for f in all {
            let mut b = NetworkBuilder::new(k);
            b.set_input_map(Some(f.inputs.clone()));
            let out = f.logic.build(&mut b, opts, &mut Vec::new());
            net.append(&b.finish(&[out]));
        }
        net
    }

    pub fn size(&self, cm: &CostModel, opts: &FactorOptions) -> SizeReport {
        let logic = gate_count(&self.logic_network(opts), cm.not_cost);
        SizeReport::new(self.functions.len(), logic, cm)
    }
}

impl Register for GenericRegister {
    fn stage_count(&self) -> usize {
        self.functions.len()
    }

    fn parallelism(&self) -> usize {
        match &self.outputs {
            OutputTap::Stages(p) => *p,
            OutputTap::Functions(fs) => fs.len(),
        }
    }

    fn initial_state(&self) -> Vec<bool> {
        self.init.clone()
    }

    fn simulate(&self, init: &[bool], cycles: usize) -> Result<BitSequence> {
        let k = self.functions.len();
        if init.len() != k {
            return Err(Error::WidthMismatch {
                expected: k,
                found: init.len(),
            });
        }
        if let Some((a, b)) = self.nonzero {
            if init[a..b].iter().all(|&x| !x) {
                return Err(Error::DegenerateState);
            }
        }
        let mut state = init.to_vec();
        let mut next = vec![false; k];
        let mut out = Vec::with_capacity(cycles * self.parallelism());
        for _ in 0..cycles {
            match &self.outputs {
                OutputTap::Stages(p) => out.extend_from_slice(&state[..*p]),
                OutputTap::Functions(fs) => out.extend(fs.iter().map(|f| f.eval(&state))),
            }
            for (slot, f) in next.iter_mut().zip(&self.functions) {
                *slot = f.eval(&state);
            }
            std::mem::swap(&mut state, &mut next);
        }
        BitSequence::new(out)
    }
}
