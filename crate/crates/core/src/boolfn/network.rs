use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    Input(usize),
    Const(bool),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Xor(NodeId, NodeId),
}

/// A DAG of 1- and 2-input gates with any number of outputs. Operands
/// always refer to earlier nodes, so node order is a topological order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateNetwork {
    num_inputs: usize,
    nodes: Vec<GateKind>,
    outputs: Vec<NodeId>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateCounts {
    pub and: usize,
    pub or: usize,
    pub xor: usize,
    pub not: usize,
}

impl GateCounts {
    pub fn binary(&self) -> usize {
        self.and + self.or + self.xor
    }
}

impl GateNetwork {
    pub fn empty(num_inputs: usize) -> Self {
        Self {
            num_inputs,
            nodes: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn nodes(&self) -> &[GateKind] {
        &self.nodes
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    fn eval_nodes(&self, input: u128) -> Vec<bool> {
        let mut val = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            val[i] = match *node {
                GateKind::Input(v) => input >> v & 1 == 1,
                GateKind::Const(b) => b,
                GateKind::Not(a) => !val[a],
                GateKind::And(a, b) => val[a] & val[b],
                GateKind::Or(a, b) => val[a] | val[b],
                GateKind::Xor(a, b) => val[a] ^ val[b],
            };
        }
        val
    }

    /// Values of all outputs; bit `v` of `input` is `x_v`.
    pub fn eval_word(&self, input: u128) -> Vec<bool> {
        let val = self.eval_nodes(input);
        self.outputs.iter().map(|&o| val[o]).collect()
    }

    pub fn evaluate(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.num_inputs {
            return Err(Error::WidthMismatch {
                expected: self.num_inputs,
                found: input.len(),
            });
        }
        let word = input
            .iter()
            .enumerate()
            .fold(0u128, |acc, (v, &b)| acc | (b as u128) << v);
        Ok(self.eval_word(word))
    }

    fn reachable(&self) -> Vec<bool> {
        let mut live = vec![false; self.nodes.len()];
        for &o in &self.outputs {
            live[o] = true;
        }
        for i in (0..self.nodes.len()).rev() {
            if !live[i] {
                continue;
            }
            match self.nodes[i] {
                GateKind::Not(a) => live[a] = true,
                GateKind::And(a, b) | GateKind::Or(a, b) | GateKind::Xor(a, b) => {
                    live[a] = true;
                    live[b] = true;
                }
                _ => {}
            }
        }
        live
    }

    /// Gate counts over the nodes reachable from the outputs.
    pub fn counts(&self) -> GateCounts {
        let live = self.reachable();
        let mut c = GateCounts::default();
        for (node, _) in self.nodes.iter().zip(&live).filter(|(_, &l)| l) {
            match node {
                GateKind::Not(_) => c.not += 1,
                GateKind::And(..) => c.and += 1,
                GateKind::Or(..) => c.or += 1,
                GateKind::Xor(..) => c.xor += 1,
                _ => {}
            }
        }
        c
    }

    /// Places `other` next to `self`: inputs are shared, nodes are not.
    pub fn append(&mut self, other: &GateNetwork) {
        let offset = self.nodes.len();
        self.num_inputs = self.num_inputs.max(other.num_inputs);
        self.nodes.extend(other.nodes.iter().map(|n| match *n {
            GateKind::Not(a) => GateKind::Not(a + offset),
            GateKind::And(a, b) => GateKind::And(a + offset, b + offset),
            GateKind::Or(a, b) => GateKind::Or(a + offset, b + offset),
            GateKind::Xor(a, b) => GateKind::Xor(a + offset, b + offset),
            other => other,
        }));
        self.outputs
            .extend(other.outputs.iter().map(|&o| o + offset));
    }
}

/// Size of a network in 2-input-AND equivalents: every 2-input gate counts
/// as one unit, every inverter as `not_cost` units.
pub fn gate_count(net: &GateNetwork, not_cost: f64) -> f64 {
    let c = net.counts();
    c.binary() as f64 + not_cost * c.not as f64
}

/// Structurally hashed network construction with constant propagation.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    num_inputs: usize,
    nodes: Vec<GateKind>,
    index: HashMap<GateKind, NodeId>,
    input_map: Option<Vec<usize>>,
}

impl NetworkBuilder {
    pub fn new(num_inputs: usize) -> Self {
        Self {
            num_inputs,
            nodes: Vec::new(),
            index: HashMap::new(),
            input_map: None,
        }
    }

    /// While set, `input(v)` refers to network input `map[v]`.
    pub fn set_input_map(&mut self, map: Option<Vec<usize>>) {
        self.input_map = map;
    }

    fn intern(&mut self, kind: GateKind) -> NodeId {
        if let Some(&id) = self.index.get(&kind) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(kind);
        self.index.insert(kind, id);
        id
    }

    fn as_const(&self, id: NodeId) -> Option<bool> {
        match self.nodes[id] {
            GateKind::Const(b) => Some(b),
            _ => None,
        }
    }

    fn is_complement(&self, a: NodeId, b: NodeId) -> bool {
        self.nodes[a] == GateKind::Not(b) || self.nodes[b] == GateKind::Not(a)
    }

    pub fn input(&mut self, var: usize) -> NodeId {
        let var = match &self.input_map {
            Some(map) => map[var],
            None => var,
        };
        self.intern(GateKind::Input(var))
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.intern(GateKind::Const(value))
    }

    pub fn literal(&mut self, var: usize, positive: bool) -> NodeId {
        let x = self.input(var);
        if positive {
            x
        } else {
            self.not(x)
        }
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        match self.nodes[a] {
            GateKind::Const(b) => self.constant(!b),
            GateKind::Not(inner) => inner,
            _ => self.intern(GateKind::Not(a)),
        }
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        match (self.as_const(a), self.as_const(b)) {
            (Some(false), _) | (_, Some(false)) => return self.constant(false),
            (Some(true), _) => return b,
            (_, Some(true)) => return a,
            _ => {}
        }
        if a == b {
            return a;
        }
        if self.is_complement(a, b) {
            return self.constant(false);
        }
        self.intern(GateKind::And(a.min(b), a.max(b)))
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        match (self.as_const(a), self.as_const(b)) {
            (Some(true), _) | (_, Some(true)) => return self.constant(true),
            (Some(false), _) => return b,
            (_, Some(false)) => return a,
            _ => {}
        }
        if a == b {
            return a;
        }
        if self.is_complement(a, b) {
            return self.constant(true);
        }
        self.intern(GateKind::Or(a.min(b), a.max(b)))
    }

    pub fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        match (self.as_const(a), self.as_const(b)) {
            (Some(x), Some(y)) => return self.constant(x ^ y),
            (Some(false), _) => return b,
            (_, Some(false)) => return a,
            (Some(true), _) => return self.not(b),
            (_, Some(true)) => return self.not(a),
            _ => {}
        }
        if a == b {
            return self.constant(false);
        }
        if self.is_complement(a, b) {
            return self.constant(true);
        }
        self.intern(GateKind::Xor(a.min(b), a.max(b)))
    }

    /// Balanced reduction; `empty` is returned for no operands.
    pub fn reduce(
        &mut self,
        ids: &[NodeId],
        empty: bool,
        op: fn(&mut Self, NodeId, NodeId) -> NodeId,
    ) -> NodeId {
        match ids.len() {
            0 => self.constant(empty),
            1 => ids[0],
            _ => {
                let (l, r) = ids.split_at(ids.len() / 2);
                let a = self.reduce(l, empty, op);
                let b = self.reduce(r, empty, op);
                op(self, a, b)
            }
        }
    }

    /// Cost of the nodes reachable from `roots` that are not already
    /// marked in `seen`; marks them.
    pub(crate) fn marginal_cost(
        &self,
        roots: &[NodeId],
        seen: &mut Vec<bool>,
        not_cost: f64,
    ) -> f64 {
        seen.resize(self.nodes.len(), false);
        let mut stack: Vec<NodeId> = roots.to_vec();
        let mut cost = 0.0;
        while let Some(id) = stack.pop() {
            if seen[id] {
                continue;
            }
            seen[id] = true;
            match self.nodes[id] {
                GateKind::Not(a) => {
                    cost += not_cost;
                    stack.push(a);
                }
                GateKind::And(a, b) | GateKind::Or(a, b) | GateKind::Xor(a, b) => {
                    cost += 1.0;
                    stack.push(a);
                    stack.push(b);
                }
                _ => {}
            }
        }
        cost
    }

    /// Keeps only the nodes reachable from `outputs`, renumbered in order.
    pub fn finish(self, outputs: &[NodeId]) -> GateNetwork {
        let full = GateNetwork {
            num_inputs: self.num_inputs,
            nodes: self.nodes,
            outputs: outputs.to_vec(),
        };
        let live = full.reachable();
        let mut remap = vec![usize::MAX; full.nodes.len()];
        let mut nodes = Vec::new();
        for (i, node) in full.nodes.iter().enumerate() {
            if !live[i] {
                continue;
            }
            remap[i] = nodes.len();
            nodes.push(match *node {
                GateKind::Not(a) => GateKind::Not(remap[a]),
                GateKind::And(a, b) => GateKind::And(remap[a], remap[b]),
                GateKind::Or(a, b) => GateKind::Or(remap[a], remap[b]),
                GateKind::Xor(a, b) => GateKind::Xor(remap[a], remap[b]),
                other => other,
            });
        }
        GateNetwork {
            num_inputs: full.num_inputs,
            nodes,
            outputs: full.outputs.iter().map(|&o| remap[o]).collect(),
        }
    }
}

/// Circuit-size parameters: `alpha` scales the `2^k / k` estimate for a
/// random `k`-input function, `beta` is the cost of one storage element in
/// gates, `not_cost` the cost of an inverter in 2-input-AND units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub alpha: f64,
    pub beta: f64,
    pub not_cost: f64,
}

impl CostModel {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&alpha) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in [1, 2], got {alpha}"
            )));
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "beta must be a non-negative number, got {beta}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            not_cost: 0.5,
        })
    }

    pub fn with_not_cost(mut self, not_cost: f64) -> Result<Self> {
        if !(not_cost >= 0.0 && not_cost.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "inverter cost must be non-negative, got {not_cost}"
            )));
        }
        self.not_cost = not_cost;
        Ok(self)
    }
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            beta: 4.0,
            not_cost: 0.5,
        }
    }
}
