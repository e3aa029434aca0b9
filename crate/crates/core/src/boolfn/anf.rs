use super::function::TruthTable;
use super::network::{NetworkBuilder, NodeId};
use crate::error::{Error, Result};

/// Algebraic normal form: an XOR of AND-terms. Each term lists the
/// variables it multiplies; the empty term is the constant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    num_inputs: usize,
    terms: Vec<Vec<usize>>,
}

impl Anf {
    pub fn new(num_inputs: usize, terms: Vec<Vec<usize>>) -> Result<Self> {
        let mut terms: Vec<Vec<usize>> = terms
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        if let Some(v) = terms.iter().flatten().find(|&&v| v >= num_inputs) {
            return Err(Error::InvalidArgument(format!(
                "ANF term uses x{v} but only {num_inputs} inputs exist"
            )));
        }
        // x ^ x = 0
        terms.sort();
        let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(terms.len());
        for t in terms {
            if reduced.last() == Some(&t) {
                reduced.pop();
            } else {
                reduced.push(t);
            }
        }
        Ok(Self {
            num_inputs,
            terms: reduced,
        })
    }

    /// XOR of the listed variables.
    pub fn parity(num_inputs: usize, vars: &[usize]) -> Result<Self> {
        Self::new(num_inputs, vars.iter().map(|&v| vec![v]).collect())
    }

    pub fn constant(num_inputs: usize, value: bool) -> Self {
        Self {
            num_inputs,
            terms: if value { vec![vec![]] } else { vec![] },
        }
    }

    /// Möbius transform of a truth table.
    pub fn from_truth_table(t: &TruthTable) -> Self {
        let k = t.num_inputs();
        let mut coef: Vec<bool> = t.bits().to_vec();
        for v in 0..k {
            let bit = 1usize << v;
            for i in 0..coef.len() {
                if i & bit != 0 {
                    coef[i] ^= coef[i ^ bit];
                }
            }
        }
        let terms = coef
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| (0..k).filter(|v| i >> v & 1 == 1).collect())
            .collect();
        Self {
            num_inputs: k,
            terms,
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn eval_with(&self, value: impl Fn(usize) -> bool) -> bool {
        self.terms
            .iter()
            .fold(false, |acc, t| acc ^ t.iter().all(|&v| value(v)))
    }

    /// XOR of AND-terms, each term a balanced AND tree.
    pub fn build(&self, b: &mut NetworkBuilder) -> NodeId {
        let ids: Vec<NodeId> = self
            .terms
            .iter()
            .map(|t| {
                let lits: Vec<NodeId> = t.iter().map(|&v| b.input(v)).collect();
                b.reduce(&lits, true, NetworkBuilder::and)
            })
            .collect();
        // A linear chain keeps the term order of the written expression.
        let mut acc = b.constant(false);
        for id in ids {
            acc = b.xor(acc, id);
        }
        acc
    }
}
