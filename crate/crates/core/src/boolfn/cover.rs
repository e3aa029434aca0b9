use std::fmt;

use super::function::{check_width, IncompleteFunction, TruthTable, MAX_TABLE_INPUTS};
use crate::error::{Error, Result};

/// A product of literals. Bit `v` of `mask` says whether `x_v` appears;
/// bit `v` of `value` is its polarity (1 for `x_v`, 0 for its complement).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    mask: u128,
    value: u128,
}

impl Cube {
    pub const UNIVERSE: Cube = Cube { mask: 0, value: 0 };

    pub fn new(mask: u128, value: u128) -> Self {
        Self {
            mask,
            value: value & mask,
        }
    }

    /// The cube containing exactly one input vector.
    pub fn minterm(input: u128, num_inputs: usize) -> Self {
        Self::new(width_mask(num_inputs), input)
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn literal_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Iterates the literals as `(variable, polarity)` in ascending order.
    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        (0..128)
            .filter(move |v| self.mask >> v & 1 == 1)
            .map(move |v| (v, self.value >> v & 1 == 1))
    }

    pub fn contains(&self, input: u128) -> bool {
        input & self.mask == self.value
    }

    /// True if every input of `other` is also in `self`.
    pub fn covers(&self, other: &Cube) -> bool {
        self.mask & other.mask == self.mask && other.value & self.mask == self.value
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        let common = self.mask & other.mask;
        self.value & common == other.value & common
    }

    pub fn without(&self, var: usize) -> Self {
        Self::new(self.mask & !(1 << var), self.value)
    }

    /// Enumerates the inputs inside the cube restricted to `num_inputs`
    /// variables. Only sensible for small free-variable counts.
    pub fn minterms(&self, num_inputs: usize) -> impl Iterator<Item = u128> {
        let free: Vec<usize> = (0..num_inputs)
            .filter(|v| self.mask >> v & 1 == 0)
            .collect();
        let base = self.value;
        (0u128..1 << free.len()).map(move |s| {
            let mut x = base;
            for (b, &v) in free.iter().enumerate() {
                if s >> b & 1 == 1 {
                    x |= 1 << v;
                }
            }
            x
        })
    }

    /// PLA notation, most significant variable first.
    pub fn to_pla(&self, num_inputs: usize) -> String {
        (0..num_inputs)
            .rev()
            .map(|v| {
                if self.mask >> v & 1 == 0 {
                    '-'
                } else if self.value >> v & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Inverse of [`Cube::to_pla`].
    pub fn from_pla(text: &str) -> Result<Self> {
        let n = text.chars().count();
        check_width(n)?;
        let mut mask = 0u128;
        let mut value = 0u128;
        for (i, c) in text.chars().enumerate() {
            let v = n - 1 - i;
            match c {
                '0' => mask |= 1 << v,
                '1' => {
                    mask |= 1 << v;
                    value |= 1 << v;
                }
                '-' => {}
                found => return Err(Error::Parse { position: i, found }),
            }
        }
        Ok(Self { mask, value })
    }
}

pub(crate) fn width_mask(num_inputs: usize) -> u128 {
    if num_inputs >= 128 {
        u128::MAX
    } else {
        (1u128 << num_inputs) - 1
    }
}

/// A sum of cubes over a fixed set of `num_inputs` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    num_inputs: usize,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(num_inputs: usize, cubes: Vec<Cube>) -> Result<Self> {
        check_width(num_inputs)?;
        let wm = width_mask(num_inputs);
        if let Some(c) = cubes.iter().find(|c| c.mask & !wm != 0) {
            return Err(Error::InvalidArgument(format!(
                "cube {:#b} uses variables beyond {num_inputs} inputs",
                c.mask
            )));
        }
        Ok(Self { num_inputs, cubes })
    }

    pub fn zero(num_inputs: usize) -> Self {
        Self {
            num_inputs,
            cubes: Vec::new(),
        }
    }

    pub fn one(num_inputs: usize) -> Self {
        Self {
            num_inputs,
            cubes: vec![Cube::UNIVERSE],
        }
    }

    /// Single literal `x_var` or its complement.
    pub fn literal(num_inputs: usize, var: usize, positive: bool) -> Self {
        Self {
            num_inputs,
            cubes: vec![Cube::new(1 << var, (positive as u128) << var)],
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn literal_count(&self) -> usize {
        self.cubes.iter().map(Cube::literal_count).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cubes.is_empty()
    }

    pub fn is_tautology_cube(&self) -> bool {
        self.cubes.iter().any(|c| c.mask == 0)
    }

    /// Variables that appear in some cube.
    pub fn used_variables(&self) -> u128 {
        self.cubes.iter().fold(0, |acc, c| acc | c.mask)
    }

    pub fn eval_word(&self, input: u128) -> bool {
        self.cubes.iter().any(|c| c.contains(input))
    }

    /// `input[v]` is the value of `x_v`.
    pub fn evaluate(&self, input: &[bool]) -> Result<bool> {
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

    /// True when the cover agrees with every specified row of `f`.
    pub fn is_consistent_with(&self, f: &IncompleteFunction) -> bool {
        f.rows().all(|(input, out)| self.eval_word(input) == out)
    }

    pub fn to_truth_table(&self) -> Result<TruthTable> {
        if self.num_inputs > MAX_TABLE_INPUTS {
            return Err(Error::UnsupportedWidth {
                width: self.num_inputs,
                max: MAX_TABLE_INPUTS,
            });
        }
        let mut bits = vec![false; 1 << self.num_inputs];
        for c in &self.cubes {
            for x in c.minterms(self.num_inputs) {
                bits[x as usize] = true;
            }
        }
        TruthTable::new(self.num_inputs, bits)
    }

    /// Renames variable `v` to `map[v]` in a cover over `new_width` inputs.
    pub fn remap(&self, map: &[usize], new_width: usize) -> Result<Cover> {
        let cubes = self
            .cubes
            .iter()
            .map(|c| {
                let (mut mask, mut value) = (0u128, 0u128);
                for (v, pos) in c.literals() {
                    mask |= 1 << map[v];
                    value |= (pos as u128) << map[v];
                }
                Cube { mask, value }
            })
            .collect();
        Cover::new(new_width, cubes)
    }
}

impl fmt::Display for Cover {
    /// Sum-of-products text such as `x4 x7 + ~x5 ~x6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cubes.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .cubes
            .iter()
            .map(|c| {
                if c.mask == 0 {
                    return "1".to_string();
                }
                c.literals()
                    .map(|(v, pos)| format!("{}x{v}", if pos { "" } else { "~" }))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
