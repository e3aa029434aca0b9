use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Widest input vector a cube or defining table can address.
pub const MAX_INPUTS: usize = 128;

/// Widest completely specified truth table we are willing to tabulate.
pub const MAX_TABLE_INPUTS: usize = 24;

pub(crate) fn check_width(width: usize) -> Result<()> {
    if width > MAX_INPUTS {
        return Err(Error::UnsupportedWidth {
            width,
            max: MAX_INPUTS,
        });
    }
    Ok(())
}

/// Completely specified function over `num_inputs` variables. Row `i` holds
/// `f` at the input whose bit `v` is the value of variable `x_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    num_inputs: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(num_inputs: usize, bits: Vec<bool>) -> Result<Self> {
        if num_inputs > MAX_TABLE_INPUTS || bits.len() != 1usize << num_inputs {
            return Err(Error::InvalidArgument(format!(
                "truth table of length {} does not match {num_inputs} inputs",
                bits.len()
            )));
        }
        Ok(Self { num_inputs, bits })
    }

    /// Truth table whose length must be a power of two.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "truth table length {} is not a power of two",
                bits.len()
            )));
        }
        let num_inputs = bits.len().trailing_zeros() as usize;
        Self::new(num_inputs, bits)
    }

    pub fn from_fn(num_inputs: usize, f: impl FnMut(u64) -> bool) -> Result<Self> {
        if num_inputs > MAX_TABLE_INPUTS {
            return Err(Error::UnsupportedWidth {
                width: num_inputs,
                max: MAX_TABLE_INPUTS,
            });
        }
        Ok(Self {
            num_inputs,
            bits: (0..1u64 << num_inputs).map(f).collect(),
        })
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, input: u64) -> bool {
        self.bits[input as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.bits.iter().all(|&b| b == self.bits[0])
    }

    /// All rows specified.
    pub fn to_incomplete(&self) -> IncompleteFunction {
        IncompleteFunction {
            num_inputs: self.num_inputs,
            rows: self
                .bits
                .iter()
                .enumerate()
                .map(|(i, &b)| (i as u128, b))
                .collect(),
        }
    }
}

/// Variables on which the function depends: `x_v` is in the support iff the
/// two cofactors with respect to `x_v` differ.
pub fn support(f: &TruthTable) -> Vec<usize> {
    (0..f.num_inputs)
        .filter(|&v| {
            let bit = 1usize << v;
            (0..f.bits.len())
                .filter(|i| i & bit == 0)
                .any(|i| f.bits[i] != f.bits[i | bit])
        })
        .collect()
}

/// A defining table: some input vectors have a specified output, all others
/// are don't-cares.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncompleteFunction {
    num_inputs: usize,
    rows: BTreeMap<u128, bool>,
}

impl IncompleteFunction {
    pub fn new(num_inputs: usize) -> Result<Self> {
        check_width(num_inputs)?;
        Ok(Self {
            num_inputs,
            rows: BTreeMap::new(),
        })
    }

    /// Builds a table from `(input, output)` rows, rejecting conflicts.
    pub fn from_rows(
        num_inputs: usize,
        rows: impl IntoIterator<Item = (u128, bool)>,
    ) -> Result<Self> {
        let mut f = Self::new(num_inputs)?;
        for (input, output) in rows {
            f.specify(input, output)?;
        }
        Ok(f)
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    /// Adds one row. Re-specifying the same output is a no-op; a different
    /// output is a [`Error::Conflict`].
    pub fn specify(&mut self, input: u128, output: bool) -> Result<()> {
        if self.num_inputs < MAX_INPUTS && input >> self.num_inputs != 0 {
            return Err(Error::InvalidArgument(format!(
                "input {input:#b} is wider than {} bits",
                self.num_inputs
            )));
        }
        match self.rows.insert(input, output) {
            Some(previous) if previous != output => {
                self.rows.insert(input, previous);
                Err(Error::Conflict { input })
            }
            _ => Ok(()),
        }
    }

    pub fn get(&self, input: u128) -> Option<bool> {
        self.rows.get(&input).copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (u128, bool)> + '_ {
        self.rows.iter().map(|(&i, &o)| (i, o))
    }

    pub fn specified_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of unspecified inputs, saturating at `u128::MAX`.
    pub fn dont_care_count(&self) -> u128 {
        if self.num_inputs >= 128 {
            return u128::MAX;
        }
        (1u128 << self.num_inputs) - self.rows.len() as u128
    }

    pub fn on_set(&self) -> impl Iterator<Item = u128> + '_ {
        self.rows.iter().filter(|(_, &o)| o).map(|(&i, _)| i)
    }

    pub fn off_set(&self) -> impl Iterator<Item = u128> + '_ {
        self.rows.iter().filter(|(_, &o)| !o).map(|(&i, _)| i)
    }
}

/// Renders several defining tables over the same rows as a text table:
/// input columns from the most significant variable down, then the function
/// columns in the given order, one line per listed input.
pub fn render_table(
    input_labels: &[String],
    columns: &[(String, &IncompleteFunction)],
    inputs: &[u128],
) -> String {
    let widths: Vec<usize> = input_labels.iter().map(|l| l.len()).collect();
    let fwidths: Vec<usize> = columns.iter().map(|(l, _)| l.len()).collect();
    let mut out = String::new();
    out.push_str(&input_labels.join(" "));
    out.push_str(" | ");
    out.push_str(
        &columns
            .iter()
            .map(|(l, _)| l.as_str())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    let n = input_labels.len();
    for &input in inputs {
        let cells: Vec<String> = (0..n)
            .map(|c| {
                let var = n - 1 - c;
                format!("{:>w$}", (input >> var) & 1, w = widths[c])
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push_str(" | ");
        let fcells: Vec<String> = columns
            .iter()
            .zip(&fwidths)
            .map(|((_, f), &w)| {
                let cell = match f.get(input) {
                    Some(true) => "1",
                    Some(false) => "0",
                    None => "-",
                };
                format!("{cell:>w$}")
            })
            .collect();
        out.push_str(&fcells.join(" "));
        let _ = writeln!(out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_of_projection_and_constant() {
        let proj = TruthTable::from_fn(2, |x| x & 1 == 1).unwrap();
        assert_eq!(support(&proj), vec![0]);
        let one = TruthTable::from_fn(3, |_| true).unwrap();
        assert!(support(&one).is_empty());
        assert!(one.is_constant());
    }

    #[test]
    fn support_of_nlfsr_feedback() {
        // x0 ^ x3 ^ x1 x2 ^ x2 x3
        let f = TruthTable::from_fn(4, |x| {
            let b = |i: u32| (x >> i) & 1 == 1;
            b(0) ^ b(3) ^ (b(1) & b(2)) ^ (b(2) & b(3))
        })
        .unwrap();
        assert_eq!(support(&f), vec![0, 1, 2, 3]);
    }

    #[test]
    fn malformed_table_length() {
        assert!(TruthTable::from_bits(vec![true; 3]).is_err());
        assert!(TruthTable::from_bits(vec![]).is_err());
        assert!(TruthTable::from_bits(vec![true]).is_ok());
    }

    #[test]
    fn conflicts_are_rejected() {
        let mut f = IncompleteFunction::new(2).unwrap();
        f.specify(1, true).unwrap();
        f.specify(1, true).unwrap();
        assert_eq!(f.specify(1, false), Err(Error::Conflict { input: 1 }));
        assert_eq!(f.get(1), Some(true));
        assert!(f.specify(4, true).is_err());
        assert_eq!(f.dont_care_count(), 3);
    }

    #[test]
    fn too_wide() {
        assert!(IncompleteFunction::new(129).is_err());
        assert!(IncompleteFunction::new(128).is_ok());
    }
}
