//! Boolean functions: defining tables with don't-cares, two-level covers,
//! minimization, factoring into 2-input gate networks and gate costing.

mod anf;
mod cover;
pub(crate) mod factor;
mod function;
mod minimize;
mod network;

pub use anf::Anf;
pub use cover::{Cover, Cube};
pub use factor::{factor, factor_all, FactorOptions};
pub use function::{
    render_table, support, IncompleteFunction, TruthTable, MAX_INPUTS, MAX_TABLE_INPUTS,
};
pub use minimize::{minimize, MinimizeOptions};
pub use network::{gate_count, CostModel, GateKind, GateNetwork, NetworkBuilder, NodeId};
