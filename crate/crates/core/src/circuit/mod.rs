//! Combinational netlists: parsing, exhaustive simulation into decision
//! tables, rule-driven resynthesis and exhaustive equivalence checking.

mod equivalence;
mod netlist;
mod synthesize;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::decision_table::{DecisionTable, Value};
use crate::rules::AttributeValues;

pub use equivalence::{check_equivalence, check_equivalence_with_cap, Equivalence};
pub use netlist::{parse_netlist, Gate, GateKind, Netlist};
pub use synthesize::{minimize_netlist, synthesize_from_rule};

/// Default limit on primary inputs for exhaustive enumeration.
pub const DEFAULT_MAX_INPUTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid wire name `{0}`")]
    InvalidName(String),
    #[error("combinational cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("wire `{0}` has more than one driver")]
    DriverConflict(String),
    #[error("wire `{0}` is referenced but never driven")]
    Dangling(String),
    #[error("gate `{wire}`: {kind} cannot take {found} input(s)")]
    Arity {
        wire: String,
        kind: GateKind,
        found: usize,
    },
    #[error("netlist declares no output")]
    MissingOutput,
    #[error("netlist has no primary inputs")]
    NoInputs,
    #[error("{inputs} primary inputs exceed the exhaustive enumeration cap of {cap}")]
    Capacity { inputs: usize, cap: usize },
    #[error("assignment: {0}")]
    Assignment(String),
    #[error("unknown wire `{0}`")]
    UnknownWire(String),
    #[error("descriptor {attribute}={value} is not binary")]
    NonBinary { attribute: String, value: Value },
    #[error("rule has no descriptors")]
    EmptyRule,
    #[error("primary inputs differ: only in first {only_a:?}, only in second {only_b:?}")]
    InterfaceMismatch {
        only_a: Vec<String>,
        only_b: Vec<String>,
    },
}

/// Value of every wire of a netlist under one input assignment, in wire
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireValuation {
    wires: Vec<(String, bool)>,
}

impl WireValuation {
    pub fn get(&self, wire: &str) -> Option<bool> {
        self.wires.iter().find(|(w, _)| w == wire).map(|&(_, b)| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.wires.iter().map(|(w, b)| (w.as_str(), *b))
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }
}

impl AttributeValues for WireValuation {
    fn value_of(&self, attribute: &str) -> Option<Value> {
        self.get(attribute).map(Value::from)
    }
}

/// Evaluates every wire for an assignment naming each primary input exactly once.
pub fn simulate(
    net: &Netlist,
    assignment: &BTreeMap<String, bool>,
) -> Result<WireValuation, CircuitError> {
    if let Some(extra) = assignment.keys().find(|k| !net.inputs().contains(k)) {
        return Err(CircuitError::Assignment(format!(
            "`{extra}` is not a primary input"
        )));
    }
    let bits = net
        .inputs()
        .iter()
        .map(|i| {
            assignment
                .get(i)
                .copied()
                .ok_or_else(|| CircuitError::Assignment(format!("no value for input `{i}`")))
        })
        .collect::<Result<Vec<bool>, _>>()?;
    Ok(simulate_bits(net, &bits))
}

/// [`simulate`] with input bits given in declaration order.
pub fn simulate_bits(net: &Netlist, bits: &[bool]) -> WireValuation {
    assert_eq!(bits.len(), net.inputs().len(), "one bit per primary input");
    let values = net.eval_wires(|i| bits[i]);
    WireValuation {
        wires: net.wires().map(str::to_string).zip(values).collect(),
    }
}

pub fn build_decision_table(net: &Netlist) -> Result<DecisionTable, CircuitError> {
    build_decision_table_with_cap(net, DEFAULT_MAX_INPUTS)
}

/// Simulates every primary-input combination in binary counting order (first
/// input most significant). Condition attributes are all wires except the
/// output, in declaration order; the decision is the output wire.
pub fn build_decision_table_with_cap(
    net: &Netlist,
    max_inputs: usize,
) -> Result<DecisionTable, CircuitError> {
    let n = net.inputs().len();
    if n == 0 {
        return Err(CircuitError::NoInputs);
    }
    if n > max_inputs.min(63) {
        return Err(CircuitError::Capacity {
            inputs: n,
            cap: max_inputs.min(63),
        });
    }
    let out = net.output_index();
    let rows: Vec<(Vec<Value>, Value)> = (0..1u64 << n)
        .into_par_iter()
        .map(|index| {
            let values = net.eval_wires(|i| index >> (n - 1 - i) & 1 == 1);
            let conditions = values
                .iter()
                .enumerate()
                .filter(|&(w, _)| w != out)
                .map(|(_, &b)| Value::from(b))
                .collect();
            (conditions, Value::from(values[out]))
        })
        .collect();
    let names = net
        .wires()
        .filter(|&w| w != net.output())
        .map(str::to_string)
        .collect();
    Ok(DecisionTable::new(names, net.output(), rows).expect("wire names are unique"))
}
