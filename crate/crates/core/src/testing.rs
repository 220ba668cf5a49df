//! Fixtures and brute-force oracles for tests.
//!
//! The oracles here share no code with the partition, discernibility or
//! enumeration paths they are used to check: positive regions are computed by
//! comparing every pair of objects, and minimality by visiting every subset.

use crate::circuit::{parse_netlist, Netlist};
use crate::decision_table::{parse_decision_table, DecisionTable};

pub const TABLE1_CSV: &str = include_str!("../../../fixtures/table1.csv");
pub const F1_NET: &str = include_str!("../../../fixtures/f1.net");

/// The 15-object, 12-wire case-study table.
pub fn table1() -> DecisionTable {
    parse_decision_table(TABLE1_CSV).expect("fixture parses")
}

/// The three-input fixture netlist.
pub fn f1() -> Netlist {
    parse_netlist(F1_NET).expect("fixture parses")
}

fn agree_on(table: &DecisionTable, mask: u64, x: usize, y: usize) -> bool {
    (0..table.num_attributes())
        .filter(|i| mask >> i & 1 == 1)
        .all(|i| table.value(x, i) == table.value(y, i))
}

/// Objects whose indiscernibility class under `mask` is decision-pure,
/// found by comparing every pair of objects.
pub fn oracle_positive_region(table: &DecisionTable, mask: u64) -> Vec<usize> {
    let n = table.num_objects();
    (0..n)
        .filter(|&x| {
            (0..n).all(|y| table.decision(x) == table.decision(y) || !agree_on(table, mask, x, y))
        })
        .collect()
}

/// Size of the positive region for every attribute subset, indexed by mask.
pub fn oracle_positive_sizes(table: &DecisionTable) -> Vec<usize> {
    let m = table.num_attributes();
    assert!(m <= 20, "oracle is exhaustive over 2^m subsets");
    (0..1u64 << m)
        .map(|mask| oracle_positive_region(table, mask).len())
        .collect()
}

/// All decision-relative reducts as attribute masks: every subset whose
/// positive region matches the full attribute set and none of whose proper
/// subsets does. Sorted by size, then lexicographically by attribute index.
pub fn oracle_reducts(table: &DecisionTable) -> Vec<u64> {
    let m = table.num_attributes();
    let sizes = oracle_positive_sizes(table);
    let full = sizes[(1usize << m) - 1];
    let preserves = |mask: u64| sizes[mask as usize] == full;
    let mut out: Vec<u64> = (0..1u64 << m)
        .filter(|&mask| preserves(mask))
        .filter(|&mask| {
            // every proper submask
            let mut sub = mask.wrapping_sub(1) & mask;
            loop {
                if sub != mask && preserves(sub) {
                    return false;
                }
                if sub == 0 {
                    return true;
                }
                sub = (sub - 1) & mask;
            }
        })
        .collect();
    out.sort_by_key(|&mask| (mask.count_ones(), mask_indices(mask)));
    out
}

pub fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Intersection of all oracle reducts (all attributes when there are none).
pub fn oracle_core(table: &DecisionTable) -> u64 {
    let all = if table.num_attributes() == 64 {
        u64::MAX
    } else {
        (1u64 << table.num_attributes()) - 1
    };
    oracle_reducts(table)
        .into_iter()
        .fold(all, |acc, r| acc & r)
}

/// Builds a random acyclic netlist. `pick(n)` must return a value in `0..n`.
///
/// Gates draw their inputs from wires declared before them, so the result is
/// acyclic by construction; the output is the last gate.
pub fn random_netlist(
    pick: &mut impl FnMut(usize) -> usize,
    max_inputs: usize,
    max_gates: usize,
) -> Netlist {
    use crate::circuit::{Gate, GateKind};

    let n_inputs = 1 + pick(max_inputs);
    let n_gates = 1 + pick(max_gates);
    let inputs: Vec<String> = (0..n_inputs).map(|i| format!("i{i}")).collect();
    let mut wires = inputs.clone();
    let mut gates = Vec::new();
    for g in 0..n_gates {
        let kind = GateKind::ALL[pick(GateKind::ALL.len())];
        let arity = if kind == GateKind::Not {
            1
        } else {
            2 + pick(2)
        };
        // favour recent wires so that gates chain instead of all hanging off inputs
        let ins: Vec<String> = (0..arity)
            .map(|_| {
                let w = wires.len();
                let i = if pick(2) == 0 {
                    w - 1 - pick(w.min(3))
                } else {
                    pick(w)
                };
                wires[i].clone()
            })
            .collect();
        let out = format!("g{g}");
        gates.push(Gate::new(out.clone(), kind, ins));
        wires.push(out);
    }
    let output = wires.last().expect("at least one gate").clone();
    Netlist::new(inputs, gates, output).expect("generated netlist is valid")
}
