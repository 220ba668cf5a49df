//! Deterministic workloads shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reduct_forge::{DecisionTable, Gate, GateKind, Netlist};

/// A random binary decision table whose decision is the parity of the first
/// three attributes, so reducts exist but are not trivial.
pub fn random_table(objects: usize, attributes: usize, seed: u64) -> DecisionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..objects)
        .map(|_| {
            let values: Vec<u32> = (0..attributes).map(|_| rng.gen_range(0..2)).collect();
            let decision = values.iter().take(3).sum::<u32>() % 2;
            (values, decision)
        })
        .collect();
    let names = (0..attributes).map(|i| format!("a{i}")).collect();
    DecisionTable::new(names, "D", rows).expect("valid table")
}

/// A balanced tree of 2-input gates over `inputs` primary inputs, cycling
/// through AND, OR and XOR.
pub fn gate_tree(inputs: usize) -> Netlist {
    let names: Vec<String> = (0..inputs).map(|i| format!("i{i}")).collect();
    let kinds = [GateKind::And, GateKind::Or, GateKind::Xor];
    let mut layer = names.clone();
    let mut gates = Vec::new();
    while layer.len() > 1 {
        let mut next = Vec::new();
        for pair in layer.chunks(2) {
            if let [a, b] = pair {
                let out = format!("g{}", gates.len());
                gates.push(Gate::new(out.clone(), kinds[gates.len() % 3], [a, b]));
                next.push(out);
            } else {
                next.push(pair[0].clone());
            }
        }
        layer = next;
    }
    let output = layer.pop().expect("at least one input");
    Netlist::new(names, gates, output).expect("valid netlist")
}
