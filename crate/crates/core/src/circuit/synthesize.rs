//! Turning decision rules back into logic.

use std::collections::HashSet;

use super::{CircuitError, Gate, GateKind, Netlist};
use crate::rules::DecisionRule;

fn fresh_name(base: &str, taken: &mut HashSet<String>) -> String {
    let mut name = base.to_string();
    let mut k = 1;
    while taken.contains(&name) {
        name = format!("{base}_{k}");
        k += 1;
    }
    taken.insert(name.clone());
    name
}

fn check_binary(rule: &DecisionRule) -> Result<(), CircuitError> {
    match rule.descriptors().iter().find(|d| d.value > 1) {
        Some(d) => Err(CircuitError::NonBinary {
            attribute: d.attribute.clone(),
            value: d.value,
        }),
        None => Ok(()),
    }
}

/// Netlist computing the rule's match predicate over its attributes.
///
/// Each `w=0` descriptor becomes `n_w = NOT(w)` and all literals feed one
/// n-ary AND named `out`. A single literal needs no AND; a single positive
/// literal is passed straight through.
pub fn synthesize_from_rule(rule: &DecisionRule) -> Result<Netlist, CircuitError> {
    check_binary(rule)?;
    if rule.descriptors().is_empty() {
        return Err(CircuitError::EmptyRule);
    }
    let inputs: Vec<String> = rule.attributes().map(str::to_string).collect();
    let mut taken: HashSet<String> = inputs.iter().cloned().collect();
    let mut gates = Vec::new();
    let mut literals = Vec::new();
    for d in rule.descriptors() {
        if d.value == 1 {
            literals.push(d.attribute.clone());
        } else {
            let n = fresh_name(&format!("n_{}", d.attribute), &mut taken);
            gates.push(Gate::new(n.clone(), GateKind::Not, [d.attribute.as_str()]));
            literals.push(n);
        }
    }
    let output = if literals.len() == 1 {
        literals.pop().expect("one literal")
    } else {
        let out = fresh_name("out", &mut taken);
        gates.push(Gate::new(out.clone(), GateKind::And, literals));
        out
    };
    Netlist::new(inputs, gates, output)
}

/// Replaces the logic downstream of a rule's wires with a small combiner.
///
/// The result keeps every primary input, the transitive fan-in cones of the
/// rule's attribute wires verbatim, and a combiner driving the output: the
/// rule's match predicate when its decision is 1, its complement when the
/// decision is 0. The combiner uses at most two gates: negative literals are
/// grouped under one NOR (or a NOT when alone), the inversion is folded into
/// NAND/OR, and a negative literal on a wire driven by `NOT(x)` reads `x`
/// instead. A rule without descriptors yields a constant built from one
/// XOR/XNOR gate.
///
/// If that construction would have more gates than `net`, `net` is returned
/// unchanged, so the gate count never grows.
///
/// The result is equivalent to `net` when the rule was induced from
/// [`build_decision_table`](super::build_decision_table)`(net)` with certainty
/// and coverage 1.
pub fn minimize_netlist(net: &Netlist, rule: &DecisionRule) -> Result<Netlist, CircuitError> {
    check_binary(rule)?;
    if rule.decision() > 1 {
        return Err(CircuitError::NonBinary {
            attribute: net.output().to_string(),
            value: rule.decision(),
        });
    }
    let attr_wires = rule
        .attributes()
        .map(|a| {
            net.wire_index(a)
                .ok_or_else(|| CircuitError::UnknownWire(a.to_string()))
        })
        .collect::<Result<Vec<usize>, _>>()?;

    let mut in_cone = vec![false; net.gate_count()];
    let mut stack: Vec<usize> = attr_wires.iter().filter_map(|&w| net.driver(w)).collect();
    while let Some(g) = stack.pop() {
        if std::mem::replace(&mut in_cone[g], true) {
            continue;
        }
        stack.extend(net.fanin(g).iter().filter_map(|&w| net.driver(w)));
    }
    let mut gates: Vec<Gate> = net
        .gates()
        .iter()
        .zip(&in_cone)
        .filter(|(_, &keep)| keep)
        .map(|(g, _)| g.clone())
        .collect();

    let mut taken: HashSet<String> = net.inputs().iter().cloned().collect();
    taken.extend(gates.iter().map(|g| g.output.clone()));

    // A kept NOT gate yields the complement of its input for free.
    let inverse_of = |wire: &str| -> Option<String> {
        gates.iter().find_map(|g| {
            (g.kind == GateKind::Not && g.inputs[0] == wire)
                .then(|| g.output.clone())
                .or_else(|| {
                    (g.kind == GateKind::Not && g.output == wire).then(|| g.inputs[0].clone())
                })
        })
    };
    let mut positive: Vec<String> = Vec::new();
    let mut negative: Vec<String> = Vec::new();
    for d in rule.descriptors() {
        let wire = d.attribute.clone();
        match (d.value, inverse_of(&wire)) {
            (1, _) => positive.push(wire),
            (_, Some(inv)) => positive.push(inv),
            (_, None) => negative.push(wire),
        }
    }
    positive.dedup();
    let invert = rule.decision() == 0;

    let out_name = |taken: &mut HashSet<String>| fresh_name(net.output(), taken);
    let output = match (positive.len(), negative.len()) {
        (0, 0) => {
            let probe = net.inputs()[0].clone();
            let kind = if invert {
                GateKind::Xor
            } else {
                GateKind::Xnor
            };
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), kind, [probe.clone(), probe]));
            out
        }
        (1, 0) if !invert => positive.pop().expect("one literal"),
        (0, 1) if invert => negative.pop().expect("one literal"),
        (1, 0) => {
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), GateKind::Not, positive));
            out
        }
        (0, 1) => {
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), GateKind::Not, negative));
            out
        }
        (_, 0) => {
            let kind = if invert {
                GateKind::Nand
            } else {
                GateKind::And
            };
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), kind, positive));
            out
        }
        (0, _) => {
            let kind = if invert { GateKind::Or } else { GateKind::Nor };
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), kind, negative));
            out
        }
        (_, _) => {
            let group = if negative.len() == 1 {
                let n = fresh_name(&format!("n_{}", negative[0]), &mut taken);
                gates.push(Gate::new(n.clone(), GateKind::Not, negative));
                n
            } else {
                let n = fresh_name("nor_lits", &mut taken);
                gates.push(Gate::new(n.clone(), GateKind::Nor, negative));
                n
            };
            positive.push(group);
            let kind = if invert {
                GateKind::Nand
            } else {
                GateKind::And
            };
            let out = out_name(&mut taken);
            gates.push(Gate::new(out.clone(), kind, positive));
            out
        }
    };
    if gates.len() > net.gate_count() {
        return Ok(net.clone());
    }
    Netlist::new(net.inputs().to_vec(), gates, output)
}
