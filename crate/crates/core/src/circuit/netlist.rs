use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::CircuitError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Not,
    Nand,
    Nor,
    Xor,
    Xnor,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::And,
        GateKind::Or,
        GateKind::Not,
        GateKind::Nand,
        GateKind::Nor,
        GateKind::Xor,
        GateKind::Xnor,
    ];

    /// Applies the gate. AND/OR/XOR and their complements are n-ary; XOR is
    /// odd parity.
    pub fn eval(self, inputs: impl IntoIterator<Item = bool>) -> bool {
        let mut inputs = inputs.into_iter();
        match self {
            GateKind::And => inputs.all(|b| b),
            GateKind::Or => inputs.any(|b| b),
            GateKind::Nand => !inputs.all(|b| b),
            GateKind::Nor => !inputs.any(|b| b),
            GateKind::Xor => inputs.fold(false, |acc, b| acc ^ b),
            GateKind::Xnor => !inputs.fold(false, |acc, b| acc ^ b),
            GateKind::Not => !inputs.next().expect("NOT has one input"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
            GateKind::Nand => "NAND",
            GateKind::Nor => "NOR",
            GateKind::Xor => "XOR",
            GateKind::Xnor => "XNOR",
        }
    }

    fn arity_ok(self, n: usize) -> bool {
        match self {
            GateKind::Not => n == 1,
            _ => n >= 2,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown gate kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub output: String,
    pub kind: GateKind,
    pub inputs: Vec<String>,
}

impl Gate {
    pub fn new<S: Into<String>>(
        output: impl Into<String>,
        kind: GateKind,
        inputs: impl IntoIterator<Item = S>,
    ) -> Self {
        Gate {
            output: output.into(),
            kind,
            inputs: inputs.into_iter().map(Into::into).collect(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {}({})",
            self.output,
            self.kind,
            self.inputs.join(", ")
        )
    }
}

/// A single-output combinational circuit over named wires.
///
/// Wires are numbered in declaration order: primary inputs first, then gate
/// outputs in gate order.
#[derive(Debug, Clone)]
pub struct Netlist {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    output: String,
    wire_index: HashMap<String, usize>,
    fanin: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl PartialEq for Netlist {
    fn eq(&self, other: &Self) -> bool {
        self.inputs == other.inputs && self.gates == other.gates && self.output == other.output
    }
}

impl Eq for Netlist {}

fn valid_wire_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '=' | '#'))
}

impl Netlist {
    pub fn new(
        inputs: Vec<String>,
        gates: Vec<Gate>,
        output: impl Into<String>,
    ) -> Result<Self, CircuitError> {
        let output = output.into();
        let mut wire_index = HashMap::new();
        let drivers = inputs.iter().chain(gates.iter().map(|g| &g.output));
        for (i, name) in drivers.enumerate() {
            if !valid_wire_name(name) {
                return Err(CircuitError::InvalidName(name.clone()));
            }
            if wire_index.insert(name.clone(), i).is_some() {
                return Err(CircuitError::DriverConflict(name.clone()));
            }
        }
        let mut fanin = Vec::with_capacity(gates.len());
        for gate in &gates {
            if !gate.kind.arity_ok(gate.inputs.len()) {
                return Err(CircuitError::Arity {
                    wire: gate.output.clone(),
                    kind: gate.kind,
                    found: gate.inputs.len(),
                });
            }
            let ids = gate
                .inputs
                .iter()
                .map(|w| {
                    wire_index
                        .get(w)
                        .copied()
                        .ok_or_else(|| CircuitError::Dangling(w.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            fanin.push(ids);
        }
        if !wire_index.contains_key(&output) {
            return Err(CircuitError::Dangling(output));
        }
        let order = topological_order(&inputs, &gates, &fanin)?;
        Ok(Netlist {
            inputs,
            gates,
            output,
            wire_index,
            fanin,
            order,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> &str {
        &self.output
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn wire_count(&self) -> usize {
        self.inputs.len() + self.gates.len()
    }

    /// Wire names in declaration order.
    pub fn wires(&self) -> impl Iterator<Item = &str> {
        self.inputs
            .iter()
            .chain(self.gates.iter().map(|g| &g.output))
            .map(String::as_str)
    }

    pub fn wire_index(&self, name: &str) -> Option<usize> {
        self.wire_index.get(name).copied()
    }

    pub fn has_wire(&self, name: &str) -> bool {
        self.wire_index.contains_key(name)
    }

    pub(crate) fn output_index(&self) -> usize {
        self.wire_index[&self.output]
    }

    /// Index of the gate driving wire `w`, if `w` is not a primary input.
    pub(crate) fn driver(&self, wire: usize) -> Option<usize> {
        wire.checked_sub(self.inputs.len())
    }

    pub(crate) fn fanin(&self, gate: usize) -> &[usize] {
        &self.fanin[gate]
    }

    /// Values of every wire, given primary input bits in declaration order.
    pub(crate) fn eval_wires(&self, input_bits: impl Fn(usize) -> bool) -> Vec<bool> {
        let n = self.inputs.len();
        let mut values = vec![false; self.wire_count()];
        for (i, v) in values.iter_mut().take(n).enumerate() {
            *v = input_bits(i);
        }
        for &g in &self.order {
            let bit = self.gates[g]
                .kind
                .eval(self.fanin[g].iter().map(|&w| values[w]));
            values[n + g] = bit;
        }
        values
    }
}

/// Gate indices ordered so that every gate follows the gates driving it.
fn topological_order(
    inputs: &[String],
    gates: &[Gate],
    fanin: &[Vec<usize>],
) -> Result<Vec<usize>, CircuitError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n_in = inputs.len();
    let mut mark = vec![Mark::New; gates.len()];
    let mut order = Vec::with_capacity(gates.len());
    for root in 0..gates.len() {
        if mark[root] != Mark::New {
            continue;
        }
        // (gate, next fan-in position to visit)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(top) = stack.last_mut() {
            let (g, pos) = *top;
            let Some(&w) = fanin[g].get(pos) else {
                mark[g] = Mark::Done;
                order.push(g);
                stack.pop();
                continue;
            };
            top.1 += 1;
            let Some(d) = w.checked_sub(n_in) else {
                continue;
            };
            match mark[d] {
                Mark::Done => {}
                Mark::New => {
                    mark[d] = Mark::Active;
                    stack.push((d, 0));
                }
                Mark::Active => {
                    let start = stack.iter().position(|&(s, _)| s == d).expect("on stack");
                    let mut cycle: Vec<String> = stack[start..]
                        .iter()
                        .map(|&(s, _)| gates[s].output.clone())
                        .collect();
                    cycle.push(gates[d].output.clone());
                    return Err(CircuitError::Cycle(cycle));
                }
            }
        }
    }
    Ok(order)
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for input in &self.inputs {
            writeln!(f, "input {input}")?;
        }
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        writeln!(f, "output {}", self.output)
    }
}

impl FromStr for Netlist {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_netlist(s)
    }
}

/// Parses the line-oriented netlist format:
///
/// ```text
/// input a
/// input b
/// n1 = AND(a, b)   # comment
/// y = NOT(n1)
/// output y
/// ```
pub fn parse_netlist(source: &str) -> Result<Netlist, CircuitError> {
    let mut inputs = Vec::new();
    let mut gates = Vec::new();
    let mut output: Option<String> = None;
    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| CircuitError::Syntax {
            line: line_no,
            message,
        };
        if let Some((lhs, rhs)) = line.split_once('=') {
            let name = lhs.trim();
            let rhs = rhs.trim();
            let (kind, args) = rhs
                .split_once('(')
                .ok_or_else(|| syntax(format!("expected `KIND(...)`, found `{rhs}`")))?;
            let args = args
                .strip_suffix(')')
                .ok_or_else(|| syntax("missing closing `)`".to_string()))?;
            let kind: GateKind = kind.trim().parse().map_err(syntax)?;
            let args: Vec<String> = if args.trim().is_empty() {
                Vec::new()
            } else {
                args.split(',').map(|a| a.trim().to_string()).collect()
            };
            if let Some(bad) = args.iter().find(|a| !valid_wire_name(a)) {
                return Err(syntax(format!("bad wire name `{bad}`")));
            }
            if !valid_wire_name(name) {
                return Err(syntax(format!("bad wire name `{name}`")));
            }
            gates.push(Gate::new(name, kind, args));
            continue;
        }
        let mut words = line.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("input"), Some(name), None) => inputs.push(name.to_string()),
            (Some("output"), Some(name), None) => {
                if output.replace(name.to_string()).is_some() {
                    return Err(syntax("more than one `output` declaration".to_string()));
                }
            }
            _ => return Err(syntax(format!("unrecognized declaration `{line}`"))),
        }
    }
    let output = output.ok_or(CircuitError::MissingOutput)?;
    Netlist::new(inputs, gates, output)
}
