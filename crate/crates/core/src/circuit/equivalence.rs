use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{CircuitError, Netlist, DEFAULT_MAX_INPUTS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// First assignment, in binary counting order over the first netlist's
    /// input order, on which the outputs differ.
    Counterexample(Vec<(String, bool)>),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

pub fn check_equivalence(a: &Netlist, b: &Netlist) -> Result<Equivalence, CircuitError> {
    check_equivalence_with_cap(a, b, DEFAULT_MAX_INPUTS)
}

/// Compares the outputs of `a` and `b` on every primary input assignment.
///
/// The assignment space is searched in parallel; the reported counterexample
/// is always the first one in counting order.
pub fn check_equivalence_with_cap(
    a: &Netlist,
    b: &Netlist,
    max_inputs: usize,
) -> Result<Equivalence, CircuitError> {
    let names_a: BTreeSet<&String> = a.inputs().iter().collect();
    let names_b: BTreeSet<&String> = b.inputs().iter().collect();
    if names_a != names_b {
        return Err(CircuitError::InterfaceMismatch {
            only_a: names_a
                .difference(&names_b)
                .map(|s| s.to_string())
                .collect(),
            only_b: names_b
                .difference(&names_a)
                .map(|s| s.to_string())
                .collect(),
        });
    }
    let n = a.inputs().len();
    let cap = max_inputs.min(63);
    if n > cap {
        return Err(CircuitError::Capacity { inputs: n, cap });
    }
    // b's input i takes a's input perm[i]
    let perm: Vec<usize> = b
        .inputs()
        .iter()
        .map(|name| {
            a.inputs()
                .iter()
                .position(|x| x == name)
                .expect("same input set")
        })
        .collect();
    let (out_a, out_b) = (a.output_index(), b.output_index());
    let first = (0..1u64 << n).into_par_iter().find_first(|&index| {
        let bit = |i: usize| index >> (n - 1 - i) & 1 == 1;
        let va = a.eval_wires(bit)[out_a];
        let vb = b.eval_wires(|i| bit(perm[i]))[out_b];
        va != vb
    });
    Ok(match first {
        None => Equivalence::Equivalent,
        Some(index) => Equivalence::Counterexample(
            a.inputs()
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), index >> (n - 1 - i) & 1 == 1))
                .collect(),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_netlist;
    use crate::testing::f1;

    fn net(src: &str) -> Netlist {
        parse_netlist(src).unwrap()
    }

    #[test]
    fn reflexive() {
        let nand = net("input a\ninput b\nn1 = AND(a, b)\ny = NOT(n1)\noutput y\n");
        assert_eq!(
            check_equivalence(&nand, &nand).unwrap(),
            Equivalence::Equivalent
        );
        assert!(check_equivalence(&f1(), &f1()).unwrap().is_equivalent());
    }

    #[test]
    fn first_counterexample_in_counting_order() {
        let and = net("input a\ninput b\nout = AND(a, b)\noutput out\n");
        let or = net("input a\ninput b\nout = OR(a, b)\noutput out\n");
        assert_eq!(
            check_equivalence(&and, &or).unwrap(),
            Equivalence::Counterexample(vec![("a".into(), false), ("b".into(), true)])
        );
    }

    #[test]
    fn input_order_may_differ() {
        let a = net("input a\ninput b\nout = AND(a, n)\nn = NOT(b)\noutput out\n");
        let b = net("input b\ninput a\nnb = NOT(b)\nq = AND(nb, a)\noutput q\n");
        assert!(check_equivalence(&a, &b).unwrap().is_equivalent());
        let c = net("input b\ninput a\nna = NOT(a)\nq = AND(na, b)\noutput q\n");
        // a&!b and !a&b first disagree at a=0, b=1
        assert_eq!(
            check_equivalence(&a, &c).unwrap(),
            Equivalence::Counterexample(vec![("a".into(), false), ("b".into(), true)])
        );
    }

    #[test]
    fn interface_and_cap_errors() {
        let ab = net("input a\ninput b\nout = AND(a, b)\noutput out\n");
        let ac = net("input a\ninput c\nout = AND(a, c)\noutput out\n");
        assert_eq!(
            check_equivalence(&ab, &ac),
            Err(CircuitError::InterfaceMismatch {
                only_a: vec!["b".into()],
                only_b: vec!["c".into()]
            })
        );
        assert_eq!(
            check_equivalence_with_cap(&ab, &ab, 1),
            Err(CircuitError::Capacity { inputs: 2, cap: 1 })
        );
    }
}
