//! Rough-set knowledge reduction applied to combinational circuit minimization.
//!
//! The pipeline runs in four stages:
//!
//! * [`decision_table`]: information systems with one decision attribute, read
//!   from a small integer-only CSV dialect.
//! * [`rough`]: indiscernibility partitions, lower/upper approximations and the
//!   accuracy and quality measures, kept as exact rationals.
//! * [`reduction`] and [`rules`]: decision-relative reducts, the core, and the
//!   decision rules a reduct induces.
//! * [`circuit`]: netlists are simulated exhaustively into decision tables, a
//!   rule over a reduct's wires is turned back into logic, and the result is
//!   checked against the original circuit over every input assignment.
//!
//! ```
//! use reduct_forge::{all_reducts, parse_decision_table};
//!
//! let table = parse_decision_table("a,b,c,D\n0,0,1,0\n0,1,1,1\n1,0,0,1\n1,1,0,1\n").unwrap();
//! let reducts = all_reducts(&table).unwrap();
//! assert_eq!(reducts.len(), 2);
//! assert_eq!(reducts[0].names(&table), vec!["a", "b"]);
//! ```

pub mod circuit;
pub mod decision_table;
pub mod ratio;
pub mod reduction;
pub mod rough;
pub mod rules;

#[cfg(any(test, feature = "testing"))]
pub mod testing;

pub use circuit::{
    build_decision_table, build_decision_table_with_cap, check_equivalence,
    check_equivalence_with_cap, minimize_netlist, parse_netlist, simulate, simulate_bits,
    synthesize_from_rule, CircuitError, Equivalence, Gate, GateKind, Netlist, WireValuation,
};
pub use decision_table::{
    parse_decision_table, AttrSet, DecisionTable, ObjectSet, TableError, Value,
};
pub use ratio::Ratio;
pub use reduction::{
    all_reducts, core, discernibility_matrix, filter_full_coverage_reducts, is_reduct,
    DiscernibilityMatrix, Reduct, ReductSearch, ReductionError,
};
pub use rough::{
    accuracy_of_approximation, approximate, ind_partition, lower_approximation, positive_region,
    quality_of_classification, upper_approximation, ApproximationReport, Partition, RoughError,
};
pub use rules::{
    classify, induce_rules, induce_rules_for, rule_metrics, AttributeValues, DecisionRule,
    Descriptor, InducedRule, RuleError, RuleMetrics, TableRow,
};
