use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use reduct_forge::{
    approximate, build_decision_table, check_equivalence, filter_full_coverage_reducts,
    induce_rules_for, is_reduct, minimize_netlist, parse_decision_table, parse_netlist,
    quality_of_classification, rule_metrics, simulate, AttrSet, DecisionRule, DecisionTable,
    Equivalence, Netlist, Ratio, ReductSearch,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::{Cli, Command, Format};
use crate::report::{
    Analysis, ClassApproximation, FullCoverage, InputDigest, Minimization, Rational, Reducts,
    RenderText, Report, RuleRow, Rules, Simulation, TruthTable, Verdict, WireBit, SCHEMA_VERSION,
};
use crate::CliError;

pub struct Outcome {
    pub body: String,
    pub status: i32,
}

struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let display = path.display().to_string();
        let bytes = fs::read(path).map_err(|e| CliError::Io {
            path: display.clone(),
            message: e.to_string(),
        })?;
        self.0.push(InputDigest {
            path: display.clone(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).map_err(|_| CliError::Io {
            path: display,
            message: "not valid UTF-8".into(),
        })
    }

    fn table(&mut self, path: &Path) -> Result<DecisionTable, CliError> {
        let text = self.read(path)?;
        parse_decision_table(&text)
            .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
    }

    fn net(&mut self, path: &Path) -> Result<Netlist, CliError> {
        let text = self.read(path)?;
        parse_netlist(&text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
    }
}

fn render<P: Serialize + RenderText>(
    format: Format,
    command: String,
    inputs: Inputs,
    result: P,
) -> String {
    let report = Report {
        schema: SCHEMA_VERSION,
        format: match format {
            Format::Text => "text",
            Format::Json => "json",
        },
        command,
        inputs: inputs.0,
        result,
    };
    match format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn names(table: &DecisionTable, attrs: &AttrSet) -> Vec<String> {
    attrs.names(table).into_iter().map(str::to_string).collect()
}

fn one() -> Ratio {
    Ratio::from_integer(1)
}

pub fn execute(cli: &Cli, echo: String) -> Result<Outcome, CliError> {
    let mut inputs = Inputs(Vec::new());
    let ok = |body| Ok(Outcome { body, status: 0 });
    match &cli.command {
        Command::Analyze { table, attrs } => {
            let table = inputs.table(table)?;
            let attrs = match attrs {
                Some(list) => table.attrs(list).map_err(CliError::domain)?,
                None => table.all_attrs(),
            };
            let classes = table
                .decision_classes()
                .into_iter()
                .map(|(class, members)| {
                    let r = approximate(&table, &attrs, &members).map_err(CliError::domain)?;
                    Ok(ClassApproximation {
                        class,
                        objects: members.len(),
                        lower: r.lower.len(),
                        upper: r.upper.len(),
                        boundary: r.boundary.len(),
                        accuracy: r.accuracy.map(Rational::from),
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let quality = quality_of_classification(&table, &attrs).map_err(CliError::domain)?;
            let result = Analysis {
                objects: table.num_objects(),
                decision: table.decision_name().to_string(),
                attributes: names(&table, &attrs),
                classes,
                quality: quality.into(),
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Reducts {
            table,
            full_coverage,
            core,
        } => {
            let table = inputs.table(table)?;
            let search = ReductSearch::default();
            let all = search.all_reducts(&table).map_err(CliError::domain)?;
            let total = all.len();
            let (selected, full_coverage) = match full_coverage {
                Some(class) => {
                    let kept = filter_full_coverage_reducts(&table, &all, *class)
                        .map_err(CliError::domain)?;
                    let summary = FullCoverage {
                        class: *class,
                        kept: kept.len(),
                    };
                    (kept, Some(summary))
                }
                None => (all.clone(), None),
            };
            let core = core.then(|| {
                let c = all
                    .iter()
                    .map(|r| r.attributes().clone())
                    .reduce(|acc, r| acc.intersection(&r))
                    .unwrap_or_default();
                names(&table, &c)
            });
            let result = Reducts {
                total,
                full_coverage,
                reducts: selected
                    .iter()
                    .map(|r| names(&table, r.attributes()))
                    .collect(),
                core,
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Rules {
            table,
            attrs,
            class,
        } => {
            let table = inputs.table(table)?;
            let attrs = table.attrs(attrs).map_err(CliError::domain)?;
            let reduct = is_reduct(&table, &attrs).map_err(CliError::domain)?;
            let rules = induce_rules_for(&table, &attrs, *class).map_err(CliError::domain)?;
            let rows = rules
                .iter()
                .map(|r| RuleRow {
                    rule: r.rule.display_with(table.decision_name()).to_string(),
                    spec: r.rule.to_string(),
                    support: r.metrics.support,
                    match_count: r.metrics.match_count,
                    certainty: r.metrics.certainty().map(Rational::from),
                    coverage: r.metrics.coverage().map(Rational::from),
                    strength: r.metrics.strength().into(),
                })
                .collect();
            let result = Rules {
                attributes: names(&table, &attrs),
                is_reduct: reduct,
                class: *class,
                rules: rows,
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Simulate { net, assign } => {
            let net = inputs.net(net)?;
            let assignment = parse_assignment(&net, assign)?;
            let valuation = simulate(&net, &assignment).map_err(CliError::domain)?;
            let result = Simulation {
                output: net.output().to_string(),
                output_value: u8::from(valuation.get(net.output()).expect("output is a wire")),
                wires: valuation
                    .iter()
                    .map(|(w, b)| WireBit {
                        wire: w.to_string(),
                        value: u8::from(b),
                    })
                    .collect(),
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Table { net } => {
            let net = inputs.net(net)?;
            let table = build_decision_table(&net).map_err(CliError::domain)?;
            let result = TruthTable {
                rows: table.num_objects(),
                attributes: table.attribute_names().to_vec(),
                decision: table.decision_name().to_string(),
                csv: table.to_csv(),
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Minimize { net, rule, emit } => {
            let rule: DecisionRule = rule.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let net = inputs.net(net)?;
            let table = build_decision_table(&net).map_err(CliError::domain)?;
            let metrics = rule_metrics(&table, &rule).map_err(CliError::domain)?;
            if metrics.certainty() != Some(one()) || metrics.coverage() != Some(one()) {
                return Err(CliError::Domain(format!(
                    "rule {rule} is not a certainty-1, full-coverage rule of {} (support={} match_count={} class_size={})",
                    net.output(),
                    metrics.support,
                    metrics.match_count,
                    metrics.class_size
                )));
            }
            let minimized = minimize_netlist(&net, &rule).map_err(CliError::domain)?;
            let verdict = check_equivalence(&net, &minimized).map_err(CliError::domain)?;
            let text = minimized.to_string();
            if let Some(path) = emit {
                fs::write(path, &text).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            let result = Minimization {
                rule: rule.display_with(net.output()).to_string(),
                support: metrics.support,
                certainty: metrics.certainty().map(Rational::from),
                coverage: metrics.coverage().map(Rational::from),
                gates_before: net.gate_count(),
                gates_after: minimized.gate_count(),
                verification: verdict_of(verdict),
                netlist: text,
            };
            ok(render(cli.format, echo, inputs, result))
        }
        Command::Verify { net_a, net_b } => {
            let a = inputs.net(net_a)?;
            let b = inputs.net(net_b)?;
            let verdict = verdict_of(check_equivalence(&a, &b).map_err(CliError::domain)?);
            let status = if verdict.equivalent { 0 } else { 3 };
            Ok(Outcome {
                body: render(cli.format, echo, inputs, verdict),
                status,
            })
        }
    }
}

fn verdict_of(e: Equivalence) -> Verdict {
    match e {
        Equivalence::Equivalent => Verdict {
            equivalent: true,
            counterexample: None,
        },
        Equivalence::Counterexample(bits) => Verdict {
            equivalent: false,
            counterexample: Some(
                bits.into_iter()
                    .map(|(wire, b)| WireBit {
                        wire,
                        value: u8::from(b),
                    })
                    .collect(),
            ),
        },
    }
}

fn parse_bit(s: &str) -> Result<bool, CliError> {
    match s.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(CliError::Usage(format!("`{other}` is not a bit"))),
    }
}

/// `010` (bits in input declaration order) or `a=0,b=1,c=0`.
fn parse_assignment(net: &Netlist, spec: &str) -> Result<BTreeMap<String, bool>, CliError> {
    if spec.contains('=') {
        let mut out = BTreeMap::new();
        for pair in spec.split(',') {
            let (name, bit) = pair
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("`{pair}` is not name=bit")))?;
            if out
                .insert(name.trim().to_string(), parse_bit(bit)?)
                .is_some()
            {
                return Err(CliError::Usage(format!(
                    "input `{}` assigned twice",
                    name.trim()
                )));
            }
        }
        return Ok(out);
    }
    let bits = spec
        .chars()
        .map(|c| parse_bit(&c.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if bits.len() != net.inputs().len() {
        return Err(CliError::Domain(format!(
            "assignment has {} bits, netlist has {} inputs",
            bits.len(),
            net.inputs().len()
        )));
    }
    Ok(net.inputs().iter().cloned().zip(bits).collect())
}
