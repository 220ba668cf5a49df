//! Report envelope and the payloads of each subcommand.
//!
//! Every payload renders to both JSON and text from the same struct, so both
//! formats carry the same facts.

use std::fmt::Write as _;

use reduct_forge::ratio::format_fixed;
use reduct_forge::Ratio;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Report<P> {
    pub schema: u32,
    pub format: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: P,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// An exact rational with its two-decimal rendering.
#[derive(Debug, Clone, Serialize)]
pub struct Rational {
    pub exact: String,
    pub rounded: String,
}

impl From<Ratio> for Rational {
    fn from(r: Ratio) -> Self {
        Rational {
            exact: r.to_string(),
            rounded: format_fixed(&r, 2),
        }
    }
}

fn rounded(r: &Option<Rational>) -> &str {
    r.as_ref().map_or("undefined", |r| r.rounded.as_str())
}

fn braced(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

pub trait RenderText {
    fn render_text(&self, out: &mut String);

    /// Text output without the command and input header lines.
    fn bare(&self) -> bool {
        false
    }
}

impl<P: RenderText> Report<P> {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.result.bare() {
            self.result.render_text(&mut out);
            return out;
        }
        writeln!(out, "format: {}", self.format).unwrap();
        writeln!(out, "command: {}", self.command).unwrap();
        for input in &self.inputs {
            writeln!(out, "input: {} sha256={}", input.path, input.sha256).unwrap();
        }
        self.result.render_text(&mut out);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ClassApproximation {
    pub class: u32,
    pub objects: usize,
    pub lower: usize,
    pub upper: usize,
    pub boundary: usize,
    pub accuracy: Option<Rational>,
}

#[derive(Debug, Serialize)]
pub struct Analysis {
    pub objects: usize,
    pub decision: String,
    pub attributes: Vec<String>,
    pub classes: Vec<ClassApproximation>,
    pub quality: Rational,
}

impl RenderText for Analysis {
    fn render_text(&self, out: &mut String) {
        writeln!(out, "objects: {}", self.objects).unwrap();
        writeln!(out, "decision: {}", self.decision).unwrap();
        writeln!(out, "attributes: {}", braced(&self.attributes)).unwrap();
        writeln!(out, "class objects lower upper boundary accuracy").unwrap();
        for c in &self.classes {
            writeln!(
                out,
                "{} {} {} {} {} {}",
                c.class,
                c.objects,
                c.lower,
                c.upper,
                c.boundary,
                rounded(&c.accuracy)
            )
            .unwrap();
        }
        writeln!(out, "quality: {}", self.quality.rounded).unwrap();
    }
}

#[derive(Debug, Serialize)]
pub struct FullCoverage {
    pub class: u32,
    pub kept: usize,
}

#[derive(Debug, Serialize)]
pub struct Reducts {
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_coverage: Option<FullCoverage>,
    pub reducts: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<Vec<String>>,
}

impl RenderText for Reducts {
    fn render_text(&self, out: &mut String) {
        writeln!(out, "reducts: {}", self.total).unwrap();
        if let Some(f) = &self.full_coverage {
            writeln!(out, "full-coverage class {}: {}", f.class, f.kept).unwrap();
        }
        for r in &self.reducts {
            writeln!(out, "{}", braced(r)).unwrap();
        }
        if let Some(core) = &self.core {
            writeln!(out, "core: {}", braced(core)).unwrap();
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RuleRow {
    pub rule: String,
    pub spec: String,
    pub support: usize,
    pub match_count: usize,
    pub certainty: Option<Rational>,
    pub coverage: Option<Rational>,
    pub strength: Rational,
}

#[derive(Debug, Serialize)]
pub struct Rules {
    pub attributes: Vec<String>,
    pub is_reduct: bool,
    pub class: u32,
    pub rules: Vec<RuleRow>,
}

impl RenderText for Rules {
    fn render_text(&self, out: &mut String) {
        writeln!(out, "attributes: {}", braced(&self.attributes)).unwrap();
        writeln!(out, "is_reduct: {}", self.is_reduct).unwrap();
        writeln!(out, "class: {}", self.class).unwrap();
        writeln!(out, "rules: {}", self.rules.len()).unwrap();
        for r in &self.rules {
            writeln!(
                out,
                "{} [support={} certainty={} coverage={} strength={}]",
                r.rule,
                r.support,
                rounded(&r.certainty),
                rounded(&r.coverage),
                r.strength.rounded
            )
            .unwrap();
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WireBit {
    pub wire: String,
    pub value: u8,
}

#[derive(Debug, Serialize)]
pub struct Simulation {
    pub output: String,
    pub output_value: u8,
    pub wires: Vec<WireBit>,
}

impl RenderText for Simulation {
    fn render_text(&self, out: &mut String) {
        for w in &self.wires {
            writeln!(out, "{}={}", w.wire, w.value).unwrap();
        }
        writeln!(out, "output: {}={}", self.output, self.output_value).unwrap();
    }
}

#[derive(Debug, Serialize)]
pub struct TruthTable {
    pub rows: usize,
    pub attributes: Vec<String>,
    pub decision: String,
    pub csv: String,
}

/// Text form of `table` is the bare CSV, so it can be fed back to `--table`.
impl RenderText for TruthTable {
    fn render_text(&self, out: &mut String) {
        out.push_str(&self.csv);
    }

    fn bare(&self) -> bool {
        true
    }
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<WireBit>>,
}

impl Verdict {
    fn line(&self) -> String {
        match &self.counterexample {
            None => "equivalent".to_string(),
            Some(cex) => {
                let bits: Vec<String> = cex
                    .iter()
                    .map(|b| format!("{}={}", b.wire, b.value))
                    .collect();
                format!("counterexample {}", bits.join(" "))
            }
        }
    }
}

impl RenderText for Verdict {
    fn render_text(&self, out: &mut String) {
        writeln!(out, "{}", self.line()).unwrap();
    }
}

#[derive(Debug, Serialize)]
pub struct Minimization {
    pub rule: String,
    pub support: usize,
    pub certainty: Option<Rational>,
    pub coverage: Option<Rational>,
    pub gates_before: usize,
    pub gates_after: usize,
    pub verification: Verdict,
    pub netlist: String,
}

impl RenderText for Minimization {
    fn render_text(&self, out: &mut String) {
        writeln!(out, "rule: {}", self.rule).unwrap();
        writeln!(
            out,
            "support={} certainty={} coverage={}",
            self.support,
            rounded(&self.certainty),
            rounded(&self.coverage)
        )
        .unwrap();
        writeln!(out, "gates: {} -> {}", self.gates_before, self.gates_after).unwrap();
        writeln!(out, "verification: {}", self.verification.line()).unwrap();
        out.push_str("netlist:\n");
        out.push_str(&self.netlist);
    }
}
