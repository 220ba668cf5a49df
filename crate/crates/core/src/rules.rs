//! Decision rules induced from reducts, their quality measures, and a
//! first-match classifier.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::decision_table::{AttrSet, DecisionTable, TableError, Value};
use crate::ratio::{ratio, Ratio, TwoPlaces};
use crate::reduction::Reduct;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("decision value {0} does not occur in the table")]
    UnknownClass(Value),
    #[error("object has no value for attribute `{0}`")]
    MissingValue(String),
    #[error("attribute `{0}` appears twice in one rule")]
    DuplicateAttribute(String),
    #[error("malformed rule `{spec}`: {reason}")]
    Syntax { spec: String, reason: String },
}

/// One `attribute = value` condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Descriptor {
    pub attribute: String,
    pub value: Value,
}

impl Descriptor {
    pub fn new(attribute: impl Into<String>, value: Value) -> Self {
        Descriptor {
            attribute: attribute.into(),
            value,
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}={})", self.attribute, self.value)
    }
}

/// A conjunction of descriptors implying a decision value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionRule {
    descriptors: Vec<Descriptor>,
    decision: Value,
}

impl DecisionRule {
    pub fn new(descriptors: Vec<Descriptor>, decision: Value) -> Result<Self, RuleError> {
        for (i, d) in descriptors.iter().enumerate() {
            if descriptors[..i].iter().any(|e| e.attribute == d.attribute) {
                return Err(RuleError::DuplicateAttribute(d.attribute.clone()));
            }
        }
        Ok(DecisionRule {
            descriptors,
            decision,
        })
    }

    pub fn descriptors(&self) -> &[Descriptor] {
        &self.descriptors
    }

    pub fn decision(&self) -> Value {
        self.decision
    }

    pub fn attributes(&self) -> impl Iterator<Item = &str> {
        self.descriptors.iter().map(|d| d.attribute.as_str())
    }

    /// Whether every descriptor holds for `object`.
    pub fn matches<O: AttributeValues + ?Sized>(&self, object: &O) -> Result<bool, RuleError> {
        for d in &self.descriptors {
            match object.value_of(&d.attribute) {
                Some(v) if v == d.value => {}
                Some(_) => return Ok(false),
                None => return Err(RuleError::MissingValue(d.attribute.clone())),
            }
        }
        Ok(true)
    }

    /// Renders the rule as `(w8=1) & (w9=0) => D=1`.
    pub fn display_with<'a>(&'a self, decision_name: &'a str) -> impl fmt::Display + 'a {
        RuleDisplay {
            rule: self,
            decision_name,
        }
    }
}

struct RuleDisplay<'a> {
    rule: &'a DecisionRule,
    decision_name: &'a str,
}

impl fmt::Display for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.rule.descriptors.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{d}")?;
        }
        if self.rule.descriptors.is_empty() {
            f.write_str("true")?;
        }
        write!(f, " => {}={}", self.decision_name, self.rule.decision)
    }
}

/// Compact rule-spec syntax: `w8=1&w9=0=>1`.
impl fmt::Display for DecisionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.descriptors.iter().enumerate() {
            if i > 0 {
                f.write_str("&")?;
            }
            write!(f, "{}={}", d.attribute, d.value)?;
        }
        write!(f, "=>{}", self.decision)
    }
}

/// Parses `w8=1&w9=0=>1`. Whitespace, parenthesized descriptors
/// (`(w8=1) & (w9=0)`) and a named decision (`=> D=1`) are also accepted.
impl FromStr for DecisionRule {
    type Err = RuleError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| RuleError::Syntax {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (lhs, rhs) = spec.split_once("=>").ok_or_else(|| fail("missing `=>`"))?;
        let rhs = rhs.trim();
        let decision_text = match rhs.split_once('=') {
            Some((name, v)) if !name.trim().is_empty() => v.trim(),
            Some(_) => return Err(fail("empty decision name")),
            None => rhs,
        };
        let decision = decision_text
            .parse::<Value>()
            .map_err(|_| fail("decision is not a non-negative integer"))?;

        let mut descriptors = Vec::new();
        for part in lhs.split('&') {
            let part = part.trim();
            let part = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .unwrap_or(part)
                .trim();
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| fail("descriptor must look like name=value"))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(fail("bad attribute name"));
            }
            let value = value
                .trim()
                .parse::<Value>()
                .map_err(|_| fail("descriptor value is not a non-negative integer"))?;
            descriptors.push(Descriptor::new(name, value));
        }
        DecisionRule::new(descriptors, decision)
    }
}

/// Anything that can report a value per attribute name: table rows, wire
/// valuations, plain maps.
pub trait AttributeValues {
    fn value_of(&self, attribute: &str) -> Option<Value>;
}

impl AttributeValues for BTreeMap<String, Value> {
    fn value_of(&self, attribute: &str) -> Option<Value> {
        self.get(attribute).copied()
    }
}

impl AttributeValues for HashMap<String, Value> {
    fn value_of(&self, attribute: &str) -> Option<Value> {
        self.get(attribute).copied()
    }
}

impl AttributeValues for [(&str, Value)] {
    fn value_of(&self, attribute: &str) -> Option<Value> {
        self.iter().find(|(n, _)| *n == attribute).map(|&(_, v)| v)
    }
}

/// Row `object` of a table, viewed by attribute name.
#[derive(Debug, Clone, Copy)]
pub struct TableRow<'a> {
    pub table: &'a DecisionTable,
    pub object: usize,
}

impl AttributeValues for TableRow<'_> {
    fn value_of(&self, attribute: &str) -> Option<Value> {
        let a = self.table.attribute_index(attribute).ok()?;
        Some(self.table.value(self.object, a))
    }
}

/// Support, certainty, coverage and strength of a rule against a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleMetrics {
    /// Objects matching the descriptors and carrying the rule's decision.
    pub support: usize,
    /// Objects matching the descriptors.
    pub match_count: usize,
    /// Objects carrying the rule's decision.
    pub class_size: usize,
    pub universe: usize,
}

impl RuleMetrics {
    /// `support / match_count`, undefined when nothing matches.
    pub fn certainty(&self) -> Option<Ratio> {
        (self.match_count > 0).then(|| ratio(self.support, self.match_count))
    }

    /// `support / class size`, undefined when the decision never occurs.
    pub fn coverage(&self) -> Option<Ratio> {
        (self.class_size > 0).then(|| ratio(self.support, self.class_size))
    }

    /// `support / |U|`.
    pub fn strength(&self) -> Ratio {
        ratio(self.support, self.universe)
    }
}

impl fmt::Display for RuleMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strength = self.strength();
        write!(
            f,
            "[support={} certainty={} coverage={} strength={}]",
            self.support,
            TwoPlaces(self.certainty().as_ref()),
            TwoPlaces(self.coverage().as_ref()),
            TwoPlaces(Some(&strength)),
        )
    }
}

/// A rule together with its measures on the table it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRule {
    pub rule: DecisionRule,
    pub metrics: RuleMetrics,
}

impl InducedRule {
    /// `(w8=1) & (w9=0) => D=1 [support=4 certainty=1.00 coverage=1.00 strength=0.27]`
    pub fn render(&self, decision_name: &str) -> String {
        format!("{} {}", self.rule.display_with(decision_name), self.metrics)
    }
}

/// Recomputes a rule's measures from scratch.
pub fn rule_metrics(table: &DecisionTable, rule: &DecisionRule) -> Result<RuleMetrics, RuleError> {
    let columns: Vec<(usize, Value)> = rule
        .descriptors
        .iter()
        .map(|d| Ok((table.attribute_index(&d.attribute)?, d.value)))
        .collect::<Result<_, TableError>>()?;
    let mut metrics = RuleMetrics {
        support: 0,
        match_count: 0,
        class_size: 0,
        universe: table.num_objects(),
    };
    for x in 0..table.num_objects() {
        let hit = table.decision(x) == rule.decision;
        metrics.class_size += usize::from(hit);
        if columns.iter().all(|&(a, v)| table.value(x, a) == v) {
            metrics.match_count += 1;
            metrics.support += usize::from(hit);
        }
    }
    Ok(metrics)
}

/// One rule per distinct projection of the `class_value` objects onto the
/// reduct, in order of first occurrence.
pub fn induce_rules(
    table: &DecisionTable,
    reduct: &Reduct,
    class_value: Value,
) -> Result<Vec<InducedRule>, RuleError> {
    induce_rules_for(table, reduct.attributes(), class_value)
}

/// [`induce_rules`] over an arbitrary attribute set.
pub fn induce_rules_for(
    table: &DecisionTable,
    attrs: &AttrSet,
    class_value: Value,
) -> Result<Vec<InducedRule>, RuleError> {
    table.check_attrs(attrs)?;
    let members = table.class_members(class_value);
    if members.is_empty() {
        return Err(RuleError::UnknownClass(class_value));
    }
    let mut projections: Vec<Vec<Value>> = Vec::new();
    for &x in &members {
        let p: Vec<Value> = attrs.iter().map(|a| table.value(x, a)).collect();
        if !projections.contains(&p) {
            projections.push(p);
        }
    }
    projections
        .into_iter()
        .map(|p| {
            let descriptors = attrs
                .iter()
                .zip(p)
                .map(|(a, v)| Descriptor::new(table.attribute_names()[a].clone(), v))
                .collect();
            let rule = DecisionRule::new(descriptors, class_value)?;
            let metrics = rule_metrics(table, &rule)?;
            Ok(InducedRule { rule, metrics })
        })
        .collect()
}

/// Decision of the first rule whose descriptors all hold, else `default`.
pub fn classify<O: AttributeValues + ?Sized>(
    rules: &[DecisionRule],
    object: &O,
    default: Value,
) -> Result<Value, RuleError> {
    for rule in rules {
        if rule.matches(object)? {
            return Ok(rule.decision);
        }
    }
    Ok(default)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::table1;

    fn rule(spec: &str) -> DecisionRule {
        spec.parse().unwrap()
    }

    fn reduct(table: &DecisionTable, names: &[&str]) -> Reduct {
        Reduct::new_unchecked(table.attrs(names).unwrap())
    }

    #[test]
    fn induces_single_rule_for_w8_w9() {
        let t = table1();
        let rules = induce_rules(&t, &reduct(&t, &["w8", "w9"]), 1).unwrap();
        assert_eq!(rules.len(), 1);
        let r = &rules[0];
        assert_eq!(r.rule, rule("w8=1&w9=0=>1"));
        assert_eq!(r.metrics.support, 4);
        assert_eq!(r.metrics.certainty(), Some(ratio(1, 1)));
        assert_eq!(r.metrics.coverage(), Some(ratio(1, 1)));
        assert_eq!(
            r.render("D"),
            "(w8=1) & (w9=0) => D=1 [support=4 certainty=1.00 coverage=1.00 strength=0.27]"
        );
    }

    #[test]
    fn induces_table3_rule_1() {
        let t = table1();
        let rules = induce_rules(&t, &reduct(&t, &["w3", "w9", "w11"]), 1).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].rule, rule("w3=0&w9=0&w11=0=>1"));
    }

    #[test]
    fn one_row_table_gives_one_rule() {
        let t = crate::parse_decision_table("a,b,D\n1,0,5\n").unwrap();
        let rules = induce_rules(&t, &reduct(&t, &["a"]), 5).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].rule, rule("a=1=>5"));
        assert_eq!(
            induce_rules(&t, &reduct(&t, &["a"]), 0),
            Err(RuleError::UnknownClass(0))
        );
    }

    #[test]
    fn multiple_projections_in_first_occurrence_order() {
        let t = table1();
        let rules = induce_rules(&t, &reduct(&t, &["w4", "w7", "w8"]), 1).unwrap();
        let specs: Vec<String> = rules.iter().map(|r| r.rule.to_string()).collect();
        assert_eq!(
            specs,
            [
                "w4=0&w7=1&w8=1=>1",
                "w4=0&w7=0&w8=1=>1",
                "w4=1&w7=0&w8=1=>1"
            ]
        );
        let coverage: Ratio = rules.iter().map(|r| r.metrics.coverage().unwrap()).sum();
        assert_eq!(coverage, ratio(1, 1));
    }

    #[test]
    fn metrics_examples() {
        let t = table1();
        let m = rule_metrics(&t, &rule("w8=1&w9=0=>1")).unwrap();
        assert_eq!((m.support, m.match_count), (4, 4));
        assert_eq!(m.certainty(), Some(ratio(1, 1)));
        assert_eq!(m.coverage(), Some(ratio(4, 4)));
        assert_eq!(m.strength(), ratio(4, 15));

        let m = rule_metrics(&t, &rule("w8=1=>1")).unwrap();
        assert_eq!((m.support, m.match_count), (4, 6));
        assert_eq!(m.certainty(), Some(ratio(4, 6)));

        let m = rule_metrics(&t, &rule("w1=2=>1")).unwrap();
        assert_eq!((m.support, m.match_count), (0, 0));
        assert_eq!(m.certainty(), None);
        assert!(m.to_string().contains("certainty=undefined"));

        assert!(rule_metrics(&t, &rule("w0=1=>1")).is_err());
    }

    #[test]
    fn classify_with_default() {
        let t = table1();
        let rules = vec![rule("w3=0&w9=0&w11=0=>1")];
        let row = |object| TableRow { table: &t, object };
        assert_eq!(classify(&rules, &row(0), 0).unwrap(), 1);
        assert_eq!(classify(&rules, &row(4), 0).unwrap(), 0);
        assert_eq!(classify(&[], &row(4), 0).unwrap(), 0);
        let partial: &[(&str, Value)] = &[("w3", 0), ("w9", 0)];
        assert_eq!(
            classify(&rules, partial, 0),
            Err(RuleError::MissingValue("w11".into()))
        );
    }

    #[test]
    fn rule_spec_syntax() {
        let r = rule("w8=1&w9=0=>1");
        assert_eq!(
            r.descriptors(),
            [Descriptor::new("w8", 1), Descriptor::new("w9", 0)]
        );
        assert_eq!(r.decision(), 1);
        assert_eq!(rule(" (w8=1) & (w9=0) => D=1 "), r);
        assert_eq!(r.to_string(), "w8=1&w9=0=>1");
        assert_eq!(r.display_with("D").to_string(), "(w8=1) & (w9=0) => D=1");
        for bad in [
            "w8=1",
            "w8=1&=>1",
            "w8&w9=0=>1",
            "w8=x=>1",
            "w8=1=>",
            "w8=1=>=1",
            "w 8=1=>1",
        ] {
            assert!(
                matches!(bad.parse::<DecisionRule>(), Err(RuleError::Syntax { .. })),
                "{bad}"
            );
        }
        assert_eq!(
            "w8=1&w8=0=>1".parse::<DecisionRule>(),
            Err(RuleError::DuplicateAttribute("w8".into()))
        );
    }
}
