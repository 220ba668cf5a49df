//! Decision tables: a finite universe of objects described by discrete
//! condition attributes plus one decision attribute.
//!
//! Objects are identified by their 0-based row index. Duplicate rows are
//! allowed and are simply indiscernible objects.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Attribute and decision values.
pub type Value = u32;

/// A set of object ids (row indices).
pub type ObjectSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table source is empty")]
    Empty,
    #[error("table has no objects")]
    NoObjects,
    #[error("header: attribute name {column} is empty")]
    EmptyName { column: usize },
    #[error("duplicate attribute name `{0}`")]
    DuplicateName(String),
    #[error("row {row}: expected {expected} values, found {found}")]
    Arity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}: cell `{cell}` is not a non-negative integer")]
    BadCell { row: usize, cell: String },
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("attribute index {0} is out of range")]
    IndexOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    attribute_names: Vec<String>,
    decision_name: String,
    rows: Vec<Vec<Value>>,
    decisions: Vec<Value>,
}

impl DecisionTable {
    /// Builds a validated table from condition rows and their decisions.
    pub fn new(
        attribute_names: Vec<String>,
        decision_name: impl Into<String>,
        rows: Vec<(Vec<Value>, Value)>,
    ) -> Result<Self, TableError> {
        let decision_name = decision_name.into();
        let mut seen = HashSet::new();
        for (column, name) in attribute_names
            .iter()
            .chain(Some(&decision_name))
            .enumerate()
        {
            if name.is_empty() {
                return Err(TableError::EmptyName { column: column + 1 });
            }
            if !seen.insert(name.as_str()) {
                return Err(TableError::DuplicateName(name.clone()));
            }
        }
        if rows.is_empty() {
            return Err(TableError::NoObjects);
        }
        let width = attribute_names.len();
        let mut conditions = Vec::with_capacity(rows.len());
        let mut decisions = Vec::with_capacity(rows.len());
        for (i, (row, decision)) in rows.into_iter().enumerate() {
            if row.len() != width {
                return Err(TableError::Arity {
                    row: i + 1,
                    expected: width + 1,
                    found: row.len() + 1,
                });
            }
            conditions.push(row);
            decisions.push(decision);
        }
        Ok(DecisionTable {
            attribute_names,
            decision_name,
            rows: conditions,
            decisions,
        })
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn decision_name(&self) -> &str {
        &self.decision_name
    }

    /// Number of objects, `|U|`.
    pub fn num_objects(&self) -> usize {
        self.rows.len()
    }

    /// Number of condition attributes.
    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    /// The information function: value of condition attribute `attr` on `object`.
    pub fn value(&self, object: usize, attr: usize) -> Value {
        self.rows[object][attr]
    }

    pub fn decision(&self, object: usize) -> Value {
        self.decisions[object]
    }

    /// Condition values of one object, in attribute order.
    pub fn row(&self, object: usize) -> &[Value] {
        &self.rows[object]
    }

    pub fn decisions(&self) -> &[Value] {
        &self.decisions
    }

    pub fn universe(&self) -> ObjectSet {
        (0..self.num_objects()).collect()
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize, TableError> {
        self.attribute_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| TableError::UnknownAttribute(name.to_string()))
    }

    /// Resolves attribute names into an [`AttrSet`].
    pub fn attrs<I, S>(&self, names: I) -> Result<AttrSet, TableError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| self.attribute_index(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(AttrSet::from_indices)
    }

    /// Every condition attribute.
    pub fn all_attrs(&self) -> AttrSet {
        AttrSet((0..self.num_attributes()).collect())
    }

    /// Checks that every index of `attrs` addresses a condition attribute.
    pub fn check_attrs(&self, attrs: &AttrSet) -> Result<(), TableError> {
        match attrs.iter().find(|&i| i >= self.num_attributes()) {
            Some(i) => Err(TableError::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Distinct values observed in a condition column or the decision column.
    pub fn value_domain(&self, name: &str) -> Result<BTreeSet<Value>, TableError> {
        if name == self.decision_name {
            return Ok(self.decisions.iter().copied().collect());
        }
        let attr = self.attribute_index(name)?;
        Ok(self.rows.iter().map(|row| row[attr]).collect())
    }

    /// Objects grouped by decision value, the decision classes `X_1 .. X_n`.
    pub fn decision_classes(&self) -> BTreeMap<Value, ObjectSet> {
        let mut classes: BTreeMap<Value, ObjectSet> = BTreeMap::new();
        for (object, &d) in self.decisions.iter().enumerate() {
            classes.entry(d).or_default().insert(object);
        }
        classes
    }

    pub fn class_members(&self, class_value: Value) -> ObjectSet {
        self.decisions
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == class_value)
            .map(|(i, _)| i)
            .collect()
    }

    /// Renders the table in the CSV dialect accepted by [`parse_decision_table`].
    pub fn to_csv(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DecisionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.attribute_names {
            write!(f, "{name},")?;
        }
        writeln!(f, "{}", self.decision_name)?;
        for (row, decision) in self.rows.iter().zip(&self.decisions) {
            for v in row {
                write!(f, "{v},")?;
            }
            writeln!(f, "{decision}")?;
        }
        Ok(())
    }
}

impl FromStr for DecisionTable {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_decision_table(s)
    }
}

/// Parses comma-separated text: a header naming the condition attributes with
/// the decision last, then one line of integers per object. LF and CRLF line
/// endings are accepted; blank lines are skipped.
pub fn parse_decision_table(source: &str) -> Result<DecisionTable, TableError> {
    let mut lines = source
        .lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty());
    let (_, header) = lines.next().ok_or(TableError::Empty)?;
    let mut names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let decision_name = names.pop().expect("split yields at least one field");
    let width = names.len() + 1;

    let mut rows = Vec::new();
    for (line_no, line) in lines {
        // The header sits on line 1, so data row numbers are line numbers minus one.
        let row = line_no;
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != width {
            return Err(TableError::Arity {
                row,
                expected: width,
                found: cells.len(),
            });
        }
        let values = cells
            .iter()
            .map(|cell| {
                cell.parse::<Value>().map_err(|_| TableError::BadCell {
                    row,
                    cell: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (decision, conditions) = values.split_last().expect("width >= 1");
        rows.push((conditions.to_vec(), *decision));
    }
    DecisionTable::new(names, decision_name, rows)
}

/// A sorted, duplicate-free set of condition attribute indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AttrSet(Vec<usize>);

impl AttrSet {
    pub fn empty() -> Self {
        AttrSet(Vec::new())
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        AttrSet(v)
    }

    /// Attribute set encoded by the bits of `mask` (bit `i` = attribute `i`).
    pub fn from_mask(mask: u64) -> Self {
        AttrSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Bit encoding of the set; `None` if an index does not fit in 64 bits.
    pub fn to_mask(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(0u64, |m, &i| (i < 64).then(|| m | 1 << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, attr: usize) -> bool {
        self.0.binary_search(&attr).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &AttrSet) -> bool {
        self.iter().all(|a| other.contains(a))
    }

    pub fn without(&self, attr: usize) -> AttrSet {
        AttrSet(self.iter().filter(|&a| a != attr).collect())
    }

    pub fn intersection(&self, other: &AttrSet) -> AttrSet {
        AttrSet(self.iter().filter(|&a| other.contains(a)).collect())
    }

    pub fn names<'t>(&self, table: &'t DecisionTable) -> Vec<&'t str> {
        self.iter()
            .map(|i| table.attribute_names()[i].as_str())
            .collect()
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        AttrSet::from_indices(iter)
    }
}
