//! Decision-relative reducts, the core, and the full-coverage reduct filter.
//!
//! A reduct is a minimal set of condition attributes whose positive region
//! equals that of the full attribute set. Reducts are enumerated exhaustively:
//! the subset lattice is scanned in order of increasing size and supersets of
//! reducts already found are skipped. Each candidate is tested against the
//! discernibility function, i.e. it must hit every matrix entry for a pair of
//! objects that the full attribute set tells apart and that involves at least
//! one object of the positive region.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::decision_table::{AttrSet, DecisionTable, TableError, Value};
use crate::rough::Partition;

/// Largest attribute count the exhaustive search accepts by default.
pub const DEFAULT_MAX_ATTRIBUTES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(
        "exhaustive reduct search is capped at {cap} condition attributes, table has {attributes}"
    )]
    Capacity { attributes: usize, cap: usize },
    #[error("decision value {0} does not occur in the table")]
    UnknownClass(Value),
}

/// A minimal positive-region-preserving attribute set.
///
/// Reducts order by size first, then lexicographically by attribute index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reduct {
    attributes: AttrSet,
}

impl Reduct {
    /// Wraps an attribute set without checking that it is a reduct.
    pub fn new_unchecked(attributes: AttrSet) -> Self {
        Reduct { attributes }
    }

    pub fn attributes(&self) -> &AttrSet {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn names<'t>(&self, table: &'t DecisionTable) -> Vec<&'t str> {
        self.attributes.names(table)
    }
}

impl Ord for Reduct {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.attributes.as_slice().cmp(other.attributes.as_slice()))
    }
}

impl PartialOrd for Reduct {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Decision-relative discernibility matrix.
///
/// Holds an entry for every pair of objects with different decisions: the
/// condition attributes on which the pair differs. An empty entry means the
/// two objects cannot be told apart and the table is inconsistent there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscernibilityMatrix {
    entries: BTreeMap<(usize, usize), AttrSet>,
    positive: Vec<bool>,
}

impl DiscernibilityMatrix {
    pub fn new(table: &DecisionTable) -> Self {
        let n = table.num_objects();
        let mut entries = BTreeMap::new();
        for x in 0..n {
            for y in x + 1..n {
                if table.decision(x) == table.decision(y) {
                    continue;
                }
                let differing = (0..table.num_attributes())
                    .filter(|&a| table.value(x, a) != table.value(y, a))
                    .collect();
                entries.insert((x, y), differing);
            }
        }
        let positive = entries.values().any(AttrSet::is_empty).then(|| {
            let partition = Partition::new(table, &table.all_attrs());
            (0..n)
                .map(|x| {
                    let d = table.decision(x);
                    partition
                        .class_of(x)
                        .iter()
                        .all(|&y| table.decision(y) == d)
                })
                .collect()
        });
        DiscernibilityMatrix {
            entries,
            positive: positive.unwrap_or_else(|| vec![true; n]),
        }
    }

    /// Entry for an unordered pair; `None` when the decisions agree.
    pub fn entry(&self, x: usize, y: usize) -> Option<&AttrSet> {
        self.entries.get(&(x.min(y), x.max(y)))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &AttrSet)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.entries.values().all(|e| !e.is_empty())
    }

    /// Pairs no condition attribute distinguishes despite different decisions.
    pub fn inconsistent_pairs(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.is_empty())
            .map(|(&k, _)| k)
            .collect()
    }

    /// Entries a positive-region-preserving attribute set must hit: pairs with
    /// at least one member in the positive region of the full attribute set.
    pub fn relevant_entries(&self) -> impl Iterator<Item = &AttrSet> {
        self.entries
            .iter()
            .filter(|(&(x, y), _)| self.positive[x] || self.positive[y])
            .map(|(_, e)| e)
    }

    /// Attributes appearing as singleton relevant entries. Each one is the only
    /// way to separate some pair, so it belongs to every reduct.
    pub fn singleton_core(&self) -> AttrSet {
        self.relevant_entries()
            .filter(|e| e.len() == 1)
            .flat_map(|e| e.iter())
            .collect()
    }
}

pub fn discernibility_matrix(table: &DecisionTable) -> DiscernibilityMatrix {
    DiscernibilityMatrix::new(table)
}

/// Configuration for exhaustive reduct enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductSearch {
    /// Refuse tables with more condition attributes than this (at most 63).
    pub max_attributes: usize,
}

impl Default for ReductSearch {
    fn default() -> Self {
        ReductSearch {
            max_attributes: DEFAULT_MAX_ATTRIBUTES,
        }
    }
}

impl ReductSearch {
    pub fn with_max_attributes(max_attributes: usize) -> Self {
        ReductSearch { max_attributes }
    }

    fn check_capacity(&self, table: &DecisionTable) -> Result<(), ReductionError> {
        let cap = self.max_attributes.min(63);
        if table.num_attributes() > cap {
            return Err(ReductionError::Capacity {
                attributes: table.num_attributes(),
                cap,
            });
        }
        Ok(())
    }

    /// Every reduct of `table`, ordered by size then attribute index.
    ///
    /// Candidates of one size are tested in parallel; the result does not
    /// depend on the number of worker threads.
    pub fn all_reducts(&self, table: &DecisionTable) -> Result<Vec<Reduct>, ReductionError> {
        self.check_capacity(table)?;
        let matrix = DiscernibilityMatrix::new(table);
        let clauses = absorbed_clauses(&matrix);
        let m = table.num_attributes();

        let mut found: Vec<u64> = Vec::new();
        for size in 0..=m {
            let candidates: Vec<u64> = (0..m)
                .combinations(size)
                .map(|c| c.into_iter().fold(0u64, |acc, a| acc | 1 << a))
                .collect();
            let hits: Vec<u64> = candidates
                .into_par_iter()
                .filter(|&c| !found.iter().any(|&r| is_submask(r, c)))
                .filter(|&c| clauses.iter().all(|&cl| cl & c != 0))
                .collect();
            found.extend(hits);
            // The empty set hitting every clause means there are no clauses.
            if found.first() == Some(&0) {
                break;
            }
        }
        let mut reducts: Vec<Reduct> = found
            .into_iter()
            .map(|mask| Reduct::new_unchecked(AttrSet::from_mask(mask)))
            .collect();
        reducts.sort();
        Ok(reducts)
    }

    /// Intersection of all reducts.
    pub fn core(&self, table: &DecisionTable) -> Result<AttrSet, ReductionError> {
        let reducts = self.all_reducts(table)?;
        Ok(reducts
            .iter()
            .map(Reduct::attributes)
            .fold(None, |acc: Option<AttrSet>, r| {
                Some(match acc {
                    None => r.clone(),
                    Some(acc) => acc.intersection(r),
                })
            })
            .unwrap_or_default())
    }
}

/// Relevant discernibility entries as bitmasks, with duplicates and entries
/// that contain a smaller entry removed (absorption).
fn absorbed_clauses(matrix: &DiscernibilityMatrix) -> Vec<u64> {
    let mut clauses: Vec<u64> = matrix
        .relevant_entries()
        .map(|e| e.to_mask().expect("capacity checked"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    clauses.sort_by_key(|c| c.count_ones());
    let mut kept: Vec<u64> = Vec::with_capacity(clauses.len());
    for c in clauses {
        if !kept.iter().any(|&k| is_submask(k, c)) {
            kept.push(c);
        }
    }
    kept
}

fn is_submask(sub: u64, of: u64) -> bool {
    sub & !of == 0
}

pub fn all_reducts(table: &DecisionTable) -> Result<Vec<Reduct>, ReductionError> {
    ReductSearch::default().all_reducts(table)
}

pub fn core(table: &DecisionTable) -> Result<AttrSet, ReductionError> {
    ReductSearch::default().core(table)
}

fn positive_count(table: &DecisionTable, attrs: &AttrSet) -> usize {
    let partition = Partition::new(table, attrs);
    partition
        .blocks()
        .iter()
        .filter(|block| {
            block
                .iter()
                .all(|&y| table.decision(y) == table.decision(block[0]))
        })
        .map(Vec::len)
        .sum()
}

/// True iff `attrs` preserves the full-attribute positive region and no
/// proper subset does.
pub fn is_reduct(table: &DecisionTable, attrs: &AttrSet) -> Result<bool, ReductionError> {
    table.check_attrs(attrs)?;
    let full = positive_count(table, &table.all_attrs());
    if positive_count(table, attrs) != full {
        return Ok(false);
    }
    // Preservation is monotone, so checking the maximal proper subsets suffices.
    Ok(attrs
        .iter()
        .all(|a| positive_count(table, &attrs.without(a)) != full))
}

/// Keeps the reducts under which all objects of `class_value` share one value
/// tuple, so a single rule covers the whole class.
pub fn filter_full_coverage_reducts(
    table: &DecisionTable,
    reducts: &[Reduct],
    class_value: Value,
) -> Result<Vec<Reduct>, ReductionError> {
    let members = table.class_members(class_value);
    if members.is_empty() {
        return Err(ReductionError::UnknownClass(class_value));
    }
    let mut kept = Vec::new();
    for reduct in reducts {
        table.check_attrs(reduct.attributes())?;
        let projections: BTreeSet<Vec<Value>> = members
            .iter()
            .map(|&x| {
                reduct
                    .attributes()
                    .iter()
                    .map(|a| table.value(x, a))
                    .collect()
            })
            .collect();
        if projections.len() == 1 {
            kept.push(reduct.clone());
        }
    }
    kept.sort();
    Ok(kept)
}
