//! Indiscernibility, approximations and approximation quality.

use std::collections::HashMap;

use thiserror::Error;

use crate::decision_table::{AttrSet, DecisionTable, ObjectSet, TableError, Value};
use crate::ratio::{ratio, Ratio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoughError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("target set is empty; accuracy of approximation is undefined")]
    EmptyTarget,
    #[error("object {0} is not in the universe")]
    UnknownObject(usize),
}

/// Blocks of the indiscernibility relation `IND(attrs)`.
///
/// Blocks are ordered by their smallest member and list members in ascending
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Groups objects by their value tuple on `attrs`.
    pub fn new(table: &DecisionTable, attrs: &AttrSet) -> Self {
        let mut index: HashMap<Vec<Value>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(table.num_objects());
        for object in 0..table.num_objects() {
            let key: Vec<Value> = attrs.iter().map(|a| table.value(object, a)).collect();
            let b = *index.entry(key).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(object);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The equivalence class `[x]` of `object`.
    pub fn class_of(&self, object: usize) -> &[usize] {
        &self.blocks[self.block_of[object]]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|block| {
            let b = coarser.block_of[block[0]];
            block.iter().all(|&x| coarser.block_of[x] == b)
        })
    }

    /// Union of blocks wholly contained in `target`.
    pub fn lower(&self, target: &ObjectSet) -> ObjectSet {
        self.blocks
            .iter()
            .filter(|block| block.iter().all(|x| target.contains(x)))
            .flatten()
            .copied()
            .collect()
    }

    /// Union of blocks meeting `target`.
    pub fn upper(&self, target: &ObjectSet) -> ObjectSet {
        self.blocks
            .iter()
            .filter(|block| block.iter().any(|x| target.contains(x)))
            .flatten()
            .copied()
            .collect()
    }
}

/// Lower, upper and boundary regions of one target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationReport {
    pub lower: ObjectSet,
    pub upper: ObjectSet,
    pub boundary: ObjectSet,
    /// `|lower| / |upper|`; `None` when the upper approximation is empty.
    pub accuracy: Option<Ratio>,
}

impl ApproximationReport {
    fn from_partition(partition: &Partition, target: &ObjectSet) -> Self {
        let lower = partition.lower(target);
        let upper = partition.upper(target);
        let boundary = upper.difference(&lower).copied().collect();
        let accuracy = (!upper.is_empty()).then(|| ratio(lower.len(), upper.len()));
        ApproximationReport {
            lower,
            upper,
            boundary,
            accuracy,
        }
    }

    /// A target is crisp (exactly definable) when its boundary is empty.
    pub fn is_crisp(&self) -> bool {
        self.boundary.is_empty()
    }
}

fn check_target(table: &DecisionTable, target: &ObjectSet) -> Result<(), RoughError> {
    match target.iter().find(|&&x| x >= table.num_objects()) {
        Some(&x) => Err(RoughError::UnknownObject(x)),
        None => Ok(()),
    }
}

pub fn ind_partition(table: &DecisionTable, attrs: &AttrSet) -> Result<Partition, RoughError> {
    table.check_attrs(attrs)?;
    Ok(Partition::new(table, attrs))
}

pub fn approximate(
    table: &DecisionTable,
    attrs: &AttrSet,
    target: &ObjectSet,
) -> Result<ApproximationReport, RoughError> {
    check_target(table, target)?;
    let partition = ind_partition(table, attrs)?;
    Ok(ApproximationReport::from_partition(&partition, target))
}

pub fn lower_approximation(
    table: &DecisionTable,
    attrs: &AttrSet,
    target: &ObjectSet,
) -> Result<ObjectSet, RoughError> {
    check_target(table, target)?;
    Ok(ind_partition(table, attrs)?.lower(target))
}

pub fn upper_approximation(
    table: &DecisionTable,
    attrs: &AttrSet,
    target: &ObjectSet,
) -> Result<ObjectSet, RoughError> {
    check_target(table, target)?;
    Ok(ind_partition(table, attrs)?.upper(target))
}

pub fn accuracy_of_approximation(
    table: &DecisionTable,
    attrs: &AttrSet,
    target: &ObjectSet,
) -> Result<Ratio, RoughError> {
    if target.is_empty() {
        return Err(RoughError::EmptyTarget);
    }
    let report = approximate(table, attrs, target)?;
    Ok(report
        .accuracy
        .expect("non-empty target has non-empty upper approximation"))
}

/// Union of the lower approximations of all decision classes.
pub fn positive_region(table: &DecisionTable, attrs: &AttrSet) -> Result<ObjectSet, RoughError> {
    let partition = ind_partition(table, attrs)?;
    Ok(table
        .decision_classes()
        .values()
        .flat_map(|class| partition.lower(class))
        .collect())
}

/// Share of the universe lying outside every decision class's boundary region.
pub fn quality_of_classification(
    table: &DecisionTable,
    attrs: &AttrSet,
) -> Result<Ratio, RoughError> {
    let partition = ind_partition(table, attrs)?;
    let mut in_some_boundary = ObjectSet::new();
    for class in table.decision_classes().values() {
        let report = ApproximationReport::from_partition(&partition, class);
        in_some_boundary.extend(report.boundary);
    }
    let u = table.num_objects();
    Ok(ratio(u - in_some_boundary.len(), u))
}
