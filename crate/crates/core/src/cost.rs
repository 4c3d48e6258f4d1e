//! Deletion and relabel costs over labels, in exact integer arithmetic.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::Label;

/// Largest accepted single-operation cost; with at most 10^5 nodes per tree
/// every sum stays far inside `i64`.
pub const MAX_COST: i64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("negative cost for {0}")]
    Negative(String),
    #[error("cost for {0} exceeds {MAX_COST}")]
    TooLarge(String),
    #[error("incomplete cost table: missing {0}")]
    Incomplete(&'static str),
    #[error("bad cost table: {0}")]
    Schema(String),
}

/// Cost table document: defaults plus optional per-label overrides.
///
/// Relabel overrides are keyed `"from|to"`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostTable {
    pub del_default: Option<i64>,
    pub rel_default_eq: Option<i64>,
    pub rel_default_neq: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub del: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rel: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostModel {
    del_default: i64,
    rel_eq: i64,
    rel_neq: i64,
    del: HashMap<Label, i64>,
    rel: HashMap<(Label, Label), i64>,
    symmetric: bool,
    zero_diagonal: bool,
}

fn checked(what: impl FnOnce() -> String, c: i64) -> Result<i64, CostError> {
    if c < 0 {
        Err(CostError::Negative(what()))
    } else if c > MAX_COST {
        Err(CostError::TooLarge(what()))
    } else {
        Ok(c)
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::unit()
    }
}

impl CostModel {
    /// Every deletion costs 1; relabeling costs 1 unless the labels agree.
    pub fn unit() -> Self {
        CostModel {
            del_default: 1,
            rel_eq: 0,
            rel_neq: 1,
            del: HashMap::new(),
            rel: HashMap::new(),
            symmetric: true,
            zero_diagonal: true,
        }
    }

    pub fn from_table(table: &CostTable) -> Result<Self, CostError> {
        let del_default = checked(
            || "del_default".into(),
            table.del_default.ok_or(CostError::Incomplete("del_default"))?,
        )?;
        let rel_eq = checked(
            || "rel_default_eq".into(),
            table.rel_default_eq.ok_or(CostError::Incomplete("rel_default_eq"))?,
        )?;
        let rel_neq = checked(
            || "rel_default_neq".into(),
            table.rel_default_neq.ok_or(CostError::Incomplete("rel_default_neq"))?,
        )?;

        let mut del = HashMap::new();
        for (label, &c) in &table.del {
            let l = Label::new(label.as_str()).map_err(|e| CostError::Schema(e.to_string()))?;
            del.insert(l, checked(|| format!("deleting {label:?}"), c)?);
        }

        let mut rel = HashMap::new();
        for (key, &c) in &table.rel {
            let (x, y) = key
                .split_once('|')
                .filter(|(_, y)| !y.contains('|'))
                .ok_or_else(|| CostError::Schema(format!("relabel key {key:?} is not \"from|to\"")))?;
            let x = Label::new(x).map_err(|e| CostError::Schema(format!("{key:?}: {e}")))?;
            let y = Label::new(y).map_err(|e| CostError::Schema(format!("{key:?}: {e}")))?;
            rel.insert((x, y), checked(|| format!("relabeling {key:?}"), c)?);
        }

        let zero_diagonal = rel_eq == 0 && rel.iter().all(|((x, y), &c)| x != y || c == 0);
        let symmetric = rel.iter().all(|((x, y), &c)| {
            let back = rel
                .get(&(y.clone(), x.clone()))
                .copied()
                .unwrap_or(if x == y { rel_eq } else { rel_neq });
            back == c
        });

        Ok(CostModel {
            del_default,
            rel_eq,
            rel_neq,
            del,
            rel,
            symmetric,
            zero_diagonal,
        })
    }

    /// Cost of deleting (or inserting) a node labeled `x`.
    pub fn del(&self, x: &Label) -> i64 {
        self.del.get(x).copied().unwrap_or(self.del_default)
    }

    /// Cost of relabeling `x` to `y`.
    pub fn rel(&self, x: &Label, y: &Label) -> i64 {
        if let Some(&c) = self.rel.get(&(x.clone(), y.clone())) {
            return c;
        }
        if x == y {
            self.rel_eq
        } else {
            self.rel_neq
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.zero_diagonal
    }

    pub(crate) fn rel_defaults(&self) -> (i64, i64) {
        (self.rel_eq, self.rel_neq)
    }

    pub(crate) fn rel_overrides(&self) -> impl Iterator<Item = (&Label, &Label, i64)> {
        self.rel.iter().map(|((x, y), &c)| (x, y, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        Label::new(s).unwrap()
    }

    #[test]
    fn unit_costs() {
        let c = CostModel::unit();
        assert_eq!(c.del(&l("a")), 1);
        assert_eq!(c.rel(&l("a"), &l("a")), 0);
        assert_eq!(c.rel(&l("a"), &l("b")), 1);
        assert!(c.is_symmetric() && c.has_zero_diagonal());
    }

    fn table() -> CostTable {
        CostTable {
            del_default: Some(2),
            rel_default_eq: Some(0),
            rel_default_neq: Some(1),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_and_overrides() {
        let mut t = table();
        t.rel.insert("a|b".into(), 5);
        t.del.insert("gap".into(), 3);
        let c = CostModel::from_table(&t).unwrap();
        assert_eq!(c.del(&l("x")), 2);
        assert_eq!(c.del(&l("gap")), 3);
        assert_eq!(c.rel(&l("a"), &l("b")), 5);
        assert_eq!(c.rel(&l("b"), &l("a")), 1);
        assert!(!c.is_symmetric());
        assert!(c.has_zero_diagonal());
    }

    #[test]
    fn rejects_negative_and_incomplete() {
        let mut t = table();
        t.rel.insert("a|b".into(), -1);
        assert!(matches!(CostModel::from_table(&t), Err(CostError::Negative(_))));

        let mut t = table();
        t.rel_default_neq = None;
        assert_eq!(
            CostModel::from_table(&t).unwrap_err().to_string(),
            "incomplete cost table: missing rel_default_neq"
        );

        let mut t = table();
        t.rel.insert("ab".into(), 1);
        assert!(matches!(CostModel::from_table(&t), Err(CostError::Schema(_))));
    }

    #[test]
    fn nonzero_diagonal_is_allowed_but_flagged() {
        let mut t = table();
        t.rel.insert("a|a".into(), 4);
        let c = CostModel::from_table(&t).unwrap();
        assert_eq!(c.rel(&l("a"), &l("a")), 4);
        assert!(!c.has_zero_diagonal());
        assert!(c.is_symmetric());
    }
}
