//! JSON file formats for rings, modules, graphs, modular invariants and groups.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::dynkin::LoopyGraph;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::minv::ModularInvariant;
use crate::module::ZPlusModule;
use crate::repg::SmallGroup;
use crate::ring::ZPlusRing;
use crate::sl2::{fusion_ring, Sl2Level};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingFile {
    pub rank: usize,
    pub labels: Vec<String>,
    pub unit_set: Vec<usize>,
    pub structure_constants: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub involution: Option<Vec<usize>>,
}

/// Either an inline ring or a name: `"Z"` or `"sl2:<level>"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Named(String),
    Inline(RingFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: RingRef,
    pub module_rank: usize,
    pub action: Vec<Vec<Vec<i64>>>,
    pub based: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub size: usize,
    pub adjacency: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFile {
    pub level: u32,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in a 64-bit file entry")))
}

fn matrix_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(small).collect()).collect()
}

fn square(rows: &[Vec<i64>], n: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{what} must be {n}x{n}")));
    }
    Ok(IntMatrix::from_rows(rows))
}

impl RingFile {
    pub fn from_ring(ring: &ZPlusRing) -> Result<Self> {
        let structure_constants = ring
            .constants_nested()
            .iter()
            .map(|plane| plane.iter().map(|row| row.iter().map(small).collect()).collect())
            .collect::<Result<_>>()?;
        Ok(RingFile {
            rank: ring.rank(),
            labels: ring.labels().to_vec(),
            unit_set: ring.unit_set().to_vec(),
            structure_constants,
            involution: ring.involution().map(<[usize]>::to_vec),
        })
    }

    pub fn to_ring(&self) -> Result<ZPlusRing> {
        if self.structure_constants.len() != self.rank {
            return Err(Error::Parse(format!(
                "structure_constants has {} planes, rank is {}",
                self.structure_constants.len(),
                self.rank
            )));
        }
        let constants = self
            .structure_constants
            .iter()
            .map(|plane| plane.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .collect();
        ZPlusRing::new(self.labels.clone(), constants, self.unit_set.clone(), self.involution.clone())
    }
}

impl RingRef {
    pub fn resolve(&self) -> Result<ZPlusRing> {
        match self {
            RingRef::Inline(f) => f.to_ring(),
            RingRef::Named(name) => named_ring(name),
        }
    }
}

/// `"Z"` or `"sl2:<level>"`.
pub fn named_ring(name: &str) -> Result<ZPlusRing> {
    if name == "Z" {
        return Ok(ZPlusRing::integers());
    }
    let level = name
        .strip_prefix("sl2:")
        .and_then(|l| l.parse::<u32>().ok())
        .ok_or_else(|| Error::Parse(format!("unknown ring reference {name:?}; expected \"Z\" or \"sl2:<level>\"")))?;
    Ok(fusion_ring(Sl2Level::new(level)?))
}

impl ModuleFile {
    pub fn from_module(ring: RingRef, module: &ZPlusModule, based: bool) -> Result<Self> {
        Ok(ModuleFile {
            ring,
            module_rank: module.module_rank(),
            action: module.action().iter().map(matrix_rows).collect::<Result<_>>()?,
            based,
        })
    }

    pub fn to_module(&self) -> Result<ZPlusModule> {
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, m)| square(m, self.module_rank, &format!("action[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if action.is_empty() {
            return Err(Error::Parse("action is empty".into()));
        }
        ZPlusModule::new(action)
    }
}

impl GraphFile {
    pub fn from_graph(g: &LoopyGraph) -> Result<Self> {
        Ok(GraphFile { size: g.size(), adjacency: matrix_rows(g.adjacency())? })
    }

    pub fn to_graph(&self) -> Result<LoopyGraph> {
        LoopyGraph::new(square(&self.adjacency, self.size, "adjacency")?)
    }
}

impl InvariantFile {
    pub fn from_invariant(inv: &ModularInvariant) -> Result<Self> {
        Ok(InvariantFile { level: inv.level().l(), z: matrix_rows(inv.matrix())? })
    }

    pub fn to_invariant(&self) -> Result<ModularInvariant> {
        let level = Sl2Level::new(self.level)?;
        ModularInvariant::new(level, square(&self.z, level.rank(), "Z")?)
    }
}

impl GroupFile {
    pub fn from_group(g: &SmallGroup) -> Self {
        GroupFile { order: g.order(), table: g.table().to_vec(), labels: g.labels().to_vec() }
    }

    pub fn to_group(&self) -> Result<SmallGroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!("table has {} rows, order is {}", self.table.len(), self.order)));
        }
        SmallGroup::from_table(self.table.clone(), Some(self.labels.clone()))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build, DynkinType};

    #[test]
    fn ring_round_trip() {
        let ring = fusion_ring(Sl2Level::new(3).unwrap());
        let f = RingFile::from_ring(&ring).unwrap();
        let back: RingFile = serde_json::from_str(&to_json(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_ring().unwrap(), ring);
    }

    #[test]
    fn module_with_named_ring() {
        let text = r#"{"ring": "sl2:1", "module_rank": 1, "action": [[[1]], [[1]]], "based": true}"#;
        let f: ModuleFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.ring, RingRef::Named("sl2:1".into()));
        assert_eq!(f.ring.resolve().unwrap().rank(), 2);
        assert_eq!(f.to_module().unwrap().module_rank(), 1);
        assert!(named_ring("sl3:1").is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = build("E6".parse::<DynkinType>().unwrap()).unwrap();
        let f = GraphFile::from_graph(&g).unwrap();
        assert_eq!(f.to_graph().unwrap(), g);
        let bad = GraphFile { size: 2, adjacency: vec![vec![0, 1]] };
        assert!(matches!(bad.to_graph(), Err(Error::Parse(_))));
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_rows(&[vec![BigInt::from(u64::MAX)]]);
        assert!(matches!(matrix_rows(&m), Err(Error::Overflow(_))));
    }
}
