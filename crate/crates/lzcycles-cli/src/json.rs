//! JSON records for barcodes and cycle sequences.

use lzcycles::complex::{Chain, SimplicialComplex};
use lzcycles::levelset::LevelsetContext;
use lzcycles::optcycles::CycleSequence;
use lzcycles::zigzag::LevelsetInterval;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub index: usize,
    #[serde(rename = "type")]
    pub kind: String,
    pub b: usize,
    pub d: usize,
    pub birth_value: f64,
    pub death_value: f64,
    pub beta: usize,
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub interval: usize,
    pub slot: usize,
    pub simplices: Vec<Vec<u32>>,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub interval: usize,
    pub chains: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub intervals: Vec<IntervalRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub cycles: Vec<CycleRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_weight: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessRecord>,
}

pub fn interval_record(
    ctx: &LevelsetContext,
    index: usize,
    iv: &LevelsetInterval,
) -> IntervalRecord {
    IntervalRecord {
        index,
        kind: iv.kind.code().to_string(),
        b: iv.b,
        d: iv.d,
        birth_value: ctx.crit.value(iv.b),
        death_value: ctx.crit.value(iv.d),
        beta: iv.beta,
        delta: iv.delta,
    }
}

pub fn cycle_records(
    cx: &SimplicialComplex,
    index: usize,
    seq: &CycleSequence,
) -> Vec<CycleRecord> {
    seq.cycles
        .iter()
        .map(|(slot, z)| CycleRecord {
            interval: index,
            slot: *slot,
            simplices: z.to_vertex_lists(cx),
            weight: z.weight(cx),
        })
        .collect()
}

pub fn witness_record(cx: &SimplicialComplex, index: usize, chains: &[Chain]) -> WitnessRecord {
    WitnessRecord {
        interval: index,
        chains: chains.iter().map(|a| a.to_vertex_lists(cx)).collect(),
    }
}
