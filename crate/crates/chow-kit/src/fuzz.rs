//! Conjecture fuzzing: seeded random pure complexes run through the full
//! analysis, persisted as self-contained JSONL records that replay exactly
//! from (seed, generator_params).

use serde::{Deserialize, Serialize};

use crate::chow::{analyze, ChowError};
use crate::poset::{binomial, random_pure_complex};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub num_vertices: u32,
    pub rank: u32,
    pub num_facets: u64,
}

/// One fuzz instance. Everything except `runtime_ms` is a pure function of
/// (seed, generator_params).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzRecord {
    pub seed: u64,
    pub generator_params: GenParams,
    pub h_vector: Vec<i64>,
    pub h_positive: bool,
    pub chow: String,
    pub chow_dual: String,
    pub aug: String,
    pub real_rooted_verdicts: [bool; 3],
    pub interlace_dual_aug: bool,
    pub interlace_chow_aug: bool,
    pub runtime_ms: u64,
}

impl FuzzRecord {
    /// True when the conjecture's statements all hold on this instance.
    pub fn conjecture_holds(&self) -> bool {
        self.real_rooted_verdicts.iter().all(|&b| b)
            && self.interlace_dual_aug
            && self.interlace_chow_aug
    }

    /// Field equality ignoring the timing.
    pub fn same_outcome(&self, other: &FuzzRecord) -> bool {
        self.seed == other.seed
            && self.generator_params == other.generator_params
            && self.h_vector == other.h_vector
            && self.h_positive == other.h_positive
            && self.chow == other.chow
            && self.chow_dual == other.chow_dual
            && self.aug == other.aug
            && self.real_rooted_verdicts == other.real_rooted_verdicts
            && self.interlace_dual_aug == other.interlace_dual_aug
            && self.interlace_chow_aug == other.interlace_chow_aug
    }

    /// Canonical one-line JSON with sorted keys.
    pub fn to_json_line(&self) -> String {
        let value = serde_json::to_value(self).expect("record serializes");
        serde_json::to_string(&value).expect("value serializes")
    }
}

/// Resolves a "random" facet count deterministically from the seed: a fresh
/// SplitMix64 stream drawing uniformly from 1..=C(num_vertices, rank).
pub fn random_facet_count(num_vertices: u32, rank: u32, seed: u64) -> u64 {
    let total = binomial(num_vertices as u64, rank as u64);
    1 + SplitMix64::new(seed).next_below(total)
}

/// Generates and analyzes one instance.
pub fn run_instance(params: GenParams, seed: u64) -> Result<FuzzRecord, ChowError> {
    let start = std::time::Instant::now();
    let poset = random_pure_complex(params.num_vertices, params.rank, params.num_facets, seed)?;
    let analysis = analyze(&poset)?;
    let v = &analysis.verdicts;
    Ok(FuzzRecord {
        seed,
        generator_params: params,
        h_vector: analysis.h.clone(),
        h_positive: v.h_positive,
        chow: analysis.result.chow.to_coeff_string(),
        chow_dual: analysis.result.chow_dual.to_coeff_string(),
        aug: analysis.result.aug.to_coeff_string(),
        real_rooted_verdicts: [
            v.real_rooted_chow,
            v.real_rooted_chow_dual,
            v.real_rooted_aug,
        ],
        interlace_dual_aug: v.interlace_dual_aug,
        interlace_chow_aug: v.interlace_chow_aug,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
