// Copyright 2026 The dynq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Running a build on an input and scoring its output.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primitives::{GadgetBuild, Mode};
use crate::sim::{dense_fidelity, ShotResult, Simulator, SparseState, C64};

/// Fidelity floor every run must clear.
pub const FIDELITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sampling {
    /// `count` shots seeded `seed, seed+1, …`.
    Shots { count: u64, seed: u64 },
    /// Every branch, failing past `cap`.
    Branches { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub runs: usize,
    pub min_fidelity: f64,
    /// Shot average, or branch average weighted by probability.
    pub mean_fidelity: f64,
    pub max_support: usize,
    /// Hash of every transcript in run order.
    pub transcript_digest: String,
}

impl Evaluation {
    pub fn pass(&self) -> bool {
        self.min_fidelity >= 1.0 - FIDELITY_TOL
    }
}

/// `input` on the build's input wires, `|0⟩` elsewhere.
pub fn initial_state(build: &GadgetBuild, input: &[C64]) -> Result<SparseState> {
    SparseState::from_amplitudes(build.circuit.dims(), &build.inputs, input)
}

/// Output register of a finished run. Fails if an ancilla is left set.
pub fn output_vector(build: &GadgetBuild, run: &ShotResult) -> Result<Vec<C64>> {
    run.state.extract(&build.outputs)
}

fn digest(transcripts: &[Vec<Option<u32>>]) -> String {
    let mut h = DefaultHasher::new();
    transcripts.hash(&mut h);
    format!("{:016x}", h.finish())
}

/// Runs `build` on `input` and compares each outcome with `expected`.
pub fn evaluate(build: &GadgetBuild, input: &[C64], expected: &[C64], sampling: Sampling) -> Result<Evaluation> {
    let init = initial_state(build, input)?;
    let sim = Simulator::default();
    let runs: Vec<(f64, ShotResult)> = match sampling {
        Sampling::Shots { count, seed } => {
            if count == 0 {
                return Err(Error::InvalidParameter("at least one shot is needed".into()));
            }
            let w = 1.0 / count as f64;
            (0..count)
                .map(|i| sim.run_shot(&build.circuit, &init, seed.wrapping_add(i)).map(|r| (w, r)))
                .collect::<Result<_>>()?
        }
        Sampling::Branches { cap } => sim
            .run_all_branches(&build.circuit, &init, cap)?
            .into_iter()
            .map(|b| (b.weight, b.result))
            .collect(),
    };
    let total: f64 = runs.iter().map(|r| r.0).sum();
    let mut min = f64::INFINITY;
    let mut mean = 0.0;
    for (w, r) in &runs {
        let f = dense_fidelity(&output_vector(build, r)?, expected);
        min = min.min(f);
        mean += w * f / total;
    }
    let transcripts: Vec<_> = runs.iter().map(|r| r.1.transcript.clone()).collect();
    Ok(Evaluation {
        runs: runs.len(),
        min_fidelity: min,
        mean_fidelity: mean,
        max_support: runs.iter().flat_map(|r| r.1.support_trace.iter().copied()).max().unwrap_or(0),
        transcript_digest: digest(&transcripts),
    })
}

/// Output of the measurement-free twin on `input`.
pub fn oracle_output(twin: &GadgetBuild, input: &[C64]) -> Result<Vec<C64>> {
    if twin.circuit.is_oracle() || twin.circuit.measurement_layers() == 0 {
        let r = Simulator::default().run_shot(&twin.circuit, &initial_state(twin, input)?, 0)?;
        return output_vector(twin, &r);
    }
    Err(Error::Internal(format!("{} is not an oracle build", twin.circuit.meta.construction)))
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Protocol => "protocol",
        Mode::Oracle => "oracle",
    }
}
