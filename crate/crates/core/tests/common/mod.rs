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

//! Shared test helpers.
#![allow(dead_code)]

pub mod dense;

use dynq::primitives::GadgetBuild;
use dynq::sim::{dense_fidelity, SparseState, Simulator, C64};
use rand::Rng;

pub const TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Haar-ish random normalized vector.
pub fn random_vector<R: Rng>(rng: &mut R, len: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..len).map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= n;
    }
    v
}

pub fn basis_vector(len: usize, idx: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); len];
    v[idx] = C64::new(1.0, 0.0);
    v
}

/// Places `input` on the build's input wires, everything else `|0⟩`.
pub fn prepare(build: &GadgetBuild, input: &[C64]) -> SparseState {
    SparseState::from_amplitudes(build.circuit.dims(), &build.inputs, input).unwrap()
}

/// Runs every branch and returns (weight, output vector) pairs. Panics if
/// any ancilla is left nonzero.
pub fn branch_outputs(build: &GadgetBuild, input: &[C64], cap: usize) -> Vec<(f64, Vec<C64>)> {
    let init = prepare(build, input);
    let branches = Simulator::default().run_all_branches(&build.circuit, &init, cap).unwrap();
    let total: f64 = branches.iter().map(|b| b.weight).sum();
    assert!((total - 1.0).abs() < 1e-10, "branch weights sum to {total}");
    branches
        .into_iter()
        .map(|b| (b.weight, b.result.state.extract(&build.outputs).expect("ancilla left entangled")))
        .collect()
}

/// Smallest fidelity over all branches against `expected`.
pub fn min_branch_fidelity(build: &GadgetBuild, input: &[C64], expected: &[C64], cap: usize) -> f64 {
    branch_outputs(build, input, cap).iter().map(|(_, v)| dense_fidelity(v, expected)).fold(1.0, f64::min)
}

pub fn min_shot_fidelity(build: &GadgetBuild, input: &[C64], expected: &[C64], shots: u64, seed: u64) -> f64 {
    let init = prepare(build, input);
    let sim = Simulator::default();
    (0..shots)
        .map(|i| {
            let r = sim.run_shot(&build.circuit, &init, seed.wrapping_add(i)).unwrap();
            dense_fidelity(&r.state.extract(&build.outputs).expect("ancilla left entangled"), expected)
        })
        .fold(1.0, f64::min)
}
