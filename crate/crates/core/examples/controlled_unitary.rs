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


//! Controlled preparation, a Bell pair, and an entangled unitary.

use dynq::audit::audit;
use dynq::primitives::Mode;
use dynq::run::{evaluate, Sampling};
use dynq::sim::C64;
use dynq::synth::{build_controlled_qsp_n, build_entangled_unitary, random_unit, Unitary};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dynq::error::Result<()> {
    let (o, z, r) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    // |0⟩ ↦ |0⟩|0⟩, |1⟩ ↦ |1⟩|1⟩ on a |+⟩ control.
    let bell = build_controlled_qsp_n(&[vec![o, z], vec![z, o]], Mode::Protocol)?;
    let e = evaluate(&bell, &[r, r], &[r, z, z, r], Sampling::Shots { count: 50, seed: 0 })?;
    println!("Bell pair: min fidelity {:.15}, layers {}", e.min_fidelity, audit(&bell).measurement_layers);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = Unitary::random(2, &mut rng);
    let b = build_entangled_unitary(&u, Mode::Protocol)?;
    let alpha = random_unit(4, &mut rng);
    let mut want = vec![z; 16];
    for (j, a) in alpha.iter().enumerate() {
        for (k, x) in u.column(j).iter().enumerate() {
            want[j * 4 + k] = a * x;
        }
    }
    let e = evaluate(&b, &alpha, &want, Sampling::Shots { count: 10, seed: 0 })?;
    println!("Σ α_j |j⟩U|j⟩, n=2: min fidelity {:.12}, layers {}", e.min_fidelity, audit(&b).measurement_layers);
    Ok(())
}
