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


//! Dense state preparation at constant measurement depth.

use dynq::audit::audit;
use dynq::primitives::Mode;
use dynq::run::{evaluate, Sampling};
use dynq::sim::C64;
use dynq::synth::{build_qsp, QspVariant, TargetState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dynq::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let one = [C64::new(1.0, 0.0)];
    for n in 1..=3 {
        let t = TargetState::random(n, &mut rng);
        let b = build_qsp(&t, QspVariant::OnehotFourN, Mode::Protocol)?;
        let r = audit(&b);
        let e = evaluate(&b, &one, &t.to_dense(), Sampling::Shots { count: 20, seed: 0 })?;
        println!(
            "n={n}: wires {}, ancilla {}, layers {}, min fidelity {:.12}, peak support {}",
            b.circuit.num_wires(),
            r.ancilla,
            r.measurement_layers,
            e.min_fidelity,
            e.max_support
        );
    }
    let t = TargetState::random(4, &mut rng);
    let b = build_qsp(&t, QspVariant::SizeOptTwoN, Mode::Protocol)?;
    println!("size-optimized, 4 qubits: {} wires, {} layers", b.circuit.num_wires(), audit(&b).measurement_layers);
    Ok(())
}
