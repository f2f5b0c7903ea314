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


//! Sparse targets: a W state and a random 3-term state on 8 qubits.

use dynq::audit::audit;
use dynq::primitives::Mode;
use dynq::run::{evaluate, Sampling};
use dynq::sim::C64;
use dynq::synth::{build_sparse_qsp, TargetState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dynq::error::Result<()> {
    let h = C64::new(0.5, 0.0);
    let w = TargetState::sparse(4, vec![(1, h), (2, h), (4, h), (8, h)])?;
    let t = TargetState::random_sparse(8, 3, &mut ChaCha8Rng::seed_from_u64(4));
    for (name, t) in [("W_4", w), ("random s=3", t)] {
        let b = build_sparse_qsp(&t, Mode::Protocol)?;
        let e = evaluate(&b, &[C64::new(1.0, 0.0)], &t.to_dense(), Sampling::Shots { count: 10, seed: 0 })?;
        let r = audit(&b);
        println!("{name}: ancilla {}, layers {}, min fidelity {:.12}", r.ancilla, r.measurement_layers, e.min_fidelity);
    }
    Ok(())
}
