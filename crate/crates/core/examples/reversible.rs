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


//! A reversible function as two rounds of swaps in one-hot form.

use dynq::audit::audit;
use dynq::primitives::Mode;
use dynq::run::{evaluate, Sampling};
use dynq::sim::C64;
use dynq::synth::{build_reversible, ReversibleSpec};

fn main() -> dynq::error::Result<()> {
    let f = ReversibleSpec::new(3, vec![3, 6, 0, 5, 7, 1, 2, 4])?;
    let b = build_reversible(&f, Mode::Protocol)?;
    println!("f = {:?}; swap rounds {:?}", f.table, f.involutions());
    println!("layers {}, ancilla {}", audit(&b).measurement_layers, b.ancilla.len());
    for x in 0..8 {
        let mut input = vec![C64::new(0.0, 0.0); 8];
        input[x] = C64::new(1.0, 0.0);
        let mut want = vec![C64::new(0.0, 0.0); 8];
        want[f.table[x]] = C64::new(1.0, 0.0);
        let e = evaluate(&b, &input, &want, Sampling::Shots { count: 2, seed: x as u64 })?;
        println!("  {x:03b} -> {:03b}  fidelity {:.12}", f.table[x], e.min_fidelity);
    }
    Ok(())
}
