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


//! Qutrit fan-out: the source digit is added mod 3 into every target.

use dynq::audit::audit;
use dynq::primitives::{build_fanout_qudit, build_ghz_extend_qudit, Mode};
use dynq::run::{evaluate, oracle_output, Sampling};
use dynq::synth::random_unit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dynq::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (n, c, d) = (4, 2, 3);
    let b = build_fanout_qudit(n, c, d, Mode::Protocol)?;
    let input = random_unit(3usize.pow(n as u32 + 1), &mut rng);
    let want = oracle_output(&build_fanout_qudit(n, c, d, Mode::Oracle)?, &input)?;
    let e = evaluate(&b, &input, &want, Sampling::Branches { cap: 1 << 12 })?;
    println!("qutrit fanout n={n}: {} branches, min fidelity {:.12}, layers {}", e.runs, e.min_fidelity, audit(&b).measurement_layers);

    let ghz = build_ghz_extend_qudit(n, c, d, Mode::Protocol)?;
    let amps = random_unit(3, &mut rng);
    let mut want = vec![dynq::sim::C64::new(0.0, 0.0); 3usize.pow(n as u32)];
    for (k, a) in amps.iter().enumerate() {
        want[(0..n).fold(0, |acc, _| acc * 3 + k)] = *a;
    }
    let e = evaluate(&ghz, &amps, &want, Sampling::Branches { cap: 1 << 12 })?;
    println!("qutrit GHZ copy n={n}: {} branches, min fidelity {:.12}", e.runs, e.min_fidelity);
    Ok(())
}
