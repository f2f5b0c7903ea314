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


//! Constant-depth fan-out and GHZ copy/recover, checked on every branch.

use dynq::audit::audit;
use dynq::primitives::{build_fanout, build_ghz_extend, build_recover, Mode};
use dynq::run::{evaluate, oracle_output, Sampling};
use dynq::synth::random_unit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dynq::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (n, c) = (9, 3);
    let fan = build_fanout(n, c, Mode::Protocol)?;
    let input = random_unit(1 << (n + 1), &mut rng);
    let want = oracle_output(&build_fanout(n, c, Mode::Oracle)?, &input)?;
    let e = evaluate(&fan, &input, &want, Sampling::Branches { cap: 1 << 12 })?;
    let r = audit(&fan);
    println!("fanout n={n} c={c}: {} branches, min fidelity {:.12}", e.runs, e.min_fidelity);
    println!("  ancilla {}, measurement layers {}, depth {}", r.ancilla, r.measurement_layers, r.depth);

    let ghz = build_ghz_extend(9, 4, Mode::Protocol)?;
    println!("ghz n=9 c=4: ancilla {}, layers {}", ghz.ancilla.len(), audit(&ghz).measurement_layers);
    let rec = build_recover(9, Mode::Protocol)?;
    println!("recover n=9: ancilla {}, layers {}", rec.ancilla.len(), audit(&rec).measurement_layers);
    print!("{}", dynq::circuit::serialize(&ghz.circuit));
    Ok(())
}
