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


//! Resource reports for every catalog construction.

use dynq::audit::audit;
use dynq::catalog::{self, BuildSpec, NAMES};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let spec = BuildSpec { n: 2, ..Default::default() };
    println!("{:<12} {:>6} {:>7} {:>6} {:>6} budget", "name", "depth", "layers", "anc", "size");
    for name in NAMES {
        match catalog::build(name, &spec, &mut rng) {
            Ok(b) => {
                let r = audit(&b);
                let ok = if r.budget.pass { "ok" } else { "VIOLATED" };
                println!("{name:<12} {:>6} {:>7} {:>6} {:>6} {ok}", r.depth, r.measurement_layers, r.ancilla, r.size_expanded);
            }
            Err(e) => println!("{name:<12} not buildable here: {e}"),
        }
    }
}
