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


//! Parse a hand-written dynamic circuit and enumerate its branches.
//!
//! `barrier;` closes a moment; instructions in one moment act on disjoint wires.

use dynq::circuit::parse;
use dynq::sim::{write_state, SparseState, Simulator};

const TEXT: &str = "\
qreg q[3] dim=2;
creg c[1] mod=2;
h q[0];
barrier;
cx q[0], q[1];
barrier;
measure q[1] -> c[0];
barrier;
if (c0 mod 2 == 1) x q[2];
reset q[1];
barrier;
";

fn main() -> dynq::error::Result<()> {
    let c = parse(TEXT)?;
    let init = SparseState::zero(c.dims());
    for b in Simulator::default().run_all_branches(&c, &init, 16)? {
        println!("weight {:.3} transcript {:?}", b.weight, b.result.transcript);
        print!("{}", write_state(&b.result.state));
    }
    Ok(())
}
