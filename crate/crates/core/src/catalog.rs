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

//! Every construction by name, with random data where a builder needs it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::primitives::{self as p, GadgetBuild, Mode};
use crate::synth::{self as s, QspVariant, ReversibleSpec, TargetState, Unitary};

/// Names accepted by [`build`], in the order of [`crate::audit::RULES`].
pub const NAMES: &[&str] = &[
    "ghz",
    "ghz_d",
    "recover",
    "recover_d",
    "fanout",
    "fanout_d",
    "parity",
    "fused_ry",
    "fused_z",
    "cc_fused_ry",
    "onehot",
    "tobinary",
    "toonehot",
    "qsp",
    "qsp-2n",
    "sparse",
    "cqsp1",
    "cqspn",
    "unitary",
    "reversible",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildSpec {
    pub n: usize,
    pub c: usize,
    pub d: u32,
    pub s: usize,
    pub mode: Mode,
}

impl Default for BuildSpec {
    fn default() -> Self {
        BuildSpec { n: 2, c: 2, d: 3, s: 2, mode: Mode::Protocol }
    }
}

fn angles<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

fn need(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

/// Builds `name` at `spec`, drawing targets, angles or permutations from `rng`.
pub fn build<R: Rng>(name: &str, spec: &BuildSpec, rng: &mut R) -> Result<GadgetBuild> {
    let BuildSpec { n, c, d, s: terms, mode } = *spec;
    need(n >= 1, "n must be at least 1")?;
    match name {
        "ghz" => p::build_ghz_extend(n, c, mode),
        "ghz_d" => p::build_ghz_extend_qudit(n, c, d, mode),
        "recover" => p::build_recover(n, mode),
        "recover_d" => p::build_recover_qudit(n, d, mode),
        "fanout" => p::build_fanout(n, c, mode),
        "fanout_d" => p::build_fanout_qudit(n, c, d, mode),
        "parity" => p::build_parity(n, c, mode),
        "fused_ry" => p::build_fused_ry(&angles(n, rng), mode),
        "fused_z" => p::build_fused_z(&angles(n, rng), mode),
        "cc_fused_ry" => p::build_cc_fused_ry(&angles(n, rng), mode),
        "onehot" => {
            let t = TargetState::random(n, rng);
            let mags: Vec<f64> = t.to_dense().iter().map(|a| a.norm()).collect();
            s::build_onehot_prep(&mags, mode)
        }
        "tobinary" => s::build_onehot_to_binary(n, mode),
        "toonehot" => s::build_binary_to_onehot(n, mode),
        "qsp" => s::build_qsp(&TargetState::random(n, rng), QspVariant::OnehotFourN, mode),
        // `n` is the half width the build reports; the target has 2n qubits.
        "qsp-2n" => s::build_qsp(&TargetState::random(2 * n, rng), QspVariant::SizeOptTwoN, mode),
        "sparse" => {
            need(terms >= 1 && (terms as u128) <= (1u128 << n.min(64)), "s must be between 1 and 2^n")?;
            s::build_sparse_qsp(&TargetState::random_sparse(n, terms, rng), mode)
        }
        "cqsp1" => s::build_controlled_qsp_1(&TargetState::random(n, rng), mode),
        "cqspn" => {
            let targets: Vec<_> = (0..1usize << n).map(|_| s::random_unit(1 << n, rng)).collect();
            s::build_controlled_qsp_n(&targets, mode)
        }
        "unitary" => s::build_entangled_unitary(&Unitary::random(n, rng), mode),
        "reversible" => s::build_reversible(&ReversibleSpec::random(n, rng), mode),
        other => Err(Error::UnknownConstruction(other.to_string())),
    }
}
