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

//! Loading magnitudes into one-hot form: `Σ|α_j| |e_j⟩`.
//!
//! Every wire `k−1` is rotated by `Ry(2θ_k)`; flags
//! `p_k = [wires 0..k all zero]` then let only the first excited wire keep
//! its rotation, and a final zero-controlled X marks the all-zero branch.

use super::angles::{angle_schedule, AngleSchedule};
use crate::circuit::{Control, Gate, Params, Role};
use crate::error::{Error, Result};
use crate::primitives::ghz::{copy_parts, recover_parts};
use crate::primitives::{Builder, GadgetBuild, Mode, Round};

/// Declared layers of a prefix stage: copy, Toffoli layer, recover.
pub const PREFIX_LAYERS: usize = 8;
/// Declared layers of one multi-controlled X layer.
pub const MCX_LAYERS: usize = 6;

/// Measurement layers of the one-hot loader on `len` wires.
pub fn onehot_layers(len: usize) -> usize {
    match len {
        0 | 1 => 0,
        2 => MCX_LAYERS,
        // A single prefix flag reads one instance per wire: nothing to copy.
        3 => 3 * MCX_LAYERS,
        _ => 2 * PREFIX_LAYERS + MCX_LAYERS,
    }
}

/// XORs `[z_0 … z_k all zero]` into `p[k−1]` for `k = 1 … len(p)`.
/// `z` needs at least `len(p)` wires; only those are read.
pub(crate) fn prefix_flags(b: &mut Builder, z: &[usize], p: &[usize]) -> Result<()> {
    let m = p.len();
    if m == 0 {
        return Ok(());
    }
    // Wire i feeds flags i+1 … m, so it needs m−i instances.
    let mut copy = Round::default();
    let mut instances: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (i, &w) in z.iter().take(m).enumerate() {
        let (fresh, parts) = copy_parts(b, w, m - i - 1);
        copy = copy.merge(parts.into_round(b));
        let mut inst = vec![w];
        inst.extend(fresh);
        instances.push(inst);
    }
    b.emit(copy)?;
    let gates = (1..=m)
        .map(|k| {
            let controls = (0..k).map(|i| Control { wire: instances[i][k - 1 - i], value: 0 }).collect();
            Gate::mcx(controls, p[k - 1])
        })
        .collect();
    b.mcx_layer(gates)?;
    let rounds: Vec<Round> = instances.iter().map(|inst| recover_parts(b, inst).into_round(b)).collect();
    b.emit(Round::merge_all(rounds))
}

/// Emits the loader onto `z` (all `|0⟩`).
pub(crate) fn emit_onehot(b: &mut Builder, z: &[usize], sched: &AngleSchedule) -> Result<()> {
    let n = z.len();
    if n == 1 {
        return b.push(Gate::x(z[0])).map(|_| ());
    }
    for k in 1..n {
        b.push(Gate::ry(2.0 * sched.theta(k), z[k - 1]))?;
    }
    let p = b.ancilla(n - 2);
    prefix_flags(b, z, &p)?;
    for k in 2..n {
        b.push(Gate::ry(-2.0 * sched.theta(k), z[k - 1]))?;
    }
    for k in 1..n - 1 {
        b.push(Gate::ry(2.0 * sched.theta(k + 1), z[k]).ctrl(p[k - 1], 1))?;
    }
    prefix_flags(b, z, &p)?;
    let controls = z[..n - 1].iter().map(|&w| Control { wire: w, value: 0 }).collect();
    b.mcx_layer(vec![Gate::mcx(controls, z[n - 1])])
}

/// `|0⟩^N → Σ|α_j| |e_j⟩` for `N` nonnegative magnitudes with unit norm.
pub fn build_onehot_prep(magnitudes: &[f64], mode: Mode) -> Result<GadgetBuild> {
    if magnitudes.len() < 2 {
        return Err(Error::InvalidParameter("one-hot loading needs at least two magnitudes".into()));
    }
    let sched = angle_schedule(magnitudes)?;
    let mut b = Builder::new(2, mode);
    let z = b.wires(magnitudes.len(), Role::Output);
    emit_onehot(&mut b, &z, &sched)?;
    let params = Params { n: Some(magnitudes.len().next_power_of_two().trailing_zeros() as usize), ..Default::default() };
    Ok(GadgetBuild::finish(b, "onehot", params, Vec::new(), z, super::encode::declared(mode, onehot_layers(magnitudes.len()))))
}
