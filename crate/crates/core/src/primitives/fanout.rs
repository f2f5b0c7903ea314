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

//! Measurement-based fan-out and parity.

use super::builder::{Affine, Builder, Round};
use super::plan::FanoutPlan;
use crate::circuit::{Gate, Instruction};

/// A fan-out round whose feedback has not been emitted yet.
#[derive(Clone, Debug, Default)]
pub struct FanoutParts {
    pub round: Round,
    pub x_fix: Vec<(usize, Affine)>,
    pub control: usize,
    /// Phase repair on the control.
    pub z_fix: Affine,
    pub resets: Vec<Instruction>,
    pub ancilla: Vec<usize>,
}

impl FanoutParts {
    pub fn into_round(mut self, b: &Builder) -> Round {
        for (w, a) in &self.x_fix {
            self.round.post.extend(b.x_fix(*w, a));
        }
        self.round.post.extend(b.z_fix(self.control, &self.z_fix));
        self.round.post.extend(self.resets);
        self.round
    }
}

/// Adds `control` into every wire of `targets`.
pub fn fanout_parts(b: &mut Builder, control: usize, targets: &[usize], plan: &FanoutPlan) -> FanoutParts {
    let mut parts = FanoutParts { control, ..Default::default() };
    if targets.is_empty() {
        return parts;
    }
    if b.oracle() {
        parts.round.pre.push(Gate::fanout(control, targets).into());
        return parts;
    }
    let blocks: Vec<&[usize]> = targets.chunks(plan.p).collect();
    let m = blocks.len();
    if b.qudit {
        qudit_body(b, control, &blocks, &mut parts);
    } else {
        qubit_body(b, control, &blocks, &mut parts);
    }
    debug_assert_eq!(parts.ancilla.len(), if b.qudit { 2 * m } else { 2 * m - 1 });
    parts
}

fn qubit_body(b: &mut Builder, control: usize, blocks: &[&[usize]], parts: &mut FanoutParts) {
    let m = blocks.len();
    // Interleaved allocation: a_1, e_1, a_2, e_2, ..., a_m.
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for j in 0..m {
        odd.push(b.ancilla(1)[0]);
        if j + 1 < m {
            even.push(b.ancilla(1)[0]);
        }
    }
    let pre = &mut parts.round.pre;
    for &a in &odd {
        pre.push(b.h(a));
    }
    for (j, blk) in blocks.iter().enumerate() {
        for &t in *blk {
            pre.push(b.add(odd[j], t));
        }
        if j + 1 < m {
            pre.push(b.add(odd[j], even[j]));
        }
    }
    pre.push(b.add(control, odd[0]));
    for j in 0..m.saturating_sub(1) {
        pre.push(b.add(even[j], odd[j + 1]));
        pre.push(b.h(even[j]));
    }
    let mut odd_slots = Vec::new();
    let mut even_slots = Vec::new();
    for j in 0..m {
        odd_slots.push(b.slot());
        if j + 1 < m {
            even_slots.push(b.slot());
        }
    }
    finish(parts, blocks, &odd, &even, &odd_slots, &even_slots, false);
}

fn qudit_body(b: &mut Builder, control: usize, blocks: &[&[usize]], parts: &mut FanoutParts) {
    let m = blocks.len();
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for _ in 0..m {
        odd.push(b.ancilla(1)[0]);
        even.push(b.ancilla(1)[0]);
    }
    let pre = &mut parts.round.pre;
    for &h in &even {
        pre.push(b.h(h));
    }
    pre.push(b.add(control, odd[0]));
    for (j, blk) in blocks.iter().enumerate() {
        for &t in *blk {
            pre.push(b.add(even[j], t));
        }
        if j + 1 < m {
            pre.push(b.add(even[j], odd[j + 1]));
        }
        pre.push(b.sub(even[j], odd[j]));
    }
    for &h in &even {
        pre.push(b.h(h));
    }
    let mut odd_slots = Vec::new();
    let mut even_slots = Vec::new();
    for _ in 0..m {
        odd_slots.push(b.slot());
        even_slots.push(b.slot());
    }
    finish(parts, blocks, &odd, &even, &odd_slots, &even_slots, true);
}

fn finish(
    parts: &mut FanoutParts,
    blocks: &[&[usize]],
    odd: &[usize],
    even: &[usize],
    odd_slots: &[usize],
    even_slots: &[usize],
    negate_phase: bool,
) {
    for (w, s) in odd.iter().zip(odd_slots).chain(even.iter().zip(even_slots)) {
        parts.round.meas.push(Instruction::measure(*w, *s));
        parts.resets.push(Instruction::reset(*w));
    }
    let mut prefix = Affine::default();
    for (j, blk) in blocks.iter().enumerate() {
        prefix = prefix.plus(&Affine::slot(odd_slots[j]));
        for &t in *blk {
            parts.x_fix.push((t, prefix.clone()));
        }
    }
    let z = Affine::sum(even_slots);
    parts.z_fix = if negate_phase { z.negated() } else { z };
    parts.ancilla = odd.iter().chain(even).copied().collect();
}

/// XOR of `sources` into `target`: a fan-out from the target conjugated
/// by Hadamards on every wire. Qubits only.
pub fn parity_round(b: &mut Builder, sources: &[usize], target: usize, plan: &FanoutPlan) -> (Round, Vec<usize>) {
    if b.oracle() {
        let r = Round { pre: vec![Gate::parity(sources, target).into()], ..Default::default() };
        return (r, Vec::new());
    }
    let mut before: Vec<Instruction> = sources.iter().chain([&target]).map(|&w| b.h(w)).collect();
    let parts = fanout_parts(b, target, sources, plan);
    let anc = parts.ancilla.clone();
    let mut round = parts.into_round(b);
    before.append(&mut round.pre);
    round.pre = before;
    round.post.extend(sources.iter().chain([&target]).map(|&w| b.h(w)));
    (round, anc)
}
