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

//! Copying one wire onto many, and undoing it.

use super::builder::{Affine, Builder, Round};
use super::plan::GhzPlan;
use crate::circuit::{Gate, Instruction};

/// A copy round whose feedback has not been emitted yet.
#[derive(Clone, Debug, Default)]
pub struct GhzParts {
    pub round: Round,
    /// Per data wire, the shift that completes the copy.
    pub x_fix: Vec<(usize, Affine)>,
    pub resets: Vec<Instruction>,
    pub ancilla: Vec<usize>,
}

impl GhzParts {
    /// Feedback plus resets appended to the round.
    pub fn into_round(mut self, b: &Builder) -> Round {
        for (w, a) in &self.x_fix {
            self.round.post.extend(b.x_fix(*w, a));
        }
        self.round.post.extend(self.resets);
        self.round
    }
}

/// Doubling tree from `block[0]` over the whole block.
fn tree(b: &Builder, block: &[usize], out: &mut Vec<Instruction>) {
    let mut filled = 1;
    while filled < block.len() {
        let step = filled.min(block.len() - filled);
        for i in 0..step {
            out.push(b.add(block[i], block[filled + i]));
        }
        filled += step;
    }
}

/// Spreads the state of `data[0]` over `data` (others start at `|0⟩`).
pub fn ghz_parts(b: &mut Builder, data: &[usize], plan: &GhzPlan) -> GhzParts {
    let mut parts = GhzParts::default();
    if data.len() < 2 {
        return parts;
    }
    if b.oracle() {
        parts.round.pre.push(Gate::fanout(data[0], &data[1..]).into());
        return parts;
    }
    let blocks: Vec<&[usize]> = data.chunks(plan.k).collect();
    let pre = &mut parts.round.pre;
    for (j, blk) in blocks.iter().enumerate() {
        if j > 0 {
            pre.push(b.h(blk[0]));
        }
        tree(b, blk, pre);
    }
    let anc = b.ancilla(blocks.len() - 1);
    let mut prefix = Affine::default();
    for j in 1..blocks.len() {
        let g = anc[j - 1];
        let s = b.slot();
        parts.round.pre.push(b.add(*blocks[j - 1].last().unwrap(), g));
        parts.round.pre.push(b.sub(blocks[j][0], g));
        parts.round.meas.push(Instruction::measure(g, s));
        parts.resets.push(Instruction::reset(g));
        prefix = prefix.plus(&Affine::slot(s));
        for &w in blocks[j] {
            parts.x_fix.push((w, prefix.clone()));
        }
    }
    parts.ancilla = anc;
    parts
}

/// Undo of a copy, leaving the state on `data[0]`.
#[derive(Clone, Debug, Default)]
pub struct RecoverParts {
    pub round: Round,
    /// Phase repair on `data[0]`.
    pub z_fix: Affine,
    pub resets: Vec<Instruction>,
    pub target: usize,
}

impl RecoverParts {
    pub fn into_round(mut self, b: &Builder) -> Round {
        self.round.post.extend(b.z_fix(self.target, &self.z_fix));
        self.round.post.extend(self.resets);
        self.round
    }
}

/// Measures `data[1..]` in the Fourier basis and repairs the phase.
pub fn recover_parts(b: &mut Builder, data: &[usize]) -> RecoverParts {
    let mut parts = RecoverParts { target: data[0], ..Default::default() };
    if data.len() < 2 {
        return parts;
    }
    if b.oracle() {
        parts.round.pre.push(Gate::fanout_inv(data[0], &data[1..]).into());
        return parts;
    }
    let mut slots = Vec::new();
    for &w in &data[1..] {
        let s = b.slot();
        parts.round.pre.push(b.h(w));
        parts.round.meas.push(Instruction::measure(w, s));
        parts.resets.push(Instruction::reset(w));
        slots.push(s);
    }
    parts.z_fix = Affine::sum(&slots).negated();
    parts
}

/// Copy of `src` onto freshly allocated wires, using the builder's
/// internal budget. Returns the new wires.
pub fn copy_parts(b: &mut Builder, src: usize, copies: usize) -> (Vec<usize>, GhzParts) {
    let fresh = b.ancilla(copies);
    let mut data = vec![src];
    data.extend_from_slice(&fresh);
    let plan = GhzPlan::new(data.len(), b.ghz_c).expect("copy plan always exists for c ≥ 1");
    let parts = ghz_parts(b, &data, &plan);
    (fresh, parts)
}
