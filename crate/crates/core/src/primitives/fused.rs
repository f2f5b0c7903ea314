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

//! Many controlled rotations sharing one target, in constant depth.
//!
//! The target is fanned out onto fresh wires, each copy takes one
//! controlled `Rz` (or phase), and a second fan-out clears the copies. For
//! `Ry` the target is rotated into the `Rz` frame first:
//! `Ry(θ) = S·H·Rz(θ)·H·S†`.

use super::builder::{Builder, Round};
use super::fanout::fanout_parts;
use super::ghz::{copy_parts, recover_parts};
use super::plan::FanoutPlan;
use crate::circuit::{Gate, Instruction};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Y,
    /// `diag(1, e^{iθ})`.
    Phase,
}

/// Stages of a fused rotation, kept apart so several can share rounds.
#[derive(Clone, Debug, Default)]
pub struct FusedParts {
    pub before: Vec<Instruction>,
    pub first: Round,
    pub middle: Vec<Instruction>,
    pub second: Round,
    pub after: Vec<Instruction>,
    pub ancilla: Vec<usize>,
}

fn fan(b: &mut Builder, src: usize, targets: &[usize]) -> (Round, Vec<usize>) {
    let plan = FanoutPlan::with_block(targets.len(), b.fanout_block, false).expect("non-empty fan-out");
    let parts = fanout_parts(b, src, targets, &plan);
    let anc = parts.ancilla.clone();
    (parts.into_round(b), anc)
}

/// `|t⟩|x⟩ → R(Σ x_j θ_j)|t⟩|x⟩` for `R` in `{Ry, phase}`.
pub fn fused_parts(b: &mut Builder, target: usize, controls: &[usize], angles: &[f64], axis: Axis) -> FusedParts {
    assert_eq!(controls.len(), angles.len(), "one angle per control");
    let copies = b.ancilla(controls.len());
    let mut p = FusedParts { ancilla: copies.clone(), ..Default::default() };
    if axis == Axis::Y {
        p.before = vec![Gate::sdg(target).into(), Gate::h(target).into()];
        p.after = vec![Gate::h(target).into(), Gate::s(target).into()];
    }
    let (first, a1) = fan(b, target, &copies);
    for ((&x, &copy), &th) in controls.iter().zip(&copies).zip(angles) {
        let g = match axis {
            Axis::Y => Gate::rz(th, copy),
            Axis::Phase => Gate::phase(th, copy),
        };
        p.middle.push(g.ctrl(x, 1).into());
    }
    let (second, a2) = fan(b, target, &copies);
    p.first = first;
    p.second = second;
    p.ancilla.extend(a1);
    p.ancilla.extend(a2);
    p
}

/// Emits several fused rotations with their rounds aligned.
pub fn emit_fused(b: &mut Builder, parts: Vec<FusedParts>) -> Result<()> {
    emit_fused_with(b, parts, Round::default(), Round::default())
}

/// Same, running `extra_first` and `extra_second` alongside the two
/// fan-out rounds.
pub fn emit_fused_with(b: &mut Builder, parts: Vec<FusedParts>, extra_first: Round, extra_second: Round) -> Result<()> {
    let mut first = extra_first;
    let mut second = extra_second;
    let mut middle = Vec::new();
    let mut after = Vec::new();
    for p in parts {
        b.push_all(p.before)?;
        first = first.merge(p.first);
        second = second.merge(p.second);
        middle.extend(p.middle);
        after.extend(p.after);
    }
    b.emit(first)?;
    b.push_all(middle)?;
    b.emit(second)?;
    b.push_all(after)
}

/// Stages of a doubly controlled fused `Ry`.
#[derive(Clone, Debug, Default)]
pub struct CcParts {
    pub before: Vec<Instruction>,
    pub fan_in: Round,
    pub copy: Round,
    pub middle: Vec<Instruction>,
    pub uncopy: Round,
    pub fan_out: Round,
    pub after: Vec<Instruction>,
    pub ancilla: Vec<usize>,
}

/// `|t⟩|x⟩|c⟩ → Ry(c·Σ x_j θ_j)|t⟩|x⟩|c⟩`.
pub fn cc_parts(b: &mut Builder, target: usize, controls: &[usize], extra: usize, angles: &[f64]) -> CcParts {
    assert_eq!(controls.len(), angles.len(), "one angle per control");
    let mut p = CcParts {
        before: vec![Gate::sdg(target).into(), Gate::h(target).into()],
        after: vec![Gate::h(target).into(), Gate::s(target).into()],
        ..Default::default()
    };
    let (fan_in, a1) = fan(b, target, controls);
    let (copies, ghz) = copy_parts(b, extra, controls.len());
    p.ancilla.extend(&copies);
    p.ancilla.extend(&ghz.ancilla);
    p.copy = ghz.into_round(b);
    for ((&x, &cc), &th) in controls.iter().zip(&copies).zip(angles) {
        p.middle.push(Gate::rz(-th / 2.0, x).ctrl(cc, 1).into());
    }
    p.middle.push(Gate::rz(angles.iter().sum::<f64>() / 2.0, target).ctrl(extra, 1).into());
    let mut data = vec![extra];
    data.extend(&copies);
    p.uncopy = recover_parts(b, &data).into_round(b);
    let (fan_out, a2) = fan(b, target, controls);
    p.fan_in = fan_in;
    p.fan_out = fan_out;
    p.ancilla.extend(a1);
    p.ancilla.extend(a2);
    p
}

/// Emits several doubly controlled rotations in four shared rounds.
pub fn emit_cc(b: &mut Builder, parts: Vec<CcParts>) -> Result<()> {
    let mut rounds: [Round; 4] = Default::default();
    let mut middle = Vec::new();
    let mut after = Vec::new();
    for p in parts {
        b.push_all(p.before)?;
        for (slot, r) in rounds.iter_mut().zip([p.fan_in, p.copy, p.uncopy, p.fan_out]) {
            *slot = std::mem::take(slot).merge(r);
        }
        middle.extend(p.middle);
        after.extend(p.after);
    }
    let [fan_in, copy, uncopy, fan_out] = rounds;
    b.emit(fan_in)?;
    b.emit(copy)?;
    b.push_all(middle)?;
    b.emit(uncopy)?;
    b.emit(fan_out)?;
    b.push_all(after)
}
