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

//! Conversions between one-hot and binary index encodings.
//!
//! A one-hot register `e` holds one excited wire per branch; wire `i`
//! stands for the index `labels[i]`. Writing the index takes a parity per
//! bit (slots are copied so each feeds one parity), and erasing the one-hot
//! register takes one multi-controlled X per slot on copies of the index.

use std::collections::BTreeMap;

use super::onehot::MCX_LAYERS;
use crate::circuit::{Control, Gate, Instruction, Params, Role};
use crate::error::{Error, Result};
use crate::primitives::fanout::fanout_parts;
use crate::primitives::ghz::{copy_parts, recover_parts, GhzParts};
use crate::primitives::{Affine, Builder, FanoutPlan, GadgetBuild, Mode, Round};

/// A one-hot register, the index each wire stands for, and the binary
/// index wires (most significant first).
#[derive(Clone, Debug)]
pub(crate) struct Encoding {
    pub slots: Vec<usize>,
    pub labels: Vec<usize>,
    pub index: Vec<usize>,
}

struct Source {
    wire: usize,
    orig: usize,
    copy: bool,
}

impl Encoding {
    /// Allocates `n` index wires. They end up holding the output only when
    /// the register is too small to swap the index into.
    pub fn new(b: &mut Builder, slots: Vec<usize>, labels: Vec<usize>, n: usize) -> Self {
        let role = if n > slots.len() { Role::Output } else { Role::Ancilla };
        let index = b.wires(n, role);
        Encoding { slots, labels, index }
    }

    fn n(&self) -> usize {
        self.index.len()
    }

    fn bit(&self, label: usize, b: usize) -> u32 {
        ((label >> (self.n() - 1 - b)) & 1) as u32
    }

    /// Bits set in at least one label; the others stay zero throughout.
    fn used(&self, b: usize) -> bool {
        self.labels.iter().any(|&l| self.bit(l, b) == 1)
    }

    /// Index wires after the conversion.
    pub fn outputs(&self) -> Vec<usize> {
        if self.n() <= self.slots.len() {
            self.slots[..self.n()].to_vec()
        } else {
            self.index.clone()
        }
    }

    pub fn swaps(&self) -> Vec<Gate> {
        if self.n() > self.slots.len() {
            return Vec::new();
        }
        self.index.iter().zip(&self.slots).map(|(&i, &s)| Gate::swap(i, s)).collect()
    }

    /// One instance of slot `i` per set bit of its label.
    pub fn copy_slots(&self, b: &mut Builder) -> (Round, Vec<Vec<usize>>) {
        let mut round = Round::default();
        let mut inst = Vec::with_capacity(self.slots.len());
        for (&w, &l) in self.slots.iter().zip(&self.labels) {
            let uses = l.count_ones() as usize;
            let (fresh, parts) = copy_parts(b, w, uses.saturating_sub(1));
            round = round.merge(parts.into_round(b));
            let mut v = vec![w];
            v.extend(fresh);
            inst.push(v);
        }
        (round, inst)
    }

    fn sources(&self, inst: &[Vec<usize>]) -> Vec<Vec<Source>> {
        let mut next = vec![0; self.slots.len()];
        (0..self.n())
            .map(|b| {
                let mut v = Vec::new();
                for (i, &l) in self.labels.iter().enumerate() {
                    if self.bit(l, b) == 1 {
                        v.push(Source { wire: inst[i][next[i]], orig: self.slots[i], copy: next[i] > 0 });
                        next[i] += 1;
                    }
                }
                v
            })
            .collect()
    }

    /// Copies every used index wire into `copies` fresh wires. Returns the
    /// instances per bit (`[I_b]` alone for unused bits).
    pub fn copy_index(&self, b: &mut Builder, copies: usize) -> (Round, Vec<Vec<usize>>) {
        let mut round = Round::default();
        let mut inst = Vec::new();
        for (bit, &t) in self.index.iter().enumerate() {
            let mut v = vec![t];
            if self.used(bit) {
                let (fresh, parts) = copy_parts(b, t, copies);
                round = round.merge(parts.into_round(b));
                v.extend(fresh);
            }
            inst.push(v);
        }
        (round, inst)
    }

    /// XORs each bit's parity of slot instances into its index wire while
    /// measuring away the slot copies, and optionally copies the fresh
    /// index `copies` times, all in one round.
    pub fn parity_round(&self, b: &mut Builder, inst: &[Vec<usize>], copies: usize) -> Result<(Round, Vec<Vec<usize>>)> {
        if b.oracle() {
            return Ok(self.parity_oracle(b, inst, copies));
        }
        let mut round = Round::default();
        let mut phase: BTreeMap<usize, Affine> = BTreeMap::new();
        let mut idx = Vec::new();
        for (bit, srcs) in self.sources(inst).into_iter().enumerate() {
            let t = self.index[bit];
            if srcs.is_empty() {
                idx.push(vec![t]);
                continue;
            }
            let wires: Vec<usize> = srcs.iter().map(|s| s.wire).collect();
            let plan = FanoutPlan::with_block(wires.len(), b.fanout_block, false)?;
            round.pre.push(b.h(t));
            round.pre.extend(wires.iter().map(|&w| b.h(w)));
            let fp = fanout_parts(b, t, &wires, &plan);
            round.pre.extend(fp.round.pre);
            round.pre.push(b.h(t));
            round.meas.extend(fp.round.meas);
            for (w, f) in &fp.x_fix {
                let src = srcs.iter().find(|s| s.wire == *w).expect("fix on a source");
                if src.copy {
                    // The Hadamard closing the parity cancels the one
                    // opening the recovery; the X fix only flips the outcome.
                    let slot = b.slot();
                    round.meas.push(Instruction::measure(*w, slot));
                    round.post.push(Instruction::reset(*w));
                    let acc = phase.entry(src.orig).or_default();
                    *acc = std::mem::take(acc).plus(&Affine::slot(slot)).plus(f);
                } else {
                    round.post.extend(b.x_fix(*w, f));
                    round.post.push(b.h(*w));
                }
            }
            round.post.extend(fp.resets);
            // The control's pending Z fix turns into an X after the closing
            // Hadamard, so it rides along onto every copy.
            let tau = fp.z_fix;
            let (fresh, gp) = if copies > 0 { copy_parts(b, t, copies) } else { (Vec::new(), GhzParts::default()) };
            round.pre.extend(gp.round.pre);
            round.meas.extend(gp.round.meas);
            let mut all = vec![t];
            all.extend(&fresh);
            for &w in &all {
                let base = gp.x_fix.iter().find(|x| x.0 == w).map(|x| x.1.clone()).unwrap_or_default();
                round.post.extend(b.x_fix(w, &base.plus(&tau)));
            }
            round.post.extend(gp.resets);
            idx.push(all);
        }
        for (w, a) in phase {
            round.post.extend(b.z_fix(w, &a));
        }
        Ok((round, idx))
    }

    fn parity_oracle(&self, b: &mut Builder, inst: &[Vec<usize>], copies: usize) -> (Round, Vec<Vec<usize>>) {
        let mut round = Round::default();
        for (bit, srcs) in self.sources(inst).into_iter().enumerate() {
            if !srcs.is_empty() {
                let wires: Vec<usize> = srcs.iter().map(|s| s.wire).collect();
                round.pre.push(Gate::parity(&wires, self.index[bit]).into());
            }
        }
        for v in inst.iter().filter(|v| v.len() > 1) {
            round = round.merge(recover_parts(b, v).into_round(b));
        }
        if copies == 0 {
            return (round, self.index.iter().map(|&t| vec![t]).collect());
        }
        let (r, idx) = self.copy_index(b, copies);
        (round.merge(r), idx)
    }

    /// Flips slot `i` exactly when the index equals `labels[i]`.
    pub fn flips(&self, idx: &[Vec<usize>]) -> Vec<Gate> {
        let used: Vec<usize> = (0..self.n()).filter(|&b| self.used(b)).collect();
        self.slots
            .iter()
            .zip(&self.labels)
            .enumerate()
            .map(|(i, (&w, &l))| {
                if used.is_empty() {
                    return Gate::x(w);
                }
                let controls = used.iter().map(|&b| Control { wire: idx[b][i], value: self.bit(l, b) }).collect();
                Gate::mcx(controls, w)
            })
            .collect()
    }

    /// Clears index copies with a fan-out from each index wire.
    pub fn uncopy_index(&self, b: &mut Builder, idx: &[Vec<usize>]) -> Result<Round> {
        let mut round = Round::default();
        for v in idx.iter().filter(|v| v.len() > 1) {
            let plan = FanoutPlan::with_block(v.len() - 1, b.fanout_block, false)?;
            round = round.merge(fanout_parts(b, v[0], &v[1..], &plan).into_round(b));
        }
        Ok(round)
    }
}

/// Emits a layer of flips: multi-controlled X gates share one moment,
/// plain X gates go wherever they fit.
pub(crate) fn emit_flips(b: &mut Builder, gates: Vec<Gate>) -> Result<()> {
    let (mcx, plain): (Vec<Gate>, Vec<Gate>) = gates.into_iter().partition(|g| !g.controls.is_empty());
    b.mcx_layer(mcx)?;
    b.push_all(plain.into_iter().map(Instruction::gate))
}

/// One-hot → binary, split into stages so several registers can share
/// rounds.
#[derive(Clone, Debug, Default)]
pub(crate) struct ToBinary {
    pub copy: Round,
    pub parity: Round,
    pub flips: Vec<Gate>,
    pub uncopy: Round,
    pub swaps: Vec<Gate>,
}

impl ToBinary {
    pub fn new(b: &mut Builder, enc: &Encoding) -> Result<Self> {
        let (copy, inst) = enc.copy_slots(b);
        let (parity, idx) = enc.parity_round(b, &inst, enc.slots.len() - 1)?;
        let flips = enc.flips(&idx);
        let uncopy = enc.uncopy_index(b, &idx)?;
        Ok(ToBinary { copy, parity, flips, uncopy, swaps: enc.swaps() })
    }

    pub fn merge(self, o: ToBinary) -> ToBinary {
        let mut flips = self.flips;
        flips.extend(o.flips);
        let mut swaps = self.swaps;
        swaps.extend(o.swaps);
        ToBinary {
            copy: self.copy.merge(o.copy),
            parity: self.parity.merge(o.parity),
            flips,
            uncopy: self.uncopy.merge(o.uncopy),
            swaps,
        }
    }

    /// Measurement layers this stage list occupies in protocol mode.
    pub fn layers(&self) -> usize {
        let rounds = [&self.copy, &self.parity, &self.uncopy].iter().filter(|r| !r.meas.is_empty()).count();
        rounds + if self.flips.iter().any(|g| !g.controls.is_empty()) { MCX_LAYERS } else { 0 }
    }

    pub fn emit(self, b: &mut Builder) -> Result<()> {
        b.emit(self.copy)?;
        b.emit(self.parity)?;
        emit_flips(b, self.flips)?;
        b.emit(self.uncopy)?;
        b.push_all(self.swaps.into_iter().map(Instruction::gate))
    }
}

/// Binary → one-hot on a dense register (`labels = 0 … N−1`).
#[derive(Clone, Debug, Default)]
pub(crate) struct ToOnehot {
    pub swaps: Vec<Gate>,
    pub copy: Round,
    pub flips: Vec<Gate>,
    pub uncopy: Round,
    pub parity: Round,
}

impl ToOnehot {
    pub fn new(b: &mut Builder, enc: &Encoding) -> Result<Self> {
        let (copy, idx) = enc.copy_index(b, enc.slots.len() - 1);
        let flips = enc.flips(&idx);
        // Clearing the index copies runs alongside copying the slots.
        let (slot_copy, inst) = enc.copy_slots(b);
        let uncopy = enc.uncopy_index(b, &idx)?.merge(slot_copy);
        let (parity, _) = enc.parity_round(b, &inst, 0)?;
        Ok(ToOnehot { swaps: enc.swaps(), copy, flips, uncopy, parity })
    }

    pub fn layers(&self) -> usize {
        let rounds = [&self.copy, &self.uncopy, &self.parity].iter().filter(|r| !r.meas.is_empty()).count();
        rounds + if self.flips.iter().any(|g| !g.controls.is_empty()) { MCX_LAYERS } else { 0 }
    }

    pub fn emit(self, b: &mut Builder) -> Result<()> {
        b.push_all(self.swaps.into_iter().map(Instruction::gate))?;
        b.emit(self.copy)?;
        emit_flips(b, self.flips)?;
        b.emit(self.uncopy)?;
        b.emit(self.parity)
    }
}

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > 12 {
        return Err(Error::InvalidParameter(format!("index width {n} outside 1..=12")));
    }
    Ok(())
}

pub(crate) fn declared(mode: Mode, layers: usize) -> usize {
    if mode == Mode::Protocol {
        layers
    } else {
        0
    }
}

/// `Σ α_j |e_j⟩ → Σ α_j |j⟩|0…0⟩` on `2ⁿ` wires.
pub fn build_onehot_to_binary(n: usize, mode: Mode) -> Result<GadgetBuild> {
    check_width(n)?;
    let mut b = Builder::new(2, mode);
    let slots = b.wires(1 << n, Role::Input);
    let enc = Encoding::new(&mut b, slots.clone(), (0..1 << n).collect(), n);
    let stages = ToBinary::new(&mut b, &enc)?;
    let layers = stages.layers();
    stages.emit(&mut b)?;
    let params = Params { n: Some(n), ..Default::default() };
    Ok(GadgetBuild::finish(b, "tobinary", params, slots.clone(), slots, declared(mode, layers)))
}

/// `Σ α_j |j⟩|0…0⟩ → Σ α_j |e_j⟩` on `2ⁿ` wires.
pub fn build_binary_to_onehot(n: usize, mode: Mode) -> Result<GadgetBuild> {
    check_width(n)?;
    let mut b = Builder::new(2, mode);
    let slots = b.wires(1 << n, Role::Input);
    let enc = Encoding::new(&mut b, slots.clone(), (0..1 << n).collect(), n);
    let stages = ToOnehot::new(&mut b, &enc)?;
    let layers = stages.layers();
    stages.emit(&mut b)?;
    let params = Params { n: Some(n), ..Default::default() };
    Ok(GadgetBuild::finish(b, "toonehot", params, slots.clone(), slots, declared(mode, layers)))
}
