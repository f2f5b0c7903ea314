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

//! Preparation conditioned on control qubits.

use super::angles::{angle_schedule, check_norm, phase_schedule, AngleSchedule};
use super::encode::{check_width, declared, Encoding, ToBinary, ToOnehot};
use super::onehot::{prefix_flags, MCX_LAYERS, PREFIX_LAYERS};
use super::qsp::register;
use super::target::{TargetState, Unitary};
use crate::circuit::{Control, Gate, Params, Role};
use crate::error::{Error, Result};
use crate::primitives::fused::{cc_parts, emit_cc, emit_fused, emit_fused_with, fused_parts};
use crate::primitives::ghz::{copy_parts, recover_parts};
use crate::primitives::{Axis, Builder, GadgetBuild, Mode, Round};
use crate::sim::C64;

/// `(a|0⟩ + b|1⟩)|0⟩^n → a|0⟩^{n+1} + b|1⟩ Σ α_j|j⟩`; the control is
/// wire 0 and the state lands on the next `n` wires.
pub fn build_controlled_qsp_1(target: &TargetState, mode: Mode) -> Result<GadgetBuild> {
    check_width(target.n)?;
    let amps = target.to_dense();
    let len = amps.len();
    let sched = angle_schedule(&amps.iter().map(|a| a.norm()).collect::<Vec<_>>())?;
    let mut b = Builder::new(2, mode);
    let control = b.wires(1, Role::Input)[0];
    let reg = register(&mut b, len, target.n);

    let (copies, parts) = copy_parts(&mut b, control, len - 1);
    let round = parts.into_round(&b);
    b.emit(round)?;
    let mut inst = vec![control];
    inst.extend(&copies);
    let mut layers = usize::from(len > 1);

    for k in 1..len {
        b.push(Gate::ry(2.0 * sched.theta(k), reg[k - 1]).ctrl(inst[k - 1], 1))?;
    }
    let p = b.ancilla(len - 2);
    prefix_flags(&mut b, &reg, &p)?;
    for k in 2..len {
        b.push(Gate::ry(-2.0 * sched.theta(k), reg[k - 1]).ctrl(inst[k - 1], 1))?;
    }
    for k in 1..len - 1 {
        b.push(Gate::ry(2.0 * sched.theta(k + 1), reg[k]).ctrl(p[k - 1], 1).ctrl(inst[k], 1))?;
    }
    prefix_flags(&mut b, &reg, &p)?;
    if !p.is_empty() {
        layers += 2 * PREFIX_LAYERS;
    }
    let mut controls: Vec<Control> = reg[..len - 1].iter().map(|&w| Control { wire: w, value: 0 }).collect();
    controls.push(Control { wire: inst[0], value: 1 });
    b.mcx_layer(vec![Gate::mcx(controls, reg[len - 1])])?;
    layers += MCX_LAYERS;

    for ((&w, &phi), &c) in reg.iter().zip(&phase_schedule(&amps).phases).zip(&inst) {
        b.push(Gate::phase(phi, w).ctrl(c, 1))?;
    }
    let round = recover_parts(&mut b, &inst).into_round(&b);
    b.emit(round)?;
    layers += usize::from(len > 1);

    // Control |0⟩ left the register empty; give it the label e₀.
    b.push(Gate::x(control))?;
    b.push(Gate::cnot(control, reg[0]))?;
    b.push(Gate::x(control))?;

    let enc = Encoding::new(&mut b, reg.clone(), (0..len).collect(), target.n);
    let stages = ToBinary::new(&mut b, &enc)?;
    layers += stages.layers();
    stages.emit(&mut b)?;
    let mut out = vec![control];
    out.extend(&reg[..target.n]);
    let params = Params { n: Some(target.n), ..Default::default() };
    Ok(GadgetBuild::finish(b, "cqsp1", params, vec![control], out, declared(mode, layers)))
}

/// Copies every wire of `e` into `sets − 1` fresh wires. Set `s` is the
/// `s`-th instance of every wire.
fn copy_sets(b: &mut Builder, e: &[usize], sets: usize) -> (Round, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut round = Round::default();
    let mut groups = Vec::new();
    for &w in e {
        let (fresh, parts) = copy_parts(b, w, sets - 1);
        round = round.merge(parts.into_round(b));
        let mut g = vec![w];
        g.extend(fresh);
        groups.push(g);
    }
    let by_set = (0..sets).map(|s| groups.iter().map(|g| g[s]).collect()).collect();
    (round, by_set, groups)
}

/// Conditions the data register `d` on the binary index held in
/// `e[..n]`: `Σ α_j|j⟩|0⟩ → Σ α_j|j⟩|ψ_j⟩`. `e` and `d` have `2ⁿ` wires
/// each. Returns the control outputs, data outputs and protocol layers.
pub(crate) fn emit_cqsp_n(b: &mut Builder, e: &[usize], d: &[usize], n: usize, targets: &[Vec<C64>]) -> Result<(Vec<usize>, Vec<usize>, usize)> {
    let len = e.len();
    let scheds: Vec<AngleSchedule> = targets
        .iter()
        .map(|t| angle_schedule(&t.iter().map(|a| a.norm()).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    let theta = |k: usize, sign: f64| -> Vec<f64> { scheds.iter().map(|s| sign * 2.0 * s.theta(k)).collect() };

    let enc_e = Encoding::new(b, e.to_vec(), (0..len).collect(), n);
    let onehot = ToOnehot::new(b, &enc_e)?;
    let mut layers = onehot.layers();
    b.mark("onehot-controls");
    onehot.emit(b)?;

    b.mark("load");
    let (copy_round, sets, groups) = copy_sets(b, e, len);
    let first: Vec<_> = (1..len).map(|k| fused_parts(b, d[k - 1], &sets[k - 1], &theta(k, 1.0), Axis::Y)).collect();
    emit_fused_with(b, first, copy_round, Round::default())?;
    layers += 2;

    let p = b.ancilla(len - 2);
    prefix_flags(b, d, &p)?;
    if len > 2 {
        let undo: Vec<_> = (2..len).map(|k| fused_parts(b, d[k - 1], &sets[k - 1], &theta(k, -1.0), Axis::Y)).collect();
        emit_fused(b, undo)?;
        let redo: Vec<_> = (1..len - 1).map(|k| cc_parts(b, d[k], &sets[k - 1], p[k - 1], &theta(k + 1, 1.0))).collect();
        emit_cc(b, redo)?;
        layers += 2 + 4 + 2 * PREFIX_LAYERS;
    }
    prefix_flags(b, d, &p)?;
    let controls = d[..len - 1].iter().map(|&w| Control { wire: w, value: 0 }).collect();
    b.mcx_layer(vec![Gate::mcx(controls, d[len - 1])])?;
    layers += MCX_LAYERS;

    b.mark("phases");
    let phases: Vec<Vec<f64>> = targets.iter().map(|t| phase_schedule(t).phases).collect();
    let parts: Vec<_> = (0..len)
        .map(|m| {
            let angles: Vec<f64> = phases.iter().map(|p| p[m]).collect();
            fused_parts(b, d[m], &sets[m], &angles, Axis::Phase)
        })
        .collect();
    let uncopy = Round::merge_all(groups.iter().map(|g| recover_parts(b, g).into_round(b)).collect::<Vec<_>>());
    emit_fused_with(b, parts, Round::default(), uncopy)?;
    layers += 2;

    b.mark("binary");
    let enc_d = Encoding::new(b, d.to_vec(), (0..len).collect(), n);
    let stages = ToBinary::new(b, &enc_e)?.merge(ToBinary::new(b, &enc_d)?);
    layers += stages.layers();
    stages.emit(b)?;
    Ok((enc_e.outputs(), enc_d.outputs(), layers))
}

fn check_targets(n: usize, targets: &[Vec<C64>]) -> Result<()> {
    if targets.len() != 1 << n {
        return Err(Error::InvalidTarget(format!("need {} target states, got {}", 1 << n, targets.len())));
    }
    for t in targets {
        if t.len() != 1 << n {
            return Err(Error::InvalidTarget(format!("target of length {} on {} qubits", t.len(), n)));
        }
        check_norm(t.iter().map(|a| a.norm_sqr()).sum())?;
    }
    Ok(())
}

fn cqsp_n_build(n: usize, targets: &[Vec<C64>], mode: Mode, name: &str) -> Result<GadgetBuild> {
    check_width(n)?;
    check_targets(n, targets)?;
    let mut b = Builder::new(2, mode);
    let mut e = b.wires(n, Role::Input);
    e.extend(b.wires((1 << n) - n, Role::Ancilla));
    let d = register(&mut b, 1 << n, n);
    let (ce, cd, layers) = emit_cqsp_n(&mut b, &e, &d, n, targets)?;
    let mut out = ce;
    out.extend(cd);
    let params = Params { n: Some(n), ..Default::default() };
    Ok(GadgetBuild::finish(b, name, params, e[..n].to_vec(), out, declared(mode, layers)))
}

/// `Σ α_j|j⟩|0⟩^n → Σ α_j|j⟩|ψ_j⟩`; controls are wires `0..n`.
pub fn build_controlled_qsp_n(targets: &[Vec<C64>], mode: Mode) -> Result<GadgetBuild> {
    let n = targets.len().trailing_zeros() as usize;
    cqsp_n_build(n, targets, mode, "cqspn")
}

/// `Σ α_j|j⟩|0⟩^n → Σ α_j|j⟩ U|j⟩`.
pub fn build_entangled_unitary(u: &Unitary, mode: Mode) -> Result<GadgetBuild> {
    Unitary::new(u.rows.clone())?;
    let cols: Vec<Vec<C64>> = (0..1 << u.n).map(|j| u.column(j)).collect();
    cqsp_n_build(u.n, &cols, mode, "unitary")
}
