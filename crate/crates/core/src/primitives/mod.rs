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

//! Constant-depth measurement-and-feedback gadgets.
//!
//! Each builder returns a [`GadgetBuild`]: the circuit, its data wires,
//! its ancilla, and the resources the construction promises. Builders run
//! in [`Mode::Protocol`] (mid-circuit measurement plus feedback) or
//! [`Mode::Oracle`] (the measurement-free unitary the protocol stands for).
//!
//! ```
//! use dynq::primitives::{build_fanout, Mode};
//! let f = build_fanout(6, 2, Mode::Protocol).unwrap();
//! assert_eq!(f.ancilla.len(), 3);
//! assert_eq!(f.circuit.measurement_layers(), 1);
//! ```

pub mod builder;
pub mod fanout;
pub mod fused;
pub mod ghz;
pub mod plan;

pub use builder::{Affine, Builder, Mode, Round};
pub use fused::Axis;
pub use plan::{FanoutPlan, GhzPlan};

use crate::circuit::{Circuit, Params, Role};
use crate::error::{Error, Result};

/// What a construction promises about itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Declared {
    pub measurement_layers: usize,
    pub ancilla: usize,
}

/// A finished construction.
#[derive(Clone, Debug)]
pub struct GadgetBuild {
    pub circuit: Circuit,
    /// Wires carrying the input, most significant first.
    pub inputs: Vec<usize>,
    /// Wires carrying the result, most significant first.
    pub outputs: Vec<usize>,
    pub ancilla: Vec<usize>,
    pub declared: Declared,
    /// Stage names with the moment each stage starts at.
    pub marks: Vec<(String, usize)>,
}

impl GadgetBuild {
    pub fn finish(b: Builder, construction: &str, params: Params, inputs: Vec<usize>, outputs: Vec<usize>, declared_layers: usize) -> Self {
        let marks = b.marks().to_vec();
        let mut circuit = b.into_circuit();
        circuit.meta.construction = construction.to_string();
        circuit.meta.params = params;
        let ancilla = circuit.wires_with_role(Role::Ancilla);
        let declared = Declared { measurement_layers: declared_layers, ancilla: ancilla.len() };
        GadgetBuild { circuit, inputs, outputs, ancilla, declared, marks }
    }

    /// Moment at which a named stage starts.
    pub fn mark(&self, name: &str) -> Option<usize> {
        self.marks.iter().find(|m| m.0 == name).map(|m| m.1)
    }
}

fn params(n: usize, c: Option<usize>, d: Option<usize>) -> Params {
    Params { n: Some(n), c, d, s: None }
}

fn check_dim(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension must be at least 2, got {d}")));
    }
    if d > 36 {
        return Err(Error::InvalidParameter(format!("dimension {d} is above the supported 36")));
    }
    Ok(())
}

fn ghz_impl(n: usize, c: usize, d: u32, qudit: bool, mode: Mode, plan: Option<GhzPlan>) -> Result<GadgetBuild> {
    check_dim(d)?;
    let plan = match plan {
        Some(p) => p,
        None => GhzPlan::new(n, c)?,
    };
    let mut b = Builder::new(d, mode);
    b.qudit = qudit || d > 2;
    let mut data = b.wires(1, Role::Input);
    data.extend(b.wires(n - 1, Role::Output));
    let parts = ghz::ghz_parts(&mut b, &data, &plan);
    let round = parts.into_round(&b);
    b.emit(round)?;
    let layers = usize::from(mode == Mode::Protocol && plan.blocks() > 1);
    let name = if qudit { "ghz_d" } else { "ghz" };
    let dd = if qudit { Some(d as usize) } else { None };
    Ok(GadgetBuild::finish(b, name, params(n, Some(c), dd), vec![data[0]], data, layers))
}

/// Spreads `α|0⟩+β|1⟩` on wire 0 into `α|0…0⟩+β|1…1⟩` on `n` wires.
pub fn build_ghz_extend(n: usize, c: usize, mode: Mode) -> Result<GadgetBuild> {
    ghz_impl(n, c, 2, false, mode, None)
}

/// Same with an explicit block size.
pub fn build_ghz_extend_with(plan: GhzPlan, c: usize, mode: Mode) -> Result<GadgetBuild> {
    ghz_impl(plan.n, c, 2, false, mode, Some(plan))
}

/// Qudit copy: `Σ α_x|x⟩ → Σ α_x|x…x⟩`.
pub fn build_ghz_extend_qudit(n: usize, c: usize, d: u32, mode: Mode) -> Result<GadgetBuild> {
    ghz_impl(n, c, d, true, mode, None)
}

fn recover_impl(n: usize, d: u32, qudit: bool, mode: Mode) -> Result<GadgetBuild> {
    check_dim(d)?;
    if n == 0 {
        return Err(Error::InvalidParameter("recovery needs at least one wire".into()));
    }
    let mut b = Builder::new(d, mode);
    b.qudit = qudit || d > 2;
    let mut data = b.wires(1, Role::Output);
    data.extend(b.wires(n - 1, Role::Input));
    let round = ghz::recover_parts(&mut b, &data).into_round(&b);
    b.emit(round)?;
    let layers = usize::from(mode == Mode::Protocol && n > 1);
    let name = if qudit { "recover_d" } else { "recover" };
    let dd = if qudit { Some(d as usize) } else { None };
    Ok(GadgetBuild::finish(b, name, params(n, None, dd), data.clone(), vec![data[0]], layers))
}

/// `α|0…0⟩+β|1…1⟩ → α|0⟩+β|1⟩` on wire 0; the rest is measured and reset.
pub fn build_recover(n: usize, mode: Mode) -> Result<GadgetBuild> {
    recover_impl(n, 2, false, mode)
}

pub fn build_recover_qudit(n: usize, d: u32, mode: Mode) -> Result<GadgetBuild> {
    recover_impl(n, d, true, mode)
}

fn fanout_impl(plan: FanoutPlan, c: usize, d: u32, qudit: bool, mode: Mode) -> Result<GadgetBuild> {
    check_dim(d)?;
    let mut b = Builder::new(d, mode);
    b.qudit = qudit || d > 2;
    let control = b.wires(1, Role::Input)[0];
    let targets = b.wires(plan.n, Role::Input);
    let round = fanout::fanout_parts(&mut b, control, &targets, &plan).into_round(&b);
    b.emit(round)?;
    let mut data = vec![control];
    data.extend(&targets);
    let layers = usize::from(mode == Mode::Protocol);
    let name = if qudit { "fanout_d" } else { "fanout" };
    let dd = if qudit { Some(d as usize) } else { None };
    Ok(GadgetBuild::finish(b, name, params(plan.n, Some(c), dd), data.clone(), data, layers))
}

/// `|x₀⟩|x₁…x_n⟩ → |x₀⟩|x₁⊕x₀ … x_n⊕x₀⟩` with at most `n/c` ancilla.
pub fn build_fanout(n: usize, c: usize, mode: Mode) -> Result<GadgetBuild> {
    fanout_impl(FanoutPlan::new(n, c, false)?, c, 2, false, mode)
}

/// Same with an explicit block size.
pub fn build_fanout_with(plan: FanoutPlan, c: usize, mode: Mode) -> Result<GadgetBuild> {
    fanout_impl(plan, c, 2, plan.qudit, mode)
}

/// `|x₀⟩|x_j⟩ → |x₀⟩|x_j + x₀ mod d⟩` with `2m` ancilla.
pub fn build_fanout_qudit(n: usize, c: usize, d: u32, mode: Mode) -> Result<GadgetBuild> {
    fanout_impl(FanoutPlan::new(n, c, true)?, c, d, true, mode)
}

/// `|x₁…x_n⟩|y⟩ → |x₁…x_n⟩|y ⊕ ⊕x_j⟩`.
pub fn build_parity(n: usize, c: usize, mode: Mode) -> Result<GadgetBuild> {
    let plan = FanoutPlan::new(n, c, false)?;
    let mut b = Builder::new(2, mode);
    let sources = b.wires(n, Role::Input);
    let target = b.wires(1, Role::Input)[0];
    let (round, _) = fanout::parity_round(&mut b, &sources, target, &plan);
    b.emit(round)?;
    let mut data = sources.clone();
    data.push(target);
    let layers = usize::from(mode == Mode::Protocol);
    Ok(GadgetBuild::finish(b, "parity", params(n, Some(c), None), data.clone(), data, layers))
}

fn fused_impl(angles: &[f64], axis: Axis, mode: Mode) -> Result<GadgetBuild> {
    if angles.is_empty() {
        return Err(Error::InvalidParameter("fused rotation needs at least one control".into()));
    }
    let mut b = Builder::new(2, mode);
    let target = b.wires(1, Role::Input)[0];
    let controls = b.wires(angles.len(), Role::Input);
    let parts = fused::fused_parts(&mut b, target, &controls, angles, axis);
    fused::emit_fused(&mut b, vec![parts])?;
    let mut data = vec![target];
    data.extend(&controls);
    let layers = if mode == Mode::Protocol { 2 } else { 0 };
    let name = match axis {
        Axis::Y => "fused_ry",
        Axis::Phase => "fused_z",
    };
    Ok(GadgetBuild::finish(b, name, params(angles.len(), None, None), data.clone(), data, layers))
}

/// `|t⟩|x⟩ → Ry(Σ x_j θ_j)|t⟩|x⟩`; wire 0 is `t`.
pub fn build_fused_ry(angles: &[f64], mode: Mode) -> Result<GadgetBuild> {
    fused_impl(angles, Axis::Y, mode)
}

/// `|t⟩|x⟩ → Z(Σ x_j θ_j)|t⟩|x⟩`.
pub fn build_fused_z(angles: &[f64], mode: Mode) -> Result<GadgetBuild> {
    fused_impl(angles, Axis::Phase, mode)
}

/// `|t⟩|x⟩|c⟩ → Ry(c·Σ x_j θ_j)|t⟩|x⟩|c⟩`; `c` is the last wire.
pub fn build_cc_fused_ry(angles: &[f64], mode: Mode) -> Result<GadgetBuild> {
    if angles.is_empty() {
        return Err(Error::InvalidParameter("fused rotation needs at least one control".into()));
    }
    let mut b = Builder::new(2, mode);
    let target = b.wires(1, Role::Input)[0];
    let controls = b.wires(angles.len(), Role::Input);
    let extra = b.wires(1, Role::Input)[0];
    let parts = fused::cc_parts(&mut b, target, &controls, extra, angles);
    fused::emit_cc(&mut b, vec![parts])?;
    let mut data = vec![target];
    data.extend(&controls);
    data.push(extra);
    let layers = if mode == Mode::Protocol { 4 } else { 0 };
    Ok(GadgetBuild::finish(b, "cc_fused_ry", params(angles.len(), None, None), data.clone(), data, layers))
}
