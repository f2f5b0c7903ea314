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

//! State preparation from `|0…0⟩`: dense, size-optimized and sparse.

use super::angles::{angle_schedule, phase_schedule};
use super::controlled::emit_cqsp_n;
use super::encode::{check_width, declared, Encoding, ToBinary};
use super::onehot::{emit_onehot, onehot_layers};
use super::target::TargetState;
use crate::circuit::{Gate, Params, Role};
use crate::error::{Error, Result};
use crate::primitives::{Builder, GadgetBuild, Mode};
use crate::sim::C64;

/// Which dense preparation to build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum QspVariant {
    /// One-hot loading on `2ⁿ` wires followed by binary encoding.
    #[default]
    OnehotFourN,
    /// Row norms on half the qubits, then each row conditioned on them.
    SizeOptTwoN,
}

impl std::str::FromStr for QspVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "onehot-4n" => Ok(QspVariant::OnehotFourN),
            "size-opt-2n" => Ok(QspVariant::SizeOptTwoN),
            other => Err(Error::InvalidParameter(format!("unknown variant {other}"))),
        }
    }
}

/// Allocates a register of `len` wires whose first `keep` are outputs.
pub(crate) fn register(b: &mut Builder, len: usize, keep: usize) -> Vec<usize> {
    let mut w = b.wires(keep.min(len), Role::Output);
    w.extend(b.wires(len.saturating_sub(keep), Role::Ancilla));
    w
}

/// Prepares `amps` (length `2ⁿ`) on the all-zero register `reg`; the state
/// ends on `reg[..n]`. Returns the protocol measurement layers.
pub(crate) fn emit_qsp(b: &mut Builder, reg: &[usize], amps: &[C64]) -> Result<usize> {
    let n = amps.len().trailing_zeros() as usize;
    let mags: Vec<f64> = amps.iter().map(|a| a.norm()).collect();
    emit_onehot(b, reg, &angle_schedule(&mags)?)?;
    for (&w, &phi) in reg.iter().zip(&phase_schedule(amps).phases) {
        b.push(Gate::phase(phi, w))?;
    }
    let enc = Encoding::new(b, reg.to_vec(), (0..reg.len()).collect(), n);
    let stages = ToBinary::new(b, &enc)?;
    let layers = onehot_layers(reg.len()) + stages.layers();
    stages.emit(b)?;
    Ok(layers)
}

fn params(n: usize, s: Option<usize>) -> Params {
    Params { n: Some(n), s, ..Default::default() }
}

/// `|0⟩^n → Σ α_j |j⟩`.
pub fn build_qsp(target: &TargetState, variant: QspVariant, mode: Mode) -> Result<GadgetBuild> {
    check_width(target.n)?;
    match variant {
        QspVariant::OnehotFourN => {
            let mut b = Builder::new(2, mode);
            let reg = register(&mut b, 1 << target.n, target.n);
            let layers = emit_qsp(&mut b, &reg, &target.to_dense())?;
            let out = reg[..target.n].to_vec();
            Ok(GadgetBuild::finish(b, "qsp", params(target.n, None), Vec::new(), out, declared(mode, layers)))
        }
        QspVariant::SizeOptTwoN => size_opt(target, mode),
    }
}

/// Splits the (padded) target into row norms `α_j` and unit rows `β_j`.
fn split_rows(target: &TargetState, h: usize) -> (Vec<C64>, Vec<Vec<C64>>) {
    let pad = 2 * h - target.n;
    let dense = target.to_dense();
    let side = 1 << h;
    let mut rows = vec![vec![C64::new(0.0, 0.0); side]; side];
    for (j, a) in dense.into_iter().enumerate() {
        let jj = j << pad;
        rows[jj >> h][jj & (side - 1)] = a;
    }
    let mut norms = Vec::with_capacity(side);
    for row in &mut rows {
        let norm = row.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        norms.push(C64::new(norm, 0.0));
        if norm > 0.0 {
            row.iter_mut().for_each(|a| *a /= norm);
        } else {
            row[0] = C64::new(1.0, 0.0);
        }
    }
    (norms, rows)
}

fn size_opt(target: &TargetState, mode: Mode) -> Result<GadgetBuild> {
    let h = target.n.div_ceil(2);
    let (norms, rows) = split_rows(target, h);
    let mut b = Builder::new(2, mode);
    let hi = register(&mut b, 1 << h, h);
    let lo = register(&mut b, 1 << h, target.n - h);
    b.mark("rows");
    let mut layers = emit_qsp(&mut b, &hi, &norms)?;
    b.barrier();
    b.mark("columns");
    let (ctrl_out, data_out, more) = emit_cqsp_n(&mut b, &hi, &lo, h, &rows)?;
    layers += more;
    let mut out = ctrl_out;
    out.extend(&data_out[..target.n - h]);
    Ok(GadgetBuild::finish(b, "qsp-2n", params(h, None), Vec::new(), out, declared(mode, layers)))
}

/// `|0⟩^n → Σ_{j∈S} α_j |j⟩` using one wire per term.
pub fn build_sparse_qsp(target: &TargetState, mode: Mode) -> Result<GadgetBuild> {
    let n = target.n;
    let terms = target.terms();
    let s = terms.len();
    let mut b = Builder::new(2, mode);
    let keep = if n <= s { n } else { 0 };
    let slots = register(&mut b, s, keep);
    let amps: Vec<C64> = terms.iter().map(|t| t.1).collect();
    let mags: Vec<f64> = amps.iter().map(|a| a.norm()).collect();
    emit_onehot(&mut b, &slots, &angle_schedule(&mags)?)?;
    for (&w, &phi) in slots.iter().zip(&phase_schedule(&amps).phases) {
        if phi != 0.0 {
            b.push(Gate::phase(phi, w))?;
        }
    }
    let enc = Encoding::new(&mut b, slots, terms.iter().map(|t| t.0).collect(), n);
    let stages = ToBinary::new(&mut b, &enc)?;
    let layers = onehot_layers(s) + stages.layers();
    stages.emit(&mut b)?;
    let out = enc.outputs();
    Ok(GadgetBuild::finish(b, "sparse", params(n, Some(s)), Vec::new(), out, declared(mode, layers)))
}
