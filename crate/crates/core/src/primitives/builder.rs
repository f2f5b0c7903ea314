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

//! Round-based circuit assembly shared by every gadget.

use crate::circuit::{Circuit, Comparator, Condition, Gate, GateKind, Instruction, Placement, Role};
use crate::error::Result;

/// `protocol` builds the measurement-based circuit; `oracle` swaps every
/// fan-out, copy and recovery for its measurement-free unitary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Protocol,
    Oracle,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "protocol" => Ok(Mode::Protocol),
            "oracle" => Ok(Mode::Oracle),
            other => Err(crate::Error::InvalidParameter(format!("unknown mode {other}"))),
        }
    }
}

/// `Σ coeff·slot + constant`, reduced modulo the wire dimension on use.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
}

impl Affine {
    pub fn slot(s: usize) -> Self {
        Affine { terms: vec![(s, 1)], constant: 0 }
    }

    pub fn sum(slots: &[usize]) -> Self {
        Affine { terms: slots.iter().map(|&s| (s, 1)).collect(), constant: 0 }
    }

    pub fn plus(mut self, other: &Affine) -> Self {
        self.terms.extend_from_slice(&other.terms);
        self.constant += other.constant;
        self
    }

    pub fn negated(mut self) -> Self {
        for t in &mut self.terms {
            t.1 = -t.1;
        }
        self.constant = -self.constant;
        self
    }

    /// Merges repeated slots and drops zero coefficients.
    pub fn reduced(&self, d: u32) -> Affine {
        let m = d as i64;
        let mut terms: Vec<(usize, i64)> = Vec::new();
        for &(s, k) in &self.terms {
            match terms.iter_mut().find(|t| t.0 == s) {
                Some(t) => t.1 = (t.1 + k).rem_euclid(m),
                None => terms.push((s, k.rem_euclid(m))),
            }
        }
        terms.retain(|t| t.1 != 0);
        Affine { terms, constant: self.constant.rem_euclid(m) }
    }
}

/// One feedback round: gates before the measurements, the measurements
/// themselves (one moment), and the feedback that follows.
#[derive(Clone, Debug, Default)]
pub struct Round {
    pub pre: Vec<Instruction>,
    pub meas: Vec<Instruction>,
    pub post: Vec<Instruction>,
}

impl Round {
    /// Runs two independent rounds side by side.
    pub fn merge(mut self, other: Round) -> Round {
        self.pre.extend(other.pre);
        self.meas.extend(other.meas);
        self.post.extend(other.post);
        self
    }

    pub fn merge_all(rounds: impl IntoIterator<Item = Round>) -> Round {
        rounds.into_iter().fold(Round::default(), Round::merge)
    }
}

/// A circuit under construction plus the knobs gadgets share.
#[derive(Clone, Debug)]
pub struct Builder {
    pub circuit: Circuit,
    pub mode: Mode,
    /// Use `Hd`/`CXd`/`X₊`/`Zᵏ` even on qubits.
    pub qudit: bool,
    /// Ancilla budget divisor for internal copies.
    pub ghz_c: usize,
    /// Block size for internal fan-outs.
    pub fanout_block: usize,
    last_round: Option<usize>,
    marks: Vec<(String, usize)>,
}

impl Builder {
    pub fn new(dim: u32, mode: Mode) -> Self {
        Builder {
            circuit: Circuit::new(dim, mode == Mode::Oracle),
            mode,
            qudit: dim > 2,
            ghz_c: 2,
            fanout_block: 4,
            last_round: None,
            marks: Vec::new(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.circuit.dim()
    }

    pub fn oracle(&self) -> bool {
        self.mode == Mode::Oracle
    }

    pub fn wires(&mut self, count: usize, role: Role) -> Vec<usize> {
        self.circuit.add_wires(count, role)
    }

    pub fn ancilla(&mut self, count: usize) -> Vec<usize> {
        self.wires(count, Role::Ancilla)
    }

    pub fn slot(&mut self) -> usize {
        self.circuit.add_slot()
    }

    /// Appends at the earliest legal moment.
    pub fn push(&mut self, i: impl Into<Instruction>) -> Result<usize> {
        self.circuit.append(i, Placement::EarliestLegal)
    }

    pub fn push_all(&mut self, is: impl IntoIterator<Item = Instruction>) -> Result<()> {
        for i in is {
            self.push(i)?;
        }
        Ok(())
    }

    pub fn barrier(&mut self) {
        self.circuit.barrier();
    }

    /// Records the moment at which the next stage starts.
    pub fn mark(&mut self, name: &str) {
        let at = self.circuit.moments().len();
        self.marks.push((name.to_string(), at));
    }

    pub fn marks(&self) -> &[(String, usize)] {
        &self.marks
    }

    fn next_round_floor(&self) -> usize {
        self.last_round.map_or(0, |m| m + 1)
    }

    /// Emits a round. All measurements share one moment that comes strictly
    /// after every earlier round, so measurement layers add up predictably.
    pub fn emit(&mut self, round: Round) -> Result<()> {
        self.push_all(round.pre)?;
        if let Some(m) = self.circuit.append_layer(round.meas, self.next_round_floor())? {
            self.close_round(m);
        }
        self.push_all(round.post)
    }

    /// Later gates stay behind a finished round. Without this, gates on
    /// fresh ancilla would drift to the front of the circuit and every
    /// round's superposition would be open at once.
    fn close_round(&mut self, m: usize) {
        self.last_round = Some(m);
        let floor = self.circuit.floor().max(m + 1);
        self.circuit.set_floor(floor);
    }

    /// One moment of multi-controlled X gates, ordered like a round.
    pub fn mcx_layer(&mut self, gates: Vec<Gate>) -> Result<()> {
        let instrs = gates.into_iter().map(Instruction::gate).collect();
        if let Some(m) = self.circuit.append_layer(instrs, self.next_round_floor())? {
            self.close_round(m);
        }
        Ok(())
    }

    pub fn h(&self, w: usize) -> Instruction {
        if self.qudit {
            Gate::new(GateKind::Hd, vec![w]).into()
        } else {
            Gate::h(w).into()
        }
    }

    /// `t += s`.
    pub fn add(&self, s: usize, t: usize) -> Instruction {
        if self.qudit {
            Gate::new(GateKind::CXd, vec![s, t]).into()
        } else {
            Gate::cnot(s, t).into()
        }
    }

    /// `t -= s`.
    pub fn sub(&self, s: usize, t: usize) -> Instruction {
        if self.qudit {
            Gate::new(GateKind::CXdInv, vec![s, t]).into()
        } else {
            Gate::cnot(s, t).into()
        }
    }

    fn conditioned(&self, a: &Affine, make: impl Fn(u32) -> Gate) -> Vec<Instruction> {
        let d = self.dim();
        let a = a.reduced(d);
        let cond = |v: u32| Condition { terms: a.terms.clone(), constant: a.constant, modulus: d, comparator: Comparator::Equals(v) };
        if a.terms.is_empty() {
            return match a.constant as u32 {
                0 => Vec::new(),
                v => vec![make(v).into()],
            };
        }
        if !self.qudit {
            return vec![Instruction::gate(make(1)).when(cond(1))];
        }
        (1..d).map(|v| Instruction::gate(make(v)).when(cond(v))).collect()
    }

    /// `X^a` (qubits) or `X₊a` (qudits) on `w`.
    pub fn x_fix(&self, w: usize, a: &Affine) -> Vec<Instruction> {
        let qudit = self.qudit;
        self.conditioned(a, |v| if qudit { Gate::new(GateKind::XplusC(v), vec![w]) } else { Gate::x(w) })
    }

    /// `Z^a` on `w`.
    pub fn z_fix(&self, w: usize, a: &Affine) -> Vec<Instruction> {
        let qudit = self.qudit;
        self.conditioned(a, |v| if qudit { Gate::new(GateKind::ZdPow(v), vec![w]) } else { Gate::z(w) })
    }

    pub fn into_circuit(self) -> Circuit {
        self.circuit
    }
}
