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

//! Dynamic-circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of moments. Instructions inside one
//! moment touch pairwise disjoint wires, which is what makes depth and
//! measurement-layer counts well defined. Classical feedback is expressed
//! as an affine [`Condition`] over measurement slots.

mod text;

pub use text::{parse, serialize};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// What a wire is for. Fixed at allocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Ancilla,
    Output,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Input => "input",
            Role::Ancilla => "ancilla",
            Role::Output => "output",
        }
    }
}

/// One wire of the circuit. Ancilla wires start in `|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumRegister {
    pub id: usize,
    pub dimension: u32,
    pub role: Role,
}

/// Outcome slots. Every slot is written by exactly one measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRegister {
    pub id: usize,
    pub modulus: u32,
    pub slots: usize,
}

/// A control wire that must hold `value` for the gate to act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub wire: usize,
    pub value: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    Z,
    /// Operands `[control, target]`.
    CNOT,
    SWAP,
    Ry(f64),
    Rz(f64),
    /// `diag(1, e^{iθ})`.
    PhaseZ(f64),
    /// Opaque n-Toffoli; operands `[target]`, polarity carried by `controls`.
    MultiControlledX,
    Hd,
    /// `|x⟩|y⟩ → |x⟩|y + x mod d⟩`; operands `[source, target]`.
    CXd,
    /// `|x⟩|y⟩ → |x⟩|y − x mod d⟩`.
    CXdInv,
    XplusC(u32),
    Zd,
    ZdPow(u32),
    /// Adds (or subtracts) operand 0 into every other operand.
    FanOutOracle { inverse: bool },
    /// XORs operands `0..k-1` into the last operand.
    ParityOracle,
}

impl GateKind {
    pub fn is_oracle(&self) -> bool {
        matches!(self, GateKind::FanOutOracle { .. } | GateKind::ParityOracle)
    }

    /// Gates that only make sense on qubits.
    pub fn qubit_only(&self) -> bool {
        use GateKind::*;
        matches!(
            self,
            X | H | S | Sdg | Z | CNOT | SWAP | Ry(_) | Rz(_) | PhaseZ(_) | MultiControlledX | ParityOracle
        )
    }

    pub fn name(&self) -> &'static str {
        use GateKind::*;
        match self {
            X => "x",
            H => "h",
            S => "s",
            Sdg => "sdg",
            Z => "z",
            CNOT => "cx",
            SWAP => "swap",
            Ry(_) => "ry",
            Rz(_) => "rz",
            PhaseZ(_) => "p",
            MultiControlledX => "mcx",
            Hd => "hd",
            CXd => "cxd",
            CXdInv => "cxdinv",
            XplusC(_) => "xplus",
            Zd => "zd",
            ZdPow(_) => "zdpow",
            FanOutOracle { inverse: false } => "fanout",
            FanOutOracle { inverse: true } => "fanout_inv",
            ParityOracle => "parity",
        }
    }
}

/// A gate instance: kind, operand wires and optional polarity controls.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub wires: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, wires: Vec<usize>) -> Self {
        Gate { kind, wires, controls: Vec::new() }
    }
    pub fn x(w: usize) -> Self {
        Self::new(GateKind::X, vec![w])
    }
    pub fn h(w: usize) -> Self {
        Self::new(GateKind::H, vec![w])
    }
    pub fn z(w: usize) -> Self {
        Self::new(GateKind::Z, vec![w])
    }
    pub fn s(w: usize) -> Self {
        Self::new(GateKind::S, vec![w])
    }
    pub fn sdg(w: usize) -> Self {
        Self::new(GateKind::Sdg, vec![w])
    }
    pub fn ry(theta: f64, w: usize) -> Self {
        Self::new(GateKind::Ry(theta), vec![w])
    }
    pub fn rz(theta: f64, w: usize) -> Self {
        Self::new(GateKind::Rz(theta), vec![w])
    }
    pub fn phase(theta: f64, w: usize) -> Self {
        Self::new(GateKind::PhaseZ(theta), vec![w])
    }
    pub fn cnot(c: usize, t: usize) -> Self {
        Self::new(GateKind::CNOT, vec![c, t])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::SWAP, vec![a, b])
    }
    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate { kind: GateKind::MultiControlledX, wires: vec![target], controls }
    }
    pub fn fanout(source: usize, targets: &[usize]) -> Self {
        let mut wires = vec![source];
        wires.extend_from_slice(targets);
        Self::new(GateKind::FanOutOracle { inverse: false }, wires)
    }
    pub fn fanout_inv(source: usize, targets: &[usize]) -> Self {
        let mut wires = vec![source];
        wires.extend_from_slice(targets);
        Self::new(GateKind::FanOutOracle { inverse: true }, wires)
    }
    pub fn parity(sources: &[usize], target: usize) -> Self {
        let mut wires = sources.to_vec();
        wires.push(target);
        Self::new(GateKind::ParityOracle, wires)
    }

    /// Adds a control that fires when `wire` holds `value`.
    pub fn ctrl(mut self, wire: usize, value: u32) -> Self {
        self.controls.push(Control { wire, value });
        self
    }

    /// Operand and control wires together.
    pub fn all_wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.wires.iter().copied().chain(self.controls.iter().map(|c| c.wire))
    }

    fn check_shape(&self) -> std::result::Result<(), String> {
        use GateKind::*;
        let n = self.wires.len();
        let ok = match self.kind {
            X | H | S | Sdg | Z | Ry(_) | Rz(_) | PhaseZ(_) => n == 1,
            Hd | Zd | ZdPow(_) | XplusC(_) => n == 1 && self.controls.is_empty(),
            CNOT | SWAP | CXd | CXdInv => n == 2 && self.controls.is_empty(),
            MultiControlledX => n == 1 && !self.controls.is_empty(),
            FanOutOracle { .. } | ParityOracle => n >= 1 && self.controls.is_empty(),
        };
        if !ok {
            return Err(format!("{} with {} operands and {} controls", self.kind.name(), n, self.controls.len()));
        }
        let mut seen = BTreeSet::new();
        for w in self.all_wires() {
            if !seen.insert(w) {
                return Err(format!("{} touches wire {} twice", self.kind.name(), w));
            }
        }
        Ok(())
    }
}

/// How a condition compares its affine value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparator {
    Equals(u32),
    NonZero,
}

/// `(Σ coeff·slot + constant) mod modulus`, compared against a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
    pub modulus: u32,
    pub comparator: Comparator,
}

impl Condition {
    /// Parity of `slots` equals one (qubit feedback).
    pub fn parity(slots: &[usize]) -> Self {
        Condition {
            terms: slots.iter().map(|&s| (s, 1)).collect(),
            constant: 0,
            modulus: 2,
            comparator: Comparator::Equals(1),
        }
    }

    pub fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    /// Affine value for the given outcome lookup.
    pub fn value(&self, outcome: impl Fn(usize) -> Option<u32>) -> Result<u32> {
        let m = self.modulus as i64;
        let mut acc = self.constant.rem_euclid(m);
        for &(slot, coeff) in &self.terms {
            let v = outcome(slot).ok_or(Error::UnwrittenSlot(slot))? as i64;
            acc = (acc + coeff.rem_euclid(m) * v).rem_euclid(m);
        }
        Ok(acc as u32)
    }

    pub fn holds(&self, outcome: impl Fn(usize) -> Option<u32>) -> Result<bool> {
        let v = self.value(outcome)?;
        Ok(match self.comparator {
            Comparator::Equals(x) => v == x % self.modulus,
            Comparator::NonZero => v != 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Gate(Gate),
    Measure { wire: usize, slot: usize },
    Reset(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instruction {
    pub payload: Payload,
    pub condition: Option<Condition>,
}

impl Instruction {
    pub fn gate(g: Gate) -> Self {
        Instruction { payload: Payload::Gate(g), condition: None }
    }
    pub fn measure(wire: usize, slot: usize) -> Self {
        Instruction { payload: Payload::Measure { wire, slot }, condition: None }
    }
    pub fn reset(wire: usize) -> Self {
        Instruction { payload: Payload::Reset(wire), condition: None }
    }
    pub fn when(mut self, cond: Condition) -> Self {
        self.condition = Some(cond);
        self
    }

    pub fn wires(&self) -> Vec<usize> {
        match &self.payload {
            Payload::Gate(g) => g.all_wires().collect(),
            Payload::Measure { wire, .. } => vec![*wire],
            Payload::Reset(w) => vec![*w],
        }
    }

    pub fn is_measure(&self) -> bool {
        matches!(self.payload, Payload::Measure { .. })
    }

    pub fn as_gate(&self) -> Option<&Gate> {
        match &self.payload {
            Payload::Gate(g) => Some(g),
            _ => None,
        }
    }
}

impl From<Gate> for Instruction {
    fn from(g: Gate) -> Self {
        Instruction::gate(g)
    }
}

/// Where [`Circuit::append`] puts an instruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    NewMoment,
    EarliestLegal,
}

/// Construction name and parameter echo.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub construction: String,
    pub params: Params,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: Option<usize>,
    pub c: Option<usize>,
    pub d: Option<usize>,
    pub s: Option<usize>,
}

pub type Moment = Vec<Instruction>;

/// A validation finding; `validate` returns these instead of failing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub moment: usize,
    pub index: usize,
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownWire,
    MomentCollision,
    PrematureRead,
    SlotRewritten,
    UnknownSlot,
    ModulusMismatch,
    OracleInProtocol,
    BadGate,
    DimensionMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "moment {} instruction {}: {}", self.moment, self.index, self.message)
    }
}

/// The compilation target of every builder.
#[derive(Clone, Debug)]
pub struct Circuit {
    wires: Vec<QuantumRegister>,
    creg: ClassicalRegister,
    moments: Vec<Moment>,
    oracle: bool,
    pub meta: Metadata,
    wire_last: Vec<Option<usize>>,
    slot_at: Vec<Option<usize>>,
    floor: usize,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.wires == other.wires
            && self.creg == other.creg
            && self.moments == other.moments
            && self.oracle == other.oracle
            && self.meta == other.meta
    }
}

impl Circuit {
    /// Empty circuit whose wires all have dimension `dim`. `oracle` admits
    /// the measurement-free oracle gates.
    pub fn new(dim: u32, oracle: bool) -> Self {
        assert!(dim >= 2, "wire dimension must be at least 2");
        Circuit {
            wires: Vec::new(),
            creg: ClassicalRegister { id: 0, modulus: dim, slots: 0 },
            moments: Vec::new(),
            oracle,
            meta: Metadata::default(),
            wire_last: Vec::new(),
            slot_at: Vec::new(),
            floor: 0,
        }
    }

    pub fn dim(&self) -> u32 {
        self.creg.modulus
    }
    pub fn is_oracle(&self) -> bool {
        self.oracle
    }
    pub fn num_wires(&self) -> usize {
        self.wires.len()
    }
    pub fn wires(&self) -> &[QuantumRegister] {
        &self.wires
    }
    pub fn dims(&self) -> Vec<u32> {
        self.wires.iter().map(|w| w.dimension).collect()
    }
    pub fn creg(&self) -> &ClassicalRegister {
        &self.creg
    }
    pub fn num_slots(&self) -> usize {
        self.creg.slots
    }
    pub fn moments(&self) -> &[Moment] {
        &self.moments
    }
    pub fn wires_with_role(&self, role: Role) -> Vec<usize> {
        self.wires.iter().filter(|w| w.role == role).map(|w| w.id).collect()
    }

    pub fn add_wire(&mut self, role: Role) -> usize {
        let id = self.wires.len();
        self.wires.push(QuantumRegister { id, dimension: self.dim(), role });
        self.wire_last.push(None);
        id
    }

    pub fn add_wires(&mut self, count: usize, role: Role) -> Vec<usize> {
        (0..count).map(|_| self.add_wire(role)).collect()
    }

    pub fn add_slot(&mut self) -> usize {
        self.creg.slots += 1;
        self.slot_at.push(None);
        self.creg.slots - 1
    }

    /// Moment of the last instruction touching `wire`.
    pub fn last_use(&self, wire: usize) -> Option<usize> {
        self.wire_last.get(wire).copied().flatten()
    }

    /// Nothing appended later lands before the current end of the circuit.
    pub fn barrier(&mut self) {
        self.floor = self.moments.len();
    }

    /// Lower bound for later placements.
    pub fn set_floor(&mut self, floor: usize) {
        self.floor = floor;
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    fn check(&self, instr: &Instruction) -> Result<()> {
        for w in instr.wires() {
            if w >= self.wires.len() {
                return Err(Error::UnknownWire(w));
            }
        }
        match &instr.payload {
            Payload::Gate(g) => {
                g.check_shape().map_err(Error::InvalidGate)?;
                if g.kind.is_oracle() && !self.oracle {
                    return Err(Error::OracleInProtocol(g.kind.name().into()));
                }
                if g.kind.qubit_only() && self.dim() != 2 {
                    return Err(Error::DimensionMismatch(format!("{} on dimension {}", g.kind.name(), self.dim())));
                }
                for c in &g.controls {
                    if c.value >= self.dim() {
                        return Err(Error::InvalidGate(format!("control value {} on dimension {}", c.value, self.dim())));
                    }
                }
            }
            Payload::Measure { slot, .. } => {
                match self.slot_at.get(*slot) {
                    None => return Err(Error::InvalidGate(format!("unknown slot {slot}"))),
                    Some(Some(_)) => return Err(Error::SlotRewritten(*slot)),
                    Some(None) => {}
                }
            }
            Payload::Reset(_) => {}
        }
        if let Some(cond) = &instr.condition {
            for s in cond.slots() {
                if self.slot_at.get(s).copied().flatten().is_none() {
                    return Err(Error::UnwrittenSlot(s));
                }
            }
        }
        Ok(())
    }

    /// Earliest moment that respects wire order, classical reads and the floor.
    fn earliest(&self, instr: &Instruction) -> usize {
        let mut m = self.floor;
        for w in instr.wires() {
            if let Some(l) = self.wire_last[w] {
                m = m.max(l + 1);
            }
        }
        if let Some(cond) = &instr.condition {
            for s in cond.slots() {
                if let Some(at) = self.slot_at[s] {
                    m = m.max(at + 1);
                }
            }
        }
        m
    }

    fn place(&mut self, instr: Instruction, m: usize) -> usize {
        while self.moments.len() <= m {
            self.moments.push(Vec::new());
        }
        for w in instr.wires() {
            self.wire_last[w] = Some(m);
        }
        if let Payload::Measure { slot, .. } = instr.payload {
            self.slot_at[slot] = Some(m);
        }
        self.moments[m].push(instr);
        m
    }

    /// Appends one instruction and returns its moment.
    pub fn append(&mut self, instr: impl Into<Instruction>, placement: Placement) -> Result<usize> {
        let instr = instr.into();
        self.check(&instr)?;
        let m = match placement {
            Placement::NewMoment => self.moments.len().max(self.earliest(&instr)),
            Placement::EarliestLegal => self.earliest(&instr),
        };
        Ok(self.place(instr, m))
    }

    /// Places wire-disjoint instructions together in one moment, no earlier
    /// than `min_moment`.
    pub fn append_layer(&mut self, instrs: Vec<Instruction>, min_moment: usize) -> Result<Option<usize>> {
        if instrs.is_empty() {
            return Ok(None);
        }
        let mut seen = BTreeSet::new();
        let mut m = min_moment;
        for i in &instrs {
            self.check(i)?;
            for w in i.wires() {
                if !seen.insert(w) {
                    return Err(Error::InvalidGate(format!("layer touches wire {w} twice")));
                }
            }
            m = m.max(self.earliest(i));
        }
        for i in instrs {
            self.place(i, m);
        }
        Ok(Some(m))
    }

    /// Inserts without any checks. Used by the parser and by tests that
    /// need malformed circuits; run [`Circuit::validate`] afterwards.
    pub fn insert_unchecked(&mut self, moment: usize, instr: Instruction) {
        for w in instr.wires() {
            while self.wire_last.len() <= w {
                self.wire_last.push(None);
            }
        }
        if let Payload::Measure { slot, .. } = instr.payload {
            while self.slot_at.len() <= slot {
                self.slot_at.push(None);
            }
        }
        while self.moments.len() <= moment {
            self.moments.push(Vec::new());
        }
        for w in instr.wires() {
            self.wire_last[w] = Some(self.wire_last[w].map_or(moment, |l| l.max(moment)));
        }
        if let Payload::Measure { slot, .. } = instr.payload {
            self.slot_at[slot].get_or_insert(moment);
        }
        self.moments[moment].push(instr);
    }

    pub(crate) fn insert_empty(&mut self, moment: usize) {
        while self.moments.len() <= moment {
            self.moments.push(Vec::new());
        }
    }

    /// Lists every broken invariant; empty means well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut written: Vec<Option<usize>> = vec![None; self.creg.slots];
        let mut push = |m: usize, i: usize, kind: ViolationKind, message: String| {
            out.push(Violation { moment: m, index: i, kind, message })
        };
        // Measurement moments first, so reads can be checked against them.
        for (m, moment) in self.moments.iter().enumerate() {
            for (i, instr) in moment.iter().enumerate() {
                if let Payload::Measure { wire, slot } = instr.payload {
                    if slot >= self.creg.slots {
                        push(m, i, ViolationKind::UnknownSlot, format!("slot {slot} does not exist"));
                    } else if let Some(prev) = written[slot] {
                        push(m, i, ViolationKind::SlotRewritten, format!("slot {slot} already written in moment {prev}"));
                    } else {
                        written[slot] = Some(m);
                    }
                    if let Some(w) = self.wires.get(wire) {
                        if w.dimension != self.creg.modulus {
                            push(m, i, ViolationKind::ModulusMismatch, format!("wire {wire} has dimension {} but slot modulus is {}", w.dimension, self.creg.modulus));
                        }
                    }
                }
            }
        }
        for (m, moment) in self.moments.iter().enumerate() {
            let mut used = BTreeSet::new();
            for (i, instr) in moment.iter().enumerate() {
                for w in instr.wires() {
                    if w >= self.wires.len() {
                        push(m, i, ViolationKind::UnknownWire, format!("wire {w} does not exist"));
                    } else if !used.insert(w) {
                        push(m, i, ViolationKind::MomentCollision, format!("wire {w} used twice in one moment"));
                    }
                }
                if let Payload::Gate(g) = &instr.payload {
                    if let Err(e) = g.check_shape() {
                        push(m, i, ViolationKind::BadGate, e);
                    }
                    if g.kind.is_oracle() && !self.oracle {
                        push(m, i, ViolationKind::OracleInProtocol, format!("oracle gate {} in protocol circuit", g.kind.name()));
                    }
                    if g.kind.qubit_only() && self.dim() != 2 {
                        push(m, i, ViolationKind::DimensionMismatch, format!("{} needs qubits", g.kind.name()));
                    }
                }
                if let Some(cond) = &instr.condition {
                    if cond.modulus != self.creg.modulus {
                        push(m, i, ViolationKind::ModulusMismatch, format!("condition modulus {} differs from register modulus {}", cond.modulus, self.creg.modulus));
                    }
                    for s in cond.slots() {
                        match written.get(s).copied().flatten() {
                            None => push(m, i, ViolationKind::PrematureRead, format!("slot {s} is never written")),
                            Some(at) if at >= m => push(m, i, ViolationKind::PrematureRead, format!("slot {s} read in moment {m} but written in moment {at}")),
                            _ => {}
                        }
                    }
                }
            }
        }
        out
    }

    /// Moments holding at least one instruction.
    pub fn depth(&self) -> usize {
        self.moments.iter().filter(|m| !m.is_empty()).count()
    }

    /// Moments holding at least one measurement.
    pub fn measurement_layers(&self) -> usize {
        self.moments.iter().filter(|m| m.iter().any(Instruction::is_measure)).count()
    }

    /// All instructions in execution order: moments in order, and within a
    /// moment by ascending lowest wire.
    pub fn serialized(&self) -> Vec<&Instruction> {
        let mut out = Vec::new();
        for moment in &self.moments {
            let mut v: Vec<&Instruction> = moment.iter().collect();
            v.sort_by_key(|i| i.wires().into_iter().min().unwrap_or(usize::MAX));
            out.extend(v);
        }
        out
    }

    /// Drops empty moments (a no-op for circuits built by `append`).
    pub fn compact(&mut self) {
        self.moments.retain(|m| !m.is_empty());
        let mut wl = vec![None; self.wires.len()];
        let mut sa = vec![None; self.creg.slots];
        for (m, moment) in self.moments.iter().enumerate() {
            for i in moment {
                for w in i.wires() {
                    wl[w] = Some(m);
                }
                if let Payload::Measure { slot, .. } = i.payload {
                    sa[slot] = Some(m);
                }
            }
        }
        self.wire_last = wl;
        self.slot_at = sa;
        self.floor = self.floor.min(self.moments.len());
    }

    pub(crate) fn set_roles_and_slots(&mut self, roles: Vec<Role>, slots: usize) {
        self.wires = roles
            .into_iter()
            .enumerate()
            .map(|(id, role)| QuantumRegister { id, dimension: self.dim(), role })
            .collect();
        self.wire_last = vec![None; self.wires.len()];
        self.creg.slots = slots;
        self.slot_at = vec![None; slots];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubits(n: usize) -> Circuit {
        let mut c = Circuit::new(2, false);
        c.add_wires(n, Role::Input);
        c
    }

    #[test]
    fn first_gate_lands_in_moment_zero() {
        let mut c = qubits(1);
        assert_eq!(c.append(Gate::x(0), Placement::EarliestLegal).unwrap(), 0);
    }

    #[test]
    fn disjoint_gates_share_a_moment() {
        let mut c = qubits(4);
        assert_eq!(c.append(Gate::cnot(0, 1), Placement::EarliestLegal).unwrap(), 0);
        assert_eq!(c.append(Gate::cnot(2, 3), Placement::EarliestLegal).unwrap(), 0);
        assert_eq!(c.depth(), 1);
    }

    #[test]
    fn shared_wire_forces_a_new_moment() {
        let mut c = qubits(3);
        c.append(Gate::cnot(0, 1), Placement::EarliestLegal).unwrap();
        assert_eq!(c.append(Gate::cnot(1, 2), Placement::EarliestLegal).unwrap(), 1);
    }

    #[test]
    fn new_moment_placement_always_extends() {
        let mut c = qubits(4);
        c.append(Gate::cnot(0, 1), Placement::NewMoment).unwrap();
        assert_eq!(c.append(Gate::cnot(2, 3), Placement::NewMoment).unwrap(), 1);
    }

    #[test]
    fn append_rejects_bad_input() {
        let mut c = qubits(2);
        assert!(matches!(c.append(Gate::x(5), Placement::EarliestLegal), Err(Error::UnknownWire(5))));
        let s = c.add_slot();
        let cond = Condition::parity(&[s]);
        let r = c.append(Instruction::gate(Gate::x(0)).when(cond), Placement::EarliestLegal);
        assert!(matches!(r, Err(Error::UnwrittenSlot(_))));
        let r = c.append(Gate::fanout(0, &[1]), Placement::EarliestLegal);
        assert!(matches!(r, Err(Error::OracleInProtocol(_))));
    }

    #[test]
    fn conditioned_gate_waits_for_its_measurement() {
        let mut c = qubits(3);
        let s = c.add_slot();
        c.append(Gate::h(0), Placement::EarliestLegal).unwrap();
        let m = c.append(Instruction::measure(0, s), Placement::EarliestLegal).unwrap();
        let f = c
            .append(Instruction::gate(Gate::x(2)).when(Condition::parity(&[s])), Placement::EarliestLegal)
            .unwrap();
        assert_eq!(f, m + 1);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn validate_flags_premature_read() {
        let mut c = qubits(2);
        let s = c.add_slot();
        c.insert_unchecked(0, Instruction::measure(0, s));
        c.insert_unchecked(0, Instruction::gate(Gate::x(1)).when(Condition::parity(&[s])));
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::PrematureRead);
    }

    #[test]
    fn validate_flags_moment_collision() {
        let mut c = qubits(4);
        c.insert_unchecked(0, Instruction::gate(Gate::x(3)));
        c.insert_unchecked(0, Instruction::gate(Gate::h(3)));
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::MomentCollision);
    }

    #[test]
    fn condition_arithmetic_is_modular() {
        let cond = Condition { terms: vec![(0, 1), (1, 2)], constant: -1, modulus: 3, comparator: Comparator::Equals(2) };
        // 2 + 2·1 − 1 = 3 ≡ 0
        let outcomes = [2u32, 1];
        assert_eq!(cond.value(|s| outcomes.get(s).copied()).unwrap(), 0);
        assert!(!cond.holds(|s| outcomes.get(s).copied()).unwrap());
    }
}
