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

//! Sparse, feedback-aware simulation.
//!
//! States are maps from mixed-radix labels to amplitudes. Each measurement
//! runs as soon as the gates it depends on have run, so a block's
//! superposition collapses before unrelated blocks open theirs. Gates on
//! disjoint wires commute, so this order gives the same states and outcome
//! distribution as running moment by moment. Observed runs do exactly that.

mod io;

pub use io::{parse_state, write_state};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::circuit::{Circuit, Control, Gate, GateKind, Instruction, Payload};
use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Amplitudes below this magnitude are dropped after every gate.
pub const PRUNE: f64 = 1e-12;
/// Branches whose probability is at most this are not enumerated.
pub const BRANCH_FLOOR: f64 = 1e-12;
pub const DEFAULT_MAX_BRANCHES: usize = 4096;

/// One digit per wire, wire 0 first.
pub type Label = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    dims: Vec<u32>,
    amps: BTreeMap<Label, C64>,
}

/// `e^{2πi k/d}`.
pub fn root_of_unity(k: i64, d: u32) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (k.rem_euclid(d as i64) as f64) / d as f64)
}

impl SparseState {
    /// All wires in `|0⟩`.
    pub fn zero(dims: Vec<u32>) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(vec![0u8; dims.len()], C64::new(1.0, 0.0));
        SparseState { dims, amps }
    }

    /// Basis state with the given digits.
    pub fn basis(dims: Vec<u32>, digits: &[u32]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(&dims).any(|(x, d)| x >= d) {
            return Err(Error::DimensionMismatch("basis digits do not fit the wire table".into()));
        }
        let mut amps = BTreeMap::new();
        amps.insert(digits.iter().map(|&x| x as u8).collect(), C64::new(1.0, 0.0));
        Ok(SparseState { dims, amps })
    }

    /// Places a dense vector on `wires` (first listed wire most
    /// significant); every other wire is `|0⟩`.
    pub fn from_amplitudes(dims: Vec<u32>, wires: &[usize], amps: &[C64]) -> Result<Self> {
        let size: usize = wires.iter().map(|&w| dims.get(w).copied().unwrap_or(0) as usize).product();
        if wires.iter().any(|&w| w >= dims.len()) {
            return Err(Error::DimensionMismatch("wire outside the state".into()));
        }
        if size != amps.len() {
            return Err(Error::DimensionMismatch(format!("expected {size} amplitudes, got {}", amps.len())));
        }
        let mut map = BTreeMap::new();
        for (j, &a) in amps.iter().enumerate() {
            if a.norm() <= PRUNE {
                continue;
            }
            let mut label = vec![0u8; dims.len()];
            let mut rest = j;
            for &w in wires.iter().rev() {
                let d = dims[w] as usize;
                label[w] = (rest % d) as u8;
                rest /= d;
            }
            map.insert(label, a);
        }
        let s = SparseState { dims, amps: map };
        let n = s.norm_sqr();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(n));
        }
        Ok(s)
    }

    /// Dense vector over `wires`, requiring every other wire to read `|0⟩`.
    pub fn extract(&self, wires: &[usize]) -> Result<Vec<C64>> {
        let size: usize = wires.iter().map(|&w| self.dims[w] as usize).product();
        let mut keep = vec![false; self.dims.len()];
        for &w in wires {
            keep[w] = true;
        }
        let mut out = vec![C64::new(0.0, 0.0); size];
        for (label, &a) in &self.amps {
            if let Some(w) = (0..label.len()).find(|&w| !keep[w] && label[w] != 0) {
                return Err(Error::Entangled(w));
            }
            let mut j = 0usize;
            for &w in wires {
                j = j * self.dims[w] as usize + label[w] as usize;
            }
            out[j] += a;
        }
        Ok(out)
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }
    pub fn num_wires(&self) -> usize {
        self.dims.len()
    }
    pub fn support(&self) -> usize {
        self.amps.len()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Label, &C64)> {
        self.amps.iter()
    }
    pub fn amplitude(&self, label: &[u8]) -> C64 {
        self.amps.get(label).copied().unwrap_or_default()
    }
    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    fn check_wire(&self, w: usize) -> Result<()> {
        if w >= self.dims.len() {
            Err(Error::UnknownWire(w))
        } else {
            Ok(())
        }
    }

    fn controls_hold(label: &[u8], controls: &[Control]) -> bool {
        controls.iter().all(|c| label[c.wire] as u32 == c.value)
    }

    /// Applies `matrix` (row-major, `d×d`) to `wire` on the controlled
    /// subspace.
    pub fn apply_single(&mut self, wire: usize, matrix: &[C64], controls: &[Control]) -> Result<()> {
        self.check_wire(wire)?;
        let d = self.dims[wire] as usize;
        if matrix.len() != d * d {
            return Err(Error::DimensionMismatch(format!("{}-entry matrix on dimension {d}", matrix.len())));
        }
        for c in controls {
            self.check_wire(c.wire)?;
        }
        let mut out: BTreeMap<Label, C64> = BTreeMap::new();
        for (label, &a) in &self.amps {
            if !Self::controls_hold(label, controls) {
                *out.entry(label.clone()).or_default() += a;
                continue;
            }
            let x = label[wire] as usize;
            for y in 0..d {
                let m = matrix[y * d + x];
                if m == C64::default() {
                    continue;
                }
                let mut l = label.clone();
                l[wire] = y as u8;
                *out.entry(l).or_default() += m * a;
            }
        }
        out.retain(|_, a| a.norm() > PRUNE);
        self.amps = out;
        Ok(())
    }

    /// Relabels every basis state by `f`; `f` must be a bijection.
    pub fn apply_permutation(&mut self, f: impl Fn(&mut Label)) {
        let mut out = BTreeMap::new();
        for (mut label, a) in std::mem::take(&mut self.amps) {
            f(&mut label);
            out.insert(label, a);
        }
        self.amps = out;
    }

    /// Applies one gate.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        use GateKind::*;
        for w in g.all_wires() {
            self.check_wire(w)?;
        }
        let dim = self.dims[g.wires[0]];
        for w in g.all_wires() {
            if self.dims[w] != dim {
                return Err(Error::DimensionMismatch(format!("{} spans wires of different dimension", g.kind.name())));
            }
        }
        if g.kind.qubit_only() && dim != 2 {
            return Err(Error::DimensionMismatch(format!("{} on dimension {dim}", g.kind.name())));
        }
        let d = dim as usize;
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let diag = |v: Vec<C64>| {
            let mut m = vec![z; v.len() * v.len()];
            for (k, x) in v.iter().enumerate() {
                m[k * v.len() + k] = *x;
            }
            m
        };
        let shift = |k: u32| {
            let mut m = vec![z; d * d];
            for x in 0..d {
                m[((x + k as usize) % d) * d + x] = one;
            }
            m
        };
        let t = g.wires[0];
        match g.kind {
            X | MultiControlledX => {
                let target = *g.wires.last().unwrap();
                self.apply_single(target, &shift(1), &g.controls)
            }
            H => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_single(t, &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)], &g.controls)
            }
            S => self.apply_single(t, &diag(vec![one, i]), &g.controls),
            Sdg => self.apply_single(t, &diag(vec![one, -i]), &g.controls),
            Z => self.apply_single(t, &diag(vec![one, -one]), &g.controls),
            Ry(th) => {
                let (s, c) = (th / 2.0).sin_cos();
                self.apply_single(t, &[C64::new(c, 0.0), C64::new(-s, 0.0), C64::new(s, 0.0), C64::new(c, 0.0)], &g.controls)
            }
            Rz(th) => self.apply_single(t, &diag(vec![C64::from_polar(1.0, -th / 2.0), C64::from_polar(1.0, th / 2.0)]), &g.controls),
            PhaseZ(th) => self.apply_single(t, &diag(vec![one, C64::from_polar(1.0, th)]), &g.controls),
            Hd => {
                let norm = 1.0 / (d as f64).sqrt();
                let mut m = vec![z; d * d];
                for y in 0..d {
                    for x in 0..d {
                        m[y * d + x] = root_of_unity((x * y) as i64, dim) * norm;
                    }
                }
                self.apply_single(t, &m, &g.controls)
            }
            XplusC(k) => self.apply_single(t, &shift(k % dim), &g.controls),
            Zd => self.apply_single(t, &diag((0..d).map(|x| root_of_unity(x as i64, dim)).collect()), &g.controls),
            ZdPow(k) => self.apply_single(t, &diag((0..d).map(|x| root_of_unity(x as i64 * k as i64, dim)).collect()), &g.controls),
            CNOT => {
                let (c, t) = (g.wires[0], g.wires[1]);
                self.apply_permutation(|l| {
                    if l[c] == 1 {
                        l[t] ^= 1;
                    }
                });
                Ok(())
            }
            SWAP => {
                let (a, b) = (g.wires[0], g.wires[1]);
                self.apply_permutation(|l| l.swap(a, b));
                Ok(())
            }
            CXd | CXdInv => {
                let (s, t) = (g.wires[0], g.wires[1]);
                let sign = if g.kind == CXd { 1 } else { d - 1 };
                self.apply_permutation(|l| l[t] = ((l[t] as usize + sign * l[s] as usize) % d) as u8);
                Ok(())
            }
            FanOutOracle { inverse } => {
                let src = g.wires[0];
                let rest = &g.wires[1..];
                self.apply_permutation(|l| {
                    let x = l[src] as usize;
                    let add = if inverse { (d - x) % d } else { x };
                    for &w in rest {
                        l[w] = ((l[w] as usize + add) % d) as u8;
                    }
                });
                Ok(())
            }
            ParityOracle => {
                let (srcs, tgt) = g.wires.split_at(g.wires.len() - 1);
                let tgt = tgt[0];
                self.apply_permutation(|l| {
                    let p = srcs.iter().fold(0u8, |acc, &w| acc ^ l[w]);
                    l[tgt] ^= p;
                });
                Ok(())
            }
        }
    }

    /// Outcome probabilities for measuring `wire`.
    pub fn probabilities(&self, wire: usize) -> Result<Vec<f64>> {
        self.check_wire(wire)?;
        let mut p = vec![0.0; self.dims[wire] as usize];
        for (l, a) in &self.amps {
            p[l[wire] as usize] += a.norm_sqr();
        }
        Ok(p)
    }

    /// Collapses `wire` onto `outcome` and renormalizes; returns the
    /// outcome's probability.
    pub fn project(&mut self, wire: usize, outcome: u32) -> Result<f64> {
        self.check_wire(wire)?;
        self.amps.retain(|l, _| l[wire] as u32 == outcome);
        let p = self.norm_sqr();
        if p <= 0.0 {
            return Err(Error::ZeroMarginal);
        }
        let s = 1.0 / p.sqrt();
        for a in self.amps.values_mut() {
            *a *= s;
        }
        Ok(p)
    }

    /// Samples an outcome by the Born rule and collapses onto it.
    pub fn measure<R: Rng>(&mut self, wire: usize, rng: &mut R) -> Result<(u32, f64)> {
        let probs = self.probabilities(wire)?;
        let total: f64 = probs.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroMarginal);
        }
        let r: f64 = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut pick = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        for (k, &p) in probs.iter().enumerate() {
            acc += p;
            if r < acc && p > 0.0 {
                pick = k;
                break;
            }
        }
        let p = self.project(wire, pick as u32)?;
        Ok((pick as u32, p))
    }

    /// Returns a definite wire to `|0⟩`.
    pub fn reset(&mut self, wire: usize) -> Result<()> {
        self.check_wire(wire)?;
        let mut digits = self.amps.keys().map(|l| l[wire]);
        let first = digits.next().unwrap_or(0);
        if digits.any(|x| x != first) {
            return Err(Error::IndefiniteReset(wire));
        }
        if first != 0 {
            self.apply_permutation(|l| l[wire] = 0);
        }
        Ok(())
    }
}

/// `|⟨a|b⟩|`; 1 means equal up to global phase.
pub fn fidelity_up_to_global_phase(a: &SparseState, b: &SparseState) -> Result<f64> {
    if a.dims != b.dims {
        return Err(Error::DimensionMismatch("states live on different wire tables".into()));
    }
    let (small, large) = if a.amps.len() <= b.amps.len() { (a, b) } else { (b, a) };
    let mut ip = C64::default();
    for (l, x) in &small.amps {
        if let Some(y) = large.amps.get(l) {
            ip += x.conj() * y;
        }
    }
    if std::ptr::eq(small, b) {
        ip = ip.conj();
    }
    Ok(ip.norm())
}

/// `|⟨a|b⟩|` for dense vectors of equal length.
pub fn dense_fidelity(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm()
}

/// True iff every label in the support reads 0 on each listed wire.
pub fn partial_trace_check(state: &SparseState, wires: &[usize]) -> bool {
    state.amps.keys().all(|l| wires.iter().all(|&w| l.get(w).copied() == Some(0)))
}

/// Outcome of one measurement path.
#[derive(Clone, Debug, PartialEq)]
pub struct ShotResult {
    pub state: SparseState,
    /// Slot → outcome; `None` for slots never measured on this path.
    pub transcript: Vec<Option<u32>>,
    /// Support size at the point where each moment has fully executed.
    /// Unobserved runs may have started later moments by then.
    pub support_trace: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub weight: f64,
    pub result: ShotResult,
}

/// Runs circuits. `strict` rejects oracle gates.
#[derive(Clone, Copy, Debug, Default)]
pub struct Simulator {
    pub strict: bool,
}

/// Observer hook: moment index and the state right after that moment.
/// Observed runs execute strictly moment by moment.
pub type Observer<'a> = dyn FnMut(usize, &SparseState) + 'a;

struct Cursor {
    pos: usize,
    weight: f64,
    shot: ShotResult,
}

impl Simulator {
    pub fn strict() -> Self {
        Simulator { strict: true }
    }

    /// Execution order plus, per position, the moments that become fully
    /// executed there. In cone order each measurement runs right after the
    /// gates it depends on, so superpositions close as early as possible.
    /// Instructions on disjoint wires commute, so the final state and the
    /// outcome distribution do not depend on the order.
    fn schedule<'c>(&self, c: &'c Circuit, cone: bool) -> Schedule<'c> {
        let mut prog: Vec<(usize, &Instruction)> = Vec::new();
        for (m, moment) in c.moments().iter().enumerate() {
            let mut v: Vec<&Instruction> = moment.iter().collect();
            v.sort_by_key(|i| i.wires().into_iter().min().unwrap_or(usize::MAX));
            prog.extend(v.into_iter().map(|i| (m, i)));
        }
        let order: Vec<usize> = if cone { cone_order(c, &prog) } else { (0..prog.len()).collect() };
        let moments = c.moments().len();
        let mut last = vec![None; moments];
        for (pos, &i) in order.iter().enumerate() {
            let m = prog[i].0;
            last[m] = Some(last[m].map_or(pos, |p: usize| p.max(pos)));
        }
        let mut closes = vec![Vec::new(); order.len()];
        let mut head = Vec::new();
        let mut upto: Option<usize> = None;
        for (m, l) in last.iter().enumerate() {
            upto = match (upto, *l) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
            match upto {
                Some(p) => closes[p].push(m),
                None => head.push(m),
            }
        }
        Schedule { steps: order.into_iter().map(|i| prog[i].1).collect(), closes, head }
    }

    fn check_input(&self, c: &Circuit, init: &SparseState) -> Result<()> {
        if init.dims != c.dims() {
            return Err(Error::DimensionMismatch(format!(
                "state has {} wires, circuit has {}",
                init.num_wires(),
                c.num_wires()
            )));
        }
        if let Some(v) = c.validate().into_iter().next() {
            return Err(Error::InvalidGate(v.to_string()));
        }
        Ok(())
    }

    /// Executes from `cur.pos` until a measurement or the end. Returns the
    /// measurement's (wire, slot) if one is pending.
    fn advance(
        &self,
        sched: &Schedule<'_>,
        cur: &mut Cursor,
        obs: &mut Option<&mut Observer<'_>>,
    ) -> Result<Option<(usize, usize)>> {
        while cur.pos < sched.steps.len() {
            let instr = sched.steps[cur.pos];
            let run = match &instr.condition {
                None => true,
                Some(cond) => cond.holds(|s| cur.shot.transcript.get(s).copied().flatten())?,
            };
            if run {
                match &instr.payload {
                    Payload::Gate(g) => {
                        if self.strict && g.kind.is_oracle() {
                            return Err(Error::OracleInProtocol(g.kind.name().into()));
                        }
                        cur.shot.state.apply_gate(g)?;
                    }
                    Payload::Reset(w) => cur.shot.state.reset(*w)?,
                    Payload::Measure { wire, slot } => return Ok(Some((*wire, *slot))),
                }
            }
            self.finish_instr(sched, cur, obs);
        }
        Ok(None)
    }

    fn finish_instr(&self, sched: &Schedule<'_>, cur: &mut Cursor, obs: &mut Option<&mut Observer<'_>>) {
        for &m in &sched.closes[cur.pos] {
            Self::close(cur, m, obs);
        }
        cur.pos += 1;
    }

    fn close(cur: &mut Cursor, m: usize, obs: &mut Option<&mut Observer<'_>>) {
        cur.shot.support_trace.push(cur.shot.state.support());
        if let Some(f) = obs.as_mut() {
            f(m, &cur.shot.state);
        }
    }

    fn begin(sched: &Schedule<'_>, cur: &mut Cursor, obs: &mut Option<&mut Observer<'_>>) {
        for &m in &sched.head {
            Self::close(cur, m, obs);
        }
    }

    fn start(c: &Circuit, init: &SparseState) -> Cursor {
        Cursor {
            pos: 0,
            weight: 1.0,
            shot: ShotResult { state: init.clone(), transcript: vec![None; c.num_slots()], support_trace: Vec::new() },
        }
    }

    /// One sampled execution, deterministic in `seed`.
    pub fn run_shot(&self, c: &Circuit, init: &SparseState, seed: u64) -> Result<ShotResult> {
        self.run_shot_observed(c, init, seed, None)
    }

    pub fn run_shot_observed(&self, c: &Circuit, init: &SparseState, seed: u64, mut obs: Option<&mut Observer<'_>>) -> Result<ShotResult> {
        self.check_input(c, init)?;
        let sched = self.schedule(c, obs.is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = Self::start(c, init);
        Self::begin(&sched, &mut cur, &mut obs);
        while let Some((wire, slot)) = self.advance(&sched, &mut cur, &mut obs)? {
            let (k, _) = cur.shot.state.measure(wire, &mut rng)?;
            cur.shot.transcript[slot] = Some(k);
            self.finish_instr(&sched, &mut cur, &mut obs);
        }
        Ok(cur.shot)
    }

    /// Every measurement path with probability above [`BRANCH_FLOOR`],
    /// depth first, outcome 0 first.
    pub fn run_all_branches(&self, c: &Circuit, init: &SparseState, max_branches: usize) -> Result<Vec<Branch>> {
        self.run_all_branches_observed(c, init, max_branches, None)
    }

    pub fn run_all_branches_observed(
        &self,
        c: &Circuit,
        init: &SparseState,
        max_branches: usize,
        mut obs: Option<&mut Observer<'_>>,
    ) -> Result<Vec<Branch>> {
        self.check_input(c, init)?;
        let sched = self.schedule(c, obs.is_none());
        let mut first = Self::start(c, init);
        Self::begin(&sched, &mut first, &mut obs);
        let mut stack = vec![first];
        let mut leaves = Vec::new();
        while let Some(mut cur) = stack.pop() {
            match self.advance(&sched, &mut cur, &mut obs)? {
                None => {
                    if leaves.len() == max_branches {
                        return Err(Error::BranchExplosion(max_branches));
                    }
                    leaves.push(Branch { weight: cur.weight, result: cur.shot });
                }
                Some((wire, slot)) => {
                    let probs = cur.shot.state.probabilities(wire)?;
                    let total: f64 = probs.iter().sum();
                    let live: Vec<usize> = (0..probs.len()).filter(|&k| probs[k] / total > BRANCH_FLOOR).collect();
                    if live.is_empty() {
                        return Err(Error::ZeroMarginal);
                    }
                    let mut parent = Some(cur);
                    for (idx, &k) in live.iter().enumerate().rev() {
                        let mut child = if idx == 0 {
                            parent.take().unwrap()
                        } else {
                            let p = parent.as_ref().unwrap();
                            Cursor { pos: p.pos, weight: p.weight, shot: p.shot.clone() }
                        };
                        let p = child.shot.state.project(wire, k as u32)?;
                        child.weight *= p;
                        child.shot.transcript[slot] = Some(k as u32);
                        self.finish_instr(&sched, &mut child, &mut obs);
                        stack.push(child);
                    }
                }
            }
        }
        Ok(leaves)
    }
}

struct Schedule<'c> {
    steps: Vec<&'c Instruction>,
    closes: Vec<Vec<usize>>,
    /// Empty leading moments, closed before anything runs.
    head: Vec<usize>,
}

/// Topological order of `prog` that pulls each measurement's dependencies
/// forward. Dependencies: the previous instruction on every wire, and the
/// measurements whose slots a condition reads.
fn cone_order(c: &Circuit, prog: &[(usize, &Instruction)]) -> Vec<usize> {
    let mut last_on_wire: Vec<Option<usize>> = vec![None; c.num_wires()];
    let mut writer: Vec<Option<usize>> = vec![None; c.num_slots()];
    let mut readers: Vec<Vec<usize>> = vec![Vec::new(); c.num_slots()];
    let mut deps: Vec<Vec<usize>> = Vec::with_capacity(prog.len());
    for (i, (_, instr)) in prog.iter().enumerate() {
        let mut d = Vec::new();
        for w in instr.wires() {
            if let Some(p) = last_on_wire[w].replace(i) {
                d.push(p);
            }
        }
        if let Some(cond) = &instr.condition {
            for s in cond.slots() {
                d.extend(writer[s]);
                readers[s].push(i);
            }
        }
        if let Payload::Measure { slot, .. } = instr.payload {
            d.append(&mut readers[slot]);
            d.extend(writer[slot].replace(i));
        }
        deps.push(d);
    }
    let mut done = vec![false; prog.len()];
    let mut order = Vec::with_capacity(prog.len());
    let mut visit = |root: usize, order: &mut Vec<usize>| {
        let mut stack = vec![(root, 0usize)];
        while let Some((i, k)) = stack.pop() {
            if done[i] {
                continue;
            }
            match deps[i].get(k) {
                Some(&d) => {
                    stack.push((i, k + 1));
                    if !done[d] {
                        stack.push((d, 0));
                    }
                }
                None => {
                    done[i] = true;
                    order.push(i);
                }
            }
        }
    };
    for (i, (_, instr)) in prog.iter().enumerate() {
        if instr.is_measure() {
            visit(i, &mut order);
        }
    }
    for i in 0..prog.len() {
        visit(i, &mut order);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Placement, Role};

    fn c1(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    #[test]
    fn x_flips_zero() {
        let mut s = SparseState::zero(vec![2]);
        s.apply_gate(&Gate::x(0)).unwrap();
        assert_eq!(s.amplitude(&[1]), c1(1.0));
    }

    #[test]
    fn qutrit_hadamard_is_uniform() {
        let mut s = SparseState::zero(vec![3]);
        s.apply_gate(&Gate::new(GateKind::Hd, vec![0])).unwrap();
        for k in 0..3u8 {
            assert!((s.amplitude(&[k]) - c1(1.0 / 3f64.sqrt())).norm() < 1e-12);
        }
    }

    #[test]
    fn qutrit_cx_adds_mod_three() {
        let mut s = SparseState::basis(vec![3, 3], &[2, 2]).unwrap();
        s.apply_gate(&Gate::new(GateKind::CXd, vec![0, 1])).unwrap();
        assert_eq!(s.amplitude(&[2, 1]), c1(1.0));
    }

    #[test]
    fn bell_measure_branch_zero() {
        let mut s = SparseState::zero(vec![2, 2]);
        s.apply_gate(&Gate::h(0)).unwrap();
        s.apply_gate(&Gate::cnot(0, 1)).unwrap();
        let p = s.project(0, 0).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        assert!((s.amplitude(&[0, 0]) - c1(1.0)).norm() < 1e-12);
    }

    #[test]
    fn fidelity_examples() {
        let zero = SparseState::zero(vec![2]);
        let mut phased = zero.clone();
        phased.apply_gate(&Gate::phase(0.7, 0)).unwrap();
        phased.apply_gate(&Gate::x(0)).unwrap();
        phased.apply_gate(&Gate::phase(0.7, 0)).unwrap();
        phased.apply_gate(&Gate::x(0)).unwrap();
        assert!((fidelity_up_to_global_phase(&zero, &phased).unwrap() - 1.0).abs() < 1e-12);
        let one = SparseState::basis(vec![2], &[1]).unwrap();
        assert_eq!(fidelity_up_to_global_phase(&zero, &one).unwrap(), 0.0);
        let mut u = SparseState::zero(vec![2, 2]);
        u.apply_gate(&Gate::h(0)).unwrap();
        u.apply_gate(&Gate::h(1)).unwrap();
        let f = fidelity_up_to_global_phase(&u, &SparseState::zero(vec![2, 2])).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hadamard_measure_branches() {
        let mut c = Circuit::new(2, false);
        c.add_wire(Role::Input);
        let s = c.add_slot();
        c.append(Gate::h(0), Placement::EarliestLegal).unwrap();
        c.append(Instruction::measure(0, s), Placement::EarliestLegal).unwrap();
        let b = Simulator::strict().run_all_branches(&c, &SparseState::zero(vec![2]), 16).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|x| (x.weight - 0.5).abs() < 1e-12));
    }

    #[test]
    fn empty_circuit_leaves_state() {
        let mut c = Circuit::new(2, false);
        c.add_wires(2, Role::Input);
        let mut init = SparseState::zero(vec![2, 2]);
        init.apply_gate(&Gate::h(1)).unwrap();
        let r = Simulator::default().run_shot(&c, &init, 3).unwrap();
        assert_eq!(r.state, init);
    }

    #[test]
    fn branch_cap_is_enforced() {
        let mut c = Circuit::new(2, false);
        c.add_wires(3, Role::Input);
        for w in 0..3 {
            let s = c.add_slot();
            c.append(Gate::h(w), Placement::EarliestLegal).unwrap();
            c.append(Instruction::measure(w, s), Placement::EarliestLegal).unwrap();
        }
        let r = Simulator::default().run_all_branches(&c, &SparseState::zero(vec![2; 3]), 7);
        assert!(matches!(r, Err(Error::BranchExplosion(7))));
    }

    #[test]
    fn partial_trace_examples() {
        let mut s = SparseState::zero(vec![2, 2, 2]);
        s.apply_gate(&Gate::ry(1.0, 2)).unwrap();
        assert!(partial_trace_check(&s, &[0, 1]));
        let mut bell = SparseState::zero(vec![2, 2]);
        bell.apply_gate(&Gate::h(0)).unwrap();
        bell.apply_gate(&Gate::cnot(0, 1)).unwrap();
        assert!(!partial_trace_check(&bell, &[0]));
    }

    #[test]
    fn indefinite_reset_is_an_error() {
        let mut s = SparseState::zero(vec![2]);
        s.apply_gate(&Gate::h(0)).unwrap();
        assert!(matches!(s.reset(0), Err(Error::IndefiniteReset(0))));
    }
}
