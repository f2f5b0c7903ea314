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

//! Dense reference simulator for at most 12 wires. It shares no code with
//! the sparse engine: every gate is written out from its matrix.

use dynq::circuit::{Circuit, Gate, GateKind, Payload};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub const MAX_WIRES: usize = 12;

#[derive(Clone, Debug)]
pub struct Dense {
    pub dims: Vec<u32>,
    pub amps: Vec<C64>,
}

fn w(d: u32, k: i64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k.rem_euclid(d as i64) as f64 / d as f64)
}

impl Dense {
    pub fn from_vec(dims: Vec<u32>, amps: Vec<C64>) -> Self {
        assert!(dims.len() <= MAX_WIRES, "dense oracle is limited to {MAX_WIRES} wires");
        let size: usize = dims.iter().map(|&d| d as usize).product();
        assert_eq!(size, amps.len());
        Dense { dims, amps }
    }

    pub fn basis(dims: Vec<u32>, index: usize) -> Self {
        let size: usize = dims.iter().map(|&d| d as usize).product();
        let mut amps = vec![C64::new(0.0, 0.0); size];
        amps[index] = C64::new(1.0, 0.0);
        Self::from_vec(dims, amps)
    }

    fn digits(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            out[i] = (idx % self.dims[i] as usize) as u32;
            idx /= self.dims[i] as usize;
        }
        out
    }

    fn index(&self, digits: &[u32]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    /// Image of one basis state under `g` as (digits, coefficient) pairs.
    fn image(&self, g: &Gate, x: &[u32]) -> Vec<(Vec<u32>, C64)> {
        use GateKind::*;
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        if !g.controls.iter().all(|c| x[c.wire] == c.value) {
            return vec![(x.to_vec(), one)];
        }
        let t = *g.wires.last().unwrap();
        let single = |m: [[C64; 2]; 2]| -> Vec<(Vec<u32>, C64)> {
            let col = x[t] as usize;
            (0..2)
                .map(|row| {
                    let mut y = x.to_vec();
                    y[t] = row as u32;
                    (y, m[row][col])
                })
                .collect()
        };
        let z = C64::new(0.0, 0.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let d = self.dims[g.wires[0]];
        match g.kind {
            X | MultiControlledX => single([[z, one], [one, z]]),
            H => single([[one * r, one * r], [one * r, -one * r]]),
            S => single([[one, z], [z, i]]),
            Sdg => single([[one, z], [z, -i]]),
            Z => single([[one, z], [z, -one]]),
            Ry(th) => {
                let (s, c) = (th / 2.0).sin_cos();
                single([[one * c, -one * s], [one * s, one * c]])
            }
            Rz(th) => single([[C64::from_polar(1.0, -th / 2.0), z], [z, C64::from_polar(1.0, th / 2.0)]]),
            PhaseZ(th) => single([[one, z], [z, C64::from_polar(1.0, th)]]),
            CNOT => {
                let mut y = x.to_vec();
                if x[g.wires[0]] == 1 {
                    y[g.wires[1]] ^= 1;
                }
                vec![(y, one)]
            }
            SWAP => {
                let mut y = x.to_vec();
                y.swap(g.wires[0], g.wires[1]);
                vec![(y, one)]
            }
            Hd => (0..d)
                .map(|k| {
                    let mut y = x.to_vec();
                    y[t] = k;
                    (y, w(d, (k * x[t]) as i64) / (d as f64).sqrt())
                })
                .collect(),
            CXd | CXdInv => {
                let mut y = x.to_vec();
                let s = x[g.wires[0]] as i64;
                let delta = if g.kind == CXd { s } else { -s };
                y[g.wires[1]] = (x[g.wires[1]] as i64 + delta).rem_euclid(d as i64) as u32;
                vec![(y, one)]
            }
            XplusC(k) => {
                let mut y = x.to_vec();
                y[t] = (x[t] + k) % d;
                vec![(y, one)]
            }
            Zd => vec![(x.to_vec(), w(d, x[t] as i64))],
            ZdPow(k) => vec![(x.to_vec(), w(d, (k * x[t]) as i64))],
            FanOutOracle { inverse } => {
                let mut y = x.to_vec();
                let s = x[g.wires[0]] as i64;
                for &tw in &g.wires[1..] {
                    let delta = if inverse { -s } else { s };
                    y[tw] = (x[tw] as i64 + delta).rem_euclid(d as i64) as u32;
                }
                vec![(y, one)]
            }
            ParityOracle => {
                let mut y = x.to_vec();
                let p = g.wires[..g.wires.len() - 1].iter().fold(0, |a, &w| a ^ x[w]);
                y[t] ^= p;
                vec![(y, one)]
            }
        }
    }

    pub fn apply(&mut self, g: &Gate) {
        let mut out = vec![C64::new(0.0, 0.0); self.amps.len()];
        for idx in 0..self.amps.len() {
            let a = self.amps[idx];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let x = self.digits(idx);
            for (y, c) in self.image(g, &x) {
                out[self.index(&y)] += c * a;
            }
        }
        self.amps = out;
    }

    /// Runs a measurement-free, unconditioned circuit.
    pub fn run(c: &Circuit, mut s: Dense) -> Dense {
        for m in c.moments() {
            for instr in m {
                assert!(instr.condition.is_none(), "dense oracle runs unitary circuits only");
                match &instr.payload {
                    Payload::Gate(g) => s.apply(g),
                    _ => panic!("dense oracle runs unitary circuits only"),
                }
            }
        }
        s
    }

    pub fn fidelity(&self, other: &[C64]) -> f64 {
        self.amps.iter().zip(other).map(|(a, b)| a.conj() * b).sum::<C64>().norm()
    }
}
