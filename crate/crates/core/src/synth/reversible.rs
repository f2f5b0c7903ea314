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

//! Reversible functions as wire permutations of a one-hot register.

use super::encode::{check_width, declared, Encoding, ToBinary, ToOnehot};
use crate::circuit::{Gate, Params, Role};
use crate::error::{Error, Result};
use crate::primitives::{Builder, GadgetBuild, Mode};
use rand::seq::SliceRandom;
use rand::Rng;

/// A bijection on `{0,1}ⁿ` given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibleSpec {
    pub n: usize,
    pub table: Vec<usize>,
}

impl ReversibleSpec {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        check_width(n)?;
        if table.len() != 1 << n {
            return Err(Error::NotBijective(format!("table has {} entries, expected {}", table.len(), 1 << n)));
        }
        let mut hit = vec![false; table.len()];
        for (x, &y) in table.iter().enumerate() {
            if y >= table.len() {
                return Err(Error::NotBijective(format!("f({x}) = {y} is out of range")));
            }
            if std::mem::replace(&mut hit[y], true) {
                return Err(Error::NotBijective(format!("{y} has two preimages")));
            }
        }
        Ok(ReversibleSpec { n, table })
    }

    pub fn identity(n: usize) -> Self {
        ReversibleSpec { n, table: (0..1 << n).collect() }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut table: Vec<usize> = (0..1 << n).collect();
        table.shuffle(rng);
        ReversibleSpec { n, table }
    }

    /// Lines of `x f(x)`; every input must appear once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| Error::Parse { line: no + 1, msg: format!("bad integer {s}") }))
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(Error::Parse { line: no + 1, msg: "expected `x f(x)`".into() });
            }
            pairs.push((nums[0], nums[1]));
        }
        let len = pairs.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::NotBijective(format!("{len} entries is not a power of two")));
        }
        let mut table = vec![usize::MAX; len];
        for (x, y) in pairs {
            if x >= len || table[x] != usize::MAX {
                return Err(Error::NotBijective(format!("input {x} missing or repeated")));
            }
            table[x] = y;
        }
        ReversibleSpec::new(len.trailing_zeros() as usize, table)
    }

    /// Two sets of disjoint transpositions whose product (first, then
    /// second) moves position `x` to `f(x)`. Each cycle `a₀ → a₁ → …` is
    /// reflected twice: `aᵢ ↔ a₋ᵢ`, then `aᵢ ↔ a₁₋ᵢ`.
    pub fn involutions(&self) -> [Vec<(usize, usize)>; 2] {
        let mut seen = vec![false; self.table.len()];
        let mut out: [Vec<(usize, usize)>; 2] = Default::default();
        for start in 0..self.table.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.table[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.table[x];
            }
            let l = cycle.len() as isize;
            for (pass, shift) in [0isize, 1].into_iter().enumerate() {
                for i in 0..l {
                    let j = (shift - i).rem_euclid(l);
                    if i < j {
                        out[pass].push((cycle[i as usize], cycle[j as usize]));
                    }
                }
            }
        }
        out
    }
}

/// `|x⟩ → |f(x)⟩` on `n` wires (plus scratch).
pub fn build_reversible(f: &ReversibleSpec, mode: Mode) -> Result<GadgetBuild> {
    let f = ReversibleSpec::new(f.n, f.table.clone())?;
    let len = 1 << f.n;
    let mut b = Builder::new(2, mode);
    let mut reg = b.wires(f.n, Role::Input);
    reg.extend(b.wires(len - f.n, Role::Ancilla));
    let enc = Encoding::new(&mut b, reg.clone(), (0..len).collect(), f.n);
    let onehot = ToOnehot::new(&mut b, &enc)?;
    let mut layers = onehot.layers();
    onehot.emit(&mut b)?;
    for (pass, swaps) in f.involutions().into_iter().enumerate() {
        b.barrier();
        b.mark(if pass == 0 { "reflect-a" } else { "reflect-b" });
        for (x, y) in swaps {
            let (p, q) = (reg[x], reg[y]);
            b.push(Gate::cnot(p, q))?;
            b.push(Gate::cnot(q, p))?;
            b.push(Gate::cnot(p, q))?;
        }
    }
    b.barrier();
    b.mark("binary");
    let stages = ToBinary::new(&mut b, &enc)?;
    layers += stages.layers();
    stages.emit(&mut b)?;
    let params = Params { n: Some(f.n), ..Default::default() };
    let io = reg[..f.n].to_vec();
    Ok(GadgetBuild::finish(b, "reversible", params, io.clone(), io, declared(mode, layers)))
}
