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

//! Compile-time targets: states to prepare and unitaries to embed.

use super::angles::{check_norm, NORM_TOL};
use crate::error::{Error, Result};
use crate::sim::C64;
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub enum Amplitudes {
    /// All `2ⁿ` amplitudes, index `j` in position `j`.
    Dense(Vec<C64>),
    /// Nonzero terms `(index, amplitude)`.
    Sparse(Vec<(usize, C64)>),
}

/// A normalized `n`-qubit state, basis index read most significant first.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetState {
    pub n: usize,
    pub amplitudes: Amplitudes,
}

fn width_of(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidTarget(format!("length {len} is not a power of two of at least 2")));
    }
    Ok(len.trailing_zeros() as usize)
}

impl TargetState {
    pub fn dense(amps: Vec<C64>) -> Result<Self> {
        let n = width_of(amps.len())?;
        check_norm(amps.iter().map(|a| a.norm_sqr()).sum())?;
        Ok(TargetState { n, amplitudes: Amplitudes::Dense(amps) })
    }

    pub fn sparse(n: usize, terms: Vec<(usize, C64)>) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize {
            return Err(Error::InvalidTarget(format!("width {n} out of range")));
        }
        if terms.is_empty() {
            return Err(Error::InvalidTarget("no terms".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(j, _) in &terms {
            if j >> n != 0 {
                return Err(Error::InvalidTarget(format!("index {j} needs more than {n} bits")));
            }
            if !seen.insert(j) {
                return Err(Error::InvalidTarget(format!("index {j} repeated")));
            }
        }
        check_norm(terms.iter().map(|t| t.1.norm_sqr()).sum())?;
        Ok(TargetState { n, amplitudes: Amplitudes::Sparse(terms) })
    }

    /// `2ⁿ` amplitudes.
    pub fn to_dense(&self) -> Vec<C64> {
        match &self.amplitudes {
            Amplitudes::Dense(v) => v.clone(),
            Amplitudes::Sparse(t) => {
                let mut v = vec![C64::new(0.0, 0.0); 1 << self.n];
                for &(j, a) in t {
                    v[j] = a;
                }
                v
            }
        }
    }

    /// Nonzero terms in ascending index order.
    pub fn terms(&self) -> Vec<(usize, C64)> {
        let mut t: Vec<(usize, C64)> = match &self.amplitudes {
            Amplitudes::Dense(v) => v.iter().copied().enumerate().collect(),
            Amplitudes::Sparse(t) => t.clone(),
        };
        t.retain(|x| x.1.norm() != 0.0);
        t.sort_by_key(|x| x.0);
        t
    }

    /// Haar-like random dense target (normalized complex Gaussian).
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        TargetState { n, amplitudes: Amplitudes::Dense(random_unit(1 << n, rng)) }
    }

    /// Random target supported on `s` distinct random indices.
    pub fn random_sparse<R: Rng>(n: usize, s: usize, rng: &mut R) -> Self {
        let picked = rand::seq::index::sample(rng, 1 << n, s).into_vec();
        let amps = random_unit(s, rng);
        TargetState { n, amplitudes: Amplitudes::Sparse(picked.into_iter().zip(amps).collect()) }
    }

    /// Dense files hold `re im` per line; sparse files hold
    /// `bits re im`, where `bits` is the index in binary.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dense = Vec::new();
        let mut sparse = Vec::new();
        let mut width = None;
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: no + 1, msg };
            let tok: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("bad number {s}")));
            match tok.len() {
                2 if sparse.is_empty() => dense.push(C64::new(num(tok[0])?, num(tok[1])?)),
                3 if dense.is_empty() => {
                    let bits = tok[0];
                    if bits.is_empty() || !bits.bytes().all(|c| c == b'0' || c == b'1') || bits.len() >= usize::BITS as usize {
                        return Err(err(format!("bad index {bits}")));
                    }
                    if *width.get_or_insert(bits.len()) != bits.len() {
                        return Err(err("index widths differ".into()));
                    }
                    let j = usize::from_str_radix(bits, 2).map_err(|_| err(format!("bad index {bits}")))?;
                    sparse.push((j, C64::new(num(tok[1])?, num(tok[2])?)));
                }
                _ => return Err(err(format!("expected `re im` or `bits re im`, got {} fields", tok.len()))),
            }
        }
        match width {
            Some(n) => TargetState::sparse(n, sparse),
            None => TargetState::dense(dense),
        }
    }
}

/// Normalized complex Gaussian vector.
pub fn random_unit<R: Rng>(len: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..len).map(|_| C64::new(gauss(rng), gauss(rng))).collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; one sample per call keeps the stream simple.
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

/// A `2ⁿ × 2ⁿ` unitary, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    pub n: usize,
    pub rows: Vec<Vec<C64>>,
}

impl Unitary {
    /// Checks that the columns are orthonormal.
    pub fn new(rows: Vec<Vec<C64>>) -> Result<Self> {
        let n = width_of(rows.len())?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotUnitary(f64::INFINITY));
        }
        let mut worst: f64 = 0.0;
        for a in 0..dim {
            for b in a..dim {
                let dot: C64 = (0..dim).map(|r| rows[r][a].conj() * rows[r][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).norm());
            }
        }
        if worst > NORM_TOL {
            return Err(Error::NotUnitary(worst));
        }
        Ok(Unitary { n, rows })
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1 << n;
        let rows = (0..dim).map(|r| (0..dim).map(|c| C64::new(f64::from(u8::from(r == c)), 0.0)).collect()).collect();
        Unitary { n, rows }
    }

    /// `U|j⟩`.
    pub fn column(&self, j: usize) -> Vec<C64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Gram-Schmidt on a complex Gaussian matrix.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let dim = 1 << n;
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        while cols.len() < dim {
            let mut v = random_unit(dim, rng);
            for c in &cols {
                let dot: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= dot * y;
                }
            }
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                cols.push(v.into_iter().map(|a| a / norm).collect());
            }
        }
        let rows = (0..dim).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        Unitary { n, rows }
    }

    /// One row per line, `re im` pairs across the row.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|_| Error::Parse { line: no + 1, msg: format!("bad number {s}") }))
                .collect::<Result<_>>()?;
            if !nums.len().is_multiple_of(2) {
                return Err(Error::Parse { line: no + 1, msg: "odd number of fields".into() });
            }
            rows.push(nums.chunks(2).map(|p| C64::new(p[0], p[1])).collect());
        }
        Unitary::new(rows)
    }
}
