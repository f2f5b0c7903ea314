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

//! State files: one `digits re im` line per stored amplitude, digits
//! written wire 0 first. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{SparseState, C64};
use crate::error::{Error, Result};

/// Renders the support in label order. Digits above 9 are not supported
/// by the format.
pub fn write_state(s: &SparseState) -> String {
    let mut out = String::new();
    for (label, a) in s.iter() {
        let digits: String = label.iter().map(|&x| char::from_digit(x as u32, 36).unwrap_or('?')).collect();
        let _ = writeln!(out, "{digits} {} {}", a.re, a.im);
    }
    out
}

/// Parses a state file for the given wire table. Repeated labels add.
pub fn parse_state(text: &str, dims: &[u32]) -> Result<SparseState> {
    let mut amps: BTreeMap<Vec<u8>, C64> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: &str| Error::Parse { line: i + 1, msg: m.to_string() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(bad("expected 'digits re im'"));
        }
        if toks[0].chars().count() != dims.len() {
            return Err(bad("label length differs from wire count"));
        }
        let mut label = Vec::with_capacity(dims.len());
        for (ch, &d) in toks[0].chars().zip(dims) {
            let x = ch.to_digit(36).filter(|&x| x < d).ok_or_else(|| bad("digit out of range"))?;
            label.push(x as u8);
        }
        let re: f64 = toks[1].parse().map_err(|_| bad("bad real part"))?;
        let im: f64 = toks[2].parse().map_err(|_| bad("bad imaginary part"))?;
        *amps.entry(label).or_default() += C64::new(re, im);
    }
    let mut s = SparseState::zero(dims.to_vec());
    s.amps = amps;
    s.amps.retain(|_, a| a.norm() > super::PRUNE);
    let n = s.norm_sqr();
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(n));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn round_trip() {
        let mut s = SparseState::zero(vec![2, 3]);
        s.apply_gate(&Gate::h(0)).unwrap();
        let text = write_state(&s);
        assert_eq!(parse_state(&text, &[2, 3]).unwrap(), s);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_state("01 1 0\n", &[2]).is_err());
        assert!(parse_state("2 1 0\n", &[2]).is_err());
        assert!(matches!(parse_state("0 0.5 0\n", &[2]), Err(Error::NotNormalized(_))));
    }
}
