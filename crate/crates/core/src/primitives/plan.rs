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

//! Block plans: how many wires each measurement-linked block holds.

use crate::error::{Error, Result};

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Blocks for copying one wire onto `n` wires: `blocks` groups of size
/// `k`, the last possibly smaller, joined by one ancilla each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhzPlan {
    pub n: usize,
    pub k: usize,
}

impl GhzPlan {
    /// Smallest `k ≥ ⌈nc/(n+c)⌉` whose ancilla count stays within `n/c`.
    pub fn new(n: usize, c: usize) -> Result<Self> {
        if n == 0 || c == 0 {
            return Err(Error::InvalidPlan(format!("copy plan needs n ≥ 1 and c ≥ 1 (got n={n}, c={c})")));
        }
        let lo = ceil_div(n * c, n + c).max(1);
        (lo..=n)
            .find(|&k| c * (ceil_div(n, k) - 1) <= n)
            .map(|k| GhzPlan { n, k })
            .ok_or_else(|| Error::InvalidPlan(format!("no block size for n={n}, c={c}")))
    }

    pub fn with_block(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidPlan("block size and width must be positive".into()));
        }
        Ok(GhzPlan { n, k: k.min(n) })
    }

    pub fn blocks(&self) -> usize {
        ceil_div(self.n, self.k)
    }

    pub fn ancilla(&self) -> usize {
        self.blocks() - 1
    }
}

/// Target blocks for a fan-out onto `n` wires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanoutPlan {
    pub n: usize,
    pub p: usize,
    pub qudit: bool,
}

impl FanoutPlan {
    /// Smallest block size whose ancilla count (`2m−1`, or `2m` for the
    /// qudit construction) stays within `n/c`.
    pub fn new(n: usize, c: usize, qudit: bool) -> Result<Self> {
        if n == 0 || c == 0 {
            return Err(Error::InvalidPlan(format!("fan-out plan needs n ≥ 1 and c ≥ 1 (got n={n}, c={c})")));
        }
        (1..=n)
            .find(|&p| {
                let m = ceil_div(n, p);
                let anc = if qudit { 2 * m } else { 2 * m - 1 };
                c * anc <= n
            })
            .map(|p| FanoutPlan { n, p, qudit })
            .ok_or_else(|| Error::InvalidPlan(format!("no fan-out block keeps ancilla within n/c for n={n}, c={c}")))
    }

    pub fn with_block(n: usize, p: usize, qudit: bool) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(Error::InvalidPlan("block size and width must be positive".into()));
        }
        Ok(FanoutPlan { n, p: p.min(n), qudit })
    }

    pub fn blocks(&self) -> usize {
        ceil_div(self.n, self.p)
    }

    pub fn ancilla(&self) -> usize {
        let m = self.blocks();
        if self.qudit {
            2 * m
        } else {
            2 * m - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_wires_budget_four() {
        let p = GhzPlan::new(9, 4).unwrap();
        assert_eq!((p.k, p.ancilla()), (3, 2));
    }

    #[test]
    fn nine_wires_budget_five_needs_wider_blocks() {
        let p = GhzPlan::new(9, 5).unwrap();
        assert_eq!((p.k, p.ancilla()), (5, 1));
    }

    #[test]
    fn single_wire_needs_nothing() {
        assert_eq!(GhzPlan::new(1, 3).unwrap().ancilla(), 0);
    }

    #[test]
    fn six_targets_split_in_two() {
        let p = FanoutPlan::new(6, 2, false).unwrap();
        assert_eq!((p.p, p.blocks(), p.ancilla()), (3, 2, 3));
    }

    #[test]
    fn impossible_fanout_budget() {
        assert!(matches!(FanoutPlan::new(1, 2, false), Err(Error::InvalidPlan(_))));
        assert!(matches!(FanoutPlan::new(3, 2, true), Err(Error::InvalidPlan(_))));
    }
}
