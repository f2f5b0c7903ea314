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

//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building, simulating or auditing.
///
/// Variants are grouped so the CLI can map them onto exit codes:
/// validation problems (bad input) versus internal failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown wire {0}")]
    UnknownWire(usize),
    #[error("condition reads slot {0} before it is written")]
    UnwrittenSlot(usize),
    #[error("slot {0} is written twice")]
    SlotRewritten(usize),
    #[error("oracle gate {0} in a non-oracle circuit")]
    OracleInProtocol(String),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid block plan: {0}")]
    InvalidPlan(String),
    #[error("input not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("function is not a bijection: {0}")]
    NotBijective(String),
    #[error("measurement on a state with zero marginal")]
    ZeroMarginal,
    #[error("branch count exceeds the cap of {0}")]
    BranchExplosion(usize),
    #[error("reset of wire {0} that is not in a definite basis state")]
    IndefiniteReset(usize),
    #[error("wire {0} is still entangled with discarded wires")]
    Entangled(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget violated: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than a defect.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
