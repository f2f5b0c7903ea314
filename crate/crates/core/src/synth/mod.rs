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

//! Constant-depth state synthesis: one-hot loading, encoding changes,
//! dense, sparse and controlled preparation, unitaries and reversible
//! functions.
//!
//! ```
//! use dynq::synth::{build_qsp, QspVariant, TargetState};
//! use dynq::primitives::Mode;
//! use dynq::sim::C64;
//! let t = TargetState::dense(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
//! let q = build_qsp(&t, QspVariant::OnehotFourN, Mode::Protocol).unwrap();
//! assert_eq!(q.outputs.len(), 1);
//! ```

pub mod angles;
pub mod controlled;
pub mod encode;
pub mod onehot;
pub mod qsp;
pub mod reversible;
pub mod target;

pub use angles::{angle_schedule, phase_schedule, AngleSchedule, PhaseSchedule};
pub use controlled::{build_controlled_qsp_1, build_controlled_qsp_n, build_entangled_unitary};
pub use encode::{build_binary_to_onehot, build_onehot_to_binary};
pub use onehot::build_onehot_prep;
pub use qsp::{build_qsp, build_sparse_qsp, QspVariant};
pub use reversible::{build_reversible, ReversibleSpec};
pub use target::{random_unit, Amplitudes, TargetState, Unitary};
