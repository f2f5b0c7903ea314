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

//! Constant-depth dynamic circuits: build, simulate, audit.
//!
//! The crate compiles state and function specifications into circuits
//! that trade depth for mid-circuit measurement and classical feedback.
//! [`circuit`] is the shared representation, [`sim`] runs it on a sparse
//! amplitude map, [`primitives`] holds the measurement-based gadgets,
//! [`synth`] the state and function compilers, and [`audit`] counts
//! resources against fixed budgets.

pub mod audit;
pub mod catalog;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod primitives;
pub mod run;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
