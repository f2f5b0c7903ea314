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

//! Resource counting and budget checks.
//!
//! Counts come from the moment structure alone. The opaque multi-controlled
//! X stands for a measurement-based Toffoli whose internals are not built
//! here; with oracle expansion on it contributes [`MCX_LAYERS`] measurement
//! layers and [`AuditConfig::c_tof`] moments of depth. That depth is a
//! configuration constant, not something the circuits determine.
//!
//! ```
//! use dynq::audit::{audit, check_budgets, rule_for};
//! use dynq::primitives::{build_ghz_extend, Mode};
//! let r = audit(&build_ghz_extend(9, 4, Mode::Protocol).unwrap());
//! assert_eq!((r.ancilla, r.measurement_layers), (2, 1));
//! assert!(check_budgets(&r, &rule_for("ghz").unwrap()).pass);
//! ```

use serde::Serialize;

use crate::circuit::{Circuit, Gate, GateKind, Params, Payload, Role};
use crate::error::{Error, Result};
use crate::primitives::GadgetBuild;

/// Measurement layers one opaque multi-controlled X stands for.
pub const MCX_LAYERS: usize = 6;

/// Default depth of one opaque multi-controlled X.
pub const DEFAULT_C_TOF: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    /// Count opaque gates by their declared internals.
    pub expand_oracles: bool,
    pub c_tof: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { expand_oracles: true, c_tof: DEFAULT_C_TOF }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BudgetOutcome {
    pub pass: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub construction: String,
    pub params: Params,
    pub depth: usize,
    pub size_expanded: usize,
    pub size_opaque: usize,
    pub ancilla: usize,
    pub measurement_layers: usize,
    /// Oracle twins carry no measurements by design.
    pub oracle: bool,
    pub budget: BudgetOutcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Declared elementary size of a multi-controlled X with `k` controls.
fn mcx_size(k: usize) -> usize {
    (2 * k).saturating_sub(1).max(1)
}

fn gate_size(g: &Gate) -> usize {
    match g.kind {
        GateKind::MultiControlledX => mcx_size(g.controls.len()),
        GateKind::FanOutOracle { .. } => g.wires.len().saturating_sub(1).max(1),
        GateKind::ParityOracle => g.wires.len().saturating_sub(1).max(1),
        _ => 1,
    }
}

fn is_mcx(g: &Gate) -> bool {
    g.kind == GateKind::MultiControlledX
}

/// Counts resources of a bare circuit. The budget is left unchecked.
pub fn audit_circuit(c: &Circuit, cfg: AuditConfig) -> ResourceReport {
    let mut depth = 0;
    let mut layers = 0;
    let mut size_opaque = 0;
    let mut size_expanded = 0;
    let mut has_mcx = false;
    for m in c.moments() {
        if m.is_empty() {
            continue;
        }
        let gates: Vec<&Gate> = m.iter().filter_map(|i| i.as_gate()).collect();
        let mcx = gates.iter().any(|g| is_mcx(g));
        has_mcx |= mcx;
        size_opaque += gates.len();
        size_expanded += gates.iter().map(|g| gate_size(g)).sum::<usize>();
        let measured = m.iter().any(|i| matches!(i.payload, Payload::Measure { .. }));
        if cfg.expand_oracles && mcx {
            depth += cfg.c_tof;
            if !c.is_oracle() {
                layers += MCX_LAYERS;
            }
        } else {
            depth += 1;
            layers += usize::from(measured);
        }
    }
    let mut notes = Vec::new();
    if has_mcx && cfg.expand_oracles {
        notes.push(format!("c_tof={} is declared, not derived", cfg.c_tof));
    }
    ResourceReport {
        construction: c.meta.construction.clone(),
        params: c.meta.params,
        depth,
        size_expanded: if cfg.expand_oracles { size_expanded } else { size_opaque },
        size_opaque,
        ancilla: c.wires_with_role(Role::Ancilla).len(),
        measurement_layers: layers,
        oracle: c.is_oracle(),
        budget: BudgetOutcome { pass: true, violations: Vec::new() },
        notes,
    }
}

/// Counts resources of a build with the default configuration.
pub fn audit(build: &GadgetBuild) -> ResourceReport {
    audit_circuit(&build.circuit, AuditConfig::default())
}

/// Counts resources and checks them against the construction's rule.
pub fn audit_checked(build: &GadgetBuild) -> Result<ResourceReport> {
    let mut r = audit(build);
    let rule = rule_for(&r.construction)?;
    r.budget = check_budgets(&r, &rule);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerBound {
    Exact(usize),
    /// Exact, or zero when the gadget needs no ancilla at all.
    Gadget(usize),
    AtMost(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaBound {
    None,
    Zero,
    /// `c · ancilla ≤ n`.
    PerBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetRule {
    pub construction: &'static str,
    pub layers: LayerBound,
    pub ancilla: AncillaBound,
    /// Depth does not grow with `n` at fixed block parameters.
    pub depth_constant: bool,
}

const fn rule(construction: &'static str, layers: LayerBound, ancilla: AncillaBound, depth_constant: bool) -> BudgetRule {
    BudgetRule { construction, layers, ancilla, depth_constant }
}

/// One rule per construction name a builder can produce.
pub const RULES: &[BudgetRule] = &[
    rule("ghz", LayerBound::Gadget(1), AncillaBound::PerBudget, true),
    rule("ghz_d", LayerBound::Gadget(1), AncillaBound::PerBudget, true),
    rule("recover", LayerBound::Gadget(1), AncillaBound::Zero, true),
    rule("recover_d", LayerBound::Gadget(1), AncillaBound::Zero, true),
    rule("fanout", LayerBound::Exact(1), AncillaBound::PerBudget, true),
    rule("fanout_d", LayerBound::Exact(1), AncillaBound::PerBudget, true),
    rule("parity", LayerBound::Exact(1), AncillaBound::PerBudget, true),
    rule("fused_ry", LayerBound::Exact(2), AncillaBound::None, true),
    rule("fused_z", LayerBound::Exact(2), AncillaBound::None, true),
    rule("cc_fused_ry", LayerBound::Exact(4), AncillaBound::None, true),
    rule("onehot", LayerBound::AtMost(22), AncillaBound::None, false),
    rule("tobinary", LayerBound::AtMost(9), AncillaBound::None, false),
    rule("toonehot", LayerBound::AtMost(9), AncillaBound::None, false),
    rule("qsp", LayerBound::AtMost(31), AncillaBound::None, false),
    rule("qsp-2n", LayerBound::AtMost(81), AncillaBound::None, false),
    rule("sparse", LayerBound::AtMost(31), AncillaBound::None, false),
    rule("cqsp1", LayerBound::AtMost(33), AncillaBound::None, false),
    rule("cqspn", LayerBound::AtMost(50), AncillaBound::None, false),
    rule("unitary", LayerBound::AtMost(50), AncillaBound::None, false),
    rule("reversible", LayerBound::AtMost(18), AncillaBound::None, false),
];

pub fn rule_for(construction: &str) -> Result<BudgetRule> {
    RULES
        .iter()
        .find(|r| r.construction == construction)
        .copied()
        .ok_or_else(|| Error::UnknownConstruction(construction.to_string()))
}

/// Compares a report against a rule. Oracle twins must report zero layers.
pub fn check_budgets(report: &ResourceReport, rule: &BudgetRule) -> BudgetOutcome {
    let mut violations = Vec::new();
    let got = report.measurement_layers;
    let layers = if report.oracle { LayerBound::Exact(0) } else { rule.layers };
    match layers {
        LayerBound::Exact(k) if got != k => {
            violations.push(format!("measurement_layers: measured {got}, expected exactly {k}"));
        }
        LayerBound::Gadget(k) if got != k && !(got == 0 && report.ancilla == 0) => {
            violations.push(format!("measurement_layers: measured {got}, expected exactly {k}"));
        }
        LayerBound::AtMost(k) if got > k => {
            violations.push(format!("measurement_layers: measured {got}, expected at most {k}"));
        }
        _ => {}
    }
    match rule.ancilla {
        AncillaBound::None => {}
        AncillaBound::Zero if report.ancilla > 0 => {
            violations.push(format!("ancilla: measured {}, expected 0", report.ancilla));
        }
        AncillaBound::Zero => {}
        AncillaBound::PerBudget => {
            let (n, c) = (report.params.n.unwrap_or(0), report.params.c.unwrap_or(1).max(1));
            if c * report.ancilla > n {
                violations.push(format!("ancilla: measured {} exceeds n/c = {n}/{c}", report.ancilla));
            }
        }
    }
    if report.measurement_layers > report.depth {
        violations.push(format!("measurement_layers {} exceed depth {}", report.measurement_layers, report.depth));
    }
    BudgetOutcome { pass: violations.is_empty(), violations }
}

/// Depth constancy across a family of reports of one construction.
pub fn check_depth_constancy(reports: &[ResourceReport]) -> BudgetOutcome {
    let mut violations = Vec::new();
    if let Some(first) = reports.first() {
        for r in &reports[1..] {
            if r.depth != first.depth {
                violations.push(format!(
                    "depth {} at n={:?} differs from {} at n={:?}",
                    r.depth, r.params.n, first.depth, first.params.n
                ));
            }
        }
    }
    BudgetOutcome { pass: violations.is_empty(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{build_fanout, Mode};

    #[test]
    fn empty_circuit_is_all_zeros() {
        let r = audit_circuit(&Circuit::new(2, false), AuditConfig::default());
        assert_eq!((r.depth, r.size_expanded, r.size_opaque, r.ancilla, r.measurement_layers), (0, 0, 0, 0, 0));
    }

    #[test]
    fn every_rule_is_unique() {
        for (i, a) in RULES.iter().enumerate() {
            assert!(RULES[i + 1..].iter().all(|b| b.construction != a.construction));
        }
    }

    #[test]
    fn fanout_with_too_many_ancilla_fails() {
        let mut r = audit(&build_fanout(6, 2, Mode::Protocol).unwrap());
        r.ancilla = 6;
        let out = check_budgets(&r, &rule_for("fanout").unwrap());
        assert!(!out.pass);
        assert!(out.violations[0].contains("exceeds n/c"));
    }

    #[test]
    fn oracle_twin_reports_no_layers() {
        let r = audit(&build_fanout(6, 2, Mode::Oracle).unwrap());
        assert_eq!(r.measurement_layers, 0);
        assert!(check_budgets(&r, &rule_for("fanout").unwrap()).pass);
    }

    #[test]
    fn unknown_construction() {
        assert!(matches!(rule_for("teleport"), Err(Error::UnknownConstruction(_))));
    }
}
