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

//! Resource counts and budgets over the whole catalog.

use dynq::audit::*;
use dynq::catalog::{self, BuildSpec, NAMES};
use dynq::circuit::{parse, serialize};
use dynq::primitives::{build_fanout_with, build_ghz_extend_with, FanoutPlan, GhzPlan, Mode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn specs() -> Vec<BuildSpec> {
    let mut out = Vec::new();
    for mode in [Mode::Protocol, Mode::Oracle] {
        for n in 1..=3 {
            for c in [1, 2, 3] {
                out.push(BuildSpec { n, c, d: 3, s: n, mode });
            }
        }
        out.push(BuildSpec { n: 9, c: 4, d: 3, s: 3, mode });
    }
    out
}

#[test]
fn every_build_meets_its_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut checked = 0;
    for spec in specs() {
        // Past a few qubits only the gadgets stay small.
        let names = if spec.n > 3 { &NAMES[..10] } else { NAMES };
        for name in names {
            let Ok(b) = catalog::build(name, &spec, &mut rng) else { continue };
            let r = audit_checked(&b).unwrap();
            assert!(r.budget.pass, "{name} {spec:?}: {:?}", r.budget.violations);
            assert_eq!(r.measurement_layers, b.declared.measurement_layers, "{name} {spec:?}");
            assert_eq!(r.ancilla, b.declared.ancilla);
            assert!(r.measurement_layers <= r.depth);
            assert!(r.size_opaque <= r.size_expanded);
            checked += 1;
        }
    }
    assert!(checked > 300, "only {checked} builds checked");
}

#[test]
fn headline_layer_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let spec = BuildSpec { n: 2, ..Default::default() };
    for (name, want) in [("qsp", 31), ("qsp-2n", 81), ("cqspn", 50), ("unitary", 50), ("cqsp1", 33), ("reversible", 18)] {
        let r = audit(&catalog::build(name, &spec, &mut rng).unwrap());
        assert_eq!(r.measurement_layers, want, "{name}");
    }
    for n in 1..=4 {
        let spec = BuildSpec { n, ..Default::default() };
        let r = audit(&catalog::build("qsp", &spec, &mut rng).unwrap());
        assert_eq!(r.measurement_layers, if n == 1 { 14 } else { 31 }, "qsp n={n}");
    }
}

#[test]
fn nine_wire_copy_counts() {
    let b = dynq::primitives::build_ghz_extend(9, 4, Mode::Protocol).unwrap();
    let r = audit(&b);
    assert_eq!((r.ancilla, r.measurement_layers), (2, 1));
}

#[test]
fn depth_constant_at_fixed_blocks() {
    let fan: Vec<_> = [12, 24, 48]
        .iter()
        .map(|&n| audit(&build_fanout_with(FanoutPlan::with_block(n, 6, false).unwrap(), 2, Mode::Protocol).unwrap()))
        .collect();
    assert!(check_depth_constancy(&fan).pass, "{:?}", check_depth_constancy(&fan).violations);
    let ghz: Vec<_> = [12, 24, 48]
        .iter()
        .map(|&n| audit(&build_ghz_extend_with(GhzPlan::with_block(n, 3).unwrap(), 2, Mode::Protocol).unwrap()))
        .collect();
    assert!(check_depth_constancy(&ghz).pass);
}

#[test]
fn growing_depth_is_flagged() {
    let a = audit(&build_fanout_with(FanoutPlan::with_block(4, 4, false).unwrap(), 1, Mode::Protocol).unwrap());
    let b = audit(&build_fanout_with(FanoutPlan::with_block(16, 16, false).unwrap(), 1, Mode::Protocol).unwrap());
    assert!(!check_depth_constancy(&[a, b]).pass);
}

#[test]
fn reserialized_circuits_audit_the_same() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let spec = BuildSpec { n: 2, c: 1, ..Default::default() };
    for name in NAMES {
        let b = catalog::build(name, &spec, &mut rng).unwrap();
        let back = parse(&serialize(&b.circuit)).unwrap();
        assert_eq!(back.moments().len(), b.circuit.moments().len(), "{name}");
        assert_eq!(audit_circuit(&back, AuditConfig::default()), audit(&b), "{name}");
    }
}

#[test]
fn opaque_counting_skips_declared_costs() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let b = catalog::build("qsp", &BuildSpec { n: 2, ..Default::default() }, &mut rng).unwrap();
    let flat = audit_circuit(&b.circuit, AuditConfig { expand_oracles: false, ..Default::default() });
    let full = audit(&b);
    assert!(flat.measurement_layers < full.measurement_layers);
    assert!(flat.depth < full.depth);
    assert_eq!(flat.size_expanded, flat.size_opaque);
    assert!(full.notes.iter().any(|n| n.contains("declared")));
}
