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

//! Command-line front end. [`run`] maps arguments to a JSON document and an
//! exit code: 0 on success, 2 on bad input or a broken budget, 1 when a
//! build misbehaves.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{self, ResourceReport};
use crate::catalog::{self, BuildSpec};
use crate::circuit::{self, Params};
use crate::error::{Error, Result};
use crate::primitives::{self as p, GadgetBuild, Mode};
use crate::run::{self, Evaluation, Sampling};
use crate::sim::{parse_state, write_state, Simulator, C64};
use crate::synth::{self, random_unit, QspVariant, ReversibleSpec, TargetState, Unitary};

#[derive(Debug, Parser)]
#[command(name = "dynq", version, about = "Constant-depth dynamic circuits: build, simulate, audit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prepare a target state and check every shot against it.
    Prepare(PrepareArgs),
    /// Measurement-based fan-out against its unitary twin.
    Fanout(GadgetArgs),
    /// Copy one wire onto n wires against the unitary twin.
    Ghz(GadgetArgs),
    /// Compile a permutation of n-bit strings.
    Reversible(ReversibleArgs),
    /// `|j⟩|0⟩ → |j⟩ U|j⟩` for an n-qubit unitary.
    Unitary(UnitaryArgs),
    /// Resource report for a named construction.
    Audit(AuditArgs),
    /// Run a circuit file.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value = "protocol", value_parser = parse_mode)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `all` enumerates every measurement branch instead of sampling.
    #[arg(long, value_parser = ["all"])]
    pub branches: Option<String>,
    #[arg(long, default_value_t = 1 << 16)]
    pub branch_cap: usize,
    /// Write the built circuit in text form.
    #[arg(long)]
    pub emit_circuit: Option<PathBuf>,
    /// Exit with status 2 when the build exceeds its budget.
    #[arg(long)]
    pub enforce_budgets: bool,
}

impl RunArgs {
    fn sampling(&self) -> Sampling {
        match self.branches {
            Some(_) => Sampling::Branches { cap: self.branch_cap },
            None => Sampling::Shots { count: self.shots, seed: self.seed },
        }
    }
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Dense (`re im` per line) or sparse (`bits re im`) target file.
    #[arg(long, conflicts_with = "random_target")]
    pub target: Option<PathBuf>,
    /// Seed for a random dense (or, with --s, sparse) target.
    #[arg(long)]
    pub random_target: Option<u64>,
    /// Term count of a random sparse target.
    #[arg(long)]
    pub s: Option<usize>,
    /// onehot-4n, size-opt-2n or sparse.
    #[arg(long, default_value = "onehot-4n")]
    pub variant: String,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub c: usize,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct ReversibleArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Lines `x f(x)`.
    #[arg(long)]
    pub perm: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct UnitaryArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// 2ⁿ lines of 2ⁿ `re im` pairs.
    #[arg(long)]
    pub unitary: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub construction: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub c: usize,
    #[arg(long, default_value_t = 3)]
    pub d: u32,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value = "protocol", value_parser = parse_mode)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Count opaque gates as one gate and one moment each.
    #[arg(long)]
    pub no_expand: bool,
    #[arg(long)]
    pub enforce_budgets: bool,
    #[arg(long)]
    pub emit_circuit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit in text form.
    #[arg(long)]
    pub circuit: PathBuf,
    /// Initial state (`digits re im` per line); all `|0⟩` if absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = ["all"])]
    pub branches: Option<String>,
    #[arg(long, default_value_t = 1 << 16)]
    pub branch_cap: usize,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Prepare(a) => prepare(a),
        Command::Fanout(a) => gadget(a, true),
        Command::Ghz(a) => gadget(a, false),
        Command::Reversible(a) => reversible(a),
        Command::Unitary(a) => unitary(a),
        Command::Audit(a) => audit_cmd(a),
        Command::Simulate(a) => simulate(a),
    };
    match result {
        Ok(Report { doc, failure }) => {
            let stdout = serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n";
            match failure {
                None => Outcome { code: 0, stdout, stderr: String::new() },
                Some(f) => Outcome { code: f.code(), stdout, stderr: format!("error: {}\n", f.message()) },
            }
        }
        Err(e) => Outcome { code: if e.is_validation() { 2 } else { 1 }, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

enum Failure {
    Budget(Vec<String>),
    Fidelity(f64),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Budget(_) => 2,
            Failure::Fidelity(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Budget(v) => format!("budget violated: {}", v.join("; ")),
            Failure::Fidelity(f) => format!("minimum fidelity {f} below 1 - {}", run::FIDELITY_TOL),
        }
    }
}

struct Report {
    doc: Value,
    failure: Option<Failure>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn emit(build: &GadgetBuild, path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, circuit::serialize(&build.circuit))?;
    }
    Ok(())
}

fn checked_report(build: &GadgetBuild, cfg: audit::AuditConfig) -> Result<ResourceReport> {
    let mut r = audit::audit_circuit(&build.circuit, cfg);
    r.budget = audit::check_budgets(&r, &audit::rule_for(&r.construction)?);
    Ok(r)
}

#[derive(Serialize)]
struct RunDoc<'a> {
    command: &'a str,
    construction: &'a str,
    mode: &'a str,
    params: Params,
    sampling: Sampling,
    #[serde(flatten)]
    eval: &'a Evaluation,
    pass: bool,
    resources: &'a ResourceReport,
}

/// Scores `build` and assembles the common run document.
fn finish_run(command: &str, build: &GadgetBuild, input: &[C64], expected: &[C64], args: &RunArgs) -> Result<Report> {
    emit(build, &args.emit_circuit)?;
    let eval = run::evaluate(build, input, expected, args.sampling()).map_err(|e| match e {
        // A build that leaves junk behind is a defect, not bad input.
        Error::Entangled(_) | Error::IndefiniteReset(_) | Error::ZeroMarginal => Error::Internal(e.to_string()),
        other => other,
    })?;
    let resources = checked_report(build, audit::AuditConfig::default())?;
    let doc = RunDoc {
        command,
        construction: &build.circuit.meta.construction,
        mode: run::mode_name(args.mode),
        params: build.circuit.meta.params,
        sampling: args.sampling(),
        eval: &eval,
        pass: eval.pass(),
        resources: &resources,
    };
    let doc = serde_json::to_value(doc).map_err(|e| Error::Internal(e.to_string()))?;
    let failure = if !eval.pass() {
        Some(Failure::Fidelity(eval.min_fidelity))
    } else if args.enforce_budgets && !resources.budget.pass {
        Some(Failure::Budget(resources.budget.violations.clone()))
    } else {
        None
    };
    Ok(Report { doc, failure })
}

fn need_n(n: Option<usize>, what: &str) -> Result<usize> {
    n.ok_or_else(|| Error::InvalidParameter(format!("--n is required without {what}")))
}

fn prepare(a: &PrepareArgs) -> Result<Report> {
    let target = match (&a.target, a.random_target) {
        (Some(path), _) => TargetState::parse(&read(path)?)?,
        (None, seed) => {
            let n = need_n(a.n, "--target")?;
            if !(1..=12).contains(&n) {
                return Err(Error::InvalidParameter(format!("n = {n} outside 1..=12")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(a.run.seed));
            match a.s {
                Some(s) if s >= 1 && s <= 1 << n => TargetState::random_sparse(n, s, &mut rng),
                Some(s) => return Err(Error::InvalidParameter(format!("s = {s} outside 1..=2^{n}"))),
                None => TargetState::random(n, &mut rng),
            }
        }
    };
    if let Some(n) = a.n {
        if n != target.n {
            return Err(Error::InvalidParameter(format!("--n {n} but the target has {} qubits", target.n)));
        }
    }
    let build = match a.variant.as_str() {
        "sparse" => synth::build_sparse_qsp(&target, a.run.mode)?,
        v => synth::build_qsp(&target, v.parse::<QspVariant>()?, a.run.mode)?,
    };
    finish_run("prepare", &build, &[C64::new(1.0, 0.0)], &target.to_dense(), &a.run)
}

fn gadget(a: &GadgetArgs, fanout: bool) -> Result<Report> {
    if a.n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let qudit = a.d > 2;
    let (proto, twin) = match (fanout, qudit) {
        (true, false) => (p::build_fanout(a.n, a.c, a.run.mode)?, p::build_fanout(a.n, a.c, Mode::Oracle)?),
        (true, true) => (p::build_fanout_qudit(a.n, a.c, a.d, a.run.mode)?, p::build_fanout_qudit(a.n, a.c, a.d, Mode::Oracle)?),
        (false, false) => (p::build_ghz_extend(a.n, a.c, a.run.mode)?, p::build_ghz_extend(a.n, a.c, Mode::Oracle)?),
        (false, true) => (
            p::build_ghz_extend_qudit(a.n, a.c, a.d, a.run.mode)?,
            p::build_ghz_extend_qudit(a.n, a.c, a.d, Mode::Oracle)?,
        ),
    };
    let width = (a.d as usize).checked_pow(proto.inputs.len() as u32).filter(|&w| w <= 1 << 20);
    let width = width.ok_or_else(|| Error::InvalidParameter("input register too large to simulate".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.run.seed);
    let input = random_unit(width, &mut rng);
    let expected = run::oracle_output(&twin, &input)?;
    finish_run(if fanout { "fanout" } else { "ghz" }, &proto, &input, &expected, &a.run)
}

fn reversible(a: &ReversibleArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.run.seed);
    let f = match &a.perm {
        Some(path) => ReversibleSpec::parse(&read(path)?)?,
        None => {
            let n = need_n(a.n, "--perm")?;
            if !(1..=8).contains(&n) {
                return Err(Error::InvalidParameter(format!("n = {n} outside 1..=8")));
            }
            ReversibleSpec::random(n, &mut rng)
        }
    };
    let build = synth::build_reversible(&f, a.run.mode)?;
    let input = random_unit(1 << f.n, &mut rng);
    let mut expected = vec![C64::new(0.0, 0.0); 1 << f.n];
    for (x, &fx) in f.table.iter().enumerate() {
        expected[fx] = input[x];
    }
    finish_run("reversible", &build, &input, &expected, &a.run)
}

fn unitary(a: &UnitaryArgs) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.run.seed);
    let u = match &a.unitary {
        Some(path) => Unitary::parse(&read(path)?)?,
        None => {
            let n = need_n(a.n, "--unitary")?;
            if !(1..=4).contains(&n) {
                return Err(Error::InvalidParameter(format!("n = {n} outside 1..=4")));
            }
            Unitary::random(n, &mut rng)
        }
    };
    let build = synth::build_entangled_unitary(&u, a.run.mode)?;
    let n = u.n;
    let input = random_unit(1 << n, &mut rng);
    let mut expected = vec![C64::new(0.0, 0.0); 1 << (2 * n)];
    for (j, a) in input.iter().enumerate() {
        for (k, x) in u.column(j).iter().enumerate() {
            expected[(j << n) | k] = a * x;
        }
    }
    finish_run("unitary", &build, &input, &expected, &a.run)
}

fn audit_cmd(a: &AuditArgs) -> Result<Report> {
    let spec = BuildSpec { n: a.n, c: a.c, d: a.d, s: a.s, mode: a.mode };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let build = catalog::build(&a.construction, &spec, &mut rng)?;
    emit(&build, &a.emit_circuit)?;
    let cfg = audit::AuditConfig { expand_oracles: !a.no_expand, ..Default::default() };
    let report = checked_report(&build, cfg)?;
    let failure = (a.enforce_budgets && !report.budget.pass).then(|| Failure::Budget(report.budget.violations.clone()));
    let doc = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Report { doc, failure })
}

fn simulate(a: &SimulateArgs) -> Result<Report> {
    let c = circuit::parse(&read(&a.circuit)?)?;
    let init = match &a.input {
        Some(path) => parse_state(&read(path)?, &c.dims())?,
        None => crate::sim::SparseState::zero(c.dims()),
    };
    let sim = Simulator::default();
    let runs: Vec<(f64, crate::sim::ShotResult)> = match a.branches {
        Some(_) => sim.run_all_branches(&c, &init, a.branch_cap)?.into_iter().map(|b| (b.weight, b.result)).collect(),
        None => {
            if a.shots == 0 {
                return Err(Error::InvalidParameter("at least one shot is needed".into()));
            }
            (0..a.shots)
                .map(|i| sim.run_shot(&c, &init, a.seed.wrapping_add(i)).map(|r| (1.0 / a.shots as f64, r)))
                .collect::<Result<_>>()?
        }
    };
    let outs: Vec<Value> = runs
        .iter()
        .map(|(w, r)| {
            json!({
                "weight": w,
                "transcript": r.transcript,
                "support": r.state.support(),
                "state": write_state(&r.state).lines().collect::<Vec<_>>(),
            })
        })
        .collect();
    let report = audit::audit_circuit(&c, audit::AuditConfig::default());
    let doc = json!({
        "command": "simulate",
        "construction": c.meta.construction,
        "wires": c.num_wires(),
        "slots": c.num_slots(),
        "runs": outs,
        "resources": report,
    });
    Ok(Report { doc, failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_flag_is_a_validation_error() {
        assert_eq!(run(["dynq", "ghz", "--bogus"]).code, 2);
    }

    #[test]
    fn bad_plan_is_a_validation_error() {
        let o = run(["dynq", "fanout", "--n", "1", "--c", "2"]);
        assert_eq!(o.code, 2, "{}", o.stderr);
    }

    #[test]
    fn ghz_branches() {
        let o = run(["dynq", "ghz", "--n", "9", "--c", "4", "--branches", "all"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["runs"], 4);
        assert_eq!(v["resources"]["measurement_layers"], 1);
    }
}
