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

//! Line-oriented text format.
//!
//! ```text
//! qreg q[3] dim=2;
//! creg c[1] mod=2;
//! role ancilla q[2];
//! h q[0];
//! barrier;
//! measure q[0] -> c[0];
//! barrier;
//! if (c0 mod 2 == 1) x q[1];
//! barrier;
//! ```
//!
//! Every moment is terminated by `barrier;`, so the moment list survives a
//! round trip exactly. Controlled gates list control wires first:
//! `ctrl[1,0] @ ry(0.5) q[0], q[1], q[2];` and `mcx[0,0] q[0], q[1], q[2];`.

use std::fmt::Write as _;

use super::{Circuit, Comparator, Condition, Control, Gate, GateKind, Instruction, Metadata, Payload, Role};
use crate::error::{Error, Result};

/// Renders a circuit in the text format.
pub fn serialize(c: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qreg q[{}] dim={};", c.num_wires(), c.dim());
    let _ = writeln!(out, "creg c[{}] mod={};", c.num_slots(), c.dim());
    if c.is_oracle() {
        out.push_str("pragma oracle;\n");
    }
    for role in [Role::Ancilla, Role::Output] {
        let ws = c.wires_with_role(role);
        if !ws.is_empty() {
            let list: Vec<String> = ws.iter().map(|w| format!("q[{w}]")).collect();
            let _ = writeln!(out, "role {} {};", role.name(), list.join(", "));
        }
    }
    if !c.meta.construction.is_empty() {
        let _ = write!(out, "pragma construction={}", c.meta.construction);
        let p = &c.meta.params;
        for (k, v) in [("n", p.n), ("c", p.c), ("d", p.d), ("s", p.s)] {
            if let Some(v) = v {
                let _ = write!(out, " {k}={v}");
            }
        }
        out.push_str(";\n");
    }
    for moment in c.moments() {
        for instr in moment {
            out.push_str(&instruction_line(instr));
            out.push('\n');
        }
        out.push_str("barrier;\n");
    }
    out
}

fn instruction_line(i: &Instruction) -> String {
    let mut s = String::new();
    if let Some(cond) = &i.condition {
        s.push_str("if (");
        let mut parts: Vec<String> = cond
            .terms
            .iter()
            .map(|&(slot, k)| if k == 1 { format!("c{slot}") } else { format!("{k}*c{slot}") })
            .collect();
        if cond.constant != 0 || parts.is_empty() {
            parts.push(cond.constant.to_string());
        }
        let _ = write!(s, "{} mod {} ", parts.join(" + "), cond.modulus);
        match cond.comparator {
            Comparator::Equals(v) => {
                let _ = write!(s, "== {v}) ");
            }
            Comparator::NonZero => s.push_str("!= 0) "),
        }
    }
    match &i.payload {
        Payload::Measure { wire, slot } => {
            let _ = write!(s, "measure q[{wire}] -> c[{slot}];");
        }
        Payload::Reset(w) => {
            let _ = write!(s, "reset q[{w}];");
        }
        Payload::Gate(g) => s.push_str(&gate_text(g)),
    }
    s
}

fn gate_text(g: &Gate) -> String {
    let mut s = String::new();
    let values: Vec<String> = g.controls.iter().map(|c| c.value.to_string()).collect();
    if g.kind == GateKind::MultiControlledX {
        let _ = write!(s, "mcx[{}] ", values.join(","));
    } else {
        if !g.controls.is_empty() {
            let _ = write!(s, "ctrl[{}] @ ", values.join(","));
        }
        s.push_str(g.kind.name());
        match g.kind {
            GateKind::Ry(t) | GateKind::Rz(t) | GateKind::PhaseZ(t) => {
                let _ = write!(s, "({t})");
            }
            GateKind::XplusC(k) | GateKind::ZdPow(k) => {
                let _ = write!(s, "({k})");
            }
            _ => {}
        }
        s.push(' ');
    }
    let ops: Vec<String> = g.controls.iter().map(|c| c.wire).chain(g.wires.iter().copied()).map(|w| format!("q[{w}]")).collect();
    s.push_str(&ops.join(", "));
    s.push(';');
    s
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the text format and validates the result.
pub fn parse(text: &str) -> Result<Circuit> {
    let mut header: Option<(usize, u32)> = None;
    let mut slots: Option<usize> = None;
    let mut oracle = false;
    let mut roles_decl: Vec<(Role, Vec<usize>)> = Vec::new();
    let mut meta = Metadata::default();
    let mut body: Vec<(usize, Option<Instruction>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| err(lineno, "missing ';'"))?.trim();
        if let Some(rest) = stmt.strip_prefix("qreg ") {
            let (n, dim) = parse_decl(rest, "q", "dim").ok_or_else(|| err(lineno, "bad qreg"))?;
            if dim < 2 {
                return Err(err(lineno, "dimension must be at least 2"));
            }
            header = Some((n, dim as u32));
        } else if let Some(rest) = stmt.strip_prefix("creg ") {
            let (m, modulus) = parse_decl(rest, "c", "mod").ok_or_else(|| err(lineno, "bad creg"))?;
            if header.map(|h| h.1 as usize) != Some(modulus) {
                return Err(err(lineno, "creg modulus must follow qreg dimension"));
            }
            slots = Some(m);
        } else if stmt == "pragma oracle" {
            oracle = true;
        } else if let Some(rest) = stmt.strip_prefix("pragma ") {
            for kv in rest.split_whitespace() {
                let (k, v) = kv.split_once('=').ok_or_else(|| err(lineno, "bad pragma"))?;
                let num = || v.parse::<usize>().map_err(|_| err(lineno, format!("bad value for {k}")));
                match k {
                    "construction" => meta.construction = v.to_string(),
                    "n" => meta.params.n = Some(num()?),
                    "c" => meta.params.c = Some(num()?),
                    "d" => meta.params.d = Some(num()?),
                    "s" => meta.params.s = Some(num()?),
                    _ => return Err(err(lineno, format!("unknown pragma key {k}"))),
                }
            }
        } else if let Some(rest) = stmt.strip_prefix("role ") {
            let (name, list) = rest.split_once(' ').ok_or_else(|| err(lineno, "bad role"))?;
            let role = match name {
                "input" => Role::Input,
                "ancilla" => Role::Ancilla,
                "output" => Role::Output,
                _ => return Err(err(lineno, format!("unknown role {name}"))),
            };
            let ws = parse_operands(list).ok_or_else(|| err(lineno, "bad wire list"))?;
            roles_decl.push((role, ws));
        } else if stmt == "barrier" {
            body.push((lineno, None));
        } else {
            let instr = parse_instruction(stmt).map_err(|m| err(lineno, m))?;
            body.push((lineno, Some(instr)));
        }
    }

    let (n, dim) = header.ok_or_else(|| err(0, "missing qreg declaration"))?;
    let mut c = Circuit::new(dim, oracle);
    let mut roles = vec![Role::Input; n];
    for (role, ws) in roles_decl {
        for w in ws {
            *roles.get_mut(w).ok_or(Error::UnknownWire(w))? = role;
        }
    }
    c.set_roles_and_slots(roles, slots.unwrap_or(0));
    c.meta = meta;

    let mut moment = 0;
    let mut pending = false;
    for (_, item) in body {
        match item {
            None => {
                if !pending {
                    // An explicitly empty moment.
                    c.insert_empty(moment);
                }
                moment += 1;
                pending = false;
            }
            Some(i) => {
                c.insert_unchecked(moment, i);
                pending = true;
            }
        }
    }

    if let Some(v) = c.validate().into_iter().next() {
        return Err(err(0, v.to_string()));
    }
    Ok(c)
}

fn parse_decl(rest: &str, reg: &str, key: &str) -> Option<(usize, usize)> {
    let (r, kv) = rest.trim().split_once(' ')?;
    let size = r.strip_prefix(reg)?.strip_prefix('[')?.strip_suffix(']')?.parse().ok()?;
    let val = kv.trim().strip_prefix(key)?.strip_prefix('=')?.parse().ok()?;
    Some((size, val))
}

fn parse_index(tok: &str, reg: char) -> Option<usize> {
    let t = tok.trim();
    t.strip_prefix(reg)?.strip_prefix('[')?.strip_suffix(']')?.parse().ok()
}

fn parse_operands(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|t| parse_index(t, 'q')).collect()
}

fn parse_instruction(stmt: &str) -> std::result::Result<Instruction, String> {
    let (cond, rest) = if let Some(r) = stmt.strip_prefix("if") {
        let r = r.trim_start().strip_prefix('(').ok_or("expected '(' after if")?;
        let close = r.find(')').ok_or("unclosed condition")?;
        (Some(parse_condition(&r[..close])?), r[close + 1..].trim())
    } else {
        (None, stmt)
    };
    let payload = if let Some(r) = rest.strip_prefix("measure ") {
        let (q, cl) = r.split_once("->").ok_or("measure needs '->'")?;
        let wire = parse_index(q, 'q').ok_or("bad measured wire")?;
        let slot = parse_index(cl, 'c').ok_or("bad slot")?;
        Payload::Measure { wire, slot }
    } else if let Some(r) = rest.strip_prefix("reset ") {
        Payload::Reset(parse_index(r, 'q').ok_or("bad reset wire")?)
    } else {
        Payload::Gate(parse_gate(rest)?)
    };
    Ok(Instruction { payload, condition: cond })
}

fn parse_values(s: &str) -> std::result::Result<Vec<u32>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|v| v.trim().parse::<u32>().map_err(|_| format!("bad control value {v}"))).collect()
}

fn parse_gate(s: &str) -> std::result::Result<Gate, String> {
    let (ctrl_vals, rest, is_mcx) = if let Some(r) = s.strip_prefix("mcx[") {
        let (vals, rest) = r.split_once(']').ok_or("unclosed mcx polarity")?;
        (parse_values(vals)?, rest.trim(), true)
    } else if let Some(r) = s.strip_prefix("ctrl[") {
        let (vals, rest) = r.split_once(']').ok_or("unclosed ctrl list")?;
        let rest = rest.trim_start().strip_prefix('@').ok_or("expected '@' after ctrl")?;
        (parse_values(vals)?, rest.trim(), false)
    } else {
        (Vec::new(), s, false)
    };
    let (head, ops) = if is_mcx {
        ("mcx", rest)
    } else {
        rest.split_once(' ').ok_or("gate without operands")?
    };
    let wires = parse_operands(ops).ok_or("bad operand list")?;
    if wires.len() < ctrl_vals.len() {
        return Err("fewer operands than controls".into());
    }
    let (name, arg) = match head.split_once('(') {
        Some((n, a)) => (n, Some(a.strip_suffix(')').ok_or("unclosed argument")?)),
        None => (head, None),
    };
    let real = || -> std::result::Result<f64, String> {
        arg.ok_or(format!("{name} needs an angle"))?.parse::<f64>().map_err(|_| format!("bad angle for {name}"))
    };
    let int = || -> std::result::Result<u32, String> {
        arg.ok_or(format!("{name} needs an argument"))?.parse::<u32>().map_err(|_| format!("bad argument for {name}"))
    };
    let kind = match name {
        "x" => GateKind::X,
        "h" => GateKind::H,
        "s" => GateKind::S,
        "sdg" => GateKind::Sdg,
        "z" => GateKind::Z,
        "cx" => GateKind::CNOT,
        "swap" => GateKind::SWAP,
        "ry" => GateKind::Ry(real()?),
        "rz" => GateKind::Rz(real()?),
        "p" => GateKind::PhaseZ(real()?),
        "mcx" => GateKind::MultiControlledX,
        "hd" => GateKind::Hd,
        "cxd" => GateKind::CXd,
        "cxdinv" => GateKind::CXdInv,
        "xplus" => GateKind::XplusC(int()?),
        "zd" => GateKind::Zd,
        "zdpow" => GateKind::ZdPow(int()?),
        "fanout" => GateKind::FanOutOracle { inverse: false },
        "fanout_inv" => GateKind::FanOutOracle { inverse: true },
        "parity" => GateKind::ParityOracle,
        other => return Err(format!("unknown gate {other}")),
    };
    let k = ctrl_vals.len();
    let controls = ctrl_vals.into_iter().zip(&wires).map(|(value, &wire)| Control { wire, value }).collect();
    Ok(Gate { kind, wires: wires[k..].to_vec(), controls })
}

fn parse_condition(s: &str) -> std::result::Result<Condition, String> {
    let (lhs, cmp) = if let Some((l, r)) = s.split_once("==") {
        let v = r.trim().parse::<u32>().map_err(|_| "bad comparison value")?;
        (l, Comparator::Equals(v))
    } else if let Some((l, r)) = s.split_once("!=") {
        if r.trim() != "0" {
            return Err("only '!= 0' is supported".into());
        }
        (l, Comparator::NonZero)
    } else {
        return Err("condition needs '==' or '!='".into());
    };
    let (expr, m) = lhs.rsplit_once(" mod ").ok_or("condition needs 'mod'")?;
    let modulus = m.trim().parse::<u32>().map_err(|_| "bad modulus")?;
    let mut terms = Vec::new();
    let mut constant = 0i64;
    for part in expr.split('+') {
        let p = part.trim();
        if let Some((k, slot)) = p.split_once('*') {
            let k = k.trim().parse::<i64>().map_err(|_| format!("bad coefficient {k}"))?;
            let slot = slot.trim().strip_prefix('c').and_then(|x| x.parse().ok()).ok_or("bad slot")?;
            terms.push((slot, k));
        } else if let Some(slot) = p.strip_prefix('c') {
            terms.push((slot.parse().map_err(|_| "bad slot")?, 1));
        } else {
            constant += p.parse::<i64>().map_err(|_| format!("bad term {p}"))?;
        }
    }
    Ok(Condition { terms, constant, modulus, comparator: cmp })
}
