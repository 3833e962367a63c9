//! OpenQASM 2.0 emission for lowered circuits, plus a minimal checker used
//! to validate emitted files.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Emits OpenQASM 2.0 with one quantum register `q[total]` and the gate set
/// {x, h, t, tdg, cx}. A circuit still containing MCX gates is rejected
/// unless `allow_mcx` is set, in which case each MCX becomes a comment line
/// (`!` marks a negative control).
pub fn to_qasm(circuit: &Circuit, allow_mcx: bool) -> Result<String> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", circuit.registry().total()));
    for gate in circuit.gates() {
        match gate {
            Gate::X { target, .. } => out.push_str(&format!("x q[{target}];\n")),
            Gate::H { target } => out.push_str(&format!("h q[{target}];\n")),
            Gate::T { target } => out.push_str(&format!("t q[{target}];\n")),
            Gate::Tdg { target } => out.push_str(&format!("tdg q[{target}];\n")),
            Gate::Cx { control, target } => {
                out.push_str(&format!("cx q[{control}],q[{target}];\n"))
            }
            Gate::Mcx { controls, target } => {
                if !allow_mcx {
                    return Err(Error::NotLowered(
                        "circuit contains MCX gates; lower it before QASM export".into(),
                    ));
                }
                let ctrl: Vec<String> = controls
                    .iter()
                    .map(|c| {
                        if c.positive {
                            format!("q[{}]", c.qubit)
                        } else {
                            format!("!q[{}]", c.qubit)
                        }
                    })
                    .collect();
                out.push_str(&format!("// mcx {} -> q[{target}];\n", ctrl.join(",")));
            }
        }
    }
    Ok(out)
}

/// Line-oriented sanity check of an emitted file: header, a single `qreg`
/// matching `expected_qubits`, gate names within the allowed set, indices in
/// range.
pub fn validate_qasm(text: &str, expected_qubits: usize) -> Result<()> {
    let mut lines = text.lines().enumerate();
    let check = |want: &str, got: Option<(usize, &str)>| -> Result<()> {
        match got {
            Some((_, line)) if line.trim() == want => Ok(()),
            Some((idx, line)) => Err(Error::parse_line(
                idx + 1,
                format!("expected '{want}', found '{line}'"),
            )),
            None => Err(Error::parse_line(1, format!("missing '{want}'"))),
        }
    };
    check("OPENQASM 2.0;", lines.next())?;
    check("include \"qelib1.inc\";", lines.next())?;
    check(&format!("qreg q[{expected_qubits}];"), lines.next())?;

    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let Some(body) = line.strip_suffix(';') else {
            return Err(Error::parse_line(line_no, "statement must end with ';'"));
        };
        let (name, args) = body
            .split_once(' ')
            .ok_or_else(|| Error::parse_line(line_no, "malformed gate statement"))?;
        if !matches!(name, "x" | "h" | "t" | "tdg" | "cx") {
            return Err(Error::parse_line(
                line_no,
                format!("gate '{name}' outside the allowed set"),
            ));
        }
        let operands: Vec<&str> = args.split(',').map(str::trim).collect();
        let expected_operands = if name == "cx" { 2 } else { 1 };
        if operands.len() != expected_operands {
            return Err(Error::parse_line(
                line_no,
                format!("gate '{name}' expects {expected_operands} operand(s)"),
            ));
        }
        for op in operands {
            let index: usize = op
                .strip_prefix("q[")
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::parse_line(line_no, format!("malformed operand '{op}'")))?;
            if index >= expected_qubits {
                return Err(Error::parse_line(
                    line_no,
                    format!("qubit index {index} out of range"),
                ));
            }
        }
    }
    Ok(())
}
