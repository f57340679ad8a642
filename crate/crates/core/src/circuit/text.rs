//! Line-oriented circuit text.
//!
//! ```text
//! .ancilla q3
//! H q2
//! CNOT q0 q2
//! MZ q3 -> c0
//! CZ q0 q1 if c0
//! CCX q0 q1 q2 @head
//! ```

use std::fmt::Write;

use super::{Circuit, ClassicalBit, GateKind, Operation, QubitId, RelPhaseTag};
use crate::error::{Error, Result};

fn gate_name(kind: &GateKind) -> String {
    match kind {
        GateKind::X => "X".into(),
        GateKind::Y => "Y".into(),
        GateKind::Z => "Z".into(),
        GateKind::H => "H".into(),
        GateKind::S => "S".into(),
        GateKind::Sdg => "SDG".into(),
        GateKind::T => "T".into(),
        GateKind::Tdg => "TDG".into(),
        GateKind::Ry(a) => format!("RY({a:?})"),
        GateKind::Cnot => "CNOT".into(),
        GateKind::Fanout(_) => "FANOUT".into(),
        GateKind::Cz => "CZ".into(),
        GateKind::Toffoli => "CCX".into(),
        GateKind::RelPhaseToffoli(tag) => format!("RCCX.{}", tag.name().to_uppercase()),
        GateKind::Cry(a) => format!("CRY({a:?})"),
        GateKind::MeasureX => "MX".into(),
        GateKind::MeasureZ => "MZ".into(),
        GateKind::ClassicallyControlled(inner) => gate_name(inner),
    }
}

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    if !circuit.ancillae().is_empty() {
        out.push_str(".ancilla");
        for q in circuit.ancillae() {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
    }
    for op in circuit.ops() {
        out.push_str(&gate_name(&op.kind));
        for q in &op.qubits {
            let _ = write!(out, " {q}");
        }
        match op.kind {
            GateKind::MeasureX | GateKind::MeasureZ => {
                let _ = write!(out, " -> {}", op.cbits[0]);
            }
            GateKind::ClassicallyControlled(_) => {
                let _ = write!(out, " if {}", op.cbits[0]);
            }
            _ => {}
        }
        if let Some(r) = &op.region {
            let _ = write!(out, " @{r}");
        }
        out.push('\n');
    }
    out
}

fn parse_angle(s: &str, line: usize) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad angle '{s}'"),
    })
}

fn parse_kind(name: &str, nqubits: usize, line: usize) -> Result<GateKind> {
    let upper = name.to_ascii_uppercase();
    let kind = match upper.as_str() {
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "H" => GateKind::H,
        "S" => GateKind::S,
        "SDG" => GateKind::Sdg,
        "T" => GateKind::T,
        "TDG" => GateKind::Tdg,
        "CNOT" | "CX" => GateKind::Cnot,
        "FANOUT" => GateKind::Fanout(nqubits.saturating_sub(1)),
        "CZ" => GateKind::Cz,
        "CCX" | "TOFFOLI" => GateKind::Toffoli,
        "MX" => GateKind::MeasureX,
        "MZ" => GateKind::MeasureZ,
        _ => {
            if let Some(arg) = upper.strip_prefix("RY(").and_then(|r| r.strip_suffix(')')) {
                GateKind::Ry(parse_angle(arg, line)?)
            } else if let Some(arg) = upper.strip_prefix("CRY(").and_then(|r| r.strip_suffix(')'))
            {
                GateKind::Cry(parse_angle(arg, line)?)
            } else if let Some(tag) = upper.strip_prefix("RCCX.") {
                GateKind::RelPhaseToffoli(RelPhaseTag::from_name(tag).ok_or_else(|| {
                    Error::Parse {
                        line,
                        msg: format!("unknown relative-phase tag '{tag}'"),
                    }
                })?)
            } else {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown gate '{name}'"),
                });
            }
        }
    };
    Ok(kind)
}

fn parse_index(tok: &str, prefix: char, line: usize) -> Result<usize> {
    tok.strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected {prefix}<index>, got '{tok}'"),
        })
}

pub fn from_text(text: &str) -> Result<Circuit> {
    let mut circuit = Circuit::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == ".ancilla" {
            for t in &toks[1..] {
                circuit.declare_ancilla(QubitId(parse_index(t, 'q', line_no)?));
            }
            continue;
        }
        let mut region = None;
        if let Some(last) = toks.last() {
            if let Some(r) = last.strip_prefix('@') {
                region = Some(r.to_string());
                toks.pop();
            }
        }
        let mut cbit = None;
        let mut conditional = false;
        if toks.len() >= 3 {
            let marker = toks[toks.len() - 2];
            if marker == "->" || marker == "if" {
                cbit = Some(ClassicalBit(parse_index(toks[toks.len() - 1], 'c', line_no)?));
                conditional = marker == "if";
                toks.truncate(toks.len() - 2);
            }
        }
        let qubits = toks[1..]
            .iter()
            .map(|t| parse_index(t, 'q', line_no).map(QubitId))
            .collect::<Result<Vec<_>>>()?;
        let mut kind = parse_kind(toks[0], qubits.len(), line_no)?;
        if conditional {
            kind = GateKind::ClassicallyControlled(Box::new(kind));
        }
        let op = Operation {
            kind,
            qubits,
            cbits: cbit.into_iter().collect(),
            region,
        };
        circuit.append(op).map_err(|e| Error::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_line_shapes() {
        let src = ".ancilla q3\nH q2\nFANOUT q0 q1 q2\nMZ q3 -> c0\nCZ q0 q1 if c0\nCCX q0 q1 q2 @head\nRY(0.5) q1 # note\n";
        let c = from_text(src).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.is_ancilla(QubitId(3)));
        assert_eq!(c.ops()[1].kind, GateKind::Fanout(2));
        assert_eq!(c.ops()[4].region.as_deref(), Some("head"));
        assert_eq!(
            c.ops()[3].kind,
            GateKind::ClassicallyControlled(Box::new(GateKind::Cz))
        );
        assert_eq!(from_text(&to_text(&c)).unwrap(), c);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(
            from_text("FOO q0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            from_text("H q0\nCNOT q1 q1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(from_text("CNOT q0 x1").is_err());
    }
}
