//! Gate-level circuit representation.
//!
//! A [`Circuit`] is an ordered list of [`Operation`]s. Program order is the
//! only ordering it stores; layers are always derived by [`schedule_asap`].

mod report;
mod schedule;
mod text;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use report::{report, report_with, ResourceReport, TMode};
pub use schedule::{schedule_asap, schedule_with, Schedule, ScheduleOptions};
pub use text::{from_text, to_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QubitId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassicalBit(pub usize);

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl fmt::Display for ClassicalBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Which relative-phase Toffoli an unexpanded `RelPhaseToffoli` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelPhaseTag {
    Rt3,
    Rt4,
    And,
    Barenco,
}

impl RelPhaseTag {
    pub fn name(self) -> &'static str {
        match self {
            RelPhaseTag::Rt3 => "rt3",
            RelPhaseTag::Rt4 => "rt4",
            RelPhaseTag::And => "and",
            RelPhaseTag::Barenco => "barenco",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rt3" => Some(RelPhaseTag::Rt3),
            "rt4" => Some(RelPhaseTag::Rt4),
            "and" => Some(RelPhaseTag::And),
            "barenco" => Some(RelPhaseTag::Barenco),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    /// Single-qubit Y rotation by the given angle in radians.
    Ry(f64),
    Cnot,
    /// One control, `k` targets; a single layer.
    Fanout(usize),
    Cz,
    Toffoli,
    RelPhaseToffoli(RelPhaseTag),
    Cry(f64),
    /// X-basis measurement; the qubit is left in |0⟩.
    MeasureX,
    /// Z-basis measurement; the qubit is left in |0⟩.
    MeasureZ,
    /// Inner gate applied only when the operation's classical bit reads 1.
    ClassicallyControlled(Box<GateKind>),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg
            | GateKind::Ry(_)
            | GateKind::MeasureX
            | GateKind::MeasureZ => 1,
            GateKind::Cnot | GateKind::Cz | GateKind::Cry(_) => 2,
            GateKind::Fanout(k) => 1 + k,
            GateKind::Toffoli | GateKind::RelPhaseToffoli(_) => 3,
            GateKind::ClassicallyControlled(inner) => inner.arity(),
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    pub fn is_measurement(&self) -> bool {
        matches!(self, GateKind::MeasureX | GateKind::MeasureZ)
    }

    pub fn is_toffoli_like(&self) -> bool {
        matches!(self, GateKind::Toffoli | GateKind::RelPhaseToffoli(_))
    }

    /// Number of CNOTs the gate contributes; a fanout counts each target.
    pub fn cnot_weight(&self) -> usize {
        match self {
            GateKind::Cnot => 1,
            GateKind::Fanout(k) => *k,
            GateKind::ClassicallyControlled(inner) => inner.cnot_weight(),
            _ => 0,
        }
    }

    pub fn cbit_count(&self) -> usize {
        match self {
            GateKind::MeasureX | GateKind::MeasureZ | GateKind::ClassicallyControlled(_) => 1,
            _ => 0,
        }
    }

    /// The gate that undoes this one. Measurements have no inverse.
    pub fn inverse(&self) -> Option<GateKind> {
        Some(match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Ry(a) => GateKind::Ry(-a),
            GateKind::Cry(a) => GateKind::Cry(-a),
            GateKind::MeasureX | GateKind::MeasureZ => return None,
            GateKind::ClassicallyControlled(inner) => {
                GateKind::ClassicallyControlled(Box::new(inner.inverse()?))
            }
            GateKind::RelPhaseToffoli(_) => return None,
            other => other.clone(),
        })
    }

    fn check(&self) -> Result<()> {
        match self {
            GateKind::Ry(a) | GateKind::Cry(a) if !a.is_finite() => Err(
                Error::MalformedOperation(format!("rotation angle {a} is not finite")),
            ),
            GateKind::Fanout(0) => Err(Error::MalformedOperation(
                "fanout needs at least one target".into(),
            )),
            GateKind::ClassicallyControlled(inner) => match **inner {
                GateKind::MeasureX | GateKind::MeasureZ | GateKind::ClassicallyControlled(_) => {
                    Err(Error::MalformedOperation(
                        "classical control must wrap a unitary gate".into(),
                    ))
                }
                ref g => g.check(),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Operation {
    pub kind: GateKind,
    pub qubits: Vec<QubitId>,
    /// Written by measurements, read by classically controlled gates.
    pub cbits: Vec<ClassicalBit>,
    /// Region tag consulted by per-region expansion overrides.
    pub region: Option<String>,
}

impl Operation {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Self {
        Operation {
            kind,
            qubits: qubits.iter().map(|&q| QubitId(q)).collect(),
            cbits: Vec::new(),
            region: None,
        }
    }

    pub fn with_cbit(mut self, bit: usize) -> Self {
        self.cbits = vec![ClassicalBit(bit)];
        self
    }

    pub fn with_region(mut self, region: impl Into<String>) -> Self {
        self.region = Some(region.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.kind.check()?;
        if self.qubits.len() != self.kind.arity() {
            return Err(Error::MalformedOperation(format!(
                "{:?} expects {} qubits, got {}",
                self.kind,
                self.kind.arity(),
                self.qubits.len()
            )));
        }
        if self.cbits.len() != self.kind.cbit_count() {
            return Err(Error::MalformedOperation(format!(
                "{:?} expects {} classical bits, got {}",
                self.kind,
                self.kind.cbit_count(),
                self.cbits.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for q in &self.qubits {
            if !seen.insert(*q) {
                return Err(Error::DuplicateQubit(*q));
            }
        }
        Ok(())
    }

    pub fn cnot(c: usize, t: usize) -> Self {
        Operation::new(GateKind::Cnot, &[c, t])
    }

    pub fn toffoli(a: usize, b: usize, t: usize) -> Self {
        Operation::new(GateKind::Toffoli, &[a, b, t])
    }

    pub fn fanout(c: usize, targets: &[usize]) -> Self {
        let mut qs = vec![c];
        qs.extend_from_slice(targets);
        Operation::new(GateKind::Fanout(targets.len()), &qs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    ops: Vec<Operation>,
    ancillae: BTreeSet<QubitId>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `op` at the end of program order.
    pub fn append(&mut self, op: Operation) -> Result<&mut Self> {
        op.validate()?;
        self.ops.push(op);
        Ok(self)
    }

    /// Appends an operation built by this crate; panics if it is malformed.
    pub(crate) fn push(&mut self, op: Operation) {
        debug_assert!(op.validate().is_ok(), "malformed {op:?}");
        self.ops.push(op);
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn declare_ancilla(&mut self, q: QubitId) {
        self.ancillae.insert(q);
    }

    pub fn ancillae(&self) -> &BTreeSet<QubitId> {
        &self.ancillae
    }

    pub fn is_ancilla(&self, q: QubitId) -> bool {
        self.ancillae.contains(&q)
    }

    /// Distinct qubits touched by any operation, plus declared ancillae.
    pub fn qubits(&self) -> BTreeSet<QubitId> {
        let mut set: BTreeSet<QubitId> = self.ancillae.clone();
        for op in &self.ops {
            set.extend(op.qubits.iter().copied());
        }
        set
    }

    pub fn width(&self) -> usize {
        self.qubits().len()
    }

    /// One past the largest qubit index in use; the register size a simulator needs.
    pub fn qubit_span(&self) -> usize {
        self.qubits().iter().next_back().map_or(0, |q| q.0 + 1)
    }

    pub fn cbit_span(&self) -> usize {
        self.ops
            .iter()
            .flat_map(|o| o.cbits.iter())
            .map(|c| c.0 + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn toffoli_count(&self) -> usize {
        self.ops.iter().filter(|o| o.kind.is_toffoli_like()).count()
    }

    /// Appends every op of `other` with qubits renamed through `map`.
    /// Classical bits are shifted past the ones already in use.
    pub fn extend_mapped(&mut self, other: &Circuit, map: &[usize]) {
        let shift = self.cbit_span();
        for op in &other.ops {
            let mut op = op.clone();
            for q in op.qubits.iter_mut() {
                *q = QubitId(map[q.0]);
            }
            for c in op.cbits.iter_mut() {
                c.0 += shift;
            }
            self.ops.push(op);
        }
        for a in &other.ancillae {
            self.ancillae.insert(QubitId(map[a.0]));
        }
    }

    pub fn extend(&mut self, other: &Circuit) {
        let map: Vec<usize> = (0..other.qubit_span()).collect();
        self.extend_mapped(other, &map);
    }

    /// The circuit run backwards with every gate inverted.
    /// `None` when the circuit measures.
    pub fn inverse(&self) -> Option<Circuit> {
        let mut out = Circuit {
            ops: Vec::with_capacity(self.ops.len()),
            ancillae: self.ancillae.clone(),
        };
        for op in self.ops.iter().rev() {
            let mut inv = op.clone();
            inv.kind = op.kind.inverse()?;
            out.ops.push(inv);
        }
        Some(out)
    }

    pub fn set_region(&mut self, region: &str) {
        for op in self.ops.iter_mut() {
            op.region = Some(region.to_string());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_tracks_width() {
        let mut c = Circuit::new();
        c.append(Operation::cnot(0, 1)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.width(), 2);
        c.append(Operation::cnot(2, 3)).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.width(), 4);
    }

    #[test]
    fn append_rejects_repeated_qubit() {
        let mut c = Circuit::new();
        let err = c.append(Operation::cnot(0, 0)).unwrap_err();
        assert_eq!(err, Error::DuplicateQubit(QubitId(0)));
        assert!(c.is_empty());
    }

    #[test]
    fn append_rejects_wrong_arity_and_bad_angle() {
        let mut c = Circuit::new();
        assert!(c.append(Operation::new(GateKind::Cnot, &[0])).is_err());
        assert!(c.append(Operation::new(GateKind::Cry(f64::NAN), &[0, 1])).is_err());
        assert!(c.append(Operation::new(GateKind::MeasureZ, &[0])).is_err());
        assert!(c
            .append(Operation::new(GateKind::MeasureZ, &[0]).with_cbit(0))
            .is_ok());
        assert!(c.append(Operation::fanout(0, &[])).is_err());
    }

    #[test]
    fn inverse_reverses_and_daggers() {
        let mut c = Circuit::new();
        c.push(Operation::new(GateKind::T, &[0]));
        c.push(Operation::cnot(0, 1));
        c.push(Operation::new(GateKind::S, &[1]));
        let inv = c.inverse().unwrap();
        let kinds: Vec<_> = inv.ops().iter().map(|o| o.kind.clone()).collect();
        assert_eq!(kinds, vec![GateKind::Sdg, GateKind::Cnot, GateKind::Tdg]);
        c.push(Operation::new(GateKind::MeasureZ, &[1]).with_cbit(0));
        assert!(c.inverse().is_none());
    }
}
