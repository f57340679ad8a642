//! Compute/uncompute Toffoli pairs on a clean ancilla, replaced by a
//! relative-phase compute and a measurement-based uncompute.

use std::collections::{BTreeSet, HashMap};

use super::{fragment, uncompute_for, DecompKind};
use crate::circuit::{Circuit, GateKind, Operation, QubitId};
use crate::error::{Error, Result};

/// Qubit positions of `kind` whose computational-basis value the gate never changes.
fn control_positions(kind: &GateKind) -> &'static [usize] {
    match kind {
        GateKind::Cnot | GateKind::Fanout(_) | GateKind::Cry(_) => &[0],
        GateKind::Toffoli | GateKind::RelPhaseToffoli(_) | GateKind::Cz => &[0, 1],
        GateKind::ClassicallyControlled(inner) => control_positions(inner),
        _ => &[],
    }
}

/// True when `op` touches `q` at most as a control.
fn control_only(op: &Operation, q: QubitId) -> bool {
    let ctl = control_positions(&op.kind);
    op.qubits
        .iter()
        .enumerate()
        .all(|(i, &w)| w != q || ctl.contains(&i))
}

fn toffoli_parts(op: &Operation) -> Option<(BTreeSet<QubitId>, QubitId)> {
    (op.kind == GateKind::Toffoli)
        .then(|| ([op.qubits[0], op.qubits[1]].into_iter().collect(), op.qubits[2]))
}

/// Checks everything except the ancilla starting clean.
fn structural(circuit: &Circuit, first: usize, second: usize) -> std::result::Result<(), String> {
    let ops = circuit.ops();
    if first >= second || second >= ops.len() {
        return Err("indices out of order or out of range".into());
    }
    let (c1, t1) = toffoli_parts(&ops[first]).ok_or("first op is not a Toffoli")?;
    let (c2, t2) = toffoli_parts(&ops[second]).ok_or("second op is not a Toffoli")?;
    if c1 != c2 {
        return Err("controls differ".into());
    }
    if t1 != t2 {
        return Err("targets differ".into());
    }
    for op in &ops[first + 1..second] {
        for &w in c1.iter().chain(std::iter::once(&t1)) {
            if !control_only(op, w) {
                return Err(format!("{w} is modified between the pair"));
            }
        }
    }
    Ok(())
}

/// Whether ancilla `x` is in |0⟩ right before op `at`, judged syntactically.
fn clean_before(circuit: &Circuit, x: QubitId, at: usize) -> bool {
    if !circuit.is_ancilla(x) {
        return false;
    }
    let ops = circuit.ops();
    let mut clean = true;
    let mut k = 0;
    while k < at {
        let op = &ops[k];
        if op.qubits.contains(&x) {
            if op.kind.is_measurement() {
                clean = true;
            } else if control_only(op, x) {
            } else if let Some(j) = partner(circuit, k, at).filter(|_| clean) {
                k = j;
            } else {
                clean = false;
            }
        }
        k += 1;
    }
    clean
}

/// The op after `first` (and before `limit`) that next modifies the target of
/// Toffoli `first`, if it closes an eligible pair.
fn partner(circuit: &Circuit, first: usize, limit: usize) -> Option<usize> {
    let (_, x) = toffoli_parts(&circuit.ops()[first])?;
    let j = (first + 1..limit).find(|&j| !control_only(&circuit.ops()[j], x))?;
    structural(circuit, first, j).ok().map(|_| j)
}

/// Eligible (compute, uncompute) pairs in program order, non-overlapping.
pub fn find_odb_pairs(circuit: &Circuit) -> Vec<(usize, usize)> {
    let ops = circuit.ops();
    let mut clean: HashMap<QubitId, bool> = circuit.ancillae().iter().map(|&q| (q, true)).collect();
    let mut closes: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (k, op) in ops.iter().enumerate() {
        if let Some(first) = closes.remove(&k) {
            pairs.push((first, k));
            continue;
        }
        for &q in &op.qubits {
            let Some(state) = clean.get(&q).copied() else {
                continue;
            };
            if op.kind.is_measurement() {
                clean.insert(q, true);
            } else if control_only(op, q) {
            } else if let Some(j) = partner(circuit, k, ops.len()).filter(|_| state) {
                closes.insert(j, k);
            } else {
                clean.insert(q, false);
            }
        }
    }
    pairs
}

/// Replaces the Toffoli pair at `first`/`second` with `kind` computing onto
/// the pair's ancilla target and a measurement-based uncompute.
pub fn odb_pair_replace(
    circuit: &Circuit,
    first: usize,
    second: usize,
    kind: DecompKind,
) -> Result<Circuit> {
    let not_eligible = |reason: String| Error::NotOdbEligible {
        first,
        second,
        reason,
    };
    if !kind.is_relative_phase() {
        return Err(not_eligible(format!("{kind} is not a relative-phase lowering")));
    }
    structural(circuit, first, second).map_err(not_eligible)?;
    let x = circuit.ops()[first].qubits[2];
    if !clean_before(circuit, x, first) {
        return Err(not_eligible(format!("{x} is not a clean ancilla")));
    }
    let mut out = Circuit::new();
    for a in circuit.ancillae() {
        out.declare_ancilla(*a);
    }
    for (k, op) in circuit.ops().iter().enumerate() {
        if k == first || k == second {
            let map: Vec<usize> = op.qubits.iter().map(|q| q.0).collect();
            let sub = if k == first {
                fragment(kind)
            } else {
                uncompute_for(kind)
            };
            let mut sub = sub;
            if let Some(r) = &op.region {
                sub.set_region(r);
            }
            out.extend_mapped(&sub, &map);
        } else {
            out.push(op.clone());
        }
    }
    Ok(out)
}

/// One Toffoli (a, b -> t) lowered through a fresh ancilla `x`:
/// `kind` onto x, copy x into t, then the measurement-based uncompute of x.
pub fn single_odb_replacement(kind: DecompKind, a: usize, b: usize, t: usize, x: usize) -> Circuit {
    let mut c = Circuit::new();
    c.extend_mapped(&fragment(kind), &[a, b, x]);
    c.push(Operation::cnot(x, t));
    c.extend_mapped(&uncompute_for(kind), &[a, b, x]);
    c.declare_ancilla(QubitId(x));
    c
}
