use std::collections::HashMap;

use num_complex::Complex64;

use super::state::StateVector;
use crate::circuit::{Circuit, ClassicalBit, GateKind, Operation};
use crate::error::{Error, Result};
use crate::toffoli::{fragment, DecompKind};

pub const DEFAULT_WIDTH_CAP: usize = 24;

/// Branches with a smaller probability than this are dropped.
const PRUNE_PROBABILITY: f64 = 1e-14;

/// Largest width the simulator accepts: `QARITH_WIDTH_CAP` if set, else 24.
pub fn width_cap() -> usize {
    std::env::var("QARITH_WIDTH_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_WIDTH_CAP)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    /// Measurement results in the order they happened.
    pub outcomes: Vec<(ClassicalBit, bool)>,
    pub probability: f64,
    pub state: StateVector,
    /// Number of outcome histories folded into this branch (1 unless merged).
    pub histories: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimOptions {
    /// Fold branches together once their outcome bits will not be read again
    /// and their states agree. Each folded branch was still simulated and
    /// compared up to that point.
    pub merge_settled: bool,
}

const MERGE_TOL: f64 = 1e-12;

/// Runs `circuit` on basis state `input` over `circuit.qubit_span()` wires.
pub fn simulate(circuit: &Circuit, input: usize) -> Result<Vec<BranchState>> {
    let width = circuit.qubit_span().max(1);
    check_width(width)?;
    simulate_state(circuit, StateVector::basis(width, input), SimOptions::default())
}

fn check_width(width: usize) -> Result<()> {
    let cap = width_cap();
    if width > cap {
        return Err(Error::Capacity { width, cap });
    }
    Ok(())
}

/// Runs `circuit` on an arbitrary starting state.
pub fn simulate_state(
    circuit: &Circuit,
    input: StateVector,
    opts: SimOptions,
) -> Result<Vec<BranchState>> {
    check_width(input.width())?;
    if circuit.qubit_span() > input.width() {
        return Err(Error::Shape(circuit.qubit_span(), input.width()));
    }
    let ops = inline_rel_phase(circuit);
    let last_read = last_reads(&ops);

    let mut branches = vec![BranchState {
        outcomes: Vec::new(),
        probability: 1.0,
        state: input,
        histories: 1,
    }];
    for (k, op) in ops.iter().enumerate() {
        let wires: Vec<usize> = op.qubits.iter().map(|q| q.0).collect();
        match &op.kind {
            GateKind::MeasureZ | GateKind::MeasureX => {
                let cbit = op.cbits[0];
                let mut next = Vec::with_capacity(branches.len() * 2);
                for mut br in branches {
                    if op.kind == GateKind::MeasureX {
                        br.state.apply(&GateKind::H, &wires);
                    }
                    let p1 = br.state.prob_one(wires[0]).clamp(0.0, 1.0);
                    for (value, p) in [(false, 1.0 - p1), (true, p1)] {
                        if br.probability * p < PRUNE_PROBABILITY {
                            continue;
                        }
                        let mut state = br.state.clone();
                        state.collapse_and_reset(wires[0], value, p);
                        let mut outcomes = br.outcomes.clone();
                        outcomes.retain(|(b, _)| *b != cbit);
                        outcomes.push((cbit, value));
                        next.push(BranchState {
                            outcomes,
                            probability: br.probability * p,
                            state,
                            histories: br.histories,
                        });
                    }
                }
                branches = next;
            }
            GateKind::ClassicallyControlled(inner) => {
                for br in &mut branches {
                    let fire = op
                        .cbits
                        .iter()
                        .all(|c| br.outcomes.iter().any(|(b, v)| b == c && *v));
                    if fire {
                        br.state.apply(inner, &wires);
                    }
                }
            }
            kind => {
                for br in &mut branches {
                    br.state.apply(kind, &wires);
                }
            }
        }
        if opts.merge_settled {
            branches = merge(branches, |c| last_read.get(&c).is_none_or(|&j| j <= k));
        }
    }
    Ok(branches)
}

/// Replaces relative-phase Toffolis by their fragments so the simulator only
/// sees plain gates.
fn inline_rel_phase(circuit: &Circuit) -> Vec<Operation> {
    let mut out = Vec::with_capacity(circuit.len());
    for op in circuit.ops() {
        if let GateKind::RelPhaseToffoli(tag) = op.kind {
            let wires: Vec<usize> = op.qubits.iter().map(|q| q.0).collect();
            let mut c = Circuit::new();
            c.extend_mapped(&fragment(DecompKind::from_tag(tag)), &wires);
            out.extend(c.ops().iter().cloned());
        } else {
            out.push(op.clone());
        }
    }
    out
}

fn last_reads(ops: &[Operation]) -> HashMap<ClassicalBit, usize> {
    let mut last = HashMap::new();
    for (k, op) in ops.iter().enumerate() {
        if matches!(op.kind, GateKind::ClassicallyControlled(_)) {
            for c in &op.cbits {
                last.insert(*c, k);
            }
        }
    }
    last
}

fn merge(branches: Vec<BranchState>, settled: impl Fn(ClassicalBit) -> bool) -> Vec<BranchState> {
    if branches.len() < 2 {
        return branches;
    }
    let mut out: Vec<BranchState> = Vec::with_capacity(branches.len());
    for mut br in branches {
        br.outcomes.retain(|(c, _)| !settled(*c));
        let twin = out.iter_mut().find(|o| {
            o.outcomes == br.outcomes
                && o.state.distance(&br.state, Complex64::new(1.0, 0.0)) < MERGE_TOL
        });
        match twin {
            Some(o) => {
                o.probability += br.probability;
                o.histories += br.histories;
            }
            None => out.push(br),
        }
    }
    out
}
