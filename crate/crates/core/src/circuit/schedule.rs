use std::collections::HashMap;

use super::{Circuit, Operation};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScheduleOptions {
    /// Every T/Tdg gets a layer of its own, as when magic states arrive one at a time.
    pub sequential_t: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// Op indices per layer, in program order within a layer.
    pub moments: Vec<Vec<usize>>,
    /// Layer index of every op.
    pub assignment: Vec<usize>,
}

impl Schedule {
    pub fn depth(&self) -> usize {
        self.moments.len()
    }
}

pub fn schedule_asap(circuit: &Circuit) -> Schedule {
    schedule_with(circuit, ScheduleOptions::default())
}

/// Places each op one layer after the latest earlier op it shares a qubit or
/// classical bit with.
pub fn schedule_with(circuit: &Circuit, opts: ScheduleOptions) -> Schedule {
    let mut qubit_free: HashMap<usize, usize> = HashMap::new();
    let mut cbit_free: HashMap<usize, usize> = HashMap::new();
    let mut t_free = 0usize;
    let mut assignment = Vec::with_capacity(circuit.len());
    let mut moments: Vec<Vec<usize>> = Vec::new();

    for (i, op) in circuit.ops().iter().enumerate() {
        let mut layer = earliest(op, &qubit_free, &cbit_free);
        if opts.sequential_t && op.kind.is_t() {
            layer = layer.max(t_free);
        }
        for q in &op.qubits {
            qubit_free.insert(q.0, layer + 1);
        }
        for c in &op.cbits {
            cbit_free.insert(c.0, layer + 1);
        }
        if opts.sequential_t && op.kind.is_t() {
            t_free = layer + 1;
        }
        if moments.len() <= layer {
            moments.resize_with(layer + 1, Vec::new);
        }
        moments[layer].push(i);
        assignment.push(layer);
    }
    Schedule {
        moments,
        assignment,
    }
}

fn earliest(
    op: &Operation,
    qubit_free: &HashMap<usize, usize>,
    cbit_free: &HashMap<usize, usize>,
) -> usize {
    let q = op
        .qubits
        .iter()
        .map(|q| qubit_free.get(&q.0).copied().unwrap_or(0));
    let c = op
        .cbits
        .iter()
        .map(|c| cbit_free.get(&c.0).copied().unwrap_or(0));
    q.chain(c).max().unwrap_or(0)
}
