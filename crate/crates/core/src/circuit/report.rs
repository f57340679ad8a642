use serde::{Deserialize, Serialize};

use super::{schedule_with, Circuit, GateKind, ScheduleOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum TMode {
    /// T gates in independent layers may share a layer.
    #[default]
    Parallel,
    /// One T gate per layer.
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResourceReport {
    pub depth: usize,
    pub t_depth_parallel: usize,
    pub t_depth_sequential: usize,
    pub t_count: usize,
    pub cnot_count: usize,
    pub cz_count: usize,
    pub measurement_count: usize,
    pub width: usize,
    pub kq: usize,
    pub kq_t: usize,
    /// Toffoli-like gates left unexpanded; counted as opaque single layers.
    pub unexpanded: usize,
}

impl ResourceReport {
    pub fn t_depth(&self, mode: TMode) -> usize {
        match mode {
            TMode::Parallel => self.t_depth_parallel,
            TMode::Sequential => self.t_depth_sequential,
        }
    }

    pub fn is_expanded(&self) -> bool {
        self.unexpanded == 0
    }

    /// CNOTs plus CZs.
    pub fn two_qubit_count(&self) -> usize {
        self.cnot_count + self.cz_count
    }
}

pub fn report(circuit: &Circuit) -> ResourceReport {
    report_with(circuit, TMode::Parallel)
}

/// `kq_t` uses the T-depth of `mode`. In sequential mode the depth is taken
/// from a schedule where T gates never share a layer.
pub fn report_with(circuit: &Circuit, mode: TMode) -> ResourceReport {
    let sched = schedule_with(
        circuit,
        ScheduleOptions {
            sequential_t: mode == TMode::Sequential,
        },
    );
    let mut r = ResourceReport {
        depth: sched.depth(),
        width: circuit.width(),
        ..Default::default()
    };
    for op in circuit.ops() {
        let kind = match &op.kind {
            GateKind::ClassicallyControlled(inner) => inner.as_ref(),
            k => k,
        };
        match kind {
            GateKind::T | GateKind::Tdg => r.t_count += 1,
            GateKind::Cz => r.cz_count += 1,
            GateKind::MeasureX | GateKind::MeasureZ => r.measurement_count += 1,
            GateKind::Toffoli | GateKind::RelPhaseToffoli(_) => r.unexpanded += 1,
            _ => {}
        }
        r.cnot_count += kind.cnot_weight();
    }
    r.t_depth_parallel = sched
        .moments
        .iter()
        .filter(|m| m.iter().any(|&i| circuit.ops()[i].kind.is_t()))
        .count();
    r.t_depth_sequential = r.t_count;
    r.kq = r.depth * r.width;
    r.kq_t = r.t_depth(mode) * r.width;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Operation;

    #[test]
    fn empty_report_is_zero() {
        assert_eq!(report(&Circuit::new()), ResourceReport::default());
    }

    #[test]
    fn fanout_counts_targets() {
        let mut c = Circuit::new();
        c.push(Operation::fanout(0, &[1, 2, 3]));
        let r = report(&c);
        assert_eq!(r.cnot_count, 3);
        assert_eq!(r.depth, 1);
    }

    #[test]
    fn unexpanded_toffoli_is_flagged() {
        let mut c = Circuit::new();
        c.push(Operation::toffoli(0, 1, 2));
        let r = report(&c);
        assert_eq!(r.depth, 1);
        assert_eq!(r.unexpanded, 1);
        assert_eq!(r.t_count, 0);
        assert!(!r.is_expanded());
    }
}
