use super::{qubits, RegisterMap};
use crate::circuit::{Circuit, Operation, QubitId};
use crate::error::{Error, Result};

/// Appends `|ctrl, a, b, z⟩ -> |ctrl, a, (b + 2^n z + ctrl·a) mod 2^(n+1)⟩`
/// where `b` is `n` wires, `z` is the carry-out wire and `anc` starts and
/// ends in |0⟩.
pub(crate) fn append_ctrl_adder(
    c: &mut Circuit,
    ctrl: usize,
    a: &[usize],
    b: &[usize],
    z: usize,
    anc: usize,
) {
    let n = a.len();
    for i in 1..n {
        c.push(Operation::cnot(a[i], b[i]));
    }
    c.push(Operation::toffoli(ctrl, a[n - 1], z));
    for i in (1..n - 1).rev() {
        c.push(Operation::cnot(a[i], a[i + 1]));
    }
    for i in 0..n - 1 {
        c.push(Operation::toffoli(b[i], a[i], a[i + 1]));
    }
    c.push(Operation::toffoli(a[n - 1], b[n - 1], anc));
    c.push(Operation::toffoli(ctrl, anc, z));
    c.push(Operation::toffoli(a[n - 1], b[n - 1], anc));
    c.push(Operation::toffoli(ctrl, a[n - 1], b[n - 1]));
    for i in (0..n - 1).rev() {
        c.push(Operation::toffoli(b[i], a[i], a[i + 1]));
        c.push(Operation::toffoli(ctrl, a[i], b[i]));
    }
    for i in 1..n - 1 {
        c.push(Operation::cnot(a[i], a[i + 1]));
    }
    for i in 1..n {
        c.push(Operation::cnot(a[i], b[i]));
    }
}

/// Controlled ripple-carry adder on `2n + 3` wires: control on 0, `a` on
/// `1..=n`, `b` on `n+1..=2n`, carry-out on `2n+1`, one ancilla on `2n+2`.
pub fn build_ctrl_adder(n: usize) -> Result<(Circuit, RegisterMap)> {
    if n < 2 {
        return Err(Error::UnsupportedWidth(n));
    }
    let ctrl = 0;
    let a: Vec<usize> = (1..=n).collect();
    let b: Vec<usize> = (n + 1..=2 * n).collect();
    let z = 2 * n + 1;
    let anc = 2 * n + 2;
    let mut c = Circuit::new();
    c.declare_ancilla(QubitId(anc));
    append_ctrl_adder(&mut c, ctrl, &a, &b, z, anc);
    let regs = RegisterMap {
        control: Some(QubitId(ctrl)),
        a: qubits(1..n + 1),
        b: qubits(n + 1..2 * n + 1),
        out: qubits(n + 1..2 * n + 2),
        ancilla: vec![QubitId(anc)],
    };
    Ok((c, regs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{report, schedule_asap};

    #[test]
    fn four_bit_shape() {
        let (c, _) = build_ctrl_adder(4).unwrap();
        assert_eq!(c.width(), 11);
        assert_eq!(c.toffoli_count(), 14);
    }

    #[test]
    fn toffolis_occupy_distinct_layers() {
        for n in 2..=10 {
            let (c, _) = build_ctrl_adder(n).unwrap();
            let tofs: Vec<_> = c.ops().iter().filter(|o| o.kind.is_toffoli_like()).collect();
            assert_eq!(tofs.len(), 3 * n + 2);
            let s = schedule_asap(&c);
            let mut layers: Vec<usize> = c
                .ops()
                .iter()
                .enumerate()
                .filter(|(_, o)| o.kind.is_toffoli_like())
                .map(|(i, _)| s.assignment[i])
                .collect();
            layers.dedup();
            assert_eq!(layers.len(), 3 * n + 2);
        }
    }

    #[test]
    fn unexpanded_depth_is_five_n_minus_one() {
        for n in 2..=12 {
            let (c, _) = build_ctrl_adder(n).unwrap();
            assert_eq!(report(&c).depth, 5 * n - 1, "n={n}");
            assert_eq!(report(&c).cnot_count, 2 * (2 * n - 3));
        }
    }
}
