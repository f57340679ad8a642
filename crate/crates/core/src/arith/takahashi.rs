use super::{qubits, RegisterMap};
use crate::circuit::{Circuit, Operation};
use crate::error::{Error, Result};

/// Ancilla-free ripple-carry adder `|a, b, z⟩ -> |a, a + b⟩` with `a` on
/// `0..n`, `b` on `n..2n` and the carry-out on `2n`.
pub fn build_takahashi_adder(n: usize) -> Result<(Circuit, RegisterMap)> {
    if n < 2 {
        return Err(Error::UnsupportedWidth(n));
    }
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    let z = 2 * n;
    let mut c = Circuit::new();
    for i in 1..n {
        c.push(Operation::cnot(a[i], b[i]));
    }
    c.push(Operation::cnot(a[n - 1], z));
    for i in (1..n - 1).rev() {
        c.push(Operation::cnot(a[i], a[i + 1]));
    }
    for i in 0..n - 1 {
        c.push(Operation::toffoli(a[i], b[i], a[i + 1]));
    }
    c.push(Operation::toffoli(a[n - 1], b[n - 1], z));
    for i in (1..n).rev() {
        c.push(Operation::cnot(a[i], b[i]));
        c.push(Operation::toffoli(a[i - 1], b[i - 1], a[i]));
    }
    for i in 1..n - 1 {
        c.push(Operation::cnot(a[i], a[i + 1]));
    }
    for i in 0..n {
        c.push(Operation::cnot(a[i], b[i]));
    }
    let regs = RegisterMap {
        control: None,
        a: qubits(0..n),
        b: qubits(n..2 * n),
        out: qubits(n..2 * n + 1),
        ancilla: Vec::new(),
    };
    Ok((c, regs))
}
