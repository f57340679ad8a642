use super::ctrl_adder::append_ctrl_adder;
use super::{qubits, RegisterMap};
use crate::circuit::{Circuit, Operation, QubitId};
use crate::error::{Error, Result};
use crate::toffoli::{DecompKind, ExpansionPolicy};

/// Region tag of the leading partial-product Toffolis.
pub const HEAD_REGION: &str = "head";
/// Region tag of the controlled adders.
pub const ADDER_REGION: &str = "adders";

/// Head Toffolis on the depth-10 zero-ancilla circuit, which keeps them
/// parallel without extra wires; everything else on the four-ancilla
/// T-depth 1 circuit.
pub fn hybrid_policy() -> ExpansionPolicy {
    ExpansionPolicy {
        use_legacy_0at3_depth: true,
        ..ExpansionPolicy::new(DecompKind::A4t1)
    }
    .with_region(HEAD_REGION, DecompKind::A0t3)
}

/// Shift-and-add multiplier on `4n + 1` wires: `a` on `0..n`, `b` on
/// `n..2n`, product on `2n..4n`, one adder ancilla on `4n`.
///
/// The first partial product `b_0 · a` is written by `n` Toffolis on
/// disjoint wires: `b_0` is fanned out into the still-empty top of the
/// product register for the duration. Each following bit `b_j` controls a
/// ripple adder of `a` into the product window starting at `j`.
pub fn build_multiplier(n: usize) -> Result<(Circuit, RegisterMap)> {
    if n < 2 {
        return Err(Error::UnsupportedWidth(n));
    }
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    let p: Vec<usize> = (2 * n..4 * n).collect();
    let anc = 4 * n;
    let mut c = Circuit::new();
    c.declare_ancilla(QubitId(anc));

    let copies: Vec<usize> = p[n..2 * n - 1].to_vec();
    c.push(Operation::fanout(b[0], &copies).with_region(HEAD_REGION));
    c.push(Operation::toffoli(a[0], b[0], p[0]).with_region(HEAD_REGION));
    for i in 1..n {
        c.push(Operation::toffoli(a[i], copies[i - 1], p[i]).with_region(HEAD_REGION));
    }
    c.push(Operation::fanout(b[0], &copies).with_region(HEAD_REGION));

    let start = c.len();
    for j in 1..n {
        append_ctrl_adder(&mut c, b[j], &a, &p[j..j + n], p[j + n], anc);
    }
    let mut tagged = Circuit::new();
    tagged.declare_ancilla(QubitId(anc));
    for (k, op) in c.ops().iter().enumerate() {
        let mut op = op.clone();
        if k >= start {
            op.region = Some(ADDER_REGION.to_string());
        }
        tagged.push(op);
    }
    let regs = RegisterMap {
        control: None,
        a: qubits(0..n),
        b: qubits(n..2 * n),
        out: qubits(2 * n..4 * n),
        ancilla: vec![QubitId(anc)],
    };
    Ok((tagged, regs))
}
