use std::f64::consts::FRAC_PI_4;

use super::DecompKind;
use crate::circuit::{Circuit, GateKind, Operation, QubitId};

// Wire convention for every fragment: controls on 0 and 1, target on 2,
// ancillae from 3 upward.
const A: usize = 0;
const B: usize = 1;
const T: usize = 2;

enum G {
    One(GateKind, usize),
    Cx(usize, usize),
    Fan(usize, &'static [usize]),
}

use G::*;

fn build(gates: &[G], ancillae: usize) -> Circuit {
    let mut c = Circuit::new();
    for g in gates {
        let op = match g {
            One(kind, q) => Operation::new(kind.clone(), &[*q]),
            Cx(ctl, tgt) => Operation::cnot(*ctl, *tgt),
            Fan(ctl, tgts) => Operation::fanout(*ctl, tgts),
        };
        c.push(op);
    }
    for q in 0..ancillae {
        c.declare_ancilla(QubitId(3 + q));
    }
    c
}

fn h(q: usize) -> G {
    One(GateKind::H, q)
}
fn t(q: usize) -> G {
    One(GateKind::T, q)
}
fn tdg(q: usize) -> G {
    One(GateKind::Tdg, q)
}
fn s(q: usize) -> G {
    One(GateKind::S, q)
}
fn sdg(q: usize) -> G {
    One(GateKind::Sdg, q)
}
fn z(q: usize) -> G {
    One(GateKind::Z, q)
}
fn ry(angle: f64, q: usize) -> G {
    One(GateKind::Ry(angle), q)
}

fn standard() -> Circuit {
    build(
        &[
            h(T),
            Cx(B, T),
            tdg(T),
            Cx(A, T),
            t(T),
            Cx(B, T),
            tdg(T),
            Cx(A, T),
            t(T),
            h(T),
            Cx(A, B),
            tdg(B),
            Cx(A, B),
            tdg(B),
            t(A),
            s(B),
        ],
        0,
    )
}

/// Zero ancillae, T-depth 3, depth 9. The single fanout lets the middle
/// parity network fit in the layers around the T gates.
fn zero_ancilla_t3() -> Circuit {
    build(
        &[
            h(T),
            t(A),
            t(B),
            Fan(T, &[A, B]),
            tdg(A),
            tdg(B),
            t(T),
            Cx(A, B),
            Cx(T, A),
            Cx(B, T),
            tdg(B),
            t(T),
            Cx(B, T),
            Cx(A, B),
            h(T),
        ],
        0,
    )
}

/// Same gate budget laid out without fanouts: depth 10.
fn zero_ancilla_t3_legacy() -> Circuit {
    build(
        &[
            h(T),
            Cx(B, A),
            tdg(A),
            t(B),
            t(T),
            Cx(T, B),
            Cx(B, A),
            tdg(A),
            tdg(B),
            Cx(T, A),
            Cx(A, B),
            t(A),
            t(B),
            Cx(T, B),
            Cx(A, B),
            h(T),
        ],
        0,
    )
}

/// Four ancillae, T-depth 1, depth 7. Wires that finish their parity early
/// carry Clifford prefixes so all seven T gates share one layer.
fn four_ancilla_t1() -> Circuit {
    const Q1: usize = 3;
    const Q2: usize = 4;
    const Q3: usize = 5;
    const Q4: usize = 6;
    build(
        &[
            h(T),
            Fan(A, &[Q1, Q2, Q4]),
            Cx(B, Q3),
            Cx(B, Q1),
            Fan(T, &[Q2, Q3]),
            Cx(Q3, Q4),
            z(A),
            sdg(A),
            tdg(A),
            s(B),
            tdg(B),
            s(T),
            tdg(T),
            sdg(Q1),
            t(Q1),
            sdg(Q2),
            t(Q2),
            tdg(Q3),
            t(Q4),
            Cx(Q3, Q4),
            Fan(T, &[Q2, Q3]),
            Cx(B, Q1),
            Cx(B, Q3),
            Fan(A, &[Q1, Q2, Q4]),
            h(T),
        ],
        4,
    )
}

fn rt3() -> Circuit {
    build(
        &[
            h(T),
            t(T),
            Cx(B, T),
            tdg(T),
            Cx(A, T),
            t(T),
            Cx(B, T),
            tdg(T),
            h(T),
        ],
        0,
    )
}

fn rt4() -> Circuit {
    build(
        &[
            h(T),
            t(T),
            Cx(A, T),
            tdg(T),
            Cx(B, T),
            t(T),
            Cx(A, T),
            tdg(T),
            Cx(B, T),
            h(T),
        ],
        0,
    )
}

/// Computes into a target known to start in |0⟩ with no phase left behind.
fn logical_and() -> Circuit {
    build(
        &[
            h(T),
            t(T),
            Cx(A, T),
            Cx(B, T),
            Fan(T, &[A, B]),
            tdg(A),
            tdg(B),
            t(T),
            Fan(T, &[A, B]),
            h(T),
            s(T),
        ],
        0,
    )
}

fn barenco() -> Circuit {
    build(
        &[
            ry(FRAC_PI_4, T),
            Cx(B, T),
            ry(FRAC_PI_4, T),
            Cx(A, T),
            ry(-FRAC_PI_4, T),
            Cx(B, T),
            ry(-FRAC_PI_4, T),
        ],
        0,
    )
}

/// The lowering of one Toffoli on wires (0, 1 -> 2) plus ancillae.
pub fn fragment(kind: DecompKind) -> Circuit {
    fragment_with(kind, false)
}

/// `legacy` selects the depth-10 layout of the zero-ancilla T-depth 3
/// circuit; it has no effect on other kinds.
pub fn fragment_with(kind: DecompKind, legacy: bool) -> Circuit {
    match kind {
        DecompKind::St => standard(),
        DecompKind::A0t3 if legacy => zero_ancilla_t3_legacy(),
        DecompKind::A0t3 => zero_ancilla_t3(),
        DecompKind::A4t1 => four_ancilla_t1(),
        DecompKind::Rt3 => rt3(),
        DecompKind::Rt4 => rt4(),
        DecompKind::And => logical_and(),
        DecompKind::Barenco => barenco(),
    }
}

fn measure_and_fix(basis: GateKind, prep: Option<GateKind>) -> Circuit {
    let mut c = Circuit::new();
    if let Some(g) = prep {
        c.push(Operation::new(g, &[T]));
    }
    c.push(Operation::new(basis, &[T]).with_cbit(0));
    c.push(
        Operation::new(
            GateKind::ClassicallyControlled(Box::new(GateKind::Cz)),
            &[A, B],
        )
        .with_cbit(0),
    );
    c
}

/// Retires an ancilla on wire 2 holding the AND of wires 0 and 1:
/// H, Z measurement into c0, then CZ on the controls when c0 is set.
pub fn uncompute_fragment() -> Circuit {
    measure_and_fix(GateKind::MeasureZ, Some(GateKind::H))
}

/// Uncomputation matched to the phase `kind` leaves on |11⟩ of the controls.
/// RT3 leaves +i and RT4 leaves -i; both are cancelled before an X-basis
/// measurement so the layer count stays at three.
pub fn uncompute_for(kind: DecompKind) -> Circuit {
    match kind {
        DecompKind::Rt3 => measure_and_fix(GateKind::MeasureX, Some(GateKind::Sdg)),
        DecompKind::Rt4 => measure_and_fix(GateKind::MeasureX, Some(GateKind::S)),
        _ => uncompute_fragment(),
    }
}
