//! In-place carry-lookahead adder built from propagate/generate rounds over
//! a binary tree of block propagate bits.

use std::collections::BTreeMap;

use super::{qubits, RegisterMap};
use crate::circuit::{Circuit, GateKind, Operation, QubitId};
use crate::error::{Error, Result};

fn floor_log2(x: usize) -> u32 {
    usize::BITS - 1 - x.leading_zeros()
}

/// Toffolis of the carry network on `n` bit positions.
///
/// `p0[m]` (m >= 1) holds the propagate bit of position m, `g[j]` (1 <= j <= n)
/// holds the generate bit of position j-1 and ends holding carry j.
/// Higher-level propagate bits live in wires drawn from `alloc`.
fn carry_network(
    n: usize,
    p0: &[usize],
    g: &[usize],
    alloc: &mut dyn FnMut() -> usize,
) -> Vec<[usize; 3]> {
    let levels = floor_log2(n);
    let mut p: Vec<BTreeMap<usize, usize>> = vec![(1..n).map(|m| (m, p0[m])).collect()];
    for t in 1..levels {
        p.push((1..n >> t).map(|m| (m, alloc())).collect());
    }
    let mut p_rounds = Vec::new();
    for t in 1..levels as usize {
        for m in 1..n >> t {
            p_rounds.push([p[t - 1][&(2 * m)], p[t - 1][&(2 * m + 1)], p[t][&m]]);
        }
    }
    let mut g_rounds = Vec::new();
    for t in 1..=levels as usize {
        for m in 0..n >> t {
            let lo = (m << t) + (1 << (t - 1));
            g_rounds.push([g[lo], p[t - 1][&(2 * m + 1)], g[(m << t) + (1 << t)]]);
        }
    }
    let mut c_rounds = Vec::new();
    let top = if n >= 3 { floor_log2(2 * n / 3) as usize } else { 0 };
    for t in (1..=top).rev() {
        let half = 1usize << (t - 1);
        if n < half {
            continue;
        }
        for m in 1..=(n - half) >> t {
            c_rounds.push([g[m << t], p[t - 1][&(2 * m)], g[(m << t) + half]]);
        }
    }
    let mut all = p_rounds.clone();
    all.extend(g_rounds);
    all.extend(c_rounds);
    all.extend(p_rounds.into_iter().rev());
    all
}

/// `|a, b⟩ -> |a, a + b⟩` with `a` on `0..n`, `b` on `n..2n`, carry wires
/// `z_1..z_n` on `2n..3n` (`z_n` is the carry-out) and tree workspace after.
pub fn build_cla_adder(n: usize) -> Result<(Circuit, RegisterMap)> {
    if n < 2 {
        return Err(Error::UnsupportedWidth(n));
    }
    let a: Vec<usize> = (0..n).collect();
    let b: Vec<usize> = (n..2 * n).collect();
    // g[j] for j in 1..=n; index 0 unused.
    let g: Vec<usize> = std::iter::once(usize::MAX)
        .chain(2 * n..3 * n)
        .collect();
    let mut next = 3 * n;
    let mut tree: Vec<usize> = Vec::new();

    let mut c = Circuit::new();
    for i in 0..n {
        c.push(Operation::toffoli(a[i], b[i], g[i + 1]));
    }
    for i in 0..n {
        c.push(Operation::cnot(a[i], b[i]));
    }
    let mut fresh = || {
        let q = next;
        next += 1;
        tree.push(q);
        q
    };
    for [x, y, t] in carry_network(n, &b, &g, &mut fresh) {
        c.push(Operation::toffoli(x, y, t));
    }
    for i in 1..n {
        c.push(Operation::cnot(g[i], b[i]));
    }

    // b now holds the sum. The low carries equal the carries of a plus the
    // complement of the low sum bits, so that computation is run backwards.
    for &q in &b[..n - 1] {
        c.push(Operation::new(GateKind::X, &[q]));
    }
    for i in 1..n - 1 {
        c.push(Operation::cnot(a[i], b[i]));
    }
    let mut reuse = tree.clone().into_iter();
    let mut again = || reuse.next().expect("smaller tree fits");
    for [x, y, t] in carry_network(n - 1, &b, &g, &mut again).into_iter().rev() {
        c.push(Operation::toffoli(x, y, t));
    }
    for i in 1..n - 1 {
        c.push(Operation::cnot(a[i], b[i]));
    }
    for i in 0..n - 1 {
        c.push(Operation::toffoli(a[i], b[i], g[i + 1]));
    }
    for &q in &b[..n - 1] {
        c.push(Operation::new(GateKind::X, &[q]));
    }

    let mut ancilla: Vec<QubitId> = qubits(2 * n..3 * n - 1);
    ancilla.extend(tree.iter().map(|&q| QubitId(q)));
    for q in &ancilla {
        c.declare_ancilla(*q);
    }
    let mut out = qubits(n..2 * n);
    out.push(QubitId(3 * n - 1));
    let regs = RegisterMap {
        control: None,
        a: qubits(0..n),
        b: qubits(n..2 * n),
        out,
        ancilla,
    };
    Ok((c, regs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::report;

    fn weight(x: usize) -> usize {
        x.count_ones() as usize
    }

    /// Closed-form Toffoli count of the in-place construction.
    fn toffoli_closed_form(n: usize) -> usize {
        let l = |x: usize| floor_log2(x) as usize;
        10 * n - 3 * weight(n) - 3 * weight(n - 1) - 3 * l(n) - 3 * l(n - 1) - 7
    }

    #[test]
    fn toffoli_count_matches_closed_form() {
        for n in 3..=64 {
            let (c, _) = build_cla_adder(n).unwrap();
            assert_eq!(c.toffoli_count(), toffoli_closed_form(n), "n={n}");
        }
    }

    #[test]
    fn toffoli_count_fixtures() {
        let counts: Vec<usize> = [4, 8, 16, 32, 64]
            .iter()
            .map(|&n| build_cla_adder(n).unwrap().0.toffoli_count())
            .collect();
        assert_eq!(counts, vec![15, 46, 117, 268, 579]);
        for n in [32, 64] {
            let t = build_cla_adder(n).unwrap().0.toffoli_count();
            assert!((8 * n..=12 * n).contains(&t));
        }
    }

    #[test]
    fn width_is_below_four_n() {
        for n in 2..=64 {
            let (c, _) = build_cla_adder(n).unwrap();
            assert!(c.width() <= 4 * n, "n={n} width {}", c.width());
        }
    }

    #[test]
    fn unexpanded_depth_is_logarithmic() {
        let d16 = report(&build_cla_adder(16).unwrap().0).depth;
        let d32 = report(&build_cla_adder(32).unwrap().0).depth;
        assert!((d32 as f64) / (d16 as f64) < 1.5);
    }
}
