use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::toffoli::{published_row, DecompKind};

/// Per-Toffoli costs plugged into the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaInputs {
    pub n: usize,
    pub d_t: usize,
    pub t_d: usize,
    pub a: usize,
    pub c: usize,
}

impl FormulaInputs {
    /// Inputs from the published row of `kind`. `legacy` picks the depth-10
    /// layout of the zero-ancilla T-depth 3 circuit.
    pub fn for_kind(n: usize, kind: DecompKind, legacy: bool) -> Result<Self> {
        check_n(n)?;
        let row = published_row(kind)
            .ok_or_else(|| Error::InvalidParam(format!("{kind} has no published cost row")))?;
        let d_t = if legacy { row.formula_depth() } else { row.depth };
        Ok(FormulaInputs {
            n,
            d_t,
            t_d: row.t_d,
            a: row.ancillae,
            c: row.cnot_c,
        })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::UnsupportedWidth(n));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdderCosts {
    pub depth: usize,
    pub t_depth: usize,
    pub qubits: usize,
    pub cnot: usize,
}

/// Controlled ripple-carry adder: 3n+2 Toffolis in sequence plus 2(2n-3)
/// CNOTs, each CNOT layer adding one to the depth.
pub fn adder_formulas(f: &FormulaInputs) -> Result<AdderCosts> {
    check_n(f.n)?;
    let n = f.n;
    let toffolis = 3 * n + 2;
    Ok(AdderCosts {
        depth: toffolis * f.d_t + 2 * n - 3,
        t_depth: toffolis * f.t_d,
        qubits: 2 * n + 3 + f.a,
        cnot: 2 * (2 * n - 3) + f.c * toffolis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MultLowering {
    Uniform(FormulaInputs),
    /// Head Toffolis on the zero-ancilla depth-10 circuit, the rest on the
    /// four-ancilla T-depth 1 circuit.
    Hybrid { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierCosts {
    pub depth: usize,
    pub t_depth: usize,
    pub qubits: usize,
}

pub fn multiplier_formulas(lowering: MultLowering) -> Result<MultiplierCosts> {
    match lowering {
        MultLowering::Uniform(f) => {
            check_n(f.n)?;
            let n = f.n;
            Ok(MultiplierCosts {
                depth: (3 * n * n - 2) * f.d_t + (n - 1) * (2 * n - 3),
                t_depth: (3 * n * n - n - 2) * f.t_d,
                qubits: 4 * n + 1 + f.a,
            })
        }
        MultLowering::Hybrid { n } => {
            check_n(n)?;
            let rest = 3 * n * n - n - 2;
            Ok(MultiplierCosts {
                depth: 10 + 7 * rest + (2 * n - 3) * (n - 1),
                t_depth: 3 + rest,
                qubits: 4 * n + 5,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleReplacementCosts {
    pub t_count: usize,
    pub cnot_rt3: usize,
    pub cnot_rt4: usize,
    pub cnot_4at1: usize,
    pub cnot_0at3: usize,
    pub rt3_vs_4at1: f64,
    pub rt4_vs_4at1: f64,
    pub rt3_vs_0at3: f64,
}

/// Controlled adder with every Toffoli lowered through a relative-phase
/// Toffoli onto a scratch wire.
pub fn rtx_single_replacement_formulas(n: usize) -> Result<SingleReplacementCosts> {
    check_n(n)?;
    let cnot_rt3 = 25 * n + 8;
    let cnot_rt4 = 31 * n + 12;
    let cnot_4at1 = 52 * n + 26;
    let cnot_0at3 = 25 * n + 8;
    Ok(SingleReplacementCosts {
        t_count: 12 * n + 8,
        cnot_rt3,
        cnot_rt4,
        cnot_4at1,
        cnot_0at3,
        rt3_vs_4at1: cnot_rt3 as f64 / cnot_4at1 as f64,
        rt4_vs_4at1: cnot_rt4 as f64 / cnot_4at1 as f64,
        rt3_vs_0at3: cnot_rt3 as f64 / cnot_0at3 as f64,
    })
}
