//! Reversible arithmetic over Toffoli, CNOT and X gates.

mod cla;
mod ctrl_adder;
mod multiplier;
mod takahashi;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, QubitId};
use crate::error::{Error, Result};
use crate::toffoli::{DecompKind, ExpansionPolicy};

pub use cla::build_cla_adder;
pub use ctrl_adder::build_ctrl_adder;
pub use multiplier::{build_multiplier, hybrid_policy, ADDER_REGION, HEAD_REGION};
pub use takahashi::build_takahashi_adder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    CtrlRipple,
    Takahashi,
    CarryLookahead,
    Multiplier,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::CtrlRipple,
        Family::Takahashi,
        Family::CarryLookahead,
        Family::Multiplier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CtrlRipple => "ctrl-adder",
            Family::Takahashi => "takahashi",
            Family::CarryLookahead => "cla",
            Family::Multiplier => "multiplier",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("family '{s}'")))
    }
}

/// How a carry-lookahead adder is lowered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaVariant {
    /// Relative-phase Toffolis with measurement-based uncomputation.
    OonishiRtx,
    ExactFourAncilla,
    /// Four-ancilla lowering with T gates forced into separate layers.
    AllSequentialFourAncilla,
}

impl ClaVariant {
    pub const ALL: [ClaVariant; 3] = [
        ClaVariant::OonishiRtx,
        ClaVariant::ExactFourAncilla,
        ClaVariant::AllSequentialFourAncilla,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaVariant::OonishiRtx => "rtx",
            ClaVariant::ExactFourAncilla => "4at1",
            ClaVariant::AllSequentialFourAncilla => "4at1-seq",
        }
    }

    pub fn policy(self) -> ExpansionPolicy {
        match self {
            ClaVariant::OonishiRtx => ExpansionPolicy::odb(DecompKind::Rt3),
            ClaVariant::ExactFourAncilla | ClaVariant::AllSequentialFourAncilla => {
                ExpansionPolicy::new(DecompKind::A4t1)
            }
        }
    }
}

impl FromStr for ClaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("variant '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithSpec {
    pub n: usize,
    pub family: Family,
    pub variant: Option<ClaVariant>,
}

impl ArithSpec {
    pub fn new(family: Family, n: usize) -> Self {
        ArithSpec {
            n,
            family,
            variant: None,
        }
    }

    pub fn cla(n: usize, variant: ClaVariant) -> Self {
        ArithSpec {
            n,
            family: Family::CarryLookahead,
            variant: Some(variant),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::UnsupportedWidth(self.n));
        }
        if self.variant.is_some() && self.family != Family::CarryLookahead {
            return Err(Error::InvalidParam(format!(
                "variants only apply to the carry-lookahead adder, not {}",
                self.family
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<(Circuit, RegisterMap)> {
        self.validate()?;
        match self.family {
            Family::CtrlRipple => build_ctrl_adder(self.n),
            Family::Takahashi => build_takahashi_adder(self.n),
            Family::CarryLookahead => build_cla_adder(self.n),
            Family::Multiplier => build_multiplier(self.n),
        }
    }

    /// Number of input bits: the control (if any) followed by both operands.
    pub fn input_bits(&self) -> usize {
        match self.family {
            Family::CtrlRipple => 2 * self.n + 1,
            _ => 2 * self.n,
        }
    }

    /// Classical value of the output register for a packed input
    /// (`ctrl` lowest when present, then `a`, then `b`).
    pub fn expected(&self, input: u64) -> u64 {
        let n = self.n;
        let mask = (1u64 << n) - 1;
        match self.family {
            Family::CtrlRipple => {
                let ctrl = input & 1;
                let a = (input >> 1) & mask;
                let b = (input >> (n + 1)) & mask;
                b + ctrl * a
            }
            Family::Takahashi | Family::CarryLookahead => {
                let a = input & mask;
                let b = (input >> n) & mask;
                a + b
            }
            Family::Multiplier => {
                let a = input & mask;
                let b = (input >> n) & mask;
                a * b
            }
        }
    }
}

/// Wire roles of a built arithmetic circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RegisterMap {
    pub control: Option<QubitId>,
    pub a: Vec<QubitId>,
    pub b: Vec<QubitId>,
    /// Result register, least significant bit first.
    pub out: Vec<QubitId>,
    /// Workspace that starts and ends in |0⟩.
    pub ancilla: Vec<QubitId>,
}

impl RegisterMap {
    /// Input wires in packing order: control, `a`, then `b`.
    pub fn inputs(&self) -> Vec<QubitId> {
        self.control
            .iter()
            .chain(self.a.iter())
            .chain(self.b.iter())
            .copied()
            .collect()
    }
}

pub(crate) fn qubits(range: std::ops::Range<usize>) -> Vec<QubitId> {
    range.map(QubitId).collect()
}

#[cfg(test)]
pub(crate) mod classical {
    //! Bit-level evaluation of X/CNOT/Toffoli circuits, independent of the
    //! state-vector simulator.

    use crate::circuit::{Circuit, GateKind};

    pub fn run(circuit: &Circuit, bits: &mut [bool]) {
        for op in circuit.ops() {
            let q: Vec<usize> = op.qubits.iter().map(|q| q.0).collect();
            match op.kind {
                GateKind::X => bits[q[0]] ^= true,
                GateKind::Cnot => bits[q[1]] ^= bits[q[0]],
                GateKind::Fanout(_) => {
                    for &t in &q[1..] {
                        bits[t] ^= bits[q[0]];
                    }
                }
                GateKind::Toffoli => bits[q[2]] ^= bits[q[0]] & bits[q[1]],
                ref k => panic!("not a classical gate: {k:?}"),
            }
        }
    }
}
