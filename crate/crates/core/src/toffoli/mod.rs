//! Toffoli lowerings into Clifford+T, their cost table, and the
//! measurement-based uncomputation used to retire relative-phase ancillae.

mod expand;
mod fragments;
mod odb;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circuit::{report, RelPhaseTag};
use crate::error::Error;

pub use expand::{expand, ExpansionPolicy, LoneUncompute};
pub use fragments::{fragment, fragment_with, uncompute_for, uncompute_fragment};
pub use odb::{find_odb_pairs, odb_pair_replace, single_odb_replacement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DecompKind {
    St,
    A0t3,
    A4t1,
    Rt3,
    Rt4,
    And,
    Barenco,
}

impl DecompKind {
    pub const ALL: [DecompKind; 7] = [
        DecompKind::St,
        DecompKind::A0t3,
        DecompKind::A4t1,
        DecompKind::Rt3,
        DecompKind::Rt4,
        DecompKind::And,
        DecompKind::Barenco,
    ];

    /// The six kinds with a published cost row.
    pub const TABULATED: [DecompKind; 6] = [
        DecompKind::A4t1,
        DecompKind::A0t3,
        DecompKind::Rt3,
        DecompKind::Rt4,
        DecompKind::St,
        DecompKind::And,
    ];

    pub fn is_exact(self) -> bool {
        matches!(self, DecompKind::St | DecompKind::A0t3 | DecompKind::A4t1)
    }

    pub fn is_relative_phase(self) -> bool {
        !self.is_exact()
    }

    pub fn ancillae(self) -> usize {
        match self {
            DecompKind::A4t1 => 4,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DecompKind::St => "st",
            DecompKind::A0t3 => "0at3",
            DecompKind::A4t1 => "4at1",
            DecompKind::Rt3 => "rt3",
            DecompKind::Rt4 => "rt4",
            DecompKind::And => "and",
            DecompKind::Barenco => "barenco",
        }
    }

    pub fn tag(self) -> Option<RelPhaseTag> {
        match self {
            DecompKind::Rt3 => Some(RelPhaseTag::Rt3),
            DecompKind::Rt4 => Some(RelPhaseTag::Rt4),
            DecompKind::And => Some(RelPhaseTag::And),
            DecompKind::Barenco => Some(RelPhaseTag::Barenco),
            _ => None,
        }
    }

    pub fn from_tag(tag: RelPhaseTag) -> Self {
        match tag {
            RelPhaseTag::Rt3 => DecompKind::Rt3,
            RelPhaseTag::Rt4 => DecompKind::Rt4,
            RelPhaseTag::And => DecompKind::And,
            RelPhaseTag::Barenco => DecompKind::Barenco,
        }
    }
}

impl fmt::Display for DecompKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_uppercase())
    }
}

impl FromStr for DecompKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecompKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(format!("decomposition '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostRow {
    pub depth: usize,
    pub cnot_c: usize,
    pub t_d: usize,
    pub t_c: usize,
    pub ancillae: usize,
    /// Depth of the older, unparallelised layout; only the zero-ancilla T-depth 3 circuit has one.
    pub legacy_depth: Option<usize>,
    /// Set when the counts do not describe a Clifford+T circuit.
    pub non_clifford_t: bool,
}

impl CostRow {
    const fn new(depth: usize, cnot_c: usize, t_d: usize, t_c: usize, ancillae: usize) -> Self {
        CostRow {
            depth,
            cnot_c,
            t_d,
            t_c,
            ancillae,
            legacy_depth: None,
            non_clifford_t: false,
        }
    }

    /// Depth to feed into closed-form formulas.
    pub fn formula_depth(&self) -> usize {
        self.legacy_depth.unwrap_or(self.depth)
    }
}

/// Published costs of the tabulated lowerings.
pub fn published_row(kind: DecompKind) -> Option<CostRow> {
    Some(match kind {
        DecompKind::A4t1 => CostRow::new(7, 16, 1, 7, 4),
        DecompKind::A0t3 => CostRow {
            legacy_depth: Some(10),
            ..CostRow::new(9, 7, 3, 7, 0)
        },
        DecompKind::Rt3 => CostRow::new(9, 3, 4, 4, 0),
        DecompKind::Rt4 => CostRow::new(10, 4, 4, 4, 0),
        DecompKind::St => CostRow::new(13, 6, 6, 7, 0),
        DecompKind::And => CostRow::new(9, 6, 2, 4, 0),
        DecompKind::Barenco => return None,
    })
}

/// Cost row measured from the built fragment.
pub fn measured_row(kind: DecompKind) -> CostRow {
    let r = report(&fragment(kind));
    CostRow {
        depth: r.depth,
        cnot_c: r.cnot_count,
        t_d: r.t_depth_parallel,
        t_c: r.t_count,
        ancillae: r.width - 3,
        legacy_depth: (kind == DecompKind::A0t3)
            .then(|| report(&fragment_with(kind, true)).depth),
        non_clifford_t: kind == DecompKind::Barenco,
    }
}

/// All seven rows: published values where they exist, the built fragment's
/// measured costs for Barenco.
pub fn cost_table() -> Vec<(DecompKind, CostRow)> {
    DecompKind::ALL
        .into_iter()
        .map(|k| (k, published_row(k).unwrap_or_else(|| measured_row(k))))
        .collect()
}
