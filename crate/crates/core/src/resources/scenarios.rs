use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{build_cla_adder, build_ctrl_adder, build_takahashi_adder, ClaVariant};
use crate::circuit::{report_with, ResourceReport, TMode};
use crate::error::{Error, Result};
use crate::toffoli::{expand, DecompKind, ExpansionPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kq {
    pub kq: usize,
    pub kq_t: usize,
}

/// Depth times width, and T-depth times width, read off a report.
pub fn kq(r: &ResourceReport) -> Kq {
    Kq {
        kq: r.kq,
        kq_t: r.kq_t,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioId {
    RcCtrlAdder,
    RcTakahashi,
    ClRtx,
    ClFourAncilla,
    ClAllSequential,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::RcCtrlAdder,
        ScenarioId::RcTakahashi,
        ScenarioId::ClRtx,
        ScenarioId::ClFourAncilla,
        ScenarioId::ClAllSequential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::RcCtrlAdder => "rc-ctrl-adder-4at1",
            ScenarioId::RcTakahashi => "rc-takahashi-4at1",
            ScenarioId::ClRtx => "cl-rtx",
            ScenarioId::ClFourAncilla => "cl-4at1",
            ScenarioId::ClAllSequential => "cl-4at1-sequential",
        }
    }

    pub fn is_ripple(self) -> bool {
        matches!(self, ScenarioId::RcCtrlAdder | ScenarioId::RcTakahashi)
    }

    /// Builds, lowers and measures the scenario's adder at width `n`.
    pub fn evaluate(self, n: usize) -> Result<ResourceReport> {
        let four = ExpansionPolicy::new(DecompKind::A4t1);
        let (circuit, policy, mode) = match self {
            ScenarioId::RcCtrlAdder => (build_ctrl_adder(n)?.0, four, TMode::Parallel),
            ScenarioId::RcTakahashi => (build_takahashi_adder(n)?.0, four, TMode::Parallel),
            ScenarioId::ClRtx => (
                build_cla_adder(n)?.0,
                ClaVariant::OonishiRtx.policy(),
                TMode::Parallel,
            ),
            ScenarioId::ClFourAncilla => (
                build_cla_adder(n)?.0,
                ClaVariant::ExactFourAncilla.policy(),
                TMode::Parallel,
            ),
            ScenarioId::ClAllSequential => (
                build_cla_adder(n)?.0,
                ClaVariant::AllSequentialFourAncilla.policy(),
                TMode::Sequential,
            ),
        };
        Ok(report_with(&expand(&circuit, &policy)?, mode))
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("scenario '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub n: usize,
    pub scenario: ScenarioId,
    pub depth: usize,
    pub width: usize,
    pub kq: usize,
}

/// Where a carry-lookahead curve drops below a ripple-carry curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub ripple: ScenarioId,
    pub lookahead: ScenarioId,
    /// Linearly interpolated operand width.
    pub n: f64,
    /// Total qubits of each circuit at that point.
    pub ripple_qubits: f64,
    pub lookahead_qubits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub rows: Vec<ScenarioRow>,
    pub crossovers: Vec<Crossover>,
}

impl Comparison {
    pub fn row(&self, n: usize, scenario: ScenarioId) -> Option<&ScenarioRow> {
        self.rows.iter().find(|r| r.n == n && r.scenario == scenario)
    }

    pub fn crossover(&self, ripple: ScenarioId, lookahead: ScenarioId) -> Option<&Crossover> {
        self.crossovers
            .iter()
            .find(|c| c.ripple == ripple && c.lookahead == lookahead)
    }
}

/// KQ of every scenario for each `n`, with every ripple/lookahead crossover
/// found in the sampled range.
pub fn compare_scenarios(ns: &[usize], scenarios: &[ScenarioId]) -> Result<Comparison> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::with_capacity(ns.len() * scenarios.len());
    for &n in &ns {
        for &s in scenarios {
            let r = s.evaluate(n)?;
            rows.push(ScenarioRow {
                n,
                scenario: s,
                depth: r.depth,
                width: r.width,
                kq: r.kq,
            });
        }
    }
    let mut cmp = Comparison {
        rows,
        crossovers: Vec::new(),
    };
    for &rc in scenarios.iter().filter(|s| s.is_ripple()) {
        for &cl in scenarios.iter().filter(|s| !s.is_ripple()) {
            if let Some(x) = find_crossover(&cmp, &ns, rc, cl) {
                cmp.crossovers.push(x);
            }
        }
    }
    Ok(cmp)
}

fn find_crossover(cmp: &Comparison, ns: &[usize], rc: ScenarioId, cl: ScenarioId) -> Option<Crossover> {
    let diff = |n: usize| {
        let (r, l) = (cmp.row(n, rc).unwrap(), cmp.row(n, cl).unwrap());
        l.kq as f64 - r.kq as f64
    };
    for w in ns.windows(2) {
        let (n0, n1) = (w[0], w[1]);
        let (d0, d1) = (diff(n0), diff(n1));
        if d0 > 0.0 && d1 <= 0.0 {
            let frac = d0 / (d0 - d1);
            let lerp = |s: ScenarioId| {
                let (a, b) = (cmp.row(n0, s).unwrap().width, cmp.row(n1, s).unwrap().width);
                a as f64 + frac * (b as f64 - a as f64)
            };
            return Some(Crossover {
                ripple: rc,
                lookahead: cl,
                n: n0 as f64 + frac * (n1 - n0) as f64,
                ripple_qubits: lerp(rc),
                lookahead_qubits: lerp(cl),
            });
        }
    }
    None
}
