use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::simulate::{simulate_state, BranchState, SimOptions};
use super::state::StateVector;
use crate::circuit::{Circuit, QubitId};
use crate::error::{Error, Result};

/// Default tolerance on amplitude deviation for `equal`.
pub const EQUIV_TOL: f64 = 1e-9;

/// Basis states whose listed wires are all |0⟩.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Subspace {
    pub zero_wires: Vec<QubitId>,
}

impl Subspace {
    pub fn zeros(wires: &[usize]) -> Self {
        Subspace {
            zero_wires: wires.iter().map(|&q| QubitId(q)).collect(),
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.zero_wires.iter().all(|q| index >> q.0 & 1 == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EquivMode {
    Exact,
    GlobalPhase,
    /// Inputs restricted to the subspace; each input may pick up its own phase.
    RelativePhaseOnSubspace(Subspace),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equivalence {
    pub equal: bool,
    pub max_deviation: f64,
}

/// Compares two circuits on every basis input with their declared ancillae
/// in |0⟩. Wires beyond the narrower circuit must be ancillae of the wider
/// one. Circuits with measurements are compared branch by branch: matching
/// outcome records, or every branch against a deterministic counterpart.
pub fn assert_equiv(a: &Circuit, b: &Circuit, mode: &EquivMode) -> Result<Equivalence> {
    let (wa, wb) = (a.qubit_span(), b.qubit_span());
    let width = wa.max(wb);
    let (narrow, wide) = if wa < wb { (a, b) } else { (b, a) };
    let extra_ok = (narrow.qubit_span()..width).all(|q| wide.is_ancilla(QubitId(q)));
    if !extra_ok {
        return Err(Error::Shape(wa, wb));
    }
    let ancillae: Vec<QubitId> = a.ancillae().union(b.ancillae()).copied().collect();
    let subspace = match mode {
        EquivMode::RelativePhaseOnSubspace(s) => Some(s),
        _ => None,
    };

    let mut worst: f64 = 0.0;
    let mut global: Option<Complex64> = None;
    for input in 0..1usize << width {
        if ancillae.iter().any(|q| input >> q.0 & 1 == 1) {
            continue;
        }
        if subspace.is_some_and(|s| !s.contains(input)) {
            continue;
        }
        let run = |c: &Circuit| {
            simulate_state(c, StateVector::basis(width, input), SimOptions::default())
        };
        let (ra, rb) = (run(a)?, run(b)?);
        let Some(pairs) = pair_branches(&ra, &rb) else {
            return Ok(Equivalence {
                equal: false,
                max_deviation: f64::INFINITY,
            });
        };
        for (x, y) in pairs {
            let phase = match mode {
                EquivMode::Exact => Complex64::new(1.0, 0.0),
                EquivMode::GlobalPhase => *global.get_or_insert_with(|| unit(y.state.inner(&x.state))),
                EquivMode::RelativePhaseOnSubspace(_) => unit(y.state.inner(&x.state)),
            };
            worst = worst.max(x.state.distance(&y.state, phase));
        }
    }
    Ok(Equivalence {
        equal: worst < EQUIV_TOL,
        max_deviation: worst,
    })
}

fn unit(z: Complex64) -> Complex64 {
    if z.norm() < 1e-12 {
        Complex64::new(1.0, 0.0)
    } else {
        z / z.norm()
    }
}

fn deterministic(b: &[BranchState]) -> bool {
    b.len() == 1 && b[0].outcomes.is_empty()
}

fn pair_branches<'a>(
    a: &'a [BranchState],
    b: &'a [BranchState],
) -> Option<Vec<(&'a BranchState, &'a BranchState)>> {
    if deterministic(b) {
        return Some(a.iter().map(|x| (x, &b[0])).collect());
    }
    if deterministic(a) {
        return Some(b.iter().map(|y| (&a[0], y)).collect());
    }
    if a.len() != b.len() {
        return None;
    }
    a.iter()
        .map(|x| {
            let y = b.iter().find(|y| y.outcomes == x.outcomes)?;
            ((x.probability - y.probability).abs() < EQUIV_TOL).then_some((x, y))
        })
        .collect()
}
