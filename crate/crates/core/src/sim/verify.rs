use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::simulate::{simulate_state, width_cap, SimOptions};
use super::state::StateVector;
use crate::arith::{ArithSpec, RegisterMap};
use crate::circuit::{Circuit, ClassicalBit};
use crate::error::{Error, Result};
use crate::toffoli::{expand, ExpansionPolicy};

pub const FIDELITY_TOL: f64 = 1e-9;
const PROBABILITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Packed operands: control lowest when present, then `a`, then `b`.
    pub input: u64,
    pub outcomes: Vec<(ClassicalBit, bool)>,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArithVerdict {
    pub passed: bool,
    pub width: usize,
    pub inputs_checked: usize,
    /// Outcome histories covered, counting merged branches individually.
    pub histories_checked: usize,
    pub failures: Vec<Failure>,
}

/// Expands the arithmetic circuit under `policy` and checks every operand
/// assignment and every measurement branch against the classical result.
pub fn verify_arithmetic(spec: &ArithSpec, policy: &ExpansionPolicy) -> Result<ArithVerdict> {
    let (circuit, regs) = spec.build()?;
    let expanded = expand(&circuit, policy)?;
    verify_circuit(&expanded, &regs, spec)
}

struct InputCheck {
    input: u64,
    histories: usize,
    failures: Vec<Failure>,
    phases: Vec<(Vec<(ClassicalBit, bool)>, Complex64)>,
}

/// Checks an already lowered circuit laid out as `regs`: every operand
/// assignment and measurement branch must reach the classical result, all
/// with one common phase.
pub fn verify_circuit(circuit: &Circuit, regs: &RegisterMap, spec: &ArithSpec) -> Result<ArithVerdict> {
    let width = circuit.qubit_span();
    let cap = width_cap();
    if width > cap {
        return Err(Error::Capacity { width, cap });
    }
    let inputs = regs.inputs();
    let results: Vec<Result<InputCheck>> = (0..1u64 << spec.input_bits())
        .into_par_iter()
        .map(|input| {
            let mut start = 0usize;
            for (k, q) in inputs.iter().enumerate() {
                start |= ((input >> k & 1) as usize) << q.0;
            }
            let mut expected = start;
            let value = spec.expected(input);
            for (k, q) in regs.out.iter().enumerate() {
                expected &= !(1 << q.0);
                expected |= ((value >> k & 1) as usize) << q.0;
            }
            let branches = simulate_state(
                circuit,
                StateVector::basis(width, start),
                SimOptions { merge_settled: true },
            )?;
            let mut failures = Vec::new();
            let mut phases = Vec::new();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            let weighted: f64 = branches
                .iter()
                .map(|b| b.probability * b.state.amplitude(expected).norm_sqr())
                .sum();
            for b in &branches {
                let amp = b.state.amplitude(expected);
                let deviation = 1.0 - amp.norm_sqr();
                if deviation <= FIDELITY_TOL {
                    phases.push((b.outcomes.clone(), amp / amp.norm()));
                } else {
                    failures.push(Failure {
                        input,
                        outcomes: b.outcomes.clone(),
                        deviation,
                    });
                }
            }
            if (total - 1.0).abs() > PROBABILITY_TOL || 1.0 - weighted > FIDELITY_TOL {
                failures.push(Failure {
                    input,
                    outcomes: Vec::new(),
                    deviation: (1.0 - weighted).max((total - 1.0).abs()),
                });
            }
            Ok(InputCheck {
                input,
                histories: branches.iter().map(|b| b.histories).sum(),
                failures,
                phases,
            })
        })
        .collect();

    let mut verdict = ArithVerdict {
        passed: true,
        width,
        inputs_checked: 0,
        histories_checked: 0,
        failures: Vec::new(),
    };
    // Basis inputs alone cannot see a phase that depends on the input; every
    // branch must carry the same phase for superposed inputs to come out right.
    let mut reference = None;
    for r in results {
        let check = r?;
        verdict.inputs_checked += 1;
        verdict.histories_checked += check.histories;
        verdict.failures.extend(check.failures);
        for (outcomes, phase) in check.phases {
            let r = *reference.get_or_insert(phase);
            let deviation = 1.0 - (phase * r.conj()).re;
            if deviation > FIDELITY_TOL {
                verdict.failures.push(Failure {
                    input: check.input,
                    outcomes,
                    deviation,
                });
            }
        }
    }
    verdict.passed = verdict.failures.is_empty();
    Ok(verdict)
}
