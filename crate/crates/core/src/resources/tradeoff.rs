use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffParams {
    pub meas_error: f64,
    pub cnot_error: f64,
    /// Physical CNOTs per logical CNOT.
    pub cnot_overhead: usize,
    pub cnots_saved_per_pair: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tradeoff {
    pub physical_cnots_replaced: usize,
    /// First-order comparison: one measurement against the summed error of
    /// the physical CNOTs it removes.
    pub beneficial: bool,
}

pub fn cnot_measure_tradeoff(p: &TradeoffParams) -> Result<Tradeoff> {
    for (name, v) in [("meas_error", p.meas_error), ("cnot_error", p.cnot_error)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParam(format!("{name} = {v} is not a probability")));
        }
    }
    if p.cnot_overhead < 1 {
        return Err(Error::InvalidParam("cnot overhead must be at least 1".into()));
    }
    let replaced = p.cnots_saved_per_pair * p.cnot_overhead;
    Ok(Tradeoff {
        physical_cnots_replaced: replaced,
        beneficial: p.meas_error < replaced as f64 * p.cnot_error,
    })
}
