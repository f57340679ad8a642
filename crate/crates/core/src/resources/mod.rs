//! Closed-form costs, KQ metrics, adder scenario comparison and the
//! CNOT-versus-measurement trade-off.

mod formulas;
mod scenarios;
mod tradeoff;

pub use formulas::{
    adder_formulas, multiplier_formulas, rtx_single_replacement_formulas, AdderCosts,
    FormulaInputs, MultLowering, MultiplierCosts, SingleReplacementCosts,
};
pub use scenarios::{compare_scenarios, kq, Comparison, Crossover, Kq, ScenarioId, ScenarioRow};
pub use tradeoff::{cnot_measure_tradeoff, Tradeoff, TradeoffParams};
