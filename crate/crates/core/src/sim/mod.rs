//! Branching state-vector simulation and equivalence checks.

mod equiv;
mod simulate;
mod state;
mod verify;

pub use equiv::{assert_equiv, EquivMode, Equivalence, Subspace, EQUIV_TOL};
pub use simulate::{
    simulate, simulate_state, width_cap, BranchState, SimOptions, DEFAULT_WIDTH_CAP,
};
pub use state::StateVector;
pub use verify::{verify_arithmetic, verify_circuit, ArithVerdict, Failure, FIDELITY_TOL};
