//! Graded sector enumeration, exact sparse linear systems and the lifting
//! solver.

mod elim;
pub(crate) mod lift;
mod sector;
mod system;

pub use elim::{bareiss_solve, rational_gauss, GaussOutcome};
pub use lift::{
    alpha_prime, lift_rhs, solve_b_equation, solve_lift, solve_on_support, sparsify, verify_lift,
    xi_chain, AnsatzSpec, LiftMode,
};
pub use sector::{enumerate_sector, SectorBasis, WeightParity};
pub use system::{assemble, solve_system, ChainOperator, SparseSystem};
