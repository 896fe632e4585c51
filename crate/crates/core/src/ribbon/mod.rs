//! The chi = -1 sector of the decorated ribbon-graph complex and the action
//! of graphs on Hochschild chains.
//!
//! The graph universe is fixed: the three-valent input tree (the `S_{0,3}`
//! vertex), the two genus-one one-input graphs (theta with an input leg and
//! the one-vertex wedge of two interleaved loops), the two-input Mukai graph,
//! the one-input two-output coproduct tree, and the two bookkeeping cells
//! appearing in the boundary tables of the master-equation solve.

mod act;
mod functional;
mod diff;
mod graph;
mod weyl;

pub use act::{act, act_collect, collect_start, collect_take, mukai_pairing, set_sign_rule, ActValue};
pub use functional::{calibrate, GraphFunctional};
pub use diff::{differential, sew, solve_qme_chi_minus1, CombChain};
pub use graph::{GraphName, RibbonGraph};
pub use weyl::{normal_order, WeylFactor, WeylWord};
