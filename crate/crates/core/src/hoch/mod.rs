//! Hochschild chains of the algebra and the operators acting on them.
//!
//! Chains are finite combinations of cyclically composable tensor words with
//! form-fraction coefficients, in the normalized complex (words with a unit
//! in a non-marked slot are degenerate and dropped). The homological degree
//! of a word is `-1 - sum of shifted degrees`, so `xi` sits in degree -1 and
//! the lifting chains in degree +1.

pub(crate) mod chain;
mod homology;
pub(crate) mod ops;

pub use crate::ainf::Cochain;
pub use chain::{
    chain_from_json, chain_to_json, is_degenerate, uchain_to_json, word_hdegree, Chain, UChain,
};
pub use homology::{
    flatness_defect, homology_reduce, omega_representative, reduce_coordinate, HomologyClass,
};
pub use ops::{connes_b, ggm, hochschild_b, hochschild_b_deformed, insert_cochain, Connection, InsertFlavor};

#[doc(hidden)]
pub fn hochschild_b_twisted(
    s: &crate::ainf::AInfStructure,
    x: &Chain,
    slot0_unshifted: bool,
    wrap_flip: bool,
    global_flip: bool,
) -> crate::Result<Chain> {
    ops::b_with_twist(
        s,
        x,
        None,
        ops::BTwist { slot0_unshifted, wrap_flip, global_flip },
    )
}
