//! Polishchuk's cyclic A-infinity algebra of the elliptic curve.
//!
//! The algebra is the Ext algebra of `O + L` for a degree-one line bundle `L`,
//! with six basis morphisms spanning degrees zero and one. Higher products are
//! generated from a single master formula by cyclic symmetry; their structure
//! constants are almost-holomorphic modular forms `g_{m,n}` tabulated in
//! [`GTable`]. The holomorphic gauge is obtained by applying the constant-term
//! map `phi` to the table.

pub(crate) mod basis;
mod gtable;
mod morphism;
mod relations;
mod serial;
mod solve;
mod structure;

pub use basis::{
    enumerate_cyclic_words, enumerate_paths, is_cyclic_word, is_path, pairing, pairing_dual,
    word_parity, word_sdeg, word_weight2, Gen, Ob, Word, GENERATORS,
};
pub use gtable::{GKey, GTable, Provenance};
pub use morphism::{GaugeMorphism, MorphismReport};
pub use relations::{
    ainf_residual_terms, check_relations, psi3_cochain, psi3_defect, Cochain, DefectReport,
    QuadTerm, RelationMode, RelationReport,
};
pub use serial::structure_to_json;
pub use solve::{
    apply_freedom, g_table, g_table_with_freedom, solve_missing_constants,
    solve_missing_constants_with_freedom, TableFreedom,
};
pub use structure::{build_structure, AInfStructure, Gauge, MuEntry};
