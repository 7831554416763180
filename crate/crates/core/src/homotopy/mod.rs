//! Chain maps and chain homotopies on the rack complex of an m-almost
//! quasigroup quandle, and tuple-by-tuple verification of the identities
//! relating them.

mod chain;
mod maps;
mod verify;

pub use chain::FormalChain;
pub use maps::{apply_map, apply_to_chain, target_degree, Family, HomotopyError, MapId};
pub use verify::{
    diagnose_cancellation, homotopy_left_side, verify_all_identities, verify_all_identities_with_budget,
    verify_annihilation_pipeline, verify_annihilation_pipeline_with_budget, verify_identity,
    verify_identity_with_budget, AnnihilationReport, DegreeCheck, IdentityReport, Witness,
};
