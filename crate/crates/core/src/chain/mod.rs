//! Rack, degenerate and quandle chain complexes and their homology.

mod abelian;
mod basis;
mod complex;
pub mod faces;
mod modp;
mod smith;
mod sparse;

pub use abelian::{check_torsion_annihilated, AbelianGroup};
pub use basis::{is_degenerate, nondegenerate_count, rack_count, ChainBasis, Theory};
pub use complex::{rank_prediction, splitting_check, ChainComplex, ChainError, Coefficients, DEFAULT_BASIS_BUDGET};
pub use modp::rank_mod_p;
pub use smith::{normalize_diagonal, rank, smith_form, smith_form_owned, smith_form_with_clearing, smith_invariants, SmithForm};
pub use sparse::SparseIntMatrix;
