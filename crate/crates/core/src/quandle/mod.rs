//! Finite racks and quandles: construction, validation and structural
//! classification.

mod classify;
mod constructors;
pub mod corpus;
mod group;
mod iso;
mod table;

pub use classify::{
    aq_profile, is_connected, is_quasigroup, orbits, stabilizer_subquandle_check, AnnihilationBound, AqProfile,
    ClassifyError, OrbitPartition, StabilizerCheck,
};
pub use constructors::{
    make_alexander, make_conjugation_class, make_dihedral, make_takasaki, make_trivial, ConstructError,
};
pub use group::{inner_group, inner_group_with_cap, GroupError, PermutationGroup, DEFAULT_GROUP_CAP};
pub use iso::{are_isomorphic, find_isomorphism, IsoError, DEFAULT_SEARCH_BUDGET};
pub use table::{Kind, QuandleTable, TableError};
