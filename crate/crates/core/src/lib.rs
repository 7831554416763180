//! Finite racks and quandles, their rack, degenerate and quandle chain
//! complexes, integral homology through sparse Smith normal form, and exact
//! verification of the chain homotopies that bound torsion in m-almost
//! quasigroup quandles.

pub mod quandle;
pub mod chain;
pub mod extension;
pub mod homotopy;
pub mod io;
pub mod cli;
