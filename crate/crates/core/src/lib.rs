//! Exact verification engine for algebraic solutions of Painlevé VI families.

pub mod exactalg;
pub mod picardfuchs;
pub mod pvi;
pub mod ramification;
pub mod symmetry;
pub mod tables;
