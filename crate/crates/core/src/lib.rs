//! Symbolic kernel and verification pipelines for quantum Painleve Lax pairs.

pub mod catalog;
pub mod laxmat;
pub mod ncexpr;
pub mod verify;
