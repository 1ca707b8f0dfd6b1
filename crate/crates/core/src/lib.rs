//! Exact polynomial families and verification suite for the eight-vertex
//! model at the special coupling point eta = pi/3 and the associated XYZ
//! spin chain of odd length.
//!
//! Everything algebraic is computed in exact rational arithmetic; the
//! `numeric` module provides the floating-point theta-function bridge back
//! to the lattice model.

pub mod bipoly;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod golden;
pub mod interp;
pub mod jsonio;
pub mod linalg;
pub mod numeric;
pub mod qpoly;
pub mod quadext;
pub mod rat;
pub mod ratfunc;
pub mod report;
pub mod sos;
pub mod suite;
pub mod tau;
pub mod theta;
pub mod unipoly;
pub mod zfactor;

pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use quadext::QuadExt;
pub use rat::BigRat;
pub use ratfunc::RatFunc;
pub use unipoly::UniPoly;
