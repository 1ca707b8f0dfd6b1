//! Error types shared across the crate.
//!
//! Failed exact divisions and identity mismatches are first-class results
//! here: downstream they are the signal that a conjectured polynomiality or
//! identity broke, so they carry the obstruction rather than panicking.

use std::fmt;

use crate::bipoly::BiPoly;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug)]
pub enum Error {
    /// Exact division left a remainder; carries it for reporting.
    NotDivisible {
        remainder: UniPoly,
    },
    NotDivisibleBi {
        remainder: BiPoly,
    },
    /// Möbius substitution with vanishing determinant.
    DegenerateMap,
    DuplicateAbscissa {
        at: String,
    },
    /// The recurrence prefactor vanished and the next element cannot be solved for.
    ZeroPrefactor {
        n: i64,
    },
    /// A recurrence step produced a non-polynomial element.
    PolynomialityViolation {
        family: String,
        index: i64,
        remainder: String,
    },
    /// The descending PDE recursion did not truncate to a polynomial.
    TruncationFailure {
        n: usize,
        detail: String,
    },
    NullspaceDimension {
        expected: usize,
        got: usize,
    },
    IdentityFailure {
        check: String,
        residual: String,
    },
    SplitFailure {
        k: i64,
        detail: String,
    },
    NonIntegerCoefficients {
        what: String,
    },
    ParityViolation {
        what: String,
    },
    ValueMismatch {
        what: String,
        lhs: String,
        rhs: String,
    },
    BadLength {
        n: usize,
    },
    KernelDimension {
        at: String,
        dim: usize,
    },
    InterpolationUnstable {
        detail: String,
    },
    NomeOutOfRange,
    ConsistencyFailure {
        check: String,
        residual: f64,
    },
    ToleranceExceeded {
        check: String,
        residual: f64,
        tol: f64,
    },
    SpectrumMiss {
        check: String,
        distance: f64,
    },
    NoSolution {
        detail: String,
    },
    MismatchBeyondScale {
        detail: String,
    },
    ConfigError {
        detail: String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotDivisible { remainder } => {
                write!(f, "not exactly divisible, remainder {}", remainder)
            }
            Error::NotDivisibleBi { remainder } => {
                write!(f, "not exactly divisible, remainder {}", remainder)
            }
            Error::DegenerateMap => write!(f, "degenerate Möbius map (zero determinant)"),
            Error::DuplicateAbscissa { at } => write!(f, "duplicate abscissa {}", at),
            Error::ZeroPrefactor { n } => write!(f, "zero recurrence prefactor at n = {}", n),
            Error::PolynomialityViolation {
                family,
                index,
                remainder,
            } => write!(
                f,
                "polynomiality violated for {}[{}]: remainder {}",
                family, index, remainder
            ),
            Error::TruncationFailure { n, detail } => {
                write!(f, "PDE truncation failure at n = {}: {}", n, detail)
            }
            Error::NullspaceDimension { expected, got } => {
                write!(f, "nullspace dimension {} (expected {})", got, expected)
            }
            Error::IdentityFailure { check, residual } => {
                write!(f, "identity {} failed, residual {}", check, residual)
            }
            Error::SplitFailure { k, detail } => {
                write!(f, "factor split failed at k = {}: {}", k, detail)
            }
            Error::NonIntegerCoefficients { what } => {
                write!(f, "non-integer coefficients in {}", what)
            }
            Error::ParityViolation { what } => write!(f, "parity violation in {}", what),
            Error::ValueMismatch { what, lhs, rhs } => {
                write!(f, "value mismatch in {}: {} vs {}", what, lhs, rhs)
            }
            Error::BadLength { n } => {
                write!(f, "chain length {} not an odd integer >= 3", n)
            }
            Error::KernelDimension { at, dim } => {
                write!(f, "kernel dimension {} at {}", dim, at)
            }
            Error::InterpolationUnstable { detail } => {
                write!(f, "interpolation did not stabilize: {}", detail)
            }
            Error::NomeOutOfRange => write!(f, "elliptic nome must satisfy |q| < 1"),
            Error::ConsistencyFailure { check, residual } => {
                write!(
                    f,
                    "consistency check {} broke, residual {:e}",
                    check, residual
                )
            }
            Error::ToleranceExceeded {
                check,
                residual,
                tol,
            } => write!(
                f,
                "{}: residual {:e} exceeds tolerance {:e}",
                check, residual, tol
            ),
            Error::SpectrumMiss { check, distance } => {
                write!(f, "{}: nearest eigenvalue distance {:e}", check, distance)
            }
            Error::NoSolution { detail } => write!(f, "no solution: {}", detail),
            Error::MismatchBeyondScale { detail } => {
                write!(f, "sides disagree beyond an overall scale: {}", detail)
            }
            Error::ConfigError { detail } => write!(f, "config error: {}", detail),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
