use alloc::string::String;
use core::fmt;

use crate::extrema::OrdinateRange;
use crate::laurent::Family;
use crate::parser::ParseError;

/// Errors produced by evaluation, inversion, solving and parsing.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// `y_n` and `k_n` have a pole of order `n + 1` at the origin.
    Pole {
        family: Family,
        order: u32,
    },
    NoSuchExtremum {
        family: Family,
        order: u32,
        index: i64,
    },
    NoSuchBranch {
        family: Family,
        order: u32,
        branch: i64,
    },
    OutOfRange {
        family: Family,
        order: u32,
        branch: i64,
        target: f64,
        range: OrdinateRange,
    },
    /// The geometric march toward an open branch end never straddled the target.
    DivergedBracket {
        family: Family,
        order: u32,
        branch: i64,
        target: f64,
    },
    NoFixedPoint {
        family: Family,
        order: u32,
        branch: i64,
    },
    /// Argument outside a function's real domain.
    Domain(String),
    InvalidArgument(String),
    /// The equation cannot be brought to a tabulated Laurent row.
    NotTransformable {
        reason: String,
        hint: Option<String>,
    },
    /// Circular and hyperbolic (or exponential) factors in one equation.
    MixedFactors,
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { family, order } => write!(f, "{}_{}(x) has a pole at x = 0", family.symbol(), order),
            Error::NoSuchExtremum { family, order, index } => write!(
                f,
                "{}_{} has no infimum/supremum number {}",
                family.symbol(),
                order,
                index
            ),
            Error::NoSuchBranch { family, order, branch } => {
                write!(f, "{}_{} has no real branch {}", family.symbol(), order, branch)
            }
            Error::OutOfRange {
                family,
                order,
                branch,
                target,
                range,
            } => write!(
                f,
                "{} is outside the range {} of branch {} of {}_{}",
                target,
                range,
                branch,
                family.symbol(),
                order
            ),
            Error::DivergedBracket {
                family,
                order,
                branch,
                target,
            } => write!(
                f,
                "could not bracket {} on branch {} of {}_{}",
                target,
                branch,
                family.symbol(),
                order
            ),
            Error::NoFixedPoint { family, order, branch } => write!(
                f,
                "branch {} of {}_{} contains no fixed point",
                branch,
                family.symbol(),
                order
            ),
            Error::Domain(msg) => write!(f, "domain error: {}", msg),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {}", msg),
            Error::NotTransformable { reason, hint } => {
                write!(f, "not transformable: {}", reason)?;
                if let Some(hint) = hint {
                    write!(f, " (nearest row: {})", hint)?;
                }
                Ok(())
            }
            Error::MixedFactors => f.write_str("equation mixes circular and hyperbolic/exponential factors"),
            Error::Parse(e) => fmt::Display::fmt(e, f),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
