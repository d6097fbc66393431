use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vacuum charge was requested below the base level `r`.
    NotVacuumLevel {
        index: i64,
        r: u32,
    },
    /// Wrong number of charges for the base level.
    ChargeCount {
        r: u32,
        got: usize,
    },
    /// A generator index below the bound of the element's level.
    IndexBelowLevel {
        index: i64,
        lo: i64,
    },
    /// A monomial uses a generator that is not a PBW generator of the module.
    NotPbwGenerator {
        index: i64,
    },
    /// `ord` of the zero vector.
    OrderOfZero,
    ZeroLambda,
    NotHomogeneous,
    ZeroElement,
    /// The operation needs a simple, nontrivial `W`.
    RequiresSimpleW,
    /// The operation needs a specific module family or parameter pattern.
    Precondition(&'static str),
    OutOfProfile(String),
    EmptyGenerators,
    InsufficientSamples {
        needed: usize,
        got: usize,
    },
    DuplicateLambda,
    InconsistentSamples,
    /// `gamma = 0` has no direct loop-module dictionary entry.
    GammaZero,
    /// Two computations that must agree did not.
    Disagreement(&'static str),
    DimensionMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotVacuumLevel { index, r } => {
                write!(f, "not a vacuum-level index: {} < r = {}", index, r)
            }
            Error::ChargeCount { r, got } => {
                write!(f, "base level r = {} needs {} charges, got {}", r, r + 1, got)
            }
            Error::IndexBelowLevel { index, lo } => {
                write!(f, "generator index {} below level bound {}", index, lo)
            }
            Error::NotPbwGenerator { index } => write!(f, "index {} not a PBW generator", index),
            Error::OrderOfZero => f.write_str("order undefined for zero"),
            Error::ZeroLambda => f.write_str("lambda must be nonzero"),
            Error::NotHomogeneous => f.write_str("not homogeneous"),
            Error::ZeroElement => f.write_str("zero element"),
            Error::RequiresSimpleW => f.write_str("requires simple W"),
            Error::Precondition(s) => write!(f, "precondition violated: {}", s),
            Error::OutOfProfile(s) => write!(f, "element outside truncation profile: {}", s),
            Error::EmptyGenerators => f.write_str("empty generator list"),
            Error::InsufficientSamples { needed, got } => {
                write!(f, "insufficient samples: need {} consecutive, got {}", needed, got)
            }
            Error::DuplicateLambda => f.write_str("duplicate lambda"),
            Error::InconsistentSamples => f.write_str("samples are not an exp-polynomial sequence of the given shape"),
            Error::GammaZero => f.write_str("gamma = 0: use classify_e for the weight-0 Verma route"),
            Error::Disagreement(s) => write!(f, "independent computations disagree: {}", s),
            Error::DimensionMismatch => f.write_str("dimension mismatch"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
