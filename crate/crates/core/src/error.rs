use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core.
///
/// Variants split into two families: bad input ([`Error::is_input_error`]) and
/// failed mathematical assertions (everything else).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(i64),
    KOutOfBound { k: u32, bound: u32 },
    NonInvertible,
    NotInSubring(String),
    ZeroPivot,
    NotRationalHomologySphere,
    PiCancellation { n: usize, value: String },
    NonRational(String),
    SingularPresentation,
    InsufficientPrecision,
    NotAlgebraicallySplit,
    SublinkLatticeTooLarge(usize),
    ColorOutOfRange { color: u32, k: u32 },
    ComponentMismatch { left: usize, right: usize },
    InvalidPrefactor(&'static str),
    LogConstantTerm,
    NonzeroConstantTerm,
    PrefactorMismatch,
    IntegralityFailure(String),
    Hypothesis(&'static str),
    VanishingNormalization,
    InvalidLink(String),
    Unsupported(&'static str),
}

impl Error {
    /// True for errors caused by malformed or out-of-range input, as opposed to
    /// a mathematical assertion failing on valid input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::KOutOfBound { .. }
                | Error::ColorOutOfRange { .. }
                | Error::ComponentMismatch { .. }
                | Error::InvalidLink(_)
                | Error::NotAlgebraicallySplit
                | Error::SublinkLatticeTooLarge(_)
                | Error::Unsupported(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(k) => write!(f, "{k} is not an odd prime"),
            Error::KOutOfBound { k, bound } => write!(f, "K = {k} exceeds the bound {bound}"),
            Error::NonInvertible => f.write_str("non-invertible denominator"),
            Error::NotInSubring(r) => write!(f, "not in Z[zeta_K]: {r}"),
            Error::ZeroPivot => f.write_str("zero pivot: enable regularization or reorder"),
            Error::NotRationalHomologySphere => f.write_str("not a rational homology sphere"),
            Error::PiCancellation { n, value } => {
                write!(f, "pi-cancellation failure at n = {n}: {value}")
            }
            Error::NonRational(v) => write!(f, "expected a rational value, got {v}"),
            Error::SingularPresentation => f.write_str("singular presentation: pole at eps = 0"),
            Error::InsufficientPrecision => f.write_str("eps-expansion precision exhausted"),
            Error::NotAlgebraicallySplit => f.write_str("link is not algebraically split"),
            Error::SublinkLatticeTooLarge(n) => {
                write!(f, "sublink lattice too large ({n} components)")
            }
            Error::ColorOutOfRange { color, k } => {
                write!(f, "color {color} outside 1..{} for K = {k}", k - 1)
            }
            Error::ComponentMismatch { left, right } => {
                write!(f, "component count mismatch: {left} vs {right}")
            }
            Error::InvalidPrefactor(why) => write!(f, "prefactor invariant violated: {why}"),
            Error::LogConstantTerm => f.write_str("log of a series with constant term != 1"),
            Error::NonzeroConstantTerm => f.write_str("exp of a series with nonzero constant term"),
            Error::PrefactorMismatch => f.write_str("cannot add series with different prefactors"),
            Error::IntegralityFailure(r) => write!(f, "integrality failure: {r}"),
            Error::Hypothesis(h) => write!(f, "hypothesis violated: {h}"),
            Error::VanishingNormalization => f.write_str("Z(M;3) = 0"),
            Error::InvalidLink(why) => write!(f, "invalid link: {why}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
