use thiserror::Error;

use crate::padic::Valuation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    InvalidPrecision,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("operands live in different ring contexts")]
    MismatchedContext,
    #[error("element is not a unit (valuation {0})")]
    NotAUnit(Valuation),
    #[error("division by an element that is zero at this precision")]
    DivisionByZero,
    #[error("dividend valuation {dividend} is below divisor valuation {divisor}")]
    NotDivisible { dividend: Valuation, divisor: Valuation },
    #[error("operation not supported for {0} extensions")]
    UnsupportedExtension(&'static str),
    #[error("p^{digits} does not fit the scalar backend")]
    PrecisionExhausted { digits: u32 },
    #[error("inner series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series is not invertible: linear coefficient has valuation {0}")]
    NotInvertible(Valuation),
    #[error("series is not noninvertible stable: {0}")]
    NotNoninvertible(String),
    #[error("evaluation point has valuation {0}, must be positive")]
    NotInMaximalIdeal(Valuation),
    #[error("no unit coefficient up to the truncation order")]
    WeierstrassDegreeNotVisible,
    #[error("Hensel condition fails: v(f(a0)) = {f_val}, v(f'(a0)) = {df_val}")]
    HenselConditionFailed { f_val: Valuation, df_val: Valuation },
    #[error("Newton iteration did not reach a root after {0} steps")]
    HenselNoConvergence(usize),
    #[error("residue field has {0} elements, above the enumeration limit")]
    ResidueFieldTooLarge(u128),
    #[error("truncation {available} too small, need at least {needed}")]
    TruncationTooSmall { needed: usize, available: usize },
    #[error("not condensable: nonzero coefficient at exponent {exponent}")]
    NotCondensable { exponent: usize },
    #[error("points at indices {0:?} are not torsion points at this precision")]
    NotATorsionPoint(Vec<usize>),
    #[error("point is not a fixed point at this precision")]
    NotAFixedPoint,
    #[error("point {index} is not a root of the polynomial at this precision")]
    NotARoot { index: usize },
    #[error("image of root {index} does not match exactly one root")]
    NotRootStable { index: usize },
    #[error("every point is fixed (the iterate minus x is the zero series)")]
    AllPointsFixed,
    #[error("not a Lubin-Tate series: {0}")]
    NotLubinTate(String),
    #[error("source and target uniformizers differ; no homomorphism with this linear term")]
    IncompatibleUniformizers,
    #[error("parse error: {0}")]
    Parse(String),
}
