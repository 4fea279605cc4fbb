use thiserror::Error;

use crate::ring::CoefficientRing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: Z/m needs m >= 2")]
    InvalidModulus(u64),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, CoefficientRing),
    #[error("{0} is not a unit in {1}")]
    NonUnit(String, CoefficientRing),
    #[error("{0} is not a field")]
    NotAField(CoefficientRing),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} is out of range")]
    GeneratorIndex(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("signs (-1)^|a| are undefined over {ring} with a grading group of odd order {order}")]
    OddGradingSigns { ring: CoefficientRing, order: u64 },
    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("map does not have the required degree: {0}")]
    Degree(String),
    #[error("grading mismatch: {0}")]
    Grading(String),
    #[error("two-copy relation fails: {0}")]
    RelationFailure(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] crate::text::ParseError),
}
