use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed residue rings: Z/{left_p}^{left_n} vs Z/{right_p}^{right_n}")]
    PrecisionMismatch {
        left_p: u64,
        left_n: u32,
        right_p: u64,
        right_n: u32,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// `d_out * d_in` is not zero; the complex was assembled incorrectly.
    #[error("composition of consecutive differentials is nonzero ({0})")]
    CompositionNotZero(String),

    #[error("map does not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: usize },

    /// The lifted ranks of two consecutive differentials overlap, so the
    /// homology cannot be read off at this precision.
    #[error("precision {precision} is too small to separate ranks in degree {degree}")]
    PrecisionExhausted { precision: u32, degree: usize },

    #[error("ghost inversion produced a non-integral coordinate at index {index}")]
    NonIntegralUnghost { index: usize },

    #[error("no basis element in degree {degree} at weight {weight}")]
    NoSuchBasisElement { degree: u8, weight: u64 },

    #[error("net p-exponent {exponent} is negative in degree {degree} at weight {weight}")]
    NegativeDividedPower {
        degree: u8,
        weight: u64,
        exponent: i64,
    },

    #[error("orbit {orbit} did not stabilize for cutoffs up to {last_cutoff}")]
    StabilizationFailure { orbit: u64, last_cutoff: u32 },

    #[error("orbit {orbit} was predicted to vanish but contributes {found}")]
    UnexpectedOrbitContribution { orbit: u64, found: String },

    #[error("table entry in degree {degree} disagrees with syntomic data: {detail}")]
    CrossCheckFailure { degree: i64, detail: String },

    #[error("weight overflow building orbit of {orbit} at cutoff {cutoff}")]
    WeightOverflow { orbit: u64, cutoff: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
