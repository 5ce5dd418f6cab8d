use thiserror::Error;

pub type Result<T> = std::result::Result<T, ClockError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClockError {
    #[error("n must be at least 2, got {0}")]
    TooFewDivisions(u64),
    #[error("dial multiplier m must be positive")]
    ZeroMultiplier,
    #[error("dial multiplier m = {m} exceeds n = {n}")]
    MultiplierExceedsN { m: u64, n: u64 },
    #[error("beta = {0} >= 1 is unphysical")]
    UnphysicalBeta(String),
    #[error("running time must be positive and finite, got {0}")]
    InvalidRunningTime(f64),
    #[error("phase phi = {0} must lie in (0, 1]")]
    PhaseOutOfRange(String),
    #[error("recorder inside dial: recorder_x = {recorder_x} must be < -ell = -{ell}")]
    RecorderInsideDial { recorder_x: String, ell: String },
    #[error("clock mass M is required for this operation")]
    MissingMass,
    #[error("clock mass M must be positive and finite, got {0}")]
    InvalidMass(f64),
    #[error("expected a {expected} record, got {got}")]
    WrongSpecies {
        expected: &'static str,
        got: &'static str,
    },
    #[error("operation requires m = 1, config has m = {0}")]
    RequiresShortDial(u64),
    #[error("unpaired reading: no Q3 arrives after the Q2 at t = {0}")]
    UnpairedReading(String),
    #[error("serial deduction failed: offset {0} is not a whole number of Q2 spacings")]
    SerialDeductionFailed(String),
    #[error("stream truncated: partner is Q3 #{needed} after the Q2 but only {available} follow")]
    StreamTruncated { needed: u64, available: u64 },
    #[error("Monte-Carlo with m = {0} >= 2 requires serial resolution")]
    AmbiguousMonteCarlo(u64),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
