use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised anywhere in the toolkit.
///
/// Variants are split into data problems (bad or missing input) and numeric
/// failures (a computation that cannot proceed on valid input); the CLI maps
/// the two groups to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("cannot extrapolate: {0}")]
    CannotExtrapolate(String),

    #[error("empty overlap: {0}")]
    EmptyOverlap(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing column: {0}")]
    MissingColumn(String),

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("HTTP failure for {url} after {attempts} attempt(s): {message}")]
    Http {
        url: String,
        attempts: u32,
        message: String,
    },

    #[error("offline mode: {0} is not cached")]
    Offline(String),

    #[error("insufficient observations: {0}")]
    InsufficientObservations(String),

    #[error("collinear regressors{0}")]
    Collinear(String),

    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),

    #[error("degenerate covariance: {0}")]
    DegenerateCovariance(String),

    #[error("Cholesky failed: {0}")]
    CholeskyFailed(String),

    #[error("critical values unavailable: {0}")]
    CriticalValuesUnavailable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("stage `{stage}` failed for {country}: {source}")]
    Stage {
        country: String,
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn collinear() -> Self {
        Error::Collinear(String::new())
    }

    pub(crate) fn collinear_in(context: &str) -> Self {
        Error::Collinear(format!(" in {context}"))
    }

    /// True for errors caused by the input data rather than by the numerics.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::InsufficientData(_)
            | Error::CannotExtrapolate(_)
            | Error::EmptyOverlap(_)
            | Error::InvalidInput(_)
            | Error::MissingColumn(_)
            | Error::Malformed(_)
            | Error::Config(_)
            | Error::Io { .. }
            | Error::Http { .. }
            | Error::Offline(_)
            | Error::InsufficientObservations(_) => true,
            Error::Stage { source, .. } => source.is_data_error(),
            _ => false,
        }
    }

    /// Process exit code: 2 for data errors, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        if self.is_data_error() {
            2
        } else {
            3
        }
    }
}
