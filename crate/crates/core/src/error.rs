use curvelab_kernel::KernelError;
use thiserror::Error;

/// Errors raised while building or analysing curves.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("certificate `{certificate}` failed: {detail}")]
    Certificate {
        certificate: &'static str,
        detail: String,
    },
    #[error("not a curve: {0}")]
    NotACurve(String),
    #[error("ideal is not saturated")]
    NotSaturated,
    #[error("independent computations disagree: {0}")]
    Disagreement(String),
}

impl CurveError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CurveError::InvalidParameters(msg.into())
    }

    pub(crate) fn certificate(certificate: &'static str, detail: impl Into<String>) -> Self {
        CurveError::Certificate {
            certificate,
            detail: detail.into(),
        }
    }

    /// Process exit code for the command line front end: 2 for bad input,
    /// 3 for failed constructions and checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CurveError::InvalidParameters(_) | CurveError::NotACurve(_) => 2,
            CurveError::Kernel(KernelError::Parse { .. })
            | CurveError::Kernel(KernelError::NonHomogeneous(_))
            | CurveError::Kernel(KernelError::NotPrime(_)) => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;
