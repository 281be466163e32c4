use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    NotSquare { rows: usize, cols: usize },
    NotSymmetric { max_asymmetry: f64 },
    NotPositiveDefinite { eigenvalue: f64 },
    /// Two eigenvalues coincide; only raised by operations that need distinct ones.
    DegenerateSpectrum,
    NoConvergence { sweeps: usize },
    SingularKernel { smallest: f64 },
    SingularSystem { pivot: f64 },
    InvalidArgument(&'static str),
    AlreadyBelowLevelSet { excess: f64, alpha: f64 },
    WrongRegime,
    ZeroDenominator,
    ZeroInitialization,
    RegimeMismatch,
    LevelSetMismatch,
    InfeasibleWindow,
    EmptyTestSet,
    InvalidLabel { index: usize, value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Error::NotSymmetric { max_asymmetry } => {
                write!(f, "matrix is not symmetric (max asymmetry {max_asymmetry:e})")
            }
            Error::NotPositiveDefinite { eigenvalue } => {
                write!(f, "operator is not positive definite (eigenvalue {eigenvalue:e})")
            }
            Error::DegenerateSpectrum => write!(f, "spectrum has repeated eigenvalues"),
            Error::NoConvergence { sweeps } => {
                write!(f, "Jacobi iteration did not converge after {sweeps} sweeps")
            }
            Error::SingularKernel { smallest } => {
                write!(f, "kernel matrix is numerically singular (smallest eigenvalue {smallest:e})")
            }
            Error::SingularSystem { pivot } => {
                write!(f, "linear system is singular (pivot {pivot:e})")
            }
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::AlreadyBelowLevelSet { excess, alpha } => {
                write!(f, "initial excess loss {excess:e} is already below the level set {alpha:e}")
            }
            Error::WrongRegime => write!(f, "operation needs a small or big step size"),
            Error::ZeroDenominator => write!(f, "distinguished eigen-coefficient is zero"),
            Error::ZeroInitialization => {
                write!(f, "initialization has no component on the first or last eigenvector")
            }
            Error::RegimeMismatch => write!(f, "runs do not use a small and a big step size"),
            Error::LevelSetMismatch => write!(f, "runs did not stop on the same level set"),
            Error::InfeasibleWindow => write!(f, "step window is empty for this target accuracy"),
            Error::EmptyTestSet => write!(f, "test set is empty"),
            Error::InvalidLabel { index, value } => {
                write!(f, "label {value} at row {index} is not -1 or +1")
            }
        }
    }
}

impl core::error::Error for Error {}
