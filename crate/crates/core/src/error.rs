use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// State vector norm deviates from one.
    NotNormalized { norm_sqr: f64 },
    /// Density matrix violates trace, range or positivity constraints.
    InvalidDensity(&'static str),
    /// `|f| > 1`: the Kraus pair would not be trace preserving.
    NotTracePreserving { f: f64 },
    /// A Kraus series does not start at the identity map.
    MapNotIdentityAtStart { f0: f64 },
    /// Model parameters are inconsistent.
    Config(&'static str),
    /// Coupling larger than the Rabi frequency makes the detuning imaginary.
    CouplingExceedsRabi { coupling: f64, rabi: f64 },
    /// Closed-form solution requested for a time-dependent Hamiltonian.
    Unsupported(&'static str),
    /// Time grid cannot be built from the requested range.
    InvalidGrid(&'static str),
    /// Two series that must share a grid do not.
    GridMismatch,
    /// `f` cannot be defined because the initial excited population is zero.
    UndefinedF,
    /// Input series too short for the requested analysis.
    TooShort { len: usize, min: usize },
    /// Figure identifier not recognised.
    UnknownFigure,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotNormalized { norm_sqr } => {
                write!(f, "state is not normalized (|c_e|²+|c_g|² = {norm_sqr})")
            }
            Error::InvalidDensity(why) => write!(f, "invalid density matrix: {why}"),
            Error::NotTracePreserving { f: v } => {
                write!(
                    f,
                    "|f| = {} exceeds 1, map is not trace preserving",
                    libm::fabs(*v)
                )
            }
            Error::MapNotIdentityAtStart { f0 } => {
                write!(f, "Kraus series must start at f = 1, got {f0}")
            }
            Error::Config(why) => write!(f, "invalid configuration: {why}"),
            Error::CouplingExceedsRabi { coupling, rabi } => write!(
                f,
                "coupling {coupling} exceeds Rabi frequency {rabi}; detuning would be imaginary"
            ),
            Error::Unsupported(why) => write!(f, "unsupported: {why}"),
            Error::InvalidGrid(why) => write!(f, "invalid time grid: {why}"),
            Error::GridMismatch => f.write_str("series are sampled on different grids"),
            Error::UndefinedF => {
                f.write_str("f(t) is undefined: initial excited population is zero")
            }
            Error::TooShort { len, min } => {
                write!(f, "series has {len} samples, at least {min} required")
            }
            Error::UnknownFigure => f.write_str("unknown figure id (expected fig1..fig6)"),
        }
    }
}

impl core::error::Error for Error {}
