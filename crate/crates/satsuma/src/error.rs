use thiserror::Error;

/// Errors surfaced by the scattering, evolution, and asymptotics layers.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("index {index} out of range for grid of {len} samples")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("spectral singularity: |det a({lambda})| = {det_abs:.3e} below threshold {threshold:.1e}; data outside the solitonless regime")]
    SingularBlock {
        lambda: f64,
        det_abs: f64,
        threshold: f64,
    },

    #[error("winding boundary passes too close to a zero of det a at lambda = {re}+{im}i (|det a| = {det_abs:.3e}); adjust the rectangle")]
    WindingBoundary { re: f64, im: f64, det_abs: f64 },

    #[error("{what} = {value} outside range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("quadrature self-estimate {estimate:.3e} exceeds tolerance {tol:.1e}; refine the table")]
    QuadratureAccuracy { estimate: f64, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evolution aborted at t = {t_last_good}: {reason}")]
    Instability { t_last_good: f64, reason: String },

    #[error("edge amplitude {amplitude:.3e} exceeds {tol:.1e} at t = {t}; enlarge the domain")]
    EdgeAmplitude { t: f64, amplitude: f64, tol: f64 },

    #[error("gamma function pole at z = {re}+{im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("parabolic cylinder arguments out of implemented range: |a| = {a_abs:.2}, |zeta| = {zeta_abs:.2}")]
    PcfRange { a_abs: f64, zeta_abs: f64 },

    #[error("data inconsistency: {0}")]
    Data(String),

    #[error("missing backward trajectory for reverse-space-time deviation")]
    MissingBackwardTrajectory,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
