use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a perfect conductor has no permittivity; it enters only through its reflection coefficients")]
    PerfectConductorPermittivity,

    #[error("frequency must be positive and finite, got {0}")]
    NonPositiveFrequency(f64),

    #[error("invalid material parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid stack: {0}")]
    InvalidStack(String),

    #[error("layer index {index} out of range for a stack of {len} layers")]
    LayerIndexOutOfRange { index: usize, len: usize },

    #[error("layer {0} is semi-infinite; a finite thickness is required")]
    SemiInfiniteLayer(usize),

    #[error("layer {0} is a perfect conductor and cannot be probed")]
    OpaqueLayer(usize),

    #[error("layer {0} must be vacuum or a constant dielectric to carry a stress tensor")]
    LossyProbeLayer(usize),

    #[error("layers {j} and {l} must be filled with the same medium")]
    MismatchedMedia { j: usize, l: usize },

    #[error("layer order violated: expected {j} <= {l}")]
    LayerOrder { j: usize, l: usize },

    #[error("interface coefficient has a pole (beta_i + gamma * beta_j = 0)")]
    InterfacePole,

    #[error("position z = {z} lies outside the layer [0, {thickness}]")]
    PositionOutsideLayer { z: f64, thickness: f64 },

    #[error("invalid spectral point: {0}")]
    InvalidSpectralPoint(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("the two forms of the ideal-cavity force disagree: {double} vs {single}")]
    FormMismatch { double: f64, single: f64 },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
