use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("cannot parse rational {0:?}")]
    Rational(String),
    #[error("cannot parse gaussian rational {0:?}")]
    Gaussian(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("degenerate polytope: vertices span only {rank} of {dim} dimensions")]
    Degenerate { dim: usize, rank: usize },
    #[error("weight_exceeds_polytope: chop at vertex {vertex} with weight {weight} crosses vertex {blocking}")]
    WeightExceedsPolytope {
        vertex: usize,
        weight: String,
        blocking: usize,
    },
    #[error("chop weight must be positive, got {0}")]
    NonpositiveWeight(String),
    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("point has length {got}, expected ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polytope is not simple at vertex {0}")]
    NotSimple(usize),
    #[error("Delzant condition fails at vertex {vertex}: |det| of facet normals is {det}")]
    NotDelzant { vertex: usize, det: String },
    #[error("point {0} is not a vertex of its convex hull")]
    NotAVertex(usize),
    #[error("vertex {0} of the projective simplex is out of range")]
    BadSimplexVertex(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not Hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("projective point has all coordinates zero")]
    ZeroPoint,
    #[error("zero_jet: the linear part of the vector field vanishes identically")]
    ZeroJet,
    #[error("point {0} is not fixed by the connected group")]
    NotFixed(String),
    #[error("Gram matrix of the invariant algebra is singular")]
    SingularGram,
    #[error("permutation {0:?} is not a permutation of 0..{1}")]
    BadPermutation(Vec<usize>, usize),
    #[error("weight vector has length {got}, expected {expected}")]
    BadWeights { expected: usize, got: usize },
    #[error("weights length {weights} does not match {points} points")]
    WeightCount { weights: usize, points: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassError {
    #[error("class length mismatch: {0} vs {1} exceptional divisors")]
    LengthMismatch(usize, usize),
    #[error("weights must be positive, got {0}")]
    NonpositiveWeight(String),
    #[error("the Cremona transformation needs exactly 3 exceptional divisors, got {0}")]
    CremonaArity(usize),
    #[error("complex dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("corollary case {case} needs {expected} parameters, got {got}")]
    Params {
        case: u8,
        expected: usize,
        got: usize,
    },
    #[error("unknown corollary case {0}")]
    UnknownCase(u8),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("not_kahler_at_t: metric positivity fails at t = {t} (psi = {psi}, psi_tau = {psi_tau})")]
    NotKahlerAtT { t: f64, psi: f64, psi_tau: f64 },
    #[error("complex dimension must be at least {min}, got {got}")]
    Dimension { min: usize, got: usize },
    #[error("epsilon must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
    #[error("grid bound T must exceed 1, got {0}")]
    GridBound(f64),
    #[error("shooting failed after {iterations} iterations: slope residual {residual:e}, bracket [{lo:e}, {hi:e}]")]
    ShootingFailed {
        iterations: usize,
        residual: f64,
        lo: f64,
        hi: f64,
    },
    #[error("ODE integration failed at tau = {tau}: {reason}")]
    Integration { tau: f64, reason: String },
    #[error("t = {0} lies outside the sampled grid")]
    OutsideGrid(f64),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BiharmonicError {
    #[error("interior_constraint: integral of (4 m h - k) over the unit sphere is {0}, must vanish")]
    InteriorConstraint(String),
    #[error("exterior_constraint: integral of k over the unit sphere is {0}, must vanish")]
    ExteriorConstraint(String),
    #[error("degree {degree} expects {expected} coefficients, got {got}")]
    ModeLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("complex dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("h and k describe different dimensions")]
    DimensionMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Pipeline failures carry the stage that raised them.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error("scenario: {0}")]
    Scenario(String),
    #[error("stage {stage}: {source}")]
    Geometry {
        stage: &'static str,
        #[source]
        source: GeometryError,
    },
    #[error("stage {stage}: {source}")]
    Action {
        stage: &'static str,
        #[source]
        source: ActionError,
    },
    #[error("stage {stage}: {source}")]
    Class {
        stage: &'static str,
        #[source]
        source: ClassError,
    },
    #[error("stage {stage}: {source}")]
    Radial {
        stage: &'static str,
        #[source]
        source: RadialError,
    },
    #[error("stage {stage}: {source}")]
    Biharmonic {
        stage: &'static str,
        #[source]
        source: BiharmonicError,
    },
    #[error("unknown suite {0:?}; expected one of toric-p2, corollary-2.5, burns-simanca, biharmonic, sporadic")]
    UnknownSuite(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
