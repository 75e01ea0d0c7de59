use thiserror::Error;

/// Everything that can go wrong while loading a solution or computing
/// its invariants. Indices in messages are 1-based, matching the file
/// format and all printed reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{kind} row {row} is not a bijection of 1..{n}")]
    NotBijective { kind: &'static str, row: usize, n: usize },

    #[error("r is not involutive: r(r({x},{y})) = ({rx},{ry})")]
    NotInvolutive { x: usize, y: usize, rx: usize, ry: usize },

    #[error("braided relation fails on the triple ({x},{y},{z})")]
    NotBraided { x: usize, y: usize, z: usize },

    #[error("gamma table disagrees with the involutive closed form at (x,y) = ({x},{y})")]
    GammaInconsistent { x: usize, y: usize },

    #[error("index {index} out of range 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("class search exceeded bound {bound}")]
    ClassSearchExceeded { bound: usize },

    #[error("germ size m^n = {m}^{n} exceeds guard {guard}")]
    GermGuardExceeded { m: usize, n: usize, guard: usize },

    #[error("pi-vector {vec:?} reached with two distinct permutations")]
    PiCollision { vec: Vec<i64> },

    #[error("germ search found {found} simples, expected {expected}")]
    GermIncomplete { found: usize, expected: usize },

    #[error("element with vector {vec:?} is not in the structure monoid")]
    NotPositive { vec: Vec<i64> },

    #[error("Garside element is undefined for class m = 1")]
    ClassTooSmall,

    #[error("ball of radius {radius} exceeds guard {guard}")]
    BallGuardExceeded { radius: usize, guard: usize },

    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
