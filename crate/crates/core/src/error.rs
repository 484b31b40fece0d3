use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish identically")]
    Pole,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("variable x{0} has no value")]
    UnassignedVariable(usize),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("depth {depth} exceeds the supported maximum {max}")]
    DepthOverflow { depth: usize, max: usize },
    #[error("expected depth-zero component {expected}, found {found}")]
    WrongDepthZero { expected: String, found: String },
    #[error("component at depth {depth} uses x{var}")]
    StrayVariable { depth: usize, var: usize },
    #[error("input violates {0}")]
    LawViolation(String),
    #[error("unknown mould `{0}`")]
    UnknownName(String),
    #[error("psi_B is only defined through depth 5 (asked for {0})")]
    PsiBOutOfRange(usize),
    #[error("calibration failed: {0}")]
    Calibration(String),
}
