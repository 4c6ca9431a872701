use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient overflow in 64-bit integer arithmetic")]
    Overflow,
    #[error("exponent {0} exceeds the supported maximum of 63")]
    ExponentTooLarge(u32),
    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("binomial term (x{0} - x{0}) is identically zero")]
    DegenerateTerm(usize),
    #[error("{num_vars} variables at {bits} bits each do not fit a packed monomial key")]
    KeyWidth { num_vars: usize, bits: u32 },
    #[error("naive expansion is limited to {limit} terms, got {found}")]
    TermLimit { limit: usize, found: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("edge {edge} has zero available colors")]
    Infeasible { edge: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("embedding error: {0}")]
    Embedding(String),
    #[error("soundness probe failed: witness exists but trial {trial} is not list-colorable")]
    ProbeCounterexample { trial: usize, lists: Vec<Vec<u32>> },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_problem() {
        let e = Error::LengthMismatch { what: "availability", expected: 3, found: 2 };
        assert!(e.to_string().contains("availability"));
        assert!(Error::UnknownFixture("x".into()).to_string().contains('x'));
    }
}
