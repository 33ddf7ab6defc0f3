use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree out of range: {0} (expected 1..=5)")]
    DegreeOutOfRange(i64),
    #[error("del Pezzo degree out of range: {0} (expected 1..=7)")]
    DpDegreeOutOfRange(i64),
    #[error("class is not in the span of v and w: {coefficient} coefficient is inconsistent")]
    NotInSpan { coefficient: &'static str },
    #[error("Picard vectors have ranks {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("not a root: D^2 = {square}, D.K = {canonical}")]
    NotARoot { square: i64, canonical: i64 },
    #[error("nef test is only available for del Pezzo degree 2, got {0}")]
    NefUnsupported(i64),
    #[error("invalid search bounds: {0}")]
    BadBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
