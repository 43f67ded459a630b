use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("word is not in block form: {0}")]
    NotBlockForm(String),
    #[error("word is not pure (contains pi): {0}")]
    NotPure(String),
    #[error("inadmissible word for type {ty}: {word}")]
    Inadmissible { ty: String, word: String },
    #[error("words come from different families: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("series diverges: first auxiliary exponent is zero in {0}")]
    Divergent(String),
    #[error("argument too small for a type O letter: {0}")]
    ArgumentTooSmall(u32),
    #[error("combination cannot be closed in the typical forms of type {ty}: {word}")]
    NotClosable { ty: String, word: String },
    #[error("operation not supported for type {0}")]
    Unsupported(String),
    #[error("negative deficiency {0}: a relation row is unsound")]
    NegativeDeficiency(i64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
