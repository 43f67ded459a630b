//! Stuffle, shuffle, duality and P-R relations for q-analogs of multiple zeta
//! values, with exact truncated q-series evaluation and rank computations.

pub mod basis;
pub mod composition;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lincomb;
pub mod okounkov;
pub mod rational;
pub mod relations;
pub mod series;
pub mod shuffle;
pub mod stuffle;
pub mod table;
pub mod word;
pub mod zword;

pub use composition::CompositionPair;
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use word::{BlockForm, PyLetter, PyWord};
pub use zword::{TypeTag, ZLetter, ZWord};
