//! Exact inference for LP^MLN, weighted logic programs under the stable model semantics,
//! with parsers and translations for ASP with weak constraints, Markov logic networks,
//! ProbLog, multi-valued probabilistic programs and simple P-log.

pub mod error;
pub mod frontends;
pub mod ground;
pub mod infer;
pub mod limits;
pub mod logic;
pub mod selftest;
pub mod stable;
pub mod textio;

pub use error::{Error, Result};
pub use limits::Limits;
