//! Other formalisms and their translations into LP^MLN.

pub mod mln;
pub mod mvpp;
pub mod plog;
pub mod problog;
pub mod weak;

pub use mln::{completion, loop_augmented_mln, mln_to_lpmln, Completion};
pub use mvpp::{mvpp_direct_distribution, mvpp_to_lpmln, MvppDecl, MvppProgram};
pub use plog::{plog_measure, plog_prob, plog_tau, plog_to_mvpp, plog_validate, PlogModel, PlogProgram, PrAtom, RandomRule};
pub use problog::{problog_distribution, problog_to_lpmln, ProbFact, ProbLogProgram};
pub use weak::{optimal_stable_models, weak_to_lpmln, WeakConstraint, WeakProgram};
