//! Turns a parsed source of any dialect into something that answers probability questions.

use lpmln_core::frontends::mvpp::mvpp_to_lpmln;
use lpmln_core::frontends::plog::PlogModel;
use lpmln_core::frontends::problog::{problog_distribution, problog_to_lpmln};
use lpmln_core::frontends::weak::weak_to_lpmln;
use lpmln_core::frontends::mln_to_lpmln;
use lpmln_core::ground::{ground_program_with_cap, GroundProgram};
use lpmln_core::infer::mln::mln_weight_table;
use lpmln_core::infer::{distribution, ground_mln, mln_distribution, weight_table, Distribution, GroundMln};
use lpmln_core::logic::{AtomId, Formula, GroundAtom, Program, SymbolicWeight};
use lpmln_core::textio::Source;
use lpmln_core::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Branch-and-bound over the highest weight tier.
    Search,
    /// Every interpretation, by bitmask.
    Exhaustive,
}

pub enum Model {
    /// LP^MLN, ASP with weak constraints and multi-valued programs. The error is raised when
    /// no interpretation satisfies every hard rule, for dialects whose semantics demand that.
    Ground(GroundProgram, Option<Error>),
    Mln(GroundMln),
    /// ProbLog keeps its own semantics for probabilities; the translation serves weight tables.
    ProbLog(lpmln_core::frontends::problog::ProbLogProgram, GroundProgram),
    Plog(PlogModel),
}

/// One row of a models listing.
pub struct Row {
    pub atoms: Vec<GroundAtom>,
    /// 1-based indices of the satisfied rules or formulas; present in full tables.
    pub satisfied: Option<Vec<usize>>,
    pub weight: SymbolicWeight,
    pub prob: f64,
}

/// The LP^MLN program a source denotes (not grounded).
pub fn as_lpmln(src: &Source) -> Result<Program> {
    Ok(match src {
        Source::Lpmln(p) => p.clone(),
        Source::AspWeak(w) => weak_to_lpmln(w),
        Source::Mln(m) => mln_to_lpmln(&ground_mln(m)?).to_program(),
        Source::ProbLog(p) => problog_to_lpmln(p),
        Source::Mvpp(m) => mvpp_to_lpmln(m)?,
        Source::Plog(p) => mvpp_to_lpmln(&PlogModel::new(p)?.to_mvpp()?)?,
    })
}

pub fn ground(p: &Program, limits: &Limits) -> Result<GroundProgram> {
    ground_program_with_cap(p, limits.max_ground)
}

impl Model {
    pub fn load(src: &Source, limits: &Limits) -> Result<Model> {
        Ok(match src {
            Source::Mln(m) => Model::Mln(ground_mln(m)?),
            Source::ProbLog(p) => Model::ProbLog(p.clone(), ground(&problog_to_lpmln(p), limits)?),
            Source::Plog(p) => Model::Plog(PlogModel::new(p)?),
            other => {
                let strict = match other {
                    Source::AspWeak(_) => Some(Error::NoStableModel),
                    Source::Mvpp(_) => Some(Error::EmptySmDoublePrime),
                    _ => None,
                };
                Model::Ground(ground(&as_lpmln(other)?, limits)?, strict)
            }
        })
    }

    /// Probabilities of interpretations with nonzero probability, or of every interpretation
    /// when `all` is set.
    pub fn distribution(&self, engine: Engine, all: bool, limits: &Limits) -> Result<Distribution> {
        let full = all || engine == Engine::Exhaustive;
        match self {
            Model::Ground(g, strict) => {
                let d = if full { weight_table(g, limits)? } else { distribution(g, limits)? };
                match strict {
                    Some(e) if d.max_tier != Some(g.hard_count() as u64) => Err(e.clone()),
                    _ => Ok(d),
                }
            }
            Model::Mln(l) if full => mln_weight_table(l, limits),
            Model::Mln(l) => mln_distribution(l, limits),
            Model::ProbLog(_, g) if all => weight_table(g, limits),
            Model::ProbLog(p, _) => problog_distribution(p, limits),
            Model::Plog(m) => {
                let worlds = m.measure(limits)?;
                let weights = worlds
                    .into_iter()
                    .map(|w| {
                        let weight = if w.unnormalized > 0.0 {
                            SymbolicWeight::new(0, w.unnormalized.ln())
                        } else {
                            SymbolicWeight::Zero
                        };
                        (w.atoms, weight)
                    })
                    .collect();
                Ok(Distribution::from_weights(m.tau.universe.clone(), weights))
            }
        }
    }

    pub fn rows(&self, engine: Engine, all: bool, limits: &Limits) -> Result<Vec<Row>> {
        let d = self.distribution(engine, all, limits)?;
        let entries = d.entries.iter().filter(|e| all || e.prob > 0.0);
        Ok(entries
            .map(|e| Row {
                atoms: d.universe.to_interpretation(&e.atoms).into_iter().collect(),
                satisfied: all.then(|| self.satisfied(&e.atoms)).flatten(),
                weight: e.weight,
                prob: e.prob,
            })
            .collect())
    }

    fn satisfied(&self, i: &lpmln_core::logic::AtomSet) -> Option<Vec<usize>> {
        let truth = |a: &AtomId| i.contains(*a);
        let idx = match self {
            Model::Ground(g, _) | Model::ProbLog(_, g) => lpmln_core::infer::satisfied_rules(g, i),
            Model::Mln(l) => l
                .formulas
                .iter()
                .enumerate()
                .filter(|(_, (_, f))| f.eval(&truth))
                .map(|(k, _)| k)
                .collect(),
            Model::Plog(_) => return None,
        };
        Some(idx.into_iter().map(|k| k + 1).collect())
    }

    pub fn query(
        &self,
        q: &Formula<GroundAtom>,
        given: Option<&Formula<GroundAtom>>,
        engine: Engine,
        limits: &Limits,
    ) -> Result<f64> {
        let d = self.distribution(engine, false, limits)?;
        match given {
            Some(g) => d.cond_query(q, g),
            None => d.query(q),
        }
    }
}
