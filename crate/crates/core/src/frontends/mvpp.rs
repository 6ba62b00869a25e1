//! Multi-valued probabilistic programs: declarations `p1 : c=v1 | ... | pn : c=vn` plus rules.

use std::collections::HashMap;

use indexmap::IndexMap;

use crate::error::{Error, Result, ValidationError};
use crate::ground::{assignments, ground_program, herbrand_constants, GroundProgram, DEFAULT_MAX_GROUND};
use crate::infer::Distribution;
use crate::limits::Limits;
use crate::logic::{
    AtomId, AtomPattern, AtomSet, Body, ConstantKey, Formula, GroundAtom, Program, Range, Rule, Signature,
    SymbolicWeight, Term, Universe, Value, Weight, WeightedRule,
};
use crate::stable::hard_stable_models;

/// Declaration of a probabilistic constant `c(args)`; arguments may be typed variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MvppDecl {
    pub symbol: String,
    pub args: Vec<Term>,
    pub choices: Vec<(f64, Value)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundDecl {
    pub constant: ConstantKey,
    pub choices: Vec<(f64, Value)>,
}

impl GroundDecl {
    pub fn atom(&self, v: &Value) -> GroundAtom {
        self.constant.atom(Some(v.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct MvppProgram {
    pub signature: Signature,
    pub decls: Vec<MvppDecl>,
    pub rules: Vec<Rule<AtomPattern>>,
}

fn unifiable(a: &AtomPattern, symbol: &str, args: &[Term]) -> bool {
    a.symbol == symbol
        && a.args.len() == args.len()
        && a.args.iter().zip(args).all(|(x, y)| match (x, y) {
            (Term::Const(c), Term::Const(d)) => c == d,
            _ => true,
        })
}

impl MvppProgram {
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        self.signature.validate()?;
        for d in &self.decls {
            let name = AtomPattern {
                symbol: d.symbol.clone(),
                args: d.args.clone(),
                value: None,
            };
            if d.choices.is_empty() {
                return Err(ValidationError::new(format!("declaration of {name} has no values")));
            }
            let mut total = 0.0;
            for (i, (p, v)) in d.choices.iter().enumerate() {
                if !(0.0..=1.0).contains(p) {
                    return Err(ValidationError::new(format!("probability {p} for {name}={v} is outside [0,1]")));
                }
                if d.choices[..i].iter().any(|(_, w)| w == v) {
                    return Err(ValidationError::new(format!("declaration of {name} repeats value {v}")));
                }
                total += p;
            }
            if (total - 1.0).abs() > 1e-9 {
                return Err(ValidationError::new(format!("probabilities for {name} sum to {total}, not 1")));
            }
            if let Some(decl) = self.signature.constants.get(&d.symbol) {
                let dom: Vec<Value> = match &decl.range {
                    Range::Boolean => vec![Value::t(), Value::f()],
                    Range::Domain(n) => self.signature.domain_values(n).map_err(|e| ValidationError::new(e.to_string()))?,
                };
                let covered = dom.len() == d.choices.len() && dom.iter().all(|v| d.choices.iter().any(|(_, w)| w == v));
                if !covered {
                    return Err(ValidationError::new(format!(
                        "declaration of {name} must list every value of its domain exactly once"
                    )));
                }
            }
        }
        for r in &self.rules {
            for h in &r.head {
                if self.decls.iter().any(|d| unifiable(h, &d.symbol, &d.args)) {
                    return Err(ValidationError::new(format!(
                        "probabilistic constant {} may not occur in a rule head: {r}",
                        h.symbol
                    )));
                }
            }
        }
        Ok(())
    }

    fn herbrand(&self) -> Vec<Value> {
        let mut atoms: Vec<AtomPattern> = Vec::new();
        for r in &self.rules {
            r.for_each_atom(&mut |a| atoms.push(a.clone()));
        }
        for d in &self.decls {
            atoms.push(AtomPattern {
                symbol: d.symbol.clone(),
                args: d.args.clone(),
                value: None,
            });
        }
        herbrand_constants(atoms.iter())
    }

    /// Instantiates declarations over their variables' domains; each ground constant once.
    pub fn ground_decls(&self) -> Result<Vec<GroundDecl>> {
        let herbrand = self.herbrand();
        let mut out: Vec<GroundDecl> = Vec::new();
        for d in &self.decls {
            let mut vars: Vec<String> = Vec::new();
            for t in &d.args {
                if let Term::Var(v) = t {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
            for env in assignments(&self.signature, &vars, &herbrand, DEFAULT_MAX_GROUND)? {
                let args = d
                    .args
                    .iter()
                    .map(|t| t.substitute(&env).expect("all variables assigned"))
                    .collect();
                let constant = ConstantKey {
                    symbol: d.symbol.clone(),
                    args,
                };
                if out.iter().any(|g| g.constant == constant) {
                    return Err(ValidationError::new(format!("probabilistic constant {constant} is declared twice")).into());
                }
                out.push(GroundDecl {
                    constant,
                    choices: d.choices.clone(),
                });
            }
        }
        Ok(out)
    }
}

/// Atoms of the universe grouped by the constant they assign, in order of first appearance.
pub fn constant_groups(universe: &Universe) -> IndexMap<ConstantKey, Vec<AtomId>> {
    let mut groups: IndexMap<ConstantKey, Vec<AtomId>> = IndexMap::new();
    for (id, a) in universe.iter().enumerate() {
        groups.entry(a.constant()).or_default().push(id as AtomId);
    }
    groups
}

fn ground_pattern(a: &GroundAtom) -> AtomPattern {
    AtomPattern::from(a)
}

/// `T(Π)`: weighted declaration clauses, hard rules, uniqueness of value for every constant
/// and existence of value for every probabilistic constant.
pub fn mvpp_to_lpmln(m: &MvppProgram) -> Result<Program> {
    m.validate()?;
    let decls = m.ground_decls()?;
    let mut rules = Vec::new();
    for d in &decls {
        for (p, v) in &d.choices {
            let a = ground_pattern(&d.atom(v));
            if *p >= 1.0 {
                rules.push(WeightedRule::hard(Rule::fact(a)));
            } else if *p <= 0.0 {
                rules.push(WeightedRule::hard(Rule::constraint(Body::new(vec![a], vec![]))));
            } else {
                rules.push(WeightedRule::soft(p.ln(), Rule::fact(a)));
            }
        }
    }
    rules.extend(m.rules.iter().cloned().map(WeightedRule::hard));
    let base = Program::new(m.signature.clone(), rules);
    let g = ground_program(&base)?;
    let mut out = base;
    for ids in constant_groups(&g.universe).values() {
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                let (a, b) = (g.universe.atom(ids[i]), g.universe.atom(ids[j]));
                out.rules.push(WeightedRule::hard(Rule::constraint(Body::new(
                    vec![ground_pattern(a), ground_pattern(b)],
                    vec![],
                ))));
            }
        }
    }
    for d in &decls {
        let values = Formula::disj(d.choices.iter().map(|(_, v)| Formula::Atom(ground_pattern(&d.atom(v)))).collect());
        out.rules.push(WeightedRule::hard(Rule::constraint(Body::new(vec![], vec![Formula::not(values)]))));
    }
    Ok(out)
}

/// `P″`: each consistent stable model of `Π ∪ TC(I)` weighted by the product of the
/// declared probabilities of its total choice.
pub fn mvpp_direct_distribution(m: &MvppProgram, limits: &Limits) -> Result<Distribution> {
    m.validate()?;
    let decls = m.ground_decls()?;
    for d in &decls {
        if let Some((_, v)) = d.choices.iter().find(|(p, _)| *p <= 0.0) {
            return Err(Error::ZeroProbabilityDeclared(d.atom(v).to_string()));
        }
    }
    let base = Program::new(m.signature.clone(), m.rules.iter().cloned().map(WeightedRule::hard).collect());
    let mut g: GroundProgram = ground_program(&base)?;
    for d in &decls {
        g.extend_universe(d.choices.iter().map(|(_, v)| d.atom(v)));
    }
    let groups = constant_groups(&g.universe);
    let consistent = |i: &AtomSet| groups.values().all(|ids| ids.iter().filter(|&&a| i.contains(a)).count() <= 1);
    let choice_ids: Vec<Vec<(f64, AtomId)>> = decls
        .iter()
        .map(|d| {
            d.choices
                .iter()
                .map(|(p, v)| (*p, g.universe.id(&g.signature.normalize(d.atom(v))).expect("interned above")))
                .collect()
        })
        .collect();
    let total: u128 = choice_ids.iter().map(|c| c.len() as u128).product();
    if total > limits.max_search_nodes as u128 {
        return Err(Error::SearchBudget {
            cap: limits.max_search_nodes,
        });
    }
    let n = g.atom_count();
    let mut weights: HashMap<AtomSet, f64> = HashMap::new();
    let mut index = vec![0usize; choice_ids.len()];
    loop {
        let mut rules = g.rules.clone();
        let mut logp = 0.0;
        for (k, &j) in index.iter().enumerate() {
            let (p, a) = choice_ids[k][j];
            logp += p.ln();
            rules.push(WeightedRule::new(Weight::Hard, Rule::fact(a)));
        }
        for i in hard_stable_models(n, &rules, limits)? {
            if consistent(&i) {
                weights.insert(i, logp);
            }
        }
        // odometer over the total choices
        let mut k = index.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            index[k] += 1;
            if index[k] < choice_ids[k].len() {
                break;
            }
            index[k] = 0;
        }
        if index.iter().all(|&j| j == 0) {
            break;
        }
    }
    if weights.is_empty() {
        return Err(Error::EmptySmDoublePrime);
    }
    let mut entries: Vec<(AtomSet, SymbolicWeight)> =
        weights.into_iter().map(|(i, w)| (i, SymbolicWeight::new(0, w))).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Distribution::from_weights(g.universe.clone(), entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infer::{distribution, max_difference};

    fn outcome() -> MvppProgram {
        let mut choices = vec![(0.25, Value::Int(6))];
        for v in (1..=5).rev() {
            choices.push((0.15, Value::Int(v)));
        }
        MvppProgram {
            signature: Signature::default(),
            decls: vec![MvppDecl {
                symbol: "outcome".into(),
                args: vec![],
                choices,
            }],
            rules: vec![Rule::new(
                vec![AtomPattern::from(GroundAtom::prop("win"))],
                vec![AtomPattern::from(GroundAtom::with_value("outcome", vec![], Value::Int(6)))],
                vec![],
            )],
        }
    }

    #[test]
    fn dice_win_probability() {
        let m = outcome();
        let lim = Limits::default();
        let t = mvpp_to_lpmln(&m).unwrap();
        // 6 declaration clauses, 1 rule, 15 uniqueness pairs, 1 existence constraint
        assert_eq!(t.rules.len(), 6 + 1 + 15 + 1);
        let d = distribution(&ground_program(&t).unwrap(), &lim).unwrap();
        let win = Formula::Atom(GroundAtom::prop("win"));
        assert!((d.query(&win).unwrap() - 0.25).abs() < 1e-12);
        let direct = mvpp_direct_distribution(&m, &lim).unwrap();
        assert!(max_difference(&d.to_map(), &direct.to_map()) < 1e-12);
    }

    #[test]
    fn boolean_constant_without_rules() {
        let m = MvppProgram {
            decls: vec![MvppDecl {
                symbol: "c".into(),
                args: vec![],
                choices: vec![(0.6, Value::t()), (0.4, Value::f())],
            }],
            ..Default::default()
        };
        let d = mvpp_direct_distribution(&m, &Limits::default()).unwrap();
        let c = Formula::Atom(GroundAtom::prop("c"));
        assert!((d.query(&c).unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_declarations() {
        let mut m = outcome();
        m.decls[0].choices[0].0 = 0.3;
        assert!(m.validate().is_err());
        let mut m = outcome();
        m.rules[0].head[0] = AtomPattern::from(GroundAtom::with_value("outcome", vec![], Value::Int(1)));
        assert!(m.validate().is_err());
    }
}
