//! Instantiation of non-ground programs over finite domains.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result, ValidationError};
use crate::logic::program::rule_vars;
use crate::logic::signature::cartesian;
use crate::logic::{
    AtomId, AtomPattern, Formula, GroundAtom, Program, Rule, Signature, Term, Universe, Value, Weight,
    WeightedRule,
};

pub const DEFAULT_MAX_GROUND: usize = 100_000;

/// A variable-free program over an interned atom universe.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundProgram {
    pub signature: Signature,
    pub universe: Universe,
    pub rules: Vec<WeightedRule<AtomId>>,
    /// Index of the source rule each ground rule was instantiated from.
    pub provenance: Vec<usize>,
}

impl GroundProgram {
    /// Interns ground rules. The universe lists the signature's declared atoms
    /// first, then atoms in order of first appearance (head, positive body, negative body).
    pub fn from_rules(signature: Signature, rules: Vec<WeightedRule<GroundAtom>>) -> Result<Self> {
        let mut universe = Universe::from_atoms(signature.declared_atoms()?);
        let provenance = (0..rules.len()).collect();
        let rules = rules
            .iter()
            .map(|r| intern_rule(&signature, &mut universe, r))
            .collect();
        Ok(GroundProgram {
            signature,
            universe,
            rules,
            provenance,
        })
    }

    pub fn empty() -> Self {
        GroundProgram {
            signature: Signature::default(),
            universe: Universe::new(),
            rules: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.universe.len()
    }

    pub fn hard_count(&self) -> usize {
        self.rules.iter().filter(|r| r.weight.is_hard()).count()
    }

    pub fn rule(&self, i: usize) -> WeightedRule<GroundAtom> {
        let r = &self.rules[i];
        WeightedRule::new(r.weight, r.rule.map(&mut |&a| self.universe.atom(a).clone()))
    }

    pub fn ground_rules(&self) -> Vec<WeightedRule<GroundAtom>> {
        (0..self.rules.len()).map(|i| self.rule(i)).collect()
    }

    /// The same rules as a (variable-free) [`Program`].
    pub fn to_program(&self) -> Program {
        Program::from_ground(self.signature.clone(), self.ground_rules())
    }

    /// A new program over the same universe with the given rules.
    pub fn with_rules(&self, rules: Vec<WeightedRule<AtomId>>) -> GroundProgram {
        GroundProgram {
            signature: self.signature.clone(),
            universe: self.universe.clone(),
            provenance: (0..rules.len()).collect(),
            rules,
        }
    }

    /// Adds ground rules, interning any new atoms.
    pub fn push_rule(&mut self, rule: &WeightedRule<GroundAtom>) {
        let r = intern_rule(&self.signature, &mut self.universe, rule);
        self.provenance.push(self.rules.len());
        self.rules.push(r);
    }

    /// Adds atoms to the universe without rules.
    pub fn extend_universe(&mut self, atoms: impl IntoIterator<Item = GroundAtom>) {
        for a in atoms {
            self.universe.intern(self.signature.normalize(a));
        }
    }
}

fn intern_rule(sig: &Signature, universe: &mut Universe, r: &WeightedRule<GroundAtom>) -> WeightedRule<AtomId> {
    let head: Vec<AtomId> = r.rule.head.iter().map(|a| universe.intern(sig.normalize(a.clone()))).collect();
    let pos: Vec<AtomId> = r.rule.body.pos.iter().map(|a| universe.intern(sig.normalize(a.clone()))).collect();
    let neg: Vec<Formula<AtomId>> = r
        .rule
        .body
        .neg
        .iter()
        .map(|n| n.map(&mut |a: &GroundAtom| universe.intern(sig.normalize(a.clone()))))
        .collect();
    WeightedRule::new(r.weight, Rule::new(head, pos, neg))
}

impl fmt::Display for GroundProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rules.len() {
            writeln!(f, "{}", self.rule(i))?;
        }
        Ok(())
    }
}

/// Constants occurring in argument positions of the given atoms, in order of appearance.
pub fn herbrand_constants<'a>(atoms: impl IntoIterator<Item = &'a AtomPattern>) -> Vec<Value> {
    let mut out: Vec<Value> = Vec::new();
    for a in atoms {
        for t in &a.args {
            if let Term::Const(c) = t {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
    }
    out
}

/// Herbrand constants of a whole program.
pub fn program_constants(p: &Program) -> Vec<Value> {
    let mut atoms = Vec::new();
    for r in &p.rules {
        r.rule.for_each_atom(&mut |a| atoms.push(a));
    }
    herbrand_constants(atoms)
}

/// All variable assignments in lexicographic order. Declared variables range over their
/// domain; undeclared ones over `herbrand`.
pub fn assignments(
    sig: &Signature,
    vars: &[String],
    herbrand: &[Value],
    cap: usize,
) -> Result<Vec<HashMap<String, Value>>> {
    let domains = vars
        .iter()
        .map(|v| match sig.vars.get(v) {
            Some(d) => {
                let vals = sig.domain_values(d)?;
                if vals.is_empty() {
                    return Err(Error::EmptyDomain(d.clone()));
                }
                Ok(vals)
            }
            None => Ok(herbrand.to_vec()),
        })
        .collect::<Result<Vec<_>>>()?;
    let count: u128 = domains.iter().map(|d| d.len() as u128).product();
    if count > cap as u128 {
        return Err(Error::GroundingExplosion { count, cap });
    }
    Ok(cartesian(&domains)
        .into_iter()
        .map(|vals| vars.iter().cloned().zip(vals).collect())
        .collect())
}

/// Checks arity and value membership for atoms of declared constants.
pub fn check_atom(sig: &Signature, atom: &GroundAtom) -> std::result::Result<(), ValidationError> {
    let Some(decl) = sig.constants.get(&atom.symbol) else {
        return Ok(());
    };
    if decl.args.len() != atom.args.len() {
        return Err(ValidationError::new(format!(
            "{} expects {} argument(s), found {} in {atom}",
            atom.symbol,
            decl.args.len(),
            atom.args.len()
        )));
    }
    for (d, v) in decl.args.iter().zip(&atom.args) {
        let vals = sig.domain_values(d).map_err(|e| ValidationError::new(e.to_string()))?;
        if !vals.contains(v) {
            return Err(ValidationError::new(format!("{v} is not in domain {d} (in {atom})")));
        }
    }
    let values = sig
        .const_values(&atom.symbol)
        .map_err(|e| ValidationError::new(e.to_string()))?
        .unwrap_or_default();
    let normalized = sig.normalize(atom.clone());
    if !values.contains(&normalized.value) {
        return Err(ValidationError::new(format!("{atom} assigns a value outside the range of {}", atom.symbol)));
    }
    Ok(())
}

fn ground_rule(
    sig: &Signature,
    herbrand: &[Value],
    rule: &WeightedRule<AtomPattern>,
    cap: usize,
) -> Result<Vec<WeightedRule<GroundAtom>>> {
    let vars = rule_vars(&rule.rule);
    let mut out = Vec::new();
    for env in assignments(sig, &vars, herbrand, cap)? {
        let mut keep = true;
        for b in &rule.rule.body.builtins {
            if !b.eval(&env).map_err(Error::Builtin)? {
                keep = false;
                break;
            }
        }
        if !keep {
            continue;
        }
        let g = rule.rule.try_map(&mut |a: &AtomPattern| {
            let g = a
                .substitute(&env)
                .ok_or_else(|| Error::Builtin(format!("unbound variable in {a}")))?;
            check_atom(sig, &g)?;
            Ok::<_, Error>(sig.normalize(g))
        })?;
        let mut g = g;
        g.body.builtins.clear();
        out.push(WeightedRule::new(rule.weight, g));
    }
    Ok(out)
}

/// `gr[Π]`: every rule instantiated with every assignment of its variables; builtins
/// are evaluated and removed. Rule order is source order, then assignment order.
pub fn ground_program(p: &Program) -> Result<GroundProgram> {
    ground_program_with_cap(p, DEFAULT_MAX_GROUND)
}

pub fn ground_program_with_cap(p: &Program, cap: usize) -> Result<GroundProgram> {
    p.signature.validate()?;
    let herbrand = program_constants(p);
    let per_rule: Vec<Vec<WeightedRule<GroundAtom>>> = p
        .rules
        .par_iter()
        .map(|r| ground_rule(&p.signature, &herbrand, r, cap))
        .collect::<Result<_>>()?;
    let total: usize = per_rule.iter().map(Vec::len).sum();
    if total > cap {
        return Err(Error::GroundingExplosion {
            count: total as u128,
            cap,
        });
    }
    let mut provenance = Vec::with_capacity(total);
    let mut rules = Vec::with_capacity(total);
    for (i, rs) in per_rule.into_iter().enumerate() {
        provenance.extend(std::iter::repeat_n(i, rs.len()));
        rules.extend(rs);
    }
    let mut g = GroundProgram::from_rules(p.signature.clone(), rules)?;
    g.provenance = provenance;
    Ok(g)
}

/// The ordered atom universe of a program: declared atoms, then atoms of ground rules.
pub fn ground_atoms(p: &Program) -> Result<Vec<GroundAtom>> {
    Ok(ground_program(p)?.universe.iter().cloned().collect())
}

/// Grounds a weighted formula with free variables (used for MLN input).
pub fn ground_formula(
    sig: &Signature,
    herbrand: &[Value],
    weight: Weight,
    f: &Formula<AtomPattern>,
    cap: usize,
) -> Result<Vec<(Weight, Formula<GroundAtom>)>> {
    let mut vars: Vec<String> = Vec::new();
    f.for_each_atom(&mut |a| {
        for v in a.vars() {
            if !vars.iter().any(|x| x == v) {
                vars.push(v.to_string());
            }
        }
    });
    assignments(sig, &vars, herbrand, cap)?
        .into_iter()
        .map(|env| {
            let g = f.try_map(&mut |a: &AtomPattern| {
                let g = a
                    .substitute(&env)
                    .ok_or_else(|| Error::Builtin(format!("unbound variable in {a}")))?;
                check_atom(sig, &g)?;
                Ok::<_, Error>(sig.normalize(g))
            })?;
            Ok((weight, g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Body, Builtin, CmpOp, DomainSpec, Expr};

    fn pat(sym: &str, args: &[Term]) -> AtomPattern {
        AtomPattern {
            symbol: sym.into(),
            args: args.to_vec(),
            value: None,
        }
    }

    fn var(x: &str) -> Term {
        Term::Var(x.into())
    }

    #[test]
    fn builtin_filters_instances() {
        let mut sig = Signature::default();
        sig.domains.insert("face".into(), DomainSpec::Range(1, 6));
        sig.vars.insert("Y".into(), "face".into());
        let mut body = Body::new(vec![pat("roll", &[var("Y")])], vec![]);
        body.builtins.push(Builtin {
            lhs: Expr::Mod(Box::new(Expr::Term(var("Y"))), Box::new(Expr::Term(Term::Const(Value::Int(2))))),
            op: CmpOp::Eq,
            rhs: Expr::Term(Term::Const(Value::Int(0))),
        });
        let rule = Rule {
            head: vec![pat("even", &[])],
            body,
        };
        let p = Program::new(sig, vec![WeightedRule::hard(rule)]);
        let g = ground_program(&p).unwrap();
        let heads: Vec<String> = g.ground_rules().iter().map(|r| r.rule.body.pos[0].to_string()).collect();
        assert_eq!(heads, vec!["roll(2)", "roll(4)", "roll(6)"]);
    }

    #[test]
    fn empty_program_has_empty_universe() {
        assert!(ground_atoms(&Program::default()).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let mut sig = Signature::default();
        sig.domains.insert("d".into(), DomainSpec::Range(1, 100));
        for v in ["X", "Y", "Z"] {
            sig.vars.insert(v.into(), "d".into());
        }
        let rule = Rule::fact(pat("p", &[var("X"), var("Y"), var("Z")]));
        let p = Program::new(sig, vec![WeightedRule::hard(rule)]);
        assert!(matches!(ground_program(&p), Err(Error::GroundingExplosion { .. })));
    }
}
