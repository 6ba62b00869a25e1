//! Simple P-log: normal rules, random selection rules `[r] random(c) :- B`, probability
//! atoms `pr_r(c=v | B) = p`, observations and interventions.
//!
//! Auxiliary atoms introduced by the translations use reserved names:
//! `obs__c(args,v)`, `do__c(args,v)`, `intervene__c(args)`, `assigned__r(args)`,
//! `pf__r__k(args)` for the `k`-th distinct pr-atom body of rule `r` and `pf__r__dflt(args)`.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::ground::{assignments, check_atom, herbrand_constants, GroundProgram, DEFAULT_MAX_GROUND};
use crate::limits::Limits;
use crate::logic::program::rule_vars;
use crate::logic::{
    AtomId, AtomPattern, AtomSet, Body, ConstantKey, Formula, GroundAtom, Interpretation, Rule, Signature, Term,
    Value, WeightedRule,
};
use crate::stable::hard_stable_models;

use super::mvpp::{MvppDecl, MvppProgram};

/// `[id(id_args)] random(atom) :- body.`
#[derive(Clone, Debug, PartialEq)]
pub struct RandomRule {
    pub id: String,
    pub id_args: Vec<Term>,
    pub atom: AtomPattern,
    pub body: Body<AtomPattern>,
}

/// `[rule] pr(atom | body) = prob.` The selection rule may be left implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct PrAtom {
    pub rule: Option<(String, Vec<Term>)>,
    pub atom: AtomPattern,
    pub body: Body<AtomPattern>,
    pub prob: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PlogProgram {
    pub signature: Signature,
    pub rules: Vec<Rule<AtomPattern>>,
    pub random: Vec<RandomRule>,
    pub pr: Vec<PrAtom>,
    pub obs: Vec<GroundAtom>,
    pub act: Vec<GroundAtom>,
}

/// A set of literals: sorted positive atoms and sorted negated atoms.
pub type LiteralSet = (Vec<GroundAtom>, Vec<GroundAtom>);

#[derive(Clone, Debug, PartialEq)]
pub struct GroundRandom {
    pub name: String,
    pub args: Vec<Value>,
    pub constant: ConstantKey,
    pub domain: Vec<Value>,
    pub body: Body<GroundAtom>,
}

impl GroundRandom {
    pub fn label(&self) -> String {
        ConstantKey {
            symbol: self.name.clone(),
            args: self.args.clone(),
        }
        .to_string()
    }

    fn aux(&self, prefix: &str, suffix: &str) -> ConstantKey {
        ConstantKey {
            symbol: format!("{prefix}__{}{suffix}", self.name),
            args: self.args.clone(),
        }
    }

    pub fn assigned_atom(&self) -> GroundAtom {
        self.aux("assigned", "").atom(None)
    }

    /// `pf` constant for the `k`-th body group (`None` is the default distribution).
    pub fn pf_constant(&self, group: Option<usize>) -> ConstantKey {
        match group {
            Some(k) => self.aux("pf", &format!("__{}", k + 1)),
            None => self.aux("pf", "__dflt"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundPr {
    pub rule: usize,
    pub value: Value,
    pub body: LiteralSet,
    pub prob: f64,
}

pub fn obs_atom(a: &GroundAtom) -> GroundAtom {
    let mut args = a.args.clone();
    args.push(a.value_or_true());
    GroundAtom::new(format!("obs__{}", a.symbol), args)
}

pub fn do_atom(a: &GroundAtom) -> GroundAtom {
    let mut args = a.args.clone();
    args.push(a.value_or_true());
    GroundAtom::new(format!("do__{}", a.symbol), args)
}

pub fn intervene_atom(c: &ConstantKey) -> GroundAtom {
    GroundAtom::new(format!("intervene__{}", c.symbol), c.args.clone())
}

fn literal_body(l: &LiteralSet) -> Body<GroundAtom> {
    Body::new(l.0.clone(), l.1.iter().map(|a| Formula::not(Formula::Atom(a.clone()))).collect())
}

fn literal_set(sig: &Signature, body: &Body<GroundAtom>) -> std::result::Result<LiteralSet, String> {
    let mut pos: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut neg: BTreeSet<GroundAtom> = BTreeSet::new();
    for a in &body.pos {
        pos.insert(sig.normalize(a.clone()));
    }
    for n in &body.neg {
        match n {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => {
                    neg.insert(sig.normalize(a.clone()));
                }
                _ => return Err(format!("P-log bodies allow only literals, found {n}")),
            },
            _ => return Err(format!("P-log bodies allow only literals, found {n}")),
        }
    }
    Ok((pos.into_iter().collect(), neg.into_iter().collect()))
}

fn merge(parts: &[&Body<GroundAtom>]) -> Body<GroundAtom> {
    let mut b = Body::default();
    for p in parts {
        b.pos.extend(p.pos.iter().cloned());
        b.neg.extend(p.neg.iter().cloned());
    }
    b
}

/// Instantiates `body` and the atoms in `extra` under `env`; `None` if a builtin fails.
fn instantiate(
    sig: &Signature,
    body: &Body<AtomPattern>,
    env: &HashMap<String, crate::logic::Value>,
) -> Result<Option<Body<GroundAtom>>> {
    for b in &body.builtins {
        if !b.eval(env).map_err(Error::Builtin)? {
            return Ok(None);
        }
    }
    let g = body.try_map(&mut |a: &AtomPattern| {
        let g = a
            .substitute(env)
            .ok_or_else(|| Error::Builtin(format!("unbound variable in {a}")))?;
        check_atom(sig, &g)?;
        Ok::<_, Error>(sig.normalize(g))
    })?;
    Ok(Some(Body::new(g.pos, g.neg)))
}

fn ground_atom(sig: &Signature, a: &AtomPattern, env: &HashMap<String, Value>) -> Result<GroundAtom> {
    let g = a
        .substitute(env)
        .ok_or_else(|| Error::Builtin(format!("unbound variable in {a}")))?;
    check_atom(sig, &g)?;
    Ok(g)
}

fn vars_of(atoms: &[&AtomPattern], body: &Body<AtomPattern>, extra: &[Term]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut push = |v: &str| {
        if !out.iter().any(|o| o == v) {
            out.push(v.to_string());
        }
    };
    for t in extra {
        if let Term::Var(v) = t {
            push(v);
        }
    }
    for a in atoms {
        a.vars().for_each(&mut push);
    }
    body.for_each_atom(&mut |a: &AtomPattern| a.vars().for_each(&mut push));
    for b in &body.builtins {
        for v in b.vars() {
            push(&v);
        }
    }
    out
}

/// A grounded P-log program with its static diagnostics.
#[derive(Clone, Debug)]
pub struct GroundPlog {
    pub signature: Signature,
    pub rules: Vec<Rule<GroundAtom>>,
    pub random: Vec<GroundRandom>,
    pub pr: Vec<GroundPr>,
    pub obs: Vec<GroundAtom>,
    pub act: Vec<GroundAtom>,
    pub diagnostics: Vec<String>,
}

impl GroundPlog {
    /// Distinct pr-atom bodies of selection rule `r`, in order of first appearance.
    pub fn body_groups(&self, r: usize) -> Vec<LiteralSet> {
        let mut out: Vec<LiteralSet> = Vec::new();
        for p in self.pr.iter().filter(|p| p.rule == r) {
            if !out.contains(&p.body) {
                out.push(p.body.clone());
            }
        }
        out
    }

    fn intervened_by_act(&self, c: &ConstantKey) -> bool {
        self.act.iter().any(|a| a.constant() == *c)
    }
}

pub fn ground_plog(p: &PlogProgram) -> Result<GroundPlog> {
    let sig = &p.signature;
    sig.validate()?;
    let mut atoms: Vec<AtomPattern> = Vec::new();
    for r in &p.rules {
        r.for_each_atom(&mut |a| atoms.push(a.clone()));
    }
    for r in &p.random {
        atoms.push(r.atom.clone());
        r.body.for_each_atom(&mut |a| atoms.push(a.clone()));
    }
    for pr in &p.pr {
        atoms.push(pr.atom.clone());
        pr.body.for_each_atom(&mut |a| atoms.push(a.clone()));
    }
    let herbrand = herbrand_constants(atoms.iter());
    let mut diagnostics = Vec::new();

    let mut rules = Vec::new();
    for r in &p.rules {
        if r.head.len() > 1 {
            diagnostics.push(format!("P-log rules have at most one head atom: {r}"));
        }
        for env in assignments(sig, &rule_vars(r), &herbrand, DEFAULT_MAX_GROUND)? {
            let Some(body) = instantiate(sig, &r.body, &env)? else {
                continue;
            };
            if let Err(e) = literal_set(sig, &body) {
                diagnostics.push(e);
            }
            let head = r
                .head
                .iter()
                .map(|a| ground_atom(sig, a, &env).map(|g| sig.normalize(g)))
                .collect::<Result<_>>()?;
            rules.push(Rule { head, body });
        }
    }

    let mut random: Vec<GroundRandom> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    for (i, r) in p.random.iter().enumerate() {
        if let Some(j) = names.insert(r.id.clone(), i) {
            if j != i {
                diagnostics.push(format!("selection rule identifier {} is used twice", r.id));
            }
        }
        if r.atom.value.is_some() {
            diagnostics.push(format!("random({}) must name a constant, not an atom with a value", r.atom));
        }
        let domain: Vec<Value> = match sig.const_values(&r.atom.symbol)? {
            Some(vals) => vals.into_iter().map(|v| v.unwrap_or_else(Value::t)).collect(),
            None => {
                diagnostics.push(format!("random constant {} has no declared range", r.atom.symbol));
                continue;
            }
        };
        for env in assignments(sig, &vars_of(&[&r.atom], &r.body, &r.id_args), &herbrand, DEFAULT_MAX_GROUND)? {
            let Some(body) = instantiate(sig, &r.body, &env)? else {
                continue;
            };
            if let Err(e) = literal_set(sig, &body) {
                diagnostics.push(e);
            }
            let mut probe = r.atom.clone();
            probe.value = Some(Term::Const(domain[0].clone()));
            let c = ground_atom(sig, &probe, &env)?.constant();
            let args: Vec<Value> = r.id_args.iter().map(|t| t.substitute(&env).expect("assigned")).collect();
            let g = GroundRandom {
                name: r.id.clone(),
                args,
                constant: c,
                domain: domain.clone(),
                body,
            };
            if random.iter().any(|o| o.name == g.name && o.args == g.args) {
                diagnostics.push(format!(
                    "selection rule identifier {} names several ground rules; give it the rule's variables as arguments",
                    g.label()
                ));
            }
            random.push(g);
        }
    }

    let mut pr: Vec<GroundPr> = Vec::new();
    for a in &p.pr {
        if !(0.0..=1.0).contains(&a.prob) {
            diagnostics.push(format!("probability {} of pr({}) is outside [0,1]", a.prob, a.atom));
        }
        let id_args: Vec<Term> = a.rule.as_ref().map(|r| r.1.clone()).unwrap_or_default();
        for env in assignments(sig, &vars_of(&[&a.atom], &a.body, &id_args), &herbrand, DEFAULT_MAX_GROUND)? {
            let Some(body) = instantiate(sig, &a.body, &env)? else {
                continue;
            };
            let body = match literal_set(sig, &body) {
                Ok(b) => b,
                Err(e) => {
                    diagnostics.push(e);
                    continue;
                }
            };
            let atom = ground_atom(sig, &a.atom, &env)?;
            let c = atom.constant();
            let rule = match &a.rule {
                Some((name, args)) => {
                    let args: Vec<Value> = args.iter().map(|t| t.substitute(&env).expect("assigned")).collect();
                    random.iter().position(|r| r.name == *name && r.args == args)
                }
                None => {
                    let matches: Vec<usize> =
                        random.iter().enumerate().filter(|(_, r)| r.constant == c).map(|(i, _)| i).collect();
                    if matches.len() > 1 {
                        diagnostics.push(format!(
                            "pr({atom}) matches several selection rules for {c}; name the rule explicitly"
                        ));
                        continue;
                    }
                    matches.first().copied()
                }
            };
            let Some(rule) = rule else {
                diagnostics.push(format!("pr({atom}) refers to no selection rule for {c}"));
                continue;
            };
            if random[rule].constant != c {
                diagnostics.push(format!(
                    "pr({atom}) is attached to rule {} which selects {}",
                    random[rule].label(),
                    random[rule].constant
                ));
                continue;
            }
            let value = atom.value_or_true();
            if !random[rule].domain.contains(&value) {
                diagnostics.push(format!("{value} is not a value of {c}"));
                continue;
            }
            let g = GroundPr {
                rule,
                value,
                body,
                prob: a.prob,
            };
            if pr.iter().any(|o| o.rule == g.rule && o.body == g.body && o.value == g.value) {
                diagnostics.push(format!("pr({atom}) is assigned twice for the same condition"));
                continue;
            }
            pr.push(g);
        }
    }

    let gp = GroundPlog {
        signature: sig.clone(),
        rules,
        random,
        pr,
        obs: p.obs.iter().map(|a| sig.normalize(a.clone())).collect(),
        act: p.act.iter().map(|a| sig.normalize(a.clone())).collect(),
        diagnostics,
    };
    let mut diagnostics = Vec::new();
    for a in gp.obs.iter().chain(&gp.act) {
        if let Err(e) = check_atom(sig, a) {
            diagnostics.push(e.message);
        }
    }
    for (r, rule) in gp.random.iter().enumerate() {
        for body in gp.body_groups(r) {
            let total: f64 = gp.pr.iter().filter(|p| p.rule == r && p.body == body).map(|p| p.prob).sum();
            if total > 1.0 + 1e-9 {
                diagnostics.push(format!(
                    "pr-atoms of rule {} for {} under the same condition sum to {total} > 1",
                    rule.label(),
                    rule.constant
                ));
            }
        }
    }
    let mut gp = gp;
    gp.diagnostics.extend(diagnostics);
    Ok(gp)
}

/// `τ(Π)` as hard ground rules, over the program's atoms plus the reserved auxiliaries.
pub fn tau_rules(gp: &GroundPlog) -> Result<Vec<WeightedRule<GroundAtom>>> {
    let mut base: Vec<WeightedRule<GroundAtom>> = gp.rules.iter().cloned().map(WeightedRule::hard).collect();
    for r in &gp.random {
        let head = r.domain.iter().map(|v| gp.signature.normalize(r.constant.atom(Some(v.clone())))).collect();
        let mut body = r.body.clone();
        body.neg.push(Formula::not(Formula::Atom(intervene_atom(&r.constant))));
        base.push(WeightedRule::hard(Rule { head, body }));
    }
    // σ: declared atoms, then atoms of the rules, pr-atoms, observations and actions
    let mut sigma = GroundProgram::from_rules(gp.signature.clone(), Vec::new())?;
    for r in &gp.rules {
        r.for_each_atom(&mut |a| {
            sigma.universe.intern(a.clone());
        });
    }
    for r in &gp.random {
        for v in &r.domain {
            sigma.universe.intern(gp.signature.normalize(r.constant.atom(Some(v.clone()))));
        }
        r.body.for_each_atom(&mut |a| {
            sigma.universe.intern(a.clone());
        });
    }
    for p in &gp.pr {
        let c = &gp.random[p.rule].constant;
        sigma.universe.intern(gp.signature.normalize(c.atom(Some(p.value.clone()))));
        for a in p.body.0.iter().chain(&p.body.1) {
            sigma.universe.intern(a.clone());
        }
    }
    sigma.extend_universe(gp.obs.iter().chain(&gp.act).cloned());
    for a in &gp.obs {
        base.push(WeightedRule::hard(Rule::fact(obs_atom(a))));
    }
    for a in &gp.act {
        base.push(WeightedRule::hard(Rule::fact(do_atom(a))));
    }
    for a in sigma.universe.iter() {
        base.push(WeightedRule::hard(Rule::new(
            vec![],
            vec![obs_atom(a)],
            vec![Formula::not(Formula::Atom(a.clone()))],
        )));
    }
    for a in sigma.universe.iter() {
        base.push(WeightedRule::hard(Rule::new(vec![a.clone()], vec![do_atom(a)], vec![])));
    }
    for a in sigma.universe.iter() {
        base.push(WeightedRule::hard(Rule::new(
            vec![intervene_atom(&a.constant())],
            vec![do_atom(a)],
            vec![],
        )));
    }
    Ok(base)
}

/// `τ(Π)`, whose stable models are the possible worlds.
pub fn plog_tau(p: &PlogProgram) -> Result<GroundProgram> {
    let gp = ground_plog(p)?;
    GroundProgram::from_rules(gp.signature.clone(), tau_rules(&gp)?)
}

/// The experiment behind one random atom of a world.
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    /// Index of the applied selection rule.
    pub rule: usize,
    /// Value the world gives the constant, if any.
    pub value: Option<Value>,
    /// Body group of the applied pr-atoms; `None` when the default distribution applies.
    pub group: Option<usize>,
    /// `P(W, c=v)`.
    pub prob: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct World {
    pub atoms: AtomSet,
    pub selections: Vec<Selection>,
    /// `μ̂(W)`.
    pub unnormalized: f64,
    /// `μ(W)`.
    pub prob: f64,
}

/// A ground P-log program together with `τ(Π)`.
#[derive(Clone, Debug)]
pub struct PlogModel {
    pub ground: GroundPlog,
    pub tau: GroundProgram,
}

impl PlogModel {
    pub fn new(p: &PlogProgram) -> Result<Self> {
        let ground = ground_plog(p)?;
        let tau = GroundProgram::from_rules(ground.signature.clone(), tau_rules(&ground)?)?;
        Ok(PlogModel { ground, tau })
    }

    /// Stable models of `τ(Π)` in ascending bitmask order.
    pub fn possible_worlds(&self, limits: &Limits) -> Result<Vec<AtomSet>> {
        hard_stable_models(self.tau.atom_count(), &self.tau.rules, limits)
    }

    fn holds(&self, w: &AtomSet, a: &GroundAtom) -> bool {
        self.tau.universe.id(a).is_some_and(|id| w.contains(id))
    }

    fn body_holds(&self, w: &AtomSet, b: &Body<GroundAtom>) -> bool {
        b.is_true(&|a: &GroundAtom| self.holds(w, a))
    }

    fn literals_hold(&self, w: &AtomSet, l: &LiteralSet) -> bool {
        l.0.iter().all(|a| self.holds(w, a)) && l.1.iter().all(|a| !self.holds(w, a))
    }

    /// Causal probabilities of the random atoms of `w`; assumption violations are
    /// appended to `diagnostics`.
    pub fn analyze(&self, w: &AtomSet, diagnostics: &mut Vec<String>) -> Result<Vec<Selection>> {
        let gp = &self.ground;
        let mut out = Vec::new();
        let mut seen: Vec<&ConstantKey> = Vec::new();
        for (ri, r) in gp.random.iter().enumerate() {
            if !self.body_holds(w, &r.body) {
                continue;
            }
            let c = &r.constant;
            if seen.contains(&c) {
                diagnostics.push(format!(
                    "unique random selection violated: several rules for {c} apply in world {}",
                    self.tau.universe.show(w)
                ));
                continue;
            }
            seen.push(c);
            let value = r
                .domain
                .iter()
                .find(|v| self.holds(w, &gp.signature.normalize(c.atom(Some((*v).clone())))))
                .cloned();
            let applied: Vec<&GroundPr> = if self.holds(w, &intervene_atom(c)) {
                Vec::new()
            } else {
                gp.pr
                    .iter()
                    .filter(|p| p.rule == ri && self.literals_hold(w, &p.body))
                    .collect()
            };
            let groups = gp.body_groups(ri);
            let group = applied.first().map(|p| groups.iter().position(|g| *g == p.body).expect("grouped"));
            for (i, p) in applied.iter().enumerate() {
                if p.body != applied[0].body || applied[..i].iter().any(|q| q.value == p.value) {
                    diagnostics.push(format!(
                        "unique probability assignment violated for {c} in world {}",
                        self.tau.universe.show(w)
                    ));
                    break;
                }
            }
            let ap: f64 = applied.iter().map(|p| p.prob).sum();
            let unassigned = r.domain.len() - applied.len().min(r.domain.len());
            let dp = if unassigned == 0 {
                if (1.0 - ap).abs() > 1e-9 {
                    return Err(Error::DefaultProbabilityUndefined(c.to_string()));
                }
                0.0
            } else {
                (1.0 - ap) / unassigned as f64
            };
            let prob = match &value {
                Some(v) => applied.iter().find(|p| p.value == *v).map(|p| p.prob).unwrap_or(dp),
                None => 1.0,
            };
            out.push(Selection {
                rule: ri,
                value,
                group,
                prob,
            });
        }
        Ok(out)
    }

    /// Static diagnostics plus per-world checks of the two uniqueness assumptions.
    pub fn validate(&self, limits: &Limits) -> Result<Vec<String>> {
        let mut diags = self.ground.diagnostics.clone();
        for w in self.possible_worlds(limits)? {
            self.analyze(&w, &mut diags)?;
        }
        diags.dedup();
        Ok(diags)
    }

    /// Possible worlds with `μ̂` and `μ`.
    pub fn measure(&self, limits: &Limits) -> Result<Vec<World>> {
        if !self.ground.diagnostics.is_empty() {
            return Err(Error::Diagnostics(self.ground.diagnostics.clone()));
        }
        let worlds = self.possible_worlds(limits)?;
        if worlds.is_empty() {
            return Err(Error::Inconsistent);
        }
        let mut diags = Vec::new();
        let mut out = Vec::new();
        for atoms in worlds {
            let selections = self.analyze(&atoms, &mut diags)?;
            let unnormalized = selections.iter().filter(|s| s.value.is_some()).map(|s| s.prob).product();
            out.push(World {
                atoms,
                selections,
                unnormalized,
                prob: 0.0,
            });
        }
        if !diags.is_empty() {
            diags.dedup();
            return Err(Error::Diagnostics(diags));
        }
        let total: f64 = out.iter().map(|w| w.unnormalized).sum();
        if total <= 0.0 {
            return Err(Error::AllZeroMeasure);
        }
        for w in &mut out {
            w.prob = w.unnormalized / total;
        }
        Ok(out)
    }

    pub fn interpretation(&self, w: &AtomSet) -> Interpretation {
        self.tau.universe.to_interpretation(w)
    }

    /// `P_Π(A)`: total `μ` of the worlds satisfying `A`.
    pub fn prob(&self, worlds: &[World], a: &Formula<GroundAtom>) -> Result<f64> {
        let f: Formula<AtomId> = crate::infer::resolve_query(&self.tau.universe, a)?;
        Ok(worlds
            .iter()
            .filter(|w| f.eval(&|id: &AtomId| w.atoms.contains(*id)))
            .map(|w| w.prob)
            .sum())
    }

    /// `F_W`: the atoms of `W` and, for each random atom, the `pf` value that produced it.
    pub fn fw_formula(&self, world: &World) -> Formula<GroundAtom> {
        let mut items: Vec<Formula<GroundAtom>> =
            world.atoms.iter().map(|id| Formula::Atom(self.tau.universe.atom(id).clone())).collect();
        for s in &world.selections {
            if let Some(v) = &s.value {
                let pf = self.ground.random[s.rule].pf_constant(s.group);
                items.push(Formula::Atom(self.ground.signature.normalize(pf.atom(Some(v.clone())))));
            }
        }
        Formula::conj(items)
    }

    /// `Π^LPMLN` as a multi-valued probabilistic program.
    pub fn to_mvpp(&self) -> Result<MvppProgram> {
        let gp = &self.ground;
        if !gp.diagnostics.is_empty() {
            return Err(Error::Diagnostics(gp.diagnostics.clone()));
        }
        let pattern = |a: &GroundAtom| AtomPattern::from(a);
        let mut rules: Vec<Rule<AtomPattern>> = self
            .tau
            .ground_rules()
            .into_iter()
            .map(|r| r.rule.map(&mut |a: &GroundAtom| pattern(a)))
            .collect();
        let mut decls = Vec::new();
        let decl = |k: &ConstantKey, choices: Vec<(f64, Value)>| MvppDecl {
            symbol: k.symbol.clone(),
            args: k.args.iter().cloned().map(Term::Const).collect(),
            choices,
        };
        for (ri, r) in gp.random.iter().enumerate() {
            let c = &r.constant;
            let not_intervened = Formula::not(Formula::Atom(intervene_atom(c)));
            if !gp.intervened_by_act(c) {
                for (k, group) in gp.body_groups(ri).iter().enumerate() {
                    let assigned: Vec<&GroundPr> = gp.pr.iter().filter(|p| p.rule == ri && p.body == *group).collect();
                    let ap: f64 = assigned.iter().map(|p| p.prob).sum();
                    let unassigned = r.domain.iter().filter(|v| !assigned.iter().any(|p| p.value == **v)).count();
                    let dp = if unassigned == 0 {
                        if (1.0 - ap).abs() > 1e-9 {
                            return Err(Error::DefaultProbabilityUndefined(c.to_string()));
                        }
                        0.0
                    } else {
                        (1.0 - ap) / unassigned as f64
                    };
                    let pf = r.pf_constant(Some(k));
                    let choices = r
                        .domain
                        .iter()
                        .map(|v| (assigned.iter().find(|p| p.value == *v).map(|p| p.prob).unwrap_or(dp), v.clone()))
                        .collect();
                    decls.push(decl(&pf, choices));
                    let b = literal_body(group);
                    for v in &r.domain {
                        let mut body = merge(&[&b, &r.body]);
                        body.pos.push(gp.signature.normalize(pf.atom(Some(v.clone()))));
                        body.neg.push(not_intervened.clone());
                        let head = vec![gp.signature.normalize(c.atom(Some(v.clone())))];
                        rules.push(Rule { head, body }.map(&mut |a: &GroundAtom| pattern(a)));
                    }
                    let mut body = merge(&[&b, &r.body]);
                    body.neg.push(not_intervened.clone());
                    rules.push(Rule {
                        head: vec![r.assigned_atom()],
                        body,
                    }
                    .map(&mut |a: &GroundAtom| pattern(a)));
                }
            }
            let dflt = r.pf_constant(None);
            let uniform = 1.0 / r.domain.len() as f64;
            decls.push(decl(&dflt, r.domain.iter().map(|v| (uniform, v.clone())).collect()));
            for v in &r.domain {
                let mut body = r.body.clone();
                body.pos.push(gp.signature.normalize(dflt.atom(Some(v.clone()))));
                body.neg.push(Formula::not(Formula::Atom(r.assigned_atom())));
                let head = vec![gp.signature.normalize(c.atom(Some(v.clone())))];
                rules.push(Rule { head, body }.map(&mut |a: &GroundAtom| pattern(a)));
            }
        }
        Ok(MvppProgram {
            signature: gp.signature.clone(),
            decls,
            rules,
        })
    }
}

/// Diagnostics for a P-log program; empty when the program is valid.
pub fn plog_validate(p: &PlogProgram, limits: &Limits) -> Result<Vec<String>> {
    PlogModel::new(p)?.validate(limits)
}

/// Possible worlds with their measures, interpreted over `τ(Π)`'s atoms.
pub fn plog_measure(p: &PlogProgram, limits: &Limits) -> Result<(PlogModel, Vec<World>)> {
    let m = PlogModel::new(p)?;
    let worlds = m.measure(limits)?;
    Ok((m, worlds))
}

pub fn plog_prob(p: &PlogProgram, a: &Formula<GroundAtom>, limits: &Limits) -> Result<f64> {
    let (m, worlds) = plog_measure(p, limits)?;
    m.prob(&worlds, a)
}

pub fn plog_to_mvpp(p: &PlogProgram) -> Result<MvppProgram> {
    PlogModel::new(p)?.to_mvpp()
}
