//! Random small programs for the dual-evaluation properties.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::frontends::mvpp::{MvppDecl, MvppProgram};
use crate::frontends::plog::{PlogProgram, PrAtom, RandomRule};
use crate::frontends::problog::{ProbFact, ProbLogProgram};
use crate::frontends::weak::{WeakConstraint, WeakProgram};
use crate::infer::mln::MlnProgram;
use crate::logic::{
    AtomPattern, Body, ConstDecl, DomainSpec, Formula, GroundAtom, Program, Range, Rule, Signature, Term, Value,
    Weight, WeightedRule,
};

/// Shape of generated rules.
#[derive(Clone, Copy, Debug)]
pub struct RuleShape {
    pub max_atoms: usize,
    pub max_rules: usize,
    pub disjunction: bool,
    pub choice: bool,
    pub double_negation: bool,
    pub hard_ratio: f64,
}

impl RuleShape {
    pub fn small() -> Self {
        RuleShape {
            max_atoms: 6,
            max_rules: 8,
            disjunction: true,
            choice: true,
            double_negation: true,
            hard_ratio: 0.4,
        }
    }
}

pub fn atom_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn prop(i: usize) -> AtomPattern {
    AtomPattern::from(GroundAtom::prop(atom_name(i)))
}

fn distinct(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k.min(n));
    all
}

/// A ground rule over the propositional atoms `a, b, ...`.
pub fn rule(rng: &mut impl Rng, n: usize, shape: &RuleShape) -> Rule<AtomPattern> {
    let pos: Vec<AtomPattern> = { let k = rng.random_range(0..=2); distinct(rng, n, k) }.into_iter().map(prop).collect();
    let neg: Vec<Formula<AtomPattern>> = { let k = rng.random_range(0..=2); distinct(rng, n, k) }
        .into_iter()
        .map(|i| {
            let a = Formula::Atom(prop(i));
            if shape.double_negation && rng.random_bool(0.2) {
                Formula::not(Formula::not(a))
            } else {
                Formula::not(a)
            }
        })
        .collect();
    let body = Body::new(pos, neg);
    let kind = rng.random_range(0..10);
    if shape.choice && kind == 0 {
        return Rule::choice(prop(rng.random_range(0..n)), body);
    }
    if kind == 1 && !body.is_empty() {
        return Rule::constraint(body);
    }
    let heads = if shape.disjunction && rng.random_bool(0.2) { 2 } else { 1 };
    Rule {
        head: distinct(rng, n, heads).into_iter().map(prop).collect(),
        body,
    }
}

pub fn weight(rng: &mut impl Rng, hard_ratio: f64) -> Weight {
    if rng.random_bool(hard_ratio) {
        Weight::Hard
    } else if rng.random_bool(0.8) {
        Weight::Soft(rng.random_range(-4..=6) as f64 * 0.5)
    } else {
        Weight::Soft((rng.random::<f64>() * 4.0 - 2.0 + 1e-3).clamp(-2.0, 2.0))
    }
}

pub fn lpmln(rng: &mut impl Rng, shape: &RuleShape) -> Program {
    let n = rng.random_range(1..=shape.max_atoms);
    let k = rng.random_range(1..=shape.max_rules);
    let rules = (0..k)
        .map(|_| WeightedRule::new(weight(rng, shape.hard_ratio), rule(rng, n, shape)))
        .collect();
    Program::new(Signature::default(), rules)
}

/// Every rule hard.
pub fn asp(rng: &mut impl Rng, shape: &RuleShape) -> Program {
    lpmln(rng, &RuleShape { hard_ratio: 1.0, ..*shape })
}

fn formula(rng: &mut impl Rng, n: usize, depth: usize) -> Formula<AtomPattern> {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(prop(rng.random_range(0..n))),
        };
    }
    match rng.random_range(0..4) {
        0 => Formula::not(formula(rng, n, depth - 1)),
        1 => Formula::And(vec![formula(rng, n, depth - 1), formula(rng, n, depth - 1)]),
        2 => Formula::Or(vec![formula(rng, n, depth - 1), formula(rng, n, depth - 1)]),
        _ => Formula::Implies(Box::new(formula(rng, n, depth - 1)), Box::new(formula(rng, n, depth - 1))),
    }
}

pub fn mln(rng: &mut impl Rng, max_atoms: usize, max_formulas: usize) -> MlnProgram {
    let n = rng.random_range(1..=max_atoms);
    let k = rng.random_range(1..=max_formulas);
    MlnProgram {
        signature: Signature::default(),
        formulas: (0..k).map(|_| (weight(rng, 0.2), formula(rng, n, 2))).collect(),
    }
}

/// Probabilistic facts on the first atoms; rules derive later atoms from earlier ones, so
/// every total choice has exactly one stable model.
pub fn problog(rng: &mut impl Rng) -> ProbLogProgram {
    let k = rng.random_range(1..=3);
    let n = k + rng.random_range(1..=3);
    let probs = [0.0, 0.1, 0.25, 0.3, 0.5, 0.6, 0.75, 0.9, 1.0];
    let facts = (0..k)
        .map(|i| ProbFact {
            atom: GroundAtom::prop(atom_name(i)),
            prob: *probs.choose(rng).unwrap(),
        })
        .collect();
    let rules = (0..rng.random_range(1..=5))
        .map(|_| {
            let h = rng.random_range(k..n);
            let pos = { let k = rng.random_range(0..=2); distinct(rng, h, k) }.into_iter().map(prop).collect();
            let neg = { let k = rng.random_range(0..=1); distinct(rng, h, k) }
                .into_iter()
                .map(|i| Formula::not(Formula::Atom(prop(i))))
                .collect();
            Rule::new(vec![prop(h)], pos, neg)
        })
        .collect();
    ProbLogProgram {
        signature: Signature::default(),
        facts,
        rules,
    }
}

fn mv(symbol: &str, v: Value) -> AtomPattern {
    AtomPattern {
        symbol: symbol.into(),
        args: Vec::new(),
        value: Some(Term::Const(v)),
    }
}

/// Positive weights that sum to one.
fn simplex(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let w: Vec<u32> = (0..k).map(|_| rng.random_range(1..=4)).collect();
    let total: u32 = w.iter().sum();
    w.into_iter().map(|x| x as f64 / total as f64).collect()
}

/// Probabilistic constants `c` (over `1..k`) and `b` (Boolean), a regular constant `m`
/// and propositional atoms `x, y, z`.
pub fn mvpp(rng: &mut impl Rng) -> MvppProgram {
    let k = rng.random_range(2..=3);
    let mut sig = Signature::default();
    sig.domains.insert("v".into(), DomainSpec::Range(1, k));
    sig.constants.insert(
        "c".into(),
        ConstDecl {
            args: vec![],
            range: Range::Domain("v".into()),
        },
    );
    sig.constants.insert(
        "m".into(),
        ConstDecl {
            args: vec![],
            range: Range::Domain("v".into()),
        },
    );
    let mut decls = vec![MvppDecl {
        symbol: "c".into(),
        args: vec![],
        choices: simplex(rng, k as usize).into_iter().zip((1..=k).map(Value::Int)).collect(),
    }];
    let with_b = rng.random_bool(0.5);
    if with_b {
        sig.constants.insert(
            "b".into(),
            ConstDecl {
                args: vec![],
                range: Range::Boolean,
            },
        );
        let p = simplex(rng, 2);
        decls.push(MvppDecl {
            symbol: "b".into(),
            args: vec![],
            choices: vec![(p[0], Value::t()), (p[1], Value::f())],
        });
    }
    let mut rules = Vec::new();
    for _ in 0..rng.random_range(1..=4) {
        let head = if rng.random_bool(0.15) { vec![] } else { vec![mvpp_regular(rng, k)] };
        let pos = (0..rng.random_range(1..=2)).map(|_| mvpp_body_atom(rng, k, with_b)).collect();
        let neg = (0..rng.random_range(0..=1))
            .map(|_| Formula::not(Formula::Atom(mvpp_body_atom(rng, k, with_b))))
            .collect();
        rules.push(Rule::new(head, pos, neg));
    }
    MvppProgram {
        signature: sig,
        decls,
        rules,
    }
}

fn mvpp_regular(rng: &mut impl Rng, k: i64) -> AtomPattern {
    match rng.random_range(0..4) {
        0 => mv("m", Value::Int(rng.random_range(1..=k))),
        i => prop(22 + i),
    }
}

fn mvpp_body_atom(rng: &mut impl Rng, k: i64, with_b: bool) -> AtomPattern {
    match rng.random_range(0..3) {
        0 => mv("c", Value::Int(rng.random_range(1..=k))),
        1 if with_b => {
            if rng.random_bool(0.5) {
                AtomPattern::from(GroundAtom::prop("b"))
            } else {
                mv("b", Value::f())
            }
        }
        _ => mvpp_regular(rng, k),
    }
}

fn plog_ground(rng: &mut impl Rng, sig: &Signature, two: bool, k: i64) -> GroundAtom {
    let name = if two && rng.random_bool(0.5) { "e" } else { "c" };
    match &sig.constants[name].range {
        Range::Boolean => {
            if rng.random_bool(0.5) {
                GroundAtom::prop(name)
            } else {
                GroundAtom::with_value(name, vec![], Value::f())
            }
        }
        Range::Domain(_) => GroundAtom::with_value(name, vec![], Value::Int(rng.random_range(1..=k))),
    }
}

/// One or two random constants over small domains, a derived atom and optional
/// observations or interventions.
pub fn plog(rng: &mut impl Rng) -> PlogProgram {
    let mut sig = Signature::default();
    let k = rng.random_range(2..=3);
    sig.domains.insert("v".into(), DomainSpec::Range(1, k));
    let mut p = PlogProgram::default();
    let two = rng.random_bool(0.5);
    let names: Vec<&str> = if two { vec!["c", "e"] } else { vec!["c"] };
    for (i, name) in names.iter().enumerate() {
        let boolean = rng.random_bool(0.3);
        sig.constants.insert(
            name.to_string(),
            ConstDecl {
                args: vec![],
                range: if boolean { Range::Boolean } else { Range::Domain("v".into()) },
            },
        );
        let values: Vec<Value> = if boolean { vec![Value::t(), Value::f()] } else { (1..=k).map(Value::Int).collect() };
        let mut body = Body::default();
        if i == 1 && rng.random_bool(0.5) {
            body.neg.push(Formula::not(Formula::Atom(AtomPattern::from(GroundAtom::prop("x")))));
        }
        p.random.push(RandomRule {
            id: format!("r{}", i + 1),
            id_args: vec![],
            atom: AtomPattern {
                symbol: name.to_string(),
                args: vec![],
                value: None,
            },
            body,
        });
        // assign strictly fewer than all values, with room left for the default
        let assigned = rng.random_range(0..values.len());
        let mut left = 0.9;
        let cond = if i == 1 && rng.random_bool(0.5) {
            Body::new(vec![AtomPattern::from(GroundAtom::prop("x"))], vec![])
        } else {
            Body::default()
        };
        for v in values.choose_multiple(rng, assigned) {
            let prob = (rng.random_range(0..=4) as f64 * 0.1).min(left);
            left -= prob;
            p.pr.push(PrAtom {
                rule: None,
                atom: mv(name, v.clone()),
                body: cond.clone(),
                prob,
            });
        }
    }
    let c1 = match sig.constants["c"].range {
        Range::Boolean => AtomPattern::from(GroundAtom::prop("c")),
        Range::Domain(_) => mv("c", Value::Int(1)),
    };
    p.rules.push(Rule::new(vec![AtomPattern::from(GroundAtom::prop("x"))], vec![c1], vec![]));
    if rng.random_bool(0.5) {
        p.rules.push(Rule::new(
            vec![AtomPattern::from(GroundAtom::prop("y"))],
            vec![],
            vec![Formula::not(Formula::Atom(AtomPattern::from(GroundAtom::prop("x"))))],
        ));
    }
    match rng.random_range(0..4) {
        0 => p.obs.push(plog_ground(rng, &sig, two, k)),
        1 => p.act.push(plog_ground(rng, &sig, two, k)),
        _ => {}
    }
    p.signature = sig;
    p
}

/// An ASP program plus one to three weak constraints.
pub fn weak(rng: &mut impl Rng) -> WeakProgram {
    let shape = RuleShape {
        max_atoms: 5,
        max_rules: 6,
        hard_ratio: 1.0,
        ..RuleShape::small()
    };
    let n = rng.random_range(1..=shape.max_atoms);
    let rules = (0..rng.random_range(1..=shape.max_rules)).map(|_| rule(rng, n, &shape)).collect();
    let weak = (0..rng.random_range(1..=3))
        .map(|_| {
            let pos = { let k = rng.random_range(1..=2); distinct(rng, n, k) }.into_iter().map(prop).collect();
            let neg = { let k = rng.random_range(0..=1); distinct(rng, n, k) }
                .into_iter()
                .map(|i| Formula::not(Formula::Atom(prop(i))))
                .collect();
            WeakConstraint {
                body: Body::new(pos, neg),
                weight: rng.random_range(1..=3),
            }
        })
        .collect();
    WeakProgram {
        signature: Signature::default(),
        rules,
        weak,
    }
}
