//! JSON export of parsed and ground programs.

use serde_json::{json, Value as Json};

use crate::logic::{Formula, Program, WeightedRule, Weight};

pub fn weight_json(w: &Weight) -> Json {
    match w {
        Weight::Hard => json!("alpha"),
        Weight::Soft(x) => json!(x),
    }
}

/// `true`, `false`, `{"atom": ..}`, `{"not": ..}`, `{"and": [..]}`, `{"or": [..]}` or
/// `{"implies": [lhs, rhs]}`.
pub fn formula_json<A: std::fmt::Display>(f: &Formula<A>) -> Json {
    match f {
        Formula::True => json!(true),
        Formula::False => json!(false),
        Formula::Atom(a) => json!({ "atom": a.to_string() }),
        Formula::Not(g) => json!({ "not": formula_json(g) }),
        Formula::And(gs) => json!({ "and": gs.iter().map(formula_json).collect::<Vec<_>>() }),
        Formula::Or(gs) => json!({ "or": gs.iter().map(formula_json).collect::<Vec<_>>() }),
        Formula::Implies(l, r) => json!({ "implies": [formula_json(l), formula_json(r)] }),
    }
}

pub fn rule_json<A: std::fmt::Display + Clone>(r: &WeightedRule<A>) -> Json {
    let body = &r.rule.body;
    json!({
        "weight": weight_json(&r.weight),
        "head": r.rule.head.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "pos": body.pos.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "neg": formula_json(&body.neg_formula()),
        "builtins": body.builtins.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
    })
}

pub fn program_json(p: &Program) -> Json {
    json!({ "rules": p.rules.iter().map(rule_json).collect::<Vec<_>>() })
}
