use lpmln_core::frontends::mvpp::mvpp_to_lpmln;
use lpmln_core::frontends::plog::{plog_validate, PlogModel};
use lpmln_core::ground::ground_program;
use lpmln_core::infer::distribution;
use lpmln_core::logic::{AtomSet, GroundAtom, Value};
use lpmln_core::textio::{parse_plog, parse_query};
use lpmln_core::Limits;

const DICE: &str = include_str!("../corpus/dice.plog");

fn atom(sym: &str, arg: &str, v: Value) -> GroundAtom {
    GroundAtom::with_value(sym, vec![Value::sym(arg)], v)
}

#[test]
fn dice_program_is_valid() {
    let p = parse_plog(DICE).unwrap();
    assert_eq!(p.random.len(), 1);
    assert!(plog_validate(&p, &Limits::default()).unwrap().is_empty());
}

#[test]
fn cited_world_has_measure_one_over_24() {
    let p = parse_plog(DICE).unwrap();
    let m = PlogModel::new(&p).unwrap();
    let worlds = m.measure(&Limits::default()).unwrap();
    assert_eq!(worlds.len(), 36);
    let u = &m.tau.universe;
    let want = [
        atom("owner", "d1", Value::sym("mike")),
        atom("owner", "d2", Value::sym("john")),
        atom("roll", "d1", Value::Int(6)),
        atom("roll", "d2", Value::Int(3)),
        GroundAtom::new("even", vec![Value::sym("d1")]),
        atom("even", "d2", Value::f()),
    ];
    let ids: Vec<u32> = want.iter().map(|a| u.id(a).unwrap()).collect();
    let target = AtomSet::from_ids(u.len(), ids);
    let w = worlds.iter().find(|w| w.atoms == target).expect("world is possible");
    assert_eq!(w.unnormalized, 0.25 / 6.0);
    assert!((w.unnormalized - 1.0 / 24.0).abs() < 1e-15);
}

#[test]
fn translation_agrees_on_every_world_and_on_even() {
    let lim = Limits::default();
    let p = parse_plog(DICE).unwrap();
    let m = PlogModel::new(&p).unwrap();
    let worlds = m.measure(&lim).unwrap();
    let mvpp = m.to_mvpp().unwrap();
    let d = distribution(&ground_program(&mvpp_to_lpmln(&mvpp).unwrap()).unwrap(), &lim).unwrap();
    for w in &worlds {
        let fw = m.fw_formula(w);
        assert!((d.query(&fw).unwrap() - w.prob).abs() < 1e-9, "world {}", m.tau.universe.show(&w.atoms));
    }
    let even = parse_query("even(d1)").unwrap();
    let direct = m.prob(&worlds, &even).unwrap();
    assert!((direct - 0.55).abs() < 1e-9);
    assert!((d.query(&even).unwrap() - direct).abs() < 1e-9);
}

#[test]
fn intervention_and_observation() {
    let lim = Limits::default();
    let mut p = parse_plog(DICE).unwrap();
    p.act.push(atom("roll", "d1", Value::Int(2)));
    let m = PlogModel::new(&p).unwrap();
    let worlds = m.measure(&lim).unwrap();
    assert_eq!(worlds.len(), 6);
    assert!((m.prob(&worlds, &parse_query("even(d1)").unwrap()).unwrap() - 1.0).abs() < 1e-12);
    let d = distribution(&ground_program(&mvpp_to_lpmln(&m.to_mvpp().unwrap()).unwrap()).unwrap(), &lim).unwrap();
    for w in &worlds {
        assert!((d.query(&m.fw_formula(w)).unwrap() - w.prob).abs() < 1e-9);
    }

    let mut p = parse_plog(DICE).unwrap();
    p.obs.push(GroundAtom::new("even", vec![Value::sym("d1")]));
    let m = PlogModel::new(&p).unwrap();
    let worlds = m.measure(&lim).unwrap();
    let six = parse_query("roll(d1)=6").unwrap();
    assert!((m.prob(&worlds, &six).unwrap() - 0.25 / 0.55).abs() < 1e-12);
}

#[test]
fn overfull_pr_atoms_are_rejected() {
    let src = format!("{DICE}pr(roll(D)=5 | owner(D)=mike) = 0.9.\n");
    let p = parse_plog(&src).unwrap();
    let diags = plog_validate(&p, &Limits::default()).unwrap();
    assert!(diags.iter().any(|d| d.contains("sum to")), "{diags:?}");
}
