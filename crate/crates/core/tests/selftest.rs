use lpmln_core::selftest::{run, selftest, Ctx, PROPERTIES};
use lpmln_core::stable::is_stable_model;
use lpmln_core::Limits;

#[test]
fn every_property_passes_on_a_fixed_seed() {
    let limits = Limits::default();
    let ctx = Ctx { limits: &limits, check: is_stable_model };
    for r in selftest(7, 40, &ctx) {
        if let Some(f) = &r.failure {
            panic!("{} failed on case {}: {}\n{}", r.property, f.case, f.message, f.counterexample);
        }
        assert_eq!(r.cases, 40, "{} ran {} cases ({} skipped)", r.property, r.cases, r.skipped);
    }
}

#[test]
fn a_broken_checker_is_caught_and_shrunk() {
    // Accepts every model of the program, stable or not.
    fn models_only(
        rules: &[lpmln_core::logic::Rule<lpmln_core::logic::AtomId>],
        i: &lpmln_core::logic::AtomSet,
        _: &Limits,
    ) -> lpmln_core::Result<bool> {
        Ok(rules.iter().all(|r| r.satisfied_by(&|a: &lpmln_core::logic::AtomId| i.contains(*a))))
    }
    let limits = Limits::default();
    let ctx = Ctx { limits: &limits, check: models_only };
    let p = PROPERTIES.iter().find(|p| p.name == "loop-formulas").unwrap();
    let r = run(p, 1, 100, &ctx);
    let f = r.failure.expect("unsupported models are detected");
    assert!(f.counterexample.lines().count() <= 3, "{}", f.counterexample);
}

/// A stability check whose reduct reads the negative body one atom off.
fn off_by_one_reduct(
    rules: &[lpmln_core::logic::Rule<lpmln_core::logic::AtomId>],
    i: &lpmln_core::logic::AtomSet,
    limits: &Limits,
) -> lpmln_core::Result<bool> {
    let shifted = |a: &lpmln_core::logic::AtomId| i.contains(a + 1);
    let kept: Vec<_> = rules
        .iter()
        .filter(|r| r.body.neg.iter().all(|f| f.eval(&shifted)))
        .map(|r| lpmln_core::logic::Rule::new(r.head.clone(), r.body.pos.clone(), vec![]))
        .collect();
    is_stable_model(&kept, i, limits)
}

#[test]
fn a_mutated_reduct_breaks_the_reduct_property() {
    let limits = Limits::default();
    let ctx = Ctx { limits: &limits, check: off_by_one_reduct };
    let p = lpmln_core::selftest::property("reduct").unwrap();
    let r = run(p, 0, 200, &ctx);
    let f = r.failure.expect("mutation is detected");
    let reparsed = lpmln_core::textio::parse_lpmln(&f.counterexample);
    assert!(reparsed.is_ok(), "counterexample parses:\n{}", f.counterexample);
}
