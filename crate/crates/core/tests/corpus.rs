use std::path::PathBuf;

use lpmln_core::ground::ground_program;
use lpmln_core::infer::distribution;
use lpmln_core::textio::{parse, parse_file, parse_lpmln, print, Dialect};
use lpmln_core::Limits;

fn corpus() -> Vec<PathBuf> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus"].iter().collect();
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn every_file_parses_and_round_trips() {
    let files = corpus();
    assert_eq!(files.len(), 7);
    for f in files {
        let src = parse_file(&f, None).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert_eq!(Some(src.dialect()), Dialect::from_path(&f));
        let again = parse(src.dialect(), &print(&src)).unwrap();
        assert_eq!(again, src, "{}", f.display());
    }
}

#[test]
fn dialect_header_overrides_extension() {
    let dir = std::env::temp_dir().join(format!("lpmln-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coins.txt");
    std::fs::write(&path, "#dialect problog.\n0.5 :: p.\n").unwrap();
    assert_eq!(parse_file(&path, None).unwrap().dialect(), Dialect::ProbLog);
    assert!(parse_file(&path, Some(Dialect::Lpmln)).is_err());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn choice_rules_are_not_minimized() {
    let p = parse_lpmln("alpha : {a}.\nalpha : b :- a.").unwrap();
    let d = distribution(&ground_program(&p).unwrap(), &Limits::default()).unwrap();
    assert_eq!(d.support().len(), 2);
    for e in d.support() {
        assert!((e.prob - 0.5).abs() < 1e-12);
    }
}

#[test]
fn ground_instances_follow_domains() {
    let p = parse_lpmln(include_str!("../corpus/friends.lpmln")).unwrap();
    let g = ground_program(&p).unwrap();
    // 1 + 1 + 9 + 27 ground rules over three people.
    assert_eq!(g.rules.len(), 38);
}
