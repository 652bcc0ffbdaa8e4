use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ultralogic-lab"));
    c.env_remove("ULTRALOGIC_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn approx_prints_fraction_and_gap() {
    let o = run(&["hyper", "approx", "--r", "1/3", "--m", "1000"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "333/1000, gap 1/3000\n");
    assert_eq!(stdout(&run(&["approx", "--r", "1/3", "--m", "1000"])), "333/1000, gap 1/3000\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["hyper", "approx", "--r", "1/3"]).status.code(), Some(2));
    assert_eq!(run(&["subp", "decode", "0"]).status.code(), Some(1));
    assert_eq!(run(&["coin", "--x", "3/2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_records_parse() {
    let o = run(&["--json", "characterize", "F0", "F1", "F2"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        serde_json::from_str::<serde_json::Value>(line).expect("one JSON value per line");
    }
    let o = run(&["--json", "approx", "--r", "1/3", "--m", "1000"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["gap"], "1/3000");
    assert_eq!(v["certified"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "encode", "choices", "a,b", "c,d"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let suite = ["suite", "--criterion", "3", "--criterion", "11", "--seed", "7"];
    let (a, b) = (run(&suite), run(&suite));
    assert!(a.status.success());
    let strip = |o: &Output| stdout(o).lines().map(|l| l.split(" (").next().unwrap().to_string()).collect::<Vec<_>>();
    // timings differ run to run; everything before them must not
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn config_file_and_environment_override() {
    let dir = tempfile::tempdir().unwrap();
    let narrow = write(dir.path(), "narrow.toml", "truncation = 2\n");
    let o = bin().env("ULTRALOGIC_CONFIG", &narrow).args(["hyper", "show", "e^-3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(run(&["hyper", "show", "e^-3"]).status.success());

    let bad = write(dir.path(), "bad.toml", "precision = 10\n");
    assert_eq!(run(&["--config", &bad, "hyper", "show", "1"]).status.code(), Some(2));
    let typo = write(dir.path(), "typo.toml", "precison = 60\n");
    assert_eq!(run(&["--config", &typo, "hyper", "show", "1"]).status.code(), Some(2));

    write(dir.path(), "alpha.txt", "a\nb\n \n");
    let cfg = write(dir.path(), "alpha.toml", "alphabet = \"alpha.txt\"\n");
    assert_eq!(stdout(&run(&["--config", &cfg, "encode", "word", "ab ba"])), "0 1 2 1 0\n");
    assert_eq!(run(&["--config", &cfg, "encode", "word", "abc"]).status.code(), Some(1));
}

#[test]
fn entity_files() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write(dir.path(), "toy.json", r#"{"mode":"toy","f":2,"characteristics":[{"i":1,"lambda":4}],"naming":{"primes":[5,7,11,13]},"dims":4}"#);
    let out = stdout(&run(&["subp", "build", &toy]));
    assert!(out.contains("value: 80080"), "{out}");
    let other = write(dir.path(), "other.json", r#"{"mode":"toy","f":2,"characteristics":[{"i":2,"lambda":2}],"naming":{"primes":[17]},"dims":4}"#);
    let out = stdout(&run(&["subp", "combine", &toy, &other]));
    assert!(out.contains(&format!("value: {}", 80080 * 153)), "{out}");

    let hyper = write(dir.path(), "hyper.json", r#"{"mode":"hyper","f":2,"characteristics":[{"i":1,"r":"7/2"}],"naming":{"block":[0,"e^-1"]},"dims":4}"#);
    let out = stdout(&run(&["subp", "project", &hyper, "--perturb", "e^2", "--coord", "3"]));
    assert!(out.contains("a3 = 7/2"), "{out}");
    assert!(out.contains("zeroed: a4"), "{out}");
}

#[test]
fn glue_csv_and_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "g.json", r#"{"partition":[0,1,2],"values":[2,3],"delta":"1/10"}"#);
    let o = run(&["glue", "sample", "--spec", &spec, "--points", "4", "--emit-csv"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,g,dg");
    assert_eq!(lines.len(), 6);
    assert!(lines[3].starts_with("1,5/2,"), "{}", lines[3]);

    let o = run(&["glue", "telescope", "--delta", "1/100", "--from", "0", "--to", "2", "--mesh", "1/10", "--avoid", "1"]);
    let text = stdout(&o);
    assert!(text.lines().last().unwrap().starts_with("total 1 = G(T) − G(a) 1: true"), "{text}");
}

/// Every subcommand leaf, with arguments that succeed.
#[test]
fn every_subcommand_is_reachable() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(dir.path(), "map.json", r#"{"1":"Calm.","2":"Windy."}"#);
    let toy = write(dir.path(), "toy.json", r#"{"mode":"toy","f":2,"characteristics":[{"i":1,"lambda":4}],"naming":{"primes":[5,7,11,13]},"dims":4}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["encode", "word", "abc"],
        vec!["encode", "decode", "65", "66"],
        vec!["encode", "segment", "--body", "Calm.", "--index", "3", "--totality", "3"],
        vec!["encode", "paradigm", "--map", &map, "--from", "1", "--to", "2"],
        vec!["encode", "instantiate", "--template", "total", "--value", "5"],
        vec!["encode", "choices", "a,b,c", "--k", "2"],
        vec!["deduce", "closure", "F0 & F1"],
        vec!["deduce", "member", "--query", "F1", "F0 & F1"],
        vec!["deduce", "axioms", "F0", "F1", "F0 & F1"],
        vec!["deduce", "continuity", "F0", "F1"],
        vec!["deduce", "classical", "F0 & F1"],
        vec!["deduce", "unfold", "(F0 & F1) & F2"],
        vec!["deduce", "witness", "F0", "F1"],
        vec!["characterize", "F0", "F1"],
        vec!["omcheck", "--lattice", "boolean8", "--schema", "3"],
        vec!["hyper", "show", "1 + e"],
        vec!["hyper", "calc", "e", "/", "e^2"],
        vec!["hyper", "pow", "e^-1", "2"],
        vec!["hyper", "lift", "exp", "e"],
        vec!["hyper", "approx", "--r", "-5/7", "--m", "9"],
        vec!["hyper", "hypernat", "--r", "3"],
        vec!["hyper", "hypersum", "--count", "e^-2", "--summand", "e"],
        vec!["glue", "eval", "--x", "1"],
        vec!["glue", "deriv", "--x", "1"],
        vec!["glue", "st", "--x", "1/2"],
        vec!["glue", "range"],
        vec!["glue", "sample", "--delta", "1/10"],
        vec!["glue", "telescope", "--delta", "1/10", "--from", "0", "--to", "2", "--mesh", "1/4", "--avoid", "1"],
        vec!["approx", "--r", "2/3", "--m", "7"],
        vec!["subp", "new", "--name", "5", "--dims", "4"],
        vec!["subp", "build", &toy],
        vec!["subp", "combine", &toy, &toy],
        vec!["subp", "project", &toy],
        vec!["subp", "diagonal", &toy, "--lambda", "3=e^-1"],
        vec!["subp", "decode", "80080"],
        vec!["subp", "ke", "--m", "e^4", "--v", "e^-1"],
        vec!["subp", "coin", "--x", "1/3", "--count", "4"],
        vec!["coin", "--x", "5/16", "--count", "4", "--stats"],
        vec!["suite", "--criterion", "11"],
    ];
    for args in cases {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?} printed nothing");
    }
}
