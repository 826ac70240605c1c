use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nagata::format::{load, parse, Structure};
use nagata::suite::FIXTURES;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn nagata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagata"))
        .args(args)
        .env_remove("NAGATA_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_two_chain_as_residuated_lattice() {
    let o = nagata(&[
        "check",
        path_str(&corpus("c2-boolean.alg")),
        "--level",
        "residuated-lattice",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn every_corpus_file_passes_check() {
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "alg") {
            let o = nagata(&["check", path_str(&path)]);
            assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), stdout(&o));
        }
    }
}

#[test]
fn construct_fractions_of_two_chain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fractions.alg");
    let o = nagata(&[
        "construct",
        "fractions",
        path_str(&corpus("c2-bottom.alg")),
        "-o",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    match load(&out).unwrap() {
        Structure::Bimonoid(b) => {
            assert_eq!(b.size(), 2);
            assert_eq!((b.zero, b.one), (0, 1));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn construct_to_stdout_parses() {
    let o = nagata(&[
        "construct",
        "restricted-nagata",
        path_str(&corpus("div-godel3-middle.alg")),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = parse(&stdout(&o)).unwrap();
    let on_disk = load(&corpus("restricted-div-godel3-middle.alg")).unwrap();
    assert_eq!(s, on_disk);
}

#[test]
fn fractions_need_a_boolean_pointed_brouwerian_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain3-bottom.alg");
    std::fs::write(
        &chain,
        r#"{"kind": "brouwerian", "order": [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "point": 0}"#,
    )
    .unwrap();
    let o = nagata(&["construct", "fractions", path_str(&chain)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Boolean-pointed"));
    let o = nagata(&["construct", "fractions", path_str(&corpus("luk3-bottom.alg"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not the meet"));
    let o = nagata(&["construct", "fractions", path_str(&corpus("godel3-middle.alg"))]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_roundtrip_on_identity_pair() {
    let o = nagata(&["verify", "roundtrip", path_str(&corpus("id-pair-c2-bottom.alg"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn twist_then_untwist_gives_a_pair() {
    let dir = tempfile::tempdir().unwrap();
    let tw = dir.path().join("tw.alg");
    let back = dir.path().join("back.alg");
    let pair = corpus("collapse-g3-c2.alg");
    assert_eq!(
        nagata(&["construct", "restricted-twist", path_str(&pair), "-o", path_str(&tw)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        nagata(&["untwist", path_str(&tw), "-o", path_str(&back)]).status.code(),
        Some(0)
    );
    assert!(matches!(load(&back).unwrap(), Structure::TwistablePair(_)));
    assert_eq!(nagata(&["check", path_str(&back)]).status.code(), Some(0));
}

#[test]
fn verify_adjunction_and_equivalence() {
    let o = nagata(&["verify", "adjunction", path_str(&corpus("div-luk3-bottom.alg"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = nagata(&[
        "verify",
        "equivalence",
        path_str(&corpus("restricted-div-bool4-bottom.alg")),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn wrong_kind_is_an_input_error() {
    let o = nagata(&["verify", "roundtrip", path_str(&corpus("c2-bottom.alg"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_fixtures_exit_one_naming_the_axiom() {
    for f in FIXTURES {
        let path = corpus("corrupted").join(f.file);
        let o = nagata(&["check", path_str(&path), "--format", "json"]);
        assert_eq!(o.status.code(), Some(1), "{}", f.file);
        let failing: Vec<serde_json::Value> = stdout(&o)
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .filter(|v| v["passed"] == false)
            .collect();
        assert_eq!(failing[0]["axiom"], f.axiom, "{}", f.file);
        assert!(!failing[0]["witness"].as_object().unwrap().is_empty());
    }
}

#[test]
fn strict_commands_report_validation_failures() {
    let path = corpus("corrupted").join("bimodule-action.alg");
    let o = nagata(&["construct", "nagata", path_str(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL bimodule.action.left"));
}

#[test]
fn malformed_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = dir.path().join("ragged.alg");
    std::fs::write(
        &ragged,
        r#"{"kind": "posemigroup", "order": [[1, 1], [0, 1]], "mul": [[0, 0], [1]]}"#,
    )
    .unwrap();
    let o = nagata(&["check", path_str(&ragged)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mul"));
    let broken = dir.path().join("broken.alg");
    std::fs::write(&broken, "{\"kind\": \"poset\",\n \"order\": [[1]]").unwrap();
    let o = nagata(&["check", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nagata(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nagata(&["check"]).status.code(), Some(2));
    let o = nagata(&["check", path_str(&corpus("c2-bottom.alg")), "--level", "cyclic"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(nagata(&["--help"]).status.code(), Some(0));
}

fn count_lines(args: &[&str]) -> usize {
    let o = nagata(args);
    assert_eq!(o.status.code(), Some(0));
    stdout(&o).lines().count()
}

#[test]
fn enumeration_examples() {
    let posets: Vec<String> = stdout(&nagata(&["enumerate", "poset", "--max-size", "4", "--up-to-iso"]))
        .lines()
        .map(str::to_owned)
        .collect();
    assert_eq!(posets, ["size 1: 1", "size 2: 2", "size 3: 5", "size 4: 16"]);
    assert_eq!(
        count_lines(&["enumerate", "poset", "--max-size", "1", "--format", "json"]),
        1
    );
    assert_eq!(
        count_lines(&[
            "enumerate",
            "poset",
            "--max-size",
            "2",
            "--up-to-iso",
            "--format",
            "json"
        ]),
        3
    );
    let b = stdout(&nagata(&[
        "enumerate",
        "brouwerian",
        "--max-size",
        "2",
        "--format",
        "json",
    ]));
    let two: Vec<&str> = b.lines().filter(|l| l.contains("[[1,1],[0,1]]")).collect();
    assert_eq!(two.len(), 2);
}

#[test]
fn enumeration_bound() {
    assert_eq!(
        nagata(&["enumerate", "poset", "--max-size", "6"]).status.code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_nagata"))
        .args(["enumerate", "poset", "--max-size", "3"])
        .env("NAGATA_MAX_SIZE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_is_deterministic_in_the_seed() {
    let args = ["random", "posemigroup", "--size", "3", "--seed", "1"];
    let (a, b) = (nagata(&args), nagata(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.alg");
    let o = nagata(&[
        "random",
        "bimodule",
        "--size",
        "2",
        "--module-size",
        "2",
        "--seed",
        "3",
        "-o",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        nagata(&["check", path_str(&out), "--level", "biaction"]).status.code(),
        Some(0)
    );
}

#[test]
fn suite_corpus_passes_and_is_repeatable() {
    let a = nagata(&["suite", "corpus"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    let b = nagata(&["suite", "corpus"]);
    assert_eq!(a.stdout, b.stdout);
    let summaries = stdout(&a).lines().filter(|l| l.starts_with("PASS criterion.")).count();
    assert_eq!(summaries, 9);
}
