use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use divint::{Limits, Signature};
use divint_cli::input::parse_family;
use divint_cli::ReportDocument;
use proptest::prelude::*;

fn divint(args: &[&str]) -> Output {
    divint_in(Path::new(env!("CARGO_MANIFEST_DIR")), args, &[])
}

fn divint_in(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_divint"));
    cmd.args(args).current_dir(dir);
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("DIVINT_")) {
        cmd.env_remove(k);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = divint(&["bound", "--sig", "2,1,1,1"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "12\n"));
    assert_eq!(stdout(&divint(&["bound", "--sig", "3"])), "3\n");
    assert_eq!(stdout(&divint(&["count", "--sig", "2,1,1,1"])), "4\n");
    assert_eq!(stdout(&divint(&["count", "--n", "420"])), "4\n");
    assert_eq!(
        stdout(&divint(&["antichains", "--k", "3", "--list"])),
        "4\n{1}\n{2}\n{3}\n{1,2} {1,3} {2,3}\n"
    );
    let o = divint(&["oracle", "--sig", "1,1,1,1"]);
    let text = stdout(&o);
    assert!(
        text.contains("min_size 8\n") && text.contains("min_count 12\n"),
        "{text}"
    );
}

#[test]
fn reordered_signature_gets_notice() {
    let o = divint(&["bound", "--sig", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    assert!(stderr(&o).contains("reordered to (2,1)"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| divint(args).status.code();
    assert_eq!(code(&["bound", "--sig", "2,1"]), Some(0));
    assert_eq!(code(&["bound", "--sig", "2,x"]), Some(2));
    assert_eq!(code(&["bound", "--sig", "2,0"]), Some(2));
    assert_eq!(code(&["bound"]), Some(2));
    assert_eq!(code(&["bound", "--sig", "2", "--n", "12"]), Some(2));
    assert_eq!(code(&["bound", "--n", "1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["openprob", "--sig", "2,1", "--t", "1"]), Some(2));
    assert_eq!(code(&["antichains", "--k", "7"]), Some(3));
    assert_eq!(code(&["oracle", "--sig", "1,1,1,1,1,1,1"]), Some(3));
    assert_eq!(
        code(&[
            "--max-universe",
            "2",
            "openprob",
            "--sig",
            "1,1,1,1",
            "--t",
            "2"
        ]),
        Some(0)
    );
    assert_eq!(
        code(&[
            "verify",
            "--max-n",
            "2",
            "--max-exp",
            "2",
            "--inject-fault",
            "least-size-equality"
        ]),
        Some(4)
    );
    assert_eq!(code(&["verify", "--max-n", "2", "--max-exp", "2"]), Some(0));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn injected_fault_serializes_counterexample() {
    let o = divint(&[
        "--format",
        "json",
        "verify",
        "--max-n",
        "2",
        "--max-exp",
        "2",
        "--inject-fault",
        "complement-dichotomy",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let doc = ReportDocument::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.result["all_passed"], false);
    let failing: Vec<_> = doc.result["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing
        .iter()
        .all(|c| c["claim"] == "complement-dichotomy" && c["counterexample"].is_string()));
}

#[test]
fn json_output_round_trips() {
    let runs: &[&[&str]] = &[
        &["bound", "--sig", "2,1,1,1"],
        &[
            "extremal",
            "--n",
            "420",
            "--list",
            "--classify",
            "3,6,12,15,30,60,21,42,84,105,210,420",
        ],
        &["oracle", "--sig", "2,2,1", "--list"],
        &["antichains", "--k", "4", "--list"],
        &["matching", "--k", "3", "--list"],
        &["matching", "--sig", "2,1,1,1"],
        &["openprob", "--max-n", "3", "--list"],
        &["verify", "--max-n", "2", "--max-exp", "3"],
    ];
    for args in runs {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let o = divint(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let doc = ReportDocument::parse(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{args:?}");
    }
}

#[test]
fn classification_through_cli() {
    let o = divint(&[
        "--format",
        "json",
        "extremal",
        "--n",
        "420",
        "--classify",
        "3,6,12,15,30,60,21,42,84,105,210,420",
    ]);
    let doc = ReportDocument::parse(&stdout(&o)).unwrap();
    let c = &doc.result["classification"];
    assert_eq!(c["is_extremal"], true);
    assert_eq!(c["characterizations"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn thread_count_does_not_change_bytes() {
    let one = divint(&[
        "--format",
        "json",
        "--threads",
        "1",
        "verify",
        "--max-n",
        "3",
        "--max-exp",
        "2",
    ]);
    let four = divint(&[
        "--format",
        "json",
        "--threads",
        "4",
        "verify",
        "--max-n",
        "3",
        "--max-exp",
        "2",
    ]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let one = divint(&["--format", "csv", "--threads", "1", "openprob"]);
    let four = divint(&["--format", "csv", "--threads", "4", "openprob"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_tables() {
    let o = divint(&["--format", "csv", "oracle", "--sig", "2,1"]);
    assert_eq!(stdout(&o), "size,count\n3,1\n4,1\n");
    let o = divint(&["--format", "csv", "bound", "--sig", "2,1"]);
    assert_eq!(stdout(&o), "signature,min_size\n\"(2,1)\",3\n");
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("divint.toml"), "format = \"csv\"\n").unwrap();
    let run = |args: &[&str], env: &[(&str, &str)]| stdout(&divint_in(dir.path(), args, env));
    assert!(run(&["bound", "--sig", "2"], &[]).starts_with("signature,min_size\n"));
    assert!(run(&["bound", "--sig", "2"], &[("DIVINT_FORMAT", "json")]).starts_with('{'));
    assert_eq!(
        run(
            &["--format", "text", "bound", "--sig", "2"],
            &[("DIVINT_FORMAT", "json")]
        ),
        "2\n"
    );

    fs::write(dir.path().join("tight.toml"), "max-universe = 1\n").unwrap();
    let o = divint_in(
        dir.path(),
        &[
            "--config",
            "tight.toml",
            "openprob",
            "--sig",
            "1,1,1",
            "--t",
            "2",
        ],
        &[],
    );
    assert!(stdout(&o).contains("max-universe"), "{}", stdout(&o));

    fs::write(dir.path().join("bad.toml"), "max-kk = 3\n").unwrap();
    assert_eq!(
        divint_in(
            dir.path(),
            &["--config", "bad.toml", "bound", "--sig", "2"],
            &[]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        divint_in(
            dir.path(),
            &["--config", "missing.toml", "bound", "--sig", "2"],
            &[]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn antichain_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let first = divint(&["--cache-dir", c, "antichains", "--k", "4", "--list"]);
    let file = cache.join("antichains-k4.json");
    assert!(file.is_file());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(doc["k"], 4);
    assert_eq!(doc["count"], 12);

    let second = divint(&["--cache-dir", c, "antichains", "--k", "4", "--list"]);
    assert_eq!(first.stdout, second.stdout);

    fs::write(
        &file,
        "{\"k\": 4, \"antichains\": [[1]], \"count\": 1, \"tool_version\": \"0.1.0\"}",
    )
    .unwrap();
    let third = divint(&["--cache-dir", c, "antichains", "--k", "4", "--list"]);
    assert_eq!(first.stdout, third.stdout);
    assert!(stderr(&third).contains("ignoring cache"));

    let other = dir.path().join("other");
    divint(&[
        "--cache-dir",
        other.to_str().unwrap(),
        "--no-cache",
        "antichains",
        "--k",
        "3",
    ]);
    assert!(!other.exists());
}

proptest! {
    #[test]
    fn family_text_round_trips(pick in prop::collection::vec(any::<bool>(), 23)) {
        let sig = Signature::from_integer(420).unwrap();
        let lattice = sig.divisors(&Limits::default()).unwrap();
        let chosen: Vec<String> = lattice[1..]
            .iter()
            .zip(&pick)
            .filter(|(_, &p)| p)
            .map(|(d, _)| sig.show(d))
            .collect();
        let f = parse_family(&sig, &chosen.join(",")).unwrap();
        let back: Vec<String> = f.iter().map(|d| sig.show(d)).collect();
        prop_assert_eq!(back, chosen);
    }
}
