use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coverkit::cli::files::{parse_cover_file, write_cover_string};
use coverkit::construct::{build_unsplittable, sharpness_example, UnsplittableSpec};
use serde_json::Value;

const CLASSIC: &str = r#"{"classes":[{"a":0,"n":2},{"a":0,"n":3},{"a":1,"n":4},{"a":5,"n":6},{"a":7,"n":12}]}"#;
const EXACT: &str = r#"{"classes":[{"a":0,"n":2},{"a":1,"n":2},{"a":0,"n":3},{"a":1,"n":3},{"a":2,"n":3}]}"#;
const GAUSSIAN: &str = r#"{"min_poly":[1,0,1],"classes":[{"alpha":[0,0],"beta":[1,1]},{"alpha":[1,0],"beta":[1,1]}]}"#;
const MALFORMED: &str = "{\"classes\": [\n  {\"a\": 0, \"n\": }\n]}";

struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("coverkit-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        for (file, text) in [
            ("classic.json", CLASSIC),
            ("exact.json", EXACT),
            ("gaussian.json", GAUSSIAN),
            ("malformed.json", MALFORMED),
            ("zero.json", r#"{"classes":[{"a":0,"n":0}]}"#),
            (
                "nonmonic.json",
                r#"{"min_poly":[2,0,2],"classes":[{"alpha":[0,0],"beta":[1,0]}]}"#,
            ),
        ] {
            std::fs::write(dir.join(file), text).unwrap();
        }
        Fixtures { dir }
    }

    fn path(&self, file: &str) -> String {
        self.dir.join(file).to_str().unwrap().to_string()
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.dir).ok();
    }
}

fn coverkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coverkit"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn exit_codes_on_passing_input() {
    let fx = Fixtures::new("pass");
    let classic = fx.path("classic.json");
    let exact = fx.path("exact.json");
    let gaussian = fx.path("gaussian.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "--input", &classic],
        vec!["spectrum", "--input", &classic],
        vec!["spectrum", "--input", &classic, "--brute-force"],
        vec!["theorem11", "--input", &classic],
        vec!["corollary11", "--input", &classic],
        vec!["corollary12", "--input", &exact],
        vec!["remark13", "--input", &exact],
        vec!["remark13", "--input", &classic],
        vec!["lemma21", "--input", &classic, "--theta", "1/2"],
        vec![
            "construct-example11",
            "--m",
            "2",
            "--primes",
            "2,3,5",
            "--check-unsplittable",
        ],
        vec!["sharpness", "--m", "4"],
        vec!["nf-verify", "--input", &gaussian],
        vec!["nf-theorem12", "--input", &gaussian],
        vec!["nf-theorem12", "--input", &gaussian, "--brute-force"],
        vec!["nf-vanishing", "--input", &gaussian],
    ];
    for args in runs {
        let out = coverkit(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn fail_verdict_exits_one() {
    let fx = Fixtures::new("fail");
    let out = coverkit(&["--json", "verify", "--input", &fx.path("classic.json"), "--m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["verdict"], "FAIL");
    assert_eq!(r["details"]["multiplicity"], "1");

    let out = coverkit(&["--json", "nf-verify", "--input", &fx.path("gaussian.json"), "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["verdict"], "FAIL");
}

#[test]
fn malformed_input_exits_two() {
    let fx = Fixtures::new("malformed");
    for file in ["malformed.json", "zero.json", "missing.json"] {
        for cmd in [
            "verify",
            "spectrum",
            "theorem11",
            "corollary11",
            "corollary12",
            "remark13",
        ] {
            let out = coverkit(&[cmd, "--input", &fx.path(file)]);
            assert_eq!(out.status.code(), Some(2), "{cmd} {file}");
            assert!(
                String::from_utf8_lossy(&out.stderr).starts_with("error["),
                "{cmd} {file}"
            );
        }
    }
    let out = coverkit(&["verify", "--input", &fx.path("malformed.json")]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    for cmd in ["nf-verify", "nf-theorem12", "nf-vanishing"] {
        for file in ["nonmonic.json", "malformed.json"] {
            let out = coverkit(&["--json", cmd, "--input", &fx.path(file)]);
            assert_eq!(out.status.code(), Some(2), "{cmd} {file}");
            assert_eq!(report(&out)["verdict"], "ERROR");
        }
    }
    assert_eq!(
        coverkit(&["lemma21", "--input", &fx.path("classic.json"), "--theta", "1/5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coverkit(&["construct-example11", "--m", "2", "--primes", "2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coverkit(&["construct-example11", "--m", "1", "--primes", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(coverkit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(coverkit(&["verify"]).status.code(), Some(2));
    assert_eq!(coverkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_is_byte_deterministic() {
    let fx = Fixtures::new("determinism");
    let classic = fx.path("classic.json");
    let gaussian = fx.path("gaussian.json");
    for args in [
        vec!["--json", "spectrum", "--input", &classic],
        vec!["--json", "theorem11", "--input", &classic],
        vec!["--json", "nf-theorem12", "--input", &gaussian],
        vec![
            "--json",
            "construct-example11",
            "--m",
            "2",
            "--primes",
            "3,5,7",
            "--check-unsplittable",
        ],
    ] {
        let first = coverkit(&args);
        assert_eq!(first.stdout, coverkit(&args).stdout, "{args:?}");
        assert!(first.stdout.ends_with(b"\n"));
    }
}

#[test]
fn reports_use_decimal_strings_and_ascending_residues() {
    let fx = Fixtures::new("report");
    let r = report(&coverkit(&["--json", "theorem11", "--input", &fx.path("classic.json")]));
    assert_eq!(r["command"], "theorem11");
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["details"]["multiplicity"], "1");
    assert_eq!(r["details"]["min_nonzero_count"], "2");
    let residues: Vec<u64> = r["details"]["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row["residue"].as_str().unwrap().parse().unwrap())
        .collect();
    assert_eq!(residues, (0..12).collect::<Vec<_>>());

    let r = report(&coverkit(&[
        "--json",
        "lemma21",
        "--input",
        &fx.path("classic.json"),
        "--theta",
        "1/2",
    ]));
    assert_eq!(r["verdict"], "PASS");
    assert!(r["details"]["t"].as_str().unwrap().parse::<usize>().unwrap() >= 1);
}

fn emitted(path: &Path, args: &[&str]) {
    let mut full = args.to_vec();
    let target = path.to_str().unwrap();
    full.extend(["--output", target]);
    assert_eq!(coverkit(&full).status.code(), Some(0));
}

#[test]
fn emitted_systems_round_trip() {
    let fx = Fixtures::new("roundtrip");
    let path = fx.dir.join("example.json");
    emitted(&path, &["construct-example11", "--m", "2", "--primes", "2,3,5"]);
    let built = build_unsplittable(&UnsplittableSpec::new(2, vec![2, 3, 5]).unwrap()).unwrap();
    let parsed = parse_cover_file(&path).unwrap();
    assert_eq!(parsed, built.system);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), write_cover_string(&parsed));

    let path = fx.dir.join("sharp.json");
    emitted(&path, &["sharpness", "--m", "3"]);
    assert_eq!(parse_cover_file(&path).unwrap(), sharpness_example(3).unwrap());
}
