use std::process::Command;

fn sincint(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sincint")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "3", "3"], 0),
        (&["eval", "1", "1", "--format", "decimal"], 0),
        (&["eval", "12", "7", "--format", "latex"], 0),
        (&["eval", "2", "1"], 2),
        (&["eval", "4", "1"], 2),
        (&["eval", "3", "4"], 2),
        (&["eval", "0", "0"], 2),
        (&["eval", "-3", "1"], 2),
        (&["eval", "3"], 2),
        (&["eval", "3", "3", "--digits", "0", "--format", "decimal"], 2),
        (&["table", "--n-max", "5", "--format", "json"], 0),
        (&["verify", "identity", "--n-max", "60"], 0),
        (&["verify", "series", "--n-max", "10"], 0),
        (&["verify", "oracle", "--n-max", "12", "--tol", "1e-8"], 0),
        (&["verify", "lemma", "--q-max", "6"], 0),
        (&["verify", "nothing"], 2),
        (&[], 2),
    ];
    for (args, expected) in cases {
        let (code, _, err) = sincint(args);
        assert_eq!(code, *expected, "{args:?}: {err}");
    }
}

#[test]
fn eval_prints_exact_form() {
    assert_eq!(sincint(&["eval", "3", "3"]).1, "3/8 * pi\n");
    assert_eq!(sincint(&["eval", "4", "3"]).1, "1 * log(2)\n");
    let (_, _, err) = sincint(&["eval", "2", "1"]);
    assert!(err.contains("divergent: q=1 requires odd n"));
}

#[test]
fn verify_identity_reports_case_count() {
    let (code, out, _) = sincint(&["verify", "identity", "--n-max", "60"]);
    assert_eq!(code, 0);
    assert_eq!(out, "PASS (870 cases)\n");
}

#[test]
fn oracle_report_is_sorted() {
    let (_, out, _) = sincint(&["verify", "oracle", "--n-max", "6"]);
    let keys: Vec<(u32, u32)> = out
        .lines()
        .filter(|l| l.starts_with("ok"))
        .map(|l| {
            let field = |name: &str| {
                l.split_whitespace().find_map(|w| w.strip_prefix(name)).unwrap().parse::<u32>().unwrap()
            };
            (field("n="), field("q="))
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 18);
}

#[test]
fn json_lines_parse_back() {
    let (_, out, _) = sincint(&["table", "--n-max", "9", "--format", "json", "--digits", "12"]);
    for line in out.lines() {
        let record = sincint::render::ValueRecord::from_json(line).unwrap();
        assert_eq!(record.to_json().unwrap(), line);
    }
}
