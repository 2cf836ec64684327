use std::process::{Command, Output};

use ncribbon::ncsf::ElementJson;
use ncribbon::NcsfElement;

fn ncribbon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncribbon")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncribbon(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn element_from_json(s: &str) -> NcsfElement {
    let js: ElementJson = serde_json::from_str(s).unwrap();
    NcsfElement::from_json(&js).unwrap()
}

#[test]
fn expand_examples() {
    assert_eq!(
        stdout(&["expand", "--basis", "hall-littlewood", "--index", "1.2.1"]),
        "R_{121} + t R_{31} + t^3 R_{13} + t^4 R_4\n"
    );
    assert_eq!(
        stdout(&["expand", "--basis", "gamma-schur", "--level", "1.3.1", "--index", "1.1.2.1"]),
        "R_{1121} + t R_{221} + t^4 R_{113} + t^5 R_{23}\n"
    );
    assert_eq!(stdout(&["expand", "--basis", "ribbon", "--index", "4"]), "R_4\n");
    assert_eq!(
        stdout(&["expand", "--basis", "hall-littlewood", "--index", "1.2.1", "--flavor", "multivariate"]),
        "R_{121} + t_1 R_{31} + t_3 R_{13} + t_1t_3 R_4\n"
    );
}

#[test]
fn tables_match_the_goldens_byte_for_byte() {
    let goldens = [
        ("gamma-schur", "3.1", include_str!("../../core/tests/golden/gamma_schur_31.txt")),
        ("gamma-schur", "2.2", include_str!("../../core/tests/golden/gamma_schur_22.txt")),
        ("gamma-schur", "1.3", include_str!("../../core/tests/golden/gamma_schur_13.txt")),
        ("gamma-schur", "1.1.2", include_str!("../../core/tests/golden/gamma_schur_112.txt")),
        ("gamma-schur", "1.2.1", include_str!("../../core/tests/golden/gamma_schur_121.txt")),
        ("gamma-schur", "2.1.1", include_str!("../../core/tests/golden/gamma_schur_211.txt")),
        ("macdonald-gamma", "3.1", include_str!("../../core/tests/golden/macdonald_31.txt")),
        ("macdonald-gamma", "2.2", include_str!("../../core/tests/golden/macdonald_22.txt")),
        ("macdonald-gamma", "1.3", include_str!("../../core/tests/golden/macdonald_13.txt")),
    ];
    for (kind, level, golden) in goldens {
        assert_eq!(stdout(&["table", "--kind", kind, "--n", "4", "--level", level]), golden, "{kind} {level}");
    }
}

#[test]
fn small_table_and_json_table() {
    assert_eq!(
        stdout(&["table", "--kind", "gamma-schur", "--n", "2", "--level", "2"]),
        "(2)-Schur functions\n      (2)  (11)\n(2)   1    ·\n(11)  ·    1\n"
    );
    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "table", "--kind", "gamma-schur", "--n", "4", "--level", "2.1.1"]))
            .unwrap();
    let column: Vec<&str> = js["cells"].as_array().unwrap().iter().map(|row| row[0].as_str().unwrap()).collect();
    assert_eq!(column, ["t^5", "0", "t^3", "0", "t^2", "0", "1", "0"]);
    assert!(!ncribbon(&["table", "--kind", "gamma-schur", "--n", "5", "--level", "2.1.1"]).status.success());
}

#[test]
fn nabla_reports_the_sign() {
    let text = stdout(&["nabla", "--basis", "ribbon", "--index", "1.2.1"]);
    let (sign, rest) = text.split_once('\n').unwrap();
    assert_eq!(sign, "sign: -1");
    let expected = NcsfElement::parse(
        "q^2t^2 R_{22} + (q^3t^2 + q^2t^5) R_{211} + (q^5t^2 + q^2t^3) R_{112} \
         + (q^6t^2 + q^5t^5 + q^3t^3 + q^2t^6) R_{1111}",
    )
    .unwrap();
    assert_eq!(NcsfElement::parse(rest.trim()).unwrap(), expected);

    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "nabla", "--basis", "ribbon", "--index", "1.2.1"])).unwrap();
    assert_eq!(js["sign"], -1);
    assert_eq!(element_from_json(&js["element"].to_string()), expected);

    let hl = stdout(&["nabla", "--basis", "modified-hall-littlewood", "--index", "1.2.1"]);
    assert!(hl.starts_with("sign: -1\n"));
}

#[test]
fn branch_and_convert() {
    assert_eq!(
        stdout(&["branch", "--from", "2.2.1", "--to", "4.1", "--index", "1.1.2.1"]),
        "R^{(41)}_{1121}(A;t) + t^2 R^{(41)}_{131}(A;t)\n"
    );
    let converted = stdout(&[
        "convert", "--from", "hall-littlewood", "--to", "gamma-schur", "--level", "3.1", "--index", "1.1.1.1",
    ]);
    assert_eq!(
        NcsfElement::parse(converted.trim()).unwrap(),
        NcsfElement::parse("R^{(31)}_{1111} + t R^{(31)}_{211} + t^2 R^{(31)}_{121} + t^3 R^{(31)}_{31}").unwrap()
    );
    assert_eq!(
        stdout(&["convert", "--from", "ribbon", "--to", "homogeneous", "--index", "1.1"]),
        "h_{11} - h_2\n"
    );
    assert!(!ncribbon(&["convert", "--from", "ribbon", "--to", "macdonald", "--index", "1.1"]).status.success());
}

#[test]
fn json_output_round_trips() {
    let cases: [&[&str]; 5] = [
        &["expand", "--basis", "modified-macdonald", "--index", "3.1"],
        &["expand", "--basis", "modified-macdonald", "--index", "3.1", "--flavor", "multivariate"],
        &["expand", "--basis", "gamma-schur-inverted", "--level", "2.2", "--index", "1.1.2"],
        &["branch", "--from", "1.3.1", "--to", "4.1", "--index", "1.1.2.1"],
        &["convert", "--from", "macdonald", "--to", "gamma-schur", "--level", "2.2", "--index", "2.1.1"],
    ];
    for args in cases {
        let text = stdout(args);
        let mut json_args = vec!["--format", "json"];
        json_args.extend_from_slice(args);
        let from_json = element_from_json(&stdout(&json_args));
        assert_eq!(NcsfElement::parse(text.trim()).unwrap(), from_json, "{args:?}");
    }
}

#[test]
fn verify_exit_status() {
    let ok = ncribbon(&["verify", "--suite", "nabla", "--max-degree", "5"]);
    assert!(ok.status.success());
    let report = String::from_utf8(ok.stdout).unwrap();
    assert!(report.starts_with("suite nabla: pass"));
    assert!(report.contains("nabla examples in degree 4 [1 cases, 0 failures]"));

    let js: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "verify", "--suite", "lemmas", "--max-degree", "4"])).unwrap();
    assert_eq!(js[0]["suite"], "lemmas");

    assert_eq!(ncribbon(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ncribbon(&["verify", "--max-degree", "9"]).status.code(), Some(2));
}

#[test]
fn errors_go_to_stderr() {
    let out = ncribbon(&["expand", "--basis", "gamma-schur", "--level", "1.3", "--index", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("does not refine"));
}

#[test]
fn degree_cap_is_configurable() {
    let column = ["1"; 25].join(".");
    let args = ["table", "--kind", "macdonald-gamma", "--n", "25", "--level", &column];
    let capped = ncribbon(&args);
    assert!(String::from_utf8(capped.stderr).unwrap().contains("exceeds the supported cap of 24"));
    let raised = Command::new(env!("CARGO_BIN_EXE_ncribbon"))
        .args(args)
        .env("NCRIBBON_MAX_DEGREE", "25")
        .output()
        .unwrap();
    assert!(raised.status.success(), "{}", String::from_utf8_lossy(&raised.stderr));
}
