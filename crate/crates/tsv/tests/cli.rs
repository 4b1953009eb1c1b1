use std::io::Write;
use std::process::Command;

use tsv::cli::{exit_code, EXIT_FALSE, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use tsv_core::Error;

fn sample() -> String {
    format!("{}/../../sessions/curves.json", env!("CARGO_MANIFEST_DIR"))
}

fn run_on(session: &str, args: &[&str]) -> (String, i32) {
    let mut argv = vec!["tsv"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--session", session]);
    tsv::run(argv)
}

fn run(args: &[&str]) -> (String, i32) {
    run_on(&sample(), args)
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn sp_verify_s_element() {
    let (out, code) = run(&["sp-verify", "S_element"]);
    assert_eq!(out, "symplectic: true (oracles: dagger ✓ gram ✓ unitary ✓)\n");
    assert_eq!(code, EXIT_OK);
}

#[test]
fn sp_verify_non_symplectic_is_false() {
    let (out, code) = run(&["sp-verify", "doubling"]);
    assert_eq!(out, "symplectic: false (oracles: dagger ✗ gram ✗ unitary ✗)\n");
    assert_eq!(code, EXIT_FALSE);
}

#[test]
fn classify_lower_shear() {
    let (out, code) = run(&["classify", "shear1"]);
    assert_eq!(out.lines().next(), Some("case: GammaIsogeny, degree 1"));
    assert_eq!(code, EXIT_OK);
    let (out, _) = run(&["classify", "upper_shear"]);
    assert_eq!(out.lines().next(), Some("case: BetaIsogeny, degree 4"));
    let (out, _) = run(&["classify", "neg_sqrt2"]);
    assert_eq!(out.lines().next(), Some("case: GraphIso"));
}

#[test]
fn classify_rejects_non_symplectic() {
    let (out, code) = run(&["classify", "doubling"]);
    assert_eq!(out, "error: not symplectic\n");
    assert_eq!(code, EXIT_FALSE);
}

#[test]
fn endalg_verdicts() {
    let (out, code) = run(&["endalg", "Egen"]);
    assert!(out.contains("verdict: Field (Q), rank 1\n"), "{}", out);
    assert_eq!(code, EXIT_OK);
    // tau = i sqrt 2 has complex multiplication by Z[sqrt -2]
    let (out, _) = run(&["endalg", "Esqrt2"]);
    assert!(out.contains("verdict: Field (Q[x]/(x^2 + 2)), rank 2\n"), "{}", out);
    let (out, _) = run(&["endalg", "Ei"]);
    assert!(out.contains("verdict: Field (Q[x]/(x^2 + 1)), rank 2\n"), "{}", out);
    assert!(out.contains("certificate: element [0, 1] has irreducible minimal polynomial x^2 + 1"), "{}", out);
}

#[test]
fn product_surface_is_not_applicable() {
    let session = temp_file(
        r#"{"tsv": 1, "extension_d": 1,
  "tori": [{"name": "EixEi", "J": [["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]]}],
  "block_isos": [{"name": "id", "source": "EixEi", "target": "EixEi",
    "alpha": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
    "beta": [["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]],
    "gamma": [["0","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]],
    "delta": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]}]}"#,
    );
    let path = session.path().to_str().unwrap();
    let (out, code) = run_on(path, &["endalg", "EixEi"]);
    assert!(out.contains("verdict: NotDivision, rank 8"), "{}", out);
    assert_eq!(code, EXIT_OK);
    let (out, code) = run_on(path, &["classify", "id"]);
    assert!(out.starts_with("error: not applicable"), "{}", out);
    assert_eq!(code, EXIT_FALSE);
    let (out, code) = run_on(path, &["verify-batch", "EixEi", "EixEi", "1", "--bound", "1"]);
    assert!(out.contains("NotApplicable: ") && out.contains("total: "), "{}", out);
    let json: serde_json::Value =
        serde_json::from_str(&run_on(path, &["verify-batch", "EixEi", "EixEi", "1", "--bound", "1", "--json"]).0)
            .unwrap();
    assert_eq!(json["not_applicable"], json["total"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn recipes_reconstruct() {
    for (name, kind) in
        [("shear1", "PoincareConjugated"), ("S_element", "OrlovConstruction"), ("identity", "GraphKernel")]
    {
        let (out, code) = run(&["recipe", name]);
        assert!(out.contains(&format!("recipe: {}\n", kind)), "{}", out);
        assert!(out.contains("verified: ✓"), "{}", out);
        assert_eq!(code, EXIT_OK);
    }
}

#[test]
fn dagger_ddagger_swap() {
    let (out, _) = run(&["dagger", "shear1"]);
    assert!(out.contains("gamma = [[-1, 0], [0, -1]]"), "{}", out);
    let (out, _) = run(&["ddagger", "shear1"]);
    assert!(out.contains("gamma = [[-1, 0], [0, -1]]") && out.contains("beta = [[0, 0], [0, 0]]"), "{}", out);
    let (out, _) = run(&["swap", "shear1"]);
    assert!(out.contains("beta = [[1, 0], [0, 1]]") && out.contains("gamma = [[0, 0], [0, 0]]"), "{}", out);
}

#[test]
fn hom_and_isogeny() {
    let (out, code) = run(&["hom", "Ei", "E2i"]);
    assert!(out.starts_with("Hom(Ei, E2i): rank 2\n"), "{}", out);
    assert_eq!(code, EXIT_OK);
    let (out, code) = run(&["isogeny", "Ei", "E2i"]);
    assert!(out.contains("degree 2"), "{}", out);
    assert_eq!(code, EXIT_OK);
    let (out, code) = run(&["isogeny", "Ei", "Esqrt2"]);
    assert_eq!(out, "not isogenous: Hom(Ei, Esqrt2) = 0\n");
    assert_eq!(code, EXIT_FALSE);
    let (out, _) = run(&["hom", "Ei", "Egen"]);
    assert!(out.starts_with("Hom(Ei, Egen): rank 0\n"), "{}", out);
}

#[test]
fn lagrangian_command() {
    let graph = temp_file(r#"{"basis": [["1","0","0","0"], ["0","1","0","0"]]}"#);
    let (out, code) = run(&["lagrangian", "Ei", graph.path().to_str().unwrap()]);
    assert!(out.starts_with("lagrangian: true (isotropic ✓ half-rank ✓ saturated ✓ unimodular ✓)"), "{}", out);
    assert_eq!(code, EXIT_OK);

    let doubled = temp_file(r#"{"basis": [["2","0","0","0"], ["0","2","0","0"]]}"#);
    let (out, code) = run(&["lagrangian", "Ei", doubled.path().to_str().unwrap()]);
    assert!(out.starts_with("lagrangian: false"), "{}", out);
    assert!(out.contains("saturated ✗"), "{}", out);
    assert_eq!(code, EXIT_FALSE);

    // a single vector is not J_X-stable
    let line = temp_file(r#"{"basis": [["1","0","0","0"]]}"#);
    let (out, code) = run(&["lagrangian", "Ei", line.path().to_str().unwrap()]);
    assert!(out.starts_with("error: sublattice is not stable"), "{}", out);
    assert_eq!(code, EXIT_FALSE);
    let (out, code) = run(&["lagrangian", "Ei", line.path().to_str().unwrap(), "--lattice"]);
    assert!(out.contains("half-rank ✗"), "{}", out);
    assert_eq!(code, EXIT_FALSE);
}

#[test]
fn generators_and_batch() {
    let (out, code) = run(&["generators", "Ei", "2"]);
    assert!(out.starts_with("generators of Sp(Ei x Ei^), bound 2: 13\n"), "{}", out);
    assert_eq!(code, EXIT_OK);
    let (out, _) = run(&["generators", "Ei", "--bound", "1"]);
    assert!(out.starts_with("generators of Sp(Ei x Ei^), bound 1: 9\n"), "{}", out);

    let (out, code) = run(&["verify-batch", "Ei", "Ei", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let counts = v["counts"].as_object().unwrap();
    let sum: u64 = counts.values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(Some(sum), v["total"].as_u64());
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(code, EXIT_OK);

    // no symplectic isomorphism with small coefficients
    let (out, code) = run(&["verify-batch", "Ei", "E2i", "1"]);
    assert!(out.contains("note: no symplectic isomorphism"), "{}", out);
    assert_eq!(code, EXIT_FALSE);
}

#[test]
fn json_mirrors_text() {
    let (out, code) = run(&["sp-verify", "S_element", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["symplectic"], true);
    assert_eq!(v["oracles"]["unitary"], true);
    assert_eq!(v["exit_code"], 0);
    assert_eq!(code, EXIT_OK);
    let (out, _) = run(&["classify", "shear1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"], "GammaIsogeny");
    assert_eq!(v["degree"], "1");
    let (out, _) = run(&["dual", "Esqrt2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["J"][0][1], "-1/2*sqrt(2)");
}

fn has_decimal(s: &str) -> bool {
    let b = s.as_bytes();
    b.windows(3).any(|w| w[0].is_ascii_digit() && w[1] == b'.' && w[2].is_ascii_digit())
}

#[test]
fn reports_never_print_decimals() {
    let basis = temp_file(r#"{"basis": [["1","0","0","0"], ["0","1","0","0"]]}"#);
    let bp = basis.path().to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["check"],
        vec!["dual", "Egen"],
        vec!["hom", "Esqrt2", "Esqrt2^"],
        vec!["end", "Esqrt2"],
        vec!["endalg", "Egen"],
        vec!["isogeny", "Ei", "E2i"],
        vec!["pair", "Egen"],
        vec!["pair", "Esqrt2"],
        vec!["dagger", "upper_shear"],
        vec!["lagrangian", "Esqrt2", bp],
        vec!["generators", "Esqrt2", "1"],
        vec!["recipe", "shear1"],
        vec!["verify-batch", "Esqrt2", "Esqrt2", "1"],
    ];
    for c in commands {
        for json in [false, true] {
            let mut args = c.clone();
            if json {
                args.push("--json");
            }
            let (out, code) = run(&args);
            assert_ne!(code, EXIT_USAGE, "{:?}: {}", args, out);
            assert!(!has_decimal(&out), "{:?}: {}", args, out);
        }
    }
}

#[test]
fn usage_errors() {
    assert_eq!(tsv::run(["tsv", "check"]).1, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).1, EXIT_USAGE);
    assert_eq!(run(&["hom", "Ei"]).1, EXIT_USAGE);
    let (out, code) = run(&["dual", "Ek"]);
    assert_eq!(out, "error: unknown torus \"Ek\"\n");
    assert_eq!(code, EXIT_USAGE);
    assert_eq!(run(&["classify", "nothing"]).1, EXIT_USAGE);
    assert_eq!(run_on("/nonexistent/session.json", &["check"]).1, EXIT_USAGE);
    let bad = temp_file("{\"tsv\": 1,\n  \"extension_d\": 1,\n  \"tori\": [\n    {\"name\": \"E1\", \"J\": [[\"1\",\"0\"],[\"0\",\"1\"]]}]}");
    let (out, code) = run_on(bad.path().to_str().unwrap(), &["check"]);
    assert_eq!(out, "error: line 4, column 14: J^2 != -I at torus E1\n");
    assert_eq!(code, EXIT_USAGE);
    let (_, code) = tsv::run(["tsv", "--help"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn exit_codes_for_core_errors() {
    assert_eq!(exit_code(&Error::TheoremViolation("x".into())), EXIT_VIOLATION);
    assert_eq!(exit_code(&Error::OracleDisagreement("x".into())), EXIT_VIOLATION);
    assert_eq!(exit_code(&Error::NotSymplectic), EXIT_FALSE);
    assert_eq!(exit_code(&Error::NotApplicable("x".into())), EXIT_FALSE);
    assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_tsv");
    let out = Command::new(bin).args(["sp-verify", "S_element", "--session", &sample()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "symplectic: true (oracles: dagger ✓ gram ✓ unitary ✓)\n");
    let out = Command::new(bin).args(["sp-verify", "doubling", "--session", &sample()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(bin).args(["sp-verify", "S_element"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("--session"));
}
