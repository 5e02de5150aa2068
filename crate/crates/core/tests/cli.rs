use expsum::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("expsum").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn field_json_carries_modulus_and_generator() {
    let (code, out, _) = call(&["--format", "json", "field", "--field", "3^2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["q"], 9);
    assert_eq!(v["modulus_coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn lpoly_json_reports_every_check() {
    let (code, out, _) = call(&[
        "--format", "json", "lpoly", "--field", "3", "--u", "2", "--a", "1", "--b", "2",
        "--vanish-check", "--predict-to", "5",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["L"].as_array().unwrap().len(), 4);
    assert_eq!(v["checks"]["vanishing"]["ok"], true);
    assert_eq!(v["checks"]["closed_form"]["ok"], true);
    assert_eq!(v["checks"]["predictions"].as_array().unwrap().len(), 5);
}

#[test]
fn lpoly_refuses_when_hypothesis_fails() {
    let (code, _, err) = call(&["lpoly", "--field", "3", "--u", "3", "--a", "1", "--b", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("divides"), "{err}");
}

#[test]
fn kloosterman_routes_agree() {
    let (code, out, _) = call(&["kloosterman", "--field", "2^2", "--s", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().filter(|l| l.ends_with(",true")).count() == 4, "{out}");
}

#[test]
fn sequence_modes() {
    let (code, out, _) = call(&["sequence", "--field", "2^3", "--u", "3", "--a", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 8);
    assert!(out.contains("\n1,55\n"));
    let (code, out, _) = call(&["sequence", "--field", "2^2", "--u", "1", "--mode", "convolution"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "all 27 triples pass");
    let (code, _, _) = call(&["sequence", "--field", "2^3", "--u", "7"]);
    assert_eq!(code, 1);
    let (code, _, _) = call(&["sequence", "--field", "2^3", "--u", "7", "--allow-noncoprime"]);
    assert_eq!(code, 0);
}

#[test]
fn probe_empty_grid_is_header_only() {
    let (code, out, _) = call(&["probe", "--fields", ""]);
    assert_eq!(code, 0);
    assert_eq!(out, "q,u,a,b,min_ratio,max_ratio,hypotheses_ok\n");
    let (code, out, _) = call(&["probe", "--fields", "3", "--us", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn newton_and_dickson() {
    let (code, out, _) = call(&["newton", "--p", "1,2,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("e_3 = 1/6"));
    let (code, _, _) = call(&["newton"]);
    assert_eq!(code, 1);
    let (code, out, _) = call(&["dickson", "--x", "1,1", "--a", "1", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn selftest_and_determinism() {
    let first = call(&["--format", "json", "selftest"]);
    assert_eq!(first.0, 0);
    assert_eq!(first, call(&["--format", "json", "selftest"]));
    let a = call(&["--format", "json", "lpoly", "--field", "2^2", "--u", "3", "--a", "2", "--b", "3"]);
    let b = call(&["--format", "json", "lpoly", "--field", "2^2", "--u", "3", "--a", "2", "--b", "3"]);
    assert_eq!(a, b);
}
