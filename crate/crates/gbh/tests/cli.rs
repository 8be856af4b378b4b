use gbh::cli::run;

const SINGULAR: &str = r#"{"kappa":"singular","cof_kappa":"omega","space":["opens_are_cofk_unions_of_closed"]}"#;
const FULL22: &str = r#"{"b":2,"d":2,"points":["00","01","10","11"]}"#;

fn gbh(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gbh").chain(args.iter().copied());
    let code = run(argv.map(std::ffi::OsString::from), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn answer(stdout: &str) -> String {
    let v: serde_json::Value = serde_json::from_str(stdout).unwrap();
    v["answer"].as_str().unwrap().to_string()
}

#[test]
fn ordinal_commands() {
    assert_eq!(gbh(&["ord", "half", "w+4"]).1.trim(), "w+2");
    assert_eq!(gbh(&["ord", "add", "w*2+3", "w+1"]).1.trim(), "w*3+1");
    assert_eq!(gbh(&["ord", "double", "w+3"]).1.trim(), "w+6");
    assert_eq!(gbh(&["ord", "cmp", "L(omega)", "L(cofk)"]).1.trim(), "incomparable");
    let (code, _, err) = gbh(&["ord", "half", "w+3"]);
    assert_eq!(code, 3);
    assert!(err.contains("odd"));
    assert_eq!(gbh(&["ord", "show", "w +"]).0, 3);
}

#[test]
fn pointclass_commands() {
    let (code, out, _) = gbh(&["pointclass", "normalize", "Sigma(0,3,k)", "--ctx", SINGULAR]);
    assert_eq!((code, out.trim()), (0, "Sigma(0,2,k+)"));
    assert_eq!(gbh(&["pointclass", "dual", "Sigma(0,2,k+)"]).1.trim(), "Pi(0,2,k+)");

    let facts = r#"{"kappa":"regular","facts":[{"ord":{"base":"k+","rel":"gt","bound":"3"}}]}"#;
    let (code, out, _) = gbh(&["pointclass", "compare", "Sigma(0,3,k+)", "Delta(0,3,k+)", "--ctx", facts]);
    assert_eq!((code, answer(&out).as_str()), (1, "fails"));

    let (code, out, _) = gbh(&["pointclass", "compare", "Sigma(0,1,k+)", "Sigma(0,2,k+)"]);
    assert_eq!((code, answer(&out).as_str()), (2, "unknown"));

    let (code, out, _) =
        gbh(&["pointclass", "closure", "Sigma(0,w+1,k+)", "--op", "intersection", "--size", "below:cof_kappa"]);
    assert_eq!((code, answer(&out).as_str()), (0, "holds"));

    let (code, out, _) = gbh(&["pointclass", "collapse", "3", "--equal", "Sigma(0,3,k+)=Pi(0,3,k+)"]);
    assert_eq!((code, answer(&out).as_str()), (0, "holds"));

    let (code, out, _) =
        gbh(&["pointclass", "translate", r#"{"ord":{"base":"k+","rel":"le","bound":"3"}}"#, "--ctx", SINGULAR]);
    assert_eq!(code, 0);
    assert!(out.contains("ord_k <= 5"), "{}", out);

    let (code, out, _) = gbh(&["pointclass", "rules"]);
    assert_eq!(code, 0);
    assert!(out.contains("closure.kplus"));
}

#[test]
fn input_errors_exit_three() {
    assert_eq!(gbh(&["pointclass", "normalize", "Sigma(0,3,k", "--ctx", SINGULAR]).0, 3);
    assert_eq!(gbh(&["pointclass", "normalize", "Sigma(0,3,k)", "--ctx", "{"]).0, 3);
    assert_eq!(gbh(&["pointclass", "normalize", "Sigma(0,3,k)", "--ctx", "/no/such/file.json"]).0, 3);
    assert_eq!(gbh(&["nonsense"]).0, 3);
    assert_eq!(gbh(&["code", "interpret", r#"{"nodes":{"":["a"]},"labels":{}}"#, "--space", FULL22]).0, 3);
}

#[test]
fn space_and_code_commands() {
    let (code, out, _) = gbh(&["space", "basic", "--space", FULL22, "0"]);
    assert_eq!((code, out.trim()), (0, r#"["00","01"]"#));
    let code_json = r#"{"nodes":{"":["a","b"],"a":[],"b":[]},"labels":{"a":"0","b":"11"}}"#;
    let (code, out, _) = gbh(&["code", "interpret", code_json, "--space", FULL22]);
    assert_eq!((code, out.trim()), (0, r#"["10"]"#));
    let (code, out, _) = gbh(&["space", "universal", "--basis", "0,1", "--space", FULL22]);
    assert_eq!(code, 0);
    assert!(!out.is_empty());
}

#[test]
fn embed_commands() {
    let id = r#"{"source_depth":1,"source_alphabet":2,"target_depth":1,"target_alphabet":2,"map":{"":"","0":"0","1":"1"}}"#;
    let (code, out, err) = gbh(&["embed", "check", id]);
    assert_eq!(code, 0, "{}", err);
    assert!(out.contains("order_embedding"), "{}", out);
    assert_eq!(gbh(&["embed", "closed", id]).0, 0);
}

#[test]
fn forcing_commands() {
    let (code, out, _) = gbh(&["forcing", "check", r#"{"R":[["","00"]]}"#, "--points", "00,01", "--in-b", "00"]);
    assert_eq!(code, 1);
    assert!(out.contains("(e)"));
    assert_eq!(gbh(&["forcing", "check", "{}", "--points", "00,01"]).0, 0);
    let (code, _, err) = gbh(&["forcing", "density", "--points", "00,01", "--b", "3", "--smax", "3"]);
    assert_eq!(code, 3, "{}", err);
    let (code, out, err) = gbh(&["forcing", "generic", "--points", "00,01", "--in-a", "00", "--seed", "5"]);
    assert_eq!(code, 0, "{}", err);
    assert!(!out.is_empty());
}

#[test]
fn verify_single_criterion() {
    let (code, out, _) = gbh(&["verify", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS") && out.contains("order translation"), "{}", out);
    assert_eq!(gbh(&["verify", "11"]).0, 3);
}
