use std::path::PathBuf;
use std::process::Command;

use foxcohen::fox::phi_bruteforce;
use foxcohen::{catalog_model, serialize_space, BracketOrder};
use num_bigint::BigInt;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("foxcohen").chain(args.iter().copied());
    let code = foxcohen::cli::run(argv.map(std::ffi::OsString::from), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Last non-comment line of stdout.
fn value(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout.lines().rfind(|l| !l.starts_with('#')).unwrap().to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("foxcohen-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn phi_examples() {
    let o = run(&["phi", "--l", "2", "--k", "4", "--method", "all"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("# convention"));
    let body: Vec<&str> = o.stdout.lines().skip(1).collect();
    assert_eq!(body, ["bruteforce -2", "recurrence -2", "closed -2", "AGREE"]);

    assert_eq!(value(&["phi", "--l", "1", "--k", "2"]), "0");
    let o = run(&["phi", "--l", "0", "--k", "3", "--method", "closed"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.starts_with("error:"));
}

#[test]
fn phi_table_csv_parses_back() {
    let o = run(&["phi-table", "--max-k", "4"]);
    assert_eq!(o.code, 0);
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(o.stdout.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["k", "l", "phi"]);
    let rows: Vec<(u32, u32, BigInt)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 10);
    for (k, l, phi) in &rows {
        assert_eq!(phi, &phi_bruteforce(*l, *k).unwrap());
    }
    let row4: Vec<i64> = rows.iter().filter(|r| r.0 == 4).map(|r| i64::try_from(&r.2).unwrap()).collect();
    assert_eq!(row4, [0, -2, 0, -1]);

    let md = run(&["phi-table", "--max-k", "4", "--format", "md"]);
    assert_eq!(md.code, 0);
    assert!(md.stdout.contains('|'));
}

#[test]
fn delta_and_commutes() {
    assert_eq!(value(&["delta", "1", "1"]), "0");
    assert_eq!(value(&["delta", "2", "4"]), "3");
    assert_eq!(value(&["commutes", "3", "4", "2"]), "false");
    assert_eq!(value(&["commutes", "1", "1", "inf"]), "true");
    assert!("0".parse::<BracketOrder>().is_err());
    assert_eq!(run(&["commutes", "1", "1", "0"]).code, 2);
}

#[test]
fn stems_table() {
    let o = run(&["stems", "--from", "1", "--to", "40"]);
    assert_eq!(o.code, 0);
    let mut reader = csv::Reader::from_reader(o.stdout.as_bytes());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["n", "delta_low", "delta_high", "j4nm1_abelian", "j4np1_abelian"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let ns: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(ns, (1..=40).collect::<Vec<_>>());
    let first: Vec<&str> = rows[..10].iter().map(|r| &r[3]).collect();
    assert_eq!(first, ["false", "false", "true", "false", "true", "true", "true", "false", "true", "true"]);
    assert_eq!(&rows[28][4], "false");
    assert_eq!(&rows[33][4], "true");
}

#[test]
fn group_examples() {
    let s2 = ["--space", "catalog:S2@4", "--level", "2"];
    let args = |head: &[&'static str], tail: &[&'static str]| [head, &s2, tail].concat();
    assert_eq!(value(&args(&["group", "mul"], &[r#"{"2":[1]}"#, r#"{"2":[1]}"#])), r#"{"2":[2],"3":[2]}"#);
    assert_eq!(value(&args(&["group", "inv"], &[r#"{"2":[1]}"#])), r#"{"2":[-1],"3":[2]}"#);
    assert_eq!(value(&args(&["group", "pow"], &[r#"{"2":[1]}"#, "-1"])), r#"{"2":[-1],"3":[2]}"#);
    assert_eq!(value(&args(&["group", "order"], &[r#"{"2":[1]}"#])), "infinite");

    // The bracket coefficient of the law is phi(5, 9) = 6, which is even.
    let m7 = ["group", "order", "--space", "catalog:M7reduced@11", "--level", "10", r#"{"6":[1]}"#];
    assert_eq!(value(&m7), "2");

    let o = run(&["group", "is-abelian", "--space", "catalog:S4reduced@8", "--level", "7"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("false\nwitness: "), "{}", o.stdout);
    assert_eq!(value(&["group", "is-abelian", "--space", "catalog:S4reduced@8", "--level", "6"]), "true");

    let o = run(&["group", "enumerate", "--space", "catalog:M3@3", "--level", "2"]);
    assert!(o.stdout.contains("elements: 8"));
    assert!(o.stdout.contains("order 4: 4"));
}

#[test]
fn tau_examples() {
    let w = ["--space", "catalog:Wedge23@4", "--level", "3"];
    let comm = [&["tau", "comm"][..], &w, &[r#"{"1":[1]}"#, r#"{"2,3":[1]}"#]].concat();
    let colex = value(&comm);
    let reverse = value(&[&comm[..], &["--order", "reverse-colex"]].concat());
    assert_eq!(colex, reverse);
    assert_eq!(colex, r#"{"1,2,3":[1]}"#);

    let o = run(&["tau", "multiplicities", "--n", "8"]);
    let mut reader = csv::Reader::from_reader(o.stdout.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let total: u64 = rows.iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 127);
    assert!(rows.iter().any(|r| &r[0] == "4" && &r[1] == "35"));
}

#[test]
fn space_files() {
    let model = catalog_model("Wedge23@4").unwrap();
    let good = temp_file("good.json", &serialize_space(&model));
    let path = good.to_str().unwrap();
    assert_eq!(value(&["group", "is-abelian", "--space", path, "--level", "2"]), "true");
    let o = run(&["group", "is-abelian", "--space", path, "--level", "3"]);
    assert!(o.stdout.starts_with("false\n"));
    let o = run(&["group", "comm", "--space", path, "--level", "3", r#"{"2":[1]}"#, r#"{"3":[1]}"#]);
    assert_eq!(o.code, 0);

    // Flip the sign of one mirrored entry only.
    let text = serialize_space(&model);
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entry = json["brackets"].as_array_mut().unwrap().iter_mut().find(|e| e["a"] == serde_json::json!([3, 0])).unwrap();
    entry["value"]["coeffs"][0] = serde_json::json!(-1);
    let bad = temp_file("bad.json", &serde_json::to_string_pretty(&json).unwrap());
    let o = run(&["group", "is-abelian", "--space", bad.to_str().unwrap(), "--level", "3"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("SymmetryViolation"), "{}", o.stderr);

    let broken = temp_file("broken.json", "{\"name\": ");
    assert_eq!(run(&["catalog", "--show", "nope"]).code, 3);
    assert_eq!(run(&["group", "is-abelian", "--space", broken.to_str().unwrap(), "--level", "1"]).code, 3);
    let o = run(&["group", "is-abelian", "--space", "/definitely/missing.json", "--level", "1"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("/definitely/missing.json"));

    for p in [good, bad, broken] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--only", "fox"]).code, 0);
    assert_eq!(run(&["verify", "--only", "nonsense"]).code, 2);
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["phi", "--l", "1"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
    let bad_literal = ["group", "mul", "--space", "catalog:S2@4", "--level", "2", "{", "{}"];
    assert_eq!(run(&bad_literal).code, 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["phi-table", "--max-k", "12", "--format", "md"][..],
        &["stems", "--to", "64"],
        &["group", "enumerate", "--space", "catalog:M7reduced@11", "--level", "10", "--list"],
        &["catalog"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn binary_uses_stdout_and_stderr() {
    let bin = env!("CARGO_BIN_EXE_foxcohen");
    let ok = Command::new(bin).args(["delta", "4", "4"]).output().unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "6\n");
    let err = Command::new(bin).args(["phi", "--l", "0", "--k", "3", "--method", "closed"]).output().unwrap();
    assert_eq!(err.status.code(), Some(2));
    assert!(!err.stderr.is_empty());
    let missing = Command::new(bin).args(["group", "inv", "--space", "/nope.json", "--level", "2", "{}"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(3));
}
