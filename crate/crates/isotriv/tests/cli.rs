use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isotriv")).args(args).output().unwrap()
}

#[test]
fn json_rows_carry_the_documented_fields() {
    let out = run(&["--format", "json", "classify", "--k2", "3"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 2);
    let fields = ["k2", "g_alb", "g_c", "group_id", "case", "sig_m", "sig_n", "sing", "minimal", "k2_min", "witness"];
    for row in &rows {
        let keys: Vec<&str> = row.keys().map(String::as_str).collect();
        let mut want = fields.to_vec();
        want.sort();
        let mut have = keys.clone();
        have.sort();
        assert_eq!(have, want);
    }
    assert_eq!(rows[0]["group_id"], "G(24,8)");
    assert_eq!(rows[1]["g_c"], 21);
}

#[test]
fn csv_has_a_header_and_one_line_per_row() {
    let out = run(&["--format", "csv", "classify", "--k2", "3"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().len(), 11);
    let records: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(&records[0][4], "2g");
}

#[test]
fn singularity_json() {
    let out = run(&["--format", "json", "singularity", "5", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["b"], serde_json::json!([3, 2]));
    assert_eq!((v["q_prime"].as_u64(), v["e"].as_str(), v["B"].as_str()), (Some(3), Some("14/5"), Some("6")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify-case", "3a"]).status.code(), Some(0));
    assert_eq!(run(&["classify", "--k2", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify-case", "zz"]).status.code(), Some(2));
    assert_eq!(run(&["singularity", "4", "2"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}
