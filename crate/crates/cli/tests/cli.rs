use std::process::{Command, Output};

fn qmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmzv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn counts_type_tilde_i() {
    let out = qmzv(&["count", "--type", "i~", "--weight", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for (w, n) in [(2, 4), (3, 12), (4, 33), (5, 88), (6, 232), (7, 609)] {
        assert!(text.contains(&format!("w={w}: {n} ")), "{text}");
    }
}

#[test]
fn counts_type_iv_json() {
    let out = qmzv(&["count", "-t", "iv", "-w", "5", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let counts: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["enumerated"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [0, 2, 9, 34, 125]);
}

#[test]
fn table_type_ii() {
    let out = qmzv(&[
        "table", "-t", "ii", "-w", "4", "--delta", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let col = &v["columns"][3];
    assert_eq!(col["count"], 69);
    assert_eq!(col["dim"], 30);
    assert_eq!(col["ds"], 28);
    assert_eq!(col["du"], 8);
    assert_eq!(col["deficiency"], 3);
    assert_eq!(col["improved"], 0);
}

#[test]
fn table_type_g_text() {
    let out = qmzv(&["table", "-t", "g", "-w", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let last_cells = |label: &str| {
        let line = text.lines().find(|l| l.starts_with(label)).unwrap();
        line.rsplit('|').next().unwrap().trim().to_string()
    };
    assert_eq!(last_cells("#(W)"), "49");
    assert_eq!(last_cells("dim P-R"), "27");
    assert_eq!(last_cells("deficiency"), "0");
}

#[test]
fn verify_bundled_and_empty() {
    let out = qmzv(&["verify", "missing_relations_tI"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("5 of 5"));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = qmzv(&["verify", empty.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn verify_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"[{"name":"bogus","terms":[{"coeff":"1","s":[2],"t":[1]}]}]"#,
    )
    .unwrap();
    let out = qmzv(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL bogus: coefficient of q^1"));
}

#[test]
fn malformed_identity_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "[{").unwrap();
    let out = qmzv(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("json error"));
}

#[test]
fn okounkov_small() {
    let out = qmzv(&["okounkov", "-w", "5", "--order", "60"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("w=2: words 1, conjectured 1, series rank 1, certified 1"),
        "{text}"
    );
    assert!(
        text.contains("w=5: words 7, conjectured 7, series rank 7, certified 7"),
        "{text}"
    );
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g3.json");
    let out = qmzv(&[
        "export-relations",
        "-t",
        "g",
        "-w",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = qmzv(&[
        "import-relations",
        path.to_str().unwrap(),
        "--check",
        "--order",
        "30",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["words"], 49);
    assert_eq!(v["rank"], 8 + 27 + 2);
    assert_eq!(v["unsound"].as_array().unwrap().len(), 0);
}

#[test]
fn products_and_duals() {
    let out = qmzv(&["stuffle", "-t", "o", "o2 o3", "o3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1/2*o2 o4"));

    let out = qmzv(&["shuffle", "--py", "ry", "ry"]);
    assert!(out.status.success());
    assert!(!stdout(&out).trim().is_empty());

    let out = qmzv(&["dual", "-t", "ii", "rry"]);
    assert!(stdout(&out).starts_with("ρρy -> ρyy"));

    let out = qmzv(&["eval", "-t", "ii", "z'2", "-N", "4"]);
    assert_eq!(stdout(&out).trim(), "q^2 + 2*q^3 + 4*q^4 + O(q^5)");
}

#[test]
fn rejects_inadmissible_words() {
    let out = qmzv(&["eval", "-t", "ii", "z'0"]);
    assert_eq!(out.status.code(), Some(2));
}
