use std::process::{Command, Output};

fn extalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg"))
        .args(args)
        .env_remove("EXTALG_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build() {
    let o = extalg(&["build", "--k", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim 21, grades: sl(4), Λ^2\n");
    let o = extalg(&["build", "--k", "3", "--n", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 248);
    assert_eq!(v["grades"][2]["offset"], 164);
    assert_eq!(v["contraction_scale"], "-1");
}

#[test]
fn verify_fails_for_36() {
    let o = extalg(&[
        "verify",
        "--k",
        "3",
        "--n",
        "6",
        "--samples",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.ends_with("skew=false, jacobi=false\n"), "{out}");
    assert!(
        out.contains("grades (1,1): skew=false symmetric=true jacobi=false"),
        "{out}"
    );
}

#[test]
fn verify_passes_for_24() {
    let o = extalg(&["verify", "--k", "2", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["skew"], true);
    assert_eq!(v["jacobi"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
    let o = extalg(&["verify", "--k", "3", "--n", "9", "--grades", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn block_ranks_table() {
    let o = extalg(&[
        "block-ranks",
        "--k",
        "2",
        "--n",
        "4",
        "--x",
        "e0*e1 + e2*e3",
        "--powers",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let expected = "\
+---+---+---+---+-----+
|g00|g01|g10|g11|total|
+---+---+---+---+-----+
|0  |5  |5  |0  |10   |
+---+---+---+---+-----+
|5  |0  |0  |5  |10   |
+---+---+---+---+-----+
|0  |5  |5  |0  |10   |
+---+---+---+---+-----+
|5  |0  |0  |5  |10   |
+---+---+---+---+-----+
";
    assert_eq!(stdout(&o), expected);
    let o = extalg(&[
        "block-ranks",
        "--k",
        "2",
        "--n",
        "4",
        "--x",
        "e0*e1",
        "--auto",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let totals: Vec<u64> = v["powers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["total"].as_u64().unwrap())
        .collect();
    assert_eq!(*totals.last().unwrap(), 0, "{totals:?}");
}

#[test]
fn bracket_and_matrix_input() {
    let o = extalg(&[
        "bracket",
        "--k",
        "2",
        "--n",
        "4",
        "--x",
        "e_0*e_1 + e_2*e_3",
        "--y",
        "e_0*e_2 + e_1*e_3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["grade"], 0);
    assert_eq!(v["matrix"][0][3], "2");
    assert_eq!(v["matrix"][1][2], "-2");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    std::fs::write(
        &path,
        r#"[["1","0","0","0"],["0","0","0","0"],["0","0","0","0"],["0","0","0","0"]]"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = extalg(&[
        "bracket", "--k", "2", "--n", "4", "--x-file", p, "--y", "e0*e1",
    ]);
    assert_eq!(o.status.code(), Some(2), "nonzero trace without --project");
    let o = extalg(&[
        "bracket",
        "--k",
        "2",
        "--n",
        "4",
        "--x-file",
        p,
        "--project",
        "--y",
        "e0*e1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    // diag(3/4, -1/4, -1/4, -1/4) scales e0*e1 by 1/2
    assert_eq!(stdout(&o), "1/2*e0*e1\n");
}

#[test]
fn killing_rank_and_charpoly() {
    let o = extalg(&[
        "killing",
        "--k",
        "2",
        "--n",
        "4",
        "--rank",
        "--charpoly",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"], 21);
    assert_eq!(v["charpoly"]["coefficients"].as_array().unwrap().len(), 22);
}

#[test]
fn charpoly_semisimple_centralizer() {
    let o = extalg(&["charpoly", "--k", "2", "--n", "4", "--x", "e0*e1 + e2*e3"]);
    assert_eq!(
        stdout(&o),
        "x^21 - 20*x^19 + 160*x^17 - 640*x^15 + 1280*x^13 - 1024*x^11\n"
    );
    let o = extalg(&["semisimple", "--k", "2", "--n", "4", "--x", "e0*e1 + e2*e3"]);
    assert_eq!(stdout(&o).lines().next(), Some("true"));
    let o = extalg(&["semisimple", "--k", "3", "--n", "9", "--x", "e0*e1*e2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("false"));
    let o = extalg(&[
        "centralizer",
        "--k",
        "2",
        "--n",
        "4",
        "--x",
        "e0*e1 + e2*e3",
        "--grade",
        "1",
    ]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "dim 1");
    assert_eq!(lines.len(), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(extalg(&[]).status.code(), Some(2));
    assert_eq!(extalg(&["nope"]).status.code(), Some(2));
    assert_eq!(
        extalg(&["verify", "--k", "2", "--n", "4", "--samples", "0"])
            .status
            .code(),
        Some(2)
    );
    let o = extalg(&["ad", "--k", "2", "--n", "4", "--x", "e0*e9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    assert_eq!(extalg(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "verify",
        "--k",
        "3",
        "--n",
        "9",
        "--samples",
        "2",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    let o = extalg(&with_out);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let first = std::fs::read(&path).unwrap();
    let second = extalg(&args).stdout;
    assert_eq!(first, second);
    let sequential = Command::new(env!("CARGO_BIN_EXE_extalg"))
        .args(args)
        .env("EXTALG_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(sequential.stdout, second);
}
