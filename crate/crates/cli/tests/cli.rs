use std::process::Command;

use ses_cli::verify::{GENUS_H, SAME_PFAFF_1};
use ses_cli::{exit_code, run, EXIT_BOUND, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};
use ses_core::Error;

struct Run {
    code: u8,
    stdout: String,
    stderr: String,
}

fn ses(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("ses").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let r = ses(&full);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn irreducibles() {
    let v = json(&["irreducibles", "--p", "3", "--n", "2"]);
    assert_eq!(v["count"], 3);
    assert_eq!(v["schema_version"], 1);
    let v = json(&["irreducibles", "--p", "2", "--n", "2"]);
    assert_eq!(v["polynomials"], serde_json::json!(["x^2 + x + 1"]));
    let r = ses(&["irreducibles", "--p", "4", "--n", "2"]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("4 is not prime"));
    // Degree-2 irreducibles over F_4: (16 - 4) / 2.
    assert_eq!(
        json(&["irreducibles", "--p", "2", "--k", "2", "--n", "2"])["count"],
        6
    );
}

#[test]
fn orbits_and_stabilizers() {
    let v = json(&["orbits", "--p", "3", "--n", "4"]);
    assert_eq!(v["orbit_count"], 2);
    let sizes: u64 = v["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["size"].as_u64().unwrap())
        .sum();
    // Irreducible quartics over F_3: (81 - 9) / 4.
    assert_eq!(sizes, 18);
    assert_eq!(
        json(&["stabilizer", "--p", "5", "--poly", "x^2+2"])["gl_order"],
        48
    );
    assert_eq!(
        json(&["stabilizer", "--p", "3", "--poly", "x^3+2x+1"])["gl_order"],
        6
    );
    assert_eq!(
        json(&["stabilizer", "--p", "5", "--poly", "X^2 + 2Y^2"])["pgl_order"],
        12
    );
}

#[test]
fn construct_reproduces_the_genus_fixture() {
    let r = ses(&[
        "construct",
        "quotient",
        "--p",
        "5",
        "--poly",
        "x^2+2",
        "--c",
        "2",
        "--subspace",
        "1;x",
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.stdout, GENUS_H);
}

#[test]
fn construct_round_trips_through_pfaffian() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str, bool); 6] = [
        (
            &["companion", "--p", "3", "--poly", "x^2+1"],
            "X^2 + Y^2",
            true,
        ),
        (&["hflat", "--p", "3", "--m", "2"], "0", false),
        (
            &["heisenberg", "--p", "3", "--poly", "x^2+1"],
            "X^2 + Y^2",
            true,
        ),
        (
            &[
                "quotient",
                "--p",
                "5",
                "--poly",
                "x^2+2",
                "--c",
                "2",
                "--subspace",
                "1;x",
            ],
            "X^4 + 4X^2Y^2 + 4Y^4",
            true,
        ),
        (&["genus1", "--q", "9", "--n", "1"], "X^2 + Y^2", true),
        (
            &["companion", "--p", "2", "--poly", "x", "--c", "2"],
            "X^2",
            false,
        ),
    ];
    for (i, (args, pf, ses_expected)) in cases.iter().enumerate() {
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        let built = ses(&full);
        assert_eq!(built.code, EXIT_OK, "{args:?}: {}", built.stderr);
        let path = write_temp(&dir, &format!("p{i}.json"), &built.stdout);
        let v = json(&["pfaffian", &path]);
        assert_eq!(v["pfaffian"], *pf, "{args:?}");
        assert_eq!(v["ses_direct"], *ses_expected, "{args:?}");
        assert_eq!(v["ses_pfaffian"], *ses_expected, "{args:?}");
    }
}

#[test]
fn pfaffian_reports() {
    let dir = tempfile::tempdir().unwrap();
    let h = json(&["pfaffian", &write_temp(&dir, "h.json", GENUS_H)]);
    assert_eq!(h["pfaffian"], "X^4 + 4X^2Y^2 + 4Y^4");
    assert_eq!(
        (h["centroid_order"].as_u64(), h["genus"].as_u64()),
        (Some(5), Some(2))
    );
    let s = json(&[
        "pfaffian",
        &write_temp(&dir, "s.json", SAME_PFAFF_1),
        "--isotropic",
        "3",
    ]);
    assert_eq!(s["isotropic"]["count"], 28);
    let zero = r#"{"schema_version": 1, "p": 3, "k": 1, "dimV": 4, "dimW": 2, "mats": [[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]]}"#;
    let z = json(&["pfaffian", &write_temp(&dir, "z.json", zero)]);
    assert_eq!(
        (z["pfaffian"].as_str(), z["ses_direct"].as_bool()),
        (Some("0"), Some(false))
    );
    assert_eq!(z["centroid_order"], serde_json::Value::Null);
    let bad = ses(&["pfaffian", &write_temp(&dir, "bad.json", "{")]);
    assert_eq!(bad.code, EXIT_INPUT);
    assert_eq!(
        ses(&["pfaffian", "/nonexistent/pencil.json"]).code,
        EXIT_INPUT
    );
}

#[test]
fn census_tables() {
    let v = json(&["census", "--p", "2,3,5,7", "--exp", "8"]);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["brute_force"], 1);
    }
    let totals = |exp: &str| -> Vec<u64> {
        json(&["census", "--p", "2,3,5", "--exp", exp])["reports"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["brute_force"].as_u64().unwrap())
            .collect()
    };
    assert_eq!(totals("10"), [3, 5, 7]);
    assert_eq!(totals("12"), [2, 3, 10]);
    let csv = ses(&["census", "--p", "3,11", "--exp", "12", "--format", "csv"]);
    assert_eq!(csv.code, EXIT_OK);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "p,order_exponent,stratum,count,method");
    assert!(lines.contains(&"3,12,total,3,brute_force"));
    assert!(lines.contains(&"11,12,total,skipped,brute_force"));
    assert_eq!(ses(&["census", "--p", "3", "--exp", "14"]).code, EXIT_INPUT);
}

#[test]
fn coefficient_reduction_and_strict_mode() {
    let loose = ses(&["construct", "companion", "--p", "3", "--poly", "x^2+4"]);
    assert_eq!(loose.code, EXIT_OK);
    assert!(loose.stderr.contains("reduced mod 3"));
    let clean = ses(&["construct", "companion", "--p", "3", "--poly", "x^2+1"]);
    assert_eq!(loose.stdout, clean.stdout);
    assert_eq!(
        ses(&[
            "--strict",
            "construct",
            "companion",
            "--p",
            "3",
            "--poly",
            "x^2+4"
        ])
        .code,
        EXIT_INPUT
    );
}

#[test]
fn exit_codes() {
    assert_eq!(ses(&["--help"]).code, EXIT_OK);
    assert_eq!(ses(&["--version"]).code, EXIT_OK);
    assert_eq!(ses(&["irreducibles", "--p"]).code, EXIT_INPUT);
    assert_eq!(ses(&["frobnicate"]).code, EXIT_INPUT);
    let r = ses(&[
        "orbits",
        "--p",
        "3",
        "--n",
        "6",
        "--family",
        "all",
        "--max-enum",
        "100",
    ]);
    assert_eq!(r.code, EXIT_BOUND);
    assert!(r.stderr.contains("exceeds the enumeration cap"));
    assert_eq!(
        ses(&["--workers", "0", "irreducibles", "--p", "3", "--n", "2"]).code,
        EXIT_INPUT
    );
    let disagreement = anyhow::Error::from(Error::Disagreement {
        p: 3,
        exponent: 10,
        closed: 5,
        brute: 4,
    });
    assert_eq!(exit_code(&disagreement), EXIT_VERIFY);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("irr.csv");
    let r = ses(&[
        "irreducibles",
        "--p",
        "2",
        "--n",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!((r.code, r.stdout.as_str()), (EXIT_OK, ""));
    assert_eq!(
        std::fs::read_to_string(path).unwrap(),
        "index,polynomial\n0,x^3 + x + 1\n1,x^3 + x^2 + 1\n"
    );
}

#[test]
fn verify_examples_suite() {
    let r = ses(&["verify", "--suite", "examples"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
    assert!(r.stdout.contains("7 checks, 0 failed"));
}

#[test]
fn verify_lemmas_at_one_prime() {
    let v = json(&["verify", "--suite", "lemmas", "--p", "5"]);
    assert_eq!(v["passed"], true);
    let dihedral = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "dihedral orbit count at p = 5")
        .unwrap();
    assert_eq!(dihedral["passed"], true);
    assert_eq!(dihedral["detail"], "got Some(2), expected Some(2)");
}

#[test]
fn binary_reads_the_enumeration_cap_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ses"))
        .args(["irreducibles", "--p", "5", "--n", "3"])
        .env("SES_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BOUND as i32));
    let out = Command::new(env!("CARGO_BIN_EXE_ses"))
        .args(["irreducibles", "--p", "5", "--n", "3", "--max-enum", "1000"])
        .env("SES_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_ses"))
        .args(["irreducibles"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
