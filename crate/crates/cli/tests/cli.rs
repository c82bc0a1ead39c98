use std::process::Command;

use slrec_cli::run_args;
use slrec_core::semilinear::NonSLCertificate;
use slrec_core::{SemiLin2, Window};

fn slrec(args: &[&str]) -> slrec_cli::Outcome {
    run_args(std::iter::once("slrec").chain(args.iter().copied()))
}

fn window_of(args: &[&str]) -> Window {
    let out = slrec(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_value(out.json().unwrap()["window"].clone()).unwrap()
}

#[test]
fn oracle_counter_example() {
    let w = window_of(&[
        "oracle", "--f", "1/2*z", "--g", "z-1", "--c", "1", "-M", "4", "-N", "8",
    ]);
    assert_eq!(w.true_cells(), vec![(0, 0), (1, 1), (2, 3), (3, 7)]);
}

#[test]
fn engine_power_example() {
    let out = slrec(&[
        "engine",
        "power",
        "--d1",
        "2",
        "--d2",
        "3",
        "--zeta-ord",
        "1",
        "--c",
        "zeta(2)",
    ]);
    assert_eq!(out.code, 0);
    let doc = out.json().unwrap();
    assert_eq!(doc["result"]["kind"], "semi_linear");
    let set: SemiLin2 = serde_json::from_value(doc["result"]["set"].clone()).unwrap();
    for m in 0..12 {
        for n in 0..12 {
            assert_eq!(set.contains((m, n)), m == 0, "({m}, {n})");
        }
    }
}

#[test]
fn verify_power_example() {
    let out = slrec(&[
        "verify",
        "power",
        "--d1",
        "2",
        "--d2",
        "3",
        "--zeta-ord",
        "1",
        "--c",
        "zeta(2)",
        "-M",
        "10",
        "-N",
        "10",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(out.json().unwrap()["agree"], true);
}

#[test]
fn verify_every_family() {
    let cases: [&[&str]; 6] = [
        &[
            "verify",
            "chebyshev",
            "--r",
            "3",
            "--s",
            "2",
            "--t",
            "2",
            "--e1",
            "-1",
            "--e3",
            "-1",
        ],
        &[
            "verify", "affine", "--a1", "2", "--b1", "-1", "--a2", "2", "--b2", "-1", "--c", "5",
            "--d", "-3",
        ],
        &[
            "verify",
            "decomposed",
            "--h",
            "z^2 - 2",
            "--z1",
            "1",
            "--c",
            "2",
        ],
        &[
            "verify",
            "decomposed",
            "--h",
            "z^2 - 1",
            "--z2",
            "1",
            "--k3",
            "0",
        ],
        &["verify", "gallery", "deg1counter1", "-M", "6", "-N", "40"],
        &[
            "verify", "gallery", "powertil", "--r", "3", "--s", "3", "-M", "12", "-N", "12",
        ],
    ];
    for args in cases {
        let out = slrec(args);
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
    }
}

#[test]
fn certify_powertil_is_proved() {
    let out = slrec(&["certify", "powertil", "--r", "3", "--s", "3"]);
    assert_eq!(out.code, 0);
    let doc = out.json().unwrap();
    assert_eq!(doc["certificate"]["mode"], "proved");
    let cert: NonSLCertificate = serde_json::from_value(doc["certificate"].clone()).unwrap();
    let NonSLCertificate::RowPeriods { rows, .. } = cert else {
        panic!("expected row periods");
    };
    assert_eq!(
        rows.iter().map(|r| r.ep).collect::<Vec<_>>(),
        [4, 8, 16, 32]
    );
}

#[test]
fn certify_counter() {
    let doc = slrec(&["certify", "deg1counter1"]).json().unwrap();
    assert_eq!(doc["certificate"]["kind"], "projection_gaps");
    assert_eq!(doc["certificate"]["values"][3], 7);
}

#[test]
fn slice_period_diag() {
    let base = [
        "chebyshev",
        "--r",
        "2",
        "--s",
        "3",
        "--t",
        "1",
        "--e1",
        "-1",
    ];
    let with = |cmd: &[&str]| {
        let args: Vec<&str> = cmd.iter().chain(base.iter()).copied().collect();
        let out = slrec(&args);
        assert_eq!(out.code, 0, "{}", out.stderr);
        out.json().unwrap()
    };
    let slice = with(&["slice", "--row", "2"]);
    assert_eq!(slice["m"], 2);
    let period = with(&["period", "-M", "5"]);
    assert_eq!(period["rows"].as_array().unwrap().len(), 5);
    let diag = with(&["diag"]);
    assert!(diag["progressions"].is_array());
}

#[test]
fn leading_minus_is_a_value() {
    let out = slrec(&[
        "oracle", "--f", "-z", "--g", "-1/2*z", "--c", "-zeta(3)", "-M", "2", "-N", "2",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn text_format_is_a_grid() {
    let out = slrec(&[
        "oracle", "--f", "1/2*z", "--g", "z-1", "--c", "1", "-M", "3", "-N", "4", "--format",
        "text",
    ]);
    assert_eq!(out.stdout, "1000\n0100\n0001\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        slrec(&["oracle", "--f", "z^-1", "--g", "z", "--c", "1"]).code,
        2
    );
    assert_eq!(
        slrec(&["oracle", "--f", "1/0", "--g", "z", "--c", "1"]).code,
        2
    );
    assert_eq!(
        slrec(&["engine", "decomposed", "--h", "z^2 - 1", "--c", "3"]).code,
        2
    );
    assert_eq!(
        slrec(&["engine", "chebyshev", "--r", "1", "--s", "2", "--t", "1"]).code,
        2
    );
    assert_eq!(slrec(&["bogus"]).code, 2);
    let capped = slrec(&[
        "oracle",
        "--f",
        "z^3",
        "--g",
        "z^2",
        "--c",
        "z",
        "-M",
        "10",
        "-N",
        "2",
        "--degree-cap",
        "100",
    ]);
    assert_eq!(capped.code, 3);
    let err = slrec(&["diag", "gallery", "deg1counter1"]);
    assert_eq!(err.code, 2);
    let doc: serde_json::Value = serde_json::from_str(&err.stderr).unwrap();
    assert_eq!(doc["error"]["code"], "unsupported");
}

#[test]
fn affine_counter_engine_certifies() {
    let doc = slrec(&[
        "engine", "affine", "--a1", "1/2", "--b1", "0", "--a2", "1", "--b2", "-1", "--c", "0",
        "--d", "1",
    ])
    .json()
    .unwrap();
    assert_eq!(doc["result"]["kind"], "non_semilinear");
    assert_eq!(doc["result"]["certificate"]["mode"], "proved");
}

#[test]
fn binary_honours_cap_env() {
    let run = |cap: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_slrec"));
        cmd.args([
            "oracle", "--f", "z^3", "--g", "z^2", "--c", "z", "-M", "6", "-N", "3",
        ]);
        match cap {
            Some(c) => cmd.env("SLREC_DEGREE_CAP", c),
            None => cmd.env_remove("SLREC_DEGREE_CAP"),
        };
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None), Some(0));
    assert_eq!(run(Some("50")), Some(3));
}

#[test]
fn battery_is_deterministic() {
    let a = slrec(&["battery", "--seed", "7"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, slrec(&["battery", "--seed", "7"]).stdout);
}
