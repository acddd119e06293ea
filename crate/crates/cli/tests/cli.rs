use std::process::{Command, Output};

use serde_json::Value;

fn pslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslab"))
        .args(args)
        .env_remove("PSLAB_TOL")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid json")
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn beltrami_curvature_json() {
    let o = pslab(&["curvature", "--chart", "beltrami", "--R", "1", "--point", "0.3,0.4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let k = &v["K"];
    assert!((k[0].as_f64().unwrap() + 1.0).abs() < 1e-10);
    assert_eq!(k[1].as_f64().unwrap(), 0.0);
    for key in ["gamma", "riemann", "ricci", "scalar"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["gamma"].as_array().unwrap().len(), 2);
}

#[test]
fn sphere_curvature_csv() {
    let o = pslab(&["curvature", "--chart", "sphere", "--R", "2", "--point", "1.0,0.5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["quantity", "index", "value"]);
    let k = rows.iter().find(|r| r[0] == "K").unwrap();
    let re: f64 = k[2].split('+').next().unwrap().parse().unwrap();
    assert!((re - 0.25).abs() < 1e-10);
    assert!(k[2].ends_with('i'));
}

#[test]
fn point_outside_disk_is_domain_error() {
    let o = pslab(&["curvature", "--chart", "beltrami", "--point", "1.2,0"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("outside"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&pslab(&["curvature", "--chart", "torus", "--point", "0,0"])), 2);
    assert_eq!(code(&pslab(&["curvature", "--chart", "beltrami", "--point", "0,0,0"])), 2);
    assert_eq!(code(&pslab(&["curvature", "--bogus"])), 2);
    assert_eq!(code(&pslab(&["embed", "--case", "ds3", "--grid", "a=0:1:2,b=0:1:2"])), 2);
    assert_eq!(code(&pslab(&["redshift", "--format", "svg", "--t0", "0", "--t1", "1"])), 2);
}

#[test]
fn geodesic_steps_must_be_at_least_two() {
    let o = pslab(&["geodesic", "--chart", "beltrami", "--start", "0,0", "--dir", "1,0", "--steps", "1"]);
    assert_eq!(code(&o), 2);
    let o = pslab(&["geodesic", "--chart", "beltrami", "--start", "2,0", "--dir", "1,0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn beltrami_geodesic_is_a_chord() {
    let o = pslab(&[
        "geodesic", "--chart", "beltrami", "--start", "-0.2,0.1", "--dir", "0.5,0.3", "--lambda-max", "1", "--steps",
        "100",
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["lambda", "x0", "x1", "norm"]);
    let pts: Vec<[f64; 2]> = rows[1..]
        .iter()
        .map(|r| [r[1].parse().unwrap(), r[2].parse().unwrap()])
        .collect();
    assert_eq!(pts.len(), 101);
    let (a, b) = (pts[0], pts[100]);
    let d = [b[0] - a[0], b[1] - a[1]];
    for p in &pts {
        let cross = (p[0] - a[0]) * d[1] - (p[1] - a[1]) * d[0];
        assert!(cross.abs() / d[0].hypot(d[1]) < 1e-6);
    }
}

#[test]
fn geodesic_svg_draws_disk_and_path() {
    let o = pslab(&["geodesic", "--chart", "beltrami", "--start", "0,0", "--dir", "1,0.5", "--format", "svg"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.contains("<circle") && s.contains("<polyline"));
    let o = pslab(&["geodesic", "--chart", "br2", "--start", "0,0,0,0", "--dir", "1,0,0,0", "--format", "svg"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ds2_embedding_single_row() {
    let o = pslab(&["embed", "--case", "ds2", "--grid", "tbar=0:0:1,xbar=0:0:1"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], ["tbar", "xbar", "X0", "X1", "X2", "residual", "status"]);
    assert_eq!(rows[1], ["0", "0", "0", "0", "1", "0", "ok"]);
}

#[test]
fn br_minus_flags_rows_below_horizon() {
    let o = pslab(&["embed", "--case", "br-", "--M", "1", "--grid", "t=-1:1:5,r=0.5:3:6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 30);
    let mut flagged = 0;
    for r in rows {
        if r["r"].as_f64().unwrap() <= 1.0 {
            assert_eq!(r["status"], "domain_error");
            flagged += 1;
        } else {
            assert_eq!(r["status"], "ok");
            assert!(r["residual"].as_f64().unwrap().abs() < 1e-10);
        }
    }
    assert_eq!(flagged, 10);
}

#[test]
fn embedding_residuals_are_small() {
    for case in ["ds2", "br0", "br+", "quadric"] {
        let grid = match case {
            "br0" => "t=1.5:3:4,r=1.5:3:4",
            "quadric" => "theta=0.2:2:5,phi=-1:1:5",
            _ => "t=-1:1:5,x=-1:1:5",
        };
        let o = pslab(&["embed", "--case", case, "--grid", grid]);
        assert_eq!(code(&o), 0, "{case}");
        for r in &csv_rows(&o)[1..] {
            assert_eq!(r[6], "ok", "{case} {r:?}");
            assert!(r[5].parse::<f64>().unwrap().abs() < 1e-10, "{case} {r:?}");
        }
    }
}

#[test]
fn redshift_examples() {
    let o = pslab(&["redshift", "--model", "steady-state", "--H", "1", "--t0", "0", "--t1", "1"]);
    assert!((json(&o)["ratio"].as_f64().unwrap() - std::f64::consts::E).abs() < 1e-6);
    let o = pslab(&["redshift", "--model", "steady-state", "--t0", "0.5", "--t1", "0.5"]);
    assert_eq!(json(&o)["ratio"].as_f64().unwrap(), 1.0);
    let o = pslab(&["redshift", "--model", "power", "--p", "1", "--t0", "1", "--t1", "2"]);
    let v = json(&o);
    assert!((v["ratio"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["comoving"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);
}

#[test]
fn penrose_rows() {
    let o = pslab(&["penrose", "--M", "1", "--grid", "u=0.1:3:7,v=0.1:3:7"]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&o);
    assert_eq!(rows[0], ["u", "v", "region", "C"]);
    for r in &rows[1..] {
        assert!(["I", "II", "III", "boundary"].contains(&r[2].as_str()), "{r:?}");
        if r[0] == r[1] {
            assert_eq!(r[3], "-1");
        }
    }
    let o = pslab(&["penrose", "--M", "1", "--format", "svg"]);
    let s = stdout(&o);
    assert!(s.contains(r#"stroke-width="4""#) && s.contains("<polygon"));
}

#[test]
fn verify_negative_control_fails() {
    let o = pslab(&["verify", "--filter", "br2-einstein-maxwell", "--R-plus", "1", "--R-minus", "2", "--Lambda", "0"]);
    assert_eq!(code(&o), 1);
    let o = pslab(&["verify", "--filter", "br2-einstein-maxwell"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&pslab(&["verify", "--filter", "no-such-check"])), 2);
}

#[test]
fn verify_json_is_deterministic() {
    let a = pslab(&["verify", "--format", "json"]);
    let b = pslab(&["verify", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 29);
    assert!(reports.iter().all(|r| r["passed"] == true));
    let first = stdout(&a).lines().nth(1).unwrap().to_string();
    let at: Vec<usize> = ["name", "residual", "tolerance", "passed", "grid_spec", "error"]
        .iter()
        .map(|k| first.find(&format!("\"{k}\":")).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{first}");
}

#[test]
fn tolerance_from_environment_and_flag() {
    let run = |tol: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_pslab"));
        c.args(["verify", "--filter", "quadric-curvature"]).args(args);
        match tol {
            Some(t) => c.env("PSLAB_TOL", t),
            None => c.env_remove("PSLAB_TOL"),
        };
        c.output().unwrap().status.code().unwrap()
    };
    assert_eq!(run(Some("1e-30"), &[]), 1);
    assert_eq!(run(Some("1e-30"), &["--tol", "1e-6"]), 0);
    assert_eq!(run(Some("abc"), &[]), 2);
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("pslab-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.json");
    std::fs::write(&path, r#"{"R": 2, "format": "json", "curvature": {"chart": "sphere", "point": [1.0, 0.5]}}"#)
        .unwrap();
    let p = path.to_str().unwrap();
    let k = |o: &Output| json(o)["K"][0].as_f64().unwrap();
    let o = pslab(&["curvature", "--config", p]);
    assert!((k(&o) - 0.25).abs() < 1e-10);
    let o = pslab(&["curvature", "--config", p, "--R", "1"]);
    assert!((k(&o) - 1.0).abs() < 1e-10);
    let out = dir.join("k.json");
    let o = pslab(&["curvature", "--config", p, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&out).unwrap().contains("\"K\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
