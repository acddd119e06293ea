//! Acceptance criteria 1–13, one pass/fail line each.

use std::time::Instant;

use pslab::br::{verify_einstein_maxwell, BrSpec, BrVariant};
use pslab::horizon::near_horizon_relative_error;
use pslab::verify::{reports_to_json, run_all, run_check, Overrides};

struct Line {
    id: usize,
    passed: bool,
    detail: String,
}

/// Each entry is `(check, tolerance)`; passes when every residual is within
/// its tolerance.
fn residuals(id: usize, items: &[(&str, f64)]) -> Line {
    let o = Overrides::default();
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, tol) in items {
        let r = run_check(name, &o).expect("registered check");
        let ok = r.error.is_none() && r.residual <= *tol;
        passed &= ok;
        parts.push(format!("{name}={:.3e}≤{tol:e}", r.residual));
    }
    Line {
        id,
        passed,
        detail: parts.join(", "),
    }
}

fn criterion_7() -> Line {
    let base = residuals(
        7,
        &[("br2-einstein-maxwell", 1e-8), ("br2-einstein-maxwell-lambda", 1e-8)],
    );
    let bad = BrSpec::unchecked(BrVariant::Br2, 1.0, 2.0, 0.0).unwrap();
    let control = verify_einstein_maxwell(&bad, &bad.grid(5)).unwrap();
    Line {
        id: 7,
        passed: base.passed && control > 0.1,
        detail: format!("{}, negative control={control:.3e}>0.1", base.detail),
    }
}

fn criterion_9() -> Line {
    let base = residuals(9, &[("rainich-br", 1e-8)]);
    let ds = run_check("rainich-ds4-rejected", &Overrides::default()).unwrap();
    Line {
        id: 9,
        passed: base.passed && ds.passed,
        detail: format!("{}, dS₄ rejected={}", base.detail, ds.passed),
    }
}

fn criterion_11() -> Line {
    let mut passed = true;
    let mut parts = Vec::new();
    for m in [0.5, 1.0, 2.0] {
        let e: Vec<f64> = [0.1, 0.01, 0.001]
            .iter()
            .map(|s| near_horizon_relative_error(m, s * m, 1.0).unwrap())
            .collect();
        passed &= e[0] > e[1] && e[1] > e[2];
        parts.push(format!("M={m}: {:.2e} > {:.2e} > {:.2e}", e[0], e[1], e[2]));
    }
    Line {
        id: 11,
        passed,
        detail: parts.join("; "),
    }
}

fn criterion_13() -> Line {
    let o = Overrides::default();
    let a = reports_to_json(&run_all("", &o));
    let b = reports_to_json(&run_all("", &o));
    Line {
        id: 13,
        passed: a == b && !a.is_empty(),
        detail: format!("{} bytes, identical={}", a.len(), a == b),
    }
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let lines = vec![
        residuals(1, &[("quadric-curvature", 1e-8)]),
        residuals(2, &[("beltrami-chords", 1e-6), ("beltrami-distance", 1e-6)]),
        residuals(3, &[("sphere-octant-excess", 1e-6), ("beltrami-triangle-excess", 1e-3)]),
        residuals(
            4,
            &[
                ("quadric-embedding", 1e-10),
                ("quadric-pullback", 1e-8),
                ("ds2-embedding", 1e-10),
                ("ds2-pullback", 1e-8),
                ("horizon-embedding", 1e-10),
                ("horizon-pullback", 1e-8),
            ],
        ),
        residuals(5, &[("velocity-addition", 1e-12), ("mass-shell-boosts", 1e-12)]),
        residuals(6, &[("redshift-identity", 1e-9), ("redshift-constant-h", 1e-9)]),
        criterion_7(),
        residuals(8, &[("self-duality", 1e-10), ("maxwell-closure", 1e-8)]),
        criterion_9(),
        residuals(10, &[("kahler-structures", 1e-10)]),
        criterion_11(),
        residuals(12, &[("jt-constant-curvature", 1e-9), ("jt-br-minus-block", 1e-12)]),
        criterion_13(),
    ];
    for l in &lines {
        let status = if l.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {status}  {}", l.id, l.detail);
    }
    println!("elapsed: {:.2}s", start.elapsed().as_secs_f64());
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
