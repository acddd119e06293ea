//! Named, reproducible end-to-end checks. Each check evaluates an identity
//! on a fixed lattice (or a sample drawn from [`SEED`]) and reports the
//! largest residual against its tolerance.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{GeomError, Result};

mod checks;

/// Seed for every randomized sample in the suite.
pub const SEED: u64 = 0x5eed_0b5e_55ed;

/// Parameter overrides accepted by [`run_check`] and [`run_all`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    /// Replaces the tolerance of every selected check.
    pub tolerance: Option<f64>,
    /// `R₊`, `R₋`, `Λ` for `br2-einstein-maxwell`.
    pub r_plus: Option<f64>,
    pub r_minus: Option<f64>,
    pub lambda: Option<f64>,
}

impl Overrides {
    fn has_br(&self) -> bool {
        self.r_plus.is_some() || self.r_minus.is_some() || self.lambda.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub grid_spec: String,
    /// Wall time in seconds; not part of the serialized report.
    pub elapsed: f64,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

pub(crate) struct Outcome {
    pub residual: f64,
    pub grid: String,
}

type Runner = fn(&Overrides) -> Result<Outcome>;

pub struct CheckDef {
    pub name: &'static str,
    pub tolerance: f64,
    pub description: &'static str,
    run: Runner,
}

macro_rules! registry {
    ($($name:literal, $tol:expr, $run:path, $desc:literal;)*) => {
        const REGISTRY: &[CheckDef] = &[
            $(CheckDef { name: $name, tolerance: $tol, description: $desc, run: $run },)*
        ];
    };
}

registry! {
    "quadric-curvature", 1e-8, checks::quadric_curvature, "K = ε/R² on the six fundamental quadrics";
    "beltrami-curvature", 1e-8, checks::beltrami_curvature, "K = −1/R² on the Beltrami disk";
    "beltrami-chords", 1e-6, checks::beltrami_chords, "Beltrami geodesics are straight chords";
    "beltrami-distance", 1e-6, checks::beltrami_distance, "distance from the centre to u = 0.5 is artanh 0.5";
    "sphere-octant-excess", 1e-6, checks::sphere_octant_excess, "|excess − K·area| on the unit-sphere octant";
    "beltrami-triangle-excess", 1e-3, checks::beltrami_triangle_excess, "|excess + area| on a Beltrami triangle";
    "quadric-embedding", 1e-10, checks::quadric_embedding, "embedded points satisfy the quadric equation";
    "quadric-pullback", 1e-8, checks::quadric_pullback, "ambient metric pulls back to the intrinsic chart";
    "ds2-embedding", 1e-10, checks::ds2_embedding, "η² − ξ² − ζ² = −1 on the de Sitter embedding";
    "ds2-pullback", 1e-8, checks::ds2_pullback, "de Sitter embedding pulls back to the steady-state section";
    "horizon-embedding", 1e-10, checks::horizon_embedding, "ξ² − η² + ζ² = M² for the three horizon embeddings";
    "horizon-pullback", 1e-8, checks::horizon_pullback, "horizon embeddings pull back to their (t, r) blocks";
    "velocity-addition", 1e-12, checks::velocity_addition, "0.5 ⊕ 0.5 = 0.8";
    "mass-shell-boosts", 1e-12, checks::mass_shell_boosts, "boosts preserve E² − p² (relative to E² + p²)";
    "redshift-identity", 1e-9, checks::redshift_identity, "R(t₁)/R(t₀) = exp ∫H dt, relative";
    "redshift-constant-h", 1e-9, checks::redshift_constant_h, "constant H over unit time gives e";
    "br2-einstein-maxwell", 1e-8, checks::br2_einstein_maxwell, "‖R − τ − Λg‖∞ on BR₂";
    "br2-einstein-maxwell-lambda", 1e-8, checks::br2_einstein_maxwell_lambda, "‖R − τ − Λg‖∞ on BR₂ with Λ = ½";
    "br2-negative-control", 1.0, checks::br2_negative_control, "0.1 / ‖R − τ − Λg‖∞ for inconsistent radii";
    "br1-ricci-decomposable", 1e-8, checks::br1_ricci_decomposable, "‖R − K₊g₊ − K₋g₋‖∞ on BR₁";
    "self-duality", 1e-10, checks::self_duality, "∗Zᵃ = iZᵃ and ∗∗F = −F";
    "maxwell-closure", 1e-8, checks::maxwell_closure, "dF̃ = 0, ∇F̃ = 0 and dΩ = 0";
    "rainich-br", 1e-8, checks::rainich_br, "Rainich condition holds with AĀ = ρ";
    "rainich-ds4-rejected", 1.0, checks::rainich_ds4_rejected, "1e−8 / Rainich defect on de Sitter";
    "kahler-structures", 1e-10, checks::kahler_structures, "J² = −1, J isometric, P² = 1, tr P = 0";
    "penrose-roundtrip", 1e-10, checks::penrose_roundtrip, "Penrose map inverse and C(u, u) = −1";
    "near-horizon-convergence", 0.5, checks::near_horizon_convergence, "ratio of successive near-horizon errors";
    "jt-constant-curvature", 1e-9, checks::jt_constant_curvature, "|𝓡| = 2Λ for every a²";
    "jt-br-minus-block", 1e-12, checks::jt_br_minus_block, "JT metric equals the BR⁻ (t, r) block";
}

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

fn execute(def: &CheckDef, overrides: &Overrides) -> CheckReport {
    let tolerance = overrides.tolerance.unwrap_or(def.tolerance);
    let start = Instant::now();
    let outcome = (def.run)(overrides);
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => CheckReport {
            name: def.name.to_string(),
            residual: o.residual,
            tolerance,
            passed: o.residual <= tolerance,
            grid_spec: o.grid,
            elapsed,
            error: None,
        },
        Err(e) => CheckReport {
            name: def.name.to_string(),
            residual: f64::INFINITY,
            tolerance,
            passed: false,
            grid_spec: String::new(),
            elapsed,
            error: Some(e.to_string()),
        },
    }
}

pub fn run_check(name: &str, overrides: &Overrides) -> Result<CheckReport> {
    let def = REGISTRY
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| GeomError::UnknownCheck(name.to_string()))?;
    Ok(execute(def, overrides))
}

/// Checks whose names match the glob `filter`, in registration order; an
/// empty filter selects everything.
pub fn select(filter: &str) -> Vec<&'static CheckDef> {
    if filter.is_empty() {
        return REGISTRY.iter().collect();
    }
    match glob::Pattern::new(filter) {
        Ok(p) => REGISTRY.iter().filter(|c| p.matches(c.name)).collect(),
        Err(_) => Vec::new(),
    }
}

/// Runs the selected checks concurrently and returns them in registration
/// order.
pub fn run_all(filter: &str, overrides: &Overrides) -> Vec<CheckReport> {
    let selected = select(filter);
    std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|def| s.spawn(move || execute(def, overrides)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}

/// `%.17g` formatting; non-finite values become `null`.
pub fn format_g17(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// JSON string literal with the mandatory escapes.
pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

impl CheckReport {
    /// Stable-key-order JSON object; `elapsed` is omitted so that reports
    /// are byte-identical across runs.
    pub fn to_json(&self) -> String {
        let error = match &self.error {
            Some(e) => json_string(e),
            None => "null".into(),
        };
        format!(
            "{{\"name\":{},\"residual\":{},\"tolerance\":{},\"passed\":{},\"grid_spec\":{},\"error\":{}}}",
            json_string(&self.name),
            format_g17(self.residual),
            format_g17(self.tolerance),
            self.passed,
            json_string(&self.grid_spec),
            error
        )
    }
}

/// JSON array of reports, one object per line.
pub fn reports_to_json(reports: &[CheckReport]) -> String {
    let body: Vec<String> = reports.iter().map(|r| format!("  {}", r.to_json())).collect();
    if body.is_empty() {
        "[]\n".into()
    } else {
        format!("[\n{}\n]\n", body.join(",\n"))
    }
}
