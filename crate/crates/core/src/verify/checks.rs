use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Outcome, Overrides, SEED};
use crate::br::{
    br_chart, br_tetrad, decomposable_ricci_residual, f_tilde_jets, omega_jets,
    rainich_algebraic_check, verify_einstein_maxwell, BrSpec, BrVariant,
};
use crate::chart::{flat_pullback, Chart};
use crate::curvature::{gaussian_curvature, scalar_curvature};
use crate::desitter::{
    ds2_embed, ds2_embed_jets, ds2_residual, redshift, redshift_from_hubble, steady_state_chart,
    steady_state_chart_2d, ScaleHistory, DS2_AMBIENT,
};
use crate::error::Result;
use crate::forms::{covariant_derivative, exterior_derivative, hodge_dual_matrix};
use crate::geodesic::{geodesic_distance, geodesic_integrate};
use crate::horizon::{
    conformal_factor, jt_solution, near_horizon_relative_error, penrose_inverse, penrose_map,
    EmbeddingKind, HorizonEmbedding,
};
use crate::jet::{Jet, C64};
use crate::kinematics::{add_parallel, FourMomentum, Sheet};
use crate::quadric::{beltrami_metric, chart_coords, embed_jets, embed_point, hyperbolic_chart, QuadricSpec};
use crate::tensor::{max_abs, CMatrix, Variance};
use crate::triangle::{excess_angle, Triangle};

const RADII: [f64; 3] = [0.5, 1.0, 2.0];

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn quadric_points() -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for a in [0.4, 1.1, 2.3] {
        for phi in [0.1, 2.0, 4.5] {
            out.push([a, phi]);
        }
    }
    out
}

fn outcome(residual: f64, grid: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        residual,
        grid: grid.into(),
    })
}

pub fn quadric_curvature(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for r in RADII {
        for q in QuadricSpec::fundamental(r) {
            let chart = hyperbolic_chart(&q)?;
            for p in quadric_points() {
                let k = gaussian_curvature(&chart, &p)?;
                worst = worst.max((k - q.curvature()).norm());
            }
        }
    }
    outcome(worst, "6 patterns × R∈{0.5,1,2} × 3×3 (χ,φ) lattice")
}

pub fn beltrami_curvature(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for r in RADII {
        let chart = beltrami_metric(r);
        for u in lattice(-0.6 * r, 0.6 * r, 7) {
            for v in lattice(-0.6 * r, 0.6 * r, 7) {
                let k = gaussian_curvature(&chart, &[u, v])?;
                worst = worst.max((k + 1.0 / (r * r)).norm());
            }
        }
    }
    outcome(worst, "R∈{0.5,1,2} × 7×7 lattice on |u|,|v| ≤ 0.6R")
}

pub fn beltrami_chords(_: &Overrides) -> Result<Outcome> {
    let chart = beltrami_metric(1.0);
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let rad = 0.7 * rng.random::<f64>().sqrt();
        let a = rng.random_range(0.0..2.0 * PI);
        let d = rng.random_range(0.0..2.0 * PI);
        let start = [rad * a.cos(), rad * a.sin()];
        let vel = [0.3 * d.cos(), 0.3 * d.sin()];
        let tr = geodesic_integrate(&chart, &start, &vel, 1.0, 200)?;
        worst = worst.max(tr.collinearity_residual());
    }
    outcome(worst, "20 seeded geodesics, R=1, speed 0.3, λ∈[0,1], 200 steps")
}

pub fn beltrami_distance(_: &Overrides) -> Result<Outcome> {
    let d = geodesic_distance(&beltrami_metric(1.0), &[0.0, 0.0], &[0.5, 0.0], 400)?;
    outcome((d - 0.5f64.atanh()).abs(), "(0,0)→(0.5,0), R=1, 400 steps")
}

pub fn sphere_octant_excess(_: &Overrides) -> Result<Outcome> {
    let q = QuadricSpec::new([1, 1, 1, 1], 1.0)?;
    let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
    let pts = [
        [1.0 / s3, 0.0, -2.0 / s6],
        [1.0 / s3, 1.0 / s2, 1.0 / s6],
        [1.0 / s3, -1.0 / s2, 1.0 / s6],
    ];
    let c = pts.iter().map(|p| chart_coords(&q, *p)).collect::<Result<Vec<_>>>()?;
    let ex = excess_angle(&hyperbolic_chart(&q)?, &Triangle::new(c[0], c[1], c[2])?)?;
    outcome((ex.excess - q.curvature() * ex.area).abs(), "unit sphere, octant with rotated vertices")
}

pub fn beltrami_triangle_excess(_: &Overrides) -> Result<Outcome> {
    let tri = Triangle::new([0.0, 0.0], [0.4, 0.0], [0.0, 0.4])?;
    let ex = excess_angle(&beltrami_metric(1.0), &tri)?;
    outcome((ex.excess + ex.area).abs(), "R=1, vertices (0,0), (0.4,0), (0,0.4)")
}

pub fn quadric_embedding(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for r in RADII {
        for q in QuadricSpec::all_admissible(r) {
            for p in quadric_points() {
                worst = worst.max(q.residual(embed_point(&q, &p)?).abs());
            }
        }
    }
    outcome(worst, "14 admissible patterns × R∈{0.5,1,2} × 3×3 lattice")
}

pub fn quadric_pullback(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for r in RADII {
        for q in QuadricSpec::all_admissible(r) {
            let chart = hyperbolic_chart(&q)?;
            for p in quadric_points() {
                let pulled = flat_pullback(&q.ambient_signs(), &|x: &[Jet]| embed_jets(&q, x), &p);
                worst = worst.max(max_abs(&(pulled - chart.metric_at(&p)?)));
            }
        }
    }
    outcome(worst, "14 admissible patterns × R∈{0.5,1,2} × 3×3 lattice")
}

fn ds2_lattice() -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for t in lattice(-1.0, 1.0, 5) {
        for x in lattice(-1.0, 1.0, 5) {
            out.push([t, x]);
        }
    }
    out
}

pub fn ds2_embedding(_: &Overrides) -> Result<Outcome> {
    let worst = ds2_lattice()
        .iter()
        .map(|p| ds2_residual(ds2_embed(p[0], p[1])).abs())
        .fold(0.0, f64::max);
    outcome(worst, "5×5 lattice on t̄, x̄ ∈ [−1, 1]")
}

pub fn ds2_pullback(_: &Overrides) -> Result<Outcome> {
    let chart = steady_state_chart_2d(1.0)?;
    let mut worst: f64 = 0.0;
    for p in ds2_lattice() {
        let pulled = flat_pullback(&DS2_AMBIENT, &ds2_embed_jets, &p);
        worst = worst.max(max_abs(&(pulled - chart.metric_at(&p)?)));
    }
    outcome(worst, "5×5 lattice on t̄, x̄ ∈ [−1, 1]")
}

fn horizon_samples(kind: EmbeddingKind, m: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    match kind {
        EmbeddingKind::Br0 => {
            for r in [0.5, 1.0, 2.0, 4.0] {
                for k in [-2.5, -1.2, 1.2, 2.5] {
                    out.push((r * m, k * m / r));
                }
            }
        }
        EmbeddingKind::BrPlus => {
            for r in [-2.0, -0.5, 0.0, 1.0, 3.0] {
                for t in [-2.0, 0.0, 1.3, 5.0] {
                    out.push((r * m, t * m));
                }
            }
        }
        EmbeddingKind::BrMinus => {
            for r in [-3.0, 1.2, 2.0, 4.0] {
                for t in [-1.0, 0.0, 1.5] {
                    out.push((r * m, t * m));
                }
            }
        }
    }
    out
}

const KINDS: [EmbeddingKind; 3] = [EmbeddingKind::Br0, EmbeddingKind::BrPlus, EmbeddingKind::BrMinus];

pub fn horizon_embedding(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for m in [0.7, 1.0, 1.3] {
        for kind in KINDS {
            let e = HorizonEmbedding::new(kind, m)?;
            for (r, t) in horizon_samples(kind, m) {
                worst = worst.max(e.quadric_residual(r, t)?.abs());
            }
        }
    }
    outcome(worst, "BR⁰, BR⁺, BR⁻ × M∈{0.7,1,1.3} × (r,t) lattices inside each domain")
}

pub fn horizon_pullback(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for m in [0.7, 1.0, 1.3] {
        for kind in KINDS {
            let e = HorizonEmbedding::new(kind, m)?;
            for (r, t) in horizon_samples(kind, m) {
                worst = worst.max(e.pullback_residual(r, t)?);
            }
        }
    }
    outcome(worst, "BR⁰, BR⁺, BR⁻ × M∈{0.7,1,1.3} × (r,t) lattices inside each domain")
}

pub fn velocity_addition(_: &Overrides) -> Result<Outcome> {
    outcome((add_parallel(0.5, 0.5)? - 0.8).abs(), "parallel composition of 0.5 with 0.5")
}

pub fn mass_shell_boosts(_: &Overrides) -> Result<Outcome> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let m = rng.random_range(0.1..3.0);
        let p = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
        let sheet = if rng.random::<bool>() { Sheet::Particle } else { Sheet::Antiparticle };
        let chi = rng.random_range(-3.0..3.0);
        let axis = rng.random_range(0..3);
        let b = FourMomentum::on_shell(p, m, sheet).boost(chi, axis);
        let scale = b.e * b.e + b.p.iter().map(|x| x * x).sum::<f64>();
        worst = worst.max(b.shell_residual(m) / scale);
    }
    outcome(worst, "1000 seeded momenta, m∈[0.1,3], |pᵢ|≤2, |χ|≤3")
}

pub fn redshift_identity(_: &Overrides) -> Result<Outcome> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let c = rng.random_range(0.1..2.0);
        let p = rng.random_range(0.2..1.5);
        let a = rng.random_range(-0.5..0.5);
        let b = rng.random_range(-0.3..0.3);
        let w = rng.random_range(0.5..3.0);
        let hist = ScaleHistory::new(
            move |t: Jet| (t * c + 1.0).powf(p) * (t * a + (t * w).sin() * b).exp(),
            0,
            (0.0, 10.0),
        )?;
        let t0 = rng.random_range(0.1..1.0);
        let t1 = t0 + rng.random_range(0.1..2.0);
        let direct = redshift(&hist, t0, t1)?;
        let integrated = redshift_from_hubble(&hist, t0, t1)?;
        worst = worst.max((direct - integrated).abs() / direct);
    }
    outcome(worst, "50 seeded histories (1+ct)^p·exp(at + b sin ωt)")
}

pub fn redshift_constant_h(_: &Overrides) -> Result<Outcome> {
    let hist = ScaleHistory::exponential(1.0, 0)?;
    let e = std::f64::consts::E;
    let worst = (redshift_from_hubble(&hist, 0.0, 1.0)? - e)
        .abs()
        .max((redshift(&hist, 0.0, 1.0)? - e).abs());
    outcome(worst, "H=1, t₀=0, t₁=1")
}

pub fn br2_einstein_maxwell(o: &Overrides) -> Result<Outcome> {
    let (rp, rm) = (o.r_plus.unwrap_or(1.0), o.r_minus.unwrap_or(1.0));
    let spec = if o.has_br() {
        BrSpec::unchecked(BrVariant::Br2, rp, rm, o.lambda.unwrap_or(0.0))?
    } else {
        BrSpec::from_radii(BrVariant::Br2, rp, rm)?
    };
    let res = verify_einstein_maxwell(&spec, &spec.grid(5))?;
    outcome(
        res,
        format!("5⁴ lattice, R₊={}, R₋={}, Λ={}", spec.r_plus, spec.r_minus, spec.lambda),
    )
}

pub fn br2_einstein_maxwell_lambda(_: &Overrides) -> Result<Outcome> {
    let spec = BrSpec::new(BrVariant::Br2, 1.0, 0.5f64.sqrt(), 0.5)?;
    outcome(
        verify_einstein_maxwell(&spec, &spec.grid(5))?,
        "5⁴ lattice, R₊=1, R₋=1/√2, Λ=1/2, ρ=3/2",
    )
}

pub fn br2_negative_control(_: &Overrides) -> Result<Outcome> {
    let spec = BrSpec::unchecked(BrVariant::Br2, 1.0, 2.0, 0.0)?;
    let res = verify_einstein_maxwell(&spec, &spec.grid(3))?;
    outcome(0.1 / res, "3⁴ lattice, R₊=1, R₋=2, Λ=0 (residual is the inverse margin)")
}

pub fn br1_ricci_decomposable(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (rp, rm) in [(1.0, 1.0), (1.3, 0.8)] {
        let spec = BrSpec::from_radii(BrVariant::Br1, rp, rm)?;
        for p in spec.grid(3) {
            worst = worst.max(decomposable_ricci_residual(&spec, &p)?);
        }
    }
    outcome(worst, "3⁴ lattice, (R₊,R₋)∈{(1,1),(1.3,0.8)}")
}

fn br_specs() -> Result<[BrSpec; 2]> {
    Ok([
        BrSpec::from_radii(BrVariant::Br2, 1.0, 0.8)?.with_phase(0.4),
        BrSpec::from_radii(BrVariant::Br1, 1.2, 1.0)?,
    ])
}

pub fn self_duality(_: &Overrides) -> Result<Outcome> {
    let i = C64::new(0.0, 1.0);
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for spec in br_specs()? {
        let tet = br_tetrad(&spec);
        for p in spec.grid(2) {
            let g = tet.metric_from_tetrad(&p)?;
            for z in tet.self_dual_basis(&p)?.z {
                let dual = hodge_dual_matrix(&g, &z)?;
                worst = worst.max(max_abs(&(dual - &z * i)));
            }
            let a = CMatrix::from_fn(4, 4, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let f = &a - a.transpose();
            let twice = hodge_dual_matrix(&g, &hodge_dual_matrix(&g, &f)?)?;
            worst = worst.max(max_abs(&(twice + &f)));
        }
    }
    outcome(worst, "BR₁ and BR₂, 2⁴ lattice each, seeded complex two-forms")
}

pub fn maxwell_closure(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for spec in br_specs()? {
        let chart = br_chart(&spec);
        let f = f_tilde_jets(&spec);
        let om = omega_jets(&spec);
        for p in spec.grid(2) {
            worst = worst
                .max(exterior_derivative(&f, 2, &p)?.max_abs())
                .max(exterior_derivative(&om, 2, &p)?.max_abs())
                .max(covariant_derivative(&chart, &f, &[Variance::Lower; 2], &p)?.max_abs());
        }
    }
    outcome(worst, "BR₁ and BR₂, 2⁴ lattice each")
}

pub fn rainich_br(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for spec in [
        BrSpec::from_radii(BrVariant::Br2, 1.0, 1.0)?,
        BrSpec::from_radii(BrVariant::Br1, 2.0, 2.0)?,
    ] {
        let chart = br_chart(&spec);
        for p in spec.grid(2) {
            let r = rainich_algebraic_check(&chart, &p)?;
            worst = worst.max(r.defect).max((r.a_abar - spec.rho).abs());
        }
    }
    outcome(worst, "Λ=0 BR₂ (R=1) and BR₁ (R=2), 2⁴ lattice each")
}

pub fn rainich_ds4_rejected(_: &Overrides) -> Result<Outcome> {
    let chart = steady_state_chart(1.0)?;
    let mut least = f64::INFINITY;
    for t in [-0.5, 0.0, 0.7] {
        let r = rainich_algebraic_check(&chart, &[t, 0.1, -0.2, 0.3])?;
        if r.passes {
            least = 0.0;
        }
        least = least.min(r.defect);
    }
    outcome(1e-8 / least, "steady-state H=1 at three times (residual is the inverse margin)")
}

pub fn kahler_structures(_: &Overrides) -> Result<Outcome> {
    let mut rng = rng();
    let id = CMatrix::identity(4, 4);
    let mut worst: f64 = 0.0;
    for spec in br_specs()? {
        let tet = br_tetrad(&spec);
        let bounded = if spec.variant == BrVariant::Br2 { 1 } else { 3 };
        for _ in 0..50 {
            let mut p = [0.0; 4];
            for (k, c) in p.iter_mut().enumerate() {
                let lim = if k == bounded { 0.9 * spec.r_plus } else { 2.0 };
                *c = rng.random_range(-lim..lim);
            }
            let k = crate::br::kahler_structures(&tet, &p)?;
            let g = tet.metric_from_tetrad(&p)?;
            worst = worst
                .max(max_abs(&(&k.j * &k.j + &id)))
                .max(max_abs(&(k.j.transpose() * &g * &k.j - &g)))
                .max(max_abs(&(&k.p * &k.p - &id)))
                .max(k.p.trace().norm());
        }
    }
    outcome(worst, "100 seeded points, 50 on BR₂ and 50 on BR₁")
}

pub fn penrose_roundtrip(_: &Overrides) -> Result<Outcome> {
    let mut worst = (conformal_factor(0.4, 0.4)? + 1.0).abs();
    for m in [0.5, 1.0, 2.0] {
        for x in lattice(-5.0, 5.0, 11) {
            for tau in lattice(-3.0, 3.0, 7) {
                let t = tau * m;
                let (u, v) = penrose_map(x, t, m)?;
                let (x2, t2) = penrose_inverse(u, v, m)?;
                let turns = (t2 - t) / (2.0 * PI * m);
                worst = worst
                    .max((x2 - x).abs() / x.abs().max(1.0))
                    .max((turns - turns.round()).abs());
            }
        }
    }
    outcome(worst, "M∈{0.5,1,2} × 11×7 (x, t) lattice, t modulo 2πM")
}

pub fn near_horizon_convergence(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for m in [0.5, 1.0, 2.0] {
        let e = [0.1, 0.01, 0.001]
            .iter()
            .map(|s| near_horizon_relative_error(m, s * m, 1.0))
            .collect::<Result<Vec<_>>>()?;
        worst = worst.max(e[1] / e[0]).max(e[2] / e[1]);
    }
    outcome(worst, "M∈{0.5,1,2}, r/M∈{0.1,0.01,0.001}")
}

pub fn jt_constant_curvature(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for lambda in [0.5, 1.0, 2.0] {
        for a2 in [0.0, 1.0, 2.5] {
            let chart: Chart = jt_solution(lambda, a2, 0.0)?.chart();
            let r0 = (a2 / lambda).sqrt();
            for r in lattice(r0 + 0.1, r0 + 3.0, 20) {
                let s = scalar_curvature(&chart, &[0.3, r])?;
                worst = worst.max((s.norm() - 2.0 * lambda).abs());
            }
        }
    }
    outcome(worst, "Λ∈{0.5,1,2} × a²∈{0,1,2.5} × 20 radii in the static patch")
}

pub fn jt_br_minus_block(_: &Overrides) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for m in [0.5, 1.0, 1.7] {
        let jt = jt_solution(1.0 / (m * m), 1.0, 0.0)?.chart();
        let block = HorizonEmbedding::new(EmbeddingKind::BrMinus, m)?.block_chart();
        for r in lattice(1.1 * m, 5.0 * m, 9) {
            let d = jt.metric_at(&[0.2, r])? - block.metric_at(&[0.2, r])?;
            worst = worst.max(max_abs(&d));
        }
    }
    outcome(worst, "M∈{0.5,1,1.7}, a²=1, Λ=1/M², 9 radii")
}
