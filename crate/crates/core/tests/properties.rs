use proptest::prelude::*;

use pslab::br::{br_tetrad, kahler_structures, BrSpec, BrVariant};
use pslab::chart::flat_pullback;
use pslab::desitter::{redshift, ScaleHistory};
use pslab::forms::hodge_dual_matrix;
use pslab::horizon::{penrose_inverse, penrose_map, EmbeddingKind, HorizonEmbedding};
use pslab::kinematics::{add_parallel, add_velocities, FourMomentum, Sheet};
use pslab::quadric::{
    beltrami_to_hyperboloid, embed_jets, embed_point, hyperbolic_chart, hyperboloid_to_beltrami, QuadricSpec,
};
use pslab::tensor::{max_abs, CMatrix};
use pslab::verify::format_g17;
use pslab::{Jet, C64};

fn pattern() -> impl Strategy<Value = (usize, f64)> {
    (0usize..14, 0.3f64..3.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadric_embedding_lands_on_quadric((idx, r) in pattern(), a in 0.1f64..2.5, phi in -3.0f64..3.0) {
        let q = QuadricSpec::all_admissible(r)[idx];
        let p = embed_point(&q, &[a, phi]).unwrap();
        let scale = p.iter().map(|x| x * x).sum::<f64>().max(1.0);
        prop_assert!(q.residual(p).abs() < 1e-12 * scale);
        let pulled = flat_pullback(&q.ambient_signs(), &|x: &[Jet]| embed_jets(&q, x), &[a, phi]);
        let g = hyperbolic_chart(&q).unwrap().metric_at(&[a, phi]).unwrap();
        prop_assert!(max_abs(&(pulled - g)) < 1e-10 * scale);
    }

    #[test]
    fn beltrami_hyperboloid_round_trip(u in -0.69f64..0.69, v in -0.69f64..0.69, r in 0.5f64..2.0) {
        let p = beltrami_to_hyperboloid(u * r, v * r, r);
        let (u2, v2) = hyperboloid_to_beltrami(p, r);
        prop_assert!((u2 - u * r).abs() < 1e-12 && (v2 - v * r).abs() < 1e-12);
    }

    #[test]
    fn parallel_composition_is_commutative_and_associative(
        a in -0.99f64..0.99, b in -0.99f64..0.99, c in -0.99f64..0.99,
    ) {
        let ab = add_parallel(a, b).unwrap();
        prop_assert!((ab - add_parallel(b, a).unwrap()).abs() < 1e-15);
        let left = add_parallel(ab, c).unwrap();
        let right = add_parallel(a, add_parallel(b, c).unwrap()).unwrap();
        prop_assert!((left - right).abs() < 1e-12);
        prop_assert!(ab.abs() < 1.0);
    }

    #[test]
    fn composed_speed_stays_subluminal(a in 0.0f64..0.999, b in 0.0f64..0.999, alpha in 0.0f64..6.3) {
        let v = add_velocities(a, b, alpha).unwrap();
        prop_assert!((0.0..1.0).contains(&v));
    }

    #[test]
    fn boosts_preserve_the_shell(
        m in 0.1f64..3.0, px in -2.0f64..2.0, py in -2.0f64..2.0, chi in -3.0f64..3.0, axis in 0usize..3,
    ) {
        let p = FourMomentum::on_shell([px, py, 0.5], m, Sheet::Particle);
        let b = p.boost(chi, axis);
        prop_assert!(b.shell_residual(m) < 1e-12 * (b.e * b.e));
        prop_assert_eq!(b.sheet(), Sheet::Particle);
    }

    #[test]
    fn redshift_is_multiplicative(t0 in 0.1f64..1.0, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0, p in 0.2f64..2.0) {
        let h = ScaleHistory::power(p, 0).unwrap();
        let (t1, t2) = (t0 + d1, t0 + d1 + d2);
        let whole = redshift(&h, t0, t2).unwrap();
        let parts = redshift(&h, t0, t1).unwrap() * redshift(&h, t1, t2).unwrap();
        prop_assert!((whole - parts).abs() < 1e-13 * whole);
    }

    #[test]
    fn horizon_embeddings_stay_on_quadric(r in 1.05f64..5.0, t in -4.0f64..4.0, m in 0.3f64..2.0) {
        for kind in [EmbeddingKind::BrPlus, EmbeddingKind::BrMinus] {
            let e = HorizonEmbedding::new(kind, m).unwrap();
            let scale = e.embed(r * m, t).unwrap().iter().map(|x| x * x).sum::<f64>().max(1.0);
            prop_assert!(e.quadric_residual(r * m, t).unwrap().abs() < 1e-13 * scale);
        }
    }

    #[test]
    fn penrose_round_trip(x in -20.0f64..20.0, t in -10.0f64..10.0, m in 0.2f64..3.0) {
        let (u, v) = penrose_map(x, t, m).unwrap();
        prop_assert!((0.0..2.0 * std::f64::consts::PI).contains(&v));
        let (x2, t2) = penrose_inverse(u, v, m).unwrap();
        prop_assert!((x2 - x).abs() < 1e-10 * x.abs().max(1.0));
        let turns = (t2 - t) / (2.0 * std::f64::consts::PI * m);
        prop_assert!((turns - turns.round()).abs() < 1e-10);
    }

    #[test]
    fn br_structures_at_random_points(
        t in -3.0f64..3.0, s in -0.9f64..0.9, y in -3.0f64..3.0, z in -3.0f64..3.0,
        rp in 0.5f64..2.0, rm in 0.5f64..2.0, br1 in any::<bool>(),
    ) {
        let variant = if br1 { BrVariant::Br1 } else { BrVariant::Br2 };
        let spec = BrSpec::from_radii(variant, rp, rm).unwrap();
        let p = if br1 { [t, y, z, s * rp] } else { [t, s * rp, y, z] };
        let tet = br_tetrad(&spec);
        let g = tet.metric_from_tetrad(&p).unwrap();
        let i = C64::new(0.0, 1.0);
        for zf in tet.self_dual_basis(&p).unwrap().z {
            let dual = hodge_dual_matrix(&g, &zf).unwrap();
            prop_assert!(max_abs(&(dual - &zf * i)) < 1e-9 * max_abs(&zf).max(1.0));
        }
        let k = kahler_structures(&tet, &p).unwrap();
        let id = CMatrix::identity(4, 4);
        prop_assert!(max_abs(&(&k.j * &k.j + &id)) < 1e-10);
        prop_assert!(max_abs(&(&k.p * &k.p - &id)) < 1e-10);
    }

    #[test]
    fn g17_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = format_g17(x);
        prop_assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
