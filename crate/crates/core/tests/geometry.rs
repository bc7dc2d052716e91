use std::sync::Arc;

use flagmorse::geometry::{
    adjoint_perturb, classify, complex_hessian, dichotomy, identity_suite, p_bound, p_pairing,
    q_sample, r_operator, GaussLegendre, HatTransport, HessianClass, HessianEvaluator, RealFormFrame,
    Suite,
};
use flagmorse::{Family, GeometryError, PaintedDiagram, ParabolicSplit, RootSystem, RootVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame(f: Family, r: usize, painted: &str) -> RealFormFrame {
    let s = Arc::new(RootSystem::build(f, r).unwrap());
    let p = PaintedDiagram::parse(&s, painted).unwrap();
    RealFormFrame::from_split(Arc::new(ParabolicSplit::new(s, p)))
}

#[test]
fn every_suite_passes_on_small_frames() {
    for fr in [frame(Family::A, 2, "1"), frame(Family::B, 2, ""), frame(Family::D, 4, "2")] {
        let rep = identity_suite(&fr, Suite::All, 200, 5);
        assert!(rep.pass(), "{}", rep.to_json());
        assert!(rep.checks.len() >= 30);
    }
}

#[test]
fn reports_are_reproducible() {
    let fr = frame(Family::C, 3, "");
    let a = identity_suite(&fr, Suite::Twomel, 50, 17);
    let b = identity_suite(&fr, Suite::Twomel, 50, 17);
    assert_eq!(a.checks, b.checks);
    assert_eq!(dichotomy(&fr, 40, 2), dichotomy(&fr, 40, 2));
}

#[test]
fn dichotomy_on_painted_frames() {
    for fr in [frame(Family::B, 3, "2"), frame(Family::C, 3, "3"), frame(Family::A, 4, "2,3")] {
        let rep = dichotomy(&fr, 150, 8);
        assert!(rep.pass(), "{rep:?}");
    }
}

#[test]
fn twist_rate_on_d4() {
    let rep = q_sample(&frame(Family::D, 4, ""), 40, 21);
    assert!(rep.pass(), "{rep:?}");
    assert_eq!(rep.degenerate_t_roots, 0);
    let k = rep.search.unwrap();
    assert!(k.k > 0.0 && k.k < k.k_boundary && k.margin < 0.0);
}

#[test]
fn hessian_is_nonpositive_and_matches_complex_form() {
    let fr = frame(Family::B, 3, "");
    let quad = GaussLegendre::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let g = fr.random_unit_m(&mut rng);
        let x = fr.random_unit_m(&mut rng);
        let h = HessianEvaluator::new(&fr, &g, quad.clone()).value(&x);
        assert!(h <= 1e-12);
        assert!((h - complex_hessian(&fr, &g, &x, &quad)).abs() < 1e-10);
    }
}

#[test]
fn equal_roots_give_negative_hessian() {
    let fr = frame(Family::A, 3, "");
    let sp = fr.split();
    let d = sp.delta_m_pos()[0];
    assert!(matches!(classify(sp, &[d], &[d]), HessianClass::Negative(_)));
    let g = fr.root_m_vector(d, 1.0, 0.0).unwrap();
    let x = fr.root_m_vector(d, 0.3, 0.4).unwrap();
    let h = HessianEvaluator::new(&fr, &g, GaussLegendre::default()).value(&x);
    assert!(h < -1e-3);
}

#[test]
fn perturbation_rejects_m_roots_and_preserves_norm() {
    let fr = frame(Family::B, 3, "3");
    let s = fr.split().system();
    let e2 = s.id_of(&RootVector::from_unscaled(&[0, 1, 0])).unwrap();
    let e3 = s.id_of(&RootVector::from_unscaled(&[0, 0, 1])).unwrap();
    let g = fr.root_m_vector(e2, 0.6, 0.8).unwrap();
    assert!(matches!(adjoint_perturb(&fr, &g, e2, 0.1), Err(GeometryError::NotInK(_))));
    for t in [1e-3, 0.1, 1.0] {
        let p = adjoint_perturb(&fr, &g, e3, t).unwrap();
        assert!((fr.norm_m(&p.gdot) - fr.norm_m(&g)).abs() < 1e-12);
        assert!(p.support.contains(&e2));
    }
}

#[test]
fn p_pairing_bounded_by_matrix_norm() {
    let fr = frame(Family::C, 3, "");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = fr.random_unit_m(&mut rng);
    let n = p_bound(&fr, &g);
    for _ in 0..100 {
        let x = fr.random_unit_m(&mut rng);
        let y = fr.random_unit_m(&mut rng);
        assert!(p_pairing(&fr, &x, &y, &g).abs() <= 2.0 * n + 1e-12);
    }
}

fn frames() -> impl Strategy<Value = (usize, u64)> {
    (0usize..4, any::<u64>())
}

fn pick(i: usize) -> RealFormFrame {
    [
        frame(Family::A, 2, ""),
        frame(Family::B, 2, "1"),
        frame(Family::C, 3, "2"),
        frame(Family::A, 3, "2"),
    ][i]
        .clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transport_keeps_velocity_component_and_commutes_with_j((i, seed) in frames(), t in -2.0f64..2.0) {
        let fr = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = fr.random_unit_m(&mut rng);
        let x = fr.random_unit_m(&mut rng);
        let tr = HatTransport::new(&fr, &g);
        let y = tr.apply(t, &x);
        prop_assert!((fr.inner_m(&y, &g) - fr.inner_m(&x, &g)).abs() < 1e-10);
        let jy = tr.apply(t, &fr.j_apply(&x));
        prop_assert!((&jy - fr.j_apply(&y)).norm() < 1e-10);
        let r = r_operator(&fr, &g);
        prop_assert!((&r * fr.j_matrix() - fr.j_matrix() * &r).norm() < 1e-10);
    }

    #[test]
    fn m_brackets_are_antisymmetric_and_j_is_isometric((i, seed) in frames()) {
        let fr = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = fr.random_unit_m(&mut rng);
        let y = fr.random_unit_m(&mut rng);
        prop_assert!((fr.bracket_m(&x, &y) + fr.bracket_m(&y, &x)).norm() < 1e-12);
        prop_assert!((fr.norm_m(&fr.j_apply(&x)) - 1.0).abs() < 1e-12);
        prop_assert!((fr.inner_m(&fr.j_apply(&x), &fr.j_apply(&y)) - fr.inner_m(&x, &y)).abs() < 1e-12);
    }
}
