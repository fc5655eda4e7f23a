use std::f64::consts::PI;

use proptest::prelude::*;
use standard_subspaces::affine::*;
use standard_subspaces::linalg::c64;
use standard_subspaces::Error;

fn grid() -> AffineGrid {
    AffineGrid::default_grid()
}

#[test]
fn identity_and_conjugation() {
    let g = grid();
    let v = g.gaussian_in_v(-3.0, 1.0);
    let f = g.translate(0.7, &v).unwrap();
    assert_eq!(g.affine_apply(&AffineElement::identity(), &f).unwrap(), f);
    // J U_b J = U_{-b}, exactly on samples
    let lhs = g.conjugate(&g.translate(0.4, &g.conjugate(&f)).unwrap());
    let rhs = g.translate(-0.4, &f).unwrap();
    assert!(g.norm(&g.sub(&lhs, &rhs)) < 1e-14);
}

#[test]
fn dilation_is_a_shift() {
    let g = grid();
    let v = g.gaussian_in_v(-3.0, 1.0);
    let w = g.dilate(1.0, &v).unwrap();
    // W_s f(θ) = f(θ + s): the centre moves from -3 to -4
    let centre = |f: &GridFunction| {
        let m: f64 = f.values.iter().zip(g.theta()).map(|(z, t)| z.norm_sqr() * t).sum();
        m / f.values.iter().map(|z| z.norm_sqr()).sum::<f64>()
    };
    assert!((centre(&w) - centre(&v) + 1.0).abs() < 1e-8);
    let back = g.dilate(-1.0, &w).unwrap();
    assert!(g.norm(&g.sub(&back, &v)) < 1e-12);
}

#[test]
fn test_vectors_lie_in_v() {
    let g = grid();
    for v in g.test_vectors() {
        assert!((g.norm(&v) - 1.0).abs() < 1e-12);
        assert!(g.dist_to_v(&v).unwrap() < 1e-10);
    }
    // S is unbounded: check S v = v and S² = 1 on a narrow band, where roundoff is
    // amplified by at most e^{3π}
    let narrow = AffineGrid::new(DEFAULT_N, DEFAULT_L, 3.0).unwrap();
    for v in narrow.test_vectors() {
        let s = narrow.tomita_apply(&v).unwrap();
        assert!(narrow.norm(&narrow.sub(&s, &v)) < 1e-9);
        let f = narrow.scale(&v, c64(0.3, 0.8));
        let ss = narrow.tomita_apply(&narrow.tomita_apply(&f).unwrap()).unwrap();
        assert!(narrow.norm(&narrow.sub(&ss, &f)) < 1e-9);
    }
}

#[test]
fn projection_is_orthogonal() {
    let g = grid();
    let vs = g.test_vectors();
    let f = g.translate(-1.0, &vs[4]).unwrap();
    let p = g.project_v(&f).unwrap();
    let pp = g.project_v(&p).unwrap();
    assert!(g.norm(&g.sub(&pp, &p)) < 1e-10);
    // f - Pf is orthogonal to V for the real inner product
    let r = g.sub(&f, &p);
    for v in &vs {
        assert!(g.inner(v, &r).re.abs() < 1e-9);
        let iv = g.scale(v, c64(0.0, 1.0));
        assert!(g.dist_to_v(&iv).unwrap() > 0.1);
    }
}

#[test]
fn borchers_commutation() {
    let g = grid();
    let vs = g.test_vectors();
    let pairs = [(0.5, 0.3), (1.0, 0.3), (0.5, -0.3), (-1.0, 0.7)];
    assert!(g.borchers_residual(&pairs, &vs).unwrap() <= 1e-9);
}

#[test]
fn translations_into_v_for_positive_b() {
    let g = grid();
    let vs = g.test_vectors();
    let report = monotonicity_experiment(&g, &[0.0, 0.1, 0.5, 1.0, -1.0], &vs, 1e-6).unwrap();
    assert!(report.pass, "{report:?}");
    for row in &report.rows {
        if row.b >= 0.0 {
            assert!(row.max_distance <= 1e-6, "{row:?}");
        } else {
            assert!(row.max_distance >= 1e-3, "{row:?}");
        }
    }
    assert!((report.fitted_alpha - 1.0).abs() < 1e-6, "{report:?}");
}

#[test]
fn inclusion_orientation_is_pinned() {
    assert_eq!(INCLUSION_ORIENTATION, 1);
    let g = grid();
    let v = g.gaussian_in_v(-2.0, 1.0);
    assert!(g.dist_to_v(&g.translate(1.0, &v).unwrap()).unwrap() < 1e-6);
    assert!(g.dist_to_v(&g.translate(-1.0, &v).unwrap()).unwrap() > 1e-3);
}

#[test]
fn dilations_move_the_violation() {
    let g = grid();
    let v = g.gaussian_in_v(-2.0, 1.0);
    let d = dilation_moves_geodesic(&g, 1.0, &[-0.5, 0.0, 0.5], &v).unwrap();
    assert!(d.iter().all(|&x| x > 1e-4), "{d:?}");
    // a larger translation violates more
    assert!(d[2] > d[0]);
}

#[test]
fn group_law_holds() {
    let g = grid();
    let vs = g.test_vectors();
    let els = [
        AffineElement::new(0.3, 0.2),
        AffineElement { b: -0.4, s: -0.1, odd: true },
        AffineElement::new(1.0, -0.3),
        AffineElement::j(),
    ];
    let pairs: Vec<_> = els.iter().flat_map(|a| els.iter().map(move |b| (*a, *b))).collect();
    assert!(g.group_law_residual(&pairs, &vs).unwrap() <= 1e-8);
}

#[test]
fn positive_energy() {
    let g = grid();
    let v = g.gaussian_in_v(-2.5, 1.0);
    let e = g.energy(&v);
    assert!(e > 0.0);
    // e^θ is the derivative of b -> <v, U_b v> / i at b = 0
    let h = 1e-4;
    let plus = g.inner(&v, &g.translate(h, &v).unwrap());
    let minus = g.inner(&v, &g.translate(-h, &v).unwrap());
    let derivative = (plus - minus) / c64(0.0, 2.0 * h);
    assert!((derivative.re - e).abs() < 1e-6 * e.max(1.0));
}

#[test]
fn shift_and_overflow_errors() {
    let g = grid();
    let v = g.gaussian_in_v(-3.0, 1.0);
    assert!(matches!(g.dilate(15.0, &v), Err(Error::ShiftOutOfRange { .. })));
    let spike = g.from_fn(|t| c64(if t.abs() < 1e-9 { 1.0 } else { 0.0 }, 0.0));
    assert!(matches!(g.tomita_apply(&spike), Err(Error::SpectralOverflow { .. })));
    let small = AffineGrid::new(64, 4.0, 2.0).unwrap();
    assert!(matches!(small.translate(0.1, &v), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn grid_function_json_round_trip() {
    let g = AffineGrid::new(16, 2.0, 1.0).unwrap();
    let f = g.from_fn(|t| c64(t.sin(), (PI * t).cos()));
    let s = serde_json::to_string(&f).unwrap();
    assert_eq!(serde_json::from_str::<GridFunction>(&s).unwrap(), f);
}

#[test]
fn curve_csv_layout() {
    let csv = curve_csv(&[MonotonicityRow { b: 0.5, max_distance: 1e-10 }]);
    assert_eq!(csv, "b,max_distance\n0.5,1e-10\n");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_is_associative(b in prop::array::uniform3(-2.0f64..2.0), s in prop::array::uniform3(-1.0f64..1.0), o in prop::array::uniform3(any::<bool>())) {
        let e: Vec<_> = (0..3).map(|k| AffineElement { b: b[k], s: s[k], odd: o[k] }).collect();
        let l = e[0].mul(&e[1]).mul(&e[2]);
        let r = e[0].mul(&e[1].mul(&e[2]));
        prop_assert!((l.b - r.b).abs() < 1e-12 && (l.s - r.s).abs() < 1e-12 && l.odd == r.odd);
    }

    #[test]
    fn small_positive_translations_stay_in_v(b in 0.0f64..1.0, k in 0usize..5) {
        let g = grid();
        let v = g.test_vectors().swap_remove(k);
        prop_assert!(g.dist_to_v(&g.translate(b, &v).unwrap()).unwrap() <= 1e-6);
    }
}
