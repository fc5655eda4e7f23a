use standard_subspaces::linalg::{RMat, RVec};
use standard_subspaces::reflection::instances::*;
use standard_subspaces::reflection::{
    fixed_point_count, geodesic_from_one_param, power, verify_dilation_axioms, verify_geodesic,
    verify_reflection_axioms, AxiomReport, DilationCriterion, Geodesic, PointSpace, SampleConfig,
};
use standard_subspaces::sampling;
use standard_subspaces::tolerances::{AXIOM, POINT_EQ};

const CFG: SampleConfig = SampleConfig { n_samples: 1000, tol: AXIOM, seed: 11 };

fn show(r: &AxiomReport) {
    for l in &r.laws {
        println!("{:<55} {:<18} {:.3e}", r.law, l.law, l.max_residual);
    }
}

fn assert_pass(r: &AxiomReport) {
    show(r);
    assert!(r.pass, "{} failed: {:?}", r.law, r.laws);
    assert_eq!(r.precondition_violations, 0);
}

#[test]
fn group_instance() {
    assert_pass(&verify_reflection_axioms(&GroupSpace { n: 2 }, sample_gl(2), Some(&near_pairs_gl(2)), &CFG));
    assert_pass(&verify_reflection_axioms(&GroupSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), &CFG));
}

#[test]
fn coset_instance() {
    assert_pass(&verify_reflection_axioms(&CosetSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), &CFG));
    assert_pass(&verify_reflection_axioms(&TwistedGroupSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), &CFG));
}

#[test]
fn bilinear_instance() {
    let b = BilinearSpace::lorentz3();
    assert_pass(&verify_reflection_axioms(&b, b.sampler(), Some(&near_pairs_vector(b.sampler())), &CFG));
}

#[test]
fn product_instance() {
    let p = ProductSpace { left: GroupSpace { n: 2 }, right: BilinearSpace::lorentz3() };
    let right = BilinearSpace::lorentz3();
    let sampler = |rng: &mut sampling::SeededRng| (sample_gl(2)(rng), right.sampler()(rng));
    let pairs = |rng: &mut sampling::SeededRng| {
        let (a, b) = near_pairs_gl(2)(rng);
        let (c, d) = near_pairs_vector(right.sampler())(rng);
        ((a, c), (b, d))
    };
    assert_pass(&verify_reflection_axioms(&p, sampler, Some(&pairs), &CFG));

    let q = ProductSpace { left: HomSpace { n: 3 }, right: VectorDilationSpace::affine(2) };
    let sampler = |rng: &mut sampling::SeededRng| (sample_hom_point(3)(rng), sample_vector(2)(rng));
    let pairs = |rng: &mut sampling::SeededRng| {
        let (a, b) = near_pairs_hom(3)(rng);
        let (c, d) = near_pairs_vector(sample_vector(2))(rng);
        ((a, c), (b, d))
    };
    assert_pass(&verify_reflection_axioms(&q, sampler, Some(&pairs), &CFG));
    assert_pass(&verify_dilation_axioms(&q, sampler, &CFG));
}

#[test]
fn hom_instance() {
    let h = HomSpace { n: 3 };
    assert_pass(&verify_reflection_axioms(&h, sample_hom_point(3), Some(&near_pairs_hom(3)), &CFG));
    assert_pass(&verify_dilation_axioms(&h, sample_hom_point(3), &CFG));
}

#[test]
fn pair_instance_agrees_with_hom_instance() {
    let p = PairSpace { n: 3 };
    assert_pass(&verify_reflection_axioms(&p, sample_hom_point(3), Some(&near_pairs_hom(3)), &CFG));
    assert_pass(&verify_dilation_axioms(&p, sample_hom_point(3), &CFG));
    let h = HomSpace { n: 3 };
    let mut rng = sampling::rng(5);
    for r in [2.0, -0.5, std::f64::consts::E, -1.0] {
        let (a, b) = (sample_hom_point(3)(&mut rng), sample_hom_point(3)(&mut rng));
        let lhs = p.dilate(&a, r, &b).unwrap();
        let rhs = h.dilate(&a, r, &b).unwrap();
        assert!(p.distance(&lhs, &rhs) < 1e-12);
    }
}

#[test]
fn alpha_group_instance() {
    let a = AlphaGroupSpace { character: DiagonalCharacter { lambdas: vec![1.0, 0.5, -0.7], parities: vec![true, false, true] } };
    assert_pass(&verify_reflection_axioms(&a, sample_gl(3), Some(&near_pairs_gl(3)), &CFG));
    assert_pass(&verify_dilation_axioms(&a, sample_gl(3), &CFG));
}

#[test]
fn vector_and_hom_dil_instances() {
    let v = VectorDilationSpace { character: DiagonalCharacter { lambdas: vec![1.0, 2.0, 0.5], parities: vec![true, false, true] } };
    assert_pass(&verify_reflection_axioms(&v, sample_vector(3), None, &CFG));
    assert_pass(&verify_dilation_axioms(&v, sample_vector(3), &CFG));
    let h = HomDilSpace { n: 3, lambda: 1.5 };
    assert_pass(&verify_reflection_axioms(&h, sample_vector(3), None, &CFG));
    assert_pass(&verify_dilation_axioms(&h, sample_vector(3), &CFG));
}

#[test]
fn broken_reflection_law_fails_s1() {
    let r = verify_reflection_axioms(&DifferenceLine, sample_real, None, &CFG);
    show(&r);
    assert!(!r.pass);
    assert!(r.law_residual("S1").unwrap() > 0.1);
}

#[test]
fn broken_dilation_law_fails_d2() {
    let r = verify_dilation_axioms(&AdditiveDilationLine, sample_real, &CFG);
    show(&r);
    assert!(!r.pass);
    assert!(r.law_residual("D2").unwrap() > 0.1);
}

#[test]
fn missing_dilation_is_reported() {
    let r = verify_dilation_axioms(&GroupSpace { n: 2 }, sample_gl(2), &CFG);
    assert!(!r.pass);
}

#[test]
fn isotropic_samples_are_recorded() {
    let b = BilinearSpace::lorentz3();
    let sampler = |rng: &mut sampling::SeededRng| {
        let v = b.sampler()(rng);
        if rand::Rng::gen_bool(rng, 0.1) {
            RVec::from_vec(vec![1.0, 0.6, 0.8])
        } else {
            v
        }
    };
    let r = verify_reflection_axioms(&b, sampler, None, &SampleConfig { n_samples: 200, ..CFG });
    assert!(r.precondition_violations > 0);
    assert!(!r.pass);
}

#[test]
fn group_powers_match_repeated_products() {
    let g = GroupSpace { n: 3 };
    let mut rng = sampling::rng(3);
    let x = sample_gl(3)(&mut rng);
    let e = RMat::identity(3, 3);
    let xinv = x.clone().try_inverse().unwrap();
    let mut oracle = e.clone();
    for n in 0..=6 {
        assert!(g.distance(&power(&g, &e, &x, n).unwrap(), &oracle) < 1e-12, "n = {n}");
        oracle = &oracle * &x;
    }
    let mut oracle = e.clone();
    for n in 0..=6 {
        assert!(g.distance(&power(&g, &e, &x, -n).unwrap(), &oracle) < 1e-12, "n = -{n}");
        oracle = &oracle * &xinv;
    }
    assert_eq!(power(&g, &e, &x, 0).unwrap(), e);
}

#[test]
fn quotient_map_preserves_powers() {
    let twisted = TwistedGroupSpace { n: 3 };
    let pos = PositiveSpace { n: 3 };
    let mut rng = sampling::rng(17);
    for _ in 0..50 {
        let (e, x) = near_pairs_gl(3)(&mut rng);
        let (qe, qx) = (PositiveSpace::quotient(&e), PositiveSpace::quotient(&x));
        for n in -4..=4 {
            let lhs = PositiveSpace::quotient(&power(&twisted, &e, &x, n).unwrap());
            let rhs = power(&pos, &qe, &qx, n).unwrap();
            assert!(pos.distance(&lhs, &rhs) < 1e-9, "n = {n}");
        }
    }
}

#[test]
fn fixed_points_of_group_symmetry() {
    let g = GroupSpace { n: 2 };
    let mut rng = sampling::rng(9);
    let ys: Vec<RMat> = (0..200).map(|_| sample_gl(2)(&mut rng)).collect();
    let e = RMat::identity(2, 2);
    // fixed points of h ↦ h⁻¹ are the involutions; a random sample contains none
    assert_eq!(fixed_point_count(&g, &e, &ys, POINT_EQ), 0);
    assert_eq!(fixed_point_count(&g, &e, &[e.clone()], POINT_EQ), 1);
}

fn ts() -> Vec<f64> {
    vec![-1.5, -0.7, 0.0, 0.4, 1.1, 2.0]
}

#[test]
fn one_parameter_geodesics() {
    let g = GroupSpace { n: 2 };
    let x = RMat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let offset = RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let geo = geodesic_from_one_param(&x, &offset);
    let r = verify_geodesic(&g, &geo, &ts(), 1e-12, None);
    assert_pass(&r);
    // closed form [[1, t], [0, 1]]·g
    let at = geo.eval(0.8);
    assert!((at - RMat::from_row_slice(2, 2, &[1.0, -0.8, 0.0, -1.0])).norm() < 1e-14);

    let constant = geodesic_from_one_param(&RMat::zeros(2, 2), &offset);
    assert_eq!(constant.eval(3.0), offset);
    let through_e = geodesic_from_one_param(&x, &RMat::identity(2, 2));
    assert!((through_e.eval(0.5) * through_e.eval(0.25) - through_e.eval(0.75)).norm() < 1e-14);

    let mut rng = sampling::rng(23);
    let gen = sampling::uniform_real(&mut rng, 3, 3, 0.5);
    let geo = geodesic_from_one_param(&gen, &sample_gl(3)(&mut rng));
    assert_pass(&verify_geodesic(&GroupSpace { n: 3 }, &geo, &ts(), AXIOM, None));
}

#[test]
fn involution_valued_geodesic() {
    // g = diag(1, −1) inverts exp(tX) for X = [[0, 1], [0, 0]]: g X g = −X
    let x = RMat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let g = RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let geo = geodesic_from_one_param(&x, &g);
    for t in ts() {
        let p = geo.eval(t);
        assert!((&p * &p - RMat::identity(2, 2)).norm() < 1e-13);
    }
}

#[test]
fn quadratic_reparametrisation_is_not_a_geodesic() {
    let x = RMat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
    let geo = Geodesic::new(move |t: f64| (&x * (t * t)).exp());
    let r = verify_geodesic(&GroupSpace { n: 2 }, &geo, &[1.0, 0.0], 1e-10, None);
    assert!(!r.pass);
}

#[test]
fn affine_line_dilation_criterion() {
    let space = VectorDilationSpace { character: DiagonalCharacter { lambdas: vec![1.0, 2.0], parities: vec![true, true] } };
    let crit = DilationCriterion { lambda: 1.0, rs: vec![0.5, 2.0, 3.0] };
    // v in the λ = 1 eigenspace passes, v outside fails
    let v = RVec::from_vec(vec![1.0, 0.0]);
    let geo = Geodesic::new(move |t: f64| &v * t);
    assert_pass(&verify_geodesic(&space, &geo, &ts(), AXIOM, Some(&crit)));
    let w = RVec::from_vec(vec![1.0, 1.0]);
    let geo = Geodesic::new(move |t: f64| &w * t);
    let r = verify_geodesic(&space, &geo, &ts(), AXIOM, Some(&crit));
    assert!(r.law_residual("morphism").unwrap() < AXIOM);
    assert!(!r.pass);
}
