use std::f64::consts::{E, PI};

use proptest::prelude::*;
use standard_subspaces::antilinear::{AuOperator, Conjugation};
use standard_subspaces::bgl::*;
use standard_subspaces::geometry::{hom_bullet, sample_graded_hom, stand_bullet};
use standard_subspaces::linalg::{c64, kron, CMat};
use standard_subspaces::sampling::{self, SeededRng};
use standard_subspaces::standard::{subspace_gap, symplectic_complement, GradedHom, StandardSubspace};
use standard_subspaces::Error;

fn diag_hom(a: f64) -> GradedHom {
    let x = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(0.0, a), c64(0.0, -a)]));
    GradedHom::new(x, Conjugation::flip(2)).unwrap()
}

fn random_au(rng: &mut SeededRng, n: usize, odd: bool) -> AuOperator {
    AuOperator { m: sampling::unitary(rng, n), odd }
}

fn reps(m: usize, rng: &mut SeededRng) -> Vec<AuRep> {
    vec![
        AuRep::Defining { m },
        AuRep::DirectSum { m, copies: 2 },
        AuRep::Tensor { m },
        AuRep::Twisted { w: sampling::unitary(rng, m) },
    ]
}

#[test]
fn flip_example() {
    let rep = AuRep::Defining { m: 2 };
    let a: f64 = 0.3;
    let v = bgl_map(&rep, &diag_hom(a)).unwrap();
    let s = (PI * a).exp();
    let oracle = StandardSubspace::new(&CMat::from_row_slice(2, 2, &[c64(s, 0.0), c64(0.0, -s), c64(1.0, 0.0), c64(0.0, 1.0)])).unwrap();
    assert!(subspace_gap(&v, &oracle) < 1e-12);
    let delta = standard_subspaces::standard::modular_objects(&v).unwrap();
    assert!((delta.delta()[(0, 0)].re - (-2.0 * PI * a).exp()).abs() < 1e-10);
    assert!((delta.delta()[(1, 1)].re - (2.0 * PI * a).exp()).abs() < 1e-10);
}

#[test]
fn trivial_one_parameter_part_gives_fixed_space() {
    let rep = AuRep::Defining { m: 2 };
    let v = bgl_map(&rep, &diag_hom(0.0)).unwrap();
    assert!(subspace_gap(&v, &StandardSubspace::fixed_space(&Conjugation::flip(2))) < 1e-12);
    let real = GradedHom::new(CMat::zeros(2, 2), Conjugation::standard(2)).unwrap();
    assert!(subspace_gap(&bgl_map(&rep, &real).unwrap(), &StandardSubspace::real_form(2)) < 1e-12);
}

#[test]
fn differential_matches_closed_forms() {
    let mut rng = sampling::rng(31);
    for scale in [0.2, 3.0, 40.0] {
        let g = sample_graded_hom(3)(&mut rng);
        let x = g.generator() * c64(scale, 0.0);
        let id = CMat::identity(3, 3);
        let ds = AuRep::DirectSum { m: 3, copies: 2 }.differential(&x).unwrap();
        let mut oracle = CMat::zeros(6, 6);
        oracle.view_mut((0, 0), (3, 3)).copy_from(&x);
        oracle.view_mut((3, 3), (3, 3)).copy_from(&x);
        assert!((ds - oracle).norm() < 1e-10 * scale.max(1.0));
        let t = AuRep::Tensor { m: 3 }.differential(&x).unwrap();
        assert!((t - (kron(&x, &id) + kron(&id, &x))).norm() < 1e-10 * scale.max(1.0));
        let w = sampling::unitary(&mut rng, 3);
        let tw = AuRep::Twisted { w: w.clone() }.differential(&x).unwrap();
        assert!((tw - &w * &x * w.adjoint()).norm() < 1e-10 * scale.max(1.0));
    }
}

#[test]
fn representations_are_graded_homomorphisms() {
    let mut rng = sampling::rng(32);
    for rep in reps(3, &mut rng) {
        let pairs: Vec<_> = (0..20)
            .map(|k| (random_au(&mut rng, 3, k % 2 == 0), random_au(&mut rng, 3, k % 3 == 0)))
            .collect();
        assert!(rep.homomorphism_residual(&pairs).unwrap() < 1e-12);
        for (g, _) in &pairs {
            assert_eq!(rep.image(g).unwrap().grading(), g.grading());
        }
    }
}

#[test]
fn equivariance_over_random_conjugators() {
    let mut rng = sampling::rng(33);
    for m in [2, 3, 6] {
        let gamma = sample_graded_hom(m)(&mut rng);
        let conj: Vec<_> = (0..100).map(|k| random_au(&mut rng, m, k % 2 == 1)).collect();
        let rep = AuRep::Defining { m };
        let report = bgl_equivariance_check(&rep, &gamma, &conj, 1e-8).unwrap();
        assert!(report.pass, "{report:?}");
    }
    for rep in reps(2, &mut rng) {
        let gamma = sample_graded_hom(2)(&mut rng);
        let conj: Vec<_> = (0..20).map(|k| random_au(&mut rng, 2, k % 2 == 1)).collect();
        let report = bgl_equivariance_check(&rep, &gamma, &conj, 1e-8).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

#[test]
fn odd_conjugators_map_to_the_complement() {
    let mut rng = sampling::rng(38);
    let gamma = sample_graded_hom(3)(&mut rng);
    let rep = AuRep::Defining { m: 3 };
    let v = bgl_map(&rep, &gamma).unwrap();
    let j = AuOperator::from_conjugation(gamma.j());
    // gamma^J = gamma, while J V = V'
    assert!(subspace_gap(&bgl_map(&rep, &conjugate_hom(&gamma, &j).unwrap()).unwrap(), &v) < 1e-10);
    let jv = v.transform(&j).unwrap();
    assert!(subspace_gap(&jv, &symplectic_complement(&v).unwrap()) < 1e-10);
    assert!(subspace_gap(&jv, &v) > 1e-2);
}

#[test]
fn dilations_stabilize_the_image() {
    let mut rng = sampling::rng(34);
    let gamma = sample_graded_hom(3)(&mut rng);
    let rep = AuRep::Tensor { m: 3 };
    let v = bgl_map(&rep, &gamma).unwrap();
    for r in [E, -1.0, 0.4, -2.2] {
        let g = gamma.eval(r);
        assert!(subspace_gap(&bgl_map(&rep, &conjugate_hom(&gamma, &g).unwrap()).unwrap(), &v) < 1e-8);
        let report = bgl_equivariance_check(&rep, &gamma, &[g], 1e-8).unwrap();
        assert!(report.pass, "{report:?}");
    }
}

#[test]
fn bgl_intertwines_dilation_actions() {
    let mut rng = sampling::rng(35);
    for rep in reps(3, &mut rng) {
        let g1 = sample_graded_hom(3)(&mut rng);
        let g2 = sample_graded_hom(3)(&mut rng);
        let (v1, v2) = (bgl_map(&rep, &g1).unwrap(), bgl_map(&rep, &g2).unwrap());
        for r in [-1.0, E, 1.0 / E] {
            let lhs = bgl_map(&rep, &hom_bullet(&g1, r, &g2).unwrap()).unwrap();
            let rhs = stand_bullet(&v1, r, &v2).unwrap();
            assert!(subspace_gap(&lhs, &rhs) < 1e-8);
        }
    }
}

#[test]
fn semigroup_membership_examples() {
    let mut rng = sampling::rng(36);
    let gamma = sample_graded_hom(3)(&mut rng);
    for rep in reps(3, &mut rng) {
        let v = bgl_map(&rep, &gamma).unwrap();
        assert!(semigroup_membership(&rep, &AuOperator::identity(3), &v, 1e-8).unwrap());
        assert!(semigroup_membership(&rep, &gamma.eval(E), &v, 1e-8).unwrap());
        let g = random_au(&mut rng, 3, false);
        assert!(subspace_gap(&v.transform(&rep.image(&g).unwrap()).unwrap(), &v) > 1e-2);
        assert!(!semigroup_membership(&rep, &g, &v, 1e-8).unwrap());
        assert_eq!(semigroup_membership(&rep, &gamma.eval(-1.0), &v, 1e-8), Err(Error::NotInG1));
    }
}

#[test]
fn semigroup_meets_inverse_in_stabilizer() {
    let mut rng = sampling::rng(37);
    let gamma = sample_graded_hom(3)(&mut rng);
    let rep = AuRep::DirectSum { m: 3, copies: 2 };
    let v = bgl_map(&rep, &gamma).unwrap();
    let (mut stab, mut other) = (0, 0);
    for k in 0..60 {
        let g = match k % 3 {
            0 => gamma.eval(sampling::log_uniform(&mut rng, 0.1, 10.0)),
            1 => gamma.eval(-1.0).compose(&gamma.eval(-2.0)),
            _ => random_au(&mut rng, 3, false),
        };
        let both = semigroup_membership(&rep, &g, &v, 1e-8).unwrap() && semigroup_membership(&rep, &g.inverse(), &v, 1e-8).unwrap();
        let stabilizes = subspace_gap(&v.transform(&rep.image(&g).unwrap()).unwrap(), &v) <= 1e-8;
        assert_eq!(both, stabilizes);
        if stabilizes { stab += 1 } else { other += 1 }
    }
    assert!(stab == 40 && other == 20);
}

#[test]
fn inconsistent_rep_is_rejected() {
    let rep = AuRep::Twisted { w: CMat::from_diagonal_element(2, 2, c64(2.0, 0.0)) };
    assert!(matches!(bgl_map(&rep, &diag_hom(0.3)), Err(Error::ModularRelationViolated { .. })));
}

#[test]
fn positive_energy_predicate() {
    let rep = AuRep::Tensor { m: 2 };
    let x = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(0.0, 1.0), c64(0.0, 2.0)]));
    assert!(positive_energy(&rep, &x, 1e-10).unwrap());
    assert!(!positive_energy(&rep, &(-&x), 1e-10).unwrap());
    let mixed = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(0.0, 1.0), c64(0.0, -2.0)]));
    assert!(!positive_energy(&AuRep::Defining { m: 2 }, &mixed, 1e-10).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn equivariance_property(seed in any::<u64>(), m in 2usize..5, odd in any::<bool>()) {
        let mut rng = sampling::rng(seed);
        let gamma = sample_graded_hom(m)(&mut rng);
        let g = random_au(&mut rng, m, odd);
        let rep = AuRep::DirectSum { m, copies: 2 };
        let report = bgl_equivariance_check(&rep, &gamma, &[g], 1e-8).unwrap();
        prop_assert!(report.pass);
    }
}
