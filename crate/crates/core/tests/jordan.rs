use proptest::prelude::*;
use standard_subspaces::jordan::*;
use standard_subspaces::linalg::{c64, RMat};
use standard_subspaces::sampling;
use standard_subspaces::tolerances::JORDAN;
use standard_subspaces::Error;

fn algebras() -> [JordanAlgebra; 3] {
    [JordanAlgebra::sym(3), JordanAlgebra::herm(2), JordanAlgebra::spin(4)]
}

/// Worst residual of `f` over 1000 seeded samples of `k` random elements.
fn worst(a: &JordanAlgebra, seed: u64, f: impl Fn(&[JordanElement]) -> f64) -> f64 {
    let mut rng = sampling::rng(seed);
    (0..1000)
        .map(|_| {
            let xs: Vec<_> = (0..3).map(|_| a.random(&mut rng, 1.0)).collect();
            f(&xs)
        })
        .fold(0.0, f64::max)
}

#[test]
fn jordan_identity() {
    for a in algebras() {
        let r = worst(&a, 1, |xs| {
            let (x, y) = (&xs[0], &xs[1]);
            let x2 = a.square(x).unwrap();
            let lhs = a.jmul(x, &a.jmul(&x2, y).unwrap()).unwrap();
            let rhs = a.jmul(&x2, &a.jmul(x, y).unwrap()).unwrap();
            lhs.sub(&rhs).norm()
        });
        println!("{} Jordan identity {r:.3e}", a.kind);
        assert!(r <= JORDAN);
    }
}

#[test]
fn commutative_and_unital() {
    for a in algebras() {
        let e = a.unit();
        let r = worst(&a, 2, |xs| {
            let c = a.jmul(&xs[0], &xs[1]).unwrap().sub(&a.jmul(&xs[1], &xs[0]).unwrap()).norm();
            c.max(a.jmul(&xs[0], &e).unwrap().sub(&xs[0]).norm())
        });
        assert!(r <= 1e-14);
    }
}

#[test]
fn trace_form_is_positive_definite() {
    for a in algebras() {
        let g = a.trace_gram();
        // on an orthonormal basis: tr L(z) = (dim/rank)·tr z for matrix kinds, n·t on Λ_n
        let factor = match a.kind {
            JordanKind::Spin(n) => n as f64,
            _ => a.dim() as f64 / a.rank() as f64,
        };
        let expected = RMat::identity(a.dim(), a.dim()) * factor;
        assert!((&g - expected).norm() < 1e-12, "{}", a.kind);
        assert!(g.symmetric_eigen().eigenvalues.min() > 0.0);
        let mut rng = sampling::rng(3);
        let samples: Vec<_> = (0..1000).map(|_| a.random(&mut rng, 1.0)).collect();
        assert!(a.is_euclidean(&samples));
    }
}

#[test]
fn spin_trace_form_closed_form() {
    let a = JordanAlgebra::spin(4);
    let r = worst(&a, 4, |xs| {
        let (x, y) = (&xs[0], &xs[1]);
        let closed = 4.0 * x.coords.dot(&y.coords);
        (a.trace_form(x, y).unwrap() - closed).abs()
    });
    assert!(r <= 1e-12);
    assert!((a.trace_form(&a.unit(), &a.unit()).unwrap() - 4.0).abs() < 1e-15);
}

#[test]
fn lop_is_trace_form_symmetric() {
    for a in algebras() {
        let r = worst(&a, 5, |xs| {
            let lx = a.lop(&xs[0]).unwrap();
            let ly = a.apply(&lx, &xs[1]).unwrap();
            let lz = a.apply(&lx, &xs[2]).unwrap();
            (a.trace_form(&ly, &xs[2]).unwrap() - a.trace_form(&xs[1], &lz).unwrap()).abs()
        });
        assert!(r <= JORDAN);
    }
}

#[test]
fn quadratic_representation() {
    for a in algebras() {
        let e = a.unit();
        assert!((a.quad_p(&e).unwrap() - RMat::identity(a.dim(), a.dim())).norm() < 1e-14);
        let r = worst(&a, 6, |xs| {
            let pze = a.quad_p2(&xs[0], &e).unwrap();
            let sym = (a.quad_p2(&xs[0], &xs[1]).unwrap() - a.quad_p2(&xs[1], &xs[0]).unwrap()).norm();
            (pze - a.lop(&xs[0]).unwrap()).norm().max(sym)
        });
        println!("{} P(z, e) = L(z) {r:.3e}", a.kind);
        assert!(r <= JORDAN);
    }
}

#[test]
fn quadratic_representation_is_sandwich_for_matrices() {
    for a in [JordanAlgebra::sym(3), JordanAlgebra::herm(2)] {
        let r = worst(&a, 7, |xs| {
            let (x, y) = (&xs[0], &xs[1]);
            let pxy = a.apply(&a.quad_p(x).unwrap(), y).unwrap();
            let (mx, my) = (x.matrix().unwrap(), y.matrix().unwrap());
            (pxy.matrix().unwrap() - &mx * my * &mx).norm()
        });
        println!("{} P(x)y = xyx {r:.3e}", a.kind);
        assert!(r <= JORDAN);
    }
}

#[test]
fn power_associativity_shadow() {
    for a in algebras() {
        let r = worst(&a, 8, |xs| {
            let x = &xs[0];
            let x3 = a.jmul(x, &a.square(x).unwrap()).unwrap();
            a.apply(&a.quad_p(x).unwrap(), x).unwrap().sub(&x3).norm()
        });
        assert!(r <= JORDAN);
    }
}

#[test]
fn spin_inverse_formula() {
    let a = JordanAlgebra::spin(4);
    let mut rng = sampling::rng(9);
    let mut w: f64 = 0.0;
    let mut n = 0;
    while n < 1000 {
        let x = a.random(&mut rng, 1.0);
        let (t, v) = (x.coords[0], x.coords.rows(1, 3).into_owned());
        let d = t * t - v.norm_squared();
        if d.abs() < 0.05 {
            continue;
        }
        n += 1;
        let oracle = a.from_spin(t / d, &(-v / d).as_slice().to_vec()).unwrap();
        let inv = a.inverse(&x).unwrap();
        w = w.max(inv.sub(&oracle).norm() / oracle.norm().max(1.0));
        w = w.max(a.jmul(&x, &inv).unwrap().sub(&a.unit()).norm());
    }
    println!("spin inverse {w:.3e}");
    assert!(w <= JORDAN);
}

#[test]
fn inverse_two_ways() {
    for a in algebras() {
        let mut rng = sampling::rng(10);
        for _ in 0..200 {
            let spec: Vec<f64> = (0..a.rank()).map(|_| sampling::sign(&mut rng) * sampling::log_uniform(&mut rng, 0.2, 5.0)).collect();
            let x = a.with_spectrum(&mut rng, &spec);
            let i1 = a.inverse(&x).unwrap();
            let i2 = a.inverse_via_quadratic(&x).unwrap();
            assert!(i1.sub(&i2).norm() / i1.norm() < 1e-10);
            assert!(a.inverse(&i1).unwrap().sub(&x).norm() / x.norm() < 1e-10);
        }
        let e = a.unit();
        assert!(a.inverse(&e).unwrap().sub(&e).norm() < 1e-15);
        assert!(a.inverse(&e.scale(2.0)).unwrap().sub(&e.scale(0.5)).norm() < 1e-15);
    }
}

#[test]
fn singular_elements() {
    let a = JordanAlgebra::spin(2);
    let x = a.from_spin(1.0, &[1.0]).unwrap();
    assert!(matches!(a.inverse(&x), Err(Error::SingularElement)));
    assert!(matches!(a.inverse_via_quadratic(&x), Err(Error::SingularElement)));
    let s = JordanAlgebra::sym(2);
    let y = s.from_sym(&RMat::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0])).unwrap();
    assert!(matches!(s.inverse(&y), Err(Error::SingularElement)));
}

#[test]
fn spectra_and_cone() {
    let s = JordanAlgebra::sym(2);
    let d = s.from_sym(&RMat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0])).unwrap();
    assert!(s.in_cone(&d).unwrap());
    let a = JordanAlgebra::spin(3);
    let x = a.from_spin(1.0, &[2.0, 0.0]).unwrap();
    assert_eq!(a.spectrum(&x).unwrap(), vec![-1.0, 3.0]);
    assert!(!a.in_cone(&x).unwrap());
    let b = a.from_spin(1.0, &[1.0, 0.0]).unwrap();
    assert_eq!(a.spectrum(&b).unwrap(), vec![0.0, 2.0]);
    assert!(!a.in_cone(&b).unwrap());
    assert!((a.det(&x).unwrap() - (1.0 - 4.0)).abs() < 1e-15);
}

#[test]
fn squares_lie_in_the_cone() {
    for a in algebras() {
        let mut rng = sampling::rng(11);
        for _ in 0..1000 {
            let x = a.random(&mut rng, 1.0);
            if a.spectrum(&x).unwrap().iter().any(|l| l.abs() < 1e-3) {
                continue;
            }
            assert!(a.in_cone(&a.square(&x).unwrap()).unwrap());
        }
    }
}

#[test]
fn spectrum_sampler_matches() {
    for a in algebras() {
        let mut rng = sampling::rng(12);
        let spec: Vec<f64> = (0..a.rank()).map(|k| 0.5 + k as f64).collect();
        let x = a.with_spectrum(&mut rng, &spec);
        let got = a.spectrum(&x).unwrap();
        for (g, s) in got.iter().zip(&spec) {
            assert!((g - s).abs() < 1e-12);
        }
    }
}

#[test]
fn cayley_transform() {
    for a in algebras() {
        let e = a.unit();
        let ie = a.complexify(&e).scale(c64(0.0, 1.0));
        assert!(a.cayley(&ie).unwrap().norm() < 1e-14);
        let p0 = a.cayley(&a.complexify(&a.zero())).unwrap();
        assert!(p0.add(&a.complexify(&e)).norm() < 1e-14);
        assert!(matches!(a.cayley(&ie.scale(c64(-1.0, 0.0))), Err(Error::SingularElement)));
    }
    // E = R: p(1) = (1 − i)/(1 + i) = −i
    let r = JordanAlgebra::sym(1);
    let p1 = a_real(&r, 1.0);
    assert!((p1.coords[0] - c64(0.0, -1.0)).norm() < 1e-15);
}

fn a_real(r: &JordanAlgebra, x: f64) -> ComplexElement {
    r.cayley(&r.complexify(&r.unit().scale(x))).unwrap()
}

#[test]
fn mismatched_algebras() {
    let (a, b) = (JordanAlgebra::sym(2), JordanAlgebra::spin(3));
    assert!(matches!(a.jmul(&a.unit(), &b.unit()), Err(Error::AlgebraMismatch)));
    assert!(matches!(a.lop(&b.unit()), Err(Error::AlgebraMismatch)));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inverse_is_multiplicative_inverse(seed in any::<u64>(), which in 0usize..3) {
        let a = algebras()[which];
        let mut rng = sampling::rng(seed);
        let spec: Vec<f64> = (0..a.rank()).map(|_| sampling::sign(&mut rng) * sampling::log_uniform(&mut rng, 0.1, 10.0)).collect();
        let x = a.with_spectrum(&mut rng, &spec);
        let inv = a.inverse(&x).unwrap();
        prop_assert!(a.jmul(&x, &inv).unwrap().sub(&a.unit()).norm() < 1e-10);
    }

    #[test]
    fn quadratic_map_preserves_cone(seed in any::<u64>(), which in 0usize..3) {
        let a = algebras()[which];
        let mut rng = sampling::rng(seed);
        let spec: Vec<f64> = (0..a.rank()).map(|_| sampling::sign(&mut rng) * sampling::log_uniform(&mut rng, 0.1, 10.0)).collect();
        let x = a.with_spectrum(&mut rng, &spec);
        let pos: Vec<f64> = (0..a.rank()).map(|_| sampling::log_uniform(&mut rng, 0.1, 10.0)).collect();
        let y = a.with_spectrum(&mut rng, &pos);
        prop_assert!(a.in_cone(&a.apply(&a.quad_p(&x).unwrap(), &y).unwrap()).unwrap());
    }
}
