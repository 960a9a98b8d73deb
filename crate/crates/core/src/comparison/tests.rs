use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fixtures::*;
use super::*;
use crate::poly::Monomial;
use crate::random::{random_algebraic_form, random_morphism, random_polynomial_simplex};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn opts() -> QuadratureOptions {
    QuadratureOptions::default()
}

fn form(alg: &Arc<FpAlgebra>, s: &str) -> AlgebraicForm {
    AlgebraicForm::parse(alg, s).unwrap()
}

#[test]
fn validation() {
    let c = circle();
    assert!(ParamSimplex::constant(&c, 0, &[q(1), q(0)]).is_ok());
    let arc = ParamSimplex::parse("arc", &c, 1, &["(1 - t^2)/(1 + t^2)", "2*t/(1 + t^2)"]).unwrap();
    assert_eq!(arc, circle_arc(&c, 0).unwrap());
    assert_eq!(arc.lane(), Lane::Numeric);
    match ParamSimplex::parse("diag", &c, 1, &["t", "t"]) {
        Err(ComparisonError::InvalidSimplex { residual, .. }) => assert_eq!(residual, "2*t^2 - 1"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        ParamSimplex::parse("pole", &c, 1, &["1/t", "0"]),
        Err(ComparisonError::DenominatorVanishes { .. })
    ));
    let raw = ParamSimplex {
        n: 1,
        target: c.clone(),
        components: vec![parameter_fn(), parameter_fn()],
    };
    let v = validate_simplex(&raw).unwrap_err();
    assert_eq!(
        v.residual,
        Polynomial::from_terms(
            1,
            [
                (Monomial::from_exponents(vec![2]), q(2)),
                (Monomial::one(1), q(-1))
            ]
        )
    );
}

fn parameter_fn() -> RationalFunction {
    RationalFunction::from_poly(Polynomial::variable(1, 0))
}

#[test]
fn mu_examples() {
    let c = circle();
    let point = ParamSimplex::constant(&c, 1, &[q(1), q(0)]).unwrap();
    assert!(mu(&point, &form(&c, "x*dy - y*dx")).unwrap().is_zero());
    let arc = circle_arc(&c, 0).unwrap();
    let m = mu(&arc, &form(&c, "x*dy - y*dx")).unwrap();
    assert_eq!(m, PolyForm::parse(1, "2/(1 + t^2)*dt").unwrap());
    // the relation itself pulls back to zero
    assert!(mu(&arc, &form(&c, "x*dx + y*dy")).unwrap().is_zero());
    assert!(matches!(
        mu(&arc, &form(&plane(), "dx")),
        Err(ComparisonError::AlgebraMismatch)
    ));
}

#[test]
fn mu_is_a_dg_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = plane();
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let sigma = random_polynomial_simplex(&alg, n, &mut rng);
        let p = rng.gen_range(0..=1);
        let w = random_algebraic_form(&alg, p, &mut rng);
        let v = random_algebraic_form(&alg, rng.gen_range(0..=1), &mut rng);
        let d_then_mu = mu(&sigma, &w.differential()).unwrap();
        let mu_then_d = mu(&sigma, &w).unwrap().differential();
        assert!(d_then_mu.sub(&mu_then_d).unwrap().simplified().is_zero());
        let wedge_then_mu = mu(&sigma, &w.wedge(&v).unwrap()).unwrap();
        let mu_then_wedge = mu(&sigma, &w)
            .unwrap()
            .wedge(&mu(&sigma, &v).unwrap())
            .unwrap();
        assert!(wedge_then_mu
            .sub(&mu_then_wedge)
            .unwrap()
            .simplified()
            .is_zero());
    }
}

#[test]
fn xi_examples() {
    let c = circle();
    let vertex = ParamSimplex::constant(&c, 0, &[q(0), q(-1)]).unwrap();
    assert_eq!(
        xi(&AlgebraicForm::one(&c), &vertex, &opts()).unwrap(),
        Scalar::from_int(1)
    );
    let arc = circle_arc(&c, 0).unwrap();
    let w = form(&c, "x*dy - y*dx");
    let v = xi(&w, &arc, &opts()).unwrap();
    assert!((v.value() - PI / 2.0).abs() < 1e-12, "{v}");
    assert!(v.error() < 1e-10);
    let via_tau = xi_via_tau(&w, &arc, &opts()).unwrap();
    assert!((via_tau.value() - v.value()).abs() <= v.error() + via_tau.error());

    let b = two_points();
    let plus = form(&b, "(1 + x)/2");
    let at = |x: i64| ParamSimplex::constant(&b, 0, &[q(x)]).unwrap();
    assert_eq!(xi(&plus, &at(1), &opts()).unwrap(), Scalar::from_int(1));
    assert_eq!(xi(&plus, &at(-1), &opts()).unwrap(), Scalar::zero());
}

#[test]
fn xi_matches_tau_route_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let alg = plane();
    for _ in 0..20 {
        let p = rng.gen_range(0..=2);
        let sigma = random_polynomial_simplex(&alg, p, &mut rng);
        let w = random_algebraic_form(&alg, p, &mut rng);
        assert_eq!(
            xi(&w, &sigma, &opts()).unwrap(),
            xi_via_tau(&w, &sigma, &opts()).unwrap()
        );
    }
}

#[test]
fn families_close_under_faces() {
    let c = circle();
    let mut fam = SingularFamily::new(&c);
    let z = circle_loop(&mut fam).unwrap();
    // four arcs and four shared endpoints
    assert_eq!(fam.len(), 8);
    assert!(fam.check_face_table());
    assert!(z.is_cycle(&fam));
    let single = SingularChain::from_names(&fam, 1, &[("arc0", 1)]).unwrap();
    assert!(!single.is_cycle(&fam));
    assert!(matches!(
        SingularChain::from_names(&fam, 1, &[("nope", 1)]),
        Err(ComparisonError::UnknownSimplex(_))
    ));

    let mut tf = SingularFamily::new(&torus());
    let tz = torus_cycle(&mut tf).unwrap();
    assert_eq!(tz.terms().len(), 32);
    assert!(tz.is_cycle(&tf));
    assert_eq!(tf.simplices_of_dimension(0).len(), 16);
    assert_eq!(tf.simplices_of_dimension(1).len(), 48);
    assert!(tf.check_face_table());
}

#[test]
fn cup_laws_on_families() {
    let c = circle();
    let mut fam = SingularFamily::new(&c);
    circle_loop(&mut fam).unwrap();
    let a = xi_cochain(&form(&c, "x*dy - y*dx"), &fam, &opts()).unwrap();
    let one = FamilyCochain::one(&fam);
    let left = singular_aw_cup(&one, &a, &fam).unwrap();
    let right = singular_aw_cup(&a, &one, &fam).unwrap();
    for (k, v) in a.values() {
        assert_eq!(left.get(*k), Some(v));
        assert_eq!(right.get(*k), Some(v));
    }
    let x = xi_cochain(&form(&c, "x"), &fam, &opts()).unwrap();
    let y = xi_cochain(&form(&c, "y + 2"), &fam, &opts()).unwrap();
    let xy = singular_aw_cup(&x, &y, &fam).unwrap();
    for i in fam.simplices_of_dimension(0) {
        assert_eq!(
            xy.get(i).unwrap(),
            &x.get(i).unwrap().mul(y.get(i).unwrap())
        );
    }
    let partial = FamilyCochain::new(0, BTreeMap::new());
    assert!(matches!(
        singular_aw_cup(&partial, &a, &fam),
        Err(ComparisonError::FamilyNotClosed(_))
    ));
}

#[test]
fn cup_leibniz_numeric() {
    let t = torus();
    let mut fam = SingularFamily::new(&t);
    torus_cycle(&mut fam).unwrap();
    let a = xi_cochain(&form(&t, "x*z + y"), &fam, &opts()).unwrap();
    let b = xi_cochain(&form(&t, "x*dy - y*dx + w*dz"), &fam, &opts()).unwrap();
    let lhs = singular_aw_cup(&a, &b, &fam)
        .unwrap()
        .coboundary(&fam)
        .unwrap();
    let rhs1 = singular_aw_cup(&a.coboundary(&fam).unwrap(), &b, &fam).unwrap();
    let rhs2 = singular_aw_cup(&a, &b.coboundary(&fam).unwrap(), &fam).unwrap();
    for idx in fam.simplices_of_dimension(2) {
        let r = lhs
            .get(idx)
            .unwrap()
            .sub(rhs1.get(idx).unwrap())
            .sub(rhs2.get(idx).unwrap());
        assert!(r.abs_value() < 1e-10, "{r}");
    }
}

#[test]
fn chain_map_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let alg = plane();
    for _ in 0..50 {
        let p = rng.gen_range(0..=1);
        let sigma = random_polynomial_simplex(&alg, p + 1, &mut rng);
        let w = random_algebraic_form(&alg, p, &mut rng);
        assert!(check_chain_map(&w, &sigma, &opts())
            .unwrap()
            .is_exact_zero());
    }
}

#[test]
fn chain_map_numeric() {
    let c = circle();
    let arc = circle_arc(&c, 0).unwrap();
    for text in ["x", "x*y + y^3"] {
        let r = check_chain_map(&form(&c, text), &arc, &opts()).unwrap();
        assert!(r.abs_value() < 1e-10, "{r}");
    }
    let b = check_chain_map(
        &form(&c, "x*dy - y*dx"),
        &ParamSimplex::constant(&c, 2, &[q(1), q(0)]).unwrap(),
        &opts(),
    )
    .unwrap();
    assert!(b.is_exact_zero());
}

#[test]
fn naturality() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let alg = plane();
    for _ in 0..30 {
        let n = rng.gen_range(0..=3);
        let m = rng.gen_range(0..=3);
        let sigma = random_polynomial_simplex(&alg, n, &mut rng);
        let h = random_morphism(m, n, &mut rng);
        let w = random_algebraic_form(&alg, rng.gen_range(0..=2), &mut rng);
        assert!(check_naturality(&sigma, &h, &w).unwrap().is_zero());
    }
    let c = circle();
    let arc = circle_arc(&c, 0).unwrap();
    let h = DeltaMorphism::new(1, vec![1]).unwrap();
    assert!(check_naturality(&arc, &h, &form(&c, "x*dy - y*dx"))
        .unwrap()
        .is_zero());
    assert!(
        check_naturality(&arc, &DeltaMorphism::identity(1), &form(&c, "x*dy - y*dx"))
            .unwrap()
            .is_zero()
    );
}

#[test]
fn multiplicativity_two_points() {
    let b = two_points();
    let mut fam = SingularFamily::new(&b);
    let p = fam
        .add("p", ParamSimplex::constant(&b, 0, &[q(1)]).unwrap())
        .unwrap();
    let m = fam
        .add("m", ParamSimplex::constant(&b, 0, &[q(-1)]).unwrap())
        .unwrap();
    let e = form(&b, "(1 + x)/2");
    let f = form(&b, "(1 - x)/2");
    for (w1, w2) in [(&e, &e), (&e, &f), (&f, &f)] {
        for idx in [p, m] {
            let mut z = SingularChain::zero(0);
            z.add_term(idx, 1);
            let r = check_multiplicativity(w1, w2, &fam, &z, &opts()).unwrap();
            assert!(r.residual.is_exact_zero());
        }
    }
}

#[test]
fn multiplicativity_circle_x_points() {
    let b = circle_x_points();
    let mut fam = SingularFamily::new(&b);
    let on = circle_x_points_loop(&mut fam, 1).unwrap();
    let off = circle_x_points_loop(&mut fam, 0).unwrap();
    let s = form(&b, "s");
    let w = form(&b, "x*dy - y*dx");
    let r1 = check_multiplicativity(&s, &w, &fam, &on, &opts()).unwrap();
    assert!((r1.lhs.value() - 2.0 * PI).abs() < 1e-8);
    assert!(r1.residual.abs_value() < 1e-8);
    let r0 = check_multiplicativity(&s, &w, &fam, &off, &opts()).unwrap();
    assert!(r0.lhs.abs_value() < 1e-8 && r0.residual.abs_value() < 1e-8);
    assert!(matches!(
        check_multiplicativity(&form(&b, "x"), &w, &fam, &on, &opts()),
        Err(ComparisonError::NotClosedForm(_))
    ));
}

#[test]
fn multiplicativity_torus() {
    let t = torus();
    let mut fam = SingularFamily::new(&t);
    let z = torus_cycle(&mut fam).unwrap();
    let r = check_multiplicativity(
        &form(&t, "x*dy - y*dx"),
        &form(&t, "z*dw - w*dz"),
        &fam,
        &z,
        &opts(),
    )
    .unwrap();
    assert!((r.lhs.value() - 4.0 * PI * PI).abs() < 1e-4, "{}", r.lhs);
    assert!(r.residual.abs_value() < 1e-6, "{}", r.residual);
}
