//! Seeded random inputs for property checks in tests and scenarios.

use std::sync::Arc;

use rand::Rng;

use crate::comparison::ParamSimplex;
use crate::derham::{AlgebraicForm, FpAlgebra};
use crate::exterior::{Form, IndexSet};
use crate::poly::{Monomial, Polynomial, RationalFunction};
use crate::simplex_forms::PolyForm;
use crate::simplicial::{Cochain, DeltaMorphism, FiniteSimplicialSet};
use crate::Rational;

/// Up to three terms of degree at most `max_deg` with small rational coefficients.
pub fn random_poly(n: usize, max_deg: u32, rng: &mut impl Rng) -> Polynomial {
    let mut c = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..4) {
        let d = if n == 0 {
            0
        } else {
            rng.gen_range(0..=max_deg)
        };
        let monos = Monomial::all_of_degree(n, d);
        c.add_term(
            monos[rng.gen_range(0..monos.len())].clone(),
            Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into()),
        );
    }
    c
}

/// A polynomial `p`-form on `Δ^n`.
pub fn random_form(n: usize, p: usize, max_deg: u32, rng: &mut impl Rng) -> PolyForm {
    let mut f = Form::zero(n);
    for s in IndexSet::all_of_size(n, p) {
        f.add_term(s, RationalFunction::from_poly(random_poly(n, max_deg, rng)));
    }
    PolyForm::from_form(f, p).expect("homogeneous")
}

/// A weakly increasing map `[m] → [n]`.
pub fn random_morphism(m: usize, n: usize, rng: &mut impl Rng) -> DeltaMorphism {
    let mut v: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=n)).collect();
    v.sort_unstable();
    DeltaMorphism::new(n, v).expect("weakly increasing")
}

/// A `p`-form over `alg` with integer coefficients of degree at most 2.
pub fn random_algebraic_form(alg: &Arc<FpAlgebra>, p: usize, rng: &mut impl Rng) -> AlgebraicForm {
    let m = alg.nvars();
    let monos = Monomial::all_up_to_degree(m, 2);
    let mut raw = Form::zero(m);
    for s in IndexSet::all_of_size(m, p) {
        let mut c = Polynomial::zero(m);
        for _ in 0..rng.gen_range(1..3) {
            c.add_term(
                monos[rng.gen_range(0..monos.len())].clone(),
                Rational::from_integer(rng.gen_range(-3..=3).into()),
            );
        }
        raw.add_term(s, c);
    }
    if raw.is_zero() {
        return AlgebraicForm::zero(alg, p);
    }
    AlgebraicForm::from_raw(alg, &raw).expect("homogeneous")
}

/// A polynomial simplex `Δ^n → A^m` for an algebra without relations.
pub fn random_polynomial_simplex(
    alg: &Arc<FpAlgebra>,
    n: usize,
    rng: &mut impl Rng,
) -> ParamSimplex {
    let comps = (0..alg.nvars())
        .map(|_| RationalFunction::from_poly(random_poly(n, 2, rng)))
        .collect();
    ParamSimplex::new("random", alg, n, comps).expect("free algebras accept every polynomial map")
}

/// A normalized cochain with small integer values on the nondegenerate simplices.
pub fn random_cochain(complex: &Arc<FiniteSimplicialSet>, p: usize, rng: &mut impl Rng) -> Cochain {
    let v: Vec<Rational> = (0..complex.count(p))
        .map(|_| Rational::from_integer(rng.gen_range(-4..=4).into()))
        .collect();
    Cochain::from_nondegenerate_vector(complex, p, &v)
}
