//! The cone contraction to vertex 0 and extension of forms from the boundary of a simplex.

use super::{barycentric, pullback_delta, FormsError, FormsFamily, PolyForm};
use crate::exterior::Form;
use crate::poly::{Monomial, Polynomial, RationalFunction};
use crate::simplicial::{DeltaMorphism, FiniteSimplicialSet};
use crate::Rational;

fn polynomial_coefficient(
    alpha: &PolyForm,
    c: &RationalFunction,
) -> Result<Polynomial, FormsError> {
    let names = super::coordinate_names(alpha.n());
    c.simplified()
        .as_polynomial()
        .cloned()
        .ok_or_else(|| FormsError::NonPolynomialCoefficient(c.display_with(&names).to_string()))
}

/// `κ(t^a dt_I) = 1/(|a| + p) Σ_j (-1)^(j-1) t^a t_{i_j} dt_{I∖i_j}`, and `κ = 0` on functions.
///
/// On polynomial forms `dκ + κd = id - ε∘ev_0`.
pub fn poincare_homotopy(alpha: &PolyForm) -> Result<PolyForm, FormsError> {
    let n = alpha.n();
    if alpha.degree() == 0 {
        for c in alpha.form().terms().values() {
            polynomial_coefficient(alpha, c)?;
        }
        return Ok(PolyForm::zero(n, 0));
    }
    let p = alpha.degree() as u32;
    let mut out = Form::zero(n);
    for (s, c) in alpha.form().terms() {
        let poly = polynomial_coefficient(alpha, c)?;
        for (m, x) in poly.terms() {
            let factor = x / Rational::from_integer((m.degree() + p).into());
            for (j, i) in s.indices().into_iter().enumerate() {
                let mut e = m.exponents().to_vec();
                e[i] += 1;
                let coeff = if j % 2 == 0 {
                    factor.clone()
                } else {
                    -factor.clone()
                };
                let term = Polynomial::monomial(Monomial::from_exponents(e), coeff);
                out.add_term(s.remove(i), RationalFunction::from_poly(term));
            }
        }
    }
    PolyForm::from_form(out, alpha.degree() - 1)
}

/// Extends a face-compatible family of polynomial forms on `∂Δ[n]` to `Δ^n`.
///
/// Faces are handled in the order `∂_0, …, ∂_n`. At face `k` the current defect
/// `γ = φ_k - α|_{F_k}` vanishes on the faces already treated, and it is extended by
/// `(1 - u_k)^M π_k^* γ`, where `π_k` is the radial projection from vertex `k` onto the
/// opposite face and `M = deg γ + q + 1` clears the denominators of `π_k^*`.
pub fn extend_from_boundary(family: &FormsFamily) -> Result<PolyForm, FormsError> {
    let complex = family.complex();
    let n = complex.dimension().map(|d| d + 1).unwrap_or(0);
    if n == 0 || **complex != FiniteSimplicialSet::boundary_complex(n) {
        return Err(FormsError::IncompatibleFamily(
            "extension needs a family on the boundary of a simplex".into(),
        ));
    }
    let q = family.degree();
    let mut alpha = PolyForm::zero(n, q);
    for k in 0..=n {
        let face = DeltaMorphism::face(n, k);
        let target = family
            .form_on(face.values())
            .expect("facets of the boundary are simplices");
        let gamma = target.sub(&pullback_delta(&face, &alpha)?)?;
        if gamma.is_zero() {
            continue;
        }
        let mut degree = 0;
        for c in gamma.form().terms().values() {
            degree = degree.max(
                polynomial_coefficient(&gamma, c)?
                    .total_degree()
                    .unwrap_or(0),
            );
        }
        let m = degree + q as u32 + 1;
        let radius = &Polynomial::one(n) - &barycentric(n, k);
        let radius_rf = RationalFunction::from_poly(radius.clone());
        let images: Vec<RationalFunction> = (1..n)
            .map(|i| {
                let j = face.apply(i);
                RationalFunction::from_poly(barycentric(n, j))
                    .div(&radius_rf)
                    .expect("1 - u_k is not zero")
            })
            .collect();
        let projected = gamma.pullback_by(n, &images);
        let cone = RationalFunction::from_poly(radius.pow(m));
        let mut ext = Form::zero(n);
        for (s, c) in projected.form().terms() {
            let v = c.mul(&cone).simplified();
            assert!(
                v.is_polynomial(),
                "cone factor clears the projection denominators"
            );
            ext.add_term(*s, v);
        }
        alpha = alpha.add(&PolyForm::from_form(ext, q)?)?;
    }
    debug_assert!((0..=n).all(|k| {
        let face = DeltaMorphism::face(n, k);
        pullback_delta(&face, &alpha).ok().as_ref() == family.form_on(face.values())
    }));
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn homotopy_examples() {
        let k = poincare_homotopy(&PolyForm::parse(1, "dt").unwrap()).unwrap();
        assert_eq!(k, PolyForm::parse(1, "t").unwrap());
        assert!(
            poincare_homotopy(&PolyForm::constant(2, Rational::from_integer(3.into())))
                .unwrap()
                .is_zero()
        );
        assert!(matches!(
            poincare_homotopy(&PolyForm::parse(1, "1/(1 + t)*dt").unwrap()),
            Err(FormsError::NonPolynomialCoefficient(_))
        ));
    }

    #[test]
    fn homotopy_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let p = rng.gen_range(0..=n);
            let a = random_form(n, p, 6, &mut rng);
            let lhs = poincare_homotopy(&a)
                .unwrap()
                .differential()
                .add(&poincare_homotopy(&a.differential()).unwrap());
            let mut rhs = a.clone();
            if p == 0 {
                let v0 = a.value_at_vertex(0).unwrap();
                rhs = rhs.sub(&PolyForm::constant(n, v0)).unwrap();
            }
            let lhs = lhs.unwrap();
            assert!(lhs.sub(&rhs).unwrap().simplified().is_zero(), "{a}");
        }
    }

    #[test]
    fn interval_extension_is_affine_interpolation() {
        let k = Arc::new(FiniteSimplicialSet::boundary_complex(1));
        let a = Rational::from_integer(2.into());
        let b = Rational::from_integer((-5).into());
        let fam = FormsFamily::from_fn(&k, 0, |s| {
            PolyForm::constant(0, if s[0] == 0 { a.clone() } else { b.clone() })
        })
        .unwrap();
        let ext = extend_from_boundary(&fam).unwrap();
        assert_eq!(ext, PolyForm::parse(1, "(1 - t)*2 + t*(-5)").unwrap());
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for n in [2usize, 3] {
            let k = Arc::new(FiniteSimplicialSet::boundary_complex(n));
            for _ in 0..20 {
                let q = rng.gen_range(0..n);
                let global = random_form(n, q, 3, &mut rng);
                let fam = FormsFamily::restriction_of(&global, &k).unwrap();
                let ext = extend_from_boundary(&fam).unwrap();
                assert_eq!(FormsFamily::restriction_of(&ext, &k).unwrap(), fam);
            }
            let zero = FormsFamily::restriction_of(&PolyForm::zero(n, 1), &k).unwrap();
            assert!(extend_from_boundary(&zero).unwrap().is_zero());
        }
    }
}
