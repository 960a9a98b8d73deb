//! Integration of top-degree forms over `Δ^n`: exact for polynomial coefficients,
//! Gauss–Legendre with the Duffy collapse for rational ones.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{pullback_delta, FormsError, PolyForm, Scalar};
use crate::poly::{Monomial, Polynomial};
use crate::simplicial::{Cochain, DeltaMorphism, FiniteSimplicialSet};
use crate::Rational;

pub const DEFAULT_QUADRATURE_ORDER: usize = 16;
pub const DEFAULT_CERTIFICATE_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub order: usize,
    /// Largest power of `Σ u_i` tried by the denominator certificate.
    pub certificate_bound: u32,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            order: DEFAULT_QUADRATURE_ORDER,
            certificate_bound: DEFAULT_CERTIFICATE_BOUND,
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `∫_{Δ^n} t^a dt = Π a_i! / (n + |a|)!`.
pub fn monomial_integral(exponents: &[u32]) -> Rational {
    let n = exponents.len() as u32;
    let num = exponents
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * factorial(a));
    let total: u32 = exponents.iter().sum();
    Rational::new(num, factorial(n + total))
}

pub fn integrate_exact(alpha: &PolyForm) -> Result<Rational, FormsError> {
    let c = alpha.top_coefficient()?;
    let names = super::coordinate_names(alpha.n());
    let p =
        c.simplified().as_polynomial().cloned().ok_or_else(|| {
            FormsError::NonPolynomialCoefficient(c.display_with(&names).to_string())
        })?;
    Ok(p.terms()
        .map(|(m, x)| x * monomial_integral(m.exponents()))
        .sum())
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[0, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1);
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 1 { x } else { p1 };
            let pm1 = if order == 1 { 1.0 } else { p0 };
            dp = nf * (x * p - pm1) / (x * x - 1.0);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] to [0, 1]
        nodes[i] = (1.0 - x) / 2.0;
        nodes[order - 1 - i] = (1.0 + x) / 2.0;
        weights[i] = w / 2.0;
        weights[order - 1 - i] = w / 2.0;
    }
    (nodes, weights)
}

struct F64Poly(Vec<(f64, Vec<u32>)>);

impl F64Poly {
    fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(c, e)| {
                e.iter().zip(x).fold(
                    *c,
                    |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.powi(k as i32) },
                )
            })
            .sum()
    }
}

fn quadrature(num: &F64Poly, den: &F64Poly, n: usize, order: usize) -> (f64, f64) {
    let (nodes, weights) = gauss_legendre(order);
    let mut idx = vec![0usize; n];
    let mut s = vec![0.0; n];
    let mut t = vec![0.0; n];
    let (mut sum, mut abs_sum) = (0.0, 0.0);
    loop {
        let mut w = 1.0;
        let mut remaining = 1.0;
        for i in 0..n {
            s[i] = nodes[idx[i]];
            w *= weights[idx[i]];
            t[i] = remaining * s[i];
            remaining *= 1.0 - s[i];
        }
        // Jacobian of the collapse: Π (1 - s_i)^(n - 1 - i)
        let mut jac = 1.0;
        for (i, si) in s.iter().enumerate() {
            jac *= (1.0 - si).powi((n - 1 - i) as i32);
        }
        let f = num.eval(&t) / den.eval(&t) * jac * w;
        sum += f;
        abs_sum += f.abs();
        let mut k = 0;
        loop {
            if k == n {
                return (sum, abs_sum);
            }
            idx[k] += 1;
            if idx[k] < order {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Pólya certificate that `den` has no zero on `Δ^n`.
///
/// The denominator is homogenized in barycentric coordinates and multiplied by powers of
/// `Σ u_i`. Returns the first power at which all coefficients of the full monomial support
/// are strictly positive (or all strictly negative).
pub fn denominator_certificate(den: &Polynomial, bound: u32) -> Option<u32> {
    let n = den.nvars();
    if den.is_zero() {
        return None;
    }
    if let Some(c) = den.constant_value() {
        return (!c.is_zero()).then_some(0);
    }
    let nv = n + 1;
    let d = den.total_degree().expect("nonzero");
    let sum = (0..nv).fold(Polynomial::zero(nv), |acc, i| {
        &acc + &Polynomial::variable(nv, i)
    });
    let mut homogeneous = Polynomial::zero(nv);
    for (m, c) in den.terms() {
        let mut e = vec![0u32];
        e.extend_from_slice(m.exponents());
        let mono = Polynomial::monomial(Monomial::from_exponents(e), c.clone());
        homogeneous = &homogeneous + &(&mono * &sum.pow(d - m.degree()));
    }
    let mut current = homogeneous;
    for k in 0..=bound {
        let support = Monomial::all_of_degree(nv, d + k);
        if current.num_terms() == support.len() {
            let signs: Vec<bool> = current.terms().map(|(_, c)| c.is_positive()).collect();
            if signs.iter().all(|s| *s) || signs.iter().all(|s| !*s) {
                return Some(k);
            }
        }
        current = &current * &sum;
    }
    None
}

/// Quadrature of a top-degree form with an error estimate `|Q_k - Q_{k+4}|` plus a rounding floor.
pub fn integrate_numeric(
    alpha: &PolyForm,
    options: &QuadratureOptions,
) -> Result<Scalar, FormsError> {
    let c = alpha.top_coefficient()?;
    let n = alpha.n();
    let names = super::coordinate_names(n);
    if denominator_certificate(c.denominator(), options.certificate_bound).is_none() {
        return Err(FormsError::DenominatorVanishes(
            c.denominator().display_with(&names).to_string(),
        ));
    }
    if n == 0 {
        let v = c.eval(&[]).expect("certified denominator");
        let value = Scalar::Exact(v).value();
        return Ok(Scalar::Approx {
            value,
            error: 4.0 * f64::EPSILON * value.abs(),
        });
    }
    let num = F64Poly(c.numerator().to_f64_terms());
    let den = F64Poly(c.denominator().to_f64_terms());
    let (q1, abs1) = quadrature(&num, &den, n, options.order);
    let (q2, _) = quadrature(&num, &den, n, options.order + 4);
    let floor = 16.0 * f64::EPSILON * abs1;
    Ok(Scalar::Approx {
        value: q1,
        error: (q1 - q2).abs() + floor,
    })
}

/// Exact integral when the coefficient is polynomial, quadrature otherwise.
pub fn integrate(alpha: &PolyForm, options: &QuadratureOptions) -> Result<Scalar, FormsError> {
    let c = alpha.top_coefficient()?.simplified();
    if c.is_polynomial() {
        integrate_exact(alpha).map(Scalar::Exact)
    } else {
        integrate_numeric(alpha, options)
    }
}

/// `τ(α)(β) = ∫_{Δ^m} β^* α` for a simplex `β: [m] → [n]` with `m = deg α`.
pub fn tau_value(
    alpha: &PolyForm,
    beta: &DeltaMorphism,
    options: &QuadratureOptions,
) -> Result<Scalar, FormsError> {
    if beta.source() != alpha.degree() {
        return Err(FormsError::NotTopDegree {
            degree: alpha.degree(),
            n: beta.source(),
        });
    }
    integrate(&pullback_delta(beta, alpha)?, options)
}

/// `τ(α)` as an exact cochain on `Δ[n]`, degenerate simplices included.
pub fn tau(alpha: &PolyForm) -> Result<Cochain, FormsError> {
    let n = alpha.n();
    let p = alpha.degree();
    let k = Arc::new(FiniteSimplicialSet::standard_simplex(n));
    let mut values = Vec::new();
    for s in k.all_simplices(p) {
        let beta = DeltaMorphism::new(n, s.clone()).expect("simplices of Δ[n] are Δ-morphisms");
        let v = integrate_exact(&pullback_delta(&beta, alpha)?)?;
        if !v.is_zero() {
            values.push((s, v));
        }
    }
    Ok(Cochain::from_values(&k, p, values).expect("simplices of Δ[n]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn opts() -> QuadratureOptions {
        QuadratureOptions::default()
    }

    /// Iterated symbolic integration: ∫_0^1 ∫_0^{1-t1} f dt2 dt1 done by antiderivatives.
    fn iterated_integral_2d(p: &Polynomial) -> Rational {
        // inner: substitute t2 -> antiderivative evaluated at 1 - t1 minus at 0
        let mut inner = Polynomial::zero(1);
        for (m, c) in p.terms() {
            let (a, b) = (m.exponents()[0], m.exponents()[1]);
            let base = &Polynomial::one(1) - &Polynomial::variable(1, 0);
            let term = &Polynomial::monomial(
                Monomial::from_exponents(vec![a]),
                c / Rational::from_integer((b + 1).into()),
            ) * &base.pow(b + 1);
            inner = &inner + &term;
        }
        inner
            .terms()
            .map(|(m, c)| c / Rational::from_integer((m.exponents()[0] + 1).into()))
            .sum()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(
            integrate_exact(&PolyForm::parse(1, "dt").unwrap()).unwrap(),
            q(1, 1)
        );
        assert_eq!(integrate_exact(&PolyForm::volume(2)).unwrap(), q(1, 2));
        let f = PolyForm::parse(2, "t1*t2*dt1^dt2").unwrap();
        assert_eq!(integrate_exact(&f).unwrap(), q(1, 24));
        assert_eq!(
            integrate_exact(&f).unwrap(),
            iterated_integral_2d(&poly2("t1*t2"))
        );
        assert!(matches!(
            integrate_exact(&PolyForm::parse(2, "dt1").unwrap()),
            Err(FormsError::NotTopDegree { .. })
        ));
        assert!(matches!(
            integrate_exact(&PolyForm::parse(1, "1/(1 + t)*dt").unwrap()),
            Err(FormsError::NonPolynomialCoefficient(_))
        ));
    }

    fn poly2(s: &str) -> Polynomial {
        crate::poly::parse_polynomial(s, &["t1".to_string(), "t2".to_string()]).unwrap()
    }

    #[test]
    fn exact_matches_iterated_integration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let p = random_poly(2, 5, &mut rng);
            let f = PolyForm::volume(2)
                .multiply_function(&crate::poly::RationalFunction::from_poly(p.clone()));
            assert_eq!(integrate_exact(&f).unwrap(), iterated_integral_2d(&p));
        }
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        for order in [1, 2, 5, 16, 20] {
            let (x, w) = gauss_legendre(order);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            for k in 0..(2 * order) as i32 {
                let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
                assert!(
                    (v - 1.0 / (k as f64 + 1.0)).abs() < 1e-13,
                    "order {order} k {k}"
                );
            }
        }
    }

    #[test]
    fn numeric_examples() {
        let v = integrate_numeric(&PolyForm::parse(1, "dt").unwrap(), &opts()).unwrap();
        assert!((v.value() - 1.0).abs() < 1e-14);
        let a = integrate_numeric(&PolyForm::parse(1, "2/(1 + t^2)*dt").unwrap(), &opts()).unwrap();
        assert!((a.value() - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
        assert!(a.error() < 1e-10);
        assert!(matches!(
            integrate_numeric(&PolyForm::parse(1, "1/(1 - 2*t)*dt").unwrap(), &opts()),
            Err(FormsError::DenominatorVanishes(_))
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(1..=3);
            let f = random_form(n, n, 6, &mut rng);
            let exact = integrate_exact(&f).unwrap();
            let num = integrate_numeric(&f, &opts()).unwrap();
            assert!((Scalar::Exact(exact).value() - num.value()).abs() < 1e-12);
        }
    }

    #[test]
    fn certificates() {
        let t = ["t".to_string()];
        let p = |s: &str| crate::poly::parse_polynomial(s, &t).unwrap();
        assert_eq!(denominator_certificate(&p("1 + t^2"), 8), Some(0));
        assert_eq!(denominator_certificate(&p("-1 - t"), 8), Some(0));
        assert!(denominator_certificate(&p("t^2 - t + 1/2"), 8).is_some());
        assert_eq!(denominator_certificate(&p("t - 1/2"), 8), None);
        assert_eq!(denominator_certificate(&p("t"), 8), None);
    }

    #[test]
    fn tau_examples() {
        let one = tau(&PolyForm::one(2)).unwrap();
        for v in 0..3 {
            assert_eq!(one.get(&[v]), q(1, 1));
        }
        let dt = tau(&PolyForm::parse(1, "dt").unwrap()).unwrap();
        assert_eq!(dt.get(&[0, 1]), q(1, 1));
        assert!(dt.get(&[0, 0]).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let a = random_form(n, rng.gen_range(0..n), 4, &mut rng);
            assert_eq!(
                tau(&a.differential()).unwrap(),
                tau(&a).unwrap().coboundary()
            );
        }
    }

    #[test]
    fn tau_is_natural() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let (m, n) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
            let h = random_morphism(m, n, &mut rng);
            let a = random_form(n, rng.gen_range(0..=m.min(n)), 3, &mut rng);
            let lhs = tau(&pullback_delta(&h, &a).unwrap()).unwrap();
            let rhs = tau(&a).unwrap().restrict_along(&h).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
