//! Polynomial and rational differential forms on standard simplices.
//!
//! `Δ^n` is parametrized by affine coordinates `t_1..t_n` with vertex 0 at the origin and
//! vertex `i` at the `i`-th unit vector; the barycentric coordinates are `u_i = t_i` for
//! `i ≥ 1` and `u_0 = 1 - Σ t_i`. The orientation is `dt_1 ∧ … ∧ dt_n`.

mod extension;
mod family;
mod integrate;
mod scalar;

pub use extension::{extend_from_boundary, poincare_homotopy};
pub use family::{forms_complex_cohomology, tau_family, FormsCohomology, FormsFamily};
pub use integrate::{
    denominator_certificate, gauss_legendre, integrate, integrate_exact, integrate_numeric,
    monomial_integral, tau, tau_value, QuadratureOptions, DEFAULT_CERTIFICATE_BOUND,
    DEFAULT_QUADRATURE_ORDER,
};
pub use scalar::Scalar;

use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::exterior::{render_rational_coefficient, Form, IndexSet};
use crate::poly::parse::parse_expr;
use crate::poly::{PolyError, Polynomial, RationalFunction};
use crate::simplicial::DeltaMorphism;
use crate::Rational;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FormsError {
    #[error("forms live on simplices of different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error("integration needs a top-degree form: degree {degree} on a {n}-simplex")]
    NotTopDegree { degree: usize, n: usize },
    #[error("coefficient {0} is not a polynomial")]
    NonPolynomialCoefficient(String),
    #[error("cannot certify that the denominator {0} is positive on the simplex")]
    DenominatorVanishes(String),
    #[error("incompatible family: {0}")]
    IncompatibleFamily(String),
    #[error("form `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Coordinate names on `Δ^n`: `t` on the interval, `t1..tn` otherwise.
pub fn coordinate_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["t".to_string()]
    } else {
        (1..=n).map(|i| format!("t{i}")).collect()
    }
}

/// Barycentric coordinate `u_i` on `Δ^n` as a polynomial in the affine coordinates.
pub fn barycentric(n: usize, i: usize) -> Polynomial {
    assert!(i <= n);
    if i == 0 {
        (0..n).fold(Polynomial::one(n), |acc, k| {
            &acc - &Polynomial::variable(n, k)
        })
    } else {
        Polynomial::variable(n, i - 1)
    }
}

/// A homogeneous form of degree `p` on `Δ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm {
    n: usize,
    degree: usize,
    form: Form<RationalFunction>,
}

impl PolyForm {
    pub fn zero(n: usize, degree: usize) -> Self {
        PolyForm {
            n,
            degree,
            form: Form::zero(n),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        PolyForm {
            n,
            degree: 0,
            form: Form::constant(n, c),
        }
    }

    pub fn one(n: usize) -> Self {
        PolyForm::constant(n, Rational::one())
    }

    pub fn function(f: RationalFunction) -> Self {
        PolyForm {
            n: f.nvars(),
            degree: 0,
            form: Form::scalar(f),
        }
    }

    /// `dt_{i+1}`, i.e. the differential of the affine coordinate with index `i`.
    pub fn dt(n: usize, i: usize) -> Self {
        PolyForm {
            n,
            degree: 1,
            form: Form::differential_of_coordinate(n, i),
        }
    }

    /// `dt_1 ∧ … ∧ dt_n`.
    pub fn volume(n: usize) -> Self {
        (0..n).fold(PolyForm::one(n), |acc, i| {
            acc.wedge(&PolyForm::dt(n, i)).expect("same simplex")
        })
    }

    pub fn from_form(form: Form<RationalFunction>, degree: usize) -> Result<Self, FormsError> {
        if let Some(d) = form
            .terms()
            .keys()
            .map(IndexSet::len)
            .find(|d| *d != degree)
        {
            return Err(FormsError::NotHomogeneous(format!(
                "terms of degree {d} in a form of degree {degree}"
            )));
        }
        Ok(PolyForm {
            n: form.n(),
            degree,
            form,
        })
    }

    /// Homogeneous form from raw terms; the zero form gets degree 0.
    pub fn from_raw(form: Form<RationalFunction>) -> Result<Self, FormsError> {
        if form.is_zero() {
            return Ok(PolyForm::zero(form.n(), 0));
        }
        let names = coordinate_names(form.n());
        let degree = form.homogeneous_degree().ok_or_else(|| {
            FormsError::NotHomogeneous(
                form.render(&names, |c| render_rational_coefficient(c, &names)),
            )
        })?;
        Ok(PolyForm {
            n: form.n(),
            degree,
            form,
        })
    }

    /// Parses `coeff * dt1^dt2` text on `Δ^n`. On `Δ^1` both `t` and `t1` are accepted.
    pub fn parse(n: usize, text: &str) -> Result<Self, FormsError> {
        let parsed: Result<Form<RationalFunction>, PolyError> =
            parse_expr(text, &coordinate_names(n));
        let parsed = match parsed {
            Err(PolyError::UnknownVariable(_)) if n == 1 => parse_expr(text, &["t1".to_string()])?,
            other => other?,
        };
        PolyForm::from_raw(parsed.map_coefficients(RationalFunction::simplified))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn form(&self) -> &Form<RationalFunction> {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.form
            .terms()
            .values()
            .all(RationalFunction::is_polynomial)
    }

    /// The coefficient of `dt_1 ∧ … ∧ dt_n` of a top-degree form.
    pub fn top_coefficient(&self) -> Result<RationalFunction, FormsError> {
        if self.degree != self.n {
            return Err(FormsError::NotTopDegree {
                degree: self.degree,
                n: self.n,
            });
        }
        let all = IndexSet::from_indices(&(0..self.n).collect::<Vec<_>>()).expect("distinct");
        Ok(self
            .form
            .coefficient(&all)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.n)))
    }

    /// Largest `deg(coefficient) + p` over the terms, for polynomial forms.
    pub fn weight(&self) -> Option<u32> {
        self.form
            .terms()
            .iter()
            .filter_map(|(s, c)| {
                c.as_polynomial()
                    .and_then(Polynomial::total_degree)
                    .map(|d| d + s.len() as u32)
            })
            .max()
    }

    fn same_simplex(&self, other: &PolyForm) -> Result<(), FormsError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(FormsError::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.same_simplex(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(FormsError::NotHomogeneous(format!(
                "sum of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(PolyForm {
            n: self.n,
            degree: self.degree,
            form: self.form.add(&other.form),
        })
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> PolyForm {
        PolyForm {
            n: self.n,
            degree: self.degree,
            form: self.form.map_coefficients(|x| x.scale(c)),
        }
    }

    pub fn multiply_function(&self, f: &RationalFunction) -> PolyForm {
        PolyForm {
            n: self.n,
            degree: self.degree,
            form: self.form.scale(f),
        }
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormsError> {
        self.same_simplex(other)?;
        Ok(PolyForm {
            n: self.n,
            degree: self.degree + other.degree,
            form: self.form.wedge(&other.form),
        })
    }

    pub fn differential(&self) -> PolyForm {
        PolyForm {
            n: self.n,
            degree: self.degree + 1,
            form: self.form.differential(),
        }
    }

    /// Cancels denominators that divide their numerators.
    pub fn simplified(&self) -> PolyForm {
        PolyForm {
            n: self.n,
            degree: self.degree,
            form: self.form.map_coefficients(RationalFunction::simplified),
        }
    }

    /// Value of a 0-form at vertex `k`.
    pub fn value_at_vertex(&self, k: usize) -> Option<Rational> {
        if self.degree != 0 {
            return Some(Rational::from_integer(0.into()));
        }
        let point: Vec<Rational> = (1..=self.n)
            .map(|i| Rational::from_integer(if i == k { 1 } else { 0 }.into()))
            .collect();
        match self.form.coefficient(&IndexSet::EMPTY) {
            None => Some(Rational::from_integer(0.into())),
            Some(c) => c.eval(&point),
        }
    }

    /// Pullback along a map `Δ^m → Δ^n` given by the images of `t_1..t_n`.
    pub fn pullback_by(&self, m: usize, images: &[RationalFunction]) -> PolyForm {
        assert_eq!(images.len(), self.n);
        if self.n == 0 {
            let c = self
                .form
                .coefficient(&IndexSet::EMPTY)
                .and_then(|c| c.eval(&[]))
                .unwrap_or_else(|| Rational::from_integer(0.into()));
            return if self.degree == 0 {
                PolyForm::constant(m, c)
            } else {
                PolyForm::zero(m, self.degree)
            };
        }
        let form = self.form.pullback(images, |c| c.substitute(images));
        PolyForm {
            n: m,
            degree: self.degree,
            form: form.map_coefficients(RationalFunction::simplified),
        }
    }

    /// Text in the form syntax, e.g. `2/(t^2 + 1)*dt`.
    pub fn display(&self) -> String {
        let names = coordinate_names(self.n);
        self.form
            .render(&names, |c| render_rational_coefficient(c, &names))
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Images of `t_1..t_n` under the affine map `Δ^m → Δ^n` induced by `h: [m] → [n]`.
pub fn delta_images(h: &DeltaMorphism) -> Vec<RationalFunction> {
    let m = h.source();
    (1..=h.target())
        .map(|j| {
            let p = (0..=m)
                .filter(|i| h.apply(*i) == j)
                .fold(Polynomial::zero(m), |acc, i| &acc + &barycentric(m, i));
            RationalFunction::from_poly(p)
        })
        .collect()
}

/// `h^* α` for `h: [m] → [n]` and `α` on `Δ^n`; the result lives on `Δ^m`.
pub fn pullback_delta(h: &DeltaMorphism, alpha: &PolyForm) -> Result<PolyForm, FormsError> {
    if h.target() != alpha.n {
        return Err(FormsError::DimensionMismatch(h.target(), alpha.n));
    }
    Ok(alpha.pullback_by(h.source(), &delta_images(h)))
}
