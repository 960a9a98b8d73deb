use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::Monomial;
use crate::Rational;

/// A polynomial with rational coefficients in a fixed number of variables.
///
/// Terms are kept in a map keyed by degrevlex-ordered monomials, so the last entry is
/// always the leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Polynomial::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Polynomial::monomial(Monomial::variable(nvars, index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has no nonconstant terms.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        let mut remove = false;
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                remove = existing.is_zero();
            }
            None => {
                self.terms.insert(m.clone(), c);
            }
        }
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(e.into()),
            );
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "substitution has wrong arity");
        let target = images.first().map(Polynomial::nvars);
        let target = match target {
            Some(n) => n,
            None => {
                // no variables: the polynomial is a constant
                return self.clone();
            }
        };
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Substitution into a polynomial ring with zero variables, i.e. evaluation
    /// returning a constant polynomial in `target_nvars` variables.
    pub fn substitute_constants(&self, target_nvars: usize, point: &[Rational]) -> Polynomial {
        Polynomial::constant(target_nvars, self.eval(point))
    }

    /// Re-embeds into a ring with more variables (new ones appended at the end).
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(nvars, 0);
                    (Monomial::from_exponents(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rest.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rest = &rest - &divisor.mul_term(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }

    pub fn to_f64_terms(&self) -> Vec<(f64, Vec<u32>)> {
        self.terms
            .iter()
            .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN), m.exponents().to_vec()))
            .collect()
    }

    /// Renders the polynomial with the given variable names, highest term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, names }
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

pub(crate) fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    m: &Monomial,
    names: &[String],
) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        let name = names.get(i).map(String::as_str).unwrap_or("?");
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m, self.names)?;
            }
        }
        Ok(())
    }
}

/// Default variable names `x1, x2, ...` for debugging output.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names("x", self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial rings differ");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial rings differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial rings differ");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_derivative() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let p = &(&x * &x) + &(&y * &Polynomial::from_int(2, 3));
        assert_eq!(p.derivative(0), &x * &Polynomial::from_int(2, 2));
        assert_eq!(p.derivative(1), Polynomial::from_int(2, 3));
        assert_eq!(p.eval(&[q(1, 2), q(1, 3)]), q(5, 4));
        assert_eq!(
            (&x + &y).pow(2),
            &(&(&x * &x) + &(&x * &y).scale(&q(2, 1))) + &(&y * &y)
        );
    }

    #[test]
    fn exact_division() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let a = &x + &y;
        let b = &x - &y;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &Polynomial::one(2)).div_exact(&a), None);
    }

    #[test]
    fn substitution_composes() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let f = &(&x * &x) - &y;
        let t = Polynomial::variable(1, 0);
        let one = Polynomial::one(1);
        let g = f.substitute(&[&t + &one, &t * &t]);
        // (t+1)^2 - t^2 = 2t + 1
        assert_eq!(g, &t.scale(&q(2, 1)) + &one);
    }

    #[test]
    fn display_orders_by_leading_term() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let p = &(&(&x * &x) + &(&y * &y)) - &Polynomial::one(2);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.display_with(&names).to_string(), "x^2 + y^2 - 1");
        let r = &x.scale(&q(-1, 2)) + &Polynomial::one(2);
        assert_eq!(r.display_with(&names).to_string(), "-1/2*x + 1");
    }
}
