use std::fmt;

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::PolyError;
use crate::Rational;

/// A quotient of two polynomials over the rationals.
///
/// No gcd is taken, so the representation is not unique; equality is decided by
/// cross-multiplication. The denominator is kept with leading coefficient one, and a
/// constant denominator is always folded into the numerator, so polynomial values
/// have denominator exactly `1`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        assert_eq!(
            num.nvars(),
            den.nvars(),
            "numerator and denominator rings differ"
        );
        Ok(RationalFunction::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(nvars),
            };
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: Polynomial::one(nvars),
            };
        }
        let lc = den
            .leading_coefficient()
            .cloned()
            .unwrap_or_else(Rational::one);
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        RationalFunction::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.is_polynomial() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Cancels the denominator when it divides the numerator exactly.
    pub fn simplified(&self) -> RationalFunction {
        if self.is_polynomial() {
            return self.clone();
        }
        match self.num.div_exact(&self.den) {
            Some(q) => RationalFunction::from_poly(q),
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::normalized(&self.num + &other.num, self.den.clone());
        }
        if self.is_polynomial() {
            return RationalFunction::normalized(
                &(&self.num * &other.den) + &other.num,
                other.den.clone(),
            );
        }
        if other.is_polynomial() {
            return RationalFunction::normalized(
                &self.num + &(&other.num * &self.den),
                self.den.clone(),
            );
        }
        if let Some(q) = other.den.div_exact(&self.den) {
            return RationalFunction::normalized(&(&self.num * &q) + &other.num, other.den.clone());
        }
        if let Some(q) = self.den.div_exact(&other.den) {
            return RationalFunction::normalized(&self.num + &(&other.num * &q), self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        RationalFunction::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalFunction::normalized(
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn derivative(&self, index: usize) -> RationalFunction {
        if self.is_polynomial() {
            return RationalFunction::from_poly(self.num.derivative(index));
        }
        let num =
            &(&self.num.derivative(index) * &self.den) - &(&self.num * &self.den.derivative(index));
        RationalFunction::normalized(num, &self.den * &self.den)
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[RationalFunction]) -> RationalFunction {
        let num = substitute_rational(&self.num, images);
        if self.is_polynomial() {
            return num;
        }
        let den = substitute_rational(&self.den, images);
        num.div(&den)
            .expect("denominator vanishes identically after substitution")
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RationalFunctionDisplay<'a> {
        RationalFunctionDisplay { rf: self, names }
    }
}

/// `p(images)`, clearing denominators in one step.
///
/// When every image shares one denominator `b`, the result has denominator `b^deg p`;
/// otherwise each variable contributes its own denominator power.
pub fn substitute_rational(p: &Polynomial, images: &[RationalFunction]) -> RationalFunction {
    assert_eq!(images.len(), p.nvars(), "substitution has wrong arity");
    let Some(first) = images.first() else {
        return RationalFunction::from_poly(p.clone());
    };
    let target = first.nvars();
    if images.iter().all(RationalFunction::is_polynomial) {
        let polys: Vec<Polynomial> = images.iter().map(|r| r.num.clone()).collect();
        return RationalFunction::from_poly(p.substitute(&polys));
    }
    let shared = images.iter().all(|r| r.den == first.den);
    let mut num = Polynomial::zero(target);
    let mut cache = PowerCache::new(images);
    if shared {
        let total = p.total_degree().unwrap_or(0);
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * cache.num_pow(i, e);
                }
            }
            let missing = total - m.degree();
            if missing > 0 {
                term = &term * cache.den_pow(0, missing);
            }
            num = &num + &term;
        }
        let den = cache.den_pow(0, total).clone();
        return RationalFunction::normalized(num, den);
    }
    let max_exp: Vec<u32> = (0..p.nvars())
        .map(|i| p.terms().map(|(m, _)| m.exponents()[i]).max().unwrap_or(0))
        .collect();
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = &term * cache.num_pow(i, e);
            }
            if !images[i].is_polynomial() && max_exp[i] > e {
                term = &term * cache.den_pow(i, max_exp[i] - e);
            }
        }
        num = &num + &term;
    }
    let mut den = Polynomial::one(target);
    for (i, &e) in max_exp.iter().enumerate() {
        if e > 0 && !images[i].is_polynomial() {
            den = &den * cache.den_pow(i, e);
        }
    }
    RationalFunction::normalized(num, den)
}

struct PowerCache<'a> {
    images: &'a [RationalFunction],
    nums: Vec<Vec<Polynomial>>,
    dens: Vec<Vec<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    fn new(images: &'a [RationalFunction]) -> Self {
        let n = images.first().map(RationalFunction::nvars).unwrap_or(0);
        PowerCache {
            images,
            nums: images.iter().map(|_| vec![Polynomial::one(n)]).collect(),
            dens: images.iter().map(|_| vec![Polynomial::one(n)]).collect(),
        }
    }

    fn num_pow(&mut self, i: usize, e: u32) -> &Polynomial {
        let table = &mut self.nums[i];
        while table.len() <= e as usize {
            let next = &table[table.len() - 1] * &self.images[i].num;
            table.push(next);
        }
        &table[e as usize]
    }

    fn den_pow(&mut self, i: usize, e: u32) -> &Polynomial {
        let table = &mut self.dens[i];
        while table.len() <= e as usize {
            let next = &table[table.len() - 1] * &self.images[i].den;
            table.push(next);
        }
        &table[e as usize]
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

pub struct RationalFunctionDisplay<'a> {
    rf: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RationalFunctionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.is_polynomial() {
            write!(f, "{}", self.rf.num.display_with(self.names))
        } else {
            write!(
                f,
                "({})/({})",
                self.rf.num.display_with(self.names),
                self.rf.den.display_with(self.names)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_rational_function;

    fn rf(s: &str, vars: &[&str]) -> RationalFunction {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_rational_function(s, &names).unwrap()
    }

    #[test]
    fn arithmetic_with_shared_denominators() {
        let a = rf("(1 - t^2)/(1 + t^2)", &["t"]);
        let b = rf("2*t/(1 + t^2)", &["t"]);
        let sum_sq = a.mul(&a).add(&b.mul(&b));
        assert_eq!(sum_sq, RationalFunction::one(1));
        assert!(sum_sq.simplified().is_polynomial());
    }

    #[test]
    fn quotient_rule() {
        let f = rf("1/(1 + t^2)", &["t"]);
        let expected = rf("-2*t/(1 + t^2)^2", &["t"]);
        assert_eq!(f.derivative(0), expected);
    }

    #[test]
    fn substitution_into_circle_equation() {
        let circle = rf("x^2 + y^2 - 1", &["x", "y"]);
        let arc = [
            rf("(1 - t^2)/(1 + t^2)", &["t"]),
            rf("2*t/(1 + t^2)", &["t"]),
        ];
        assert!(circle.substitute(&arc).is_zero());
        let diag = [rf("t", &["t"]), rf("t", &["t"])];
        assert_eq!(circle.substitute(&diag), rf("2*t^2 - 1", &["t"]));
    }
}
