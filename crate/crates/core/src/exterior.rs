//! Exterior monomials `dx_S` and differential forms with coefficients in a polynomial-like ring.
//!
//! A form on `n` coordinates is a finite sum `Σ c_S dx_S` with `S ⊆ {0..n-1}` stored as a
//! bitmask. Both the algebraic de Rham forms and the forms on standard simplices are built
//! on [`Form`].

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::parse::ExprValue;
use crate::poly::{Polynomial, RationalFunction};
use crate::Rational;

/// A set of differential indices, at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn singleton(i: usize) -> Self {
        assert!(i < 64, "index set supports at most 64 coordinates");
        IndexSet(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Option<Self> {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < 64, "index set supports at most 64 coordinates");
            if bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(IndexSet(bits))
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..64).filter(|i| self.contains(*i)).collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn remove(&self, i: usize) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    /// Sign of `dx_self ∧ dx_other` relative to `dx_{self ∪ other}`, or `None` if they overlap.
    pub fn wedge_sign(&self, other: &IndexSet) -> Option<(i32, IndexSet)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each pair (a in self, b in other, a > b) is one inversion
        let mut inversions = 0u32;
        for b in other.indices() {
            inversions += (self.0 >> (b + 1)).count_ones();
        }
        Some((
            if inversions.is_multiple_of(2) { 1 } else { -1 },
            IndexSet(self.0 | other.0),
        ))
    }

    /// All subsets of `{0..n-1}` of size `p`, in lexicographic order of their index lists.
    pub fn all_of_size(n: usize, p: usize) -> Vec<IndexSet> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if left == 0 {
                out.push(IndexSet::from_indices(cur).expect("distinct"));
                return;
            }
            for i in start..n {
                if n - i < left {
                    break;
                }
                cur.push(i);
                rec(i + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if p <= n {
            rec(0, n, p, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `dx_i ^ dx_j ^ ...` with the given coordinate names.
    pub fn display_with(&self, names: &[String]) -> String {
        self.indices()
            .iter()
            .map(|&i| format!("d{}", names[i]))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring operations a form coefficient needs.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero(nvars: usize) -> Self;
    fn from_rational(nvars: usize, c: Rational) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn derivative(&self, index: usize) -> Self;
}

impl Coefficient for Polynomial {
    fn zero(nvars: usize) -> Self {
        Polynomial::zero(nvars)
    }
    fn from_rational(nvars: usize, c: Rational) -> Self {
        Polynomial::constant(nvars, c)
    }
    fn nvars(&self) -> usize {
        Polynomial::nvars(self)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn derivative(&self, index: usize) -> Self {
        Polynomial::derivative(self, index)
    }
}

impl Coefficient for RationalFunction {
    fn zero(nvars: usize) -> Self {
        RationalFunction::zero(nvars)
    }
    fn from_rational(nvars: usize, c: Rational) -> Self {
        RationalFunction::constant(nvars, c)
    }
    fn nvars(&self) -> usize {
        RationalFunction::nvars(self)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn derivative(&self, index: usize) -> Self {
        RationalFunction::derivative(self, index)
    }
}

/// `Σ c_S dx_S` over `n` coordinates, possibly of mixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<C> {
    n: usize,
    terms: BTreeMap<IndexSet, C>,
}

impl<C: Coefficient> Form<C> {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: C) -> Self {
        let mut f = Form::zero(c.nvars());
        f.add_term(IndexSet::EMPTY, c);
        f
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Form::scalar(C::from_rational(n, c))
    }

    /// `dx_i`.
    pub fn differential_of_coordinate(n: usize, i: usize) -> Self {
        let mut f = Form::zero(n);
        f.add_term(
            IndexSet::singleton(i),
            C::from_rational(n, Rational::from_integer(1.into())),
        );
        f
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (IndexSet, C)>) -> Self {
        let mut f = Form::zero(n);
        for (s, c) in terms {
            f.add_term(s, c);
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<IndexSet, C> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &IndexSet) -> Option<&C> {
        self.terms.get(s)
    }

    pub fn add_term(&mut self, s: IndexSet, c: C) {
        assert!(
            s.max_index().is_none_or(|m| m < self.n),
            "differential index out of range"
        );
        assert_eq!(
            c.nvars(),
            self.n,
            "coefficient ring does not match the form"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&s) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(s, sum);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    /// The degree if all terms share one, `None` for the zero form or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(IndexSet::len);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn part_of_degree(&self, p: usize) -> Form<C> {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.len() == p)
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Form<C>) -> Form<C> {
        assert_eq!(self.n, other.n, "forms live on different coordinate sets");
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Form<C> {
        Form {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (*s, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Form<C>) -> Form<C> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Form<C> {
        let mut out = Form::zero(self.n);
        for (s, x) in &self.terms {
            out.add_term(*s, x.mul(c));
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Form<C> {
        let mut out = Form::zero(self.n);
        for (s, x) in &self.terms {
            out.add_term(*s, f(x));
        }
        out
    }

    pub fn wedge(&self, other: &Form<C>) -> Form<C> {
        assert_eq!(self.n, other.n, "forms live on different coordinate sets");
        let mut out = Form::zero(self.n);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                if let Some((sign, s)) = sa.wedge_sign(sb) {
                    let c = ca.mul(cb);
                    out.add_term(s, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        out
    }

    /// `d(c dx_S) = Σ_i ∂c/∂x_i dx_i ∧ dx_S`.
    pub fn differential(&self) -> Form<C> {
        let mut out = Form::zero(self.n);
        for (s, c) in &self.terms {
            for i in 0..self.n {
                let Some((sign, t)) = IndexSet::singleton(i).wedge_sign(s) else {
                    continue;
                };
                let dc = c.derivative(i);
                if dc.is_zero() {
                    continue;
                }
                out.add_term(t, if sign < 0 { dc.neg() } else { dc });
            }
        }
        out
    }

    /// Pullback along a map given by coordinate images: `x_i ↦ images[i]`, `dx_i ↦ d(images[i])`.
    ///
    /// `substitute` must apply the same substitution to a coefficient.
    pub fn pullback<D: Coefficient>(&self, images: &[D], substitute: impl Fn(&C) -> D) -> Form<D> {
        assert_eq!(
            images.len(),
            self.n,
            "pullback needs one image per coordinate"
        );
        let target = images
            .first()
            .map(|d| d.nvars())
            .expect("pullback needs at least one coordinate");
        let differentials: Vec<Form<D>> = images
            .iter()
            .map(|d| Form::scalar(d.clone()).differential())
            .collect();
        let mut out = Form::zero(target);
        for (s, c) in &self.terms {
            let coeff = substitute(c);
            if coeff.is_zero() {
                continue;
            }
            let mut piece = Form::scalar(coeff);
            for i in s.indices() {
                piece = piece.wedge(&differentials[i]);
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece);
        }
        out
    }
}

impl<C: Coefficient> Form<C> {
    /// Renders `c * dx^dy + ...`, parenthesising coefficients with several terms.
    pub fn render(&self, names: &[String], coefficient: impl Fn(&C) -> (String, bool)) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut pieces: Vec<String> = Vec::new();
        for (s, c) in &self.terms {
            let (text, compound) = coefficient(c);
            let piece = if s.is_empty() {
                text
            } else if text == "1" {
                s.display_with(names)
            } else if text == "-1" {
                format!("-{}", s.display_with(names))
            } else if compound {
                format!("({text})*{}", s.display_with(names))
            } else {
                format!("{text}*{}", s.display_with(names))
            };
            pieces.push(piece);
        }
        let mut out = String::new();
        for (k, p) in pieces.iter().enumerate() {
            if k == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

pub fn render_polynomial_coefficient(p: &Polynomial, names: &[String]) -> (String, bool) {
    (p.display_with(names).to_string(), p.num_terms() > 1)
}

pub fn render_rational_coefficient(r: &RationalFunction, names: &[String]) -> (String, bool) {
    match r.as_polynomial() {
        Some(p) => render_polynomial_coefficient(p, names),
        None => (r.display_with(names).to_string(), false),
    }
}

impl ExprValue for Form<RationalFunction> {
    fn constant(nvars: usize, c: Rational) -> Self {
        Form::constant(nvars, c)
    }
    fn variable(nvars: usize, index: usize) -> Self {
        Form::scalar(RationalFunction::from_poly(Polynomial::variable(
            nvars, index,
        )))
    }
    fn differential(nvars: usize, index: usize) -> Result<Self, String> {
        Ok(Form::differential_of_coordinate(nvars, index))
    }
    fn plus(self, other: Self) -> Self {
        Form::add(&self, &other)
    }
    fn negate(self) -> Self {
        Form::neg(&self)
    }
    fn times(self, other: Self) -> Result<Self, String> {
        Ok(self.wedge(&other))
    }
    fn divide(self, other: Self) -> Result<Self, String> {
        let n = self.n;
        let divisor = match other.terms.len() {
            0 => return Err("division by zero".to_string()),
            1 => other
                .terms
                .get(&IndexSet::EMPTY)
                .ok_or("can only divide by a function")?,
            _ => return Err("can only divide by a function".to_string()),
        };
        let inv = RationalFunction::one(n)
            .div(divisor)
            .map_err(|e| e.to_string())?;
        Ok(self.scale(&inv))
    }
    fn power(self, exponent: u32) -> Result<Self, String> {
        let mut out = Form::constant(self.n, Rational::from_integer(1.into()));
        for _ in 0..exponent {
            out = out.wedge(&self);
        }
        Ok(out)
    }
}
