//! Kähler forms of a finitely presented algebra `B = k[x_1..x_m]/I` and their
//! weight-truncated de Rham cohomology.
//!
//! A form is stored in a canonical representative: coefficients are Gröbner normal forms
//! and the relation submodule spanned by `f·dg ∧ dx_T` (`g` in the Gröbner basis) has been
//! eliminated. Elimination is exact linear algebra on the space of terms of weight at most
//! `W`, where the weight of `c·dx_S` is `deg c + |S|`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exterior::{render_polynomial_coefficient, Form, IndexSet};
use crate::linalg::{self, Cohomology, LinalgError, PivotRule, RowEchelon, SparseMatrix, Vector};
use crate::poly::groebner::{generates_within, groebner_basis, normal_form};
use crate::poly::parse::parse_expr;
use crate::poly::{Monomial, PolyError, Polynomial, RationalFunction};
use crate::Rational;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DerhamError {
    #[error("forms belong to different algebras")]
    AlgebraMismatch,
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("form `{0}` is not homogeneous")]
    NotHomogeneous(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `k[x_1..x_m]/I` with a reduced degrevlex Gröbner basis of `I`.
pub struct FpAlgebra {
    names: Vec<String>,
    generators: Vec<Polynomial>,
    groebner: Vec<Polynomial>,
    slack: u32,
    relations: Mutex<HashMap<(usize, u32), Arc<RelationSpace>>>,
}

impl fmt::Debug for FpAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpAlgebra")
            .field("names", &self.names)
            .field(
                "generators",
                &self
                    .generators
                    .iter()
                    .map(|g| g.display_with(&self.names).to_string())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for FpAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.groebner == other.groebner
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

impl FpAlgebra {
    pub fn new(names: Vec<String>, generators: Vec<Polynomial>) -> Result<Arc<Self>, DerhamError> {
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(DerhamError::InvalidAlgebra(format!(
                    "`{n}` is not a valid variable name"
                )));
            }
            if names[..i].contains(n) {
                return Err(DerhamError::InvalidAlgebra(format!(
                    "variable `{n}` is declared twice"
                )));
            }
            if let Some(rest) = n.strip_prefix('d') {
                if names.iter().any(|m| m == rest) {
                    return Err(DerhamError::InvalidAlgebra(format!(
                        "variable `{n}` clashes with the differential of `{rest}`"
                    )));
                }
            }
        }
        if names.len() > 63 {
            return Err(DerhamError::InvalidAlgebra(
                "at most 63 variables are supported".into(),
            ));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != names.len()) {
            return Err(DerhamError::InvalidAlgebra(format!(
                "generator in {} variables, algebra has {}",
                g.nvars(),
                names.len()
            )));
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let groebner = groebner_basis(&generators)?;
        debug_assert!(generates_within(&generators, &groebner));
        let slack = groebner
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0);
        Ok(Arc::new(FpAlgebra {
            names,
            generators,
            groebner,
            slack,
            relations: Mutex::new(HashMap::new()),
        }))
    }

    /// Parses variable names and relation strings such as `x^2 + y^2 - 1`.
    pub fn parse(names: &[&str], relations: &[&str]) -> Result<Arc<Self>, DerhamError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = relations
            .iter()
            .map(|r| crate::poly::parse_polynomial(r, &names))
            .collect::<Result<Vec<_>, _>>()?;
        FpAlgebra::new(names, gens)
    }

    /// Same presentation with a different relation slack (see [`FpAlgebra::relation_slack`]).
    pub fn with_relation_slack(&self, slack: u32) -> Arc<Self> {
        Arc::new(FpAlgebra {
            names: self.names.clone(),
            generators: self.generators.clone(),
            groebner: self.groebner.clone(),
            slack,
            relations: Mutex::new(HashMap::new()),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> &[Polynomial] {
        &self.groebner
    }

    /// How far above the target weight relations are generated before intersecting.
    ///
    /// A relation `f·dg ∧ dx_T` can reduce to weight below its nominal weight, so the
    /// relations of weight `≤ W` are found among those of nominal weight `≤ W + slack`.
    /// Defaults to the largest degree in the Gröbner basis.
    pub fn relation_slack(&self) -> u32 {
        self.slack
    }

    pub fn is_zero_ring(&self) -> bool {
        self.groebner.iter().any(Polynomial::is_constant)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.groebner)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .groebner
            .iter()
            .any(|g| g.leading_monomial().expect("nonzero").divides(m))
    }

    /// Monomials of the given degree not divisible by any leading monomial, ascending.
    pub fn standard_monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        if self.is_zero_ring() {
            return Vec::new();
        }
        let mut v: Vec<Monomial> = Monomial::all_of_degree(self.nvars(), degree)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        v.sort();
        v
    }

    pub fn parse_polynomial(&self, text: &str) -> Result<Polynomial, DerhamError> {
        Ok(crate::poly::parse_polynomial(text, &self.names)?)
    }

    fn relation_space(&self, p: usize, weight: u32) -> Arc<RelationSpace> {
        if let Some(r) = self.relations.lock().expect("cache lock").get(&(p, weight)) {
            return r.clone();
        }
        let space = Arc::new(RelationSpace::build(self, p, weight));
        self.relations
            .lock()
            .expect("cache lock")
            .insert((p, weight), space.clone());
        space
    }
}

/// Terms `m·dx_S` of degree `p` and weight `≤ W`, ordered by (weight, S, m).
#[derive(Debug)]
struct TermBasis {
    columns: Vec<(IndexSet, Monomial)>,
    index: HashMap<(IndexSet, Monomial), usize>,
}

impl TermBasis {
    fn new(algebra: &FpAlgebra, p: usize, weight: u32) -> Self {
        let mut columns = Vec::new();
        let sets = IndexSet::all_of_size(algebra.nvars(), p);
        if !sets.is_empty() {
            for w in (p as u32)..=weight {
                let monos = algebra.standard_monomials_of_degree(w - p as u32);
                for s in &sets {
                    for m in &monos {
                        columns.push((*s, m.clone()));
                    }
                }
            }
        }
        let index = columns
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        TermBasis { columns, index }
    }

    fn len(&self) -> usize {
        self.columns.len()
    }

    /// Coordinates of a form whose coefficients are normal forms.
    fn vectorize(&self, terms: &BTreeMap<IndexSet, Polynomial>) -> Option<Vec<(usize, Rational)>> {
        let mut out = Vec::new();
        for (s, c) in terms {
            for (m, x) in c.terms() {
                out.push((*self.index.get(&(*s, m.clone()))?, x.clone()));
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    }

    fn form_of(
        &self,
        nvars: usize,
        entries: impl IntoIterator<Item = (usize, Rational)>,
    ) -> BTreeMap<IndexSet, Polynomial> {
        let mut terms: BTreeMap<IndexSet, Polynomial> = BTreeMap::new();
        for (i, x) in entries {
            let (s, m) = &self.columns[i];
            terms
                .entry(*s)
                .or_insert_with(|| Polynomial::zero(nvars))
                .add_term(m.clone(), x);
        }
        terms.retain(|_, c| !c.is_zero());
        terms
    }
}

/// The relation submodule intersected with the weight `≤ W` terms of degree `p`.
#[derive(Debug)]
struct RelationSpace {
    basis: TermBasis,
    echelon: RowEchelon,
}

impl RelationSpace {
    fn build(algebra: &FpAlgebra, p: usize, weight: u32) -> Self {
        let basis = TermBasis::new(algebra, p, weight);
        let mut echelon = RowEchelon::new(basis.len(), PivotRule::Leading);
        if p == 0 || algebra.groebner.is_empty() || basis.len() == 0 {
            return RelationSpace { basis, echelon };
        }
        let big_weight = weight + algebra.slack;
        let big = TermBasis::new(algebra, p, big_weight);
        let mut big_echelon = RowEchelon::new(big.len(), PivotRule::Leading);
        let m = algebra.nvars();
        let lower = IndexSet::all_of_size(m, p - 1);
        for g in &algebra.groebner {
            let dg = Form::scalar(g.clone()).differential();
            let gdeg = g.total_degree().unwrap_or(0);
            // nominal weight of mono·dg∧dx_T is deg mono + deg g - 1 + p
            let Some(max_mono) = (big_weight + 1).checked_sub(gdeg + p as u32) else {
                continue;
            };
            for d in 0..=max_mono {
                for mono in algebra.standard_monomials_of_degree(d) {
                    let scaled = dg.scale(&Polynomial::monomial(mono.clone(), Rational::one()));
                    for t in &lower {
                        let raw = scaled.wedge(&Form::from_terms(m, [(*t, Polynomial::one(m))]));
                        let reduced = normalize_coefficients(algebra, &raw);
                        if reduced.is_empty() {
                            continue;
                        }
                        let row = big
                            .vectorize(&reduced)
                            .expect("normal forms of bounded weight lie in the basis");
                        big_echelon.insert_sparse(row);
                    }
                }
            }
        }
        let limit = basis.len();
        for row in big_echelon.basis_rows() {
            if row[limit..].iter().all(Zero::is_zero) {
                echelon.insert(&row[..limit]);
            }
        }
        RelationSpace { basis, echelon }
    }

    fn free_columns(&self) -> Vec<usize> {
        self.echelon.free_columns()
    }
}

fn normalize_coefficients(
    algebra: &FpAlgebra,
    raw: &Form<Polynomial>,
) -> BTreeMap<IndexSet, Polynomial> {
    raw.terms()
        .iter()
        .map(|(s, c)| (*s, algebra.normal_form(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn weight_of(terms: &BTreeMap<IndexSet, Polynomial>) -> Option<u32> {
    terms
        .iter()
        .filter_map(|(s, c)| c.total_degree().map(|d| d + s.len() as u32))
        .max()
}

/// The conormal presentation `Ω¹ = (⊕ B dx_i) / (df_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KaehlerPresentation {
    pub generator_labels: Vec<String>,
    /// Row `j` holds `nf(∂f_j/∂x_i)` for each `i`.
    pub relations: Vec<Vec<Polynomial>>,
}

pub fn kaehler_presentation(algebra: &FpAlgebra) -> KaehlerPresentation {
    KaehlerPresentation {
        generator_labels: algebra.names.iter().map(|n| format!("d{n}")).collect(),
        relations: algebra
            .generators
            .iter()
            .map(|f| {
                (0..algebra.nvars())
                    .map(|i| algebra.normal_form(&f.derivative(i)))
                    .collect()
            })
            .collect(),
    }
}

/// A homogeneous element of `Ω^p_{B|k}` in canonical form.
#[derive(Clone, Debug)]
pub struct AlgebraicForm {
    algebra: Arc<FpAlgebra>,
    degree: usize,
    terms: BTreeMap<IndexSet, Polynomial>,
}

impl PartialEq for AlgebraicForm {
    fn eq(&self, other: &Self) -> bool {
        *self.algebra == *other.algebra && self.degree == other.degree && self.terms == other.terms
    }
}

/// Canonical representative of a raw degree-`p` expansion.
pub fn reduce_form(
    algebra: &Arc<FpAlgebra>,
    degree: usize,
    raw: &Form<Polynomial>,
) -> AlgebraicForm {
    assert_eq!(
        raw.n(),
        algebra.nvars(),
        "form is over a different polynomial ring"
    );
    assert!(
        raw.terms().keys().all(|s| s.len() == degree),
        "raw form is not of degree {degree}"
    );
    let mut terms = normalize_coefficients(algebra, raw);
    if degree > 0 {
        if let Some(w) = weight_of(&terms) {
            let space = algebra.relation_space(degree, w);
            let v = space
                .basis
                .vectorize(&terms)
                .expect("normal forms of bounded weight lie in the basis");
            let reduced = space.echelon.reduce_sparse(v);
            terms = space.basis.form_of(algebra.nvars(), reduced);
        }
    }
    AlgebraicForm {
        algebra: algebra.clone(),
        degree,
        terms,
    }
}

impl AlgebraicForm {
    pub fn zero(algebra: &Arc<FpAlgebra>, degree: usize) -> Self {
        AlgebraicForm {
            algebra: algebra.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Arc<FpAlgebra>) -> Self {
        AlgebraicForm::function(algebra, &Polynomial::one(algebra.nvars()))
    }

    pub fn function(algebra: &Arc<FpAlgebra>, f: &Polynomial) -> Self {
        reduce_form(algebra, 0, &Form::scalar(f.clone()))
    }

    pub fn from_raw(algebra: &Arc<FpAlgebra>, raw: &Form<Polynomial>) -> Result<Self, DerhamError> {
        if raw.is_zero() {
            return Ok(AlgebraicForm::zero(algebra, 0));
        }
        let degree = raw.homogeneous_degree().ok_or_else(|| {
            DerhamError::NotHomogeneous(raw.render(&algebra.names, |c| {
                render_polynomial_coefficient(c, &algebra.names)
            }))
        })?;
        Ok(reduce_form(algebra, degree, raw))
    }

    /// Parses `x*dy - y*dx` style text. Coefficients must be polynomial.
    pub fn parse(algebra: &Arc<FpAlgebra>, text: &str) -> Result<Self, DerhamError> {
        let parsed: Form<RationalFunction> = parse_expr(text, &algebra.names)?;
        let mut raw = Form::zero(algebra.nvars());
        for (s, c) in parsed.terms() {
            let p = c
                .simplified()
                .as_polynomial()
                .cloned()
                .ok_or_else(|| PolyError::NotPolynomial(text.to_string()))?;
            raw.add_term(*s, p);
        }
        if raw.is_zero() {
            // a zero form keeps the degree it was written in when that is unambiguous
            let degree = parsed.homogeneous_degree().unwrap_or(0);
            return Ok(AlgebraicForm::zero(algebra, degree));
        }
        AlgebraicForm::from_raw(algebra, &raw)
    }

    pub fn algebra(&self) -> &Arc<FpAlgebra> {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, Polynomial> {
        &self.terms
    }

    pub fn raw(&self) -> Form<Polynomial> {
        Form::from_terms(
            self.algebra.nvars(),
            self.terms.iter().map(|(s, c)| (*s, c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `deg c + p` over the terms.
    pub fn weight(&self) -> Option<u32> {
        weight_of(&self.terms)
    }

    fn same_algebra(&self, other: &AlgebraicForm) -> Result<(), DerhamError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(DerhamError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &AlgebraicForm) -> Result<AlgebraicForm, DerhamError> {
        self.same_algebra(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(DerhamError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(reduce_form(
            &self.algebra,
            self.degree,
            &self.raw().add(&other.raw()),
        ))
    }

    pub fn sub(&self, other: &AlgebraicForm) -> Result<AlgebraicForm, DerhamError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> AlgebraicForm {
        if c.is_zero() {
            return AlgebraicForm::zero(&self.algebra, self.degree);
        }
        AlgebraicForm {
            algebra: self.algebra.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(s, p)| (*s, p.scale(c))).collect(),
        }
    }

    pub fn wedge(&self, other: &AlgebraicForm) -> Result<AlgebraicForm, DerhamError> {
        self.same_algebra(other)?;
        let raw = self.raw().wedge(&other.raw());
        Ok(reduce_form(&self.algebra, self.degree + other.degree, &raw))
    }

    pub fn differential(&self) -> AlgebraicForm {
        reduce_form(&self.algebra, self.degree + 1, &self.raw().differential())
    }

    pub fn is_closed(&self) -> bool {
        self.differential().is_zero()
    }

    pub fn display(&self) -> String {
        let names = &self.algebra.names;
        Form::from_terms(names.len(), self.terms.iter().map(|(s, c)| (*s, c.clone())))
            .render(names, |c| render_polynomial_coefficient(c, names))
    }
}

impl fmt::Display for AlgebraicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// The weight `≤ N` part of `Ω^p_B`, with basis given by non-pivot terms.
struct TruncatedDegree {
    space: Arc<RelationSpace>,
    free: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl TruncatedDegree {
    fn new(algebra: &FpAlgebra, p: usize, weight: u32) -> Self {
        let space = algebra.relation_space(p, weight);
        let free = space.free_columns();
        let position = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        TruncatedDegree {
            space,
            free,
            position,
        }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    fn basis_form(&self, algebra: &Arc<FpAlgebra>, p: usize, k: usize) -> AlgebraicForm {
        let terms = self
            .space
            .basis
            .form_of(algebra.nvars(), [(self.free[k], Rational::one())]);
        AlgebraicForm {
            algebra: algebra.clone(),
            degree: p,
            terms,
        }
    }

    /// Quotient coordinates of a form with normal-form coefficients of weight `≤ N`.
    fn coordinates(&self, terms: &BTreeMap<IndexSet, Polynomial>) -> Option<Vector> {
        let v = self.space.basis.vectorize(terms)?;
        let reduced = self.space.echelon.reduce_sparse(v);
        let mut out = vec![Rational::zero(); self.free.len()];
        for (c, x) in reduced {
            out[self.position[&c]] = x;
        }
        Some(out)
    }
}

fn differential_matrix(
    algebra: &Arc<FpAlgebra>,
    p: usize,
    from: &TruncatedDegree,
    to: &TruncatedDegree,
) -> SparseMatrix {
    let mut triplets = Vec::new();
    for k in 0..from.dim() {
        let e = from.basis_form(algebra, p, k);
        let de = normalize_coefficients(algebra, &e.raw().differential());
        let coords = to.coordinates(&de).expect("d preserves weight");
        for (r, x) in coords.into_iter().enumerate() {
            if !x.is_zero() {
                triplets.push((r, k, x));
            }
        }
    }
    SparseMatrix::from_triplets(to.dim(), from.dim(), triplets)
}

/// `H^p` of the weight `≤ N` subcomplex.
#[derive(Clone, Debug)]
pub struct TruncatedCohomology {
    pub degree: usize,
    pub max_weight: u32,
    pub dimension: usize,
    pub representatives: Vec<AlgebraicForm>,
    /// Same dimension at `N - 1`, and the classes from `N - 1` still form a basis at `N`.
    pub stabilized: bool,
    algebra: Arc<FpAlgebra>,
    cohomology: Cohomology,
}

impl TruncatedCohomology {
    /// Coordinates of a closed form of weight `≤ N` in the representative basis.
    pub fn class_of(&self, form: &AlgebraicForm) -> Result<Vector, DerhamError> {
        form.same_algebra(&AlgebraicForm::zero(&self.algebra, 0))?;
        if form.is_zero() {
            return Ok(vec![Rational::zero(); self.dimension]);
        }
        if form.degree != self.degree {
            return Err(DerhamError::DegreeMismatch {
                expected: self.degree,
                found: form.degree,
            });
        }
        let level = TruncatedDegree::new(&self.algebra, self.degree, self.max_weight);
        let coords = level.coordinates(&form.terms).ok_or_else(|| {
            DerhamError::InvalidAlgebra(format!(
                "form has weight above the cutoff {}",
                self.max_weight
            ))
        })?;
        Ok(self.cohomology.class_of(&coords)?.coordinates)
    }
}

fn cohomology_at(
    algebra: &Arc<FpAlgebra>,
    p: usize,
    n: u32,
) -> Result<(Cohomology, TruncatedDegree), DerhamError> {
    let here = TruncatedDegree::new(algebra, p, n);
    let next = TruncatedDegree::new(algebra, p + 1, n);
    let d_next = differential_matrix(algebra, p, &here, &next);
    let d_prev = if p == 0 {
        SparseMatrix::zeros(here.dim(), 0)
    } else {
        let prev = TruncatedDegree::new(algebra, p - 1, n);
        differential_matrix(algebra, p - 1, &prev, &here)
    };
    Ok((linalg::cohomology_pair(&d_prev, &d_next)?, here))
}

pub fn truncated_cohomology(
    algebra: &Arc<FpAlgebra>,
    p: usize,
    max_weight: u32,
) -> Result<TruncatedCohomology, DerhamError> {
    let (cohomology, level) = cohomology_at(algebra, p, max_weight)?;
    let to_form = |v: &Vector| {
        let terms = level.space.basis.form_of(
            algebra.nvars(),
            level.free.iter().zip(v).map(|(c, x)| (*c, x.clone())),
        );
        AlgebraicForm {
            algebra: algebra.clone(),
            degree: p,
            terms,
        }
    };
    let representatives: Vec<AlgebraicForm> =
        cohomology.representatives.iter().map(to_form).collect();
    let stabilized = match max_weight.checked_sub(1) {
        None => false,
        Some(prev_weight) => {
            let (prev, prev_level) = cohomology_at(algebra, p, prev_weight)?;
            prev.dimension == cohomology.dimension && {
                let columns: Vec<Vector> = prev
                    .representatives
                    .iter()
                    .map(|v| {
                        let terms = prev_level.space.basis.form_of(
                            algebra.nvars(),
                            prev_level.free.iter().zip(v).map(|(c, x)| (*c, x.clone())),
                        );
                        let coords = level.coordinates(&terms).expect("lower weight embeds");
                        cohomology.class_of(&coords).map(|c| c.coordinates)
                    })
                    .collect::<Result<_, _>>()?;
                linalg::rank(&SparseMatrix::from_columns(cohomology.dimension, &columns))
                    == cohomology.dimension
            }
        }
    };
    Ok(TruncatedCohomology {
        degree: p,
        max_weight,
        dimension: cohomology.dimension,
        representatives,
        stabilized,
        algebra: algebra.clone(),
        cohomology,
    })
}
