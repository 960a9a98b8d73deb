//! Parametrized singular simplices on real algebraic sets and the comparison map
//! `ξ(ω)(σ) = ∫_{Δ^n} μ(σ)(ω)` from algebraic forms to singular cochains.

pub mod fixtures;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::derham::{AlgebraicForm, DerhamError, FpAlgebra};
use crate::poly::{substitute_rational, PolyError, Polynomial, RationalFunction};
use crate::simplex_forms::{
    coordinate_names, delta_images, denominator_certificate, integrate, pullback_delta, tau_value,
    FormsError, PolyForm, QuadratureOptions, Scalar,
};
use crate::simplicial::DeltaMorphism;
use crate::Rational;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ComparisonError {
    #[error("simplex `{name}` leaves the variety: generator {generator} becomes {residual}")]
    InvalidSimplex {
        name: String,
        generator: usize,
        residual: String,
    },
    #[error(
        "simplex `{name}` has a denominator {denominator} not certified positive on the simplex"
    )]
    DenominatorVanishes { name: String, denominator: String },
    #[error("simplex has {found} components but the algebra has {expected} variables")]
    ComponentCount { expected: usize, found: usize },
    #[error("form and simplex live over different algebras")]
    AlgebraMismatch,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("form {0} is not closed")]
    NotClosedForm(String),
    #[error("family is not closed: {0}")]
    FamilyNotClosed(String),
    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Derham(#[from] DerhamError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn same_algebra(a: &Arc<FpAlgebra>, b: &Arc<FpAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exact lane: polynomial components and rational outputs. Numeric lane: quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lane {
    Exact,
    Numeric,
}

impl fmt::Display for Lane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lane::Exact => "exact",
            Lane::Numeric => "numeric",
        })
    }
}

/// A generator of the ideal that a candidate simplex does not kill.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub generator: usize,
    pub residual: Polynomial,
}

/// Outcome of a successful membership check: every generator vanishes identically, and
/// each denominator is positive on `Δ^n` after this many multiplications by `Σ u_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub denominator_powers: Vec<u32>,
}

/// A rational map `Δ^n → spec_ℝ B`, given by one component per variable of `B`.
#[derive(Clone, Debug)]
pub struct ParamSimplex {
    n: usize,
    target: Arc<FpAlgebra>,
    components: Vec<RationalFunction>,
}

impl PartialEq for ParamSimplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && same_algebra(&self.target, &other.target)
            && self.components == other.components
    }
}

/// Membership check for `σ`: substitutes the components into every ideal generator.
pub fn validate_simplex(sigma: &ParamSimplex) -> Result<Certificate, Violation> {
    for (j, g) in sigma.target.generators().iter().enumerate() {
        let value = substitute_rational(g, &sigma.components);
        if !value.is_zero() {
            return Err(Violation {
                generator: j,
                residual: value.simplified().numerator().clone(),
            });
        }
    }
    let denominator_powers = sigma
        .components
        .iter()
        .map(|c| {
            denominator_certificate(
                c.denominator(),
                crate::simplex_forms::DEFAULT_CERTIFICATE_BOUND,
            )
            .unwrap_or(u32::MAX)
        })
        .collect();
    Ok(Certificate { denominator_powers })
}

impl ParamSimplex {
    /// Builds and validates `σ`; `name` only labels errors.
    pub fn new(
        name: &str,
        target: &Arc<FpAlgebra>,
        n: usize,
        components: Vec<RationalFunction>,
    ) -> Result<Self, ComparisonError> {
        if components.len() != target.nvars() {
            return Err(ComparisonError::ComponentCount {
                expected: target.nvars(),
                found: components.len(),
            });
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != n) {
            return Err(ComparisonError::Forms(FormsError::DimensionMismatch(
                c.nvars(),
                n,
            )));
        }
        let components: Vec<RationalFunction> = components
            .iter()
            .map(RationalFunction::simplified)
            .collect();
        let names = coordinate_names(n);
        for c in &components {
            if denominator_certificate(
                c.denominator(),
                crate::simplex_forms::DEFAULT_CERTIFICATE_BOUND,
            )
            .is_none()
            {
                return Err(ComparisonError::DenominatorVanishes {
                    name: name.to_string(),
                    denominator: c.denominator().display_with(&names).to_string(),
                });
            }
        }
        let sigma = ParamSimplex {
            n,
            target: target.clone(),
            components,
        };
        validate_simplex(&sigma).map_err(|v| ComparisonError::InvalidSimplex {
            name: name.to_string(),
            generator: v.generator,
            residual: v.residual.display_with(&names).to_string(),
        })?;
        Ok(sigma)
    }

    /// Components in the simplex text syntax, in the coordinates of [`coordinate_names`].
    pub fn parse(
        name: &str,
        target: &Arc<FpAlgebra>,
        n: usize,
        components: &[&str],
    ) -> Result<Self, ComparisonError> {
        let names = coordinate_names(n);
        let parsed = components
            .iter()
            .map(|text| {
                let r: Result<RationalFunction, PolyError> =
                    crate::poly::parse::parse_expr(text, &names);
                match r {
                    Err(PolyError::UnknownVariable(_)) if n == 1 => {
                        crate::poly::parse::parse_expr(text, &["t1".to_string()])
                    }
                    other => other,
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        ParamSimplex::new(name, target, n, parsed)
    }

    /// The constant map to a rational point.
    pub fn constant(
        target: &Arc<FpAlgebra>,
        n: usize,
        point: &[Rational],
    ) -> Result<Self, ComparisonError> {
        let components = point
            .iter()
            .map(|x| RationalFunction::constant(n, x.clone()))
            .collect();
        ParamSimplex::new("constant", target, n, components)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &Arc<FpAlgebra> {
        &self.target
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn lane(&self) -> Lane {
        if self.components.iter().all(RationalFunction::is_polynomial) {
            Lane::Exact
        } else {
            Lane::Numeric
        }
    }

    /// `σ ∘ h` for `h: [m] → [n]`, by substituting the affine map into the components.
    pub fn compose(&self, h: &DeltaMorphism) -> ParamSimplex {
        assert_eq!(h.target(), self.n, "morphism lands in the simplex");
        let images = delta_images(h);
        let components = self
            .components
            .iter()
            .map(|c| {
                if self.n == 0 {
                    let v = c.eval(&[]).expect("constant");
                    RationalFunction::constant(h.source(), v)
                } else {
                    c.substitute(&images).simplified()
                }
            })
            .collect();
        ParamSimplex {
            n: h.source(),
            target: self.target.clone(),
            components,
        }
    }

    pub fn face(&self, i: usize) -> ParamSimplex {
        self.compose(&DeltaMorphism::face(self.n, i))
    }

    /// Image of vertex `k`.
    pub fn vertex(&self, k: usize) -> Vec<Rational> {
        let point: Vec<Rational> = (1..=self.n)
            .map(|i| Rational::from_integer(if i == k { 1 } else { 0 }.into()))
            .collect();
        self.components
            .iter()
            .map(|c| c.eval(&point).expect("certified denominators"))
            .collect()
    }

    pub fn display(&self) -> String {
        let names = coordinate_names(self.n);
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| c.display_with(&names).to_string())
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// `μ(σ)(ω)`: substitutes `x_i ↦ σ_i`, `dx_i ↦ dσ_i`.
pub fn mu(sigma: &ParamSimplex, omega: &AlgebraicForm) -> Result<PolyForm, ComparisonError> {
    if !same_algebra(sigma.target(), omega.algebra()) {
        return Err(ComparisonError::AlgebraMismatch);
    }
    let n = sigma.dimension();
    if omega.degree() > n {
        return Ok(PolyForm::zero(n, omega.degree()));
    }
    let raw = omega.raw();
    let form = raw.pullback(sigma.components(), |c| {
        substitute_rational(c, sigma.components())
    });
    Ok(PolyForm::from_form(form, omega.degree())?.simplified())
}

/// `ξ(ω)(σ) = ∫_{Δ^p} μ(σ)(ω)` for `p = deg ω = dim σ`.
pub fn xi(
    omega: &AlgebraicForm,
    sigma: &ParamSimplex,
    options: &QuadratureOptions,
) -> Result<Scalar, ComparisonError> {
    if omega.degree() != sigma.dimension() {
        return Err(ComparisonError::DegreeMismatch {
            expected: sigma.dimension(),
            found: omega.degree(),
        });
    }
    Ok(integrate(&mu(sigma, omega)?, options)?)
}

/// The same value computed as `τ(μ(σ)(ω))(id_[p])`.
pub fn xi_via_tau(
    omega: &AlgebraicForm,
    sigma: &ParamSimplex,
    options: &QuadratureOptions,
) -> Result<Scalar, ComparisonError> {
    if omega.degree() != sigma.dimension() {
        return Err(ComparisonError::DegreeMismatch {
            expected: sigma.dimension(),
            found: omega.degree(),
        });
    }
    let id = DeltaMorphism::identity(sigma.dimension());
    Ok(tau_value(&mu(sigma, omega)?, &id, options)?)
}

#[derive(Clone, Debug)]
struct Member {
    name: String,
    simplex: ParamSimplex,
    faces: Vec<usize>,
}

/// A finite set of parametrized simplices, closed under codimension-one faces.
#[derive(Clone, Debug)]
pub struct SingularFamily {
    target: Arc<FpAlgebra>,
    members: Vec<Member>,
    names: HashMap<String, usize>,
}

impl SingularFamily {
    pub fn new(target: &Arc<FpAlgebra>) -> Self {
        SingularFamily {
            target: target.clone(),
            members: Vec::new(),
            names: HashMap::new(),
        }
    }

    pub fn target(&self) -> &Arc<FpAlgebra> {
        &self.target
    }

    /// Adds `σ` and, recursively, its faces, named `name.d<i>` unless already present.
    /// Returns the index of `σ`; an equal simplex already in the family is reused and
    /// `name` becomes an alias for it.
    pub fn add(&mut self, name: &str, sigma: ParamSimplex) -> Result<usize, ComparisonError> {
        if !same_algebra(&self.target, sigma.target()) {
            return Err(ComparisonError::AlgebraMismatch);
        }
        if let Some(&i) = self.names.get(name) {
            if self.members[i].simplex != sigma {
                return Err(ComparisonError::FamilyNotClosed(format!(
                    "name `{name}` is already used"
                )));
            }
            return Ok(i);
        }
        let idx = match self.position(&sigma) {
            Some(i) => i,
            None => {
                let faces = if sigma.dimension() == 0 {
                    Vec::new()
                } else {
                    (0..=sigma.dimension())
                        .map(|i| {
                            let f = sigma.face(i);
                            match self.position(&f) {
                                Some(j) => Ok(j),
                                None => self.add(&format!("{name}.d{i}"), f),
                            }
                        })
                        .collect::<Result<Vec<_>, _>>()?
                };
                self.members.push(Member {
                    name: name.to_string(),
                    simplex: sigma,
                    faces,
                });
                self.members.len() - 1
            }
        };
        self.names.insert(name.to_string(), idx);
        Ok(idx)
    }

    fn position(&self, sigma: &ParamSimplex) -> Option<usize> {
        self.members.iter().position(|m| m.simplex == *sigma)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize, ComparisonError> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| ComparisonError::UnknownSimplex(name.to_string()))
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.members[idx].name
    }

    pub fn simplex(&self, idx: usize) -> &ParamSimplex {
        &self.members[idx].simplex
    }

    pub fn dimension(&self, idx: usize) -> usize {
        self.members[idx].simplex.dimension()
    }

    /// Indices of `∂_0 σ, …, ∂_n σ`.
    pub fn faces(&self, idx: usize) -> &[usize] {
        &self.members[idx].faces
    }

    pub fn simplices_of_dimension(&self, p: usize) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.dimension(i) == p)
            .collect()
    }

    /// The front `p`-face `σ∘(0..p)`, reached by repeatedly dropping the last vertex.
    pub fn front_face(&self, idx: usize, p: usize) -> usize {
        let mut at = idx;
        while self.dimension(at) > p {
            at = self.faces(at)[self.dimension(at)];
        }
        at
    }

    /// The back `q`-face `σ∘(n-q..n)`, reached by repeatedly dropping the first vertex.
    pub fn back_face(&self, idx: usize, q: usize) -> usize {
        let mut at = idx;
        while self.dimension(at) > q {
            at = self.faces(at)[0];
        }
        at
    }

    /// Checks that the stored faces agree with pullback along the face inclusions.
    pub fn check_face_table(&self) -> bool {
        self.members.iter().all(|m| {
            m.faces
                .iter()
                .enumerate()
                .all(|(i, &f)| self.members[f].simplex == m.simplex.face(i))
        })
    }
}

/// An integer chain of family simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularChain {
    degree: usize,
    terms: BTreeMap<usize, i64>,
}

impl SingularChain {
    pub fn zero(degree: usize) -> Self {
        SingularChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_names(
        family: &SingularFamily,
        degree: usize,
        terms: &[(&str, i64)],
    ) -> Result<Self, ComparisonError> {
        let mut c = SingularChain::zero(degree);
        for (name, k) in terms {
            let idx = family.index(name)?;
            if family.dimension(idx) != degree {
                return Err(ComparisonError::DegreeMismatch {
                    expected: degree,
                    found: family.dimension(idx),
                });
            }
            c.add_term(idx, *k);
        }
        Ok(c)
    }

    pub fn add_term(&mut self, idx: usize, k: i64) {
        let e = self.terms.entry(idx).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&idx);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<usize, i64> {
        &self.terms
    }

    pub fn boundary(&self, family: &SingularFamily) -> SingularChain {
        let mut out = SingularChain::zero(self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (&idx, &k) in &self.terms {
            for (i, &f) in family.faces(idx).iter().enumerate() {
                out.add_term(f, if i % 2 == 0 { k } else { -k });
            }
        }
        out
    }

    pub fn is_cycle(&self, family: &SingularFamily) -> bool {
        self.boundary(family).terms.is_empty()
    }
}

/// A cochain on the `p`-simplices of a family where it is defined.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCochain {
    degree: usize,
    values: BTreeMap<usize, Scalar>,
}

impl FamilyCochain {
    pub fn new(degree: usize, values: BTreeMap<usize, Scalar>) -> Self {
        FamilyCochain { degree, values }
    }

    /// The unit: `1` on every vertex.
    pub fn one(family: &SingularFamily) -> Self {
        let values = family
            .simplices_of_dimension(0)
            .into_iter()
            .map(|i| (i, Scalar::from_int(1)))
            .collect();
        FamilyCochain { degree: 0, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, idx: usize) -> Option<&Scalar> {
        self.values.get(&idx)
    }

    pub fn values(&self) -> &BTreeMap<usize, Scalar> {
        &self.values
    }

    fn value(&self, family: &SingularFamily, idx: usize) -> Result<&Scalar, ComparisonError> {
        self.values.get(&idx).ok_or_else(|| {
            ComparisonError::FamilyNotClosed(format!(
                "cochain of degree {} is not defined on `{}`",
                self.degree,
                family.name(idx)
            ))
        })
    }

    /// `(δc)(σ) = Σ (-1)^i c(∂_i σ)` on every `(p+1)`-simplex.
    pub fn coboundary(&self, family: &SingularFamily) -> Result<FamilyCochain, ComparisonError> {
        let mut values = BTreeMap::new();
        for idx in family.simplices_of_dimension(self.degree + 1) {
            let mut acc = Scalar::zero();
            for (i, &f) in family.faces(idx).iter().enumerate() {
                let v = self.value(family, f)?;
                acc = if i % 2 == 0 { acc.add(v) } else { acc.sub(v) };
            }
            values.insert(idx, acc);
        }
        Ok(FamilyCochain {
            degree: self.degree + 1,
            values,
        })
    }

    pub fn sub(&self, other: &FamilyCochain) -> Result<FamilyCochain, ComparisonError> {
        if self.degree != other.degree {
            return Err(ComparisonError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut values = self.values.clone();
        for (k, v) in &other.values {
            let e = values.entry(*k).or_insert_with(Scalar::zero);
            *e = e.sub(v);
        }
        Ok(FamilyCochain {
            degree: self.degree,
            values,
        })
    }

    /// `⟨c, z⟩ = Σ k_σ c(σ)`.
    pub fn pair(
        &self,
        family: &SingularFamily,
        z: &SingularChain,
    ) -> Result<Scalar, ComparisonError> {
        if z.degree() != self.degree {
            return Err(ComparisonError::DegreeMismatch {
                expected: self.degree,
                found: z.degree(),
            });
        }
        let mut acc = Scalar::zero();
        for (&idx, &k) in z.terms() {
            acc = acc.add(&self.value(family, idx)?.scale_int(k));
        }
        Ok(acc)
    }
}

/// `ξ(ω)` on every `p`-simplex of the family.
pub fn xi_cochain(
    omega: &AlgebraicForm,
    family: &SingularFamily,
    options: &QuadratureOptions,
) -> Result<FamilyCochain, ComparisonError> {
    let p = omega.degree();
    let mut values = BTreeMap::new();
    for idx in family.simplices_of_dimension(p) {
        values.insert(idx, xi(omega, family.simplex(idx), options)?);
    }
    Ok(FamilyCochain { degree: p, values })
}

/// `(a ∪ b)(σ) = a(front p-face) · b(back q-face)` on every `(p+q)`-simplex.
pub fn singular_aw_cup(
    a: &FamilyCochain,
    b: &FamilyCochain,
    family: &SingularFamily,
) -> Result<FamilyCochain, ComparisonError> {
    let (p, q) = (a.degree, b.degree);
    let mut values = BTreeMap::new();
    for idx in family.simplices_of_dimension(p + q) {
        let front = a.value(family, family.front_face(idx, p))?;
        let back = b.value(family, family.back_face(idx, q))?;
        values.insert(idx, front.mul(back));
    }
    Ok(FamilyCochain {
        degree: p + q,
        values,
    })
}

/// `ξ(dω)(σ) - Σ (-1)^i ξ(ω)(∂_i σ)`.
pub fn check_chain_map(
    omega: &AlgebraicForm,
    sigma: &ParamSimplex,
    options: &QuadratureOptions,
) -> Result<Scalar, ComparisonError> {
    let n = sigma.dimension();
    if n != omega.degree() + 1 {
        return Err(ComparisonError::DegreeMismatch {
            expected: n.saturating_sub(1),
            found: omega.degree(),
        });
    }
    let mut residual = xi(&omega.differential(), sigma, options)?;
    for i in 0..=n {
        let v = xi(omega, &sigma.face(i), options)?;
        residual = if i % 2 == 0 {
            residual.sub(&v)
        } else {
            residual.add(&v)
        };
    }
    Ok(residual)
}

/// `μ(σ∘h)(ω) - h^* μ(σ)(ω)`.
pub fn check_naturality(
    sigma: &ParamSimplex,
    h: &DeltaMorphism,
    omega: &AlgebraicForm,
) -> Result<PolyForm, ComparisonError> {
    let lhs = mu(&sigma.compose(h), omega)?;
    let rhs = pullback_delta(h, &mu(sigma, omega)?)?;
    Ok(lhs.sub(&rhs)?.simplified())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multiplicativity {
    /// `⟨ξ(ω₁ ∧ ω₂), z⟩`.
    pub lhs: Scalar,
    /// `⟨ξω₁ ∪ ξω₂, z⟩`.
    pub rhs: Scalar,
    pub residual: Scalar,
}

pub fn check_multiplicativity(
    omega1: &AlgebraicForm,
    omega2: &AlgebraicForm,
    family: &SingularFamily,
    z: &SingularChain,
    options: &QuadratureOptions,
) -> Result<Multiplicativity, ComparisonError> {
    if !z.is_cycle(family) {
        return Err(ComparisonError::NotACycle);
    }
    for w in [omega1, omega2] {
        if !w.is_closed() {
            return Err(ComparisonError::NotClosedForm(w.display()));
        }
    }
    let degree = omega1.degree() + omega2.degree();
    if z.degree() != degree {
        return Err(ComparisonError::DegreeMismatch {
            expected: degree,
            found: z.degree(),
        });
    }
    let product = omega1.wedge(omega2)?;
    let lhs = xi_cochain(&product, family, options)?.pair(family, z)?;
    let cup = singular_aw_cup(
        &xi_cochain(omega1, family, options)?,
        &xi_cochain(omega2, family, options)?,
        family,
    )?;
    let rhs = cup.pair(family, z)?;
    let residual = lhs.sub(&rhs);
    Ok(Multiplicativity { lhs, rhs, residual })
}

#[cfg(test)]
mod tests;
