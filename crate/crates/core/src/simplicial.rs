//! Finite simplicial sets given as ordered simplicial complexes, their cochains with the
//! Alexander–Whitney cup product, chains, and simplicial cohomology.
//!
//! A `k`-simplex is a weakly increasing vertex sequence `(v_0 ≤ … ≤ v_k)` whose set of
//! distinct vertices is a face of the complex. Repeated vertices mark degenerate simplices.
//! Face `∂_i` drops position `i`. Cup products use the front face `v_0..v_p` and the back
//! face `v_p..v_{p+q}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, SparseMatrix, Vector};
use crate::Rational;

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SimplicialError {
    #[error("cochains live on different simplicial sets")]
    ComplexMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Simplex),
    #[error("invalid map: {0}")]
    InvalidMap(String),
}

/// A morphism `[m] → [n]` of the simplex category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaMorphism {
    target: usize,
    values: Vec<usize>,
}

impl DeltaMorphism {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self, SimplicialError> {
        if values.is_empty() {
            return Err(SimplicialError::InvalidMap(
                "a map out of the empty ordinal".into(),
            ));
        }
        if values.iter().any(|v| *v > target) {
            return Err(SimplicialError::InvalidMap(format!(
                "value out of range [0, {target}]"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(SimplicialError::InvalidMap(format!(
                "{values:?} is not weakly increasing"
            )));
        }
        Ok(DeltaMorphism { target, values })
    }

    pub fn identity(n: usize) -> Self {
        DeltaMorphism {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `δ_i: [n-1] → [n]` missing `i`.
    pub fn face(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        DeltaMorphism {
            target: n,
            values: (0..=n).filter(|v| *v != i).collect(),
        }
    }

    /// The codegeneracy `σ_i: [n+1] → [n]` hitting `i` twice.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        DeltaMorphism {
            target: n,
            values: (0..=n + 1)
                .map(|v| if v <= i { v } else { v - 1 })
                .collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &DeltaMorphism) -> DeltaMorphism {
        assert_eq!(g.target, self.source(), "morphisms do not compose");
        DeltaMorphism {
            target: self.target,
            values: g.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

/// Simplicial set of an ordered simplicial complex on vertices `0..V`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSimplicialSet {
    nvertices: usize,
    nondegenerate: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

fn subsets_of(facet: &[usize], out: &mut std::collections::BTreeSet<Simplex>) {
    let k = facet.len();
    for mask in 1u64..(1u64 << k) {
        out.insert(
            (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| facet[i])
                .collect(),
        );
    }
}

impl FiniteSimplicialSet {
    /// Closure of the given facets under taking faces. Vertex lists are sorted first.
    pub fn from_facets(facets: &[Simplex]) -> Self {
        let mut all = std::collections::BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.len() <= 20, "facet too large");
            subsets_of(&f, &mut all);
        }
        let nvertices = all
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0] + 1)
            .max()
            .unwrap_or(0);
        let dim = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut nondegenerate = vec![Vec::new(); dim];
        for s in all {
            nondegenerate[s.len() - 1].push(s);
        }
        for level in nondegenerate.iter_mut() {
            level.sort();
        }
        let index = nondegenerate
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        FiniteSimplicialSet {
            nvertices,
            nondegenerate,
            index,
        }
    }

    /// `Δ[n]`.
    pub fn standard_simplex(n: usize) -> Self {
        FiniteSimplicialSet::from_facets(&[(0..=n).collect()])
    }

    /// `∂Δ[n]`: all faces except the top one.
    pub fn boundary_complex(n: usize) -> Self {
        assert!(n >= 1, "∂Δ[0] is empty");
        let facets: Vec<Simplex> = (0..=n)
            .map(|i| (0..=n).filter(|v| *v != i).collect())
            .collect();
        FiniteSimplicialSet::from_facets(&facets)
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    /// Largest dimension of a nondegenerate simplex, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.nondegenerate.len().checked_sub(1)
    }

    pub fn nondegenerate(&self, k: usize) -> &[Simplex] {
        self.nondegenerate.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.nondegenerate(k).len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.nondegenerate.len())
            .map(|k| {
                if k % 2 == 0 {
                    self.count(k) as i64
                } else {
                    -(self.count(k) as i64)
                }
            })
            .sum()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Whether `s` (possibly degenerate) is a simplex of the set.
    pub fn contains(&self, s: &[usize]) -> bool {
        if s.is_empty() || s.windows(2).any(|w| w[0] > w[1]) {
            return false;
        }
        let mut support = s.to_vec();
        support.dedup();
        self.index_of(&support).is_some()
    }

    /// Indices of the faces `∂_0 … ∂_k` of nondegenerate simplex `j` of dimension `k ≥ 1`.
    pub fn face_table(&self, k: usize, j: usize) -> Vec<usize> {
        let s = &self.nondegenerate[k][j];
        (0..=k)
            .map(|i| {
                self.index_of(&face(s, i))
                    .expect("complex is closed under faces")
            })
            .collect()
    }

    /// `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j`, checked on the face tables.
    pub fn check_simplicial_identities(&self) -> bool {
        for k in 2..self.nondegenerate.len() {
            for s in 0..self.count(k) {
                let faces = self.face_table(k, s);
                for j in 1..=k {
                    for i in 0..j {
                        let a = self.face_table(k - 1, faces[j])[i];
                        let b = self.face_table(k - 1, faces[i])[j - 1];
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Every `p`-simplex, degenerate ones included, in lexicographic order.
    pub fn all_simplices(&self, p: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=p.min(self.dimension().unwrap_or(0)) {
            for s in self.nondegenerate(k) {
                // weakly increasing surjections [p] -> [k]
                let mut stack: Vec<(Simplex, usize)> = vec![(vec![s[0]], 0)];
                while let Some((seq, at)) = stack.pop() {
                    if seq.len() == p + 1 {
                        if at == k {
                            out.push(seq);
                        }
                        continue;
                    }
                    let remaining = p + 1 - seq.len();
                    if k - at < remaining {
                        let mut stay = seq.clone();
                        stay.push(s[at]);
                        stack.push((stay, at));
                    }
                    if at < k {
                        let mut next = seq;
                        next.push(s[at + 1]);
                        stack.push((next, at + 1));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

pub fn face(s: &[usize], i: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, v)| *v)
        .collect()
}

pub fn is_degenerate(s: &[usize]) -> bool {
    s.windows(2).any(|w| w[0] == w[1])
}

fn sign(i: usize) -> Rational {
    if i.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// An unnormalized cochain: a value on every `p`-simplex, zero where absent.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    complex: Arc<FiniteSimplicialSet>,
    degree: usize,
    values: BTreeMap<Simplex, Rational>,
}

impl Cochain {
    pub fn zero(complex: &Arc<FiniteSimplicialSet>, degree: usize) -> Self {
        Cochain {
            complex: complex.clone(),
            degree,
            values: BTreeMap::new(),
        }
    }

    /// The coaugmentation unit: `1` on every vertex.
    pub fn one(complex: &Arc<FiniteSimplicialSet>) -> Self {
        let mut c = Cochain::zero(complex, 0);
        for v in complex.nondegenerate(0) {
            c.values.insert(v.clone(), Rational::one());
        }
        c
    }

    pub fn from_values(
        complex: &Arc<FiniteSimplicialSet>,
        degree: usize,
        values: impl IntoIterator<Item = (Simplex, Rational)>,
    ) -> Result<Self, SimplicialError> {
        let mut c = Cochain::zero(complex, degree);
        for (s, v) in values {
            c.set(s, v)?;
        }
        Ok(c)
    }

    pub fn complex(&self) -> &Arc<FiniteSimplicialSet> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, s: &[usize]) -> Rational {
        self.values.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, s: Simplex, v: Rational) -> Result<(), SimplicialError> {
        if s.len() != self.degree + 1 {
            return Err(SimplicialError::DegreeMismatch {
                expected: self.degree,
                found: s.len().saturating_sub(1),
            });
        }
        if !self.complex.contains(&s) {
            return Err(SimplicialError::NotASimplex(s));
        }
        if v.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
        Ok(())
    }

    pub fn support(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn check(&self, other: &Cochain) -> Result<(), SimplicialError> {
        if Arc::ptr_eq(&self.complex, &other.complex) || self.complex == other.complex {
            Ok(())
        } else {
            Err(SimplicialError::ComplexMismatch)
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, SimplicialError> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(SimplicialError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (s, v) in &other.values {
            let x = out.get(s) + v;
            out.set(s.clone(), x)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Cochain {
        let mut out = Cochain::zero(&self.complex, self.degree);
        if !c.is_zero() {
            out.values = self
                .values
                .iter()
                .map(|(s, v)| (s.clone(), v * c))
                .collect();
        }
        out
    }

    /// `(δc)(σ) = Σ_i (-1)^i c(∂_i σ)`.
    pub fn coboundary(&self) -> Cochain {
        let mut out = Cochain::zero(&self.complex, self.degree + 1);
        for s in self.complex.all_simplices(self.degree + 1) {
            let v: Rational = (0..=self.degree + 1)
                .map(|i| sign(i) * self.get(&face(&s, i)))
                .sum();
            if !v.is_zero() {
                out.values.insert(s, v);
            }
        }
        out
    }

    /// Alexander–Whitney cup product.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain, SimplicialError> {
        self.check(other)?;
        let (p, q) = (self.degree, other.degree);
        let mut out = Cochain::zero(&self.complex, p + q);
        for s in self.complex.all_simplices(p + q) {
            let a = self.get(&s[..=p]);
            if a.is_zero() {
                continue;
            }
            let v = a * other.get(&s[p..]);
            if !v.is_zero() {
                out.values.insert(s, v);
            }
        }
        Ok(out)
    }

    /// Values on the nondegenerate simplices, in their canonical order.
    pub fn nondegenerate_vector(&self) -> Vector {
        self.complex
            .nondegenerate(self.degree)
            .iter()
            .map(|s| self.get(s))
            .collect()
    }

    /// The normalized cochain with the given values on nondegenerate simplices.
    pub fn from_nondegenerate_vector(
        complex: &Arc<FiniteSimplicialSet>,
        degree: usize,
        v: &[Rational],
    ) -> Cochain {
        let simplices = complex.nondegenerate(degree);
        assert_eq!(v.len(), simplices.len());
        Cochain {
            complex: complex.clone(),
            degree,
            values: simplices
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(s, x)| (s.clone(), x.clone()))
                .collect(),
        }
    }

    /// Whether the cochain vanishes on degenerate simplices.
    pub fn is_normalized(&self) -> bool {
        self.values.keys().all(|s| !is_degenerate(s))
    }

    /// Pullback along a simplicial map given on vertices: `(f^*c)(σ) = c(f∘σ)`.
    pub fn pullback(
        &self,
        source: &Arc<FiniteSimplicialSet>,
        vertex_map: &[usize],
    ) -> Result<Cochain, SimplicialError> {
        let mut out = Cochain::zero(source, self.degree);
        for s in source.all_simplices(self.degree) {
            let image: Simplex = s.iter().map(|v| vertex_map[*v]).collect();
            if !self.complex.contains(&image) {
                return Err(SimplicialError::InvalidMap(format!(
                    "{s:?} maps to {image:?}, not a simplex"
                )));
            }
            let v = self.get(&image);
            if !v.is_zero() {
                out.values.insert(s, v);
            }
        }
        Ok(out)
    }

    /// Restriction along a morphism `h: [m] → [n]` of a cochain on `Δ[n]`.
    pub fn restrict_along(&self, h: &DeltaMorphism) -> Result<Cochain, SimplicialError> {
        let source = Arc::new(FiniteSimplicialSet::standard_simplex(h.source()));
        self.pullback(&source, h.values())
    }

    /// Restriction to a subcomplex sharing vertex labels.
    pub fn restrict(&self, sub: &Arc<FiniteSimplicialSet>) -> Result<Cochain, SimplicialError> {
        let identity: Vec<usize> = (0..sub.nvertices()).collect();
        self.pullback(sub, &identity)
    }

    /// Extension by zero from a subcomplex to `complex`.
    pub fn extend_by_zero(
        &self,
        complex: &Arc<FiniteSimplicialSet>,
    ) -> Result<Cochain, SimplicialError> {
        let mut out = Cochain::zero(complex, self.degree);
        for (s, v) in &self.values {
            out.set(s.clone(), v.clone())?;
        }
        Ok(out)
    }
}

/// Normalized coboundary `C^k_N → C^{k+1}_N` as a matrix over nondegenerate simplices.
pub fn normalized_coboundary_matrix(k: &FiniteSimplicialSet, p: usize) -> SparseMatrix {
    let rows = k.count(p + 1);
    let cols = k.count(p);
    let mut triplets = Vec::new();
    for (r, s) in k.nondegenerate(p + 1).iter().enumerate() {
        for i in 0..=p + 1 {
            let c = k
                .index_of(&face(s, i))
                .expect("faces of simplices are simplices");
            triplets.push((r, c, sign(i)));
        }
    }
    SparseMatrix::from_triplets(rows, cols, triplets)
}

fn unnormalized_coboundary_matrix(k: &FiniteSimplicialSet, p: usize) -> SparseMatrix {
    let sources = k.all_simplices(p);
    let position: HashMap<&Simplex, usize> =
        sources.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let targets = k.all_simplices(p + 1);
    let mut triplets = Vec::new();
    for (r, s) in targets.iter().enumerate() {
        for i in 0..=p + 1 {
            triplets.push((r, position[&face(s, i)], sign(i)));
        }
    }
    SparseMatrix::from_triplets(targets.len(), sources.len(), triplets)
}

#[derive(Clone, Debug)]
pub struct SimplicialCohomology {
    pub degree: usize,
    pub dimension: usize,
    pub representatives: Vec<Cochain>,
    cohomology: linalg::Cohomology,
}

impl SimplicialCohomology {
    /// Class coordinates of a normalized cocycle.
    pub fn class_of(&self, c: &Cochain) -> Result<Vector, linalg::LinalgError> {
        Ok(self
            .cohomology
            .class_of(&c.nondegenerate_vector())?
            .coordinates)
    }
}

/// `H^p` computed on normalized cochains.
pub fn simplicial_cohomology(k: &Arc<FiniteSimplicialSet>, p: usize) -> SimplicialCohomology {
    let d_prev = match p.checked_sub(1) {
        Some(pm) => normalized_coboundary_matrix(k, pm),
        None => SparseMatrix::zeros(k.count(0), 0),
    };
    let d_next = normalized_coboundary_matrix(k, p);
    let cohomology = linalg::cohomology_pair(&d_prev, &d_next).expect("δ∘δ = 0");
    let representatives = cohomology
        .representatives
        .iter()
        .map(|v| Cochain::from_nondegenerate_vector(k, p, v))
        .collect();
    SimplicialCohomology {
        degree: p,
        dimension: cohomology.dimension,
        representatives,
        cohomology,
    }
}

/// Dimension of `H^p` of the full unnormalized cochain complex.
pub fn unnormalized_cohomology_dimension(k: &FiniteSimplicialSet, p: usize) -> usize {
    let d_prev = match p.checked_sub(1) {
        Some(pm) => unnormalized_coboundary_matrix(k, pm),
        None => SparseMatrix::zeros(k.all_simplices(0).len(), 0),
    };
    let d_next = unnormalized_coboundary_matrix(k, p);
    linalg::cohomology_pair(&d_prev, &d_next)
        .expect("δ∘δ = 0")
        .dimension
}

/// A finite integer combination of simplices of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: BTreeMap<Simplex, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Simplex, i64)>,
    ) -> Result<Self, SimplicialError> {
        let mut c = Chain::zero(degree);
        for (s, n) in terms {
            if s.len() != degree + 1 {
                return Err(SimplicialError::DegreeMismatch {
                    expected: degree,
                    found: s.len().saturating_sub(1),
                });
            }
            c.add_term(s, n);
        }
        Ok(c)
    }

    pub fn add_term(&mut self, s: Simplex, n: i64) {
        assert_eq!(s.len(), self.degree + 1, "simplex has the wrong dimension");
        let e = self.terms.entry(s.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&s);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Simplex, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂σ = Σ_i (-1)^i ∂_i σ`; the boundary of a 0-chain is zero.
    pub fn boundary(&self) -> Chain {
        let Some(d) = self.degree.checked_sub(1) else {
            return Chain::zero(0);
        };
        let mut out = Chain::zero(d);
        for (s, n) in &self.terms {
            for i in 0..=self.degree {
                out.add_term(face(s, i), if i % 2 == 0 { *n } else { -*n });
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }
}

/// `⟨c, z⟩ = Σ n_σ c(σ)`.
pub fn pair(c: &Cochain, z: &Chain) -> Result<Rational, SimplicialError> {
    if c.degree != z.degree {
        return Err(SimplicialError::DegreeMismatch {
            expected: c.degree,
            found: z.degree,
        });
    }
    Ok(z.terms
        .iter()
        .map(|(s, n)| c.get(s) * Rational::from_integer((*n).into()))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn random_cochain(k: &Arc<FiniteSimplicialSet>, p: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let values: Vec<(Simplex, Rational)> = k
            .all_simplices(p)
            .into_iter()
            .map(|s| (s, q(rng.gen_range(-3..=3))))
            .collect();
        Cochain::from_values(k, p, values).unwrap()
    }

    #[test]
    fn counts() {
        let d0 = FiniteSimplicialSet::standard_simplex(0);
        assert_eq!((d0.count(0), d0.count(1)), (1, 0));
        let d2 = FiniteSimplicialSet::standard_simplex(2);
        assert_eq!((d2.count(0), d2.count(1), d2.count(2)), (3, 3, 1));
        let b2 = FiniteSimplicialSet::boundary_complex(2);
        assert_eq!((b2.count(0), b2.count(1), b2.count(2)), (3, 3, 0));
        assert_eq!(b2.euler_characteristic(), 0);
        let d4 = FiniteSimplicialSet::standard_simplex(4);
        assert_eq!(d4.count(2), 10);
        assert!(d4.check_simplicial_identities());
        // all p-simplices of Δ[n] are multisets: C(n+p+1, p+1)
        assert_eq!(d2.all_simplices(2).len(), 10);
        assert_eq!(
            FiniteSimplicialSet::standard_simplex(3)
                .all_simplices(1)
                .len(),
            10
        );
    }

    #[test]
    fn delta_morphisms() {
        let f = DeltaMorphism::face(2, 1);
        assert_eq!(f.values(), &[0, 2]);
        let s = DeltaMorphism::degeneracy(1, 0);
        assert_eq!(s.values(), &[0, 0, 1]);
        assert_eq!(
            s.compose(&DeltaMorphism::face(2, 0)),
            DeltaMorphism::identity(1)
        );
        assert!(DeltaMorphism::new(1, vec![1, 0]).is_err());
    }

    #[test]
    fn coboundary_examples() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(1));
        let v0 = Cochain::from_values(&k, 0, [(vec![0], q(1))]).unwrap();
        assert_eq!(v0.coboundary().get(&[0, 1]), q(-1));
        assert!(Cochain::one(&k).coboundary().is_zero());
        let k3 = Arc::new(FiniteSimplicialSet::standard_simplex(3));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let p = rng.gen_range(0..3);
            assert!(random_cochain(&k3, p, &mut rng)
                .coboundary()
                .coboundary()
                .is_zero());
        }
    }

    #[test]
    fn cup_laws() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(3));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let (p, qd, r) = (
                rng.gen_range(0..2),
                rng.gen_range(0..2),
                rng.gen_range(0..2),
            );
            let a = random_cochain(&k, p, &mut rng);
            let b = random_cochain(&k, qd, &mut rng);
            let c = random_cochain(&k, r, &mut rng);
            assert_eq!(
                a.cup(&b).unwrap().cup(&c).unwrap(),
                a.cup(&b.cup(&c).unwrap()).unwrap()
            );
            assert_eq!(Cochain::one(&k).cup(&b).unwrap(), b);
            assert_eq!(b.cup(&Cochain::one(&k)).unwrap(), b);
            let lhs = a.cup(&b).unwrap().coboundary();
            let rhs = a
                .coboundary()
                .cup(&b)
                .unwrap()
                .add(&a.cup(&b.coboundary()).unwrap().scale(&sign(p)))
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        let k1 = Arc::new(FiniteSimplicialSet::standard_simplex(1));
        let a = random_cochain(&k1, 0, &mut rng);
        let b = random_cochain(&k1, 1, &mut rng);
        assert_eq!(
            a.cup(&b).unwrap().get(&[0, 1]),
            a.get(&[0]) * b.get(&[0, 1])
        );
    }

    #[test]
    fn cohomology_of_small_complexes() {
        let d2 = Arc::new(FiniteSimplicialSet::standard_simplex(2));
        assert_eq!(
            (0..3)
                .map(|p| simplicial_cohomology(&d2, p).dimension)
                .collect::<Vec<_>>(),
            vec![1, 0, 0]
        );
        let b2 = Arc::new(FiniteSimplicialSet::boundary_complex(2));
        assert_eq!(
            (0..2)
                .map(|p| simplicial_cohomology(&b2, p).dimension)
                .collect::<Vec<_>>(),
            vec![1, 1]
        );
        let b3 = Arc::new(FiniteSimplicialSet::boundary_complex(3));
        assert_eq!(
            (0..3)
                .map(|p| simplicial_cohomology(&b3, p).dimension)
                .collect::<Vec<_>>(),
            vec![1, 0, 1]
        );
        for k in [&d2, &b2] {
            for p in 0..3 {
                assert_eq!(
                    unnormalized_cohomology_dimension(k, p),
                    simplicial_cohomology(k, p).dimension
                );
            }
        }
    }

    #[test]
    fn chains_and_pairing() {
        let edge = Chain::from_terms(1, [(vec![0, 1], 1)]).unwrap();
        assert_eq!(
            edge.boundary(),
            Chain::from_terms(0, [(vec![1], 1), (vec![0], -1)]).unwrap()
        );
        let loop_ =
            Chain::from_terms(1, [(vec![0, 1], 1), (vec![1, 2], 1), (vec![0, 2], -1)]).unwrap();
        assert!(loop_.is_cycle());
        let k = Arc::new(FiniteSimplicialSet::boundary_complex(2));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let c = random_cochain(&k, 0, &mut rng);
            assert!(pair(&c.coboundary(), &loop_).unwrap().is_zero());
            let w = random_cochain(&k, 1, &mut rng);
            assert_eq!(
                pair(&w.add(&c.coboundary()).unwrap(), &loop_),
                pair(&w, &loop_)
            );
        }
        assert!(pair(&Cochain::one(&k), &loop_).is_err());
        let t = Chain::from_terms(2, [(vec![0, 1, 2], 1)]).unwrap();
        assert!(t.boundary().boundary().is_zero());
    }

    #[test]
    fn extension_by_zero_and_restriction() {
        let big = Arc::new(FiniteSimplicialSet::standard_simplex(2));
        let small = Arc::new(FiniteSimplicialSet::boundary_complex(2));
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for p in 0..2 {
            let c = random_cochain(&small, p, &mut rng);
            let e = c.extend_by_zero(&big).unwrap();
            assert_eq!(e.restrict(&small).unwrap(), c);
        }
    }

    #[test]
    fn noncommutative_witness() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(2));
        let a = Cochain::from_values(&k, 1, [(vec![0, 1], q(1))]).unwrap();
        let b = Cochain::from_values(&k, 1, [(vec![1, 2], q(1))]).unwrap();
        let ab = a.cup(&b).unwrap();
        let ba = b.cup(&a).unwrap();
        assert_ne!(ab, ba);
        assert_ne!(ab, ba.scale(&q(-1)));
    }
}
