//! Exact sparse linear algebra over the rationals.
//!
//! Everything here is exact: vectors are dense `Vec<Rational>`, matrices are stored as
//! sparse rows, and elimination never touches floating point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

pub type Vector = Vec<Rational>;

/// Below this size (in both dimensions) elimination runs on a dense copy.
pub const DENSE_THRESHOLD: usize = 64;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("d_next * d_prev is not zero")]
    CompositionNonzero,
    #[error("vector is not a cocycle")]
    NotACocycle,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

type SparseRow = Vec<(usize, Rational)>;

/// `row - factor * other`, both sorted by column.
fn sub_scaled(row: &SparseRow, factor: &Rational, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(factor * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row(row: &mut SparseRow, factor: &Rational) {
    for (_, v) in row.iter_mut() {
        *v *= factor;
    }
}

fn entry(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

pub fn to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(row: &SparseRow, len: usize) -> Vector {
    let mut out = vec![Rational::zero(); len];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A rectangular matrix stored as sparse rows with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut m = SparseMatrix::zeros(rows, cols);
        for (r, c, v) in triplets {
            let cur = m.get(r, c);
            m.set(r, c, cur + v);
        }
        m
    }

    pub fn from_dense(rows: &[Vector]) -> Self {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        let mut m = SparseMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = SparseMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column has wrong length");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of range"
        );
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row_sparse(&self, r: usize) -> SparseRow {
        self.data[r].iter().map(|(c, v)| (*c, v.clone())).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match matrix columns"
        );
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        out
    }
}

/// How elimination picks the pivot column of a freshly reduced row.
#[derive(Clone, Debug)]
pub enum PivotRule {
    /// The largest column index: gives a canonical reduced form for a fixed column order.
    Leading,
    /// Fewest nonzeros in the given static column counts, ties to the smaller index.
    MinFill(Vec<usize>),
}

/// An incrementally built, fully reduced row echelon basis.
///
/// Every stored row has coefficient one at its pivot and zeros at all other pivots.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    row_of_pivot: BTreeMap<usize, usize>,
    rule: PivotRule,
}

impl RowEchelon {
    pub fn new(ncols: usize, rule: PivotRule) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: BTreeMap::new(),
            rule,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot.contains_key(&col)
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce_sparse(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter(|(c, _)| self.is_pivot(*c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, v) in hits {
            let basis_row = &self.rows[self.row_of_pivot[&c]];
            row = sub_scaled(&row, &v, basis_row);
        }
        row
    }

    pub fn reduce(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.ncols);
        to_dense(&self.reduce_sparse(to_sparse(v)), self.ncols)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce_sparse(to_sparse(v)).is_empty()
    }

    /// Adds a row; returns its pivot column if it was independent of the current span.
    pub fn insert_sparse(&mut self, row: SparseRow) -> Option<usize> {
        let mut row = self.reduce_sparse(row);
        if row.is_empty() {
            return None;
        }
        let pivot = match &self.rule {
            PivotRule::Leading => row.last().expect("nonempty").0,
            PivotRule::MinFill(counts) => row
                .iter()
                .map(|(c, _)| *c)
                .min_by_key(|c| (counts.get(*c).copied().unwrap_or(0), *c))
                .expect("nonempty"),
        };
        let inv = entry(&row, pivot).expect("pivot present").recip();
        scale_row(&mut row, &inv);
        for existing in self.rows.iter_mut() {
            if let Some(v) = entry(existing, pivot).cloned() {
                *existing = sub_scaled(existing, &v, &row);
            }
        }
        self.row_of_pivot.insert(pivot, self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(row);
        Some(pivot)
    }

    pub fn insert(&mut self, v: &[Rational]) -> Option<usize> {
        assert_eq!(v.len(), self.ncols);
        self.insert_sparse(to_sparse(v))
    }

    /// Basis of the solution space of `row · x = 0` for all stored rows.
    ///
    /// The vector for free column `f` has a one at `f` and zeros at the other free
    /// columns, so coordinates of a kernel element are its values at the free columns.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(x) = entry(row, f) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| to_dense(r, self.ncols)).collect()
    }
}

fn dense_rref(m: &SparseMatrix) -> RowEchelon {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vector> = (0..nr).map(|r| to_dense(&m.row_sparse(r), nc)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..nc {
        let Some(p) = (top..nr).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(top, p);
        let inv = a[top][c].recip();
        for x in a[top].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[top].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == top || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        top += 1;
        if top == nr {
            break;
        }
    }
    let mut ech = RowEchelon::new(nc, PivotRule::Leading);
    for (k, &p) in pivots.iter().enumerate() {
        ech.row_of_pivot.insert(p, k);
        ech.pivots.push(p);
        ech.rows.push(to_sparse(&a[k]));
    }
    ech
}

fn sparse_rref(m: &SparseMatrix) -> RowEchelon {
    let mut counts = vec![0usize; m.cols()];
    for (_, c, _) in m.entries() {
        counts[c] += 1;
    }
    let mut ech = RowEchelon::new(m.cols(), PivotRule::MinFill(counts));
    for r in 0..m.rows() {
        ech.insert_sparse(m.row_sparse(r));
    }
    ech
}

/// Row reduction of `m`, dense below [`DENSE_THRESHOLD`] and sparse min-fill above.
pub fn row_reduce(m: &SparseMatrix) -> RowEchelon {
    if m.rows() < DENSE_THRESHOLD && m.cols() < DENSE_THRESHOLD {
        dense_rref(m)
    } else {
        sparse_rref(m)
    }
}

#[derive(Clone, Debug)]
pub struct KernelImage {
    pub kernel: Vec<Vector>,
    /// Columns of the input at pivot positions: a basis of the column space.
    pub image: Vec<Vector>,
    pub rank: usize,
}

pub fn kernel_image(m: &SparseMatrix) -> KernelImage {
    let ech = row_reduce(m);
    let mut pivots = ech.pivots().to_vec();
    pivots.sort_unstable();
    KernelImage {
        kernel: ech.kernel_basis(),
        image: pivots.iter().map(|&c| m.column(c)).collect(),
        rank: ech.rank(),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    row_reduce(m).rank()
}

/// Solves `A x = b` for a fixed list of generator columns `A`.
///
/// Keeps a triangular basis of the column span, each element remembering which
/// combination of generators produced it.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    dim: usize,
    ngens: usize,
    basis: Vec<(SparseRow, BTreeMap<usize, Rational>)>,
    by_lead: BTreeMap<usize, usize>,
}

impl SpanSolver {
    pub fn new(dim: usize, generators: &[Vector]) -> Self {
        let mut s = SpanSolver {
            dim,
            ngens: generators.len(),
            basis: Vec::new(),
            by_lead: BTreeMap::new(),
        };
        for (k, g) in generators.iter().enumerate() {
            assert_eq!(g.len(), dim, "generator has wrong length");
            let mut combo = BTreeMap::new();
            combo.insert(k, Rational::one());
            let (rest, combo) = s.eliminate(to_sparse(g), combo);
            if let Some((lead, lv)) = rest.last().cloned() {
                let inv = lv.recip();
                let mut rest = rest;
                scale_row(&mut rest, &inv);
                let combo = combo.into_iter().map(|(i, v)| (i, v * &inv)).collect();
                s.by_lead.insert(lead, s.basis.len());
                s.basis.push((rest, combo));
            }
        }
        s
    }

    fn eliminate(
        &self,
        mut v: SparseRow,
        mut combo: BTreeMap<usize, Rational>,
    ) -> (SparseRow, BTreeMap<usize, Rational>) {
        while let Some((lead, lv)) = v.last().cloned() {
            let Some(&k) = self.by_lead.get(&lead) else {
                break;
            };
            let (row, bcombo) = &self.basis[k];
            v = sub_scaled(&v, &lv, row);
            for (i, c) in bcombo {
                let e = combo.entry(*i).or_insert_with(Rational::zero);
                *e -= &lv * c;
            }
        }
        combo.retain(|_, c| !c.is_zero());
        (v, combo)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, target: &[Rational]) -> bool {
        self.eliminate(to_sparse(target), BTreeMap::new())
            .0
            .is_empty()
    }

    /// Coefficients `x` with `Σ x_k generator_k = target`, if `target` is in the span.
    pub fn solve(&self, target: &[Rational]) -> Option<Vector> {
        assert_eq!(target.len(), self.dim);
        let (rest, combo) = self.eliminate(to_sparse(target), BTreeMap::new());
        if !rest.is_empty() {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ngens];
        for (i, c) in combo {
            x[i] = -c;
        }
        Some(x)
    }
}

/// Coordinates of a cocycle in the representative basis, plus a coboundary witness.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassCoordinates {
    pub coordinates: Vector,
    /// `w` with `cocycle = Σ coordinates_i rep_i + d_prev · w`.
    pub witness: Vector,
}

/// `ker(d_next) / im(d_prev)` with explicit representatives and a membership solver.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dimension: usize,
    pub representatives: Vec<Vector>,
    d_next: SparseMatrix,
    solver: SpanSolver,
}

impl Cohomology {
    pub fn ambient_dimension(&self) -> usize {
        self.d_next.cols()
    }

    pub fn is_cocycle(&self, c: &[Rational]) -> bool {
        is_zero_vector(&self.d_next.mul_vec(c))
    }

    pub fn class_of(&self, c: &[Rational]) -> Result<ClassCoordinates, LinalgError> {
        if c.len() != self.ambient_dimension() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {}",
                c.len(),
                self.ambient_dimension()
            )));
        }
        if !self.is_cocycle(c) {
            return Err(LinalgError::NotACocycle);
        }
        let x = self
            .solver
            .solve(c)
            .expect("cocycles lie in span of representatives and coboundaries");
        let (coords, witness) = x.split_at(self.dimension);
        Ok(ClassCoordinates {
            coordinates: coords.to_vec(),
            witness: witness.to_vec(),
        })
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_trivial(&self, c: &[Rational]) -> Result<bool, LinalgError> {
        Ok(is_zero_vector(&self.class_of(c)?.coordinates))
    }
}

/// Cohomology at the middle of `V_prev --d_prev--> V --d_next--> V_next`.
pub fn cohomology_pair(
    d_prev: &SparseMatrix,
    d_next: &SparseMatrix,
) -> Result<Cohomology, LinalgError> {
    if d_prev.rows() != d_next.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "d_prev has {} rows but d_next has {} columns",
            d_prev.rows(),
            d_next.cols()
        )));
    }
    if !d_next.mul(d_prev).is_zero() {
        return Err(LinalgError::CompositionNonzero);
    }
    let dim = d_next.cols();
    let cycles = kernel_image(d_next).kernel;
    let boundaries: Vec<Vector> = (0..d_prev.cols()).map(|c| d_prev.column(c)).collect();
    let mut span = RowEchelon::new(dim, PivotRule::Leading);
    for b in &boundaries {
        span.insert(b);
    }
    let mut representatives = Vec::new();
    for z in cycles {
        if span.insert(&z).is_some() {
            representatives.push(z);
        }
    }
    let mut generators = representatives.clone();
    generators.extend(boundaries);
    let solver = SpanSolver::new(dim, &generators);
    Ok(Cohomology {
        dimension: representatives.len(),
        representatives,
        d_next: d_next.clone(),
        solver,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> SparseMatrix {
        SparseMatrix::from_triplets(
            rows,
            cols,
            (0..rows)
                .flat_map(|r| (0..cols).map(move |c| (r, c)))
                .filter_map(|(r, c)| {
                    if rng.gen_bool(density) {
                        Some((
                            r,
                            c,
                            Rational::new(
                                rng.gen_range(-5..=5).into(),
                                rng.gen_range(1..=3).into(),
                            ),
                        ))
                    } else {
                        None
                    }
                })
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let ki = kernel_image(&SparseMatrix::identity(2));
        assert!(ki.kernel.is_empty());
        assert_eq!(ki.rank, 2);
    }

    #[test]
    fn row_vector_kernel() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(1)]]);
        let ki = kernel_image(&m);
        assert_eq!(ki.rank, 1);
        assert_eq!(ki.kernel.len(), 1);
        let v = &ki.kernel[0];
        // proportional to (1, -1)
        assert_eq!(&v[0] + &v[1], q(0));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn empty_matrix() {
        let ki = kernel_image(&SparseMatrix::zeros(0, 0));
        assert!(ki.kernel.is_empty() && ki.image.is_empty());
        assert_eq!(ki.rank, 0);
        let ki = kernel_image(&SparseMatrix::zeros(0, 3));
        assert_eq!(ki.kernel.len(), 3);
    }

    #[test]
    fn random_kernels_multiply_back_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 6, 6, 0.4);
            let ki = kernel_image(&m);
            assert_eq!(ki.rank + ki.kernel.len(), 6);
            for v in &ki.kernel {
                assert!(is_zero_vector(&m.mul_vec(v)));
            }
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (rows, cols) in [(70, 80), (90, 66), (65, 65)] {
            let m = random_matrix(&mut rng, rows, cols, 0.05);
            let sparse = kernel_image(&m);
            let dense = dense_rref(&m);
            assert_eq!(sparse.rank, dense.rank());
            assert_eq!(sparse.kernel.len() + sparse.rank, cols);
            for v in &sparse.kernel {
                assert!(is_zero_vector(&m.mul_vec(v)));
            }
            // image vectors are independent and span the column space
            let img = SparseMatrix::from_columns(rows, &sparse.image);
            assert_eq!(rank(&img), sparse.rank);
        }
    }

    #[test]
    fn trivial_cohomology() {
        let h = cohomology_pair(&SparseMatrix::zeros(3, 0), &SparseMatrix::zeros(0, 3)).unwrap();
        assert_eq!(h.dimension, 3);
    }

    #[test]
    fn circle_degree_one() {
        // vertices 0,1,2; edges 01, 02, 12; (δf)(ab) = f(b) - f(a)
        let d0 = SparseMatrix::from_dense(&[
            vec![q(-1), q(1), q(0)],
            vec![q(-1), q(0), q(1)],
            vec![q(0), q(-1), q(1)],
        ]);
        let d1 = SparseMatrix::zeros(0, 3);
        let h1 = cohomology_pair(&d0, &d1).unwrap();
        assert_eq!(h1.dimension, 1);
        let h0 = cohomology_pair(&SparseMatrix::zeros(3, 0), &d0).unwrap();
        assert_eq!(h0.dimension, 1);
    }

    #[test]
    fn exact_sequence_has_no_cohomology() {
        let d_prev = SparseMatrix::from_dense(&[vec![q(1)], vec![q(1)]]);
        let d_next = SparseMatrix::from_dense(&[vec![q(1), q(-1)]]);
        assert_eq!(cohomology_pair(&d_prev, &d_next).unwrap().dimension, 0);
    }

    #[test]
    fn errors() {
        let d_prev = SparseMatrix::from_dense(&[vec![q(1)], vec![q(0)]]);
        let d_next = SparseMatrix::from_dense(&[vec![q(1), q(0)]]);
        assert_eq!(
            cohomology_pair(&d_prev, &d_next).unwrap_err(),
            LinalgError::CompositionNonzero
        );
        let h = cohomology_pair(&SparseMatrix::zeros(2, 0), &d_next).unwrap();
        assert_eq!(
            h.class_of(&[q(1), q(0)]).unwrap_err(),
            LinalgError::NotACocycle
        );
    }

    #[test]
    fn representatives_and_coboundary_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            // build d_next * d_prev = 0 by taking d_prev from the kernel of a random d_next
            let d_next = random_matrix(&mut rng, 3, 7, 0.5);
            let ker = kernel_image(&d_next).kernel;
            let take: Vec<Vector> = ker
                .iter()
                .take(ker.len().saturating_sub(1))
                .cloned()
                .collect();
            let mixed: Vec<Vector> = take
                .iter()
                .map(|v| {
                    let f = q(rng.gen_range(1..4));
                    v.iter().map(|x| x * &f).collect()
                })
                .collect();
            let d_prev = SparseMatrix::from_columns(7, &mixed);
            let h = cohomology_pair(&d_prev, &d_next).unwrap();
            for (i, r) in h.representatives.iter().enumerate() {
                assert!(h.is_cocycle(r));
                let cc = h.class_of(r).unwrap();
                for (j, c) in cc.coordinates.iter().enumerate() {
                    assert_eq!(*c, if i == j { q(1) } else { q(0) });
                }
                assert!(is_zero_vector(&cc.witness));
            }
            for z in &ker {
                let w: Vector = (0..d_prev.cols())
                    .map(|_| q(rng.gen_range(-3..=3)))
                    .collect();
                let shifted: Vector = z
                    .iter()
                    .zip(d_prev.mul_vec(&w))
                    .map(|(a, b)| a + b)
                    .collect();
                assert_eq!(
                    h.class_of(z).unwrap().coordinates,
                    h.class_of(&shifted).unwrap().coordinates
                );
                let cc = h.class_of(z).unwrap();
                let mut rebuilt = d_prev.mul_vec(&cc.witness);
                for (c, r) in cc.coordinates.iter().zip(&h.representatives) {
                    for (acc, x) in rebuilt.iter_mut().zip(r) {
                        *acc += c * x;
                    }
                }
                assert_eq!(&rebuilt, z);
            }
        }
    }
}
