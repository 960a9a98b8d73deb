//! Compatible families of polynomial forms on finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{integrate_exact, pullback_delta, FormsError, PolyForm};
use crate::exterior::{Form, IndexSet};
use crate::linalg::{self, cohomology_pair, row_reduce, Cohomology, SparseMatrix, Vector};
use crate::poly::{Monomial, Polynomial, RationalFunction};
use crate::simplicial::{Cochain, DeltaMorphism, FiniteSimplicialSet};
use crate::Rational;

/// A `q`-form on every nondegenerate simplex, compatible with all face maps.
#[derive(Clone, Debug, PartialEq)]
pub struct FormsFamily {
    complex: Arc<FiniteSimplicialSet>,
    degree: usize,
    forms: Vec<Vec<PolyForm>>,
}

impl FormsFamily {
    /// `forms[k][j]` lives on the `j`-th nondegenerate `k`-simplex.
    pub fn new(
        complex: &Arc<FiniteSimplicialSet>,
        degree: usize,
        forms: Vec<Vec<PolyForm>>,
    ) -> Result<Self, FormsError> {
        let levels = complex.dimension().map_or(0, |d| d + 1);
        if forms.len() != levels {
            return Err(FormsError::IncompatibleFamily(format!(
                "{} levels of forms for {levels} dimensions",
                forms.len()
            )));
        }
        let mut normalized = Vec::with_capacity(levels);
        for (k, level) in forms.into_iter().enumerate() {
            if level.len() != complex.count(k) {
                return Err(FormsError::IncompatibleFamily(format!(
                    "{} forms for {} simplices of dimension {k}",
                    level.len(),
                    complex.count(k)
                )));
            }
            let mut out = Vec::with_capacity(level.len());
            for f in level {
                if f.n() != k {
                    return Err(FormsError::DimensionMismatch(f.n(), k));
                }
                if f.is_zero() {
                    out.push(PolyForm::zero(k, degree));
                } else if f.degree() != degree {
                    return Err(FormsError::NotHomogeneous(format!(
                        "form of degree {} in a family of degree {degree}",
                        f.degree()
                    )));
                } else {
                    out.push(f.simplified());
                }
            }
            normalized.push(out);
        }
        let family = FormsFamily {
            complex: complex.clone(),
            degree,
            forms: normalized,
        };
        family.check_compatible()?;
        Ok(family)
    }

    pub fn from_fn(
        complex: &Arc<FiniteSimplicialSet>,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> PolyForm,
    ) -> Result<Self, FormsError> {
        let levels = complex.dimension().map_or(0, |d| d + 1);
        let forms = (0..levels)
            .map(|k| complex.nondegenerate(k).iter().map(|s| f(s)).collect())
            .collect();
        FormsFamily::new(complex, degree, forms)
    }

    /// Restrictions of a form on `Δ^n` to a complex whose vertices are among `0..=n`.
    pub fn restriction_of(
        alpha: &PolyForm,
        complex: &Arc<FiniteSimplicialSet>,
    ) -> Result<Self, FormsError> {
        if complex.nvertices() > alpha.n() + 1 {
            return Err(FormsError::DimensionMismatch(
                complex.nvertices() - 1,
                alpha.n(),
            ));
        }
        let mut err = None;
        let family = FormsFamily::from_fn(complex, alpha.degree(), |s| {
            let h = DeltaMorphism::new(alpha.n(), s.to_vec()).expect("vertex lists are increasing");
            pullback_delta(&h, alpha).unwrap_or_else(|e| {
                err = Some(e);
                PolyForm::zero(s.len() - 1, alpha.degree())
            })
        });
        match err {
            Some(e) => Err(e),
            None => family,
        }
    }

    pub fn zero(complex: &Arc<FiniteSimplicialSet>, degree: usize) -> Self {
        let levels = complex.dimension().map_or(0, |d| d + 1);
        let forms = (0..levels)
            .map(|k| vec![PolyForm::zero(k, degree); complex.count(k)])
            .collect();
        FormsFamily {
            complex: complex.clone(),
            degree,
            forms,
        }
    }

    fn check_compatible(&self) -> Result<(), FormsError> {
        for k in 1..self.forms.len() {
            for (j, s) in self.complex.nondegenerate(k).iter().enumerate() {
                let faces = self.complex.face_table(k, j);
                for (i, fj) in faces.into_iter().enumerate() {
                    let restricted = pullback_delta(&DeltaMorphism::face(k, i), &self.forms[k][j])?;
                    let on_face = &self.forms[k - 1][fj];
                    if !restricted.sub(on_face)?.simplified().is_zero() {
                        return Err(FormsError::IncompatibleFamily(format!(
                            "the form on {s:?} restricts to {restricted} on face {i}, which carries {on_face}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &Arc<FiniteSimplicialSet> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn forms(&self, k: usize) -> &[PolyForm] {
        self.forms.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// The form on a nondegenerate simplex.
    pub fn form_on(&self, s: &[usize]) -> Option<&PolyForm> {
        let j = self.complex.index_of(s)?;
        Some(&self.forms[s.len() - 1][j])
    }

    /// The form on any simplex, pulled back along the degeneracy for degenerate ones.
    pub fn evaluate(&self, s: &[usize]) -> Option<PolyForm> {
        if !self.complex.contains(s) {
            return None;
        }
        let mut support = s.to_vec();
        support.dedup();
        let values = s
            .iter()
            .map(|v| support.iter().position(|w| w == v).expect("in support"))
            .collect();
        let h = DeltaMorphism::new(support.len() - 1, values).expect("weakly increasing");
        pullback_delta(&h, self.form_on(&support)?).ok()
    }

    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(PolyForm::is_zero)
    }

    fn combine(
        &self,
        other: &FormsFamily,
        degree: usize,
        op: impl Fn(&PolyForm, &PolyForm) -> Result<PolyForm, FormsError>,
    ) -> Result<FormsFamily, FormsError> {
        if self.complex != other.complex {
            return Err(FormsError::IncompatibleFamily(
                "families live on different complexes".into(),
            ));
        }
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| op(x, y))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FormsFamily::from_parts(&self.complex, degree, forms))
    }

    fn from_parts(
        complex: &Arc<FiniteSimplicialSet>,
        degree: usize,
        forms: Vec<Vec<PolyForm>>,
    ) -> Self {
        let forms = forms
            .into_iter()
            .enumerate()
            .map(|(k, level)| {
                level
                    .into_iter()
                    .map(|f| {
                        if f.is_zero() {
                            PolyForm::zero(k, degree)
                        } else {
                            f.simplified()
                        }
                    })
                    .collect()
            })
            .collect();
        FormsFamily {
            complex: complex.clone(),
            degree,
            forms,
        }
    }

    pub fn add(&self, other: &FormsFamily) -> Result<FormsFamily, FormsError> {
        if self.degree != other.degree {
            return Err(FormsError::NotHomogeneous(format!(
                "sum of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        self.combine(other, self.degree, PolyForm::add)
    }

    pub fn scale(&self, c: &Rational) -> FormsFamily {
        let forms = self
            .forms
            .iter()
            .map(|l| l.iter().map(|f| f.scale(c)).collect())
            .collect();
        FormsFamily::from_parts(&self.complex, self.degree, forms)
    }

    /// Simplexwise wedge product.
    pub fn wedge(&self, other: &FormsFamily) -> Result<FormsFamily, FormsError> {
        self.combine(other, self.degree + other.degree, PolyForm::wedge)
    }

    pub fn differential(&self) -> FormsFamily {
        let forms = self
            .forms
            .iter()
            .map(|l| l.iter().map(PolyForm::differential).collect())
            .collect();
        FormsFamily::from_parts(&self.complex, self.degree + 1, forms)
    }
}

/// Integrates a polynomial `p`-family over every nondegenerate `p`-simplex.
pub fn tau_family(family: &FormsFamily) -> Result<Cochain, FormsError> {
    let p = family.degree();
    let complex = family.complex();
    let mut values = Vec::new();
    for (s, f) in complex.nondegenerate(p).iter().zip(family.forms(p)) {
        values.push((s.clone(), integrate_exact(f)?));
    }
    Ok(Cochain::from_values(complex, p, values).expect("nondegenerate simplices of the complex"))
}

/// The forms `t^a dt_I` on `Δ^k` with `|a| + |I| ≤ N`, `|I| = q`.
struct LocalBasis {
    elements: Vec<(IndexSet, Monomial)>,
    index: HashMap<(IndexSet, Monomial), usize>,
}

impl LocalBasis {
    fn new(k: usize, q: usize, max_weight: u32) -> Self {
        let mut elements = Vec::new();
        if let Some(room) = max_weight.checked_sub(q as u32) {
            for s in IndexSet::all_of_size(k, q) {
                for m in Monomial::all_up_to_degree(k, room) {
                    elements.push((s, m));
                }
            }
        }
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        LocalBasis { elements, index }
    }

    fn form(
        &self,
        k: usize,
        entries: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Form<RationalFunction> {
        let mut f = Form::zero(k);
        for (i, x) in entries {
            if x.is_zero() {
                continue;
            }
            let (s, m) = &self.elements[i];
            f.add_term(
                *s,
                RationalFunction::from_poly(Polynomial::monomial(m.clone(), x)),
            );
        }
        f
    }

    fn coordinates(&self, alpha: &PolyForm) -> Option<Vec<(usize, Rational)>> {
        let mut out = Vec::new();
        for (s, c) in alpha.form().terms() {
            let c = c.simplified();
            for (m, x) in c.as_polynomial()?.terms() {
                out.push((*self.index.get(&(*s, m.clone()))?, x.clone()));
            }
        }
        Some(out)
    }
}

/// Families of degree `q` and weight at most `N`, as a subspace of the product over simplices.
struct Level {
    complex: Arc<FiniteSimplicialSet>,
    degree: usize,
    bases: Vec<LocalBasis>,
    offsets: Vec<Vec<usize>>,
    ambient: usize,
    free: Vec<usize>,
    kernel: Vec<Vector>,
}

impl Level {
    fn new(complex: &Arc<FiniteSimplicialSet>, q: usize, max_weight: u32) -> Self {
        let levels = complex.dimension().map_or(0, |d| d + 1);
        let bases: Vec<LocalBasis> = (0..levels)
            .map(|k| LocalBasis::new(k, q, max_weight))
            .collect();
        let mut offsets = Vec::with_capacity(levels);
        let mut ambient = 0;
        for (k, b) in bases.iter().enumerate() {
            let mut level = Vec::with_capacity(complex.count(k));
            for _ in 0..complex.count(k) {
                level.push(ambient);
                ambient += b.elements.len();
            }
            offsets.push(level);
        }
        let mut triplets = Vec::new();
        let mut row = 0;
        for k in 1..levels {
            let width = bases[k - 1].elements.len();
            if width == 0 {
                continue;
            }
            let restricted: Vec<Vec<Vec<(usize, Rational)>>> = (0..=k)
                .map(|i| {
                    let face = DeltaMorphism::face(k, i);
                    (0..bases[k].elements.len())
                        .map(|l| {
                            let basic =
                                PolyForm::from_form(bases[k].form(k, [(l, Rational::one())]), q)
                                    .expect("homogeneous");
                            let pulled =
                                pullback_delta(&face, &basic).expect("face of the simplex");
                            bases[k - 1]
                                .coordinates(&pulled)
                                .expect("faces preserve the weight")
                        })
                        .collect()
                })
                .collect();
            for j in 0..complex.count(k) {
                for (i, fj) in complex.face_table(k, j).into_iter().enumerate() {
                    for (l, entries) in restricted[i].iter().enumerate() {
                        for (l2, x) in entries {
                            triplets.push((row + l2, offsets[k][j] + l, x.clone()));
                        }
                    }
                    for l2 in 0..width {
                        triplets.push((row + l2, offsets[k - 1][fj] + l2, -Rational::one()));
                    }
                    row += width;
                }
            }
        }
        let echelon = row_reduce(&SparseMatrix::from_triplets(row, ambient, triplets));
        Level {
            complex: complex.clone(),
            degree: q,
            bases,
            offsets,
            ambient,
            free: echelon.free_columns(),
            kernel: echelon.kernel_basis(),
        }
    }

    fn dimension(&self) -> usize {
        self.free.len()
    }

    fn family(&self, coords: &[Rational]) -> FormsFamily {
        let mut v = vec![Rational::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.kernel) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        let forms = self
            .offsets
            .iter()
            .enumerate()
            .map(|(k, level)| {
                level
                    .iter()
                    .map(|&off| {
                        let n = self.bases[k].elements.len();
                        let entries = (0..n).map(|l| (l, v[off + l].clone()));
                        PolyForm::from_form(self.bases[k].form(k, entries), self.degree)
                            .expect("homogeneous")
                    })
                    .collect()
            })
            .collect();
        FormsFamily::from_parts(&self.complex, self.degree, forms)
    }

    /// Coordinates of a family of this level, `None` if its weight is too large.
    fn coordinates(&self, family: &FormsFamily) -> Option<Vector> {
        let mut v = vec![Rational::zero(); self.ambient];
        for (k, level) in self.offsets.iter().enumerate() {
            for (&off, f) in level.iter().zip(family.forms(k)) {
                if f.is_zero() {
                    continue;
                }
                for (l, x) in self.bases[k].coordinates(f)? {
                    v[off + l] += x;
                }
            }
        }
        Some(self.free.iter().map(|&c| v[c].clone()).collect())
    }

    fn differential_matrix(&self, next: &Level) -> SparseMatrix {
        let columns: Vec<Vector> = (0..self.dimension())
            .map(|j| {
                let mut e = vec![Rational::zero(); self.dimension()];
                e[j] = Rational::one();
                next.coordinates(&self.family(&e).differential())
                    .expect("d preserves the weight")
            })
            .collect();
        SparseMatrix::from_columns(next.dimension(), &columns)
    }
}

/// Cohomology of the complex of compatible polynomial families of weight at most `N`.
#[derive(Clone, Debug)]
pub struct FormsCohomology {
    pub degree: usize,
    pub max_weight: u32,
    pub dimension: usize,
    pub representatives: Vec<FormsFamily>,
    /// Whether weight `N - 1` already has the same classes.
    pub stabilized: bool,
    level: Arc<Level>,
    cohomology: Cohomology,
}

impl std::fmt::Debug for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Level")
            .field("degree", &self.degree)
            .field("dimension", &self.dimension())
            .finish()
    }
}

impl FormsCohomology {
    /// Class coordinates of a closed family of weight at most `N`.
    pub fn class_of(&self, family: &FormsFamily) -> Result<Vector, FormsError> {
        let level = &self.level;
        if family.degree() != self.degree || family.complex() != &level.complex {
            return Err(FormsError::IncompatibleFamily(
                "family does not belong to this complex".into(),
            ));
        }
        let coords = level.coordinates(family).ok_or_else(|| {
            FormsError::IncompatibleFamily(format!("family has weight above {}", self.max_weight))
        })?;
        self.cohomology
            .class_of(&coords)
            .map(|c| c.coordinates)
            .map_err(|e| FormsError::IncompatibleFamily(e.to_string()))
    }
}

fn cohomology_at(
    complex: &Arc<FiniteSimplicialSet>,
    p: usize,
    max_weight: u32,
) -> (Cohomology, Level) {
    let here = Level::new(complex, p, max_weight);
    let next = Level::new(complex, p + 1, max_weight);
    let d_next = here.differential_matrix(&next);
    let d_prev = match p.checked_sub(1) {
        Some(q) => Level::new(complex, q, max_weight).differential_matrix(&here),
        None => SparseMatrix::zeros(here.dimension(), 0),
    };
    let cohomology = cohomology_pair(&d_prev, &d_next).expect("d∘d = 0 on forms");
    (cohomology, here)
}

/// `H^p` of polynomial families on `K` truncated at weight `N`.
pub fn forms_complex_cohomology(
    complex: &Arc<FiniteSimplicialSet>,
    p: usize,
    max_weight: u32,
) -> FormsCohomology {
    let (cohomology, level) = cohomology_at(complex, p, max_weight);
    let representatives = cohomology
        .representatives
        .iter()
        .map(|v| level.family(v))
        .collect();
    let stabilized = match max_weight.checked_sub(1) {
        None => false,
        Some(prev_weight) => {
            let (prev, prev_level) = cohomology_at(complex, p, prev_weight);
            prev.dimension == cohomology.dimension && {
                let columns: Vec<Vector> = prev
                    .representatives
                    .iter()
                    .map(|v| {
                        let coords = level
                            .coordinates(&prev_level.family(v))
                            .expect("lower weight embeds");
                        cohomology.class_of(&coords).expect("closed").coordinates
                    })
                    .collect();
                linalg::rank(&SparseMatrix::from_columns(cohomology.dimension, &columns))
                    == cohomology.dimension
            }
        }
    };
    FormsCohomology {
        degree: p,
        max_weight,
        dimension: cohomology.dimension,
        representatives,
        stabilized,
        level: Arc::new(level),
        cohomology,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::simplicial_cohomology;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn compatibility_is_checked() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(1));
        let ok = FormsFamily::from_fn(&k, 0, |s| match s.len() {
            1 => PolyForm::constant(0, q(s[0] as i64)),
            _ => PolyForm::parse(1, "t").unwrap(),
        });
        assert!(ok.is_ok());
        let bad = FormsFamily::from_fn(&k, 0, |s| match s.len() {
            1 => PolyForm::constant(0, q(1)),
            _ => PolyForm::parse(1, "t").unwrap(),
        });
        assert!(matches!(bad, Err(FormsError::IncompatibleFamily(_))));
    }

    #[test]
    fn degenerate_evaluation() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(1));
        let fam = FormsFamily::restriction_of(&PolyForm::parse(1, "t*dt").unwrap(), &k).unwrap();
        let e = fam.evaluate(&[0, 1, 1]).unwrap();
        assert_eq!(e.n(), 2);
        assert!(fam.evaluate(&[1, 1]).unwrap().is_zero());
        let top = FormsFamily::restriction_of(&PolyForm::parse(1, "dt").unwrap(), &k).unwrap();
        assert!(top
            .evaluate(&[0, 1, 1])
            .unwrap()
            .wedge(&PolyForm::zero(2, 1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn tau_of_families() {
        let k = Arc::new(FiniteSimplicialSet::boundary_complex(2));
        let alpha = PolyForm::parse(2, "t1*dt2").unwrap();
        let fam = FormsFamily::restriction_of(&alpha, &k).unwrap();
        let c = tau_family(&fam).unwrap();
        // [0,1]: t2 = 0; [0,2]: t1 = 0; [1,2]: t1 = 1 - s, t2 = s gives ∫(1 - s) ds
        assert_eq!(c.get(&[0, 1]), q(0));
        assert_eq!(c.get(&[0, 2]), q(0));
        assert_eq!(c.get(&[1, 2]), Rational::new(1.into(), 2.into()));
        assert_eq!(tau_family(&fam.differential()).unwrap(), c.coboundary());
    }

    #[test]
    fn dimensions_match_simplicial() {
        for (k, max_p) in [
            (FiniteSimplicialSet::standard_simplex(2), 2),
            (FiniteSimplicialSet::boundary_complex(2), 1),
            (FiniteSimplicialSet::boundary_complex(3), 2),
        ] {
            let k = Arc::new(k);
            for p in 0..=max_p {
                let h = forms_complex_cohomology(&k, p, 3);
                let s = simplicial_cohomology(&k, p);
                assert_eq!(h.dimension, s.dimension, "p = {p}");
                assert!(h.stabilized, "p = {p}");
                let images: Vec<Vector> = h
                    .representatives
                    .iter()
                    .map(|r| s.class_of(&tau_family(r).unwrap()).unwrap())
                    .collect();
                assert_eq!(
                    linalg::rank(&SparseMatrix::from_columns(s.dimension, &images)),
                    s.dimension
                );
                for r in &h.representatives {
                    assert!(r.differential().is_zero());
                    assert_eq!(
                        h.class_of(r)
                            .unwrap()
                            .iter()
                            .filter(|x| !x.is_zero())
                            .count(),
                        1
                    );
                }
            }
        }
    }

    #[test]
    fn wedge_is_pointwise() {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(2));
        let a = FormsFamily::restriction_of(&PolyForm::parse(2, "dt1").unwrap(), &k).unwrap();
        let b = FormsFamily::restriction_of(&PolyForm::parse(2, "t1*dt2").unwrap(), &k).unwrap();
        let w = a.wedge(&b).unwrap();
        assert_eq!(
            w.form_on(&[0, 1, 2]).unwrap(),
            &PolyForm::parse(2, "t1*dt1^dt2").unwrap()
        );
        assert!(w.form_on(&[0, 1]).unwrap().is_zero());
    }
}
