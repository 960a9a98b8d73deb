//! Buchberger's algorithm for degrevlex Gröbner bases, with the product and chain
//! criteria, plus full normal-form reduction.

use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::{PolyError, Polynomial};

/// Default cap on the number of pending critical pairs.
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

/// Full reduction of `f` modulo `basis`: no term of the result is divisible by a
/// leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let leads: Vec<(Monomial, num_rational::BigRational)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut rest = f.clone();
    let mut remainder = Polynomial::zero(f.nvars());
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let factor = lm.quotient_of(&m);
                rest = &rest - &basis[k].mul_term(&factor, &(c / lc));
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                remainder.add_term(m, c);
            }
        }
    }
    remainder
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.recip());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.recip());
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `generators` (degrevlex).
///
/// Fails with [`PolyError::ResourceBudgetExceeded`] when more than `pair_budget`
/// critical pairs are pending at once.
pub fn groebner_basis_with_budget(
    generators: &[Polynomial],
    pair_budget: usize,
) -> Result<Vec<Polynomial>, PolyError> {
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // pending pairs, keyed by (lcm, i, j) so selection is the normal strategy
    let mut pending: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm = |p: &Polynomial| p.leading_monomial().expect("nonzero").clone();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((lm(&basis[i]).lcm(&lm(&basis[j])), i, j));
        }
    }
    if pending.len() > pair_budget {
        return Err(PolyError::ResourceBudgetExceeded {
            pending: pending.len(),
            budget: pair_budget,
        });
    }
    while let Some(entry) = pending.iter().next().cloned() {
        pending.remove(&entry);
        let (l, i, j) = entry;
        done.insert((i, j));
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.is_coprime(&lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j || !lm(&basis[k]).divides(&l) {
                return false;
            }
            let seen = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
            seen(i, k) && seen(j, k)
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let new_lm = lm(&r);
        let n = basis.len();
        basis.push(r);
        for (k, g) in basis[..n].iter().enumerate() {
            pending.insert((lm(g).lcm(&new_lm), k, n));
        }
        if pending.len() > pair_budget {
            return Err(PolyError::ResourceBudgetExceeded {
                pending: pending.len(),
                budget: pair_budget,
            });
        }
    }
    Ok(reduce_basis(basis))
}

pub fn groebner_basis(generators: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
    groebner_basis_with_budget(generators, DEFAULT_PAIR_BUDGET)
}

fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let m = g.leading_monomial().expect("nonzero").clone();
        if minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(&m))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(normal_form(&minimal[k], &others).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// Whether every generator reduces to zero modulo `basis`.
pub fn generates_within(generators: &[Polynomial], basis: &[Polynomial]) -> bool {
    generators.iter().all(|g| normal_form(g, basis).is_zero())
}
