//! Algebras, rational simplices and explicit cycles used by the builtin corpus and tests.
//!
//! The circle is covered by four quarter arcs, each a rotation of
//! `t ↦ ((1 - t²)/(1 + t²), 2t/(1 + t²))` from `(1, 0)` to `(0, 1)`.

use std::sync::Arc;

use super::{ComparisonError, ParamSimplex, SingularChain, SingularFamily};
use crate::derham::FpAlgebra;
use crate::poly::{Polynomial, RationalFunction};
use crate::Rational;

fn algebra(names: &[&str], relations: &[&str]) -> Arc<FpAlgebra> {
    FpAlgebra::parse(names, relations).expect("fixture algebras are well formed")
}

/// `ℚ[x]/(x² - 1)`.
pub fn two_points() -> Arc<FpAlgebra> {
    algebra(&["x"], &["x^2 - 1"])
}

/// `ℚ[x]`.
pub fn line() -> Arc<FpAlgebra> {
    algebra(&["x"], &[])
}

/// `ℚ[x, y]`.
pub fn plane() -> Arc<FpAlgebra> {
    algebra(&["x", "y"], &[])
}

/// `ℚ[x, y]/(x² + y² - 1)`.
pub fn circle() -> Arc<FpAlgebra> {
    algebra(&["x", "y"], &["x^2 + y^2 - 1"])
}

/// `ℚ[x, y, s]/(x² + y² - 1, s² - s)`.
pub fn circle_x_points() -> Arc<FpAlgebra> {
    algebra(&["x", "y", "s"], &["x^2 + y^2 - 1", "s^2 - s"])
}

/// `ℚ[x, y, z, w]/(x² + y² - 1, z² + w² - 1)`.
pub fn torus() -> Arc<FpAlgebra> {
    algebra(&["x", "y", "z", "w"], &["x^2 + y^2 - 1", "z^2 + w^2 - 1"])
}

/// `ℚ[x, y, z]/(x² + y² + z² - 1)`.
pub fn sphere() -> Arc<FpAlgebra> {
    algebra(&["x", "y", "z"], &["x^2 + y^2 + z^2 - 1"])
}

/// Quarter arc `k` (rotated by `k·π/2`) evaluated at the parameter `a`.
pub fn quarter_arc(k: usize, a: &RationalFunction) -> [RationalFunction; 2] {
    let n = a.nvars();
    let one = RationalFunction::one(n);
    let a2 = a.mul(a);
    let den = one.add(&a2);
    let c = one.sub(&a2).div(&den).expect("1 + a² is not zero");
    let s = a
        .scale(&Rational::from_integer(2.into()))
        .div(&den)
        .expect("1 + a² is not zero");
    match k % 4 {
        0 => [c, s],
        1 => [s.neg(), c],
        2 => [c.neg(), s.neg()],
        _ => [s, c.neg()],
    }
}

fn parameter() -> RationalFunction {
    RationalFunction::from_poly(Polynomial::variable(1, 0))
}

/// The `k`-th quarter arc as a 1-simplex of the circle.
pub fn circle_arc(target: &Arc<FpAlgebra>, k: usize) -> Result<ParamSimplex, ComparisonError> {
    ParamSimplex::new(
        &format!("arc{k}"),
        target,
        1,
        quarter_arc(k, &parameter()).to_vec(),
    )
}

/// Adds the four arcs `arc0..arc3` and returns the loop `Σ arc_k`.
pub fn circle_loop(family: &mut SingularFamily) -> Result<SingularChain, ComparisonError> {
    let target = family.target().clone();
    let mut z = SingularChain::zero(1);
    for k in 0..4 {
        let idx = family.add(&format!("arc{k}"), circle_arc(&target, k)?)?;
        z.add_term(idx, 1);
    }
    Ok(z)
}

/// The circle loop in the component `s = value` of the circle times two points.
pub fn circle_x_points_loop(
    family: &mut SingularFamily,
    value: i64,
) -> Result<SingularChain, ComparisonError> {
    let target = family.target().clone();
    let mut z = SingularChain::zero(1);
    for k in 0..4 {
        let [x, y] = quarter_arc(k, &parameter());
        let s = RationalFunction::constant(1, Rational::from_integer(value.into()));
        let name = format!("arc{k}_s{value}");
        let idx = family.add(&name, ParamSimplex::new(&name, &target, 1, vec![x, y, s])?)?;
        z.add_term(idx, 1);
    }
    Ok(z)
}

/// Adds the 32-triangle fundamental cycle of the torus: each of the 16 squares
/// `arc_i × arc_j` is cut along its diagonal into a lower triangle `(0,0),(1,0),(1,1)`
/// and an upper triangle `(0,0),(0,1),(1,1)`, and the cycle is `Σ (lower - upper)`.
pub fn torus_cycle(family: &mut SingularFamily) -> Result<SingularChain, ComparisonError> {
    let target = family.target().clone();
    let t1 = RationalFunction::from_poly(Polynomial::variable(2, 0));
    let t2 = RationalFunction::from_poly(Polynomial::variable(2, 1));
    let diagonal = t1.add(&t2);
    let mut z = SingularChain::zero(2);
    for i in 0..4 {
        for j in 0..4 {
            for (label, a, b, sign) in [("lo", &diagonal, &t2, 1), ("up", &t2, &diagonal, -1)] {
                let [x, y] = quarter_arc(i, a);
                let [zc, w] = quarter_arc(j, b);
                let name = format!("sq{i}{j}_{label}");
                let idx = family.add(
                    &name,
                    ParamSimplex::new(&name, &target, 2, vec![x, y, zc, w])?,
                )?;
                z.add_term(idx, sign);
            }
        }
    }
    Ok(z)
}
