//! Acceptance suite: one PASS/FAIL line per criterion, exit status nonzero on any failure.

use std::f64::consts::PI;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use derham::comparison::fixtures::{
    circle, circle_arc, circle_loop, circle_x_points, circle_x_points_loop, line, plane, torus,
    torus_cycle, two_points,
};
use derham::comparison::{
    check_chain_map, check_multiplicativity, check_naturality, xi, xi_cochain, ParamSimplex,
    SingularChain, SingularFamily,
};
use derham::derham::{truncated_cohomology, AlgebraicForm, FpAlgebra};
use derham::linalg::{rank, SparseMatrix};
use derham::random::{
    random_algebraic_form, random_cochain, random_form, random_morphism, random_polynomial_simplex,
};
use derham::scenario::BUILTINS;
use derham::simplex_forms::{
    extend_from_boundary, forms_complex_cohomology, poincare_homotopy, tau, tau_family,
    FormsFamily, PolyForm, QuadratureOptions, Scalar,
};
use derham::simplicial::{simplicial_cohomology, Cochain, FiniteSimplicialSet};
use derham::Rational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn form(alg: &Arc<FpAlgebra>, s: &str) -> AlgebraicForm {
    AlgebraicForm::parse(alg, s).expect("form parses")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn two_points_criterion() -> Outcome {
    let b = two_points();
    for n in [2, 3, 4] {
        let h0 = truncated_cohomology(&b, 0, n).map_err(err)?;
        ensure(h0.dimension == 2 && h0.stabilized, || {
            format!(
                "H⁰ at N={n}: dim {} stabilized {}",
                h0.dimension, h0.stabilized
            )
        })?;
        let h1 = truncated_cohomology(&b, 1, n).map_err(err)?;
        ensure(h1.dimension == 0, || {
            format!("H¹ at N={n}: dim {}", h1.dimension)
        })?;
    }
    let mut fam = SingularFamily::new(&b);
    let points = [q(1), q(-1)];
    let mut chains = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let idx = fam
            .add(
                &format!("pt{i}"),
                ParamSimplex::constant(&b, 0, std::slice::from_ref(x)).map_err(err)?,
            )
            .map_err(err)?;
        let mut z = SingularChain::zero(0);
        z.add_term(idx, 1);
        chains.push(z);
    }
    let idempotents = [form(&b, "(1 + x)/2"), form(&b, "(1 - x)/2")];
    let opts = QuadratureOptions::default();
    for (i, e) in idempotents.iter().enumerate() {
        let c = xi_cochain(e, &fam, &opts).map_err(err)?;
        for (j, z) in chains.iter().enumerate() {
            let expected = if i == j { q(1) } else { q(0) };
            let v = c.pair(&fam, z).map_err(err)?;
            ensure(v == Scalar::Exact(expected.clone()), || {
                format!("⟨ξ(e{i}), pt{j}⟩ = {v}, expected {expected}")
            })?;
        }
    }
    let mut products = 0;
    for a in &idempotents {
        for b2 in &idempotents {
            for z in &chains {
                let r = check_multiplicativity(a, b2, &fam, z, &opts).map_err(err)?;
                ensure(r.residual.is_exact_zero(), || {
                    format!("residual {}", r.residual)
                })?;
                products += 1;
            }
        }
    }
    Ok(format!("H⁰ = 2 (stabilized), H¹ = 0 for N = 2..4; identity pairing table; {products} exact zero residuals"))
}

fn poincare_criterion() -> Outcome {
    let b = line();
    for n in [2, 3, 4, 5] {
        let h1 = truncated_cohomology(&b, 1, n).map_err(err)?;
        ensure(h1.dimension == 0, || {
            format!("H¹(ℚ[x]) at N={n} has dimension {}", h1.dimension)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..50 {
        let n = rng.gen_range(1..=3);
        let p = rng.gen_range(0..=n);
        let a = random_form(n, p, 6, &mut rng);
        let lhs = poincare_homotopy(&a)
            .map_err(err)?
            .differential()
            .add(&poincare_homotopy(&a.differential()).map_err(err)?)
            .map_err(err)?;
        let mut rhs = a.clone();
        if p == 0 {
            let origin = a.value_at_vertex(0).ok_or("not a polynomial")?;
            rhs = rhs.sub(&PolyForm::constant(n, origin)).map_err(err)?;
        }
        ensure(lhs.sub(&rhs).map_err(err)?.simplified().is_zero(), || {
            format!("form #{k} on Δ^{n}: {a}")
        })?;
    }
    Ok("H¹(ℚ[x]) = 0 for N = 2..5; dκ + κd = id - ε∘ev₀ on 50 random forms".into())
}

fn stokes_criterion() -> Outcome {
    let b = plane();
    let opts = QuadratureOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..50 {
        let p = rng.gen_range(0..=1);
        let sigma = random_polynomial_simplex(&b, p + 1, &mut rng);
        let w = random_algebraic_form(&b, p, &mut rng);
        let r = check_chain_map(&w, &sigma, &opts).map_err(err)?;
        ensure(r.is_exact_zero(), || format!("pair #{k}: residual {r}"))?;
    }
    let c = circle();
    let mut worst: f64 = 0.0;
    for k in 0..4 {
        let arc = circle_arc(&c, k).map_err(err)?;
        for f in ["x", "x^2*y - 3*x", "y^3 + x*y"] {
            let r = check_chain_map(&form(&c, f), &arc, &opts).map_err(err)?;
            worst = worst.max(r.abs_value());
        }
    }
    ensure(worst < 1e-10, || format!("circle arc residual {worst:e}"))?;
    Ok(format!(
        "50 exact zero residuals over ℚ[x,y]; circle arcs max |residual| = {worst:.1e}"
    ))
}

fn naturality_criterion() -> Outcome {
    let b = plane();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..30 {
        let n = rng.gen_range(0..=3);
        let m = rng.gen_range(0..=3);
        let sigma = random_polynomial_simplex(&b, n, &mut rng);
        let h = random_morphism(m, n, &mut rng);
        let p = rng.gen_range(0..=2);
        let w = random_algebraic_form(&b, p, &mut rng);
        let r = check_naturality(&sigma, &h, &w).map_err(err)?;
        ensure(r.is_zero(), || format!("triple #{k}: residual {r}"))?;
    }
    Ok("μ(σ∘h) - h*μ(σ) = 0 on 30 random triples".into())
}

/// Angle swept by the `k`-th quarter arc: the parameter `a` sits at angle `2·arctan(a) + kπ/2`.
fn arc_angle_oracle(k: usize) -> f64 {
    let theta = |a: f64| 2.0 * a.atan() + k as f64 * PI / 2.0;
    theta(1.0) - theta(0.0)
}

fn circle_criterion() -> Outcome {
    let c = circle();
    let w = form(&c, "x*dy - y*dx");
    let mut fam = SingularFamily::new(&c);
    let z = circle_loop(&mut fam).map_err(err)?;
    let mut report = Vec::new();
    for order in [16, 24] {
        let opts = QuadratureOptions {
            order,
            ..QuadratureOptions::default()
        };
        let mut oracle = 0.0;
        for k in 0..4 {
            let arc = fam.simplex(fam.index(&format!("arc{k}")).map_err(err)?);
            let v = xi(&w, arc, &opts).map_err(err)?;
            let expected = arc_angle_oracle(k);
            ensure((v.value() - expected).abs() < 1e-9, || {
                format!("arc{k} at order {order}: {v} vs {expected}")
            })?;
            oracle += expected;
        }
        let total = xi_cochain(&w, &fam, &opts)
            .map_err(err)?
            .pair(&fam, &z)
            .map_err(err)?;
        let gap = (total.value() - oracle).abs();
        ensure(gap < 1e-8, || {
            format!("order {order}: pairing {total} vs oracle {oracle}")
        })?;
        report.push(format!(
            "order {order}: {:.10} (|Δ| = {gap:.1e})",
            total.value()
        ));
    }
    Ok(format!(
        "⟨ξ(x dy - y dx), loop⟩ vs Σ arctan oracle: {}",
        report.join(", ")
    ))
}

fn mixed_degree_criterion() -> Outcome {
    let b = circle_x_points();
    let mut fam = SingularFamily::new(&b);
    let on = circle_x_points_loop(&mut fam, 1).map_err(err)?;
    let off = circle_x_points_loop(&mut fam, 0).map_err(err)?;
    let s = form(&b, "s");
    let w = form(&b, "x*dy - y*dx");
    let opts = QuadratureOptions::default();
    let mut out = Vec::new();
    for (label, z, expected) in [("s = 1", &on, 2.0 * PI), ("s = 0", &off, 0.0)] {
        let r = check_multiplicativity(&s, &w, &fam, z, &opts).map_err(err)?;
        ensure(r.residual.abs_value() < 1e-8, || {
            format!("{label}: residual {}", r.residual)
        })?;
        ensure((r.lhs.value() - expected).abs() < 1e-8, || {
            format!("{label}: pairing {} vs {expected}", r.lhs)
        })?;
        out.push(format!(
            "{label}: pairing {:.10}, |residual| {:.1e}",
            r.lhs.value(),
            r.residual.abs_value()
        ));
    }
    Ok(out.join("; "))
}

fn torus_criterion() -> Outcome {
    let t = torus();
    let mut fam = SingularFamily::new(&t);
    let z = torus_cycle(&mut fam).map_err(err)?;
    ensure(z.terms().len() == 32 && z.is_cycle(&fam), || {
        "fundamental chain is not a 32-triangle cycle".into()
    })?;
    let a = form(&t, "x*dy - y*dx");
    let b = form(&t, "z*dw - w*dz");
    let r = check_multiplicativity(&a, &b, &fam, &z, &QuadratureOptions::default()).map_err(err)?;
    let expected = (2.0 * PI).powi(2);
    ensure(r.residual.abs_value() < 1e-6, || {
        format!("residual {}", r.residual)
    })?;
    ensure((r.lhs.value() - expected).abs() < 1e-4, || {
        format!("pairing {} vs (2π)² = {expected}", r.lhs)
    })?;
    Ok(format!(
        "⟨ξ(ω₁∧ω₂), z⟩ = {:.8}, |residual| = {:.1e}",
        r.lhs.value(),
        r.residual.abs_value()
    ))
}

fn tau_criterion() -> Outcome {
    let alpha = PolyForm::parse(2, "dt1").map_err(err)?;
    let beta = PolyForm::parse(2, "dt2").map_err(err)?;
    let wedge = tau(&alpha.wedge(&beta).map_err(err)?).map_err(err)?;
    let cup = tau(&alpha)
        .map_err(err)?
        .cup(&tau(&beta).map_err(err)?)
        .map_err(err)?;
    // Area of the unit right triangle, and the product of the edge increments of t1 on [0,1] and t2 on [1,2].
    let top = [0, 1, 2];
    ensure(wedge.get(&top) == Rational::new(1.into(), 2.into()), || {
        format!("τ(α∧β) = {}", wedge.get(&top))
    })?;
    ensure(cup.get(&top) == q(1), || {
        format!("τα ∪ τβ = {}", cup.get(&top))
    })?;

    let k = Arc::new(FiniteSimplicialSet::boundary_complex(2));
    let mut classes = Vec::new();
    for p in [0, 1] {
        let h = forms_complex_cohomology(&k, p, 3);
        let s = simplicial_cohomology(&k, p);
        ensure(h.dimension == 1 && s.dimension == 1 && h.stabilized, || {
            format!(
                "degree {p}: forms {} (stabilized {}), simplicial {}",
                h.dimension, h.stabilized, s.dimension
            )
        })?;
        let images = h
            .representatives
            .iter()
            .map(|r| {
                tau_family(r)
                    .map_err(err)
                    .and_then(|c| s.class_of(&c).map_err(err))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ensure(
            rank(&SparseMatrix::from_columns(s.dimension, &images)) == 1,
            || format!("H^{p}(τ) is not onto"),
        )?;
        classes.push(h.representatives.clone());
    }
    let mut products = 0;
    for (p, left) in classes.iter().enumerate() {
        for (q_, right) in classes.iter().enumerate() {
            let target = simplicial_cohomology(&k, p + q_);
            for a in left {
                for b in right {
                    let lhs = tau_family(&a.wedge(b).map_err(err)?).map_err(err)?;
                    let rhs = tau_family(a)
                        .map_err(err)?
                        .cup(&tau_family(b).map_err(err)?)
                        .map_err(err)?;
                    let (cl, cr) = (
                        target.class_of(&lhs).map_err(err)?,
                        target.class_of(&rhs).map_err(err)?,
                    );
                    ensure(cl == cr, || {
                        format!("product of degrees {p}, {q_}: {cl:?} vs {cr:?}")
                    })?;
                    products += 1;
                }
            }
        }
    }
    Ok(format!("on Δ[2]: τ(dt1∧dt2) = 1/2, τdt1 ∪ τdt2 = 1; on ∂Δ[2]: dims (1,1) in degrees 0,1, {products} products multiplicative"))
}

fn aw_criterion() -> Outcome {
    let k = Arc::new(FiniteSimplicialSet::standard_simplex(3));
    let one = Cochain::one(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..40 {
        let p = rng.gen_range(0..=3);
        let q_ = rng.gen_range(0..=3 - p);
        let r = rng.gen_range(0..=3 - p - q_);
        let (a, b, c) = (
            random_cochain(&k, p, &mut rng),
            random_cochain(&k, q_, &mut rng),
            random_cochain(&k, r, &mut rng),
        );
        let ab_c = a.cup(&b).and_then(|x| x.cup(&c)).map_err(err)?;
        let a_bc = b.cup(&c).and_then(|x| a.cup(&x)).map_err(err)?;
        ensure(ab_c == a_bc, || {
            format!("associativity fails on sample {i}")
        })?;
        ensure(
            one.cup(&a).map_err(err)? == a && a.cup(&one).map_err(err)? == a,
            || format!("unit fails on sample {i}"),
        )?;
        let sign = if p % 2 == 0 { q(1) } else { q(-1) };
        let lhs = a.cup(&b).map_err(err)?.coboundary();
        let rhs = a
            .coboundary()
            .cup(&b)
            .map_err(err)?
            .add(&a.cup(&b.coboundary()).map_err(err)?.scale(&sign))
            .map_err(err)?;
        ensure(lhs == rhs, || format!("Leibniz fails on sample {i}"))?;
    }
    let mut a = Cochain::zero(&k, 1);
    a.set(vec![0, 1], q(1)).map_err(err)?;
    let mut b = Cochain::zero(&k, 1);
    b.set(vec![1, 2], q(1)).map_err(err)?;
    let ab = a.cup(&b).map_err(err)?;
    let ba = b.cup(&a).map_err(err)?;
    ensure(
        ab.get(&[0, 1, 2]).is_one() && ba.get(&[0, 1, 2]).is_zero(),
        || "indicator witness did not separate".into(),
    )?;
    ensure(ab != ba.scale(&q(-1)), || "a∪b = -b∪a".into())?;
    Ok("associativity, unit and Leibniz on 40 samples; [01]* ∪ [12]* = 1 on [012] but [12]* ∪ [01]* = 0".into())
}

fn extension_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [2usize, 3] {
        let k = Arc::new(FiniteSimplicialSet::boundary_complex(n));
        for i in 0..20 {
            let q_ = rng.gen_range(0..n);
            let global = random_form(n, q_, 3, &mut rng);
            let fam = FormsFamily::restriction_of(&global, &k).map_err(err)?;
            let ext = extend_from_boundary(&fam).map_err(err)?;
            ensure(ext.is_polynomial(), || {
                format!("∂Δ[{n}] #{i}: extension is not polynomial")
            })?;
            ensure(
                FormsFamily::restriction_of(&ext, &k).map_err(err)? == fam,
                || format!("∂Δ[{n}] #{i}: round trip fails"),
            )?;
        }
    }
    Ok("20 random families on each of ∂Δ[2], ∂Δ[3] extend and restrict back exactly".into())
}

fn run_corpus(dir: &std::path::Path) -> Result<Vec<Vec<u8>>, String> {
    let exe = env!("CARGO_BIN_EXE_derham");
    let mut reports = Vec::new();
    for (name, _, _) in BUILTINS {
        let path = dir.join(format!("{name}.json"));
        let out = Command::new(exe)
            .args(["--builtin", name, "--report"])
            .arg(&path)
            .output()
            .map_err(err)?;
        ensure(out.status.code() == Some(0), || {
            format!("builtin {name} exited with {:?}", out.status.code())
        })?;
        reports.push(std::fs::read(&path).map_err(err)?);
    }
    Ok(reports)
}

fn determinism_criterion() -> Outcome {
    let base = std::env::temp_dir().join(format!("derham-acceptance-{}", std::process::id()));
    let (d1, d2) = (base.join("a"), base.join("b"));
    std::fs::create_dir_all(&d1).map_err(err)?;
    std::fs::create_dir_all(&d2).map_err(err)?;
    let first = run_corpus(&d1)?;
    let second = run_corpus(&d2)?;
    let _ = std::fs::remove_dir_all(&base);
    for ((name, _, _), (a, b)) in BUILTINS.iter().zip(first.iter().zip(&second)) {
        ensure(a == b, || format!("reports for {name} differ"))?;
    }
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!(
        "{} builtins exit 0 twice with byte-identical reports ({bytes} bytes)",
        BUILTINS.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("two points", Duration::from_secs(1), two_points_criterion),
        ("Poincaré lemma", Duration::from_secs(5), poincare_criterion),
        (
            "Stokes / chain map",
            Duration::from_secs(10),
            stokes_criterion,
        ),
        ("naturality", Duration::from_secs(5), naturality_criterion),
        ("circle pairing", Duration::from_secs(5), circle_criterion),
        (
            "multiplicativity, mixed degrees",
            Duration::from_secs(10),
            mixed_degree_criterion,
        ),
        (
            "multiplicativity, torus",
            Duration::from_secs(60),
            torus_criterion,
        ),
        ("τ behavior", Duration::from_secs(10), tau_criterion),
        (
            "Alexander–Whitney laws",
            Duration::from_secs(2),
            aw_criterion,
        ),
        (
            "boundary extension",
            Duration::from_secs(5),
            extension_criterion,
        ),
        (
            "determinism",
            Duration::from_secs(120),
            determinism_criterion,
        ),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= *budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; but took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {:2} PASS  {name} ({elapsed:.2?}): {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:2} FAIL  {name} ({elapsed:.2?}): {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
