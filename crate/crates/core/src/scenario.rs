//! Scenario files, the builtin corpus and machine-readable reports.
//!
//! A scenario is a TOML document; the grammar is documented in the repository README.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::comparison::{
    check_chain_map, check_multiplicativity, check_naturality, validate_simplex, xi, xi_cochain,
    xi_via_tau, ParamSimplex, SingularChain, SingularFamily,
};
use crate::derham::{truncated_cohomology, AlgebraicForm, FpAlgebra};
use crate::linalg::{self, SparseMatrix};
use crate::random;
use crate::simplex_forms::{
    extend_from_boundary, forms_complex_cohomology, poincare_homotopy, tau, tau_family,
    FormsFamily, PolyForm, QuadratureOptions, Scalar, DEFAULT_QUADRATURE_ORDER,
};
use crate::simplicial::{simplicial_cohomology, Cochain, DeltaMorphism, FiniteSimplicialSet};
use crate::{parse_rational, Rational};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 20240;
pub const DEFAULT_MAX_WEIGHT: u32 = 3;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot parse scenario: {0}")]
    Parse(String),
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

impl ScenarioError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Builtin scenarios: name, one-line description, TOML source.
pub const BUILTINS: &[(&str, &str, &str)] = &[
    (
        "two_points",
        "ℚ[x]/(x² - 1): two idempotents, H⁰ of dimension 2, exact pairing table",
        include_str!("../scenarios/two_points.toml"),
    ),
    (
        "interval",
        "ℚ[x]: algebraic and simplex-side Poincaré lemma, exact Stokes and naturality",
        include_str!("../scenarios/interval.toml"),
    ),
    (
        "circle",
        "x² + y² = 1: H¹ of dimension 1 and the period 2π over four rational arcs",
        include_str!("../scenarios/circle.toml"),
    ),
    (
        "circle_x_points",
        "circle times two points: multiplicativity in mixed degrees",
        include_str!("../scenarios/circle_x_points.toml"),
    ),
    (
        "torus",
        "product of two circles: top-degree multiplicativity over a 32-triangle cycle",
        include_str!("../scenarios/torus.toml"),
    ),
    (
        "sphere",
        "x² + y² + z² = 1: cohomology and Stokes on a stereographic triangle",
        include_str!("../scenarios/sphere.toml"),
    ),
    (
        "tau_witness",
        "integration of simplex forms: cochain-level failure of multiplicativity, cohomology iso",
        include_str!("../scenarios/tau_witness.toml"),
    ),
    (
        "boundary_extension",
        "extension of compatible forms from ∂Δ[n] and the Alexander–Whitney laws",
        include_str!("../scenarios/boundary_extension.toml"),
    ),
];

pub fn builtin_source(name: &str) -> Result<&'static str, ScenarioError> {
    BUILTINS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, _, src)| *src)
        .ok_or_else(|| ScenarioError::UnknownBuiltin(name.to_string()))
}

// ---------------------------------------------------------------------------
// file format

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    format_version: u32,
    name: String,
    #[serde(default)]
    description: String,
    algebra: Option<AlgebraSpec>,
    #[serde(default)]
    forms: BTreeMap<String, String>,
    #[serde(default)]
    simplices: Vec<SimplexSpec>,
    #[serde(default)]
    chains: Vec<ChainSpec>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    variables: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexSpec {
    name: String,
    dimension: usize,
    components: Vec<String>,
    lane: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainSpec {
    name: String,
    degree: usize,
    terms: Vec<(String, i64)>,
}

/// An expected value: a number, or a string holding an exact rational.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Expect {
    Number(f64),
    Exact(String),
}

#[derive(Debug, Deserialize)]
struct CheckSpec {
    name: Option<String>,
    tolerance: Option<f64>,
    #[serde(flatten)]
    kind: CheckKind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckKind {
    Cohomology {
        degree: usize,
        max_weight: Option<u32>,
        expect_dimension: Option<usize>,
        expect_stabilized: Option<bool>,
    },
    Membership {
        dimension: usize,
        components: Vec<String>,
        expect_valid: bool,
    },
    Xi {
        form: String,
        simplex: String,
        expect: Option<Expect>,
    },
    Pairing {
        form: String,
        chain: String,
        expect: Option<Expect>,
    },
    PairingTable {
        forms: Vec<String>,
        chains: Vec<String>,
        expect: Vec<Vec<Expect>>,
    },
    ChainMap {
        form: String,
        simplex: String,
    },
    ChainMapRandom {
        variables: Vec<String>,
        count: usize,
    },
    Naturality {
        form: String,
        simplex: String,
        morphism: Vec<usize>,
    },
    NaturalityRandom {
        variables: Vec<String>,
        count: usize,
    },
    Multiplicativity {
        left: String,
        right: String,
        chain: String,
        expect_lhs: Option<Expect>,
        lhs_tolerance: Option<f64>,
    },
    PoincareHomotopy {
        count: usize,
        max_dimension: usize,
        max_degree: u32,
    },
    TauWitness {
        n: usize,
        alpha: String,
        beta: String,
    },
    TauCohomology {
        complex: String,
        n: usize,
        degrees: Vec<usize>,
        max_weight: Option<u32>,
    },
    Extension {
        n: usize,
        count: usize,
        max_degree: u32,
    },
    AwLaws {
        n: usize,
        count: usize,
    },
}

impl CheckKind {
    pub fn label(&self) -> &'static str {
        match self {
            CheckKind::Cohomology { .. } => "cohomology",
            CheckKind::Membership { .. } => "membership",
            CheckKind::Xi { .. } => "xi",
            CheckKind::Pairing { .. } => "pairing",
            CheckKind::PairingTable { .. } => "pairing_table",
            CheckKind::ChainMap { .. } => "chain_map",
            CheckKind::ChainMapRandom { .. } => "chain_map_random",
            CheckKind::Naturality { .. } => "naturality",
            CheckKind::NaturalityRandom { .. } => "naturality_random",
            CheckKind::Multiplicativity { .. } => "multiplicativity",
            CheckKind::PoincareHomotopy { .. } => "poincare_homotopy",
            CheckKind::TauWitness { .. } => "tau_witness",
            CheckKind::TauCohomology { .. } => "tau_cohomology",
            CheckKind::Extension { .. } => "extension",
            CheckKind::AwLaws { .. } => "aw_laws",
        }
    }
}

// ---------------------------------------------------------------------------
// loaded scenario

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub tolerance: Option<f64>,
    pub kind: CheckKind,
}

/// A parsed and validated scenario.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub algebra: Option<Arc<FpAlgebra>>,
    pub forms: BTreeMap<String, AlgebraicForm>,
    pub family: Option<SingularFamily>,
    pub chains: BTreeMap<String, SingularChain>,
    pub checks: Vec<Check>,
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation(msg.into())
}

fn parse_expect(e: &Expect) -> Result<(), ScenarioError> {
    match e {
        Expect::Number(_) => Ok(()),
        Expect::Exact(s) => parse_rational(s)
            .map(|_| ())
            .ok_or_else(|| invalid(format!("`{s}` is not a rational number"))),
    }
}

fn complex_of(kind: &str, n: usize) -> Result<FiniteSimplicialSet, ScenarioError> {
    match kind {
        "simplex" => Ok(FiniteSimplicialSet::standard_simplex(n)),
        "boundary" if n >= 1 => Ok(FiniteSimplicialSet::boundary_complex(n)),
        _ => Err(invalid(format!(
            "unknown complex `{kind}` of dimension {n}; use `simplex` or `boundary`"
        ))),
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(invalid(format!(
                "format_version {} is not supported (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        let algebra = match &file.algebra {
            None => None,
            Some(spec) => {
                let names: Vec<&str> = spec.variables.iter().map(String::as_str).collect();
                let rels: Vec<&str> = spec.relations.iter().map(String::as_str).collect();
                Some(
                    FpAlgebra::parse(&names, &rels)
                        .map_err(|e| invalid(format!("algebra: {e}")))?,
                )
            }
        };
        let need_algebra = |what: &str| {
            algebra
                .clone()
                .ok_or_else(|| invalid(format!("{what} needs an [algebra] section")))
        };

        let mut forms = BTreeMap::new();
        for (name, text) in &file.forms {
            let alg = need_algebra(&format!("form `{name}`"))?;
            let f = AlgebraicForm::parse(&alg, text)
                .map_err(|e| invalid(format!("form `{name}`: {e}")))?;
            forms.insert(name.clone(), f);
        }

        let mut family = None;
        if !file.simplices.is_empty() {
            let alg = need_algebra("simplices")?;
            let mut fam = SingularFamily::new(&alg);
            for s in &file.simplices {
                let comps: Vec<&str> = s.components.iter().map(String::as_str).collect();
                let sigma = ParamSimplex::parse(&s.name, &alg, s.dimension, &comps)
                    .map_err(|e| invalid(format!("simplex `{}`: {e}", s.name)))?;
                if let Some(lane) = &s.lane {
                    if lane != &sigma.lane().to_string() {
                        return Err(invalid(format!(
                            "simplex `{}` is in the {} lane, not `{lane}`",
                            s.name,
                            sigma.lane()
                        )));
                    }
                }
                fam.add(&s.name, sigma)
                    .map_err(|e| invalid(format!("simplex `{}`: {e}", s.name)))?;
            }
            family = Some(fam);
        }

        let mut chains = BTreeMap::new();
        for c in &file.chains {
            let fam = family
                .as_ref()
                .ok_or_else(|| invalid(format!("chain `{}` needs simplices", c.name)))?;
            let terms: Vec<(&str, i64)> = c.terms.iter().map(|(n, k)| (n.as_str(), *k)).collect();
            let chain = SingularChain::from_names(fam, c.degree, &terms)
                .map_err(|e| invalid(format!("chain `{}`: {e}", c.name)))?;
            chains.insert(c.name.clone(), chain);
        }

        let mut checks = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (i, spec) in file.checks.into_iter().enumerate() {
            let name = spec
                .name
                .clone()
                .unwrap_or_else(|| format!("{}#{i}", spec.kind.label()));
            if !seen.insert(name.clone()) {
                return Err(invalid(format!("check name `{name}` is used twice")));
            }
            let form = |f: &String| {
                forms.get(f).map(|_| ()).ok_or_else(|| {
                    invalid(format!("check `{name}` references undefined form `{f}`"))
                })
            };
            let simplex = |s: &String| {
                family
                    .as_ref()
                    .and_then(|fam| fam.index(s).ok())
                    .map(|_| ())
                    .ok_or_else(|| {
                        invalid(format!("check `{name}` references undefined simplex `{s}`"))
                    })
            };
            let chain = |c: &String| {
                chains.get(c).map(|_| ()).ok_or_else(|| {
                    invalid(format!("check `{name}` references undefined chain `{c}`"))
                })
            };
            match &spec.kind {
                CheckKind::Cohomology { .. } | CheckKind::Membership { .. } => {
                    need_algebra(&format!("check `{name}`"))?;
                }
                CheckKind::Xi {
                    form: f,
                    simplex: s,
                    expect,
                } => {
                    form(f)?;
                    simplex(s)?;
                    if let Some(e) = expect {
                        parse_expect(e)?;
                    }
                }
                CheckKind::Pairing {
                    form: f,
                    chain: c,
                    expect,
                } => {
                    form(f)?;
                    chain(c)?;
                    if let Some(e) = expect {
                        parse_expect(e)?;
                    }
                }
                CheckKind::PairingTable {
                    forms: fs,
                    chains: cs,
                    expect,
                } => {
                    fs.iter().try_for_each(form)?;
                    cs.iter().try_for_each(chain)?;
                    if expect.len() != fs.len() || expect.iter().any(|row| row.len() != cs.len()) {
                        return Err(invalid(format!(
                            "check `{name}`: expected table must be forms × chains"
                        )));
                    }
                    expect.iter().flatten().try_for_each(parse_expect)?;
                }
                CheckKind::ChainMap {
                    form: f,
                    simplex: s,
                } => {
                    form(f)?;
                    simplex(s)?;
                }
                CheckKind::Naturality {
                    form: f,
                    simplex: s,
                    morphism,
                } => {
                    form(f)?;
                    simplex(s)?;
                    let dim = family
                        .as_ref()
                        .map(|fam| fam.dimension(fam.index(s).expect("checked")))
                        .unwrap_or(0);
                    DeltaMorphism::new(dim, morphism.clone()).map_err(|e| {
                        invalid(format!("check `{name}`: morphism {morphism:?}: {e}"))
                    })?;
                }
                CheckKind::ChainMapRandom { variables, .. }
                | CheckKind::NaturalityRandom { variables, .. } => {
                    if variables.is_empty() {
                        return Err(invalid(format!(
                            "check `{name}` needs at least one variable"
                        )));
                    }
                }
                CheckKind::Multiplicativity {
                    left,
                    right,
                    chain: c,
                    expect_lhs,
                    ..
                } => {
                    form(left)?;
                    form(right)?;
                    chain(c)?;
                    if let Some(e) = expect_lhs {
                        parse_expect(e)?;
                    }
                }
                CheckKind::TauWitness { n, alpha, beta } => {
                    for text in [alpha, beta] {
                        PolyForm::parse(*n, text)
                            .map_err(|e| invalid(format!("check `{name}`: `{text}`: {e}")))?;
                    }
                }
                CheckKind::TauCohomology { complex, n, .. } => {
                    complex_of(complex, *n)?;
                }
                CheckKind::Extension { n, .. } => {
                    if *n == 0 {
                        return Err(invalid(format!("check `{name}`: ∂Δ[0] is empty")));
                    }
                }
                CheckKind::PoincareHomotopy { .. } | CheckKind::AwLaws { .. } => {}
            }
            checks.push(Check {
                name,
                tolerance: spec.tolerance,
                kind: spec.kind,
            });
        }

        Ok(Scenario {
            name: file.name,
            description: file.description,
            algebra,
            forms,
            family,
            chains,
            checks,
        })
    }

    pub fn builtin(name: &str) -> Result<Scenario, ScenarioError> {
        Scenario::parse(builtin_source(name)?)
    }
}

// ---------------------------------------------------------------------------
// running

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Only checks whose name or kind is listed run; the others are recorded as skipped.
    pub only: Option<Vec<String>>,
    pub max_weight: Option<u32>,
    pub quad_order: usize,
    pub tolerance: Option<f64>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            only: None,
            max_weight: None,
            quad_order: DEFAULT_QUADRATURE_ORDER,
            tolerance: None,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub values: BTreeMap<String, Value>,
    /// Wall-clock time; shown in the summary table but kept out of the report file.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub scenario: String,
    pub seed: u64,
    pub quad_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub checks: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One line per check, for standard output.
    pub fn summary_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(5);
        let kind_width = self
            .checks
            .iter()
            .map(|c| c.kind.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = format!("scenario {}\n", self.scenario);
        out += &format!(
            "  {:width$}  {:kind_width$}  status  {:>9}  note\n",
            "check", "kind", "time"
        );
        for c in &self.checks {
            let ms = c.elapsed.as_secs_f64() * 1000.0;
            out += &format!(
                "  {:width$}  {:kind_width$}  {:6}  {:>7.1}ms  {}\n",
                c.name,
                c.kind,
                c.status.to_string(),
                ms,
                c.reason.as_deref().unwrap_or("")
            );
        }
        out += &format!(
            "  {} passed, {} failed, {} skipped\n",
            self.passed, self.failed, self.skipped
        );
        out
    }
}

/// Runs every check of the scenario in declaration order.
pub fn run_scenario(scenario: &Scenario, options: &RunOptions) -> Report {
    let quad = QuadratureOptions {
        order: options.quad_order,
        ..QuadratureOptions::default()
    };
    let mut checks = Vec::new();
    for (i, check) in scenario.checks.iter().enumerate() {
        let label = check.kind.label();
        let selected = options
            .only
            .as_ref()
            .is_none_or(|only| only.iter().any(|o| o == &check.name || o == label));
        if !selected {
            checks.push(CheckReport {
                name: check.name.clone(),
                kind: label.to_string(),
                status: Status::Skip,
                reason: Some("not selected by --check".into()),
                tolerance: None,
                values: BTreeMap::new(),
                elapsed: Duration::ZERO,
            });
            continue;
        }
        let rng = ChaCha8Rng::seed_from_u64(options.seed.wrapping_add(i as u64));
        let mut ctx = Context {
            scenario,
            options,
            quad,
            rng,
            tolerance: options.tolerance.or(check.tolerance),
        };
        let start = Instant::now();
        let outcome = ctx.run(&check.kind);
        let elapsed = start.elapsed();
        let (status, reason, tolerance, values) = match outcome {
            Ok(o) => (
                if o.failures.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                join(o.failures),
                o.tolerance,
                o.values,
            ),
            Err(e) => (Status::Fail, Some(e), None, BTreeMap::new()),
        };
        checks.push(CheckReport {
            name: check.name.clone(),
            kind: label.to_string(),
            status,
            reason,
            tolerance,
            values,
            elapsed,
        });
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Report {
        format_version: FORMAT_VERSION,
        scenario: scenario.name.clone(),
        seed: options.seed,
        quad_order: options.quad_order,
        max_weight: options.max_weight,
        tolerance: options.tolerance,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        checks,
    }
}

fn join(failures: Vec<String>) -> Option<String> {
    if failures.is_empty() {
        None
    } else {
        Some(failures.join("; "))
    }
}

#[derive(Default)]
struct Outcome {
    values: BTreeMap<String, Value>,
    failures: Vec<String>,
    tolerance: Option<f64>,
}

impl Outcome {
    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }
}

fn scalar_value(s: &Scalar) -> Value {
    serde_json::to_value(s.to_json()).expect("scalars serialize")
}

fn rational_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

struct Context<'a> {
    scenario: &'a Scenario,
    options: &'a RunOptions,
    quad: QuadratureOptions,
    rng: ChaCha8Rng,
    tolerance: Option<f64>,
}

type CheckResult = Result<Outcome, String>;

impl Context<'_> {
    fn algebra(&self) -> Result<&Arc<FpAlgebra>, String> {
        self.scenario
            .algebra
            .as_ref()
            .ok_or_else(|| "scenario has no algebra".to_string())
    }

    fn family(&self) -> Result<&SingularFamily, String> {
        self.scenario
            .family
            .as_ref()
            .ok_or_else(|| "scenario has no simplices".to_string())
    }

    fn form(&self, name: &str) -> &AlgebraicForm {
        &self.scenario.forms[name]
    }

    /// Exact values get tolerance zero; approximate ones ten times their error estimate.
    fn tolerance_for(&self, s: &Scalar) -> f64 {
        match self.tolerance {
            Some(t) => t,
            None if s.is_exact() => 0.0,
            None => 10.0 * s.error(),
        }
    }

    /// Whether `s` matches `e` within `tol`; exact against exact compares rationals.
    fn matches(&self, s: &Scalar, e: &Expect, tol: f64) -> bool {
        match (s, e) {
            (Scalar::Exact(r), Expect::Exact(text)) if self.tolerance.is_none() => {
                parse_rational(text).as_ref() == Some(r)
            }
            (_, Expect::Exact(text)) => {
                let target = parse_rational(text)
                    .and_then(|r| r.to_f64())
                    .unwrap_or(f64::NAN);
                (s.value() - target).abs() <= tol
            }
            (_, Expect::Number(x)) => (s.value() - x).abs() <= tol,
        }
    }

    fn small(&self, s: &Scalar, tol: f64) -> bool {
        match s {
            Scalar::Exact(r) => r.is_zero() || r.abs().to_f64().unwrap_or(f64::INFINITY) <= tol,
            Scalar::Approx { value, .. } => value.abs() <= tol,
        }
    }

    fn run(&mut self, kind: &CheckKind) -> CheckResult {
        match kind.clone() {
            CheckKind::Cohomology {
                degree,
                max_weight,
                expect_dimension,
                expect_stabilized,
            } => self.cohomology(degree, max_weight, expect_dimension, expect_stabilized),
            CheckKind::Membership {
                dimension,
                components,
                expect_valid,
            } => self.membership(dimension, &components, expect_valid),
            CheckKind::Xi {
                form,
                simplex,
                expect,
            } => self.xi(&form, &simplex, expect),
            CheckKind::Pairing {
                form,
                chain,
                expect,
            } => self.pairing(&form, &chain, expect),
            CheckKind::PairingTable {
                forms,
                chains,
                expect,
            } => self.pairing_table(&forms, &chains, &expect),
            CheckKind::ChainMap { form, simplex } => self.chain_map(&form, &simplex),
            CheckKind::ChainMapRandom { variables, count } => {
                self.chain_map_random(&variables, count)
            }
            CheckKind::Naturality {
                form,
                simplex,
                morphism,
            } => self.naturality(&form, &simplex, morphism),
            CheckKind::NaturalityRandom { variables, count } => {
                self.naturality_random(&variables, count)
            }
            CheckKind::Multiplicativity {
                left,
                right,
                chain,
                expect_lhs,
                lhs_tolerance,
            } => self.multiplicativity(&left, &right, &chain, expect_lhs, lhs_tolerance),
            CheckKind::PoincareHomotopy {
                count,
                max_dimension,
                max_degree,
            } => self.poincare(count, max_dimension, max_degree),
            CheckKind::TauWitness { n, alpha, beta } => self.tau_witness(n, &alpha, &beta),
            CheckKind::TauCohomology {
                complex,
                n,
                degrees,
                max_weight,
            } => self.tau_cohomology(&complex, n, &degrees, max_weight),
            CheckKind::Extension {
                n,
                count,
                max_degree,
            } => self.extension(n, count, max_degree),
            CheckKind::AwLaws { n, count } => self.aw_laws(n, count),
        }
    }

    fn cohomology(
        &mut self,
        degree: usize,
        max_weight: Option<u32>,
        expect_dim: Option<usize>,
        expect_stab: Option<bool>,
    ) -> CheckResult {
        let alg = self.algebra()?.clone();
        let n = self
            .options
            .max_weight
            .or(max_weight)
            .unwrap_or(DEFAULT_MAX_WEIGHT);
        let h = truncated_cohomology(&alg, degree, n).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        o.set("degree", degree);
        o.set("max_weight", n);
        o.set("dimension", h.dimension);
        o.set("stabilized", h.stabilized);
        o.set(
            "representatives",
            h.representatives
                .iter()
                .map(|r| r.display())
                .collect::<Vec<_>>(),
        );
        if let Some(d) = expect_dim {
            o.require(h.dimension == d, || {
                format!("dimension {} but expected {d}", h.dimension)
            });
        }
        if let Some(s) = expect_stab {
            o.require(h.stabilized == s, || {
                format!("stabilized = {} but expected {s}", h.stabilized)
            });
        }
        Ok(o)
    }

    fn membership(
        &mut self,
        dimension: usize,
        components: &[String],
        expect_valid: bool,
    ) -> CheckResult {
        let alg = self.algebra()?.clone();
        let comps: Vec<&str> = components.iter().map(String::as_str).collect();
        let mut o = Outcome::default();
        let sigma = ParamSimplex::parse("membership", &alg, dimension, &comps);
        let valid = match &sigma {
            Ok(s) => {
                let cert = validate_simplex(s).expect("constructed simplices are valid");
                o.set("denominator_powers", cert.denominator_powers.clone());
                true
            }
            Err(crate::comparison::ComparisonError::InvalidSimplex {
                generator,
                residual,
                ..
            }) => {
                o.set("generator", *generator);
                o.set("residual", residual.clone());
                false
            }
            Err(e) => return Err(e.to_string()),
        };
        o.set("valid", valid);
        o.require(valid == expect_valid, || {
            format!("valid = {valid} but expected {expect_valid}")
        });
        Ok(o)
    }

    fn xi(&mut self, form: &str, simplex: &str, expect: Option<Expect>) -> CheckResult {
        let fam = self.family()?;
        let sigma = fam.simplex(fam.index(simplex).map_err(|e| e.to_string())?);
        let w = self.form(form);
        let direct = xi(w, sigma, &self.quad).map_err(|e| e.to_string())?;
        let routed = xi_via_tau(w, sigma, &self.quad).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        o.set("lane", sigma.lane().to_string());
        o.set("value", scalar_value(&direct));
        o.set("via_tau", scalar_value(&routed));
        let gap = direct.sub(&routed);
        let gap_tol = if gap.is_exact() {
            0.0
        } else {
            10.0 * gap.error()
        };
        o.require(self.small(&gap, gap_tol), || {
            format!("ξ and τ∘μ disagree by {gap}")
        });
        if let Some(e) = expect {
            let tol = self.tolerance_for(&direct);
            o.tolerance = Some(tol);
            o.require(self.matches(&direct, &e, tol), || {
                format!("value {direct} does not match {e:?}")
            });
        }
        Ok(o)
    }

    fn pair(&self, form: &str, chain: &str) -> Result<Scalar, String> {
        let fam = self.family()?;
        let c = xi_cochain(self.form(form), fam, &self.quad).map_err(|e| e.to_string())?;
        c.pair(fam, &self.scenario.chains[chain])
            .map_err(|e| e.to_string())
    }

    fn pairing(&mut self, form: &str, chain: &str, expect: Option<Expect>) -> CheckResult {
        let v = self.pair(form, chain)?;
        let mut o = Outcome::default();
        o.set("pairing", scalar_value(&v));
        if let Some(e) = expect {
            let tol = self.tolerance_for(&v);
            o.tolerance = Some(tol);
            o.require(self.matches(&v, &e, tol), || {
                format!("pairing {v} does not match {e:?}")
            });
        }
        Ok(o)
    }

    fn pairing_table(
        &mut self,
        forms: &[String],
        chains: &[String],
        expect: &[Vec<Expect>],
    ) -> CheckResult {
        let mut o = Outcome::default();
        let mut table = Vec::new();
        let mut max_tol: f64 = 0.0;
        for (f, row) in forms.iter().zip(expect) {
            let mut out_row = Vec::new();
            for (c, e) in chains.iter().zip(row) {
                let v = self.pair(f, c)?;
                let tol = self.tolerance_for(&v);
                max_tol = max_tol.max(tol);
                o.require(self.matches(&v, e, tol), || {
                    format!("⟨ξ({f}), {c}⟩ = {v}, expected {e:?}")
                });
                out_row.push(scalar_value(&v));
            }
            table.push(Value::Array(out_row));
        }
        o.set("forms", forms.to_vec());
        o.set("chains", chains.to_vec());
        o.set("table", table);
        o.tolerance = Some(max_tol);
        Ok(o)
    }

    fn chain_map(&mut self, form: &str, simplex: &str) -> CheckResult {
        let fam = self.family()?;
        let sigma = fam.simplex(fam.index(simplex).map_err(|e| e.to_string())?);
        let r = check_chain_map(self.form(form), sigma, &self.quad).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        let tol = self.tolerance_for(&r);
        o.set("lane", sigma.lane().to_string());
        o.set("residual", scalar_value(&r));
        o.tolerance = Some(tol);
        o.require(self.small(&r, tol), || {
            format!("residual {r} exceeds {tol:e}")
        });
        Ok(o)
    }

    fn free_algebra(variables: &[String]) -> Result<Arc<FpAlgebra>, String> {
        let names: Vec<&str> = variables.iter().map(String::as_str).collect();
        FpAlgebra::parse(&names, &[]).map_err(|e| e.to_string())
    }

    fn chain_map_random(&mut self, variables: &[String], count: usize) -> CheckResult {
        let alg = Self::free_algebra(variables)?;
        let mut o = Outcome::default();
        let mut nonzero = 0;
        for _ in 0..count {
            let p = self.rng.gen_range(0..=alg.nvars().min(2));
            let sigma = random::random_polynomial_simplex(&alg, p + 1, &mut self.rng);
            let w = random::random_algebraic_form(&alg, p, &mut self.rng);
            let r = check_chain_map(&w, &sigma, &self.quad).map_err(|e| e.to_string())?;
            if !r.is_exact_zero() {
                nonzero += 1;
            }
        }
        o.set("pairs", count);
        o.set("nonzero_residuals", nonzero);
        o.tolerance = Some(0.0);
        o.require(nonzero == 0, || {
            format!("{nonzero} of {count} residuals are not exactly zero")
        });
        Ok(o)
    }

    fn naturality(&mut self, form: &str, simplex: &str, morphism: Vec<usize>) -> CheckResult {
        let fam = self.family()?;
        let sigma = fam.simplex(fam.index(simplex).map_err(|e| e.to_string())?);
        let h = DeltaMorphism::new(sigma.dimension(), morphism).map_err(|e| e.to_string())?;
        let r = check_naturality(sigma, &h, self.form(form)).map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        o.set("residual", r.display());
        o.require(r.is_zero(), || format!("residual {r} is not zero"));
        Ok(o)
    }

    fn naturality_random(&mut self, variables: &[String], count: usize) -> CheckResult {
        let alg = Self::free_algebra(variables)?;
        let mut o = Outcome::default();
        let mut nonzero = 0;
        for _ in 0..count {
            let n = self.rng.gen_range(0..=3);
            let m = self.rng.gen_range(0..=3);
            let sigma = random::random_polynomial_simplex(&alg, n, &mut self.rng);
            let h = random::random_morphism(m, n, &mut self.rng);
            let p = self.rng.gen_range(0..=alg.nvars().min(2));
            let w = random::random_algebraic_form(&alg, p, &mut self.rng);
            if !check_naturality(&sigma, &h, &w)
                .map_err(|e| e.to_string())?
                .is_zero()
            {
                nonzero += 1;
            }
        }
        o.set("triples", count);
        o.set("nonzero_residuals", nonzero);
        o.require(nonzero == 0, || {
            format!("{nonzero} of {count} residuals are not zero")
        });
        Ok(o)
    }

    fn multiplicativity(
        &mut self,
        left: &str,
        right: &str,
        chain: &str,
        expect_lhs: Option<Expect>,
        lhs_tol: Option<f64>,
    ) -> CheckResult {
        let fam = self.family()?;
        let r = check_multiplicativity(
            self.form(left),
            self.form(right),
            fam,
            &self.scenario.chains[chain],
            &self.quad,
        )
        .map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        o.set("lhs", scalar_value(&r.lhs));
        o.set("rhs", scalar_value(&r.rhs));
        o.set("residual", scalar_value(&r.residual));
        let tol = self.tolerance_for(&r.residual);
        o.tolerance = Some(tol);
        o.require(self.small(&r.residual, tol), || {
            format!("residual {} exceeds {tol:e}", r.residual)
        });
        if let Some(e) = expect_lhs {
            let t = lhs_tol.unwrap_or_else(|| self.tolerance_for(&r.lhs));
            o.set("lhs_tolerance", t);
            o.require(self.matches(&r.lhs, &e, t), || {
                format!("lhs {} does not match {e:?}", r.lhs)
            });
        }
        Ok(o)
    }

    fn poincare(&mut self, count: usize, max_dimension: usize, max_degree: u32) -> CheckResult {
        let mut o = Outcome::default();
        let mut failures = 0;
        for _ in 0..count {
            let n = self.rng.gen_range(1..=max_dimension.max(1));
            let p = self.rng.gen_range(0..=n);
            let a = random::random_form(n, p, max_degree, &mut self.rng);
            let k = |f: &PolyForm| poincare_homotopy(f).map_err(|e| e.to_string());
            let lhs = k(&a)?
                .differential()
                .add(&k(&a.differential())?)
                .map_err(|e| e.to_string())?;
            let mut rhs = a.clone();
            if p == 0 {
                let v0 = a.value_at_vertex(0).expect("polynomial");
                rhs = rhs
                    .sub(&PolyForm::constant(n, v0))
                    .map_err(|e| e.to_string())?;
            }
            if !lhs
                .sub(&rhs)
                .map_err(|e| e.to_string())?
                .simplified()
                .is_zero()
            {
                failures += 1;
            }
        }
        o.set("forms", count);
        o.set("failures", failures);
        o.require(failures == 0, || {
            format!("dκ + κd ≠ id - ε∘ev₀ on {failures} of {count} forms")
        });
        Ok(o)
    }

    fn tau_witness(&mut self, n: usize, alpha: &str, beta: &str) -> CheckResult {
        let parse = |t: &str| PolyForm::parse(n, t).map_err(|e| e.to_string());
        let (a, b) = (parse(alpha)?, parse(beta)?);
        let wedge = tau(&a.wedge(&b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let cup = tau(&a)
            .map_err(|e| e.to_string())?
            .cup(&tau(&b).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let mut o = Outcome::default();
        let top: Vec<usize> = (0..=n).collect();
        o.set("tau_wedge_on_top", rational_value(&wedge.get(&top)));
        o.set("cup_on_top", rational_value(&cup.get(&top)));
        let witness = wedge
            .complex()
            .all_simplices(wedge.degree())
            .into_iter()
            .find(|s| wedge.get(s) != cup.get(s));
        match &witness {
            Some(s) => {
                o.set("witness_simplex", s.clone());
                o.set("tau_wedge", rational_value(&wedge.get(s)));
                o.set("cup", rational_value(&cup.get(s)));
            }
            None => o.failures.push("τ(α∧β) = τα ∪ τβ on every simplex".into()),
        }
        Ok(o)
    }

    fn tau_cohomology(
        &mut self,
        complex: &str,
        n: usize,
        degrees: &[usize],
        max_weight: Option<u32>,
    ) -> CheckResult {
        let k = Arc::new(complex_of(complex, n).map_err(|e| e.to_string())?);
        let weight = self
            .options
            .max_weight
            .or(max_weight)
            .unwrap_or(DEFAULT_MAX_WEIGHT);
        let mut o = Outcome::default();
        let mut per_degree = Vec::new();
        let mut forms_h = BTreeMap::new();
        for &p in degrees {
            let h = forms_complex_cohomology(&k, p, weight);
            let s = simplicial_cohomology(&k, p);
            let images = h
                .representatives
                .iter()
                .map(|r| {
                    s.class_of(&tau_family(r).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rank = linalg::rank(&SparseMatrix::from_columns(s.dimension, &images));
            let iso = h.dimension == s.dimension && rank == s.dimension;
            per_degree.push(json!({
                "degree": p,
                "forms_dimension": h.dimension,
                "simplicial_dimension": s.dimension,
                "stabilized": h.stabilized,
                "rank": rank,
            }));
            o.require(iso, || {
                format!(
                    "H^{p}(τ) is not an isomorphism: forms {} → simplicial {}, rank {rank}",
                    h.dimension, s.dimension
                )
            });
            o.require(h.stabilized, || {
                format!("H^{p} of forms not stabilized at weight {weight}")
            });
            forms_h.insert(p, h);
        }
        let mut products = 0;
        for (&p, hp) in &forms_h {
            for (&q, hq) in &forms_h {
                let target = simplicial_cohomology(&k, p + q);
                for a in &hp.representatives {
                    for b in &hq.representatives {
                        let lhs = tau_family(&a.wedge(b).map_err(|e| e.to_string())?)
                            .map_err(|e| e.to_string())?;
                        let rhs = tau_family(a)
                            .and_then(|x| Ok((x, tau_family(b)?)))
                            .map_err(|e| e.to_string())
                            .and_then(|(x, y)| x.cup(&y).map_err(|e| e.to_string()))?;
                        let cl = target.class_of(&lhs).map_err(|e| e.to_string())?;
                        let cr = target.class_of(&rhs).map_err(|e| e.to_string())?;
                        o.require(cl == cr, || {
                            format!("classes of τ(a∧b) and τa ∪ τb differ in degree {}", p + q)
                        });
                        products += 1;
                    }
                }
            }
        }
        o.set("max_weight", weight);
        o.set("degrees", per_degree);
        o.set("products_checked", products);
        Ok(o)
    }

    fn extension(&mut self, n: usize, count: usize, max_degree: u32) -> CheckResult {
        let k = Arc::new(FiniteSimplicialSet::boundary_complex(n));
        let mut o = Outcome::default();
        let mut failures = 0;
        for _ in 0..count {
            let q = self.rng.gen_range(0..n);
            let global = random::random_form(n, q, max_degree, &mut self.rng);
            let fam = FormsFamily::restriction_of(&global, &k).map_err(|e| e.to_string())?;
            let ext = extend_from_boundary(&fam).map_err(|e| e.to_string())?;
            let back = FormsFamily::restriction_of(&ext, &k).map_err(|e| e.to_string())?;
            if back != fam || !ext.is_polynomial() {
                failures += 1;
            }
        }
        o.set("families", count);
        o.set("failures", failures);
        o.require(failures == 0, || {
            format!("{failures} of {count} extensions do not restrict back")
        });
        Ok(o)
    }

    fn aw_laws(&mut self, n: usize, count: usize) -> CheckResult {
        let k = Arc::new(FiniteSimplicialSet::standard_simplex(n));
        let one = Cochain::one(&k);
        let mut o = Outcome::default();
        let (mut assoc, mut unit, mut leibniz) = (0, 0, 0);
        let err = |e: crate::simplicial::SimplicialError| e.to_string();
        for _ in 0..count {
            let p = self.rng.gen_range(0..=n);
            let q = self.rng.gen_range(0..=n - p);
            let r = self.rng.gen_range(0..=n - p - q);
            let a = random::random_cochain(&k, p, &mut self.rng);
            let b = random::random_cochain(&k, q, &mut self.rng);
            let c = random::random_cochain(&k, r, &mut self.rng);
            if a.cup(&b).and_then(|ab| ab.cup(&c)).map_err(err)?
                != b.cup(&c).and_then(|bc| a.cup(&bc)).map_err(err)?
            {
                assoc += 1;
            }
            if one.cup(&a).map_err(err)? != a || a.cup(&one).map_err(err)? != a {
                unit += 1;
            }
            let sign = if p % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let lhs = a.cup(&b).map_err(err)?.coboundary();
            let rhs = a
                .coboundary()
                .cup(&b)
                .map_err(err)?
                .add(&a.cup(&b.coboundary()).map_err(err)?.scale(&sign))
                .map_err(err)?;
            if lhs != rhs {
                leibniz += 1;
            }
        }
        let mut witness = None;
        for _ in 0..200 {
            if n < 2 {
                break;
            }
            let a = random::random_cochain(&k, 1, &mut self.rng);
            let b = random::random_cochain(&k, 1, &mut self.rng);
            let ab = a.cup(&b).map_err(err)?;
            let ba = b.cup(&a).map_err(err)?;
            if ab != ba.scale(&-Rational::one()) {
                witness = Some((a, b));
                break;
            }
        }
        o.set("samples", count);
        o.set("associativity_failures", assoc);
        o.set("unit_failures", unit);
        o.set("leibniz_failures", leibniz);
        o.require(assoc + unit + leibniz == 0, || {
            format!("{assoc} associativity, {unit} unit, {leibniz} Leibniz failures")
        });
        match witness {
            Some((a, b)) => {
                let show = |c: &Cochain| {
                    c.support()
                        .map(|(s, v)| (format!("{s:?}"), Value::String(v.to_string())))
                        .collect::<serde_json::Map<_, _>>()
                };
                o.set(
                    "noncommutativity_witness",
                    json!({ "a": show(&a), "b": show(&b) }),
                );
            }
            None => o
                .failures
                .push("no graded non-commutativity witness found".into()),
        }
        Ok(o)
    }
}

/// Loads a scenario file or builtin and runs it.
pub fn run_source(text: &str, options: &RunOptions) -> Result<Report, ScenarioError> {
    Ok(run_scenario(&Scenario::parse(text)?, options))
}
