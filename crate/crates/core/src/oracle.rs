//! Explicit solutions of the BKN equation
//!
//! ```text
//!   Σ_{w ∈ ∂v} γ_w · a_{head(w)} / b_w = k_v · a_v      for every vertex v
//! ```
//!
//! with `a ≥ 0`, `a ≢ 0`, `|γ| ≤ 1` and `γ_w γ_{−w} ≠ −1`, plus the extra
//! constraint each property imposes. This module checks such certificates
//! exactly and searches for them independently of the matrix criteria.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decider::PropertyId;
use crate::graph::LabeledGraph;
use crate::linalg::{solve_lp, Bound, LinearProgram, Objective, RatVector};
use crate::rational::{format_rational, int, is_unit, parse_rational, Rational, RationalParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("solution has {got_vertices} vertex values and {got_darts} dart values, graph has {vertices} vertices and {darts} darts")]
    DimensionMismatch {
        vertices: usize,
        darts: usize,
        got_vertices: usize,
        got_darts: usize,
    },
    #[error("certificate references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("certificate references unknown dart {0:?}")]
    UnknownDart(String),
    #[error("certificate has no value for vertex {0:?}")]
    MissingVertex(String),
    #[error("certificate has no value for dart {0:?}")]
    MissingDart(String),
    #[error("bad value for {key:?}: {source}")]
    BadValue {
        key: String,
        source: RationalParseError,
    },
    #[error("malformed certificate at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undecided: budget ({needed} cases exceed limit {limit})")]
    Budget { needed: u128, limit: u64 },
    #[error("variant {0} is not searched by this routine")]
    UnsupportedVariant(PropertyId),
}

/// Candidate solution: `a` per vertex and `γ` per dart, in graph order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BknSolution {
    pub a: Vec<Rational>,
    pub gamma: Vec<Rational>,
    pub variant: PropertyId,
}

/// On-disk certificate: values keyed by vertex and dart ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub a: BTreeMap<String, String>,
    pub gamma: BTreeMap<String, String>,
    pub variant: PropertyId,
}

impl BknSolution {
    pub fn to_document(&self, g: &LabeledGraph) -> CertificateDocument {
        CertificateDocument {
            a: g.vertices()
                .iter()
                .zip(&self.a)
                .map(|(v, x)| (v.id.clone(), format_rational(x)))
                .collect(),
            gamma: g
                .darts()
                .iter()
                .zip(&self.gamma)
                .map(|(d, x)| (d.id.clone(), format_rational(x)))
                .collect(),
            variant: self.variant,
        }
    }

    pub fn from_document(g: &LabeledGraph, doc: &CertificateDocument) -> Result<Self, OracleError> {
        let value = |key: &String, text: &String| {
            parse_rational(text).map_err(|source| OracleError::BadValue {
                key: key.clone(),
                source,
            })
        };
        let mut a = vec![None; g.vertex_count()];
        for (key, text) in &doc.a {
            let v = g
                .vertex_position(key)
                .ok_or_else(|| OracleError::UnknownVertex(key.clone()))?;
            a[v] = Some(value(key, text)?);
        }
        let mut gamma = vec![None; g.darts().len()];
        for (key, text) in &doc.gamma {
            let d = g
                .dart_position(key)
                .ok_or_else(|| OracleError::UnknownDart(key.clone()))?;
            gamma[d] = Some(value(key, text)?);
        }
        let a = a
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| OracleError::MissingVertex(g.vertices()[v].id.clone())))
            .collect::<Result<_, _>>()?;
        let gamma = gamma
            .into_iter()
            .enumerate()
            .map(|(d, x)| x.ok_or_else(|| OracleError::MissingDart(g.darts()[d].id.clone())))
            .collect::<Result<_, _>>()?;
        Ok(BknSolution {
            a,
            gamma,
            variant: doc.variant,
        })
    }

    pub fn parse(g: &LabeledGraph, text: &str) -> Result<Self, OracleError> {
        let doc: CertificateDocument =
            serde_json::from_str(text).map_err(|e| OracleError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        Self::from_document(g, &doc)
    }

    pub fn render(&self, g: &LabeledGraph) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_document(g)).expect("certificate");
        text.push('\n');
        text
    }

    /// Same `γ`, `a` multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        BknSolution {
            a: self.a.iter().map(|x| x * c).collect(),
            gamma: self.gamma.clone(),
            variant: self.variant,
        }
    }

    fn check_dimensions(&self, g: &LabeledGraph) -> Result<(), OracleError> {
        if self.a.len() != g.vertex_count() || self.gamma.len() != g.darts().len() {
            return Err(OracleError::DimensionMismatch {
                vertices: g.vertex_count(),
                darts: g.darts().len(),
                got_vertices: self.a.len(),
                got_darts: self.gamma.len(),
            });
        }
        Ok(())
    }
}

/// Per vertex `Σ_{w∈∂v} γ_w·a_{head(w)}/b_w − k_v·a_v`.
pub fn residual(g: &LabeledGraph, sol: &BknSolution) -> Result<Vec<Rational>, OracleError> {
    sol.check_dimensions(g)?;
    let mut r: Vec<Rational> = (0..g.vertex_count())
        .map(|v| -(g.charge(v) * &sol.a[v]))
        .collect();
    for (d, dart) in g.darts().iter().enumerate() {
        let (gamma, a_head) = (&sol.gamma[d], &sol.a[g.head(d)]);
        if gamma.is_zero() || a_head.is_zero() {
            continue;
        }
        r[dart.tail] += gamma * a_head / int(dart.index);
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckViolation {
    pub constraint: &'static str,
    pub location: String,
    pub detail: String,
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.constraint, self.location, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub valid: bool,
    pub residuals: Vec<Rational>,
    pub violations: Vec<CheckViolation>,
}

/// Exact check of the equation, the base constraints and the variant clause.
pub fn check_certificate(g: &LabeledGraph, sol: &BknSolution) -> Result<CheckReport, OracleError> {
    let residuals = residual(g, sol)?;
    let mut violations = Vec::new();
    let mut flag = |constraint, location: String, detail: String| {
        violations.push(CheckViolation {
            constraint,
            location,
            detail,
        })
    };
    let vid = |v: usize| g.vertices()[v].id.clone();
    let did = |d: usize| g.darts()[d].id.clone();
    let eid = |e: usize| g.edges()[e].id.clone();

    for (v, r) in residuals.iter().enumerate() {
        if !r.is_zero() {
            flag("residual", vid(v), format!("equation off by {}", format_rational(r)));
        }
    }
    for (v, a) in sol.a.iter().enumerate() {
        if a.is_negative() {
            flag("nonnegative", vid(v), format!("a = {} < 0", format_rational(a)));
        }
    }
    if sol.a.iter().all(Zero::is_zero) {
        flag("nontrivial", "a".into(), "trivial solution".into());
    }
    for (d, gamma) in sol.gamma.iter().enumerate() {
        if gamma.abs() > Rational::one() {
            flag("gamma-bound", did(d), format!("|γ| = |{}| > 1", format_rational(gamma)));
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let [f, b] = edge.darts;
        if &sol.gamma[f] * &sol.gamma[b] == -Rational::one() {
            flag("opposite-unit", eid(e), "γ_w·γ_{−w} = −1".into());
        }
    }

    let variant = sol.variant;
    let needs_positive = matches!(
        variant,
        PropertyId::HI | PropertyId::F | PropertyId::VF | PropertyId::NPC
    );
    if needs_positive {
        for (v, a) in sol.a.iter().enumerate() {
            if !a.is_positive() {
                flag("positive", vid(v), format!("a = {} is not > 0", format_rational(a)));
            }
        }
    }
    let symmetric = |e: usize| {
        let [f, b] = g.edges()[e].darts;
        sol.gamma[f] == sol.gamma[b]
    };
    match variant {
        PropertyId::Im => {}
        PropertyId::HI => {
            for (e, edge) in g.edges().iter().enumerate() {
                let [f, b] = edge.darts;
                let boundary = is_unit(&sol.gamma[f]) || is_unit(&sol.gamma[b]);
                if boundary && !symmetric(e) {
                    flag("horizontal", eid(e), "|γ| = 1 on one dart but γ_w ≠ γ_{−w}".into());
                }
            }
        }
        PropertyId::F => {
            let mut unit_symmetric = true;
            for (e, edge) in g.edges().iter().enumerate() {
                let gamma = &sol.gamma[edge.darts[0]];
                if !symmetric(e) || !is_unit(gamma) {
                    unit_symmetric = false;
                    flag("fibered-signs", eid(e), "γ must be symmetric and ±1".into());
                }
            }
            if unit_symmetric {
                if let Some(e) = vertex_sign_conflict(g, sol) {
                    flag(
                        "fibered-signs",
                        eid(e),
                        "γ is not ε_tail·ε_head for any vertex signs".into(),
                    );
                }
            }
        }
        PropertyId::E => {
            for (e, edge) in g.edges().iter().enumerate() {
                let unit_symmetric = symmetric(e) && is_unit(&sol.gamma[edge.darts[0]]);
                let (u, v) = g.endpoints(e);
                let zeroed = [u, v].iter().any(|&x| {
                    sol.a[x].is_zero()
                        && g.boundary(x).iter().all(|&w| {
                            sol.gamma[w].is_zero() && sol.gamma[g.opp(w)].is_zero()
                        })
                });
                if !unit_symmetric && !zeroed {
                    flag(
                        "embedded",
                        eid(e),
                        "neither γ_w = γ_{−w} = ±1 nor an end with a = 0 and all incident γ = 0"
                            .into(),
                    );
                }
            }
        }
        PropertyId::VF | PropertyId::VE | PropertyId::NPC => {
            for e in 0..g.edge_count() {
                if !symmetric(e) {
                    flag("symmetric", eid(e), "γ_w ≠ γ_{−w}".into());
                }
            }
            if variant == PropertyId::NPC {
                for (d, gamma) in sol.gamma.iter().enumerate() {
                    if gamma.abs() >= Rational::one() {
                        flag(
                            "open-interval",
                            did(d),
                            format!("γ = {} not in open interval (−1, 1)", format_rational(gamma)),
                        );
                    }
                }
            }
        }
    }
    let valid = violations.is_empty() && residuals.iter().all(Zero::is_zero);
    Ok(CheckReport {
        valid,
        residuals,
        violations,
    })
}

/// First edge at which no `ε: V → ±1` with `γ_e = ε_u ε_v` can exist.
fn vertex_sign_conflict(g: &LabeledGraph, sol: &BknSolution) -> Option<usize> {
    let n = g.vertex_count();
    let mut eps = vec![0i8; n];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    for start in 0..n {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, e) in &adj[u] {
                let s: i8 = if sol.gamma[g.edges()[e].darts[0]].is_positive() { 1 } else { -1 };
                let want = eps[u] * s;
                if eps[v] == 0 {
                    eps[v] = want;
                    stack.push(v);
                } else if eps[v] != want {
                    return Some(e);
                }
            }
        }
    }
    None
}

/// Zeroes `γ` on every dart whose ends carry `a_tail·a_head = 0`.
///
/// At a vertex with `a_v = 0` this zeroes all of `∂v`, so that vertex's
/// equation reads `0 = 0`; elsewhere only terms with `a_head = 0` vanish.
pub fn normalize_solution(g: &LabeledGraph, sol: &BknSolution) -> BknSolution {
    let gamma = sol
        .gamma
        .iter()
        .enumerate()
        .map(|(d, x)| {
            if (&sol.a[g.tail(d)] * &sol.a[g.head(d)]).is_zero() {
                Rational::zero()
            } else {
                x.clone()
            }
        })
        .collect();
    BknSolution {
        a: sol.a.clone(),
        gamma,
        variant: sol.variant,
    }
}

fn budget_check(bits: usize, limit: u64) -> Result<(), OracleError> {
    let needed = if bits >= 127 { u128::MAX } else { 1u128 << bits };
    if needed > limit as u128 {
        return Err(OracleError::Budget { needed, limit });
    }
    Ok(())
}

/// Solve `Σ_{w∈∂v} γ_w a_head/b − k_v a_v = 0` for `a > 0` on `support`
/// with `γ` fixed per dart (zero outside the support). Returns `a` on the
/// support, rescaled to a primitive integer vector.
fn positive_a(g: &LabeledGraph, support: &[usize], gamma: &[Rational]) -> Option<Vec<Rational>> {
    let m = support.len();
    let pos: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut lp = LinearProgram::new(m);
    for (i, &v) in support.iter().enumerate() {
        let mut row = vec![Rational::zero(); m];
        row[i] -= g.charge(v);
        for w in g.boundary(v) {
            if let Some(&j) = pos.get(&g.head(w)) {
                if !gamma[w].is_zero() {
                    row[j] += &gamma[w] / int(g.index(w));
                }
            }
        }
        lp = lp.equality(row, Rational::zero());
    }
    for i in 0..m {
        lp = lp.bounds(i, Some(Bound::open(Rational::zero())), None);
    }
    let sol = solve_lp(&lp)?;
    let labels = (0..m).map(|i| i.to_string()).collect();
    Some(RatVector::new(sol.point, labels).normalized().entries)
}

fn subset(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Complete search for F or E certificates through exact LP feasibility.
///
/// F: every vertex sign function `ε` (up to global flip), `γ_w = ε_tail ε_head`,
/// then `a > 0`. E: every support `S` and every sign on the edges inside `S`,
/// `γ = 0` elsewhere, then `a > 0` on `S`.
pub fn search_certificate_exact(
    g: &LabeledGraph,
    variant: PropertyId,
    limit: u64,
) -> Result<Option<BknSolution>, OracleError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(None);
    }
    let all: Vec<usize> = (0..n).collect();
    match variant {
        PropertyId::F => {
            budget_check(n, limit)?;
            for mask in 0..(1u64 << (n - 1)) {
                let eps: Vec<i64> = (0..n)
                    .map(|v| if (mask << 1) >> v & 1 == 1 { -1 } else { 1 })
                    .collect();
                let gamma: Vec<Rational> = (0..g.darts().len())
                    .map(|d| int(eps[g.tail(d)] * eps[g.head(d)]))
                    .collect();
                if let Some(a) = positive_a(g, &all, &gamma) {
                    return Ok(Some(BknSolution {
                        a,
                        gamma,
                        variant,
                    }));
                }
            }
            Ok(None)
        }
        PropertyId::E => {
            budget_check(n + g.edge_count(), limit)?;
            for mask in 1..(1u64 << n) {
                let support = subset(mask, n);
                let inside: Vec<usize> = (0..g.edge_count())
                    .filter(|&e| {
                        let (u, v) = g.endpoints(e);
                        mask >> u & 1 == 1 && mask >> v & 1 == 1
                    })
                    .collect();
                for signs in 0..(1u64 << inside.len()) {
                    let mut gamma = vec![Rational::zero(); g.darts().len()];
                    for (i, &e) in inside.iter().enumerate() {
                        let s = if signs >> i & 1 == 1 { -1 } else { 1 };
                        for d in g.edges()[e].darts {
                            gamma[d] = int(s);
                        }
                    }
                    if let Some(a_s) = positive_a(g, &support, &gamma) {
                        let mut a = vec![Rational::zero(); n];
                        for (&v, x) in support.iter().zip(a_s) {
                            a[v] = x;
                        }
                        return Ok(Some(BknSolution { a, gamma, variant }));
                    }
                }
            }
            Ok(None)
        }
        other => Err(OracleError::UnsupportedVariant(other)),
    }
}

/// Limits for [`search_certificate_numeric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericBudget {
    /// `a` ranges over primitive integer vectors with entries in `1..=grid`.
    pub grid: u32,
    /// Maximum number of linear programs solved before giving up.
    pub max_programs: usize,
}

impl Default for NumericBudget {
    fn default() -> Self {
        NumericBudget {
            grid: 6,
            max_programs: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumericOutcome {
    Found(BknSolution),
    /// Grid fully explored without a hit. `complete` means the grid covered
    /// every `a` up to scale, so nothing exists at all.
    NotFound { complete: bool },
    /// Program budget ran out first.
    Exhausted,
}

impl NumericOutcome {
    pub fn solution(&self) -> Option<&BknSolution> {
        match self {
            NumericOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Primitive vectors in `{1..=grid}^len`, lexicographic.
fn grid_points(len: usize, grid: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![1u32; len];
    loop {
        if cur.iter().fold(0u32, |g, &x| num_integer::gcd(g, x)) == 1 {
            out.push(cur.clone());
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < grid {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// Extra constraints accumulated while steering the LP away from the
/// nonconvex exclusions of Im and HI.
#[derive(Default, Clone)]
struct Steering {
    open: Vec<usize>,
    tied: Vec<usize>,
}

struct GammaProgram<'g> {
    g: &'g LabeledGraph,
    a: Vec<Rational>,
    variant: PropertyId,
    /// LP variable per dart, if that dart's γ is free.
    var_of: Vec<Option<usize>>,
    vars: usize,
    symmetric: bool,
}

impl<'g> GammaProgram<'g> {
    fn new(g: &'g LabeledGraph, a: Vec<Rational>, variant: PropertyId) -> Self {
        let symmetric = matches!(variant, PropertyId::VF | PropertyId::VE | PropertyId::NPC);
        let mut var_of = vec![None; g.darts().len()];
        let mut vars = 0;
        for edge in g.edges() {
            let [f, b] = edge.darts;
            let live = |d: usize| !a[g.head(d)].is_zero();
            if symmetric {
                if live(f) || live(b) {
                    var_of[f] = Some(vars);
                    var_of[b] = Some(vars);
                    vars += 1;
                }
            } else {
                for d in [f, b] {
                    if live(d) {
                        var_of[d] = Some(vars);
                        vars += 1;
                    }
                }
            }
        }
        GammaProgram {
            g,
            a,
            variant,
            var_of,
            vars,
            symmetric,
        }
    }

    fn solve(&self, steering: &Steering) -> Option<BknSolution> {
        let g = self.g;
        let mut lp = LinearProgram::new(self.vars);
        for v in 0..g.vertex_count() {
            let mut row = vec![Rational::zero(); self.vars];
            for w in g.boundary(v) {
                if let Some(j) = self.var_of[w] {
                    row[j] += &self.a[g.head(w)] / int(g.index(w));
                }
            }
            let rhs = g.charge(v) * &self.a[v];
            if row.iter().all(Zero::is_zero) {
                if !rhs.is_zero() {
                    return None;
                }
                continue;
            }
            lp = lp.equality(row, rhs);
        }
        for &e in &steering.tied {
            let [f, b] = g.edges()[e].darts;
            if let (Some(i), Some(j)) = (self.var_of[f], self.var_of[b]) {
                if i != j {
                    let mut row = vec![Rational::zero(); self.vars];
                    row[i] = Rational::one();
                    row[j] = -Rational::one();
                    lp = lp.equality(row, Rational::zero());
                }
            }
        }
        let open_all = self.variant == PropertyId::NPC;
        for d in 0..g.darts().len() {
            let Some(j) = self.var_of[d] else { continue };
            let open = open_all || steering.open.contains(&d);
            let (lo, hi) = if open {
                (Bound::open(-Rational::one()), Bound::open(Rational::one()))
            } else {
                (Bound::closed(-Rational::one()), Bound::closed(Rational::one()))
            };
            lp = lp.bounds(j, Some(lo), Some(hi));
        }
        if !self.symmetric {
            lp = lp.objective(Objective::MaximizeSlack);
        }
        let point = solve_lp(&lp)?.point;
        let gamma = self
            .var_of
            .iter()
            .map(|v| v.map_or_else(Rational::zero, |j| point[j].clone()))
            .collect();
        Some(BknSolution {
            a: self.a.clone(),
            gamma,
            variant: self.variant,
        })
    }

    /// Edges whose dart pair breaks the Im or HI exclusion.
    fn offending_edges(&self, sol: &BknSolution) -> Vec<usize> {
        (0..self.g.edge_count())
            .filter(|&e| {
                let [f, b] = self.g.edges()[e].darts;
                let (x, y) = (&sol.gamma[f], &sol.gamma[b]);
                match self.variant {
                    PropertyId::HI => (is_unit(x) || is_unit(y)) && x != y,
                    _ => x * y == -Rational::one(),
                }
            })
            .collect()
    }
}

/// Best-effort search for certificates of Im, HI, VF, VE or NPC.
///
/// For each support `S` (all of `V` when the variant needs `a > 0`) and each
/// grid point `a`, the equation is linear in `γ` and is solved exactly.
/// Anything returned passes [`check_certificate`]; a miss is not a
/// refutation unless the outcome says the grid was complete.
pub fn search_certificate_numeric(
    g: &LabeledGraph,
    variant: PropertyId,
    budget: NumericBudget,
) -> Result<NumericOutcome, OracleError> {
    let n = g.vertex_count();
    if matches!(variant, PropertyId::F | PropertyId::E) {
        return Err(OracleError::UnsupportedVariant(variant));
    }
    if n == 0 {
        return Ok(NumericOutcome::NotFound { complete: true });
    }
    let full_support_only = matches!(variant, PropertyId::HI | PropertyId::VF | PropertyId::NPC);
    let mut supports: Vec<Vec<usize>> = if full_support_only {
        vec![(0..n).collect()]
    } else {
        if n >= 63 {
            return Ok(NumericOutcome::Exhausted);
        }
        (1..(1u64 << n)).map(|m| subset(m, n)).collect()
    };
    supports.sort();

    let mut programs = 0usize;
    let mut gave_up = false;
    for support in &supports {
        for point in grid_points(support.len(), budget.grid.max(1)) {
            let mut a = vec![Rational::zero(); n];
            for (&v, &x) in support.iter().zip(&point) {
                a[v] = int(x.into());
            }
            let program = GammaProgram::new(g, a, variant);
            let mut steering = Steering::default();
            // Each round either succeeds, fails, or adds a constraint to one edge.
            for _ in 0..=2 * g.edge_count() {
                programs += 1;
                if programs > budget.max_programs {
                    return Ok(NumericOutcome::Exhausted);
                }
                let Some(sol) = program.solve(&steering) else {
                    break;
                };
                let offending = program.offending_edges(&sol);
                if offending.is_empty() {
                    if check_certificate(g, &sol)?.valid {
                        return Ok(NumericOutcome::Found(sol));
                    }
                    gave_up = true;
                    break;
                }
                let e = offending[0];
                let [f, b] = g.edges()[e].darts;
                if !steering.open.contains(&f) {
                    steering.open.extend([f, b]);
                } else if variant == PropertyId::HI && !steering.tied.contains(&e) {
                    steering.open.retain(|&d| d != f && d != b);
                    steering.tied.push(e);
                } else {
                    gave_up = true;
                    break;
                }
            }
        }
    }
    let complete = n == 1 && !gave_up;
    Ok(NumericOutcome::NotFound { complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pair(k1: Rational, k2: Rational, b: i64) -> LabeledGraph {
        LabeledGraph::builder()
            .vertex("v1", k1)
            .vertex("v2", k2)
            .edge("e1", "v1", "v2", b)
            .build()
            .unwrap()
    }

    fn sol(a: &[Rational], gamma: &[Rational], variant: PropertyId) -> BknSolution {
        BknSolution {
            a: a.to_vec(),
            gamma: gamma.to_vec(),
            variant,
        }
    }

    #[test]
    fn residual_examples() {
        let g = pair(int(1), int(1), 1);
        let one = [int(1), int(1)];
        let zero = [int(0), int(0)];
        assert_eq!(residual(&g, &sol(&one, &one, PropertyId::VF)).unwrap(), zero.to_vec());
        let z = pair(int(0), int(0), 1);
        assert_eq!(residual(&z, &sol(&one, &zero, PropertyId::VF)).unwrap(), zero.to_vec());
        assert_eq!(
            residual(&g, &sol(&one, &zero, PropertyId::VF)).unwrap(),
            vec![int(-1), int(-1)]
        );
        assert!(matches!(
            residual(&g, &sol(&[int(1)], &one, PropertyId::VF)),
            Err(OracleError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn check_examples() {
        let g = pair(int(1), int(1), 1);
        let one = [int(1), int(1)];
        assert!(check_certificate(&g, &sol(&one, &one, PropertyId::VF)).unwrap().valid);
        let npc = check_certificate(&g, &sol(&one, &one, PropertyId::NPC)).unwrap();
        assert!(!npc.valid);
        assert!(npc
            .violations
            .iter()
            .any(|v| v.constraint == "open-interval" && v.detail.contains("not in open interval")));
        for variant in PropertyId::ALL {
            let r = check_certificate(&g, &sol(&[int(0), int(0)], &one, variant)).unwrap();
            assert!(!r.valid);
            assert!(r.violations.iter().any(|v| v.detail == "trivial solution"));
        }
    }

    #[test]
    fn fibered_needs_consistent_vertex_signs() {
        // triangle with all k = 0 except that signs around the cycle multiply to −1
        let g = LabeledGraph::builder()
            .vertex("a", int(0))
            .vertex("b", int(0))
            .vertex("c", int(0))
            .edge("e1", "a", "b", 1)
            .edge("e2", "b", "c", 1)
            .edge("e3", "c", "a", 1)
            .build()
            .unwrap();
        let one = [int(1), int(1), int(1)];
        let odd = sol(&one, &[int(-1), int(-1), int(1), int(1), int(1), int(1)], PropertyId::F);
        let report = check_certificate(&g, &odd).unwrap();
        assert!(report.violations.iter().any(|v| v.constraint == "fibered-signs"));
        assert!(report.violations.iter().all(|v| v.constraint != "symmetric"));
    }

    #[test]
    fn horizontal_clause() {
        let g = pair(ratio(1, 2), ratio(-1, 2), 1);
        // γ_w = k1 a1 b / a2 = 1/2, γ_{-w} = -1/2 at a = (1,1)
        let s = sol(&[int(1), int(1)], &[ratio(1, 2), ratio(-1, 2)], PropertyId::HI);
        assert!(check_certificate(&g, &s).unwrap().valid);
        let g = pair(int(1), ratio(1, 2), 1);
        // a = (1,1): γ_w = 1, γ_{-w} = 1/2 breaks the boundary implication
        let s = sol(&[int(1), int(1)], &[int(1), ratio(1, 2)], PropertyId::HI);
        let r = check_certificate(&g, &s).unwrap();
        assert!(r.violations.iter().any(|v| v.constraint == "horizontal"));
        let s = BknSolution {
            variant: PropertyId::Im,
            ..s
        };
        assert!(check_certificate(&g, &s).unwrap().valid);
    }

    #[test]
    fn embedded_clause_zero_vertex() {
        let g = pair(int(0), int(5), 3);
        let s = sol(&[int(1), int(0)], &[int(0), int(0)], PropertyId::E);
        assert!(check_certificate(&g, &s).unwrap().valid);
        let s = sol(&[int(1), int(0)], &[ratio(1, 2), int(0)], PropertyId::E);
        assert!(!check_certificate(&g, &s).unwrap().valid);
    }

    #[test]
    fn normalization_examples() {
        let g = pair(int(0), int(1), 1);
        let s = sol(&[int(0), int(1)], &[ratio(1, 2), ratio(1, 2)], PropertyId::Im);
        assert_eq!(normalize_solution(&g, &s).gamma, vec![int(0), int(0)]);
        let g = pair(int(1), int(1), 1);
        let s = sol(&[int(1), int(1)], &[int(1), int(1)], PropertyId::VF);
        assert_eq!(normalize_solution(&g, &s), s);
        let path = LabeledGraph::builder()
            .vertex("v1", int(0))
            .vertex("v2", int(0))
            .vertex("v3", int(0))
            .edge("e1", "v1", "v2", 1)
            .edge("e2", "v2", "v3", 1)
            .build()
            .unwrap();
        let s = sol(
            &[int(0), int(0), int(1)],
            &[ratio(1, 3), ratio(1, 3), int(0), int(0)],
            PropertyId::Im,
        );
        let n = normalize_solution(&path, &s);
        assert_eq!(n.gamma, vec![int(0); 4]);
    }

    #[test]
    fn exact_search_examples() {
        let f = search_certificate_exact(&pair(int(1), int(1), 1), PropertyId::F, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(f.a, vec![int(1), int(1)]);
        assert_eq!(f.gamma, vec![int(1), int(1)]);

        let e = search_certificate_exact(&pair(int(0), int(5), 3), PropertyId::E, 1 << 20)
            .unwrap()
            .unwrap();
        assert_eq!(e.a, vec![int(1), int(0)]);
        assert_eq!(e.gamma, vec![int(0), int(0)]);

        let none = search_certificate_exact(&pair(int(1), int(-1), 1), PropertyId::E, 1 << 20);
        assert_eq!(none, Ok(None));
        assert!(matches!(
            search_certificate_exact(&pair(int(1), int(-1), 1), PropertyId::E, 4),
            Err(OracleError::Budget { needed: 8, limit: 4 })
        ));
    }

    #[test]
    fn numeric_search_examples() {
        let budget = NumericBudget::default();
        let npc = search_certificate_numeric(&pair(ratio(1, 2), ratio(1, 2), 1), PropertyId::NPC, budget)
            .unwrap();
        let s = npc.solution().unwrap();
        assert_eq!(s.a, vec![int(1), int(1)]);
        assert_eq!(s.gamma, vec![ratio(1, 2), ratio(1, 2)]);

        let zero = search_certificate_numeric(&pair(int(0), int(0), 1), PropertyId::NPC, budget).unwrap();
        assert_eq!(zero.solution().unwrap().gamma, vec![int(0), int(0)]);

        let none = search_certificate_numeric(&pair(int(2), int(2), 1), PropertyId::VF, budget).unwrap();
        assert_eq!(none, NumericOutcome::NotFound { complete: false });

        let tiny = NumericBudget {
            grid: 6,
            max_programs: 3,
        };
        assert_eq!(
            search_certificate_numeric(&pair(int(2), int(2), 1), PropertyId::VF, tiny).unwrap(),
            NumericOutcome::Exhausted
        );
    }

    #[test]
    fn grid_is_primitive_and_ordered() {
        assert_eq!(grid_points(1, 6), vec![vec![1]]);
        let pts = grid_points(2, 3);
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], vec![1, 1]);
        assert!(!pts.contains(&vec![2, 2]));
    }

    #[test]
    fn certificate_document_round_trip() {
        let g = pair(int(1), int(1), 1);
        let s = sol(&[int(1), int(1)], &[ratio(1, 2), ratio(1, 2)], PropertyId::NPC);
        let text = s.render(&g);
        assert!(text.contains("\"e1+\": \"1/2\""));
        assert_eq!(BknSolution::parse(&g, &text).unwrap(), s);
        let bad = text.replace("\"v2\"", "\"v9\"");
        assert_eq!(
            BknSolution::parse(&g, &bad),
            Err(OracleError::UnknownVertex("v9".into()))
        );
    }
}
