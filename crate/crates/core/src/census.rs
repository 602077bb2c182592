//! Exhaustive cross-validation over all small labelled graphs.
//!
//! Every graph within the bounds is classified by the matrix criteria, and the
//! verdicts are compared against the implication diagram, the exact F/E
//! certificate search and the numeric certificate search.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::decider::{classify_all, ClassifyOptions, Outcome, PropertyId};
use crate::graph::LabeledGraph;
use crate::oracle::{
    check_certificate, normalize_solution, residual, search_certificate_exact,
    search_certificate_numeric, BknSolution, NumericBudget, NumericOutcome, OracleError,
};
use crate::rational::{format_rational, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusBounds {
    pub max_vertices: usize,
    pub charges: Vec<Rational>,
    pub indices: Vec<i64>,
    pub max_edges: usize,
    pub loops: bool,
}

impl Default for CensusBounds {
    fn default() -> Self {
        CensusBounds {
            max_vertices: 3,
            charges: vec![int(-1), ratio(-1, 2), int(0), ratio(1, 2), int(1)],
            indices: vec![1, 2],
            max_edges: 4,
            loops: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusOptions {
    pub bounds: CensusBounds,
    /// Case limit for E/VE enumeration and the exact F/E search.
    pub exhaustive_limit: u64,
    /// Compare F/E verdicts with the exact certificate search.
    pub exact: bool,
    /// Numeric search settings; `None` skips the one-sided numeric check.
    pub numeric: Option<NumericBudget>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            bounds: CensusBounds::default(),
            exhaustive_limit: 1 << 20,
            exact: true,
            numeric: Some(NumericBudget {
                grid: 2,
                max_programs: 10_000,
            }),
        }
    }
}

/// All labelled graphs within `bounds`, vertices `v1..vn`, edges `e1..em`.
///
/// For each vertex count, edge multisets are nondecreasing sequences over
/// (endpoint slot, index) pairs in lexicographic order, and every charge
/// tuple is taken for each. Relabelings are not identified.
pub fn enumerate_graphs(bounds: &CensusBounds) -> impl Iterator<Item = LabeledGraph> + '_ {
    let mut charges = bounds.charges.clone();
    charges.sort();
    charges.dedup();
    let mut indices = bounds.indices.clone();
    indices.sort();
    indices.dedup();
    (1..=bounds.max_vertices).flat_map(move |n| {
        let charges = charges.clone();
        let mut kinds = Vec::new();
        for i in 0..n {
            for j in i..n {
                if i == j && !bounds.loops {
                    continue;
                }
                for &b in &indices {
                    kinds.push((i, j, b));
                }
            }
        }
        let multisets = multisets(kinds.len(), bounds.max_edges);
        let tuples = if charges.is_empty() { 0 } else { charges.len().pow(n as u32) };
        multisets.into_iter().flat_map(move |edges| {
            let charges = charges.clone();
            let kinds = kinds.clone();
            (0..tuples).map(move |t| {
                let mut builder = LabeledGraph::builder();
                let mut rest = t;
                let mut tuple = vec![0; n];
                for slot in tuple.iter_mut().rev() {
                    *slot = rest % charges.len();
                    rest /= charges.len();
                }
                for (v, &c) in tuple.iter().enumerate() {
                    builder = builder.vertex(format!("v{}", v + 1), charges[c].clone());
                }
                for (e, &kind) in edges.iter().enumerate() {
                    let (i, j, b) = kinds[kind];
                    builder = builder.edge(
                        format!("e{}", e + 1),
                        format!("v{}", i + 1),
                        format!("v{}", j + 1),
                        b,
                    );
                }
                builder.build().expect("census graphs are well formed")
            })
        })
    })
}

/// Nondecreasing sequences over `0..kinds` of length at most `max_len`.
fn multisets(kinds: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            let start = seq.last().copied().unwrap_or(0);
            for k in start..kinds {
                let mut s: Vec<usize> = seq.clone();
                s.push(k);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// One-line rendering used in reports, e.g. `v1:1/2 v2:1 | e1(v1,v2,1)`.
pub fn describe(g: &LabeledGraph) -> String {
    let vertices: Vec<String> = g
        .vertices()
        .iter()
        .map(|v| format!("{}:{}", v.id, format_rational(&v.charge)))
        .collect();
    let edges: Vec<String> = (0..g.edge_count())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            format!(
                "{}({},{},{})",
                g.edges()[e].id,
                g.vertices()[u].id,
                g.vertices()[v].id,
                g.darts()[g.edges()[e].darts[0]].index
            )
        })
        .collect();
    if edges.is_empty() {
        vertices.join(" ")
    } else {
        format!("{} | {}", vertices.join(" "), edges.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    /// A verdict profile breaks the implication diagram.
    ImplicationViolated,
    /// Exact F/E search and the decider disagree.
    ExactMismatch,
    /// A certificate from a decider or a search fails the exact check.
    UnsoundCertificate,
    /// Normalization changed a residual or broke validity.
    NormalizationBroken,
    /// Numeric search found a certificate for a property the decider rejects.
    CertificateContradictsDecider,
    /// The decider accepts a property the complete numeric search rules out.
    DeciderRefuted,
}

impl DiscrepancyKind {
    /// Soundness problems count even on flagged graphs.
    fn fails_when_flagged(self) -> bool {
        matches!(
            self,
            DiscrepancyKind::UnsoundCertificate | DiscrepancyKind::NormalizationBroken
        )
    }

    /// Numeric disagreements are reported but do not fail the census.
    fn is_informational(self) -> bool {
        matches!(
            self,
            DiscrepancyKind::CertificateContradictsDecider | DiscrepancyKind::DeciderRefuted
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Discrepancy {
    pub kind: DiscrepancyKind,
    pub graph: String,
    pub property: Option<PropertyId>,
    /// Graph carries the charged-loop caveat.
    pub flagged: bool,
    pub detail: String,
}

impl Discrepancy {
    pub fn is_failure(&self) -> bool {
        self.kind.fails_when_flagged() || (!self.flagged && !self.kind.is_informational())
    }
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(p) = self.property {
            write!(f, " [{p}]")?;
        }
        if self.flagged {
            f.write_str(" (flagged)")?;
        }
        write!(f, ": {} -- {}", self.graph, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub graphs: usize,
    /// Count of graphs per holding-property set, e.g. `"Im HI VF VE"`; `"-"` when none hold.
    pub profiles: BTreeMap<String, usize>,
    pub undecided: usize,
    pub exact_checked: usize,
    pub exact_over_budget: usize,
    pub certificates_checked: usize,
    pub numeric_found: usize,
    /// Decider says yes, numeric search found nothing, grid not complete.
    pub numeric_unconfirmed: usize,
    pub numeric_exhausted: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub failures: usize,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn count(&self, kind: DiscrepancyKind, flagged: bool) -> usize {
        self.discrepancies
            .iter()
            .filter(|d| d.kind == kind && d.flagged == flagged)
            .count()
    }

    fn push(&mut self, d: Discrepancy) {
        if d.is_failure() {
            self.failures += 1;
        }
        self.discrepancies.push(d);
    }

    fn merge(&mut self, other: CensusReport) {
        self.graphs += other.graphs;
        for (k, v) in other.profiles {
            *self.profiles.entry(k).or_default() += v;
        }
        self.undecided += other.undecided;
        self.exact_checked += other.exact_checked;
        self.exact_over_budget += other.exact_over_budget;
        self.certificates_checked += other.certificates_checked;
        self.numeric_found += other.numeric_found;
        self.numeric_unconfirmed += other.numeric_unconfirmed;
        self.numeric_exhausted += other.numeric_exhausted;
        self.failures += other.failures;
        self.discrepancies.extend(other.discrepancies);
    }
}

struct GraphAudit<'a> {
    g: &'a LabeledGraph,
    name: String,
    flagged: bool,
    report: CensusReport,
}

impl GraphAudit<'_> {
    fn flag(&mut self, kind: DiscrepancyKind, property: Option<PropertyId>, detail: String) {
        let d = Discrepancy {
            kind,
            graph: self.name.clone(),
            property,
            flagged: self.flagged,
            detail,
        };
        self.report.push(d);
    }

    /// Exact validity and normalization invariance of a certificate.
    fn audit_certificate(&mut self, origin: &str, cert: &BknSolution) -> Result<(), OracleError> {
        self.report.certificates_checked += 1;
        let report = check_certificate(self.g, cert)?;
        if !report.valid {
            let why: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            self.flag(
                DiscrepancyKind::UnsoundCertificate,
                Some(cert.variant),
                format!("{origin} certificate rejected: {}", why.join("; ")),
            );
            return Ok(());
        }
        let normalized = normalize_solution(self.g, cert);
        let same_residual = residual(self.g, &normalized)? == report.residuals;
        if !same_residual || !check_certificate(self.g, &normalized)?.valid {
            self.flag(
                DiscrepancyKind::NormalizationBroken,
                Some(cert.variant),
                format!("{origin} certificate changed under normalization"),
            );
        }
        Ok(())
    }
}

/// Runs every cross-check on one graph.
pub fn audit_graph(g: &LabeledGraph, options: &CensusOptions) -> Result<CensusReport, OracleError> {
    let mut audit = GraphAudit {
        g,
        name: describe(g),
        flagged: g.has_charged_loop(),
        report: CensusReport {
            graphs: 1,
            ..CensusReport::default()
        },
    };
    let classify = ClassifyOptions {
        exhaustive_limit: options.exhaustive_limit,
        numeric: None,
    };
    let c = classify_all(g, &classify);
    if !c.is_fully_decided() {
        audit.report.undecided += 1;
    }
    let holding: Vec<&str> = c
        .profile()
        .iter()
        .filter(|(_, &h)| h)
        .map(|(p, _)| p.name())
        .collect();
    let key = if holding.is_empty() { "-".to_string() } else { holding.join(" ") };
    audit.report.profiles.insert(key, 1);
    for imp in &c.implications {
        audit.flag(DiscrepancyKind::ImplicationViolated, None, format!("{imp} fails"));
    }

    for outcome in c.outcomes.values() {
        if let Outcome::Decided(v) = outcome {
            if let Some(cert) = &v.certificate {
                audit.audit_certificate("decider", cert)?;
            }
        }
    }

    for p in [PropertyId::F, PropertyId::E].into_iter().filter(|_| options.exact) {
        let Some(decided) = c.outcomes[&p].holds() else { continue };
        match search_certificate_exact(g, p, options.exhaustive_limit) {
            Ok(found) => {
                audit.report.exact_checked += 1;
                if found.is_some() != decided {
                    audit.flag(
                        DiscrepancyKind::ExactMismatch,
                        Some(p),
                        format!("decider says {decided}, exact search found {}", found.is_some()),
                    );
                }
                if let Some(cert) = found {
                    audit.audit_certificate("exact search", &cert)?;
                }
            }
            Err(OracleError::Budget { .. }) => audit.report.exact_over_budget += 1,
            Err(e) => return Err(e),
        }
    }

    if let Some(budget) = options.numeric {
        for p in [PropertyId::Im, PropertyId::HI, PropertyId::VF, PropertyId::VE, PropertyId::NPC] {
            let Some(decided) = c.outcomes[&p].holds() else { continue };
            match search_certificate_numeric(g, p, budget)? {
                NumericOutcome::Found(cert) => {
                    audit.report.numeric_found += 1;
                    audit.audit_certificate("numeric search", &cert)?;
                    if !decided {
                        audit.flag(
                            DiscrepancyKind::CertificateContradictsDecider,
                            Some(p),
                            format!("decider rejects, numeric search found {}", cert_summary(g, &cert)),
                        );
                    }
                }
                NumericOutcome::NotFound { complete } if decided => {
                    if complete {
                        audit.flag(
                            DiscrepancyKind::DeciderRefuted,
                            Some(p),
                            "decider accepts, but no solution exists".into(),
                        );
                    } else {
                        audit.report.numeric_unconfirmed += 1;
                    }
                }
                NumericOutcome::NotFound { .. } => {}
                NumericOutcome::Exhausted => audit.report.numeric_exhausted += 1,
            }
        }
    }
    Ok(audit.report)
}

fn cert_summary(g: &LabeledGraph, cert: &BknSolution) -> String {
    let doc = cert.to_document(g);
    let a: Vec<String> = doc.a.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let gamma: Vec<String> = doc.gamma.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("a=({}) γ=({})", a.join(","), gamma.join(","))
}

/// Audits every graph within the bounds and aggregates the results.
pub fn run_census(options: &CensusOptions) -> Result<CensusReport, OracleError> {
    let mut report = CensusReport::default();
    for g in enumerate_graphs(&options.bounds) {
        report.merge(audit_graph(&g, options)?);
    }
    report.discrepancies.sort();
    Ok(report)
}
