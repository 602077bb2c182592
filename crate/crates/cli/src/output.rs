//! JSON and text renderings. Field order is fixed by the structs below, so
//! output is byte-identical for identical input.

use std::collections::BTreeMap;
use std::fmt::Write;

use bkn_core::census::{CensusOptions, CensusReport};
use bkn_core::criteria::{build_a, build_a_plus, build_h_with, signed_components};
use bkn_core::decider::{Classification, Outcome, Witness, IMPLICATIONS};
use bkn_core::linalg::RatMatrix;
use bkn_core::oracle::{BknSolution, CertificateDocument, CheckReport, CheckViolation};
use bkn_core::rational::format_rational;
use bkn_core::LabeledGraph;
use serde::Serialize;

#[derive(Serialize)]
struct MatrixTable {
    labels: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl MatrixTable {
    fn new(m: &RatMatrix) -> Self {
        MatrixTable {
            labels: m.row_labels().to_vec(),
            rows: (0..m.rows())
                .map(|i| m.row(i).iter().map(format_rational).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct Matrices {
    #[serde(rename = "A")]
    a: MatrixTable,
    #[serde(rename = "A_plus")]
    a_plus: MatrixTable,
    #[serde(rename = "H")]
    h: MatrixTable,
}

#[derive(Serialize)]
struct ComponentSummary {
    classes: Vec<Vec<String>>,
    quotient_edges: Vec<String>,
    bipartite: bool,
    s: BTreeMap<String, i8>,
}

#[derive(Serialize)]
struct VerdictRecord<'a> {
    property: &'static str,
    description: &'static str,
    holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    undecided: Option<String>,
    witness: Option<&'a Witness>,
    certificate: Option<CertificateDocument>,
    caveat: Option<&'a str>,
}

#[derive(Serialize)]
struct ImplicationReport {
    checked: Vec<String>,
    violated: Vec<String>,
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    vertices: Vec<&'a str>,
    edges: Vec<&'a str>,
    verdicts: Vec<VerdictRecord<'a>>,
    matrices: Matrices,
    signed_components: ComponentSummary,
    implications: ImplicationReport,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

pub fn classify_json(g: &LabeledGraph, c: &Classification) -> String {
    let sc = signed_components(g);
    let vid = |v: usize| g.vertices()[v].id.clone();
    let verdicts = c
        .outcomes
        .iter()
        .map(|(&p, outcome)| match outcome {
            Outcome::Decided(v) => VerdictRecord {
                property: p.name(),
                description: p.description(),
                holds: Some(v.holds),
                undecided: None,
                witness: v.witness.as_ref(),
                certificate: v.certificate.as_ref().map(|s| s.to_document(g)),
                caveat: v.caveat.as_deref(),
            },
            Outcome::Undecided(e) => VerdictRecord {
                property: p.name(),
                description: p.description(),
                holds: None,
                undecided: Some(e.to_string()),
                witness: None,
                certificate: None,
                caveat: c.caveat.as_deref(),
            },
        })
        .collect();
    let out = ClassifyOutput {
        vertices: g.vertices().iter().map(|v| v.id.as_str()).collect(),
        edges: g.edges().iter().map(|e| e.id.as_str()).collect(),
        verdicts,
        matrices: Matrices {
            a: MatrixTable::new(&build_a(g)),
            a_plus: MatrixTable::new(&build_a_plus(g)),
            h: MatrixTable::new(&build_h_with(g, &sc)),
        },
        signed_components: ComponentSummary {
            classes: sc.classes.iter().map(|cl| cl.iter().map(|&v| vid(v)).collect()).collect(),
            quotient_edges: sc.quotient_edges.iter().map(|&e| g.edges()[e].id.clone()).collect(),
            bipartite: sc.bipartite,
            s: (0..g.vertex_count()).map(|v| (vid(v), sc.s[v])).collect(),
        },
        implications: ImplicationReport {
            checked: IMPLICATIONS.iter().map(ToString::to_string).collect(),
            violated: c.implications.iter().map(ToString::to_string).collect(),
        },
    };
    pretty(&out)
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    valid: bool,
    variant: &'static str,
    residuals: BTreeMap<String, String>,
    violations: &'a [CheckViolation],
}

pub fn check_json(g: &LabeledGraph, cert: &BknSolution, report: &CheckReport) -> String {
    pretty(&CheckOutput {
        valid: report.valid,
        variant: cert.variant.name(),
        residuals: g
            .vertices()
            .iter()
            .zip(&report.residuals)
            .map(|(v, r)| (v.id.clone(), format_rational(r)))
            .collect(),
        violations: &report.violations,
    })
}

#[derive(Serialize)]
struct BoundsSummary {
    max_vertices: usize,
    charges: Vec<String>,
    indices: Vec<i64>,
    max_edges: usize,
    loops: bool,
    numeric_grid: Option<u32>,
}

#[derive(Serialize)]
struct CensusOutput<'a> {
    bounds: BoundsSummary,
    passed: bool,
    report: &'a CensusReport,
}

fn bounds_summary(options: &CensusOptions) -> BoundsSummary {
    let b = &options.bounds;
    BoundsSummary {
        max_vertices: b.max_vertices,
        charges: b.charges.iter().map(format_rational).collect(),
        indices: b.indices.clone(),
        max_edges: b.max_edges,
        loops: b.loops,
        numeric_grid: options.numeric.map(|n| n.grid),
    }
}

pub fn census_json(options: &CensusOptions, report: &CensusReport) -> String {
    pretty(&CensusOutput {
        bounds: bounds_summary(options),
        passed: report.passed(),
        report,
    })
}

pub fn census_text(options: &CensusOptions, report: &CensusReport) -> String {
    let b = bounds_summary(options);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "census: {} labelled graphs (|V| <= {}, charges {{{}}}, indices {{{}}}, <= {} edges, loops {})",
        report.graphs,
        b.max_vertices,
        b.charges.join(", "),
        b.indices.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        b.max_edges,
        if b.loops { "on" } else { "off" },
    );
    let _ = writeln!(s, "profiles (holding properties):");
    for (profile, count) in &report.profiles {
        let _ = writeln!(s, "  {count:>8}  {profile}");
    }
    let _ = writeln!(s, "undecided graphs: {}", report.undecided);
    let _ = writeln!(
        s,
        "exact F/E comparisons: {} (over budget: {})",
        report.exact_checked, report.exact_over_budget
    );
    let _ = writeln!(s, "certificates checked: {}", report.certificates_checked);
    match b.numeric_grid {
        Some(grid) => {
            let _ = writeln!(
                s,
                "numeric search (grid {grid}): found {}, unconfirmed {}, exhausted {}",
                report.numeric_found, report.numeric_unconfirmed, report.numeric_exhausted
            );
        }
        None => {
            let _ = writeln!(s, "numeric search: off");
        }
    }
    let _ = writeln!(
        s,
        "discrepancies: {} ({} failing)",
        report.discrepancies.len(),
        report.failures
    );
    for d in &report.discrepancies {
        let _ = writeln!(s, "  {d}");
    }
    let _ = writeln!(s, "status: {}", if report.passed() { "PASS" } else { "FAIL" });
    s
}
