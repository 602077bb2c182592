//! Matrix criteria for the seven solvability properties.
//!
//! `E` and `VE` enumerate principal submatrices and are budgeted; the others
//! need one inertia computation or one kernel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{build_a, build_a_epsilon, build_a_plus, build_h, SignAssignment};
use crate::graph::LabeledGraph;
use crate::linalg::{inertia, nowhere_zero_kernel_vector, Inertia, RatMatrix, RatVector};
use crate::oracle::{search_certificate_numeric, BknSolution, NumericBudget};
use crate::rational::{int, sign, Rational};

/// Attached to every verdict on a graph with a loop at a charged vertex.
pub const CHARGED_LOOP_CAVEAT: &str =
    "graph has a loop at a vertex with nonzero charge; the matrix criteria are not proven there";

const EMPTY_GRAPH_NOTE: &str = "graph has no vertices, so no nontrivial solution exists";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropertyId {
    Im,
    HI,
    F,
    E,
    VF,
    VE,
    NPC,
}

impl PropertyId {
    pub const ALL: [PropertyId; 7] = [
        PropertyId::Im,
        PropertyId::HI,
        PropertyId::F,
        PropertyId::E,
        PropertyId::VF,
        PropertyId::VE,
        PropertyId::NPC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropertyId::Im => "Im",
            PropertyId::HI => "HI",
            PropertyId::F => "F",
            PropertyId::E => "E",
            PropertyId::VF => "VF",
            PropertyId::VE => "VE",
            PropertyId::NPC => "NPC",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            PropertyId::Im => "immersed",
            PropertyId::HI => "horizontally immersed",
            PropertyId::F => "fibered",
            PropertyId::E => "embedded",
            PropertyId::VF => "virtually fibered",
            PropertyId::VE => "virtually embedded",
            PropertyId::NPC => "nonpositively curved",
        }
    }

    /// Properties decided by exhaustive sign search, whose certificates are exact.
    pub fn is_discrete(self) -> bool {
        matches!(self, PropertyId::F | PropertyId::E)
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property {s:?} (expected one of Im, HI, F, E, VF, VE, NPC)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixKind {
    A,
    #[serde(rename = "A_plus")]
    APlus,
    H,
}

/// Why a verdict came out the way it did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Spectrum {
        matrix: MatrixKind,
        inertia: Inertia,
    },
    Kernel {
        matrix: MatrixKind,
        inertia: Option<Inertia>,
        vector: RatVector,
    },
    Submatrix {
        matrix: MatrixKind,
        subset: Vec<String>,
        /// Edge signs on the edges inside `subset`, when the matrix depends on them.
        signs: BTreeMap<String, i8>,
        inertia: Option<Inertia>,
        kernel: Option<RatVector>,
    },
    ZeroMatrix {
        matrix: MatrixKind,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: PropertyId,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub certificate: Option<BknSolution>,
    pub caveat: Option<String>,
}

impl Verdict {
    fn new(g: &LabeledGraph, property: PropertyId, holds: bool, witness: Option<Witness>) -> Self {
        Verdict {
            property,
            holds,
            witness,
            certificate: None,
            caveat: g.has_charged_loop().then(|| CHARGED_LOOP_CAVEAT.to_string()),
        }
    }

    fn empty(property: PropertyId) -> Self {
        Verdict {
            property,
            holds: false,
            witness: None,
            certificate: None,
            caveat: Some(EMPTY_GRAPH_NOTE.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("undecided: budget ({needed} cases exceed limit {limit})")]
    Budget { needed: u128, limit: u64 },
}

fn budget(bits: usize, limit: u64) -> Result<(), DecideError> {
    let needed = if bits >= 127 { u128::MAX } else { 1u128 << bits };
    if needed > limit as u128 {
        return Err(DecideError::Budget { needed, limit });
    }
    Ok(())
}

fn inertia_of(m: &RatMatrix) -> Inertia {
    inertia(m).expect("criteria matrices are symmetric")
}

/// Im and HI share one criterion: either `A⁺` has a negative eigenvalue, or
/// `A⁺` is positive semidefinite and singular while the diagonal of `A` is
/// weakly of one sign.
pub fn decide_im_hi(g: &LabeledGraph) -> Verdict {
    if g.vertex_count() == 0 {
        return Verdict::empty(PropertyId::Im);
    }
    let diagonal = build_a(g).diagonal();
    let one_sign = diagonal.iter().all(|d| !d.is_negative()) || diagonal.iter().all(|d| !d.is_positive());
    let spectrum = inertia_of(&build_a_plus(g));
    let holds = spectrum.has_negative() || (one_sign && spectrum.is_positive_semidefinite() && spectrum.is_singular());
    Verdict::new(
        g,
        PropertyId::Im,
        holds,
        Some(Witness::Spectrum {
            matrix: MatrixKind::APlus,
            inertia: spectrum,
        }),
    )
}

/// `|x|` as `a` and `γ_w = ε_w · sgn(x_tail) · sgn(x_head)` on the darts of `edges`.
fn certificate_from_kernel(
    g: &LabeledGraph,
    variant: PropertyId,
    support: &[usize],
    x: &RatVector,
    edge_sign: impl Fn(usize) -> Option<i8>,
) -> BknSolution {
    let mut a = vec![Rational::zero(); g.vertex_count()];
    let mut s = vec![0i8; g.vertex_count()];
    for (&v, xi) in support.iter().zip(&x.entries) {
        a[v] = xi.abs();
        s[v] = sign(xi);
    }
    let gamma = (0..g.darts().len())
        .map(|d| match edge_sign(g.darts()[d].edge) {
            Some(eps) => int(i64::from(eps * s[g.tail(d)] * s[g.head(d)])),
            None => Rational::zero(),
        })
        .collect();
    BknSolution { a, gamma, variant }
}

/// F holds iff `A` has a kernel vector with no zero coordinate.
pub fn decide_f(g: &LabeledGraph) -> Verdict {
    if g.vertex_count() == 0 {
        return Verdict::empty(PropertyId::F);
    }
    let a = build_a(g);
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    match nowhere_zero_kernel_vector(&a) {
        Some(x) => {
            let cert = certificate_from_kernel(g, PropertyId::F, &all, &x, |_| Some(1));
            let mut v = Verdict::new(
                g,
                PropertyId::F,
                true,
                Some(Witness::Kernel {
                    matrix: MatrixKind::A,
                    inertia: None,
                    vector: x,
                }),
            );
            v.certificate = Some(cert);
            v
        }
        None => Verdict::new(g, PropertyId::F, false, None),
    }
}

fn vertex_subset(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// E holds iff for some nonempty `S ⊆ V` and signs `ε` on the edges inside
/// `S`, the principal submatrix of `A^ε` on `S` has a nowhere-zero kernel
/// vector. Refuses when `2^|edges| · 2^|V|` exceeds `limit`.
pub fn decide_e(g: &LabeledGraph, limit: u64) -> Result<Verdict, DecideError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Verdict::empty(PropertyId::E));
    }
    budget(n + g.edge_count(), limit)?;
    let full = (1u64 << n) - 1;
    let inside_of = |mask: u64| -> Vec<usize> {
        (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                mask >> u & 1 == 1 && mask >> v & 1 == 1
            })
            .collect()
    };
    // S = V with all signs positive first: that is exactly the F test.
    let order = std::iter::once((full, 0)).chain(
        (1..=full)
            .flat_map(|mask| (0..1u64 << inside_of(mask).len()).map(move |signs| (mask, signs)))
            .filter(|&case| case != (full, 0)),
    );
    for (mask, signs) in order {
        let support = vertex_subset(mask, n);
        let inside = inside_of(mask);
        let mut eps = vec![1i8; g.edge_count()];
        for (i, &e) in inside.iter().enumerate() {
            if signs >> i & 1 == 1 {
                eps[e] = -1;
            }
        }
        let eps = SignAssignment::new(eps).expect("±1 signs");
        let sub = build_a_epsilon(g, &eps)
            .expect("one sign per edge")
            .principal_by_index(&support)
            .expect("nonempty subset");
        let Some(x) = nowhere_zero_kernel_vector(&sub) else {
            continue;
        };
        let cert = certificate_from_kernel(g, PropertyId::E, &support, &x, |e| {
            inside.contains(&e).then(|| eps.get(e))
        });
        let mut v = Verdict::new(
            g,
            PropertyId::E,
            true,
            Some(Witness::Submatrix {
                matrix: MatrixKind::A,
                subset: support.iter().map(|&v| g.vertices()[v].id.clone()).collect(),
                signs: inside
                    .iter()
                    .map(|&e| (g.edges()[e].id.clone(), eps.get(e)))
                    .collect(),
                inertia: None,
                kernel: Some(x),
            }),
        );
        v.certificate = Some(cert);
        return Ok(v);
    }
    Ok(Verdict::new(g, PropertyId::E, false, None))
}

/// Either a negative eigenvalue, or positive semidefinite with a
/// nowhere-zero kernel vector.
fn vf_condition(h: &RatMatrix) -> (bool, Inertia, Option<RatVector>) {
    let spectrum = inertia_of(h);
    if spectrum.has_negative() {
        return (true, spectrum, None);
    }
    let kernel = nowhere_zero_kernel_vector(h);
    (kernel.is_some(), spectrum, kernel)
}

pub fn decide_vf(g: &LabeledGraph) -> Verdict {
    if g.vertex_count() == 0 {
        return Verdict::empty(PropertyId::VF);
    }
    let (holds, spectrum, kernel) = vf_condition(&build_h(g));
    let witness = match kernel {
        Some(vector) => Witness::Kernel {
            matrix: MatrixKind::H,
            inertia: Some(spectrum),
            vector,
        },
        None => Witness::Spectrum {
            matrix: MatrixKind::H,
            inertia: spectrum,
        },
    };
    Verdict::new(g, PropertyId::VF, holds, Some(witness))
}

/// VE holds iff some principal submatrix of `H` meets the VF condition.
/// Refuses when `2^|V|` exceeds `limit`.
pub fn decide_ve(g: &LabeledGraph, limit: u64) -> Result<Verdict, DecideError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Verdict::empty(PropertyId::VE));
    }
    budget(n, limit)?;
    let h = build_h(g);
    let full = (1u64 << n) - 1;
    // Whole matrix first, then proper subsets in decreasing mask order.
    for mask in std::iter::once(full).chain((1..full).rev()) {
        let support = vertex_subset(mask, n);
        let sub = h.principal_by_index(&support).expect("nonempty subset");
        let (holds, spectrum, kernel) = vf_condition(&sub);
        if holds {
            return Ok(Verdict::new(
                g,
                PropertyId::VE,
                true,
                Some(Witness::Submatrix {
                    matrix: MatrixKind::H,
                    subset: support.iter().map(|&v| g.vertices()[v].id.clone()).collect(),
                    signs: BTreeMap::new(),
                    inertia: Some(spectrum),
                    kernel,
                }),
            ));
        }
    }
    Ok(Verdict::new(g, PropertyId::VE, false, None))
}

/// NPC holds iff `H` is zero or has a negative eigenvalue.
pub fn decide_npc(g: &LabeledGraph) -> Verdict {
    if g.vertex_count() == 0 {
        return Verdict::empty(PropertyId::NPC);
    }
    let h = build_h(g);
    if h.is_zero() {
        return Verdict::new(
            g,
            PropertyId::NPC,
            true,
            Some(Witness::ZeroMatrix {
                matrix: MatrixKind::H,
            }),
        );
    }
    let spectrum = inertia_of(&h);
    Verdict::new(
        g,
        PropertyId::NPC,
        spectrum.has_negative(),
        Some(Witness::Spectrum {
            matrix: MatrixKind::H,
            inertia: spectrum,
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Limit on enumerated cases for E and VE.
    pub exhaustive_limit: u64,
    /// When set, holding continuous verdicts get a certificate from the numeric search if it finds one.
    pub numeric: Option<NumericBudget>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            exhaustive_limit: 1 << 20,
            numeric: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Decided(Verdict),
    Undecided(DecideError),
}

impl Outcome {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Outcome::Decided(v) => Some(v.holds),
            Outcome::Undecided(_) => None,
        }
    }

    pub fn verdict(&self) -> Option<&Verdict> {
        match self {
            Outcome::Decided(v) => Some(v),
            Outcome::Undecided(_) => None,
        }
    }
}

pub fn decide(g: &LabeledGraph, property: PropertyId, options: &ClassifyOptions) -> Outcome {
    let result = match property {
        PropertyId::Im | PropertyId::HI => {
            let mut v = decide_im_hi(g);
            v.property = property;
            Ok(v)
        }
        PropertyId::F => Ok(decide_f(g)),
        PropertyId::E => decide_e(g, options.exhaustive_limit),
        PropertyId::VF => Ok(decide_vf(g)),
        PropertyId::VE => decide_ve(g, options.exhaustive_limit),
        PropertyId::NPC => Ok(decide_npc(g)),
    };
    match result {
        Ok(mut v) => {
            if let (true, None, Some(budget)) = (v.holds, &v.certificate, options.numeric) {
                if let Ok(found) = search_certificate_numeric(g, property, budget) {
                    v.certificate = found.solution().cloned();
                }
            }
            Outcome::Decided(v)
        }
        Err(e) => Outcome::Undecided(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub outcomes: BTreeMap<PropertyId, Outcome>,
    pub implications: Vec<Implication>,
    pub caveat: Option<String>,
}

impl Classification {
    pub fn profile(&self) -> BTreeMap<PropertyId, bool> {
        self.outcomes
            .iter()
            .filter_map(|(&p, o)| o.holds().map(|h| (p, h)))
            .collect()
    }

    pub fn is_fully_decided(&self) -> bool {
        self.outcomes.values().all(|o| o.holds().is_some())
    }
}

pub fn classify_all(g: &LabeledGraph, options: &ClassifyOptions) -> Classification {
    classify_some(g, &PropertyId::ALL, options)
}

pub fn classify_some(g: &LabeledGraph, properties: &[PropertyId], options: &ClassifyOptions) -> Classification {
    let outcomes: BTreeMap<PropertyId, Outcome> = properties
        .iter()
        .map(|&p| (p, decide(g, p, options)))
        .collect();
    let profile = outcomes
        .iter()
        .filter_map(|(&p, o)| o.holds().map(|h| (p, h)))
        .collect();
    Classification {
        implications: check_implications(&profile),
        outcomes,
        caveat: g.has_charged_loop().then(|| CHARGED_LOOP_CAVEAT.to_string()),
    }
}

/// One of the implications every profile must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Implication {
    pub from: PropertyId,
    pub to: PropertyId,
    pub both_ways: bool,
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = if self.both_ways { "⇔" } else { "⇒" };
        write!(f, "{}{}{}", self.from, arrow, self.to)
    }
}

impl Serialize for Implication {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub const IMPLICATIONS: [Implication; 8] = {
    use PropertyId::*;
    const fn one_way(from: PropertyId, to: PropertyId) -> Implication {
        Implication {
            from,
            to,
            both_ways: false,
        }
    }
    [
        one_way(F, E),
        one_way(F, VF),
        one_way(E, VE),
        one_way(VF, VE),
        one_way(VF, HI),
        one_way(VE, Im),
        one_way(NPC, VF),
        Implication {
            from: Im,
            to: HI,
            both_ways: true,
        },
    ]
};

/// Implications broken by `profile`; properties absent from it are skipped.
pub fn check_implications(profile: &BTreeMap<PropertyId, bool>) -> Vec<Implication> {
    IMPLICATIONS
        .iter()
        .filter(|imp| {
            let (Some(&a), Some(&b)) = (profile.get(&imp.from), profile.get(&imp.to)) else {
                return false;
            };
            (a && !b) || (imp.both_ways && b && !a)
        })
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::check_certificate;
    use crate::rational::ratio;

    fn pair(k1: Rational, k2: Rational, b: i64) -> LabeledGraph {
        LabeledGraph::builder()
            .vertex("v1", k1)
            .vertex("v2", k2)
            .edge("e1", "v1", "v2", b)
            .build()
            .unwrap()
    }

    fn loop_graph(k: Rational, b: i64) -> LabeledGraph {
        LabeledGraph::builder()
            .vertex("v1", k)
            .edge("e1", "v1", "v1", b)
            .build()
            .unwrap()
    }

    fn profile(g: &LabeledGraph) -> Vec<(PropertyId, bool)> {
        classify_all(g, &ClassifyOptions::default())
            .profile()
            .into_iter()
            .collect()
    }

    fn holding(g: &LabeledGraph) -> Vec<PropertyId> {
        profile(g).into_iter().filter(|p| p.1).map(|p| p.0).collect()
    }

    #[test]
    fn examples_im_hi() {
        assert!(decide_im_hi(&pair(int(1), int(1), 1)).holds);
        assert!(decide_im_hi(&pair(int(0), int(0), 1)).holds);
        assert!(!decide_im_hi(&pair(int(2), int(2), 1)).holds);
    }

    #[test]
    fn examples_f() {
        let v = decide_f(&pair(int(1), int(1), 1));
        assert!(v.holds);
        let Some(Witness::Kernel { vector, .. }) = v.witness else { panic!() };
        assert_eq!(vector.entries, vec![int(1), int(1)]);
        assert!(!decide_f(&pair(int(1), int(-1), 1)).holds);
        assert!(decide_f(&pair(int(1), int(1), -1)).holds);
    }

    #[test]
    fn examples_e() {
        let v = decide_e(&pair(int(0), int(5), 3), 1 << 20).unwrap();
        assert!(v.holds);
        let Some(Witness::Submatrix { subset, .. }) = &v.witness else { panic!() };
        assert_eq!(subset, &vec!["v1".to_string()]);
        assert!(!decide_e(&pair(int(1), int(-1), 1), 1 << 20).unwrap().holds);
        assert_eq!(
            decide_e(&pair(int(1), int(-1), 1), 4),
            Err(DecideError::Budget { needed: 8, limit: 4 })
        );
    }

    #[test]
    fn examples_vf_npc() {
        assert!(decide_vf(&pair(ratio(1, 2), ratio(1, 2), 1)).holds);
        assert!(decide_npc(&pair(ratio(1, 2), ratio(1, 2), 1)).holds);
        assert!(decide_vf(&pair(int(1), int(1), 1)).holds);
        assert!(!decide_npc(&pair(int(1), int(1), 1)).holds);
        let zero = decide_npc(&pair(int(0), int(0), 1));
        assert!(zero.holds);
        assert_eq!(zero.witness, Some(Witness::ZeroMatrix { matrix: MatrixKind::H }));
    }

    #[test]
    fn examples_ve() {
        assert!(decide_ve(&pair(int(0), int(5), 3), 1 << 20).unwrap().holds);
        assert!(!decide_ve(&pair(int(2), int(2), 1), 1 << 20).unwrap().holds);
    }

    #[test]
    fn full_profiles() {
        use PropertyId::*;
        assert_eq!(holding(&pair(int(1), int(1), 1)), vec![Im, HI, F, E, VF, VE]);
        assert_eq!(holding(&pair(int(2), int(2), 1)), Vec::<PropertyId>::new());
        assert_eq!(holding(&pair(ratio(1, 2), ratio(1, 2), 1)), vec![Im, HI, VF, VE, NPC]);
        assert_eq!(holding(&loop_graph(int(0), 1)), vec![Im, HI, VF, VE, NPC]);
    }

    #[test]
    fn caveat_on_charged_loops_only() {
        assert!(decide_npc(&loop_graph(int(2), 1)).caveat.is_some());
        assert!(decide_npc(&loop_graph(int(0), 1)).caveat.is_none());
        assert!(decide_npc(&pair(int(1), int(1), 1)).caveat.is_none());
    }

    #[test]
    fn certificates_check() {
        let g = pair(int(1), int(1), -1);
        let f = decide_f(&g);
        assert!(check_certificate(&g, f.certificate.as_ref().unwrap()).unwrap().valid);
        let e = decide_e(&pair(int(0), int(5), 3), 1 << 20).unwrap();
        let g = pair(int(0), int(5), 3);
        assert!(check_certificate(&g, e.certificate.as_ref().unwrap()).unwrap().valid);
    }

    #[test]
    fn f_implies_e_on_full_support() {
        let g = pair(int(1), int(1), 1);
        let e = decide_e(&g, 1 << 20).unwrap();
        let Some(Witness::Submatrix { subset, signs, .. }) = e.witness else { panic!() };
        assert_eq!(subset.len(), 2);
        assert!(signs.values().all(|&s| s == 1));
    }

    #[test]
    fn implications_report() {
        use PropertyId::*;
        let mut p: BTreeMap<PropertyId, bool> = PropertyId::ALL.iter().map(|&x| (x, false)).collect();
        assert!(check_implications(&p).is_empty());
        p.insert(F, true);
        let broken: Vec<String> = check_implications(&p).iter().map(|i| i.to_string()).collect();
        assert_eq!(broken, vec!["F⇒E", "F⇒VF"]);
        let mut q: BTreeMap<PropertyId, bool> = BTreeMap::new();
        q.insert(HI, true);
        q.insert(Im, false);
        assert_eq!(check_implications(&q)[0].to_string(), "Im⇔HI");
    }

    #[test]
    fn numeric_certificates_attached() {
        let g = pair(ratio(1, 2), ratio(1, 2), 1);
        let opts = ClassifyOptions {
            numeric: Some(NumericBudget::default()),
            ..ClassifyOptions::default()
        };
        let c = classify_all(&g, &opts);
        for p in [PropertyId::Im, PropertyId::HI, PropertyId::VF, PropertyId::VE, PropertyId::NPC] {
            let v = c.outcomes[&p].verdict().unwrap();
            let cert = v.certificate.as_ref().unwrap_or_else(|| panic!("{p} certificate"));
            assert_eq!(cert.variant, p);
            assert!(check_certificate(&g, cert).unwrap().valid);
        }
    }

    #[test]
    fn property_names_parse() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>(), Ok(p));
        }
        assert!("XX".parse::<PropertyId>().is_err());
    }
}
