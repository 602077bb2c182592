//! The matrices `A^ε`, `A^+` and `H` of a labelled graph, and the
//! signed-component quotient that supplies the sign function used by `H`.

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::graph::LabeledGraph;
use crate::linalg::RatMatrix;
use crate::rational::{int, sign, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("sign assignment covers {got} edges, graph has {expected}")]
    SignCount { expected: usize, got: usize },
    #[error("sign assignment value {0} is not ±1")]
    SignValue(i8),
}

/// A sign per geometric edge, shared by both of its darts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignAssignment(Vec<i8>);

impl SignAssignment {
    pub fn constant(edges: usize, value: i8) -> Self {
        SignAssignment(vec![value; edges])
    }

    pub fn all_positive(g: &LabeledGraph) -> Self {
        Self::constant(g.edge_count(), 1)
    }

    pub fn new(signs: Vec<i8>) -> Result<Self, CriteriaError> {
        match signs.iter().find(|&&s| s != 1 && s != -1) {
            Some(&bad) => Err(CriteriaError::SignValue(bad)),
            None => Ok(SignAssignment(signs)),
        }
    }

    /// Sign `k` of the mask: bit `i` set means edge `i` is negative.
    pub fn from_mask(edges: usize, mask: u64) -> Self {
        SignAssignment((0..edges).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, edge: usize) -> i8 {
        self.0[edge]
    }
}

fn unit_over(b: i64) -> Rational {
    Rational::new(1.into(), b.into())
}

fn labelled_square(g: &LabeledGraph) -> RatMatrix {
    RatMatrix::square(g.vertex_ids())
}

/// `A^ε`: diagonal `k_v − Σ ε_w/b_w` over loop darts at `v`, off-diagonal
/// `−Σ ε_w/b_w` over darts from `v` to `v'`.
pub fn build_a_epsilon(g: &LabeledGraph, eps: &SignAssignment) -> Result<RatMatrix, CriteriaError> {
    if eps.0.len() != g.edge_count() {
        return Err(CriteriaError::SignCount {
            expected: g.edge_count(),
            got: eps.0.len(),
        });
    }
    let mut m = labelled_square(g);
    for v in 0..g.vertex_count() {
        m.set(v, v, g.charge(v).clone());
    }
    for (d, dart) in g.darts().iter().enumerate() {
        let term = unit_over(dart.index) * int(eps.get(dart.edge).into());
        m.add_to(dart.tail, g.head(d), &-term);
    }
    Ok(m)
}

/// `A^ε` for `ε ≡ +1`.
pub fn build_a(g: &LabeledGraph) -> RatMatrix {
    build_a_epsilon(g, &SignAssignment::all_positive(g)).expect("sign count matches")
}

/// `A^+`: like `A^{ε≡1}` with `|k_v|` and `|b_w|`.
pub fn build_a_plus(g: &LabeledGraph) -> RatMatrix {
    let mut m = labelled_square(g);
    for v in 0..g.vertex_count() {
        m.set(v, v, g.charge(v).abs());
    }
    for (d, dart) in g.darts().iter().enumerate() {
        m.add_to(dart.tail, g.head(d), &-unit_over(dart.index.abs()));
    }
    m
}

/// Quotient of the graph by the positive-charge-product path relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedComponents {
    /// Vertex positions per class, classes ordered by their first vertex.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Geometric edges not absorbed into a charged class.
    pub quotient_edges: Vec<usize>,
    pub bipartite: bool,
    /// Sign function per vertex; identically zero unless bipartite.
    pub s: Vec<i8>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds the signed-component quotient.
///
/// Vertices are equivalent when joined by a path along which consecutive
/// charges have positive product (the empty path included). An edge is
/// absorbed when both ends lie in one class containing a charged vertex;
/// the remaining edges form the quotient. The quotient counts as bipartite
/// when it admits a 2-coloring that flips across every quotient edge and
/// gives positive classes `+1` and negative classes `−1`; classes of zero
/// charge take whichever color the coloring forces (or `+1` if free).
pub fn signed_components(g: &LabeledGraph) -> SignedComponents {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        if (g.charge(u) * g.charge(v)).is_positive() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(Vec::new());
        }
        class_of[v] = class_of[root];
        classes[class_of[v]].push(v);
    }
    let class_sign: Vec<i8> = classes.iter().map(|c| sign(g.charge(c[0]))).collect();

    let quotient_edges: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (u, v) = g.endpoints(e);
            !(class_of[u] == class_of[v] && class_sign[class_of[u]] != 0)
        })
        .collect();

    let m = classes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &e in &quotient_edges {
        let (u, v) = g.endpoints(e);
        adj[class_of[u]].push(class_of[v]);
        adj[class_of[v]].push(class_of[u]);
    }
    let mut color = vec![0i8; m];
    let mut bipartite = true;
    for start in 0..m {
        if color[start] != 0 {
            continue;
        }
        color[start] = 1;
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if color[d] == 0 {
                    color[d] = -color[c];
                    component.push(d);
                    stack.push(d);
                } else if color[d] == color[c] {
                    bipartite = false;
                }
            }
        }
        // Flip the whole component if needed so charged classes carry their sign.
        let mut flip = None;
        for &c in &component {
            if class_sign[c] == 0 {
                continue;
            }
            let wanted = class_sign[c] * color[c];
            match flip {
                None => flip = Some(wanted),
                Some(f) if f != wanted => bipartite = false,
                _ => {}
            }
        }
        if let Some(-1) = flip {
            for &c in &component {
                color[c] = -color[c];
            }
        }
    }
    let s = if bipartite {
        (0..n).map(|v| color[class_of[v]]).collect()
    } else {
        vec![0; n]
    };
    SignedComponents {
        classes,
        class_of,
        quotient_edges,
        bipartite,
        s,
    }
}

/// `H` from precomputed signed components.
pub fn build_h_with(g: &LabeledGraph, sc: &SignedComponents) -> RatMatrix {
    let mut m = labelled_square(g);
    for v in 0..g.vertex_count() {
        m.set(v, v, g.charge(v) * int(sc.s[v].into()));
    }
    for (d, dart) in g.darts().iter().enumerate() {
        let (u, v) = (dart.tail, g.head(d));
        if u == v || (g.charge(u) * g.charge(v)).is_positive() {
            m.add_to(u, v, &-unit_over(dart.index.abs()));
        }
    }
    m
}

/// `H`: diagonal `s(v)·k_v − Σ 1/|b_w|` over loop darts, off-diagonal
/// `−Σ 1/|b_w|` between vertices of same-sign nonzero charge, else zero.
pub fn build_h(g: &LabeledGraph) -> RatMatrix {
    build_h_with(g, &signed_components(g))
}
