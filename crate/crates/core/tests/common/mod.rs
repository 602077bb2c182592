#![allow(dead_code)]

use bkn_core::rational::{ratio, Rational};
use bkn_core::LabeledGraph;
use proptest::prelude::*;

/// (num, den) pairs for charges.
pub fn charge() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ratio(p, q))
}

pub fn index() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

pub fn build(charges: &[Rational], edges: &[(usize, usize, i64)]) -> LabeledGraph {
    let mut b = LabeledGraph::builder();
    for (v, k) in charges.iter().enumerate() {
        b = b.vertex(format!("v{}", v + 1), k.clone());
    }
    for (e, &(i, j, idx)) in edges.iter().enumerate() {
        b = b.edge(format!("e{}", e + 1), format!("v{}", i + 1), format!("v{}", j + 1), idx);
    }
    b.build().expect("generated graph is valid")
}

/// Graphs with `1..=max_v` vertices and up to `max_e` edges, loops allowed when `loops`.
pub fn graph(max_v: usize, max_e: usize, loops: bool) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_v).prop_flat_map(move |n| {
        let slots = if loops { n * n } else { n * (n - 1) };
        let max_e = if slots == 0 { 0 } else { max_e };
        let edge = (0..slots.max(1), index()).prop_map(move |(s, b)| {
            if loops {
                (s / n, s % n, b)
            } else {
                let i = s / (n - 1).max(1);
                let j = (i + 1 + s % (n - 1).max(1)) % n;
                (i, j, b)
            }
        });
        (
            proptest::collection::vec(charge(), n),
            proptest::collection::vec(edge, 0..=max_e),
        )
            .prop_map(|(ks, es)| build(&ks, &es))
    })
}
