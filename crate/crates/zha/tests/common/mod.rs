//! Shared fixtures for the exhaustive suites: a deterministic family of
//! acyclic two-column graphs.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use zha::{Point, TwoColumnGraph};

/// A reproducible sample of acyclic graphs with columns up to `l_max` and
/// `r_max`, always including the arrowless grids.
pub fn sample_graphs(l_max: usize, r_max: usize, count: usize, seed: u64) -> Vec<TwoColumnGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for l in 0..=l_max {
        for r in 0..=r_max {
            out.push(TwoColumnGraph::new(l, r, [], []).unwrap());
        }
    }
    while out.len() < count {
        let l = rng.gen_range(1..=l_max);
        let r = rng.gen_range(1..=r_max);
        let mut arrows = Vec::new();
        for a in 1..=l {
            for b in 1..=r {
                if rng.gen_bool(0.18) {
                    arrows.push((Point::L(a), Point::R(b)));
                }
                if rng.gen_bool(0.18) {
                    arrows.push((Point::R(b), Point::L(a)));
                }
            }
        }
        let g = TwoColumnGraph::new(l, r, arrows, []).unwrap();
        if g.is_acyclic() {
            out.push(g);
        }
    }
    out
}

/// Every subset of the graph's points, for question-mark enumeration.
pub fn all_question_sets(g: &TwoColumnGraph) -> Vec<Vec<Point>> {
    let points = g.points();
    let n = points.len();
    assert!(n <= 16, "too many points to enumerate subsets");
    (0u32..(1 << n))
        .map(|mask| {
            points
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect()
        })
        .collect()
}
