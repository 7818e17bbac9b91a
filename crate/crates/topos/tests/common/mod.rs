//! Seeded generators for posets and presheaves.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use zha_topos::{FinitePoset, Presheaf};

/// A random DAG-presented poset with up to `max_points` points.
pub fn random_poset(rng: &mut ChaCha8Rng, max_points: usize) -> FinitePoset {
    let n = rng.gen_range(1..=max_points);
    let names = (0..n).map(|i| format!("p{i}")).collect();
    let mut edges = Vec::new();
    for hi in 1..n {
        for lo in 0..hi {
            if rng.gen_bool(0.4) {
                edges.push((hi, lo));
            }
        }
    }
    FinitePoset::from_dag(names, &edges).expect("edges point downward, no cycles")
}

/// A random presheaf with fibers of at most `max_fiber` elements, built
/// bottom-up: each new element is attached to a compatible family over the
/// points below, so functoriality holds by construction. Fibers can come
/// out empty when no compatible family exists.
pub fn random_presheaf(
    rng: &mut ChaCha8Rng,
    poset: &FinitePoset,
    max_fiber: usize,
) -> Presheaf {
    let n = poset.len();
    let mut fibers: Vec<Vec<String>> = vec![Vec::new(); n];
    // per point, per element: the element's image at every strictly lower point
    let mut images: Vec<Vec<BTreeMap<usize, usize>>> = vec![Vec::new(); n];
    for &p in &poset.ascending() {
        let lower: Vec<usize> = poset
            .down_set(p)
            .iter()
            .copied()
            .filter(|&q| q != p)
            .collect();
        // compatible families over the lower points
        let mut families: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
        for &q in &lower {
            let mut next = Vec::new();
            for f in &families {
                for x in 0..fibers[q].len() {
                    let mut g = f.clone();
                    g.insert(q, x);
                    next.push(g);
                }
            }
            families = next;
        }
        families.retain(|f| {
            lower.iter().all(|&q| {
                lower
                    .iter()
                    .filter(|&&q2| q2 != q && poset.le(q2, q))
                    .all(|&q2| images[q][f[&q]].get(&q2) == Some(&f[&q2]))
            })
        });
        let size = if families.is_empty() {
            0
        } else {
            rng.gen_range(if poset.down_set(p).len() == 1 { 1 } else { 0 }..=max_fiber)
        };
        for i in 0..size {
            let f = families[rng.gen_range(0..families.len())].clone();
            fibers[p].push(format!("{}e{}", poset.name(p), i));
            images[p].push(f);
        }
    }
    let cover_maps = poset
        .covers()
        .into_iter()
        .map(|(p, q)| {
            let table = images[p].iter().map(|f| f[&q]).collect();
            ((p, q), table)
        })
        .collect();
    Presheaf::new(poset.clone(), fibers, cover_maps).expect("built functorially")
}
