//! Finite posets presented as DAGs. An arrow `p -> q` puts `q` below `p`;
//! the down-set of a point is everything it reaches, itself included.

use std::collections::BTreeSet;

use zha::{Point, TwoColumnGraph, ZhaElement};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FinitePoset {
    names: Vec<String>,
    below: Vec<BTreeSet<usize>>,
}

impl FinitePoset {
    /// Builds the poset of a DAG given by point names and arrow pairs
    /// (indices into `names`). Rejects cyclic inputs.
    pub fn from_dag(names: Vec<String>, edges: &[(usize, usize)]) -> Result<FinitePoset> {
        let n = names.len();
        {
            let mut unique = names.clone();
            unique.sort();
            unique.dedup();
            if unique.len() != n {
                return Err(Error::Input("duplicate point names".into()));
            }
        }
        let mut succ = vec![BTreeSet::new(); n];
        for &(s, d) in edges {
            if s >= n || d >= n {
                return Err(Error::Input(format!("edge ({s},{d}) outside the point set")));
            }
            if s == d {
                return Err(Error::Input(format!("self-loop at {}", names[s])));
            }
            succ[s].insert(d);
        }
        // reachability with cycle detection
        let mut below: Vec<Option<BTreeSet<usize>>> = vec![None; n];
        let mut in_progress = vec![false; n];
        fn visit(
            p: usize,
            succ: &[BTreeSet<usize>],
            below: &mut Vec<Option<BTreeSet<usize>>>,
            in_progress: &mut Vec<bool>,
            names: &[String],
        ) -> Result<BTreeSet<usize>> {
            if let Some(b) = &below[p] {
                return Ok(b.clone());
            }
            if in_progress[p] {
                return Err(Error::Input(format!("cycle through {}", names[p])));
            }
            in_progress[p] = true;
            let mut acc: BTreeSet<usize> = [p].into();
            for &q in &succ[p] {
                acc.extend(visit(q, succ, below, in_progress, names)?);
            }
            in_progress[p] = false;
            below[p] = Some(acc.clone());
            Ok(acc)
        }
        for p in 0..n {
            visit(p, &succ, &mut below, &mut in_progress, &names)?;
        }
        Ok(FinitePoset {
            names,
            below: below.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    /// `a <= b` iff `b` reaches `a`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(&a)
    }

    /// The down-set of `p`, itself included.
    pub fn down_set(&self, p: usize) -> &BTreeSet<usize> {
        &self.below[p]
    }

    /// Covering pairs `(p, q)`: `q` directly below `p`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in self.points() {
            for &q in &self.below[p] {
                if q == p {
                    continue;
                }
                let direct = !self.below[p]
                    .iter()
                    .any(|&m| m != p && m != q && self.below[m].contains(&q));
                if direct {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Points sorted so that lower points come first.
    pub fn ascending(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.points().collect();
        order.sort_by_key(|&p| (self.below[p].len(), p));
        order
    }

    /// Whether a point set is down-closed.
    pub fn is_open(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&p| self.below[p].is_subset(s))
    }

    /// Every down-closed subset, in sorted order.
    pub fn opens(&self) -> Vec<BTreeSet<usize>> {
        let n = self.len();
        assert!(n <= 20, "open-set enumeration needs a small poset");
        let mut out: Vec<BTreeSet<usize>> = Vec::new();
        for mask in 0u32..(1 << n) {
            let s: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if self.is_open(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    /// Opens of the whole poset intersected with a down-set, sorted: the
    /// fiber of the classifier at `p`.
    pub fn opens_inside(&self, p: usize) -> Vec<BTreeSet<usize>> {
        let down = &self.below[p];
        let mut out: Vec<BTreeSet<usize>> = self
            .opens()
            .into_iter()
            .filter(|o| o.is_subset(down))
            .collect();
        out.sort();
        out
    }

    pub fn render_point_set(&self, s: &BTreeSet<usize>) -> String {
        let names: Vec<&str> = s.iter().map(|&p| self.name(p)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The poset of a two-column graph: column steps and cross arrows all point
/// downward. Point ids list the left column first.
pub fn poset_from_2cg(graph: &TwoColumnGraph) -> Result<FinitePoset> {
    let l = graph.left_count();
    let idx = |p: Point| -> usize {
        match p {
            Point::L(a) => a - 1,
            Point::R(b) => l + b - 1,
        }
    };
    let mut names = Vec::new();
    for a in 1..=l {
        names.push(format!("L{a}"));
    }
    for b in 1..=graph.right_count() {
        names.push(format!("R{b}"));
    }
    let mut edges = Vec::new();
    for a in 2..=l {
        edges.push((idx(Point::L(a)), idx(Point::L(a - 1))));
    }
    for b in 2..=graph.right_count() {
        edges.push((idx(Point::R(b)), idx(Point::R(b - 1))));
    }
    for &(s, d) in graph.arrows() {
        edges.push((idx(s), idx(d)));
    }
    FinitePoset::from_dag(names, &edges)
}

/// The open point set of a lattice element of the graph's ZHA, in the ids of
/// [`poset_from_2cg`].
pub fn pile_open(graph: &TwoColumnGraph, e: ZhaElement) -> BTreeSet<usize> {
    let l = graph.left_count();
    let mut s: BTreeSet<usize> = (0..e.a).collect();
    s.extend((0..e.b).map(|b| l + b));
    s
}

/// Reads an open point set back as a digit pair, if it is a pile.
pub fn open_to_element(graph: &TwoColumnGraph, s: &BTreeSet<usize>) -> Option<ZhaElement> {
    let l = graph.left_count();
    let r = graph.right_count();
    let a = (0..l).take_while(|i| s.contains(i)).count();
    let b = (0..r).take_while(|i| s.contains(&(l + i))).count();
    if pile_open(graph, zha::el(a, b)) == *s {
        Some(zha::el(a, b))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zha::parse_2cg;

    #[test]
    fn single_point() {
        let p = FinitePoset::from_dag(vec!["x".into()], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.down_set(0).len(), 1);
        assert_eq!(p.opens().len(), 2);
    }

    #[test]
    fn cycle_is_rejected() {
        let e = FinitePoset::from_dag(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(e.is_err());
    }

    #[test]
    fn chain_down_sets() {
        let p = FinitePoset::from_dag(vec!["top".into(), "bot".into()], &[(0, 1)]).unwrap();
        assert_eq!(p.down_set(0).len(), 2);
        assert_eq!(p.down_set(1).len(), 1);
        assert!(p.le(1, 0));
        assert!(!p.le(0, 1));
        assert_eq!(p.covers(), vec![(0, 1)]);
        // |Sub(1)| of the 2-chain
        assert_eq!(p.opens().len(), 3);
    }

    #[test]
    fn two_rung_graph_without_arrows_is_two_chains() {
        let g = TwoColumnGraph::new(2, 2, [], []).unwrap();
        let p = poset_from_2cg(&g).unwrap();
        assert_eq!(p.len(), 4);
        // L2 reaches only L1; R2 only R1
        assert_eq!(p.down_set(p.index_of("L2").unwrap()).len(), 2);
        assert!(!p.le(p.index_of("R1").unwrap(), p.index_of("L2").unwrap()));
    }

    #[test]
    fn three_rung_fixture_has_thirteen_opens() {
        let g = parse_2cg(include_str!("../../../fixtures/three_rungs.2cg")).unwrap();
        let p = poset_from_2cg(&g).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.opens().len(), 13);
        // every open is a pile and the pile list matches the lattice
        let h = zha::Zha::from_2cg(&g);
        let opens = p.opens();
        let piles: Vec<BTreeSet<usize>> = h.elements().map(|e| pile_open(&g, e)).collect();
        for o in &opens {
            assert!(piles.contains(o), "open {:?} is not a pile", o);
            assert!(open_to_element(&g, o).is_some());
        }
        assert_eq!(opens.len(), piles.len());
    }

    #[test]
    fn down_sets_respect_cross_arrows() {
        let g = parse_2cg(include_str!("../../../fixtures/three_rungs.2cg")).unwrap();
        let p = poset_from_2cg(&g).unwrap();
        let l3 = p.index_of("L3").unwrap();
        let names: Vec<&str> = p.down_set(l3).iter().map(|&q| p.name(q)).collect();
        assert_eq!(names, vec!["L1", "L2", "L3", "R1", "R2"]);
        // minimal and maximal down-set shapes
        let l1 = p.index_of("L1").unwrap();
        assert_eq!(p.down_set(l1).len(), 1);
    }
}
