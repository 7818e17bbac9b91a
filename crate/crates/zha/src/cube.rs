//! The connective cubes: eight starred variants per connective, the preorder
//! of provable inequalities among them, semantic preorders from model
//! checking, and deterministic countermodel search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{el, Zha, ZhaElement};
use crate::slashing::{all_slashings, Slashing};

/// The connective of a cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
}

impl Connective {
    pub fn parse(s: &str) -> Result<Connective> {
        match s {
            "and" => Ok(Connective::And),
            "or" => Ok(Connective::Or),
            "imp" => Ok(Connective::Imp),
            other => Err(Error::Input(format!("unknown connective `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Imp => "imp",
        }
    }
}

/// One node of a cube: the bits say where the stars go. Bit 1 stars the
/// first argument, bit 2 the second, bit 4 the whole expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubeNode {
    pub connective: Connective,
    pub bits: u8,
}

impl CubeNode {
    pub fn new(connective: Connective, bits: u8) -> Result<CubeNode> {
        if bits > 7 {
            return Err(Error::Range(format!("cube bits {bits} outside 0..=7")));
        }
        Ok(CubeNode { connective, bits })
    }

    /// Expression text, e.g. `(P* & Q)*`.
    pub fn text(&self) -> String {
        let p = if self.bits & 1 != 0 { "P*" } else { "P" };
        let q = if self.bits & 2 != 0 { "Q*" } else { "Q" };
        let op = match self.connective {
            Connective::And => "&",
            Connective::Or => "v",
            Connective::Imp => "->",
        };
        if self.bits & 4 != 0 {
            format!("({p} {op} {q})*")
        } else {
            format!("{p} {op} {q}")
        }
    }
}

impl fmt::Display for CubeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// A model: a slashed ZHA with values for the two variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    slashing: Slashing,
    vp: ZhaElement,
    vq: ZhaElement,
}

impl Model {
    pub fn new(slashing: Slashing, vp: ZhaElement, vq: ZhaElement) -> Result<Model> {
        slashing.host().check_member(vp)?;
        slashing.host().check_member(vq)?;
        Ok(Model { slashing, vp, vq })
    }

    pub fn host(&self) -> &Zha {
        self.slashing.host()
    }

    pub fn slashing(&self) -> &Slashing {
        &self.slashing
    }

    pub fn vp(&self) -> ZhaElement {
        self.vp
    }

    pub fn vq(&self) -> ZhaElement {
        self.vq
    }

    /// One-line description for reports.
    pub fn describe(&self) -> String {
        format!(
            "host {{{}}}, slashing {}, P={}, Q={}",
            self.host()
                .elements()
                .map(|e| e.token())
                .collect::<Vec<_>>()
                .join(","),
            self.slashing.text(),
            self.vp,
            self.vq
        )
    }
}

/// Evaluates a cube node in a model, starring with the slash-operator.
pub fn node_eval(n: CubeNode, m: &Model) -> ZhaElement {
    let host = m.host();
    let star = |x: ZhaElement| m.slashing.s_top(x);
    let p = if n.bits & 1 != 0 { star(m.vp) } else { m.vp };
    let q = if n.bits & 2 != 0 { star(m.vq) } else { m.vq };
    let v = match n.connective {
        Connective::And => host.meet(p, q),
        Connective::Or => host.join(p, q),
        Connective::Imp => host.imp(p, q),
    };
    if n.bits & 4 != 0 {
        star(v)
    } else {
        v
    }
}

/// A preorder on the eight nodes of one cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubePreorder {
    pub connective: Connective,
    le: [[bool; 8]; 8],
}

impl CubePreorder {
    pub fn contains(&self, i: u8, j: u8) -> bool {
        self.le[i as usize][j as usize]
    }

    pub fn pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if self.le[i][j] {
                    out.push((i as u8, j as u8));
                }
            }
        }
        out
    }

    pub fn non_pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for i in 0..8 {
            for j in 0..8 {
                if !self.le[i][j] {
                    out.push((i as u8, j as u8));
                }
            }
        }
        out
    }

    /// Equivalence classes (mutual order), sorted by least member.
    pub fn classes(&self) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = Vec::new();
        let mut seen = [false; 8];
        for i in 0..8 {
            if seen[i] {
                continue;
            }
            let class: Vec<u8> = (0..8)
                .filter(|&j| self.le[i][j] && self.le[j][i])
                .map(|j| {
                    seen[j] = true;
                    j as u8
                })
                .collect();
            out.push(class);
        }
        out
    }

    pub fn is_subset_of(&self, other: &CubePreorder) -> bool {
        (0..8).all(|i| (0..8).all(|j| !self.le[i][j] || other.le[i][j]))
    }

    fn close(&mut self) {
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    if self.le[i][k] && self.le[k][j] {
                        self.le[i][j] = true;
                    }
                }
            }
        }
    }
}

/// The provable preorder of a cube: reflexive-transitive closure of the
/// one-bit monotonicity arrows (star is inflationary; both arguments of `&`
/// and `v` are covariant; the antecedent of `->` is contravariant) plus the
/// derived collapses: for `&` the fully starred, argumentwise starred and
/// outer starred meets coincide; for `v` the fully starred join is below the
/// outer starred join; for `->` starring inside the consequent is below
/// starring both arguments.
pub fn theorem_preorder(connective: Connective) -> CubePreorder {
    let mut le = [[false; 8]; 8];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut add = |i: u8, j: u8| le[i as usize][j as usize] = true;
    for n in 0u8..8 {
        if n & 4 == 0 {
            add(n, n | 4);
        }
        match connective {
            Connective::And | Connective::Or => {
                if n & 1 == 0 {
                    add(n, n | 1);
                }
                if n & 2 == 0 {
                    add(n, n | 2);
                }
            }
            Connective::Imp => {
                if n & 1 != 0 {
                    add(n, n & !1);
                }
                if n & 2 == 0 {
                    add(n, n | 2);
                }
            }
        }
    }
    match connective {
        Connective::And => {
            add(7, 3);
            add(3, 7);
            add(3, 4);
            add(4, 3);
        }
        Connective::Or => {
            add(7, 4);
        }
        Connective::Imp => {
            add(6, 3);
        }
    }
    let mut p = CubePreorder { connective, le };
    p.close();
    p
}

/// The semantic preorder induced by a collection of models: a pair is kept
/// only if it holds in every model. More models can only shrink it.
pub fn semantic_preorder(
    connective: Connective,
    models: impl IntoIterator<Item = Model>,
) -> Result<CubePreorder> {
    let mut le = [[true; 8]; 8];
    let mut any = false;
    for m in models {
        any = true;
        let vals: Vec<ZhaElement> = (0..8)
            .map(|b| node_eval(CubeNode { connective, bits: b }, &m))
            .collect();
        for (i, row) in le.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if *entry && !vals[i].leq(&vals[j]) {
                    *entry = false;
                }
            }
        }
    }
    if !any {
        return Err(Error::Contract("empty model collection".into()));
    }
    Ok(CubePreorder { connective, le })
}

/// All ZHA shapes whose bounding box is exactly `l` by `r`: staircase
/// regions between two monotone borders, restricted to shapes with
/// single-step covers (the shapes that two-column graphs generate).
pub fn hosts_in_box(l: usize, r: usize) -> Vec<Zha> {
    fn borders(len: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0usize]];
        for _ in 1..=len {
            let mut next = Vec::new();
            for b in &out {
                let last = *b.last().unwrap();
                for v in last..=max {
                    let mut nb = b.clone();
                    nb.push(v);
                    next.push(nb);
                }
            }
            out = next;
        }
        out
    }
    let mut seen: BTreeSet<BTreeSet<ZhaElement>> = BTreeSet::new();
    let mut hosts = Vec::new();
    for f in borders(l, r) {
        for g in borders(r, l) {
            let members: BTreeSet<ZhaElement> = (0..=l)
                .flat_map(|a| (0..=r).map(move |b| el(a, b)))
                .filter(|e| e.b >= f[e.a] && e.a >= g[e.b])
                .collect();
            if !members.contains(&el(0, 0)) || !members.contains(&el(l, r)) {
                continue;
            }
            let connected = members.iter().all(|e| {
                *e == el(0, 0)
                    || (e.a > 0 && members.contains(&el(e.a - 1, e.b)))
                    || (e.b > 0 && members.contains(&el(e.a, e.b - 1)))
            });
            if !connected {
                continue;
            }
            let a_digits: BTreeSet<usize> = members.iter().map(|e| e.a).collect();
            let b_digits: BTreeSet<usize> = members.iter().map(|e| e.b).collect();
            if a_digits.len() != l + 1 || b_digits.len() != r + 1 {
                continue;
            }
            if seen.insert(members.clone()) {
                hosts.push(Zha::from_elements(l, r, members).expect("staircase is a lattice"));
            }
        }
    }
    hosts
}

/// Enumeration context shared by the searches: fast meet/join/imp/star over
/// element indices.
struct EvalCtx {
    els: Vec<ZhaElement>,
    imp: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl EvalCtx {
    fn new(host: &Zha) -> EvalCtx {
        let els: Vec<ZhaElement> = host.elements().collect();
        let index: BTreeMap<ZhaElement, usize> =
            els.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = els.len();
        let mut imp = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                imp[i][j] = index[&host.imp(els[i], els[j])];
                meet[i][j] = index[&els[i].meet(&els[j])];
                join[i][j] = index[&els[i].join(&els[j])];
            }
        }
        EvalCtx {
            els,
            imp,
            meet,
            join,
        }
    }

    fn star_table(&self, s: &Slashing) -> Vec<usize> {
        let index: BTreeMap<ZhaElement, usize> =
            self.els.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        self.els.iter().map(|&e| index[&s.s_top(e)]).collect()
    }

    fn eval(&self, connective: Connective, bits: u8, star: &[usize], ip: usize, iq: usize) -> usize {
        let p = if bits & 1 != 0 { star[ip] } else { ip };
        let q = if bits & 2 != 0 { star[iq] } else { iq };
        let v = match connective {
            Connective::And => self.meet[p][q],
            Connective::Or => self.join[p][q],
            Connective::Imp => self.imp[p][q],
        };
        if bits & 4 != 0 {
            star[v]
        } else {
            v
        }
    }
}

/// Walks every model within the size bound in the documented deterministic
/// order: bounding box by total size then left height, host shape by element
/// set, slashing by cut sets, then `vP` and `vQ` lexicographically. Stops
/// when the visitor returns `true`.
fn scan_models(
    bound: usize,
    mut visit: impl FnMut(&EvalCtx, &Slashing, &[usize], usize, usize) -> bool,
) {
    for total in 0..=(2 * bound) {
        for l in 0..=bound.min(total) {
            let r = total - l;
            if r > bound {
                continue;
            }
            for host in hosts_in_box(l, r) {
                let ctx = EvalCtx::new(&host);
                for s in all_slashings(&host) {
                    let star = ctx.star_table(&s);
                    for ip in 0..ctx.els.len() {
                        for iq in 0..ctx.els.len() {
                            if visit(&ctx, &s, &star, ip, iq) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// All models within the bound, in enumeration order. Mostly useful for the
/// exhaustive soundness checks at small bounds.
pub fn all_models_within(bound: usize) -> Vec<Model> {
    let mut out = Vec::new();
    scan_models(bound, |ctx, s, _star, ip, iq| {
        out.push(Model {
            slashing: s.clone(),
            vp: ctx.els[ip],
            vq: ctx.els[iq],
        });
        false
    });
    out
}

/// The semantic preorder over every model within the bound, computed by a
/// streaming scan; agrees with [`semantic_preorder`] over
/// [`all_models_within`] at the same bound.
pub fn semantic_preorder_within(connective: Connective, bound: usize) -> CubePreorder {
    let mut le = [[true; 8]; 8];
    scan_models(bound, |ctx, _s, star, ip, iq| {
        let vals: [usize; 8] =
            std::array::from_fn(|b| ctx.eval(connective, b as u8, star, ip, iq));
        for (i, row) in le.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if *entry && !ctx.els[vals[i]].leq(&ctx.els[vals[j]]) {
                    *entry = false;
                }
            }
        }
        false
    });
    CubePreorder { connective, le }
}

/// The result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Model),
    Exhausted,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&Model> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            SearchOutcome::Exhausted => None,
        }
    }
}

/// Searches for the first model in enumeration order where node `i` does not
/// sit below node `j`. Rejects pairs that are theorems.
pub fn countermodel_search(
    connective: Connective,
    i: u8,
    j: u8,
    size_bound: usize,
) -> Result<SearchOutcome> {
    if i > 7 || j > 7 {
        return Err(Error::Range("cube nodes are 0..=7".into()));
    }
    if theorem_preorder(connective).contains(i, j) {
        return Err(Error::Contract(format!(
            "{} <= {} is a theorem; no countermodel exists",
            CubeNode { connective, bits: i },
            CubeNode { connective, bits: j },
        )));
    }
    let mut found = None;
    scan_models(size_bound, |ctx, s, star, ip, iq| {
        let vi = ctx.eval(connective, i, star, ip, iq);
        let vj = ctx.eval(connective, j, star, ip, iq);
        if !ctx.els[vi].leq(&ctx.els[vj]) {
            found = Some(Model {
                slashing: s.clone(),
                vp: ctx.els[ip],
                vq: ctx.els[iq],
            });
            true
        } else {
            false
        }
    });
    Ok(match found {
        Some(m) => SearchOutcome::Found(m),
        None => SearchOutcome::Exhausted,
    })
}

/// Searches for a single model whose induced order on the eight nodes equals
/// the provable preorder exactly.
pub fn separating_valuation_search(connective: Connective, size_bound: usize) -> SearchOutcome {
    let thm = theorem_preorder(connective);
    let mut found = None;
    scan_models(size_bound, |ctx, s, star, ip, iq| {
        let vals: Vec<usize> = (0..8)
            .map(|b| ctx.eval(connective, b, star, ip, iq))
            .collect();
        let separates = (0..8u8).all(|x| {
            (0..8u8).all(|y| {
                ctx.els[vals[x as usize]].leq(&ctx.els[vals[y as usize]]) == thm.contains(x, y)
            })
        });
        if separates {
            found = Some(Model {
                slashing: s.clone(),
                vp: ctx.els[ip],
                vq: ctx.els[iq],
            });
            true
        } else {
            false
        }
    });
    match found {
        Some(m) => SearchOutcome::Found(m),
        None => SearchOutcome::Exhausted,
    }
}

/// The simplified cube: equivalence classes of the provable preorder and the
/// covering edges of the quotient order. Its closure regenerates the full
/// preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedCube {
    pub connective: Connective,
    /// Equivalence classes sorted by least member.
    pub classes: Vec<Vec<u8>>,
    /// Covering edges between class indices: `(lower, upper)`.
    pub edges: Vec<(usize, usize)>,
}

impl SimplifiedCube {
    /// Reflexive-transitive closure of the simplified form, for checking
    /// that nothing was lost.
    pub fn closure(&self) -> CubePreorder {
        let mut le = [[false; 8]; 8];
        for class in &self.classes {
            for &x in class {
                for &y in class {
                    le[x as usize][y as usize] = true;
                }
            }
        }
        for &(lo, hi) in &self.edges {
            for &x in &self.classes[lo] {
                for &y in &self.classes[hi] {
                    le[x as usize][y as usize] = true;
                }
            }
        }
        let mut p = CubePreorder {
            connective: self.connective,
            le,
        };
        p.close();
        p
    }
}

/// Quotients the provable preorder by its equivalence and transitively
/// reduces the result.
pub fn simplified_cube(connective: Connective) -> SimplifiedCube {
    let thm = theorem_preorder(connective);
    let classes = thm.classes();
    let k = classes.len();
    let mut lt = vec![vec![false; k]; k];
    for (ci, class_i) in classes.iter().enumerate() {
        for (cj, class_j) in classes.iter().enumerate() {
            if ci != cj && thm.contains(class_i[0], class_j[0]) {
                lt[ci][cj] = true;
            }
        }
    }
    // transitive reduction of a finite partial order: drop edges with a path
    // through a third class
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if lt[i][j] && !(0..k).any(|m| m != i && m != j && lt[i][m] && lt[m][j]) {
                edges.push((i, j));
            }
        }
    }
    SimplifiedCube {
        connective,
        classes,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_model(l: usize, r: usize, vp: ZhaElement, vq: ZhaElement) -> Model {
        Model::new(Slashing::trivial(Zha::grid(l, r)), vp, vq).unwrap()
    }

    #[test]
    fn node_eval_plain_and_starred() {
        let m = grid_model(2, 2, el(1, 0), el(0, 1));
        let n0 = CubeNode::new(Connective::And, 0).unwrap();
        assert_eq!(node_eval(n0, &m), el(0, 0));
        // trivial slashing stars everything to the top
        let n7 = CubeNode::new(Connective::And, 7).unwrap();
        assert_eq!(node_eval(n7, &m), el(2, 2));
    }

    #[test]
    fn j3_literally_on_nodes() {
        // nodes 4 and 3 of the and-cube agree in every model
        for m in all_models_within(2) {
            let v4 = node_eval(CubeNode::new(Connective::And, 4).unwrap(), &m);
            let v3 = node_eval(CubeNode::new(Connective::And, 3).unwrap(), &m);
            assert_eq!(v4, v3, "at {}", m.describe());
        }
    }

    #[test]
    fn and_cube_collapses() {
        let thm = theorem_preorder(Connective::And);
        for (i, j) in [(3, 4), (4, 3), (3, 7), (7, 3), (4, 7), (7, 4)] {
            assert!(thm.contains(i, j));
        }
        let classes = thm.classes();
        let big = classes.iter().find(|c| c.contains(&3)).unwrap();
        assert!(big.contains(&4) && big.contains(&7));
    }

    #[test]
    fn or_cube_collapses() {
        let thm = theorem_preorder(Connective::Or);
        let classes = thm.classes();
        let big = classes.iter().find(|c| c.contains(&4)).unwrap();
        assert!(big.contains(&5) && big.contains(&6));
        // nodes 4 and 6 coincide, and 5 and 6 coincide
        assert!(thm.contains(4, 6) && thm.contains(6, 4));
        assert!(thm.contains(5, 6) && thm.contains(6, 5));
        // but the unstarred join of stars stays strictly below
        assert!(thm.contains(3, 4));
        assert!(!thm.contains(4, 3));
    }

    #[test]
    fn imp_cube_shape() {
        let thm = theorem_preorder(Connective::Imp);
        // starring the antecedent shrinks the implication
        assert!(thm.contains(1, 0));
        assert!(!thm.contains(0, 1));
        let classes = thm.classes();
        let big = classes.iter().find(|c| c.contains(&2)).unwrap();
        assert_eq!(*big, vec![2, 3, 6, 7]);
    }

    #[test]
    fn reflexive_everywhere() {
        for conn in [Connective::And, Connective::Or, Connective::Imp] {
            let thm = theorem_preorder(conn);
            for n in 0..8 {
                assert!(thm.contains(n, n));
            }
        }
    }

    #[test]
    fn semantic_contains_theorems_small() {
        let models = all_models_within(1);
        for conn in [Connective::And, Connective::Or, Connective::Imp] {
            let sem = semantic_preorder(conn, models.iter().cloned()).unwrap();
            assert!(theorem_preorder(conn).is_subset_of(&sem));
        }
    }

    #[test]
    fn streaming_semantic_agrees_with_the_collection_form() {
        for conn in [Connective::And, Connective::Or, Connective::Imp] {
            let streamed = semantic_preorder_within(conn, 1);
            let collected = semantic_preorder(conn, all_models_within(1)).unwrap();
            assert_eq!(streamed, collected);
        }
    }

    #[test]
    fn semantic_needs_models() {
        assert!(matches!(
            semantic_preorder(Connective::And, Vec::new()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn trivial_slashing_relates_starred_nodes() {
        let m = grid_model(1, 1, el(1, 0), el(0, 1));
        let sem = semantic_preorder(Connective::And, [m]).unwrap();
        // all outer-starred nodes evaluate to the top and compare equal
        for i in [4u8, 5, 6, 7] {
            for j in [4u8, 5, 6, 7] {
                assert!(sem.contains(i, j));
            }
        }
    }

    #[test]
    fn hosts_in_box_counts() {
        assert_eq!(hosts_in_box(0, 0).len(), 1);
        // the 1x1 box holds the full square and the two 3-chains with one
        // side dented; {00,11} alone has a two-step cover and is excluded
        assert_eq!(hosts_in_box(1, 1).len(), 3);
        let total: usize = (0..=3)
            .flat_map(|l| (0..=3).map(move |r| (l, r)))
            .map(|(l, r)| hosts_in_box(l, r).len())
            .sum();
        assert_eq!(total, 337);
    }

    #[test]
    fn countermodel_rejects_theorem_pairs() {
        assert!(countermodel_search(Connective::And, 0, 4, 2).is_err());
    }

    #[test]
    fn countermodel_for_imp_antecedent_star() {
        // P -> Q vs P* -> Q: not a theorem, must have a countermodel
        let outcome = countermodel_search(Connective::Imp, 0, 1, 3).unwrap();
        let m = outcome.found().expect("countermodel exists in bound");
        let v0 = node_eval(CubeNode::new(Connective::Imp, 0).unwrap(), m);
        let v1 = node_eval(CubeNode::new(Connective::Imp, 1).unwrap(), m);
        assert!(!v0.leq(&v1));
    }

    #[test]
    fn or_non_theorem_4_3_needs_non_grid_host() {
        // (P v Q)* <= P* v Q* fails only on hosts with a dented border
        let outcome = countermodel_search(Connective::Or, 4, 3, 3).unwrap();
        let m = outcome.found().expect("countermodel exists in bound");
        assert!(m.host().len() < (m.host().l() + 1) * (m.host().r() + 1));
    }

    #[test]
    fn search_is_deterministic() {
        let a = countermodel_search(Connective::Or, 4, 3, 3).unwrap();
        let b = countermodel_search(Connective::Or, 4, 3, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn simplified_cubes_close_back() {
        for conn in [Connective::And, Connective::Or, Connective::Imp] {
            let simplified = simplified_cube(conn);
            assert_eq!(simplified.closure(), theorem_preorder(conn), "{conn:?}");
        }
    }

    #[test]
    fn separating_search_small_bound_for_and() {
        let outcome = separating_valuation_search(Connective::And, 1);
        let m = outcome.found().expect("a 1x1 model separates the and-cube");
        let thm = theorem_preorder(Connective::And);
        for i in 0..8u8 {
            for j in 0..8u8 {
                let vi = node_eval(CubeNode::new(Connective::And, i).unwrap(), m);
                let vj = node_eval(CubeNode::new(Connective::And, j).unwrap(), m);
                assert_eq!(vi.leq(&vj), thm.contains(i, j));
            }
        }
    }
}
