//! Set-valued functors on a finite poset, their morphisms, and canonical
//! subobjects. Maps are supplied on covering edges only; composites are
//! derived, with agreement along different paths validated at construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    poset: FinitePoset,
    fibers: Vec<Vec<String>>,
    /// Derived maps for every related pair `p > q`, as index tables.
    maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Presheaf {
    /// Builds a presheaf from fibers and maps on the covering edges.
    pub fn new(
        poset: FinitePoset,
        fibers: Vec<Vec<String>>,
        cover_maps: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Presheaf> {
        if fibers.len() != poset.len() {
            return Err(Error::Shape("one fiber per point required".into()));
        }
        for (p, fiber) in fibers.iter().enumerate() {
            let mut sorted = fiber.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != fiber.len() {
                return Err(Error::Input(format!(
                    "duplicate element names at {}",
                    poset.name(p)
                )));
            }
        }
        let covers: BTreeSet<(usize, usize)> = poset.covers().into_iter().collect();
        for key in cover_maps.keys() {
            if !covers.contains(key) {
                return Err(Error::Input(format!(
                    "map for non-covering pair {} -> {}",
                    poset.name(key.0),
                    poset.name(key.1)
                )));
            }
        }
        for &(p, q) in &covers {
            let table = cover_maps.get(&(p, q)).ok_or_else(|| {
                Error::Input(format!(
                    "missing map for covering pair {} -> {}",
                    poset.name(p),
                    poset.name(q)
                ))
            })?;
            if table.len() != fibers[p].len() {
                return Err(Error::Shape(format!(
                    "map {} -> {} has wrong arity",
                    poset.name(p),
                    poset.name(q)
                )));
            }
            if table.iter().any(|&v| v >= fibers[q].len()) {
                return Err(Error::Shape(format!(
                    "map {} -> {} hits a missing element",
                    poset.name(p),
                    poset.name(q)
                )));
            }
        }
        // derive all composites bottom-up; different cover paths must agree
        let mut maps: BTreeMap<(usize, usize), Vec<usize>> = cover_maps;
        let order = poset.ascending();
        for &p in &order {
            let mut lower: Vec<usize> = poset.down_set(p).iter().copied().collect();
            lower.sort_by_key(|&q| std::cmp::Reverse(poset.down_set(q).len()));
            for q in lower {
                if q == p || maps.contains_key(&(p, q)) {
                    continue;
                }
                let mut derived: Option<Vec<usize>> = None;
                for &(_, cm) in covers.iter().filter(|&&(cp, _)| cp == p) {
                    if !poset.le(q, cm) {
                        continue;
                    }
                    let first = &maps[&(p, cm)];
                    let second: Vec<usize> = if cm == q {
                        first.clone()
                    } else {
                        first.iter().map(|&x| maps[&(cm, q)][x]).collect()
                    };
                    match &derived {
                        None => derived = Some(second),
                        Some(existing) if *existing != second => {
                            return Err(Error::Input(format!(
                                "maps into {} from {} disagree along different paths",
                                poset.name(q),
                                poset.name(p)
                            )));
                        }
                        _ => {}
                    }
                }
                maps.insert(
                    (p, q),
                    derived.expect("q strictly below p reachable through a cover"),
                );
            }
        }
        Ok(Presheaf {
            poset,
            fibers,
            maps,
        })
    }

    /// The terminal presheaf: a singleton everywhere.
    pub fn terminal(poset: &FinitePoset) -> Presheaf {
        let fibers = vec![vec!["*".to_string()]; poset.len()];
        let cover_maps = poset.covers().into_iter().map(|c| (c, vec![0])).collect();
        Presheaf::new(poset.clone(), fibers, cover_maps).expect("terminal is well formed")
    }

    /// The empty presheaf.
    pub fn empty(poset: &FinitePoset) -> Presheaf {
        let fibers = vec![Vec::new(); poset.len()];
        let cover_maps = poset.covers().into_iter().map(|c| (c, Vec::new())).collect();
        Presheaf::new(poset.clone(), fibers, cover_maps).expect("empty is well formed")
    }

    /// The subterminal presheaf of an open: a singleton on the open's
    /// points, empty elsewhere.
    pub fn subterminal(poset: &FinitePoset, open: &BTreeSet<usize>) -> Result<Presheaf> {
        if !poset.is_open(open) {
            return Err(Error::Input(format!(
                "{} is not down-closed",
                poset.render_point_set(open)
            )));
        }
        let fibers = poset
            .points()
            .map(|p| {
                if open.contains(&p) {
                    vec!["*".to_string()]
                } else {
                    Vec::new()
                }
            })
            .collect();
        let cover_maps = poset
            .covers()
            .into_iter()
            .map(|(p, q)| ((p, q), if open.contains(&p) { vec![0] } else { Vec::new() }))
            .collect();
        Presheaf::new(poset.clone(), fibers, cover_maps)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn fiber(&self, p: usize) -> &[String] {
        &self.fibers[p]
    }

    pub fn fiber_size(&self, p: usize) -> usize {
        self.fibers[p].len()
    }

    /// The value of the map `p -> q` (with `q <= p`) on element index `x`.
    pub fn map(&self, p: usize, q: usize, x: usize) -> usize {
        if p == q {
            x
        } else {
            self.maps[&(p, q)][x]
        }
    }

    /// Cover maps only, the construction data.
    pub fn cover_maps(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        self.poset
            .covers()
            .into_iter()
            .map(|c| (c, self.maps[&c].clone()))
            .collect()
    }

    pub fn total_elements(&self) -> usize {
        self.fibers.iter().map(Vec::len).sum()
    }
}

/// A natural transformation, one component function per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    components: Vec<Vec<usize>>,
}

impl NatTrans {
    /// Validates arities and the naturality squares over all covers.
    pub fn new(source: &Presheaf, target: &Presheaf, components: Vec<Vec<usize>>) -> Result<NatTrans> {
        let poset = source.poset();
        if poset != target.poset() {
            return Err(Error::Shape("source and target on different posets".into()));
        }
        if components.len() != poset.len() {
            return Err(Error::Shape("one component per point required".into()));
        }
        for p in poset.points() {
            if components[p].len() != source.fiber_size(p) {
                return Err(Error::Shape(format!(
                    "component at {} has wrong arity",
                    poset.name(p)
                )));
            }
            if components[p].iter().any(|&v| v >= target.fiber_size(p)) {
                return Err(Error::Shape(format!(
                    "component at {} hits a missing element",
                    poset.name(p)
                )));
            }
        }
        let t = NatTrans { components };
        t.check_natural(source, target)?;
        Ok(t)
    }

    pub fn check_natural(&self, source: &Presheaf, target: &Presheaf) -> Result<()> {
        let poset = source.poset();
        for (p, q) in poset.covers() {
            for x in 0..source.fiber_size(p) {
                let down_then_component = self.components[q][source.map(p, q, x)];
                let component_then_down = target.map(p, q, self.components[p][x]);
                if down_then_component != component_then_down {
                    return Err(Error::Naturality(format!(
                        "square {} -> {} breaks at element {} of {}",
                        poset.name(p),
                        poset.name(q),
                        source.fiber(p)[x],
                        poset.name(p)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, p: usize, x: usize) -> usize {
        self.components[p][x]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The unique map to the terminal presheaf.
    pub fn bang(source: &Presheaf) -> NatTrans {
        NatTrans {
            components: source
                .poset()
                .points()
                .map(|p| vec![0; source.fiber_size(p)])
                .collect(),
        }
    }

    pub fn identity(of: &Presheaf) -> NatTrans {
        NatTrans {
            components: of
                .poset()
                .points()
                .map(|p| (0..of.fiber_size(p)).collect())
                .collect(),
        }
    }

    /// Composition `other . self` (self first).
    pub fn then(&self, other: &NatTrans) -> NatTrans {
        NatTrans {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(p, comp)| comp.iter().map(|&x| other.components[p][x]).collect())
                .collect(),
        }
    }

    /// Whether every component is a bijection.
    pub fn is_iso(&self, source: &Presheaf, target: &Presheaf) -> bool {
        self.components.iter().enumerate().all(|(p, comp)| {
            let mut seen = vec![false; target.fiber_size(p)];
            comp.len() == target.fiber_size(p)
                && comp.iter().all(|&v| {
                    let fresh = !seen[v];
                    seen[v] = true;
                    fresh
                })
                && source.fiber_size(p) == target.fiber_size(p)
        })
    }
}

/// A canonical subobject: a per-point subset closed under the host's maps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subfunctor {
    keep: Vec<BTreeSet<usize>>,
}

impl Subfunctor {
    pub fn new(host: &Presheaf, keep: Vec<BTreeSet<usize>>) -> Result<Subfunctor> {
        let poset = host.poset();
        if keep.len() != poset.len() {
            return Err(Error::Shape("one subset per point required".into()));
        }
        for p in poset.points() {
            if keep[p].iter().any(|&x| x >= host.fiber_size(p)) {
                return Err(Error::Shape(format!(
                    "subset at {} hits a missing element",
                    poset.name(p)
                )));
            }
        }
        for (p, q) in poset.covers() {
            for &x in &keep[p] {
                if !keep[q].contains(&host.map(p, q, x)) {
                    return Err(Error::Input(format!(
                        "subset not closed under the map {} -> {}",
                        poset.name(p),
                        poset.name(q)
                    )));
                }
            }
        }
        Ok(Subfunctor { keep })
    }

    pub fn full(host: &Presheaf) -> Subfunctor {
        Subfunctor {
            keep: host
                .poset()
                .points()
                .map(|p| (0..host.fiber_size(p)).collect())
                .collect(),
        }
    }

    pub fn empty(host: &Presheaf) -> Subfunctor {
        Subfunctor {
            keep: vec![BTreeSet::new(); host.poset().len()],
        }
    }

    pub fn keep(&self, p: usize) -> &BTreeSet<usize> {
        &self.keep[p]
    }

    pub fn contains(&self, p: usize, x: usize) -> bool {
        self.keep[p].contains(&x)
    }

    pub fn le(&self, other: &Subfunctor) -> bool {
        self.keep
            .iter()
            .zip(&other.keep)
            .all(|(a, b)| a.is_subset(b))
    }

    /// The subobject as a presheaf of its own, with the inclusion.
    pub fn to_presheaf(&self, host: &Presheaf) -> (Presheaf, NatTrans) {
        let poset = host.poset();
        let embed: Vec<Vec<usize>> = poset.points().map(|p| self.keep[p].iter().copied().collect()).collect();
        let fibers: Vec<Vec<String>> = poset
            .points()
            .map(|p| embed[p].iter().map(|&x| host.fiber(p)[x].clone()).collect())
            .collect();
        let position = |p: usize, hx: usize| embed[p].iter().position(|&y| y == hx).unwrap();
        let cover_maps = poset
            .covers()
            .into_iter()
            .map(|(p, q)| {
                let table = embed[p]
                    .iter()
                    .map(|&hx| position(q, host.map(p, q, hx)))
                    .collect();
                ((p, q), table)
            })
            .collect();
        let presheaf = Presheaf::new(poset.clone(), fibers, cover_maps)
            .expect("a closed subset restricts to a presheaf");
        let inclusion = NatTrans {
            components: embed,
        };
        (presheaf, inclusion)
    }
}

/// Every canonical subobject of the host, enumerated point-by-point with the
/// closure constraint applied as points are chosen.
pub fn all_subfunctors(host: &Presheaf) -> Vec<Subfunctor> {
    let poset = host.poset();
    let order = poset.ascending();
    let covers = poset.covers();
    let mut out = Vec::new();
    let mut keep: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); poset.len()];
    fn subsets(of: &[usize]) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new()];
        for &x in of {
            let mut doubled = out.clone();
            for s in &mut doubled {
                s.insert(x);
            }
            out.extend(doubled);
        }
        out
    }
    fn rec(
        host: &Presheaf,
        order: &[usize],
        covers: &[(usize, usize)],
        keep: &mut Vec<BTreeSet<usize>>,
        out: &mut Vec<Subfunctor>,
    ) {
        let p = match order.first() {
            Some(&p) => p,
            None => {
                out.push(Subfunctor { keep: keep.clone() });
                return;
            }
        };
        // lower points are already fixed; x is allowed if every cover map
        // lands in the chosen part
        let allowed: Vec<usize> = (0..host.fiber_size(p))
            .filter(|&x| {
                covers
                    .iter()
                    .filter(|&&(cp, _)| cp == p)
                    .all(|&(_, q)| keep[q].contains(&host.map(p, q, x)))
            })
            .collect();
        for choice in subsets(&allowed) {
            keep[p] = choice;
            rec(host, &order[1..], covers, keep, out);
        }
        keep[p] = BTreeSet::new();
    }
    rec(host, &order, &covers, &mut keep, &mut out);
    out.sort();
    out
}

/// Every natural transformation from `source` to `target`, enumerated from
/// the top of the poset downward with naturality used for early pruning.
pub fn all_nat_trans(source: &Presheaf, target: &Presheaf) -> Vec<NatTrans> {
    let poset = source.poset();
    assert_eq!(poset, target.poset());
    let mut order = poset.ascending();
    order.reverse();
    let covers = poset.covers();
    let mut components: Vec<Vec<Option<usize>>> =
        poset.points().map(|p| vec![None; source.fiber_size(p)]).collect();
    let mut out = Vec::new();
    fn rec(
        source: &Presheaf,
        target: &Presheaf,
        order: &[usize],
        covers: &[(usize, usize)],
        components: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<NatTrans>,
    ) {
        let q = match order.first() {
            Some(&q) => q,
            None => {
                out.push(NatTrans {
                    components: components
                        .iter()
                        .map(|comp| comp.iter().map(|v| v.unwrap()).collect())
                        .collect(),
                });
                return;
            }
        };
        // constraints from the already-assigned upper neighbours
        let mut forced: Vec<Option<usize>> = vec![None; source.fiber_size(q)];
        for &(p, _) in covers.iter().filter(|&&(_, cq)| cq == q) {
            for (x, assigned) in components[p].clone().into_iter().enumerate() {
                let tx = assigned.expect("upper points assigned first");
                let want = target.map(p, q, tx);
                let at = source.map(p, q, x);
                match forced[at] {
                    None => forced[at] = Some(want),
                    Some(existing) if existing != want => return, // inconsistent
                    _ => {}
                }
            }
        }
        #[allow(clippy::too_many_arguments)]
        fn assign(
            source: &Presheaf,
            target: &Presheaf,
            order: &[usize],
            covers: &[(usize, usize)],
            components: &mut Vec<Vec<Option<usize>>>,
            forced: &[Option<usize>],
            q: usize,
            x: usize,
            out: &mut Vec<NatTrans>,
        ) {
            if x == source.fiber_size(q) {
                rec(source, target, &order[1..], covers, components, out);
                return;
            }
            match forced[x] {
                Some(v) => {
                    components[q][x] = Some(v);
                    assign(source, target, order, covers, components, forced, q, x + 1, out);
                    components[q][x] = None;
                }
                None => {
                    for v in 0..target.fiber_size(q) {
                        components[q][x] = Some(v);
                        assign(source, target, order, covers, components, forced, q, x + 1, out);
                        components[q][x] = None;
                    }
                }
            }
        }
        assign(source, target, order, covers, components, &forced, q, 0, out);
    }
    rec(source, target, &order, &covers, &mut components, &mut out);
    out
}

/// The pullback of two maps into a common target, with its projections. The
/// fiber at each point holds the matching pairs.
pub fn pullback(
    f: &NatTrans,
    x: &Presheaf,
    g: &NatTrans,
    y: &Presheaf,
) -> (Presheaf, NatTrans, NatTrans) {
    let poset = x.poset().clone();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in poset.points() {
        let mut at = Vec::new();
        for a in 0..x.fiber_size(p) {
            for b in 0..y.fiber_size(p) {
                if f.apply(p, a) == g.apply(p, b) {
                    at.push((a, b));
                }
            }
        }
        pairs.push(at);
    }
    let fibers: Vec<Vec<String>> = poset
        .points()
        .map(|p| {
            pairs[p]
                .iter()
                .map(|&(a, b)| format!("({},{})", x.fiber(p)[a], y.fiber(p)[b]))
                .collect()
        })
        .collect();
    let cover_maps = poset
        .covers()
        .into_iter()
        .map(|(p, q)| {
            let table = pairs[p]
                .iter()
                .map(|&(a, b)| {
                    let image = (x.map(p, q, a), y.map(p, q, b));
                    pairs[q]
                        .iter()
                        .position(|&pr| pr == image)
                        .expect("maps commute into the target")
                })
                .collect();
            ((p, q), table)
        })
        .collect();
    let object =
        Presheaf::new(poset.clone(), fibers, cover_maps).expect("pullback of presheaves exists");
    let proj_x = NatTrans {
        components: poset
            .points()
            .map(|p| pairs[p].iter().map(|&(a, _)| a).collect())
            .collect(),
    };
    let proj_y = NatTrans {
        components: poset
            .points()
            .map(|p| pairs[p].iter().map(|&(_, b)| b).collect())
            .collect(),
    };
    (object, proj_x, proj_y)
}

/// Parses the `.psh` format:
///
/// ```text
/// point L1: x y
/// map L2 -> L1: x->x, y->x
/// ```
///
/// One `point` line per poset point, one `map` line per covering edge.
pub fn parse_psh(poset: &FinitePoset, text: &str) -> Result<Presheaf> {
    type RawMap = (usize, usize, Vec<(String, String)>);
    let mut fibers: Vec<Option<Vec<String>>> = vec![None; poset.len()];
    let mut raw_maps: Vec<RawMap> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ctx = |msg: String| Error::Parse(format!("line {}: {msg}", ln + 1));
        if let Some(rest) = line.strip_prefix("point ") {
            let (name, elems) = rest
                .split_once(':')
                .ok_or_else(|| ctx("expected `point <name>: ...`".into()))?;
            let p = poset
                .index_of(name.trim())
                .ok_or_else(|| ctx(format!("unknown point `{}`", name.trim())))?;
            if fibers[p].is_some() {
                return Err(ctx(format!("point `{}` listed twice", name.trim())));
            }
            fibers[p] = Some(elems.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("map ") {
            let (arrow, entries) = rest
                .split_once(':')
                .ok_or_else(|| ctx("expected `map <p> -> <q>: ...`".into()))?;
            let (src, dst) = arrow
                .split_once("->")
                .ok_or_else(|| ctx("expected `<p> -> <q>`".into()))?;
            let p = poset
                .index_of(src.trim())
                .ok_or_else(|| ctx(format!("unknown point `{}`", src.trim())))?;
            let q = poset
                .index_of(dst.trim())
                .ok_or_else(|| ctx(format!("unknown point `{}`", dst.trim())))?;
            let mut table = Vec::new();
            for entry in entries.split(',') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let (from, to) = entry
                    .split_once("->")
                    .ok_or_else(|| ctx(format!("expected `x->y`, found `{entry}`")))?;
                table.push((from.trim().to_string(), to.trim().to_string()));
            }
            raw_maps.push((p, q, table));
        } else {
            return Err(ctx(format!("unknown directive in `{line}`")));
        }
    }
    let fibers: Vec<Vec<String>> = fibers
        .into_iter()
        .enumerate()
        .map(|(p, f)| f.ok_or_else(|| Error::Parse(format!("no `point` line for {}", poset.name(p)))))
        .collect::<Result<_>>()?;
    let mut cover_maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (p, q, entries) in raw_maps {
        let mut table = vec![usize::MAX; fibers[p].len()];
        for (from, to) in entries {
            let xi = fibers[p]
                .iter()
                .position(|e| *e == from)
                .ok_or_else(|| Error::Parse(format!("unknown element `{from}` at {}", poset.name(p))))?;
            let yi = fibers[q]
                .iter()
                .position(|e| *e == to)
                .ok_or_else(|| Error::Parse(format!("unknown element `{to}` at {}", poset.name(q))))?;
            table[xi] = yi;
        }
        if let Some(missing) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Parse(format!(
                "map {} -> {} misses element `{}`",
                poset.name(p),
                poset.name(q),
                fibers[p][missing]
            )));
        }
        if cover_maps.insert((p, q), table).is_some() {
            return Err(Error::Parse(format!(
                "map {} -> {} listed twice",
                poset.name(p),
                poset.name(q)
            )));
        }
    }
    Presheaf::new(poset.clone(), fibers, cover_maps)
}

/// Writes the `.psh` format; output re-parses to an equal value.
pub fn write_psh(presheaf: &Presheaf) -> String {
    let poset = presheaf.poset();
    let mut out = String::new();
    for p in poset.points() {
        out.push_str(&format!("point {}:", poset.name(p)));
        for e in presheaf.fiber(p) {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    for ((p, q), table) in presheaf.cover_maps() {
        out.push_str(&format!("map {} -> {}:", poset.name(p), poset.name(q)));
        let entries: Vec<String> = table
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", presheaf.fiber(p)[x], presheaf.fiber(q)[y]))
            .collect();
        out.push_str(&format!(" {}\n", entries.join(", ")));
    }
    out
}
