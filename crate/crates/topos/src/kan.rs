//! Right Kan extension along a full subposet inclusion, its counit, and the
//! sheafification functor it induces.

use std::collections::{BTreeMap, BTreeSet};

use zha::TwoColumnGraph;

use crate::error::{Error, Result};
use crate::poset::{poset_from_2cg, FinitePoset};
use crate::presheaf::{NatTrans, Presheaf};

/// A full subposet inclusion: the small poset keeps a subset of the points
/// with the induced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetInclusion {
    big: FinitePoset,
    small: FinitePoset,
    /// small id -> big id
    embed: Vec<usize>,
    /// big id -> small id
    preimage: Vec<Option<usize>>,
}

impl PosetInclusion {
    /// The inclusion of the full subposet on `kept`.
    pub fn full(big: &FinitePoset, kept: &BTreeSet<usize>) -> Result<PosetInclusion> {
        if let Some(&p) = kept.iter().find(|&&p| p >= big.len()) {
            return Err(Error::Input(format!("point {p} outside the poset")));
        }
        let embed: Vec<usize> = kept.iter().copied().collect();
        let names = embed.iter().map(|&p| big.name(p).to_string()).collect();
        // induced covers: enough edges to regenerate the induced order
        let mut edges = Vec::new();
        for (i, &p) in embed.iter().enumerate() {
            for (j, &q) in embed.iter().enumerate() {
                if i != j && big.le(q, p) {
                    edges.push((i, j));
                }
            }
        }
        let small = FinitePoset::from_dag(names, &edges)?;
        let mut preimage = vec![None; big.len()];
        for (i, &p) in embed.iter().enumerate() {
            preimage[p] = Some(i);
        }
        Ok(PosetInclusion {
            big: big.clone(),
            small,
            embed,
            preimage,
        })
    }

    pub fn big(&self) -> &FinitePoset {
        &self.big
    }

    pub fn small(&self) -> &FinitePoset {
        &self.small
    }

    pub fn embed(&self, a: usize) -> usize {
        self.embed[a]
    }

    pub fn preimage(&self, b: usize) -> Option<usize> {
        self.preimage[b]
    }

    /// The kept points below `b`, as small ids.
    fn kept_below(&self, b: usize) -> Vec<usize> {
        self.embed
            .iter()
            .enumerate()
            .filter(|&(_, &p)| self.big.le(p, b))
            .map(|(a, _)| a)
            .collect()
    }
}

/// The inclusion that erases a graph's question marks: the subposet keeps
/// the points that are not in the question set.
pub fn inclusion_from_questions(graph: &TwoColumnGraph) -> Result<(FinitePoset, PosetInclusion)> {
    let big = poset_from_2cg(graph)?;
    let kept: BTreeSet<usize> = big
        .points()
        .filter(|&p| {
            let name = big.name(p);
            !graph
                .questions()
                .iter()
                .any(|q| q.to_string() == name)
        })
        .collect();
    let inc = PosetInclusion::full(&big, &kept)?;
    Ok((big, inc))
}

/// Precomposition with the inclusion: the restriction of a presheaf to the
/// subposet.
pub fn restrict(inc: &PosetInclusion, c: &Presheaf) -> Result<Presheaf> {
    if c.poset() != &inc.big {
        return Err(Error::Shape("presheaf lives on a different poset".into()));
    }
    let fibers = inc
        .embed
        .iter()
        .map(|&p| c.fiber(p).to_vec())
        .collect();
    let cover_maps = inc
        .small
        .covers()
        .into_iter()
        .map(|(a, aq)| {
            let (p, q) = (inc.embed[a], inc.embed[aq]);
            let table = (0..c.fiber_size(p)).map(|x| c.map(p, q, x)).collect();
            ((a, aq), table)
        })
        .collect();
    Presheaf::new(inc.small.clone(), fibers, cover_maps)
}

/// A fiber element of the right Kan extension: one value at every kept point
/// below the host point, compatible with all restrictions.
type Family = BTreeMap<usize, usize>;

/// The right Kan extension of a presheaf on the subposet, with the family
/// data kept alongside for the counit and unit.
#[derive(Debug, Clone)]
pub struct RanResult {
    pub presheaf: Presheaf,
    families: Vec<Vec<Family>>,
}

impl RanResult {
    pub fn family(&self, b: usize, idx: usize) -> &Family {
        &self.families[b][idx]
    }

    pub fn family_index(&self, b: usize, family: &Family) -> Option<usize> {
        self.families[b].iter().position(|f| f == family)
    }
}

fn family_name(inc: &PosetInclusion, d: &Presheaf, family: &Family) -> String {
    // semicolons, not commas: the names must survive the `.psh` map syntax
    let parts: Vec<String> = family
        .iter()
        .map(|(&a, &x)| format!("{}:{}", inc.small.name(a), d.fiber(a)[x]))
        .collect();
    format!("({})", parts.join(";"))
}

/// Computes the right Kan extension by the finite-limit formula: the fiber
/// at `b` is the set of families over the kept points below `b` compatible
/// with every restriction map of `d`.
pub fn ran(inc: &PosetInclusion, d: &Presheaf) -> Result<RanResult> {
    if d.poset() != &inc.small {
        return Err(Error::Shape("presheaf lives on a different poset".into()));
    }
    let big = &inc.big;
    let mut families: Vec<Vec<Family>> = Vec::new();
    for b in big.points() {
        let index: Vec<usize> = inc.kept_below(b);
        // all candidate families: the full product over the index set
        let mut candidates: Vec<Family> = vec![BTreeMap::new()];
        for &a in &index {
            let mut next = Vec::new();
            for f in &candidates {
                for x in 0..d.fiber_size(a) {
                    let mut g = f.clone();
                    g.insert(a, x);
                    next.push(g);
                }
            }
            candidates = next;
        }
        let compatible: Vec<Family> = candidates
            .into_iter()
            .filter(|f| {
                index.iter().all(|&a| {
                    index.iter().all(|&a2| {
                        !inc.small.le(a2, a) || d.map(a, a2, f[&a]) == f[&a2]
                    })
                })
            })
            .collect();
        families.push(compatible);
    }
    let fibers: Vec<Vec<String>> = big
        .points()
        .map(|b| {
            families[b]
                .iter()
                .map(|f| family_name(inc, d, f))
                .collect()
        })
        .collect();
    let cover_maps = big
        .covers()
        .into_iter()
        .map(|(p, q)| {
            let keep: BTreeSet<usize> = inc.kept_below(q).into_iter().collect();
            let table = families[p]
                .iter()
                .map(|f| {
                    let restricted: Family = f
                        .iter()
                        .filter(|(a, _)| keep.contains(a))
                        .map(|(&a, &x)| (a, x))
                        .collect();
                    families[q]
                        .iter()
                        .position(|g| *g == restricted)
                        .expect("restricting a compatible family keeps it compatible")
                })
                .collect();
            ((p, q), table)
        })
        .collect();
    let presheaf = Presheaf::new(big.clone(), fibers, cover_maps)?;
    Ok(RanResult { presheaf, families })
}

/// The counit at a presheaf on the subposet: project a family at a kept
/// point onto its own coordinate.
pub fn counit(inc: &PosetInclusion, d: &Presheaf, ran_d: &RanResult) -> Result<NatTrans> {
    let restricted = restrict(inc, &ran_d.presheaf)?;
    let components = inc
        .small
        .points()
        .map(|a| {
            let b = inc.embed[a];
            ran_d.families[b].iter().map(|f| f[&a]).collect()
        })
        .collect();
    NatTrans::new(&restricted, d, components)
}

/// The unit at a presheaf on the big poset: send an element to the family of
/// its restrictions to the kept points below.
pub fn unit(inc: &PosetInclusion, c: &Presheaf, ran_restr: &RanResult) -> Result<NatTrans> {
    let big = &inc.big;
    let mut components = Vec::new();
    for b in big.points() {
        let mut comp = Vec::new();
        for x in 0..c.fiber_size(b) {
            let family: Family = inc
                .kept_below(b)
                .into_iter()
                .map(|a| (a, c.map(b, inc.embed[a], x)))
                .collect();
            let idx = ran_restr.family_index(b, &family).ok_or_else(|| {
                Error::Contract("restriction family missing from the extension".into())
            })?;
            comp.push(idx);
        }
        components.push(comp);
    }
    NatTrans::new(c, &ran_restr.presheaf, components)
}

/// Sheafification: restrict to the subposet, then extend back.
pub fn sheafify(inc: &PosetInclusion, c: &Presheaf) -> Result<RanResult> {
    ran(inc, &restrict(inc, c)?)
}
