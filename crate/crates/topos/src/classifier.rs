//! The subobject classifier of a presheaf topos on a finite poset: fibers
//! are the opens of each down-set, restriction is intersection, and
//! characteristic maps classify canonical subobjects.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::presheaf::{all_nat_trans, all_subfunctors, NatTrans, Presheaf, Subfunctor};

/// The classifier: for each point the opens inside its down-set, kept both
/// as sets and as a presheaf whose maps intersect with the lower down-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega {
    poset: FinitePoset,
    opens_at: Vec<Vec<BTreeSet<usize>>>,
    index_at: Vec<BTreeMap<BTreeSet<usize>, usize>>,
    presheaf: Presheaf,
}

/// Builds the classifier of the poset.
pub fn omega(poset: &FinitePoset) -> Omega {
    let opens_at: Vec<Vec<BTreeSet<usize>>> =
        poset.points().map(|p| poset.opens_inside(p)).collect();
    let index_at: Vec<BTreeMap<BTreeSet<usize>, usize>> = opens_at
        .iter()
        .map(|opens| {
            opens
                .iter()
                .enumerate()
                .map(|(i, o)| (o.clone(), i))
                .collect()
        })
        .collect();
    let fibers: Vec<Vec<String>> = poset
        .points()
        .map(|p| {
            opens_at[p]
                .iter()
                .map(|o| poset.render_point_set(o))
                .collect()
        })
        .collect();
    let cover_maps = poset
        .covers()
        .into_iter()
        .map(|(p, q)| {
            let table = opens_at[p]
                .iter()
                .map(|o| {
                    let restricted: BTreeSet<usize> =
                        o.intersection(poset.down_set(q)).copied().collect();
                    index_at[q][&restricted]
                })
                .collect();
            ((p, q), table)
        })
        .collect();
    let presheaf = Presheaf::new(poset.clone(), fibers, cover_maps)
        .expect("restriction by intersection is functorial");
    Omega {
        poset: poset.clone(),
        opens_at,
        index_at,
        presheaf,
    }
}

impl Omega {
    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    pub fn fiber_size(&self, p: usize) -> usize {
        self.opens_at[p].len()
    }

    pub fn open_at(&self, p: usize, idx: usize) -> &BTreeSet<usize> {
        &self.opens_at[p][idx]
    }

    pub fn index_of(&self, p: usize, open: &BTreeSet<usize>) -> Result<usize> {
        self.index_at[p]
            .get(open)
            .copied()
            .ok_or_else(|| {
                Error::Input(format!(
                    "{} is not an open inside the down-set of {}",
                    self.poset.render_point_set(open),
                    self.poset.name(p)
                ))
            })
    }

    /// The index of the full down-set of `p`, the truth value "true".
    pub fn top_at(&self, p: usize) -> usize {
        self.index_at[p][self.poset.down_set(p)]
    }
}

/// The truth arrow: at each point, the single terminal element goes to the
/// full down-set.
pub fn true_nat(omega: &Omega) -> NatTrans {
    let components = omega.poset.points().map(|p| vec![omega.top_at(p)]).collect();
    NatTrans::new(&Presheaf::terminal(&omega.poset), &omega.presheaf, components)
        .expect("the truth arrow is natural")
}

/// The characteristic map of a canonical subobject: an element goes to the
/// set of lower points whose restriction lands back inside the subobject.
pub fn chi(host: &Presheaf, sub: &Subfunctor, omega: &Omega) -> Result<NatTrans> {
    // re-validate canonicity against the host
    let sub = Subfunctor::new(host, host.poset().points().map(|p| sub.keep(p).clone()).collect())?;
    let poset = host.poset();
    let mut components = Vec::new();
    for p in poset.points() {
        let mut comp = Vec::new();
        for x in 0..host.fiber_size(p) {
            let landing: BTreeSet<usize> = poset
                .down_set(p)
                .iter()
                .copied()
                .filter(|&r| sub.contains(r, host.map(p, r, x)))
                .collect();
            comp.push(omega.index_of(p, &landing)?);
        }
        components.push(comp);
    }
    NatTrans::new(host, &omega.presheaf, components)
}

/// The subobject classified by a map into the classifier: everything sent to
/// the truth value.
pub fn pullback_true(host: &Presheaf, t: &NatTrans, omega: &Omega) -> Subfunctor {
    let keep = omega
        .poset
        .points()
        .map(|p| {
            (0..host.fiber_size(p))
                .filter(|&x| t.apply(p, x) == omega.top_at(p))
                .collect()
        })
        .collect();
    Subfunctor::new(host, keep).expect("a classified part is closed under the maps")
}

/// The subobjects of the terminal presheaf, as opens. Ordered by inclusion
/// this is the logic of the topos, and it coincides with the open-set
/// lattice of the poset.
pub fn sub1_lattice(poset: &FinitePoset) -> Vec<BTreeSet<usize>> {
    poset.opens()
}

/// Outcome of checking the classifying bijection on one host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierReport {
    pub sub_count: usize,
    pub hom_count: usize,
    /// chi round-trips with the pullback of the truth arrow, in both
    /// directions, making the two sides biject.
    pub bijection_ok: bool,
}

/// Enumerates both sides of `Sub(C) ~ Hom(C, Omega)` and verifies that the
/// characteristic map is a bijection between them.
pub fn classifier_bijection_check(host: &Presheaf, omega: &Omega) -> Result<ClassifierReport> {
    let subs = all_subfunctors(host);
    let homs = all_nat_trans(host, &omega.presheaf);
    let mut ok = true;
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    for sub in &subs {
        let t = chi(host, sub, omega)?;
        // chi lands in the hom set and recovers its subobject
        if pullback_true(host, &t, omega) != *sub {
            ok = false;
        }
        if !seen.insert(t.components().to_vec()) {
            ok = false; // chi collided: not injective
        }
        if !homs.contains(&t) {
            ok = false;
        }
    }
    // every hom arises as chi of its own pullback: surjectivity
    for t in &homs {
        let sub = pullback_true(host, t, omega);
        let back = chi(host, &sub, omega)?;
        if back != *t {
            ok = false;
        }
    }
    if subs.len() != homs.len() {
        ok = false;
    }
    Ok(ClassifierReport {
        sub_count: subs.len(),
        hom_count: homs.len(),
        bijection_ok: ok,
    })
}
