//! Local operators on the classifier: built from operators on the logic of
//! the topos, verified against the three laws and the naturality squares,
//! and used to close subobjects.

use std::collections::{BTreeMap, BTreeSet};

use zha::{OperatorTable, TwoColumnGraph};

use crate::classifier::{chi, omega, true_nat, Omega};
use crate::error::{Error, Result};
use crate::poset::{open_to_element, pile_open, poset_from_2cg, FinitePoset};
use crate::presheaf::{all_subfunctors, NatTrans, Presheaf, Subfunctor};

/// An operator on the open-set lattice of a poset, the logic of its topos.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubOneOperator {
    table: BTreeMap<BTreeSet<usize>, BTreeSet<usize>>,
}

impl SubOneOperator {
    /// A total map on the opens of the poset.
    pub fn new(
        poset: &FinitePoset,
        table: BTreeMap<BTreeSet<usize>, BTreeSet<usize>>,
    ) -> Result<SubOneOperator> {
        let opens = poset.opens();
        for open in &opens {
            let value = table.get(open).ok_or_else(|| {
                Error::Input(format!(
                    "no value for the open {}",
                    poset.render_point_set(open)
                ))
            })?;
            if !poset.is_open(value) {
                return Err(Error::Input(format!(
                    "value {} is not open",
                    poset.render_point_set(value)
                )));
            }
        }
        if table.len() != opens.len() {
            return Err(Error::Input("table has entries that are not opens".into()));
        }
        Ok(SubOneOperator { table })
    }

    pub fn identity(poset: &FinitePoset) -> SubOneOperator {
        SubOneOperator {
            table: poset.opens().into_iter().map(|o| (o.clone(), o)).collect(),
        }
    }

    pub fn constant_top(poset: &FinitePoset) -> SubOneOperator {
        let top: BTreeSet<usize> = poset.points().collect();
        SubOneOperator {
            table: poset.opens().into_iter().map(|o| (o, top.clone())).collect(),
        }
    }

    pub fn apply(&self, open: &BTreeSet<usize>) -> &BTreeSet<usize> {
        &self.table[open]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BTreeSet<usize>, &BTreeSet<usize>)> {
        self.table.iter()
    }
}

/// Carries a lattice operator on the digit pairs over to the opens of the
/// graph's poset.
pub fn sub_one_from_table(graph: &TwoColumnGraph, t: &OperatorTable) -> Result<SubOneOperator> {
    let poset = poset_from_2cg(graph)?;
    let table = t
        .entries()
        .map(|(k, v)| (pile_open(graph, k), pile_open(graph, v)))
        .collect();
    SubOneOperator::new(&poset, table)
}

/// Reads an opens operator back onto the graph's lattice.
pub fn table_from_sub_one(graph: &TwoColumnGraph, op: &SubOneOperator) -> Result<OperatorTable> {
    let host = zha::Zha::from_2cg(graph);
    let mut table = BTreeMap::new();
    for (open, value) in op.entries() {
        let k = open_to_element(graph, open)
            .ok_or_else(|| Error::Input("open is not a pile of the graph".into()))?;
        let v = open_to_element(graph, value)
            .ok_or_else(|| Error::Input("value is not a pile of the graph".into()))?;
        table.insert(k, v);
    }
    Ok(OperatorTable::new(host, table)?)
}

/// The three operator axioms checked on the open-set lattice, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpensVerdict {
    pub inflationary: bool,
    pub idempotent: bool,
    pub meet_preserving: bool,
    pub witness: Option<String>,
}

impl OpensVerdict {
    pub fn passed(&self) -> bool {
        self.inflationary && self.idempotent && self.meet_preserving
    }
}

pub fn check_opens_axioms(poset: &FinitePoset, op: &SubOneOperator) -> OpensVerdict {
    let opens = poset.opens();
    let mut verdict = OpensVerdict {
        inflationary: true,
        idempotent: true,
        meet_preserving: true,
        witness: None,
    };
    let note = |flag: &mut bool, witness: String, slot: &mut Option<String>| {
        if *flag {
            *flag = false;
            slot.get_or_insert(witness);
        }
    };
    for u in &opens {
        let ju = op.apply(u);
        if !u.is_subset(ju) {
            note(
                &mut verdict.inflationary,
                poset.render_point_set(u),
                &mut verdict.witness,
            );
        }
        if op.apply(ju) != ju {
            note(
                &mut verdict.idempotent,
                poset.render_point_set(u),
                &mut verdict.witness,
            );
        }
        for v in &opens {
            let meet: BTreeSet<usize> = u.intersection(v).copied().collect();
            let lhs = op.apply(&meet);
            let rhs: BTreeSet<usize> = op.apply(u).intersection(op.apply(v)).copied().collect();
            if *lhs != rhs {
                note(
                    &mut verdict.meet_preserving,
                    format!(
                        "{} with {}",
                        poset.render_point_set(u),
                        poset.render_point_set(v)
                    ),
                    &mut verdict.witness,
                );
            }
        }
    }
    verdict
}

/// The local operator induced on the classifier: at each point, apply the
/// opens operator and cut back down to the point's down-set. Demands that
/// the opens operator satisfies the axioms.
pub fn local_operator(om: &Omega, op: &SubOneOperator) -> Result<NatTrans> {
    let poset = om.poset();
    let verdict = check_opens_axioms(poset, op);
    if !verdict.passed() {
        return Err(Error::Contract(format!(
            "opens operator breaks the axioms at {}",
            verdict.witness.unwrap_or_default()
        )));
    }
    let mut components = Vec::new();
    for p in poset.points() {
        let mut comp = Vec::new();
        for idx in 0..om.fiber_size(p) {
            let open = om.open_at(p, idx);
            let value: BTreeSet<usize> = op
                .apply(open)
                .intersection(poset.down_set(p))
                .copied()
                .collect();
            comp.push(om.index_of(p, &value)?);
        }
        components.push(comp);
    }
    NatTrans::new(om.presheaf(), om.presheaf(), components)
}

/// The three classifier-level laws of a local operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOperatorLaws {
    pub preserves_truth: bool,
    pub idempotent: bool,
    pub preserves_meet: bool,
}

impl LocalOperatorLaws {
    pub fn all_hold(&self) -> bool {
        self.preserves_truth && self.idempotent && self.preserves_meet
    }
}

/// Checks `j . true = true`, `j . j = j`, and `j . meet = meet . (j x j)`
/// fiberwise, where the meet on the classifier is intersection.
pub fn local_operator_laws(om: &Omega, j: &NatTrans) -> LocalOperatorLaws {
    let poset = om.poset();
    let mut laws = LocalOperatorLaws {
        preserves_truth: true,
        idempotent: true,
        preserves_meet: true,
    };
    for p in poset.points() {
        if j.apply(p, om.top_at(p)) != om.top_at(p) {
            laws.preserves_truth = false;
        }
        for idx in 0..om.fiber_size(p) {
            let once = j.apply(p, idx);
            if j.apply(p, once) != once {
                laws.idempotent = false;
            }
            for other in 0..om.fiber_size(p) {
                let meet: BTreeSet<usize> = om
                    .open_at(p, idx)
                    .intersection(om.open_at(p, other))
                    .copied()
                    .collect();
                let meet_idx = om.index_of(p, &meet).expect("opens are meet-closed");
                let lhs = j.apply(p, meet_idx);
                let rhs: BTreeSet<usize> = om
                    .open_at(p, j.apply(p, idx))
                    .intersection(om.open_at(p, j.apply(p, other)))
                    .copied()
                    .collect();
                if om.open_at(p, lhs) != &rhs {
                    laws.preserves_meet = false;
                }
            }
        }
    }
    laws
}

/// The closure of a canonical subobject under a local operator: everything
/// whose characteristic value becomes true after applying `j`.
pub fn closure(
    host: &Presheaf,
    sub: &Subfunctor,
    om: &Omega,
    j: &NatTrans,
) -> Result<Subfunctor> {
    let chi_b = chi(host, sub, om)?;
    let poset = om.poset();
    let keep = poset
        .points()
        .map(|p| {
            (0..host.fiber_size(p))
                .filter(|&x| j.apply(p, chi_b.apply(p, x)) == om.top_at(p))
                .collect()
        })
        .collect();
    Subfunctor::new(host, keep)
}

/// The action a local operator induces on the logic: a point belongs to the
/// image of an open when its own fiber says so.
pub fn restrict_to_sub1(om: &Omega, j: &NatTrans) -> SubOneOperator {
    let poset = om.poset();
    let table = poset
        .opens()
        .into_iter()
        .map(|u| {
            let image: BTreeSet<usize> = poset
                .points()
                .filter(|&q| {
                    let local: BTreeSet<usize> =
                        u.intersection(poset.down_set(q)).copied().collect();
                    let idx = om.index_of(q, &local).expect("restriction is open");
                    om.open_at(q, j.apply(q, idx)).contains(&q)
                })
                .collect();
            (u, image)
        })
        .collect();
    SubOneOperator { table }
}

/// Report of the five naturality squares over a battery of hosts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalitySuiteReport {
    pub hosts_checked: usize,
    pub subobjects_checked: usize,
    pub squares_checked: usize,
    pub all_natural: bool,
}

/// For every canonical subobject `B` of every presheaf in the battery (the
/// terminal, every subterminal, and any extras): the squares for `B -> 1`,
/// the inclusion `B -> C`, the truth arrow, `chi_B`, and `j` all commute.
pub fn naturality_suite(
    poset: &FinitePoset,
    op: &SubOneOperator,
    extras: &[Presheaf],
) -> Result<NaturalitySuiteReport> {
    let om = omega(poset);
    let j = local_operator(&om, op)?;
    let one = Presheaf::terminal(poset);
    let mut battery = vec![one.clone()];
    for open in poset.opens() {
        battery.push(Presheaf::subterminal(poset, &open)?);
    }
    battery.extend(extras.iter().cloned());
    let mut report = NaturalitySuiteReport {
        hosts_checked: 0,
        subobjects_checked: 0,
        squares_checked: 0,
        all_natural: true,
    };
    let check = |t: &NatTrans, s: &Presheaf, g: &Presheaf, report: &mut NaturalitySuiteReport| {
        report.squares_checked += 1;
        if t.check_natural(s, g).is_err() {
            report.all_natural = false;
        }
    };
    check(&true_nat(&om), &one, om.presheaf(), &mut report);
    check(&j, om.presheaf(), om.presheaf(), &mut report);
    for host in &battery {
        report.hosts_checked += 1;
        for sub in all_subfunctors(host) {
            report.subobjects_checked += 1;
            let (b, inclusion) = sub.to_presheaf(host);
            check(&NatTrans::bang(&b), &b, &one, &mut report);
            check(&inclusion, &b, host, &mut report);
            let chi_b = chi(host, &sub, &om)?;
            check(&chi_b, host, om.presheaf(), &mut report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::pullback_true;
    use zha::{parse_2cg, slashing_from_questions};

    fn fixture() -> (TwoColumnGraph, FinitePoset) {
        let g = parse_2cg(include_str!("../../../fixtures/three_rungs.2cg")).unwrap();
        let p = poset_from_2cg(&g).unwrap();
        (g, p)
    }

    #[test]
    fn identity_operator_gives_identity_j() {
        let (_, poset) = fixture();
        let om = omega(&poset);
        let j = local_operator(&om, &SubOneOperator::identity(&poset)).unwrap();
        assert_eq!(j, NatTrans::identity(om.presheaf()));
        assert!(local_operator_laws(&om, &j).all_hold());
    }

    #[test]
    fn constant_top_operator_sends_everything_to_the_down_set() {
        let (_, poset) = fixture();
        let om = omega(&poset);
        let j = local_operator(&om, &SubOneOperator::constant_top(&poset)).unwrap();
        for p in poset.points() {
            for idx in 0..om.fiber_size(p) {
                assert_eq!(j.apply(p, idx), om.top_at(p));
            }
        }
        assert!(local_operator_laws(&om, &j).all_hold());
    }

    #[test]
    fn fixture_slashing_sends_21_to_32_at_l3() {
        let (g, poset) = fixture();
        let om = omega(&poset);
        let s = slashing_from_questions(&g);
        let op = sub_one_from_table(&g, &s.to_table()).unwrap();
        let j = local_operator(&om, &op).unwrap();
        let l3 = poset.index_of("L3").unwrap();
        let open_21 = pile_open(&g, zha::el(2, 1));
        let idx = om.index_of(l3, &open_21).unwrap();
        let image = om.open_at(l3, j.apply(l3, idx));
        assert_eq!(image, &pile_open(&g, zha::el(3, 2)));
        assert_eq!(image, poset.down_set(l3));
    }

    #[test]
    fn non_operator_is_rejected() {
        let (_, poset) = fixture();
        let om = omega(&poset);
        // send everything to the empty set: not inflationary
        let bad = SubOneOperator::new(
            &poset,
            poset
                .opens()
                .into_iter()
                .map(|o| (o, BTreeSet::new()))
                .collect(),
        )
        .unwrap();
        assert!(matches!(local_operator(&om, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn closure_of_truth_values_is_the_operator() {
        let (g, poset) = fixture();
        let om = omega(&poset);
        let s = slashing_from_questions(&g);
        let op = sub_one_from_table(&g, &s.to_table()).unwrap();
        let j = local_operator(&om, &op).unwrap();
        let one = Presheaf::terminal(&poset);
        for e in s.host().elements() {
            let open = pile_open(&g, e);
            let keep = poset
                .points()
                .map(|p| {
                    if open.contains(&p) {
                        [0].into()
                    } else {
                        BTreeSet::new()
                    }
                })
                .collect();
            let sub = Subfunctor::new(&one, keep).unwrap();
            let closed = closure(&one, &sub, &om, &j).unwrap();
            let closed_open: BTreeSet<usize> = poset
                .points()
                .filter(|p| closed.contains(*p, 0))
                .collect();
            assert_eq!(closed_open, pile_open(&g, s.s_top(e)), "at {e}");
        }
    }

    #[test]
    fn closure_agrees_with_generic_pullback() {
        // the rectangle: pulling the truth arrow back along j . chi_B
        let (g, poset) = fixture();
        let om = omega(&poset);
        let s = slashing_from_questions(&g);
        let op = sub_one_from_table(&g, &s.to_table()).unwrap();
        let j = local_operator(&om, &op).unwrap();
        // B = 11 inside C = the subterminal at 23
        let c = Presheaf::subterminal(&poset, &pile_open(&g, zha::el(2, 3))).unwrap();
        let keep = poset
            .points()
            .map(|p| {
                if pile_open(&g, zha::el(1, 1)).contains(&p) {
                    [0].into()
                } else {
                    BTreeSet::new()
                }
            })
            .collect();
        let b = Subfunctor::new(&c, keep).unwrap();
        let closed = closure(&c, &b, &om, &j).unwrap();
        let via_formula: Vec<BTreeSet<usize>> =
            poset.points().map(|p| closed.keep(p).clone()).collect();
        // independent route: generic pullback object of (j . chi_B, true)
        let chi_b = chi(&c, &b, &om).unwrap();
        let composite = chi_b.then(&j);
        let one = Presheaf::terminal(&poset);
        let (pb, proj_c, _) = crate::presheaf::pullback(&composite, &c, &true_nat(&om), &one);
        let via_pullback: Vec<BTreeSet<usize>> = poset
            .points()
            .map(|p| (0..pb.fiber_size(p)).map(|x| proj_c.apply(p, x)).collect())
            .collect();
        assert_eq!(via_formula, via_pullback);
        // and the closure is the whole of C here: J sends 11 to 33
        assert_eq!(closed, Subfunctor::full(&c));
        // sanity: the direct classified pullback matches too
        assert_eq!(pullback_true(&c, &composite, &om), closed);
    }

    #[test]
    fn restriction_round_trips() {
        let (g, poset) = fixture();
        let om = omega(&poset);
        let s = slashing_from_questions(&g);
        let op = sub_one_from_table(&g, &s.to_table()).unwrap();
        let j = local_operator(&om, &op).unwrap();
        let back = restrict_to_sub1(&om, &j);
        assert_eq!(back, op);
        assert_eq!(table_from_sub_one(&g, &back).unwrap(), s.to_table());
    }

    #[test]
    fn naturality_suite_runs_clean() {
        let (g, poset) = fixture();
        let s = slashing_from_questions(&g);
        let op = sub_one_from_table(&g, &s.to_table()).unwrap();
        let report = naturality_suite(&poset, &op, &[]).unwrap();
        assert!(report.all_natural);
        assert!(report.hosts_checked >= 14);
        assert!(report.squares_checked > report.subobjects_checked * 3);
    }
}
