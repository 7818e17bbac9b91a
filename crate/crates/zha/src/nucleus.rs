//! J-operator theory: derived rules, J-regions, partitions of a ZHA into
//! intervals, the Y-cut and λ-cut obstructions, and the brute-force
//! enumeration showing that J-operators coincide with slash-operators.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::{el, Zha, ZhaElement};
use crate::optable::{check_j123, OperatorTable};

/// A partition of a ZHA into blocks, each the full interval between its
/// least and greatest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    host: Zha,
    /// Block index per element.
    block_of: BTreeMap<ZhaElement, usize>,
    /// Blocks as (min, max, members), sorted by min.
    blocks: Vec<(ZhaElement, ZhaElement, Vec<ZhaElement>)>,
}

impl IntervalPartition {
    /// Validates that `blocks` partitions the host into full intervals.
    pub fn new(host: Zha, blocks: Vec<Vec<ZhaElement>>) -> Result<IntervalPartition> {
        let mut block_of = BTreeMap::new();
        let mut stored = Vec::new();
        for (i, members) in blocks.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::Input("empty block".into()));
            }
            let mut lo = members[0];
            let mut hi = members[0];
            for &m in members {
                host.check_member(m)?;
                if block_of.insert(m, i).is_some() {
                    return Err(Error::Input(format!("{m} appears in two blocks")));
                }
                lo = lo.meet(&m);
                hi = hi.join(&m);
            }
            let interval = host.interval(lo, hi);
            let sorted: BTreeSet<ZhaElement> = members.iter().copied().collect();
            if interval.iter().copied().collect::<BTreeSet<_>>() != sorted {
                return Err(Error::Input(format!(
                    "block of {lo} is not the full interval [{lo}, {hi}]"
                )));
            }
            stored.push((lo, hi, interval));
        }
        if block_of.len() != host.len() {
            return Err(Error::Input("blocks do not cover the host".into()));
        }
        stored.sort_by_key(|&(lo, _, _)| lo);
        let block_of = stored
            .iter()
            .enumerate()
            .flat_map(|(i, (_, _, ms))| ms.iter().map(move |&m| (m, i)))
            .collect();
        Ok(IntervalPartition {
            host,
            block_of,
            blocks: stored,
        })
    }

    pub fn host(&self) -> &Zha {
        &self.host
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[ZhaElement]> {
        self.blocks.iter().map(|(_, _, ms)| ms.as_slice())
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn same_block(&self, x: ZhaElement, y: ZhaElement) -> bool {
        self.block_of[&x] == self.block_of[&y]
    }

    pub fn block_top(&self, x: ZhaElement) -> ZhaElement {
        self.blocks[self.block_of[&x]].1
    }

    pub fn block_bottom(&self, x: ZhaElement) -> ZhaElement {
        self.blocks[self.block_of[&x]].0
    }

    /// The operator sending each element to the top of its block.
    pub fn top_operator(&self) -> OperatorTable {
        OperatorTable::tabulate(&self.host, |e| self.block_top(e)).expect("tops stay in host")
    }
}

/// Report of the five derived rules checked universally over the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedRuleReport {
    /// `P <= Q` implies `P* <= Q*`.
    pub monotone: bool,
    /// `P <= Q <= P*` implies `P* = Q*`.
    pub sandwich: bool,
    /// `P* = Q*` implies `(P & Q)* = P*`.
    pub classes_closed_meet: bool,
    /// `P* = Q*` implies `(P v Q)* = P*`.
    pub classes_closed_join: bool,
    /// `P <= Q <= R` and `P* = R*` imply `Q* = P*`.
    pub classes_closed_sandwich: bool,
}

impl DerivedRuleReport {
    pub fn all_hold(&self) -> bool {
        self.monotone
            && self.sandwich
            && self.classes_closed_meet
            && self.classes_closed_join
            && self.classes_closed_sandwich
    }
}

/// Verifies the derived rules for an operator that passed the axioms. They
/// are theorems, so any failure points at an implementation bug.
pub fn derived_rule_suite(t: &OperatorTable) -> DerivedRuleReport {
    let host = t.host();
    let els: Vec<ZhaElement> = host.elements().collect();
    let mut report = DerivedRuleReport {
        monotone: true,
        sandwich: true,
        classes_closed_meet: true,
        classes_closed_join: true,
        classes_closed_sandwich: true,
    };
    for &p in &els {
        let fp = t.apply(p);
        for &q in &els {
            let fq = t.apply(q);
            if p.leq(&q) && !fp.leq(&fq) {
                report.monotone = false;
            }
            if p.leq(&q) && q.leq(&fp) && fp != fq {
                report.sandwich = false;
            }
            if fp == fq {
                if t.apply(p.meet(&q)) != fp {
                    report.classes_closed_meet = false;
                }
                if t.apply(p.join(&q)) != fp {
                    report.classes_closed_join = false;
                }
            }
        }
    }
    for &p in &els {
        for &r in &els {
            if p.leq(&r) && t.apply(p) == t.apply(r) {
                for q in host.interval(p, r) {
                    if t.apply(q) != t.apply(p) {
                        report.classes_closed_sandwich = false;
                    }
                }
            }
        }
    }
    report
}

/// The J-regions of an operator satisfying the axioms, as an interval
/// partition. Fails with a contract error if the axioms do not hold.
pub fn j_regions(t: &OperatorTable) -> Result<IntervalPartition> {
    let verdict = check_j123(t);
    if !verdict.passed() {
        return Err(Error::Contract(verdict.describe()));
    }
    let mut by_value: BTreeMap<ZhaElement, Vec<ZhaElement>> = BTreeMap::new();
    for (k, v) in t.entries() {
        by_value.entry(v).or_default().push(k);
    }
    let partition = IntervalPartition::new(t.host().clone(), by_value.into_values().collect())?;
    // each block's maximum is the common value of the operator on the block
    for (_, hi, members) in &partition.blocks {
        debug_assert!(members.iter().all(|&m| t.apply(m) == *hi));
    }
    Ok(partition)
}

/// Which of the two forbidden local patterns a diamond exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    /// A lower edge of the diamond is glued while the parallel upper edge is
    /// cut; joining with the side element would have to glue the upper edge.
    Y,
    /// An upper edge is glued while the parallel lower edge is cut; meeting
    /// with the side element would have to glue the lower edge.
    Lambda,
}

/// A diamond witnessing a forbidden pattern: `base` is the bottom element,
/// `glued` the equivalent pair, `split` the parallel pair in distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenCut {
    pub kind: CutKind,
    pub base: ZhaElement,
    pub glued: (ZhaElement, ZhaElement),
    pub split: (ZhaElement, ZhaElement),
}

/// Scans every unit diamond of the host for Y-cuts and λ-cuts. The result is
/// empty exactly when the partition's equivalence comes from a slashing.
pub fn detect_forbidden_cuts(p: &IntervalPartition) -> Vec<ForbiddenCut> {
    let host = p.host();
    let mut out = Vec::new();
    for base in host.elements() {
        let nw = el(base.a + 1, base.b);
        let ne = el(base.a, base.b + 1);
        let top = el(base.a + 1, base.b + 1);
        if !(host.contains(nw) && host.contains(ne) && host.contains(top)) {
            continue;
        }
        // parallel northeast edges: base-ne (lower) and nw-top (upper)
        if p.same_block(base, ne) && !p.same_block(nw, top) {
            out.push(ForbiddenCut {
                kind: CutKind::Y,
                base,
                glued: (base, ne),
                split: (nw, top),
            });
        }
        if p.same_block(nw, top) && !p.same_block(base, ne) {
            out.push(ForbiddenCut {
                kind: CutKind::Lambda,
                base,
                glued: (nw, top),
                split: (base, ne),
            });
        }
        // parallel northwest edges: base-nw (lower) and ne-top (upper)
        if p.same_block(base, nw) && !p.same_block(ne, top) {
            out.push(ForbiddenCut {
                kind: CutKind::Y,
                base,
                glued: (base, nw),
                split: (ne, top),
            });
        }
        if p.same_block(ne, top) && !p.same_block(base, nw) {
            out.push(ForbiddenCut {
                kind: CutKind::Lambda,
                base,
                glued: (ne, top),
                split: (base, nw),
            });
        }
    }
    out
}

/// Default element-count guard for [`enumerate_j_operators`].
pub const ENUMERATION_GUARD: usize = 14;

/// Enumerates every partition of the host into intervals.
///
/// Blocks are generated by repeatedly taking the least unassigned element
/// (which must be the minimum of its block) and choosing an interval top
/// above it whose interval is still fully unassigned.
pub fn all_interval_partitions(host: &Zha) -> Vec<IntervalPartition> {
    let els: Vec<ZhaElement> = host.elements().collect();
    let mut partitions = Vec::new();
    let mut blocks: Vec<Vec<ZhaElement>> = Vec::new();
    let mut assigned: BTreeSet<ZhaElement> = BTreeSet::new();
    fn rec(
        host: &Zha,
        els: &[ZhaElement],
        assigned: &mut BTreeSet<ZhaElement>,
        blocks: &mut Vec<Vec<ZhaElement>>,
        out: &mut Vec<IntervalPartition>,
    ) {
        let seed = match els.iter().find(|e| !assigned.contains(e)) {
            Some(&e) => e,
            None => {
                out.push(
                    IntervalPartition::new(host.clone(), blocks.clone())
                        .expect("generated blocks are intervals"),
                );
                return;
            }
        };
        for &top in els {
            if !seed.leq(&top) {
                continue;
            }
            let block = host.interval(seed, top);
            if block.iter().any(|e| assigned.contains(e)) {
                continue;
            }
            assigned.extend(block.iter().copied());
            blocks.push(block.clone());
            rec(host, els, assigned, blocks, out);
            blocks.pop();
            for e in &block {
                assigned.remove(e);
            }
        }
    }
    rec(host, &els, &mut assigned, &mut blocks, &mut partitions);
    partitions
}

/// All J-operators on the host, found by filtering the top-of-block
/// operators of every interval partition through the axioms. Refuses hosts
/// larger than the guard rather than silently truncating.
pub fn enumerate_j_operators_with_guard(
    host: &Zha,
    guard: usize,
) -> Result<BTreeSet<OperatorTable>> {
    if host.len() > guard {
        return Err(Error::Guard {
            size: host.len(),
            guard,
        });
    }
    let mut out = BTreeSet::new();
    for p in all_interval_partitions(host) {
        let t = p.top_operator();
        if check_j123(&t).passed() {
            out.insert(t);
        }
    }
    Ok(out)
}

/// [`enumerate_j_operators_with_guard`] at the default guard.
pub fn enumerate_j_operators(host: &Zha) -> Result<BTreeSet<OperatorTable>> {
    enumerate_j_operators_with_guard(host, ENUMERATION_GUARD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slashing::{all_slashings, running_example, slashing_from_questions, Slashing};

    #[test]
    fn or_constant_regions() {
        let h = Zha::grid(4, 4);
        let t = OperatorTable::tabulate(&h, |p| p.join(&el(2, 2))).unwrap();
        let regions = j_regions(&t).unwrap();
        let zero_block: Vec<ZhaElement> = regions
            .blocks()
            .find(|b| b.contains(&el(0, 0)))
            .unwrap()
            .to_vec();
        assert_eq!(zero_block, h.interval(el(0, 0), el(2, 2)));
        assert_eq!(regions.block_top(el(0, 0)), el(2, 2));
    }

    #[test]
    fn identity_regions_are_singletons() {
        let h = Zha::grid(2, 2);
        let regions = j_regions(&OperatorTable::identity(&h)).unwrap();
        assert_eq!(regions.block_count(), h.len());
    }

    #[test]
    fn running_slashing_region() {
        let s = slashing_from_questions(&running_example());
        let regions = j_regions(&s.to_table()).unwrap();
        let block: Vec<ZhaElement> = regions
            .blocks()
            .find(|b| b.contains(&el(2, 2)))
            .unwrap()
            .to_vec();
        assert_eq!(block, vec![el(1, 1), el(1, 2), el(1, 3), el(2, 2), el(2, 3)]);
    }

    #[test]
    fn j_regions_demands_the_axioms() {
        let h = Zha::grid(2, 2);
        let t = OperatorTable::tabulate(&h, |p| p.meet(&el(1, 1))).unwrap();
        assert!(matches!(j_regions(&t), Err(Error::Contract(_))));
    }

    #[test]
    fn derived_rules_hold_for_slash_operators() {
        let s = slashing_from_questions(&running_example());
        let report = derived_rule_suite(&s.to_table());
        assert!(report.all_hold());
        let h = Zha::grid(3, 2);
        assert!(derived_rule_suite(&OperatorTable::identity(&h)).all_hold());
    }

    #[test]
    fn single_y_cut_detected() {
        // blocks: [00,12], {20,21}, {22}; the diamond at 11 is the only
        // forbidden site: 11 ~ 12 while 21 and 22 sit in different blocks
        let h = Zha::grid(2, 2);
        let p = IntervalPartition::new(
            h.clone(),
            vec![
                h.interval(el(0, 0), el(1, 2)),
                vec![el(2, 0), el(2, 1)],
                vec![el(2, 2)],
            ],
        )
        .unwrap();
        let cuts = detect_forbidden_cuts(&p);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].kind, CutKind::Y);
        assert_eq!(cuts[0].base, el(1, 1));
        assert_eq!(cuts[0].glued, (el(1, 1), el(1, 2)));
        assert_eq!(cuts[0].split, (el(2, 1), el(2, 2)));
        // and the top-of-block operator indeed breaks J3
        let verdict = check_j123(&p.top_operator());
        assert!(verdict.j1_ok && verdict.j2_ok && !verdict.j3_ok);
    }

    #[test]
    fn slashing_partitions_have_no_forbidden_cuts() {
        let h = Zha::grid(2, 2);
        for s in all_slashings(&h) {
            let regions = j_regions(&s.to_table()).unwrap();
            assert!(detect_forbidden_cuts(&regions).is_empty(), "slashing {s}");
        }
    }

    #[test]
    fn singleton_partition_is_clean() {
        let h = Zha::grid(2, 1);
        let p = j_regions(&OperatorTable::identity(&h)).unwrap();
        assert!(detect_forbidden_cuts(&p).is_empty());
    }

    #[test]
    fn interval_partition_validation() {
        let h = Zha::grid(1, 1);
        // {00, 11} skips the middle elements: not an interval
        assert!(IntervalPartition::new(
            h.clone(),
            vec![vec![el(0, 0), el(1, 1)], vec![el(0, 1)], vec![el(1, 0)]]
        )
        .is_err());
        // missing coverage
        assert!(IntervalPartition::new(h, vec![vec![el(0, 0)]]).is_err());
    }

    #[test]
    fn grid_3x3_operator_count() {
        let h = Zha::grid(2, 2);
        let ops = enumerate_j_operators(&h).unwrap();
        assert_eq!(ops.len(), 16);
        let expected: BTreeSet<OperatorTable> =
            all_slashings(&h).iter().map(Slashing::to_table).collect();
        assert_eq!(ops, expected);
    }

    #[test]
    fn chain_j_operators_are_piccs() {
        let h = Zha::from_2cg(&crate::graph::TwoColumnGraph::new(3, 0, [], []).unwrap());
        let ops = enumerate_j_operators(&h).unwrap();
        assert_eq!(ops.len(), 1 << 3);
    }

    #[test]
    fn one_element_host() {
        let h = Zha::grid(0, 0);
        let ops = enumerate_j_operators(&h).unwrap();
        assert_eq!(ops.len(), 1);
        assert!(ops.contains(&OperatorTable::identity(&h)));
    }

    #[test]
    fn guard_refuses_large_hosts() {
        let h = Zha::grid(3, 3);
        assert!(matches!(
            enumerate_j_operators(&h),
            Err(Error::Guard { size: 16, guard: 14 })
        ));
        assert!(enumerate_j_operators_with_guard(&h, 16).is_ok());
    }
}
