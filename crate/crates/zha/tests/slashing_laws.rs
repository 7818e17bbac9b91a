//! The question-mark / slashing correspondence, checked exhaustively over a
//! sampled graph family: equality of the two equivalence relations, the
//! round trips, slash-operator recognition, and path independence.

mod common;

use std::collections::BTreeSet;

use common::{all_question_sets, sample_graphs};
use zha::{
    all_slashings, el, q_equiv, questions_from_slashing, recognize_slash_operator,
    slashing_from_questions, Zha, ZhaElement,
};

#[test]
fn question_equivalence_matches_slashing_equivalence() {
    for g in sample_graphs(4, 4, 36, 42).into_iter().take(36) {
        if g.left_count() + g.right_count() > 8 {
            continue;
        }
        for qs in all_question_sets(&g) {
            let gq = g.with_questions(qs).unwrap();
            let s = slashing_from_questions(&gq);
            let els: Vec<ZhaElement> = s.host().elements().collect();
            for &x in &els {
                for &y in &els {
                    assert_eq!(
                        q_equiv(&gq, x, y),
                        s.equiv(x, y),
                        "x={x} y={y} questions={:?}",
                        gq.questions()
                    );
                }
            }
        }
    }
}

#[test]
fn question_slashing_round_trips() {
    for g in sample_graphs(3, 3, 30, 7) {
        for qs in all_question_sets(&g) {
            let gq = g.with_questions(qs).unwrap();
            let s = slashing_from_questions(&gq);
            // questions -> slashing -> questions
            assert_eq!(&questions_from_slashing(&gq, &s).unwrap(), gq.questions());
        }
        // slashing -> questions -> slashing
        let host = Zha::from_2cg(&g);
        for s in all_slashings(&host) {
            let q = questions_from_slashing(&g, &s).unwrap();
            let gq = g.with_questions(q).unwrap();
            assert_eq!(slashing_from_questions(&gq), s);
        }
    }
}

#[test]
fn recognizer_recovers_every_slashing() {
    // every lattice from an acyclic graph realizes every digit, so the
    // recognizer recovers the cut sets exactly
    for g in sample_graphs(3, 3, 30, 99) {
        let host = Zha::from_2cg(&g);
        for s in all_slashings(&host) {
            let recovered = recognize_slash_operator(&s.to_table())
                .unwrap_or_else(|r| panic!("rejected s_top of {s}: {r}"));
            assert_eq!(recovered, s);
        }
    }
}

#[test]
fn regions_are_meet_join_closed_intervals() {
    for g in sample_graphs(3, 3, 30, 5) {
        let host = Zha::from_2cg(&g);
        for s in all_slashings(&host) {
            for x in host.elements() {
                let region = s.region(x);
                let lo = region.iter().fold(x, |acc, e| acc.meet(e));
                let hi = region.iter().fold(x, |acc, e| acc.join(e));
                assert!(host.contains(lo) && host.contains(hi));
                assert!(s.equiv(x, lo) && s.equiv(x, hi));
                let interval = host.interval(lo, hi);
                assert_eq!(region, interval, "region of {x} under {s}");
            }
        }
    }
}

/// All unit-step paths from bottom to top of the host.
fn all_paths(host: &Zha) -> Vec<Vec<ZhaElement>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![host.bottom()]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == host.top() {
            out.push(path);
            continue;
        }
        for next in [el(last.a + 1, last.b), el(last.a, last.b + 1)] {
            if host.contains(next) {
                let mut p = path.clone();
                p.push(next);
                stack.push(p);
            }
        }
    }
    out
}

#[test]
fn path_independence_of_cut_reading() {
    // reading the cuts off any bottom-to-top path gives the positional rule
    for g in sample_graphs(3, 3, 24, 12) {
        for qs in all_question_sets(&g).into_iter().step_by(3) {
            let gq = g.with_questions(qs).unwrap();
            let s = slashing_from_questions(&gq);
            for path in all_paths(s.host()) {
                let mut left_cuts = BTreeSet::new();
                let mut right_cuts = BTreeSet::new();
                for step in path.windows(2) {
                    let (lo, hi) = (step[0], step[1]);
                    if q_equiv(&gq, lo, hi) {
                        continue;
                    }
                    if hi.a == lo.a + 1 {
                        left_cuts.insert(hi.a);
                    } else {
                        right_cuts.insert(hi.b);
                    }
                }
                assert_eq!(&left_cuts, s.left().cuts(), "path {path:?}");
                assert_eq!(&right_cuts, s.right().cuts(), "path {path:?}");
            }
        }
    }
}
