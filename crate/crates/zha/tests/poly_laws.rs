//! Polynomial operator laws over the sampled hosts: the quotient catalog
//! satisfies the axioms, the six algebra identities hold, the cut algebra is
//! a homomorphism, and every slashing tabulates back from its polynomial.

mod common;

use common::sample_graphs;
use zha::optable::check_j123;
use zha::picc::Picc;
use zha::poly::{
    cuts_of, fs_identities, named_operator, op_join_slash, op_meet, slashing_to_polynomial,
    tabulate_poly, NamedOperator,
};
use zha::slashing::recognize_slash_operator;
use zha::{all_slashings, el, Zha};

fn hosts_for_tests() -> Vec<Zha> {
    sample_graphs(3, 3, 26, 17)
        .iter()
        .map(Zha::from_2cg)
        .collect()
}

#[test]
fn catalog_operators_pass_the_axioms_for_all_constants() {
    for host in hosts_for_tests() {
        let nn = NamedOperator::NegNeg.tabulate(&host).unwrap();
        assert!(check_j123(&nn).passed(), "!! on {}x{}", host.l(), host.r());
        for a in host.elements() {
            for named in [
                NamedOperator::OrConst(a),
                NamedOperator::ImpConst(a),
                NamedOperator::ImpImpConst(a),
                NamedOperator::Mixed(a),
            ] {
                let t = named.tabulate(&host).unwrap();
                assert!(check_j123(&t).passed(), "{named:?} on {}x{}", host.l(), host.r());
            }
            for b in host.elements() {
                let t = NamedOperator::Forcing(a, b).tabulate(&host).unwrap();
                assert!(check_j123(&t).passed(), "forcing({a},{b})");
            }
        }
    }
}

#[test]
fn meets_of_j_operators_stay_j_operators() {
    for host in hosts_for_tests().into_iter().take(10) {
        let slashings = all_slashings(&host);
        for s in slashings.iter().step_by(3) {
            for k in slashings.iter().step_by(5) {
                let meet = op_meet(&s.to_table(), &k.to_table()).unwrap();
                assert!(check_j123(&meet).passed());
            }
        }
    }
}

#[test]
fn fs_identities_hold_exhaustively() {
    for host in hosts_for_tests() {
        let report = fs_identities(&host).unwrap();
        assert!(
            report.all_hold(),
            "on {}x{} host: {:?}",
            host.l(),
            host.r(),
            report.checks
        );
    }
}

#[test]
fn fs_concrete_instances_on_smallest_grids() {
    // the worked instances, each on the smallest full grid holding its
    // constants
    let g22 = Zha::grid(2, 2);
    let g33 = Zha::grid(3, 3);
    let or_ = |h: &Zha, a, b| named_operator("or_const", &[el(a, b)], h).unwrap();
    let imp_ = |h: &Zha, a, b| named_operator("imp_const", &[el(a, b)], h).unwrap();
    let join = |x: zha::OperatorTable, y: zha::OperatorTable| {
        op_join_slash(
            &recognize_slash_operator(&x).unwrap(),
            &recognize_slash_operator(&y).unwrap(),
        )
        .unwrap()
        .to_table()
    };
    assert_eq!(join(or_(&g22, 2, 1), or_(&g22, 1, 2)), or_(&g22, 2, 2));
    assert_eq!(join(imp_(&g33, 3, 2), imp_(&g33, 2, 3)), imp_(&g33, 2, 2));
    assert_eq!(
        op_meet(&or_(&g22, 2, 1), &or_(&g22, 1, 2)).unwrap(),
        or_(&g22, 1, 1)
    );
    assert_eq!(
        op_meet(&imp_(&g33, 3, 2), &imp_(&g33, 2, 3)).unwrap(),
        imp_(&g33, 3, 3)
    );
    use zha::optable::OperatorTable;
    assert_eq!(
        op_meet(&or_(&g22, 2, 2), &imp_(&g22, 2, 2)).unwrap(),
        OperatorTable::identity(&g22)
    );
    assert_eq!(
        join(or_(&g22, 2, 2), imp_(&g22, 2, 2)),
        OperatorTable::constant_top(&g22)
    );
}

#[test]
fn cut_sets_are_a_homomorphism() {
    for host in hosts_for_tests().into_iter().take(8) {
        let slashings = all_slashings(&host);
        for s in slashings.iter().step_by(3) {
            for k in slashings.iter().step_by(5) {
                let meet_table = op_meet(&s.to_table(), &k.to_table()).unwrap();
                let meet_slashing = recognize_slash_operator(&meet_table).unwrap();
                let (cs, ck, cm) = (cuts_of(s), cuts_of(k), cuts_of(&meet_slashing));
                assert_eq!(
                    cm.left_cuts,
                    cs.left_cuts.union(&ck.left_cuts).copied().collect()
                );
                assert_eq!(
                    cm.right_cuts,
                    cs.right_cuts.union(&ck.right_cuts).copied().collect()
                );
                let join_slashing = op_join_slash(s, k).unwrap();
                let cj = cuts_of(&join_slashing);
                assert_eq!(
                    cj.left_cuts,
                    cs.left_cuts.intersection(&ck.left_cuts).copied().collect()
                );
                assert_eq!(
                    cj.right_cuts,
                    cs.right_cuts
                        .intersection(&ck.right_cuts)
                        .copied()
                        .collect()
                );
            }
        }
    }
}

#[test]
fn every_slashing_is_polynomial() {
    for host in hosts_for_tests() {
        for s in all_slashings(&host) {
            let poly = slashing_to_polynomial(&s);
            assert_eq!(
                tabulate_poly(&poly, &host).unwrap(),
                s.to_table(),
                "slashing {s} via {}",
                poly.text()
            );
        }
    }
}

#[test]
fn picc_order_characterizations_coincide() {
    for n in 0..=6usize {
        let piccs: Vec<Picc> = (0u64..(1 << n))
            .map(|mask| Picc::new(n, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap())
            .collect();
        for p in &piccs {
            for q in &piccs {
                assert_eq!(p.leq(q).unwrap(), p.leq_by_cuts(q).unwrap());
            }
        }
    }
}
