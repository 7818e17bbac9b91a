//! Presheaf toposes on finite posets: the subobject classifier, local
//! operators induced by lattice operators, closure of subobjects, and
//! sheafification by right Kan extension along a subposet inclusion.

pub mod classifier;
pub mod error;
pub mod kan;
pub mod localop;
pub mod poset;
pub mod presheaf;

pub use classifier::{
    chi, classifier_bijection_check, omega, pullback_true, sub1_lattice, true_nat,
    ClassifierReport, Omega,
};
pub use error::{Error, Result};
pub use kan::{
    counit, inclusion_from_questions, ran, restrict, sheafify, unit, PosetInclusion, RanResult,
};
pub use localop::{
    check_opens_axioms, closure, local_operator, local_operator_laws, naturality_suite,
    restrict_to_sub1, sub_one_from_table, table_from_sub_one, LocalOperatorLaws,
    NaturalitySuiteReport, OpensVerdict, SubOneOperator,
};
pub use poset::{open_to_element, pile_open, poset_from_2cg, FinitePoset};
pub use presheaf::{
    all_nat_trans, all_subfunctors, parse_psh, pullback, write_psh, NatTrans, Presheaf, Subfunctor,
};
