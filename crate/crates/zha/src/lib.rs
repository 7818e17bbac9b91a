//! Planar Heyting algebras built from two-column graphs, and the operator
//! theory on top of them: slashings, J-operators, their polynomial forms,
//! and the connective cubes with countermodel search.

pub mod cube;
pub mod error;
pub mod graph;
pub mod lattice;
pub mod nucleus;
pub mod optable;
pub mod picc;
pub mod poly;
pub mod slashing;

pub use error::{Error, Result};
pub use graph::{parse_2cg, write_2cg, Point, TwoColumnGraph};
pub use lattice::{el, Heyting, Zha, ZhaElement};
pub use optable::{check_j123, JVerdict, OperatorTable};
pub use picc::{parse_picc, Picc};
pub use slashing::{
    all_slashings, q_equiv, questions_from_slashing, recognize_slash_operator, running_example,
    slashing_from_questions, SlashRejection, Slashing,
};

#[cfg(test)]
mod thread_safety {
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_share_across_threads() {
        assert_send_sync::<crate::TwoColumnGraph>();
        assert_send_sync::<crate::Zha>();
        assert_send_sync::<crate::Slashing>();
        assert_send_sync::<crate::OperatorTable>();
        assert_send_sync::<crate::poly::PolyExpr>();
        assert_send_sync::<crate::nucleus::IntervalPartition>();
        assert_send_sync::<crate::cube::Model>();
    }
}
