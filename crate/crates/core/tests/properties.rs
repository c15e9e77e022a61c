//! Randomized invariants, 256 cases each.

mod common;

use common::props;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_algebras_satisfy_grading_and_associativity(seed in any::<u64>()) {
        props::grading_and_associativity(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn corrupted_structure_constants_are_reported(seed in any::<u64>()) {
        props::corrupted_constants_reported(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn projections_are_orthogonal_idempotents(seed in any::<u64>()) {
        props::projections_idempotent(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn projections_multiply_by_degree(seed in any::<u64>()) {
        props::projection_products(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn evaluation_is_linear(seed in any::<u64>()) {
        props::evaluation_linear(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>()) {
        props::normal_form_idempotent(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rank_ignores_row_order(seed in any::<u64>()) {
        props::echelon_rank_order_invariant(seed).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn evaluation_rank_ignores_polynomial_order(seed in any::<u64>()) {
        props::evaluation_rank_order_invariant(seed).map_err(TestCaseError::fail)?;
    }
}
