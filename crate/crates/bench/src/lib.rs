//! Shared fixtures for the benchmarks.

use miura_core::bethe::{BetheProblem, ParameterSet, Tuple};
use miura_core::liealg::{cartan_matrix, Family, Weight};
use miura_core::ratpoly::rat_int;

/// Rank-2 type A problem with one fundamental weight at the origin and
/// the canonical parameter set.
pub fn a2_problem() -> BetheProblem {
    let cartan = cartan_matrix(Family::A, 2).unwrap();
    let h = rat_int(1);
    BetheProblem::new(
        cartan,
        h.clone(),
        vec![Weight::new(vec![1, 1])],
        vec![rat_int(0)],
        ParameterSet::special(2, &h),
    )
    .unwrap()
}

pub fn a2_base() -> Tuple {
    Tuple::ones(2)
}
