//! Shared fixtures for the benchmark suites.

use latquad_core::algebra::ExponentVector;
use latquad_core::LatticeBasis;

/// Four-variable basis whose single quadrangle generates the whole ideal.
pub fn square_basis() -> LatticeBasis {
    LatticeBasis::new(
        ExponentVector::signed(vec![1, -1, -1, 1]),
        ExponentVector::signed(vec![1, -1, 1, -1]),
    )
    .expect("valid basis")
}

/// Larger-entry basis; its quadrangle lives at weighted degree 8.
pub fn deep_quadrangle_basis() -> LatticeBasis {
    LatticeBasis::new(
        ExponentVector::signed(vec![0, 0, -2, 2]),
        ExponentVector::signed(vec![-3, 3, -3, 3]),
    )
    .expect("valid basis")
}
