//! Fixtures shared by the criterion benches.

use hahnchain_core::{build_jacobi, recurrence_coefficients, ChainParameters, Rational, SpinChain};

/// The odd-N mirror-symmetric chain with `alpha = beta = 2`.
pub fn odd_chain(n: usize) -> (ChainParameters, SpinChain) {
    let p = ChainParameters::symmetric(n, Rational::from_integer(2.into())).expect("N >= 1");
    let chain = build_jacobi(&recurrence_coefficients(&p)).expect("positive couplings");
    (p, chain)
}
