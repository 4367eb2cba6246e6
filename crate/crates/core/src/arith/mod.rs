//! Exact integer primitives: primality, factorization, residue symbols and the
//! two Diophantine parametrizations consumed by the classification criteria.

mod dioph;
mod prime;
mod symbols;

pub use dioph::{kaplan_parameters, kaplan_solutions, represent_u2_minus_2v2, KaplanParams, UvRep};
pub use prime::{
    factor, factor_squarefree, is_prime, is_prime_wide, is_squarefree, squarefree_decompose, FactoredOdd, PrimeFactor,
    DEFAULT_TRIAL_BOUND,
};
pub use symbols::{jacobi, quartic_symbol, quartic_symbol_mod2, SymbolLog, SymbolRecord, SymbolValue};
