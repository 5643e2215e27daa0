//! Monodromy and weight filtrations of `(N, Φ, q)` data and the
//! weight-monodromy comparison.

mod filtration;
mod nilpotent;
mod weight;
mod weil;
mod wmc;

pub use filtration::{monodromy_filtration, weight_filtration, Filtration};
pub use nilpotent::{exp_nilpotent, log_unipotent, NilpotentOperator};
pub use weight::{factor_weights, is_prime_power, weight_decomposition, FrobeniusData, WeightDecomposition};
pub use weil::{complex_roots, default_tolerance, weil_analysis, weil_weight, FixedComplex, WeilAnalysis, PRECISION_BITS};
pub use wmc::{check_commutation, check_weight_lowering, check_wmc, induced_on_graded, Violation, WmcReport};
