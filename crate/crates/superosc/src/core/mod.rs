//! Superoscillating sequences: construction, evaluation, error envelopes and moments.

pub mod envelope;
pub(crate) mod expsum;
pub mod moments;
pub mod policy;
pub mod product;
pub mod sequence;
pub mod verdict;

pub use envelope::{error_report, leading_order_error, linear_rate_estimate, sup_error, ErrorReport};
pub use moments::{multinomial_moment, taylor_moment, ExactComplex};
pub use policy::PrecisionPolicy;
pub use product::{derivative, error_envelope, eval_product, eval_product_complex};
pub use sequence::{build_generalized, build_prototype, coefficient, coefficient_exact, eval_sum, SuperoscSequence};
pub use verdict::{check_superoscillation, Outcome, Verdict};
