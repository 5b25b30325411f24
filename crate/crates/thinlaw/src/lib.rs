//! Exact numerics for alpha-thinning of integer-valued distributions: the
//! thinning operator and its compound variant, information divergences and
//! closed-form Poisson-approximation bounds, Poisson-Charlier expansions,
//! the associated Markov semigroup, scaled Fisher information, and the
//! distribution-class certificates the sharper results are gated on.
//!
//! All distribution evolution is exact (up to a tracked truncation tail);
//! nothing here simulates.

pub mod charlier;
pub mod classes;
pub mod distcore;
pub mod divergences;
pub mod error;
pub mod fisher;
pub mod markov;
pub mod thinning;

pub use charlier::{
    charlier_eval, charlier_moment, charlier_moments, charlier_row, chi2_series, find_kappa,
    lr_coefficients, lr_reconstruct, CharlierCoeffs,
};
pub use classes::{
    altsum_pmf, is_bernoulli_sum, is_pb, is_ub, is_ulc, minimal_pb_ratio, BracketSide,
    ClassCertificate, ClassName, Witness,
};
pub use distcore::{
    convolve, entropy, factorial_moment, materialize, n_fold, summary_stats, FamilySpec, Pmf,
};
pub use divergences::{
    bound_llogl, bound_tv, bound_variance, bound_yannaros, chi2, chi2_to_poisson, kl,
    kl_to_poisson, po_po_tv_bound, po_po_tv_bound_tight, tv, BoundReport,
};
pub use error::{Error, Result};
pub use fisher::{k_info, k_rate_limit, s_info, score, KRateRow, KRateSweep, ScoreVector};
pub use markov::{alpha_from_time, chain_trajectory, transition_row, u_operator, ChainPoint};
pub use thinning::{compound_poisson, compound_thin, thin};
