//! Error, disturbance and the permutation-maximized lower bound on their sum.
//!
//! All distances are unnormalized L1 distances between outcome distributions.
//! Permutations are stored as index vectors: applying `sigma` to `p` yields the
//! relabeled distribution whose entry `i` is `p[sigma[i]]`.

mod bound;
mod distance;
mod ozawa;

pub use bound::{
    plain_gap, tradeoff_report, xi_g_max, xi_g_max_with_mode, ScenarioDistributions, TradeoffReport, XiMax, XiMode,
};
pub use distance::{min_permutation_distance, statistical_distance, PermutationMin, MAX_PERMUTATION_OUTCOMES};
pub use ozawa::{ozawa_quantities, OzawaReport};

/// Outcome relabeling as an index map.
pub type Permutation = Vec<usize>;

/// Two candidate optima closer than this count as a tie.
pub const TIE_TOL: f64 = 1e-12;
