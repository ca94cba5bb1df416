//! Intersection properties of mixed ball families, minimal pairs and the
//! glued norm `μ`.

mod family;
mod gauge;
mod minimal;
mod mu;

pub use family::{
    common_point, metric_convexity_witness, mixed_bip_report, mixed_intersection_program, pairwise_mixed_check,
    pairwise_witnesses, symmetrized_family_check, CommonPoint, MixedBall, MixedBallFamily,
    PairFailure, PairWitness, Verdict,
};
pub use gauge::{extend_pair_globally, single_anchor_extension, AffinePiece, Component, GaugeFunction, PiecewiseGaugePair};
pub use minimal::{lower_first, lower_second, minimal_pair, pass_cap, FinitePairTable, MinimalPair, TableViolation};
pub use mu::{build_mu_norm, verification_pairs, MuNorm, TriangleCase};
