//! Spectral invariants, depths, duality pairings and the checkers built on
//! them.

mod checks;
mod duality;
mod interleaving;
mod invariant;
mod suite;
mod torsion;
mod value;

pub use checks::{
    check_coeff_monotone, check_corrected_pd, check_depth_identity, check_field_pd, check_prime_envelope,
    check_refinement, check_tor_lipschitz, check_z_vs_q, describe_class, exceptional_primes, Report, Status,
};
pub use duality::{pairing_threshold, pd_pairing, realizing_class, spectral_norm};
pub use interleaving::Interleaving;
pub use invariant::{
    inf_over_multiples_prime_to, membership_profile, multiplier_profile, spectral_depth, spectral_invariant,
    SpectralDepth,
};
pub use suite::{
    check_all, dual_pairs, generator_classes, interleavings, perturbation, run_checks, MONOTONE_TARGETS,
    PD_FIELDS, REFINE_PRIMES,
};
pub use torsion::{torsion_depth, torsion_depth_all, TorsionDepth};
pub use value::SpectralValue;
