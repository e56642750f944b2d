//! Every checker applied to every generator class of one complex.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::checks::{
    check_coeff_monotone, check_corrected_pd, check_depth_identity, check_field_pd, check_prime_envelope,
    check_refinement, check_tor_lipschitz, check_z_vs_q, Report, Status,
};
use super::interleaving::Interleaving;
use super::torsion::torsion_depth_all;
use crate::complex::{homology, FilteredComplex, HomologyClass, Level};
use crate::error::Result;
use crate::linalg::Ring;

pub const MONOTONE_TARGETS: [Ring; 6] = [
    Ring::Rationals,
    Ring::IntegersMod(2),
    Ring::IntegersMod(3),
    Ring::IntegersMod(4),
    Ring::IntegersMod(7),
    Ring::IntegersMod(14),
];
pub const PD_FIELDS: [Ring; 4] = [Ring::Rationals, Ring::IntegersMod(2), Ring::IntegersMod(3), Ring::IntegersMod(7)];
pub const REFINE_PRIMES: [u64; 2] = [2, 3];

/// Generators of the full homology of `c` over `ring`, all degrees.
pub fn generator_classes(c: &FilteredComplex, ring: Ring) -> Vec<HomologyClass> {
    c.degrees().flat_map(|k| homology(c, ring, k, &Level::Infinite).generators()).collect()
}

/// Free generators of `H_k(C; ℤ)` paired with free generators of
/// `H_{D-k}(C*; ℤ)`.
pub fn dual_pairs(c: &FilteredComplex) -> Vec<(HomologyClass, HomologyClass)> {
    let dual = c.dual();
    let mut out = Vec::new();
    for k in c.degrees() {
        let h = homology(c, Ring::Integers, k, &Level::Infinite);
        let hd = homology(&dual, Ring::Integers, c.top_degree() - k, &Level::Infinite);
        for (i, a) in h.generators().into_iter().enumerate() {
            if !h.orders()[i].is_zero() {
                continue;
            }
            for (j, b) in hd.generators().into_iter().enumerate() {
                if hd.orders()[j].is_zero() {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out
}

/// A single-generator action change that keeps the differential strictly
/// decreasing: the generator moves halfway towards its nearest constraint
/// above, or up by one when nothing constrains it from above.
pub fn perturbation(c: &FilteredComplex, i: usize) -> Interleaving {
    let a = c.action(i).clone();
    let (_, upper) = c.action_window(i);
    let target = match upper {
        Some(u) => (&a + &u) / BigRational::from_integer(2.into()),
        None => &a + BigRational::one(),
    };
    Interleaving::moved_generator(c, i, target)
}

/// Interleaved partners of `c` used by `check all`: a uniform shift by one
/// and a perturbation of the first generator.
pub fn interleavings(c: &FilteredComplex) -> Vec<Interleaving> {
    let mut out = vec![Interleaving::uniform_shift(c, &BigRational::one())];
    if !c.is_empty() {
        out.push(perturbation(c, 0));
    }
    out
}

/// Runs all checkers on all generator classes of `c`.
pub fn run_checks(c: &FilteredComplex) -> Result<Vec<Report>> {
    let dual = c.dual();
    let mut reports = Vec::new();
    let z_classes = generator_classes(c, Ring::Integers);
    for a in &z_classes {
        for target in MONOTONE_TARGETS {
            reports.push(check_coeff_monotone(c, a, target)?);
        }
        reports.push(check_z_vs_q(c, a)?);
        reports.push(check_prime_envelope(c, a)?);
        for p in REFINE_PRIMES {
            reports.push(check_refinement(c, a, p)?);
        }
    }
    for field in PD_FIELDS {
        for a in generator_classes(&dual, field) {
            reports.push(check_field_pd(c, &a)?);
        }
    }
    for a in generator_classes(&dual, Ring::Integers) {
        reports.push(check_corrected_pd(c, &a)?);
    }
    for (a, b) in dual_pairs(c) {
        reports.push(check_depth_identity(c, &a, &b)?);
    }
    for i in interleavings(c) {
        reports.push(check_tor_lipschitz(&i)?);
    }
    Ok(reports)
}

/// One aggregated record for a complex: `fail` if any checker failed,
/// counts per checker, and the torsion depths of the complex and its dual
/// (a difference is reported as a finding, not a failure).
pub fn check_all(c: &FilteredComplex, inputs: Value) -> Result<Report> {
    let reports = run_checks(c)?;
    let mut counts: BTreeMap<String, BTreeMap<&str, usize>> = BTreeMap::new();
    for r in &reports {
        let entry = counts.entry(r.check.clone()).or_default();
        *entry.entry(match r.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }).or_default() += 1;
    }
    let failures: Vec<&Report> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    let (bt, _) = torsion_depth_all(c);
    let (btd, _) = torsion_depth_all(&c.dual());
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok(Report {
        check: "all".into(),
        inputs,
        status,
        witness: json!({ "failures": failures }),
        values: json!({
            "counts": counts,
            "beta_tor": bt.to_string(),
            "beta_tor_dual": btd.to_string(),
            "beta_tor_asymmetric": bt != btd,
        }),
    })
}
