//! Checkers for the coefficient-dependence statements. Each returns a
//! [`Report`] whose status is `pass`, `fail` or `inconclusive` (hypothesis
//! not met or class skipped).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::duality::{pairing_threshold, realizing_class, rep_of};
use super::interleaving::Interleaving;
use super::invariant::{
    inf_over_multiples_prime_to, membership_profile, multiplier_profile, spectral_depth, spectral_invariant,
};
use super::torsion::{torsion_depth, torsion_depth_all};
use super::SpectralValue;
use crate::complex::{change_ring_class, homology, relative_homology, FilteredComplex, HomologyClass, Level};
use crate::error::{Error, Result};
use crate::linalg::{divisors, gcd_all, is_prime, lcm, prime_factors, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub check: String,
    pub inputs: Value,
    pub status: Status,
    pub witness: Value,
    pub values: Value,
}

impl Report {
    fn new(check: &str, inputs: Value, status: Status, witness: Value, values: Value) -> Self {
        Report { check: check.into(), inputs, status, witness, values }
    }

    fn skipped(check: &str, inputs: Value, reason: &str) -> Self {
        Report::new(check, inputs, Status::Inconclusive, json!({}), json!({ "reason": reason }))
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

fn sv(x: &SpectralValue) -> Value {
    Value::String(x.to_string())
}

fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// Input description of a class: ring, degree and a representing cycle.
pub fn describe_class(c: &FilteredComplex, a: &HomologyClass) -> Value {
    let rep = rep_of(c, a)
        .map(|r| {
            let q: Vec<BigRational> = r.into_iter().map(BigRational::from_integer).collect();
            c.format_chain(a.degree, &q)
        })
        .unwrap_or_default();
    json!({
        "ring": a.ring.to_string(),
        "degree": a.degree,
        "coords": a.coords.iter().map(rat).collect::<Vec<_>>(),
        "cycle": rep,
    })
}

/// Critical values with the membership of `a` in the sublevel image.
fn transcript(c: &FilteredComplex, a: &HomologyClass) -> Value {
    match membership_profile(c, a) {
        Ok(p) => Value::Array(p.iter().map(|(t, m)| json!([t.to_string(), m])).collect()),
        Err(e) => Value::String(e.to_string()),
    }
}

fn require_integral(a: &HomologyClass) -> Result<()> {
    if a.ring != Ring::Integers {
        return Err(Error::ClassMismatch(format!("expected an integral class, got {}", a.ring)));
    }
    Ok(())
}

/// `c_{R'}(j a) <= c_ℤ(a)` for the coefficient map `j: ℤ -> R'`.
pub fn check_coeff_monotone(c: &FilteredComplex, a: &HomologyClass, target: Ring) -> Result<Report> {
    require_integral(a)?;
    let inputs = json!({ "class": describe_class(c, a), "target": target.to_string() });
    let cz = spectral_invariant(c, a)?;
    let ja = change_ring_class(c, a, target)?;
    let ct = spectral_invariant(c, &ja)?;
    let ok = ct <= cz;
    let mut values = json!({ "c_Z": sv(&cz), "c_target": sv(&ct) });
    if !ok {
        values["transcript"] = json!({ "Z": transcript(c, a), "target": transcript(c, &ja) });
    }
    Ok(Report::new("coeff-mono", inputs, Status::from_bool(ok), json!({}), values))
}

/// Order of a class in its homology group (zero if it has infinite order).
fn class_order(c: &FilteredComplex, a: &HomologyClass) -> Result<BigInt> {
    let h = homology(c, a.ring, a.degree, &a.level);
    let mut n = BigInt::one();
    for (x, d) in a.coords.iter().zip(h.orders()) {
        if x.is_zero() {
            continue;
        }
        if d.is_zero() {
            return Ok(BigInt::zero());
        }
        let x = x.to_integer();
        n = lcm(&n, &(d / num_integer::Integer::gcd(&x, d)));
    }
    Ok(n)
}

/// `inf_k c_ℤ(k a) = c_ℚ(a)`, with the infimum attained by a certified `k`.
pub fn check_z_vs_q(c: &FilteredComplex, a: &HomologyClass) -> Result<Report> {
    require_integral(a)?;
    let inputs = json!({ "class": describe_class(c, a) });
    if a.is_zero() {
        return Ok(Report::skipped("zq", inputs, "zero class"));
    }
    let h = homology(c, Ring::Integers, a.degree, &Level::Infinite);
    let cq = spectral_invariant(c, &change_ring_class(c, a, Ring::Rationals)?)?;
    if cq == SpectralValue::NegInfinity {
        let n = class_order(c, a)?;
        let at_n = spectral_invariant(c, &h.scale(a, &n)?)?;
        let ok = at_n == SpectralValue::NegInfinity;
        return Ok(Report::new(
            "zq",
            inputs,
            Status::from_bool(ok),
            json!({ "k": int(&n) }),
            json!({ "c_Q": sv(&cq), "inf_k": sv(&at_n), "torsion_class": true }),
        ));
    }
    let depth = spectral_depth(c, a)?;
    let mut scan = Vec::new();
    let mut best: Option<(SpectralValue, BigInt)> = None;
    for k in divisors(&depth.bound) {
        let v = spectral_invariant(c, &h.scale(a, &k)?)?;
        scan.push(json!([k.to_string(), v.to_string()]));
        if best.as_ref().map_or(true, |(b, _)| v < *b) {
            best = Some((v, k));
        }
    }
    let (inf, k) = best.expect("1 divides every bound");
    let ok = inf == cq && depth.witness.as_ref() == Some(&k);
    let mut values = json!({
        "c_Z": rat(&depth.c_z),
        "c_Q": sv(&cq),
        "inf_k": sv(&inf),
        "bound": int(&depth.bound),
    });
    if !ok {
        values["scan"] = Value::Array(scan);
        values["transcript"] = transcript(c, a);
    }
    Ok(Report::new("zq", inputs, Status::from_bool(ok), json!({ "k": int(&k) }), values))
}

/// Over a field: `-c(C*, a) = inf { c(C, b) : ⟨a, b⟩ != 0 }`.
pub fn check_field_pd(c: &FilteredComplex, a: &HomologyClass) -> Result<Report> {
    if !a.ring.is_field() {
        return Err(Error::InvalidRing(format!("{} is not a field", a.ring)));
    }
    let dual = c.dual();
    let inputs = json!({ "dual_class": describe_class(&dual, a), "field": a.ring.to_string() });
    if a.is_zero() {
        return Ok(Report::skipped("pd-field", inputs, "zero class"));
    }
    let lhs = -spectral_invariant(&dual, a)?;
    let rhs = pairing_threshold(c, a)?;
    let ok = lhs == rhs;
    let mut values = json!({ "minus_c_dual": sv(&lhs), "pairing_inf": sv(&rhs) });
    if !ok {
        values["transcript"] = transcript(&dual, a);
    }
    Ok(Report::new("pd-field", inputs, Status::from_bool(ok), json!({}), values))
}

/// `0 <= c_ℤ(C*, a) + inf { c_ℤ(C, b) : ⟨a, b⟩ != 0 } <= β_tor`, and the
/// degree-refined bound. Inconclusive when `a` has finite order or the
/// full homology of `C` in degree `D - deg a - 1` has torsion.
pub fn check_corrected_pd(c: &FilteredComplex, a: &HomologyClass) -> Result<Report> {
    require_integral(a)?;
    let dual = c.dual();
    let inputs = json!({ "dual_class": describe_class(&dual, a) });
    if a.is_zero() {
        return Ok(Report::skipped("pd-z", inputs, "zero class"));
    }
    let cd = spectral_invariant(&dual, a)?;
    let p = pairing_threshold(c, a)?;
    let (beta, _) = torsion_depth_all(c);
    let rdeg = c.top_degree() - a.degree - 1;
    let refined = torsion_depth(c, rdeg).beta;
    let full_torsion = !homology(c, Ring::Integers, rdeg, &Level::Infinite).torsion_orders().is_empty();
    let sum = &cd + &p;
    let mut values = json!({
        "c_dual": sv(&cd),
        "pairing_inf": sv(&p),
        "beta_tor": rat(&beta),
        "beta_tor_refined": rat(&refined),
        "refined_degree": rdeg,
    });
    let Some(SpectralValue::Finite(sum)) = sum else {
        values["reason"] = json!("class of finite order");
        return Ok(Report::new("pd-z", inputs, Status::Inconclusive, json!({}), values));
    };
    values["sum"] = rat(&sum);
    let ok = sum >= BigRational::zero() && sum <= beta && sum <= refined;
    if full_torsion {
        values["reason"] = json!("full homology has torsion in the refined degree");
        values["bound_holds"] = json!(ok);
        return Ok(Report::new("pd-z", inputs, Status::Inconclusive, json!({}), values));
    }
    if !ok {
        values["transcript"] = transcript(&dual, a);
    }
    Ok(Report::new("pd-z", inputs, Status::from_bool(ok), json!({}), values))
}

/// Primes at which `c_{ℤ/p}` can differ from `c_ℚ` for the class `a`:
/// primes dividing torsion of `H_k(C / C^{<= τ}; ℤ)` at some level, and
/// primes dividing all free coordinates of the image of `a` there.
pub fn exceptional_primes(c: &FilteredComplex, a: &HomologyClass) -> Result<BTreeSet<u64>> {
    require_integral(a)?;
    let rep = rep_of(c, a)?;
    let mut levels = Vec::new();
    if let Some(min) = c.min_action() {
        levels.push(Level::Finite(min - BigRational::one()));
    }
    levels.extend(c.critical_values().into_iter().map(Level::Finite));
    let mut primes = BTreeSet::new();
    for l in &levels {
        let rel = relative_homology(c, Ring::Integers, a.degree, l);
        for d in rel.torsion_orders() {
            primes.extend(prime_factors(&d));
        }
        let tau = l.finite().expect("finite levels");
        let projected: Vec<BigInt> = c
            .in_degree(a.degree)
            .iter()
            .zip(&rep)
            .map(|(&g, x)| if c.action(g) > tau { x.clone() } else { BigInt::zero() })
            .collect();
        let image = rel.class_of_int_chain(&projected)?;
        let free: Vec<BigInt> = image
            .int_coords()?
            .into_iter()
            .zip(rel.orders())
            .filter(|(_, d)| d.is_zero())
            .map(|(x, _)| x)
            .collect();
        let g = gcd_all(&free);
        if !g.is_zero() {
            primes.extend(prime_factors(&g));
        }
    }
    Ok(primes)
}

fn next_prime_outside(s: &BTreeSet<u64>) -> u64 {
    (2..).find(|&p| is_prime(p) && !s.contains(&p)).expect("primes are infinite")
}

/// `inf_p c_{ℤ/p} <= c_ℚ <= sup_p c_{ℤ/p} <= c_ℤ` over the exceptional
/// primes plus the least prime outside them, where `c_{ℤ/p} = c_ℚ` must
/// also hold.
pub fn check_prime_envelope(c: &FilteredComplex, a: &HomologyClass) -> Result<Report> {
    require_integral(a)?;
    let inputs = json!({ "class": describe_class(c, a) });
    if a.is_zero() {
        return Ok(Report::skipped("primes", inputs, "zero class"));
    }
    let exceptional = exceptional_primes(c, a)?;
    let generic = next_prime_outside(&exceptional);
    let mut set = exceptional.clone();
    set.insert(generic);
    let cz = spectral_invariant(c, a)?;
    let cq = spectral_invariant(c, &change_ring_class(c, a, Ring::Rationals)?)?;
    let mut per = serde_json::Map::new();
    let mut vals = Vec::new();
    let mut generic_value = None;
    for &p in &set {
        let v = spectral_invariant(c, &change_ring_class(c, a, Ring::IntegersMod(p))?)?;
        per.insert(p.to_string(), sv(&v));
        if p == generic {
            generic_value = Some(v.clone());
        }
        vals.push(v);
    }
    let inf = vals.iter().min().expect("nonempty").clone();
    let sup = vals.iter().max().expect("nonempty").clone();
    let ok = inf <= cq && cq <= sup && sup <= cz && generic_value.as_ref() == Some(&cq);
    let values = json!({
        "c_Z": sv(&cz),
        "c_Q": sv(&cq),
        "inf_p": sv(&inf),
        "sup_p": sv(&sup),
        "per_prime": Value::Object(per),
    });
    let witness = json!({
        "primes": set.iter().collect::<Vec<_>>(),
        "exceptional": exceptional.iter().collect::<Vec<_>>(),
        "generic": generic,
    });
    Ok(Report::new("primes", inputs, Status::from_bool(ok), witness, values))
}

/// Compares `c_{ℤ/p}` with `c_ℚ`. If smaller, it must also be smaller than
/// `inf` over multiples prime to `p`; if larger, the infimum over all
/// multiples must be smaller than that over multiples prime to `p`.
pub fn check_refinement(c: &FilteredComplex, a: &HomologyClass, p: u64) -> Result<Report> {
    require_integral(a)?;
    if !is_prime(p) {
        return Err(Error::InvalidRing(format!("{p} is not prime")));
    }
    let inputs = json!({ "class": describe_class(c, a), "p": p });
    if a.is_zero() {
        return Ok(Report::skipped("refine", inputs, "zero class"));
    }
    let cq = spectral_invariant(c, &change_ring_class(c, a, Ring::Rationals)?)?;
    if cq == SpectralValue::NegInfinity {
        return Ok(Report::skipped("refine", inputs, "class of finite order"));
    }
    let cp = spectral_invariant(c, &change_ring_class(c, a, Ring::IntegersMod(p))?)?;
    let profile = multiplier_profile(c, a)?;
    let inf_all = profile
        .iter()
        .find(|(_, m)| !m.is_zero())
        .map_or(SpectralValue::PosInfinity, |(t, _)| SpectralValue::Finite(t.clone()));
    let inf_np = inf_over_multiples_prime_to(&profile, p);

    // the same infima by scanning multipliers up to the denominator bound
    let depth = spectral_depth(c, a)?;
    let h = homology(c, Ring::Integers, a.degree, &Level::Infinite);
    let mut scan_all = SpectralValue::PosInfinity;
    let mut scan_np = SpectralValue::PosInfinity;
    let pb = BigInt::from(p);
    for k in divisors(&depth.bound) {
        let v = spectral_invariant(c, &h.scale(a, &k)?)?;
        if !num_integer::Integer::is_multiple_of(&k, &pb) {
            scan_np = scan_np.min(v.clone());
        }
        scan_all = scan_all.min(v);
    }
    let consistent = scan_all == inf_all && inf_all == cq && scan_np == inf_np;
    let (case, holds) = match cp.cmp(&cq) {
        std::cmp::Ordering::Less => ("less", Some(cp < inf_np)),
        std::cmp::Ordering::Greater => ("greater", Some(inf_all < inf_np)),
        std::cmp::Ordering::Equal => ("equal", None),
    };
    let status = match holds {
        _ if !consistent => Status::Fail,
        Some(ok) => Status::from_bool(ok),
        None => Status::Inconclusive,
    };
    let values = json!({
        "c_p": sv(&cp),
        "c_Q": sv(&cq),
        "inf_all": sv(&inf_all),
        "inf_prime_to_p": sv(&inf_np),
        "scan_all": sv(&scan_all),
        "scan_prime_to_p": sv(&scan_np),
        "case": case,
        "multipliers": profile.iter().map(|(t, m)| json!([t.to_string(), m.to_string()])).collect::<Vec<_>>(),
    });
    Ok(Report::new("refine", inputs, status, json!({ "bound": int(&depth.bound) }), values))
}

/// `c_ℤ(a) - inf_k c_ℤ(k a)`, with the infimum taken from the certified
/// witness rather than from `c_ℚ`.
fn depth_by_witness(c: &FilteredComplex, a: &HomologyClass) -> Result<Option<(BigRational, BigRational)>> {
    let d = spectral_depth(c, a)?;
    let Some(k) = d.witness else { return Ok(None) };
    let h = homology(c, Ring::Integers, a.degree, &Level::Infinite);
    let at_k = spectral_invariant(c, &h.scale(a, &k)?)?;
    Ok(at_k.finite().map(|v| (&d.c_z - v, v.clone())))
}

/// `γ_ℤ - γ_ℚ = β_spec(C, a) + β_spec(C*, a*)`, and
/// `inf_k c_ℤ(C, k b) = -inf_k c_ℤ(C*, k a*)` for an integral class `b`
/// realising the rational pairing threshold of `a*`.
pub fn check_depth_identity(c: &FilteredComplex, a: &HomologyClass, a_dual: &HomologyClass) -> Result<Report> {
    require_integral(a)?;
    require_integral(a_dual)?;
    let dual = c.dual();
    let inputs = json!({ "class": describe_class(c, a), "dual_class": describe_class(&dual, a_dual) });
    if a.is_zero() || a_dual.is_zero() {
        return Ok(Report::skipped("depth-id", inputs, "zero class"));
    }
    let aq = change_ring_class(c, a, Ring::Rationals)?;
    let dq = change_ring_class(&dual, a_dual, Ring::Rationals)?;
    if aq.is_zero() || dq.is_zero() {
        return Ok(Report::skipped("depth-id", inputs, "class of finite order"));
    }
    let fin = |v: SpectralValue| v.finite().cloned().expect("nonzero classes have finite values");
    let cz = fin(spectral_invariant(c, a)?);
    let czd = fin(spectral_invariant(&dual, a_dual)?);
    let cqa = fin(spectral_invariant(c, &aq)?);
    let cqd = fin(spectral_invariant(&dual, &dq)?);
    let gamma_z = &cz + &czd;
    let gamma_q = &cqa + &cqd;
    let (Some((beta_c, _)), Some((beta_d, inf_d))) = (depth_by_witness(c, a)?, depth_by_witness(&dual, a_dual)?) else {
        return Ok(Report::new("depth-id", inputs, Status::Fail, json!({}), json!({ "reason": "no witness" })));
    };
    let identity = &gamma_z - &gamma_q == &beta_c + &beta_d;

    let mut values = json!({
        "gamma_Z": rat(&gamma_z),
        "gamma_Q": rat(&gamma_q),
        "beta_spec": rat(&beta_c),
        "beta_spec_dual": rat(&beta_d),
    });
    let mut witness = json!({});
    let mut duality = true;
    if let Some(b) = realizing_class(c, a_dual)? {
        if let Some((_, inf_b)) = depth_by_witness(c, &b)? {
            duality = inf_b == -inf_d.clone();
            values["inf_b"] = rat(&inf_b);
            values["inf_dual"] = rat(&inf_d);
            witness["b"] = describe_class(c, &b);
        }
    }
    Ok(Report::new("depth-id", inputs, Status::from_bool(identity && duality), witness, values))
}

/// `|β_tor(F) - β_tor(G)| <= s1 + s2` for a validated interleaving.
pub fn check_tor_lipschitz(i: &Interleaving) -> Result<Report> {
    i.validate()?;
    let (bf, _) = torsion_depth_all(&i.f);
    let (bg, _) = torsion_depth_all(&i.g);
    let diff = if bf >= bg { &bf - &bg } else { &bg - &bf };
    let bound = &i.s1 + &i.s2;
    let ok = diff <= bound;
    Ok(Report::new(
        "lipschitz",
        json!({ "s1": rat(&i.s1), "s2": rat(&i.s2), "generators": i.f.len() }),
        Status::from_bool(ok),
        json!({}),
        json!({ "beta_tor_F": rat(&bf), "beta_tor_G": rat(&bg), "difference": rat(&diff), "bound": rat(&bound) }),
    ))
}
