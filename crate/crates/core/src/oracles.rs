//! Independent combinatorial oracles: direct enumeration checks that do not
//! go through the lattice machinery they are used to validate.
//!
//! The finite-field count enumerates complement points of the reduced
//! arrangement; the plane sweep enumerates sign vectors of a real line
//! arrangement. Both stay exact.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{Arrangement, ArrangementKind};
use crate::error::{usage, Result};
use crate::scalar::{FieldSpec, Rat, Scalar};

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % p as i128 + p as i128) % p as i128) as u64)
}

fn rat_mod_p(r: &Rat, p: u64) -> Result<u64> {
    let pm = num_bigint::BigInt::from(p);
    let num = ((r.numer() % &pm) + &pm) % &pm;
    let den = ((r.denom() % &pm) + &pm) % &pm;
    let den_u: u64 = den.try_into().expect("reduced mod p");
    let num_u: u64 = num.try_into().expect("reduced mod p");
    let inv = mod_inverse(den_u, p)
        .ok_or_else(|| usage(format!("denominator vanishes mod {p}; pick another prime")))?;
    Ok(num_u * inv % p)
}

/// Reduce a scalar modulo p, sending the extension generator to a root of
/// the minimal polynomial in the prime field.
fn scalar_mod_p(s: &Scalar, p: u64, root: Option<u64>) -> Result<u64> {
    let coeffs = s.coeffs();
    let mut acc = 0u64;
    let mut power = 1u64;
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 && !c.is_zero() && root.is_none() {
            return Err(usage("no generator root available mod p"));
        }
        acc = (acc + rat_mod_p(c, p)? * power) % p;
        power = power * root.unwrap_or(0) % p;
    }
    Ok(acc)
}

fn generator_root_mod_p(spec: &FieldSpec, p: u64) -> Result<Option<u64>> {
    match spec {
        FieldSpec::Rationals => Ok(None),
        FieldSpec::Extension { minimal_poly } => {
            for t in 0..p {
                let mut acc = 0u64;
                for c in minimal_poly.iter().rev() {
                    acc = (acc * t + rat_mod_p(c, p)?) % p;
                }
                if acc == 0 {
                    return Ok(Some(t));
                }
            }
            Err(usage(format!(
                "minimal polynomial has no root mod {p}; pick a prime that splits it"
            )))
        }
    }
}

/// Number of points of the complement over the prime field: every point of
/// F_p^ell avoiding all reduced hyperplanes.
///
/// Valid as a characteristic-polynomial oracle only at primes of good
/// reduction; callers choose the primes.
pub fn finite_field_complement_count(arr: &Arrangement, p: u64) -> Result<u64> {
    let ell = arr.ambient();
    let total = (p as u128).checked_pow(ell as u32).expect("small p^ell");
    if total > 20_000_000 {
        return Err(usage("p^ell too large for direct enumeration"));
    }
    let root = generator_root_mod_p(arr.field().spec(), p)?;
    let reduced: Vec<(Vec<u64>, u64)> = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let normal = h
                .normal
                .iter()
                .map(|s| scalar_mod_p(s, p, root))
                .collect::<Result<Vec<_>>>()?;
            let offset = scalar_mod_p(&h.offset, p, root)?;
            Ok((normal, offset))
        })
        .collect::<Result<Vec<_>>>()?;
    // Reject primes that visibly degenerate a hyperplane.
    for (normal, _) in &reduced {
        if normal.iter().all(|&x| x == 0) {
            return Err(usage(format!("a hyperplane degenerates mod {p}")));
        }
    }
    let mut count = 0u64;
    let mut point = vec![0u64; ell];
    loop {
        let avoided = reduced.iter().all(|(normal, offset)| {
            let mut acc = 0u64;
            for (a, x) in normal.iter().zip(&point) {
                acc = (acc + a * x) % p;
            }
            acc != *offset
        });
        if avoided {
            count += 1;
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == ell {
                return Ok(count);
            }
            point[i] += 1;
            if point[i] < p {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Exact region and bounded-region counts of a real affine line arrangement
/// by sign-vector enumeration along a rational sweep.
pub fn plane_regions_by_sign_vectors(arr: &Arrangement) -> Result<(u64, u64)> {
    if arr.ambient() != 2 {
        return Err(usage("sign-vector enumeration handles the plane only"));
    }
    if !arr.field().is_rationals() {
        return Err(usage("sign-vector enumeration needs rational data"));
    }
    if arr.kind() == ArrangementKind::Projective {
        return Err(usage("sign-vector enumeration needs an affine or central arrangement"));
    }
    let lines: Vec<(Rat, Rat, Rat)> = arr
        .hyperplanes()
        .iter()
        .map(|h| {
            let a = h.normal[0].as_rational().expect("rational field").clone();
            let b = h.normal[1].as_rational().expect("rational field").clone();
            let c = h.offset.as_rational().expect("rational field").clone();
            (a, b, c)
        })
        .collect();
    if lines.is_empty() {
        return Ok((1, 0));
    }
    // Critical x-values: pairwise intersections and vertical lines.
    let mut xs: BTreeSet<Rat> = BTreeSet::new();
    for (i, (a1, b1, c1)) in lines.iter().enumerate() {
        if b1.is_zero() {
            xs.insert(c1 / a1);
        }
        for (a2, b2, c2) in lines.iter().skip(i + 1) {
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / &det;
            xs.insert(x);
        }
    }
    let sweep_xs = sweep_values(&xs);
    let x_extreme: BTreeSet<usize> = if sweep_xs.len() == 1 {
        [0usize].into_iter().collect()
    } else {
        [0usize, sweep_xs.len() - 1].into_iter().collect()
    };
    let mut seen: BTreeSet<Vec<i8>> = BTreeSet::new();
    let mut unbounded: BTreeSet<Vec<i8>> = BTreeSet::new();
    for (xi, x) in sweep_xs.iter().enumerate() {
        let mut ys: BTreeSet<Rat> = BTreeSet::new();
        for (a, b, c) in &lines {
            if !b.is_zero() {
                ys.insert((c - a * x) / b);
            }
        }
        let sweep_ys = sweep_values(&ys);
        let y_last = sweep_ys.len() - 1;
        for (yi, y) in sweep_ys.iter().enumerate() {
            let sv: Vec<i8> = lines
                .iter()
                .map(|(a, b, c)| {
                    let v = a * x + b * y - c;
                    match v.cmp(&Rat::zero()) {
                        std::cmp::Ordering::Less => -1,
                        std::cmp::Ordering::Equal => 0,
                        std::cmp::Ordering::Greater => 1,
                    }
                })
                .collect();
            assert!(
                sv.iter().all(|&s| s != 0),
                "sweep point fell on a line; midpoint construction is off"
            );
            if x_extreme.contains(&xi) || yi == 0 || yi == y_last {
                unbounded.insert(sv.clone());
            }
            seen.insert(sv);
        }
    }
    let regions = seen.len() as u64;
    let bounded = seen.difference(&unbounded).count() as u64;
    Ok((regions, bounded))
}

/// Midpoints between consecutive critical values plus one value beyond each
/// end; a single zero when there are no critical values.
fn sweep_values(critical: &BTreeSet<Rat>) -> Vec<Rat> {
    if critical.is_empty() {
        return vec![Rat::zero()];
    }
    let vals: Vec<&Rat> = critical.iter().collect();
    let mut out = Vec::with_capacity(vals.len() + 1);
    out.push(vals[0] - Rat::one());
    for w in vals.windows(2) {
        out.push((w[0] + w[1]) / Rat::from_integer(2.into()));
    }
    out.push(vals[vals.len() - 1] + Rat::one());
    out
}

/// Signed count check: chi evaluated at a prime equals the complement count
/// at every supplied prime.
pub fn finite_field_oracle_matches(arr: &Arrangement, primes: &[u64]) -> Result<bool> {
    let lat = crate::arrangement::lattice(arr)?;
    let chi = crate::arrangement::characteristic_polynomial(arr, &lat);
    for &p in primes {
        let count = finite_field_complement_count(arr, p)?;
        if chi.eval(p as i64) != count as i128 {
            return Ok(false);
        }
    }
    Ok(true)
}
