//! Class counts for semi-extraspecial groups of genus 2 over `F_p`: closed
//! forms, and an enumerator that rebuilds them from orbits of Pfaffian
//! multisets.
//!
//! The enumerator works for `n = e/2 - 1` in `2..=5`. A fully refined central
//! decomposition has one companion pencil per primary Pfaffian factor, so a
//! class is a multiset of primary ideals with no linear base, taken up to the
//! `GL(2,p)` action. Multisets whose direct sum has a centroid larger than
//! `F_p` are genus 1 over an extension and are counted separately.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::companion_pencil_of_poly;
use crate::galois::Field;
use crate::moebius::{count_orbits, multiset_orbit, Family, FormIdeal, Group};
use crate::pencils::{centroid, direct_sum};
use crate::polyring::{enumerate_monic_irreducibles_capped, PrimaryDecomposition};
use crate::{Error, Limits, Result};

pub const STRATUM_INDECOMPOSABLE: &str = "indecomposable genus-2";
pub const STRATUM_DECOMPOSABLE: &str = "decomposable genus-2";
pub const STRATUM_GENUS1: &str = "genus-1 over F_{p^2}";

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn exact_div(num: i128, den: i128) -> u64 {
    assert!(
        num >= 0 && num % den == 0,
        "closed form {num}/{den} is not a nonnegative integer"
    );
    (num / den) as u64
}

fn require_prime(p: u64) -> Result<()> {
    Field::prime(p).map(|_| ())
}

/// `N(p,n)`: number of `GL(2,p)`-orbits of monic irreducible polynomials of
/// degree `n`, for `n <= 5`.
pub fn n_closed(p: u64, n: u32) -> Result<u64> {
    require_prime(p)?;
    let (pi, g2, g5, g5m) = (
        p as i128,
        gcd(2, p) as i128,
        gcd(5, p) as i128,
        gcd(5, p * p - 1) as i128,
    );
    match n {
        1..=3 => Ok(1),
        4 => Ok(exact_div(pi + 2 - g2, 2)),
        5 => Ok(exact_div(pi * pi - 2 + g5 + 2 * g5m, 5)),
        _ => Err(Error::UnsupportedDegree(n)),
    }
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// `I(p, 2n+2) = -1 + sum_(d | n) N(p,d)`, indecomposable classes of genus 2.
pub fn i_indecomposable(p: u64, n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let mut total = 0;
    for d in divisors(n) {
        total += n_closed(p, d)?;
    }
    Ok(total - 1)
}

/// `I(p, 2n+2)` with each `N(p,d)` counted by orbit enumeration, for any `n`
/// the enumeration caps allow.
pub fn i_indecomposable_enumerated(p: u64, n: u32, limits: &Limits) -> Result<u64> {
    if n < 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let f = Field::prime(p)?;
    let mut total = 0;
    for d in divisors(n) {
        total += count_orbits(&f, d, Family::Irreducible, Group::GL, limits)?;
    }
    Ok(total - 1)
}

/// `H(q, n+1)`: genus-1 classes, 1 when `n` is even.
pub fn h_genus1(_q: u64, n_plus_1: u32) -> Result<u64> {
    if n_plus_1 < 3 {
        return Err(Error::InvalidArgument(format!(
            "H(q, {n_plus_1}) needs n >= 2"
        )));
    }
    Ok((n_plus_1 - 1).is_multiple_of(2) as u64)
}

/// Isoclinism classes of semi-extraspecial groups of order `p^e` with
/// `|G'| = p^2`, for `e` in `{6, 8, 10, 12}`.
pub fn classes_closed(p: u64, order_exponent: u32) -> Result<u64> {
    require_prime(p)?;
    let pi = p as i128;
    match order_exponent {
        6 | 8 => Ok(1),
        10 => Ok(exact_div(pi + 3 - gcd(2, p) as i128, 1)),
        12 => {
            let num = 11 * pi * pi - 5 * pi - 22
                + 10 * gcd(3, p - 2) as i128
                + 6 * gcd(5, p) as i128
                + 12 * gcd(5, p * p - 1) as i128;
            Ok(exact_div(num, 30))
        }
        e => Err(Error::UnsupportedOrder(e)),
    }
}

/// Shapes of decomposable Pfaffian multisets with two components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairShape {
    QuadQuad,
    QuadCubic,
}

impl PairShape {
    pub fn label(self) -> &'static str {
        match self {
            PairShape::QuadQuad => "quad+quad",
            PairShape::QuadCubic => "quad+cubic",
        }
    }
}

impl std::str::FromStr for PairShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<PairShape> {
        match s {
            "quad+quad" => Ok(PairShape::QuadQuad),
            "quad+cubic" => Ok(PairShape::QuadCubic),
            _ => Err(Error::InvalidArgument(format!("unknown pair shape {s:?}"))),
        }
    }
}

/// `(p-1)/2` for two distinct quadratics (none when `p = 2`), and
/// `(p^2-p)/6` or `(p^2-p+4)/6` for a quadratic with a cubic.
pub fn decomposable_pair_closed(p: u64, shape: PairShape) -> Result<u64> {
    require_prime(p)?;
    let pi = p as i128;
    Ok(match shape {
        PairShape::QuadQuad if p == 2 => 0,
        PairShape::QuadQuad => exact_div(pi - 1, 2),
        PairShape::QuadCubic if p % 3 == 2 => exact_div(pi * pi - pi + 4, 6),
        PairShape::QuadCubic => exact_div(pi * pi - pi, 6),
    })
}

/// Orbits of `GL(2,p)` on unordered pairs of distinct irreducible quadratic
/// ideals, or on (quadratic, cubic) pairs, by enumeration.
pub fn decomposable_pair_orbits(p: u64, shape: PairShape, limits: &Limits) -> Result<u64> {
    let f = Field::prime(p)?;
    let quads = irreducible_ideals(&f, 2, limits)?;
    let seeds: Vec<Vec<FormIdeal>> = match shape {
        PairShape::QuadQuad => quads
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                quads[i + 1..]
                    .iter()
                    .map(move |b| sorted(vec![a.clone(), b.clone()]))
            })
            .collect(),
        PairShape::QuadCubic => {
            let cubics = irreducible_ideals(&f, 3, limits)?;
            quads
                .iter()
                .flat_map(|a| {
                    cubics
                        .iter()
                        .map(move |b| sorted(vec![a.clone(), b.clone()]))
                })
                .collect()
        }
    };
    limits.check_enum("Pfaffian multisets", seeds.len() as u128)?;
    Ok(multiset_orbit_reps(&f, &seeds).len() as u64)
}

fn sorted(mut v: Vec<FormIdeal>) -> Vec<FormIdeal> {
    v.sort();
    v
}

fn irreducible_ideals(f: &Field, d: usize, limits: &Limits) -> Result<Vec<FormIdeal>> {
    Ok(enumerate_monic_irreducibles_capped(f, d, limits)?
        .iter()
        .map(|a| FormIdeal::from_poly(f, a).expect("nonzero"))
        .collect())
}

/// One representative (the least member) per orbit, in order of first seed.
fn multiset_orbit_reps(f: &Field, seeds: &[Vec<FormIdeal>]) -> Vec<Vec<FormIdeal>> {
    let mut seen: HashSet<Vec<FormIdeal>> = HashSet::new();
    let mut reps = Vec::new();
    for s in seeds {
        if seen.contains(s) {
            continue;
        }
        let orbit = multiset_orbit(f, s, Group::GL);
        reps.push(orbit[0].clone());
        seen.extend(orbit);
    }
    reps
}

/// Primary Pfaffian factors with no linear base and total degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleMultiset {
    pub items: Vec<PrimaryDecomposition>,
}

impl AdmissibleMultiset {
    pub fn degree(&self) -> u32 {
        self.items
            .iter()
            .map(|i| i.exponent * i.base.degree().expect("nonzero") as u32)
            .sum()
    }

    pub fn ideals(&self, f: &Field) -> Vec<FormIdeal> {
        sorted(
            self.items
                .iter()
                .map(|i| FormIdeal::from_poly(f, &i.base.pow(f, i.exponent)).expect("nonzero"))
                .collect(),
        )
    }
}

/// Every admissible multiset of total degree `n`, items in a fixed order.
pub fn admissible_multisets(f: &Field, n: u32, limits: &Limits) -> Result<Vec<AdmissibleMultiset>> {
    let mut primaries: Vec<PrimaryDecomposition> = Vec::new();
    for d in 2..=n as usize {
        for a in enumerate_monic_irreducibles_capped(f, d, limits)? {
            for c in 1..=n / d as u32 {
                primaries.push(PrimaryDecomposition {
                    base: a.clone(),
                    exponent: c,
                });
            }
        }
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    extend_multisets(&primaries, 0, n, &mut stack, &mut out, limits)?;
    Ok(out)
}

fn extend_multisets(
    primaries: &[PrimaryDecomposition],
    from: usize,
    remaining: u32,
    stack: &mut Vec<PrimaryDecomposition>,
    out: &mut Vec<AdmissibleMultiset>,
    limits: &Limits,
) -> Result<()> {
    if remaining == 0 {
        out.push(AdmissibleMultiset {
            items: stack.clone(),
        });
        return limits.check_enum("admissible multisets", out.len() as u128);
    }
    for (i, item) in primaries.iter().enumerate().skip(from) {
        let deg = item.exponent * item.base.degree().expect("nonzero") as u32;
        if deg <= remaining {
            stack.push(item.clone());
            extend_multisets(primaries, i, remaining - deg, stack, out, limits)?;
            stack.pop();
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub label: String,
    pub count: u64,
}

/// Closed form next to brute force, with the brute-force strata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCountReport {
    pub p: u64,
    pub order_exponent: u32,
    pub closed_form: Option<u64>,
    /// `None` when the enumeration was skipped for exceeding its bound.
    pub brute_force: Option<u64>,
    pub breakdown: Vec<Stratum>,
}

impl ClassCountReport {
    pub fn stratum(&self, label: &str) -> Option<u64> {
        self.breakdown
            .iter()
            .find(|s| s.label == label)
            .map(|s| s.count)
    }
}

fn census_bound(order_exponent: u32, limits: &Limits) -> u64 {
    if order_exponent == 12 {
        limits.census_max_prime_exp12
    } else {
        limits.census_max_prime
    }
}

/// Rebuilds the class count from Pfaffian multisets and checks it against
/// [`classes_closed`]; a mismatch is an error.
pub fn classes_bruteforce(
    p: u64,
    order_exponent: u32,
    limits: &Limits,
) -> Result<ClassCountReport> {
    let closed = classes_closed(p, order_exponent)?;
    let bound = census_bound(order_exponent, limits);
    if p > bound {
        return Err(Error::BoundExceeded {
            what: "census prime".into(),
            size: p as u128,
            cap: bound as u128,
        });
    }
    let f = Field::prime(p)?;
    let n = order_exponent / 2 - 1;
    let multisets = admissible_multisets(&f, n, limits)?;
    let seeds: Vec<Vec<FormIdeal>> = multisets.iter().map(|m| m.ideals(&f)).collect();
    let reps = multiset_orbit_reps(&f, &seeds);
    // The centroid is a pseudo-isometry invariant, so one test per orbit.
    let kept: Vec<bool> = reps
        .par_iter()
        .map(|r| centroid_is_prime_field(&f, r, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut indecomposable = 0;
    let mut decomposable = 0;
    for (r, keep) in reps.iter().zip(kept) {
        if keep {
            if r.len() == 1 {
                indecomposable += 1;
            } else {
                decomposable += 1;
            }
        }
    }
    let genus1 = h_genus1(p * p, n + 1)?;
    let total = indecomposable + decomposable + genus1;
    if total != closed {
        return Err(Error::Disagreement {
            p,
            exponent: order_exponent,
            closed,
            brute: total,
        });
    }
    Ok(ClassCountReport {
        p,
        order_exponent,
        closed_form: Some(closed),
        brute_force: Some(total),
        breakdown: vec![
            Stratum {
                label: STRATUM_INDECOMPOSABLE.into(),
                count: indecomposable,
            },
            Stratum {
                label: STRATUM_DECOMPOSABLE.into(),
                count: decomposable,
            },
            Stratum {
                label: STRATUM_GENUS1.into(),
                count: genus1,
            },
        ],
    })
}

/// Like [`classes_bruteforce`], but a prime above the census bound yields a
/// report with the brute-force column skipped.
pub fn class_count_report(
    p: u64,
    order_exponent: u32,
    limits: &Limits,
) -> Result<ClassCountReport> {
    match classes_bruteforce(p, order_exponent, limits) {
        Err(Error::BoundExceeded { .. }) => Ok(ClassCountReport {
            p,
            order_exponent,
            closed_form: Some(classes_closed(p, order_exponent)?),
            brute_force: None,
            breakdown: Vec::new(),
        }),
        other => other,
    }
}

fn centroid_is_prime_field(f: &Field, ideals: &[FormIdeal], limits: &Limits) -> Result<bool> {
    let parts = ideals
        .iter()
        .map(|i| companion_pencil_of_poly(f, &i.dehomogenize()))
        .collect::<Result<Vec<_>>>()?;
    Ok(centroid(&direct_sum(&parts)?, limits)?.dim() == 1)
}

/// Direct sum of the companion pencils of the items.
pub fn multiset_pencil(f: &Field, items: &[PrimaryDecomposition]) -> Result<crate::AltPencil> {
    let parts = items
        .iter()
        .map(|i| companion_pencil_of_poly(f, &i.base.pow(f, i.exponent)))
        .collect::<Result<Vec<_>>>()?;
    direct_sum(&parts)
}
