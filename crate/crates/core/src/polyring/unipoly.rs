use std::cmp::Ordering;

use rayon::prelude::*;

use crate::galois::{prime_factors, Field, Scalar};
use crate::{Error, Limits, Result};

/// Univariate polynomial over a finite field, coefficients low-to-high with
/// no trailing zeros. The zero polynomial has no coefficients.
///
/// Ordering is by degree, then coefficients from the top down; this is the
/// order [`enumerate_monic_irreducibles`] produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(f: &Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Scalar::ONE)
    }

    pub fn x() -> UniPoly {
        UniPoly::monomial(Scalar::ONE, 1)
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: Scalar, degree: usize) -> UniPoly {
        let mut v = vec![Scalar::ZERO; degree + 1];
        v[degree] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().copied().unwrap_or(Scalar::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Scalar::ONE
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Scalar::ONE]
    }

    pub fn add(&self, f: &Field, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, f: &Field, c: Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &Field, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, f: &Field, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(f, self))
    }

    /// Euclidean division; errors when dividing by zero.
    pub fn divrem(&self, f: &Field, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, dj));
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn rem(&self, f: &Field, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(f, d)?.1)
    }

    /// Exact quotient; panics in debug builds when the division leaves a remainder.
    pub fn div_exact(&self, f: &Field, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(f, d)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    pub fn monic(&self, f: &Field) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(
            f,
            f.inv(self.leading()).expect("nonzero leading coefficient"),
        )
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(f: &Field, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Field, x: Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, f: &Field, mut e: u64, m: &UniPoly) -> Result<UniPoly> {
        let mut base = self.rem(f, m)?;
        let mut acc = UniPoly::one().rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
            base = base.mul(f, &base).rem(f, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Applies `a -> a^(p^times)` to every coefficient.
    pub fn frobenius(&self, f: &Field, times: u32) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| f.frobenius(c, times)).collect())
    }

    /// `true` iff `self` has no factorization into two polynomials of
    /// positive degree. Uses the `x^(q^i) - x` gcd criterion.
    pub fn is_irreducible(&self, f: &Field) -> Result<bool> {
        let n = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let m = self.monic(f);
        if m.coeff(0).is_zero() {
            return Ok(false);
        }
        if n <= 3 {
            return Ok(f.elements().all(|x| !m.eval(f, x).is_zero()));
        }
        let q = f.order() as u64;
        let x = UniPoly::x();
        let mut frob = Vec::with_capacity(n + 1);
        let mut h = x.clone();
        frob.push(h.clone());
        for _ in 0..n {
            h = h.powmod(f, q, &m)?;
            frob.push(h.clone());
        }
        if frob[n] != x.rem(f, &m)? {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let hi = &frob[n / r as usize];
            if !UniPoly::gcd(f, &hi.sub(f, &x), &m).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn display(&self, f: &Field, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coef = f.format(c);
            parts.push(if i == 0 {
                coef
            } else if c == Scalar::ONE {
                mono
            } else {
                format!("{coef}{mono}")
            });
        }
        parts.join(" + ")
    }
}

/// The monic polynomial of degree `n` whose lower coefficients are the
/// base-`q` digits of `index`.
pub(crate) fn monic_from_index(n: usize, q: u64, mut index: u64) -> UniPoly {
    let mut c = Vec::with_capacity(n + 1);
    for _ in 0..n {
        c.push(Scalar((index % q) as u32));
        index /= q;
    }
    c.push(Scalar::ONE);
    UniPoly::new(c)
}

/// All monic irreducibles of degree `n`, in [`UniPoly`] order.
pub fn enumerate_monic_irreducibles(f: &Field, n: usize) -> Vec<UniPoly> {
    enumerate_monic_irreducibles_capped(
        f,
        n,
        &Limits {
            max_enum: u64::MAX,
            ..Limits::default()
        },
    )
    .expect("uncapped enumeration")
}

/// As [`enumerate_monic_irreducibles`], refusing when `q^n` candidates
/// exceed the enumeration cap.
pub fn enumerate_monic_irreducibles_capped(
    f: &Field,
    n: usize,
    limits: &Limits,
) -> Result<Vec<UniPoly>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = f.order() as u64;
    let total = (q as u128).pow(n as u32);
    limits.check_enum("monic candidates", total)?;
    let total = total as u64;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|i| {
            let poly = monic_from_index(n, q, i);
            poly.is_irreducible(f).expect("degree >= 1").then_some(poly)
        })
        .collect())
}

pub(crate) fn first_monic_irreducible(f: &Field, n: usize) -> Result<UniPoly> {
    let q = f.order() as u64;
    (0..(q as u128).pow(n as u32) as u64)
        .map(|i| monic_from_index(n, q, i))
        .find(|p| p.is_irreducible(f).unwrap_or(false))
        .ok_or_else(|| Error::InvalidArgument("no irreducible found".into()))
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `n` over `F_q`:
/// `(1/n) sum_{d | n} mu(d) q^(n/d)`.
pub fn necklace_count(q: u64, n: u32) -> u128 {
    let total: i128 = (1..=n as u64)
        .filter(|d| (n as u64).is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (q as i128).pow(n / d as u32))
        .sum();
    (total / n as i128) as u128
}
