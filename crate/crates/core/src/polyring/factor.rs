//! Factorization over `F_q`: square-free split, then distinct-degree, then
//! Cantor-Zassenhaus equal-degree splitting with a fixed-seed RNG so results
//! never depend on the run.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::galois::{Field, Scalar};
use crate::{Error, Result};

/// `base^exponent` with `base` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimaryDecomposition {
    pub base: UniPoly,
    pub exponent: u32,
}

impl UniPoly {
    /// Monic irreducible factors with multiplicities, sorted. The leading
    /// coefficient is dropped.
    pub fn factor(&self, f: &Field) -> Result<Vec<(UniPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out: BTreeMap<UniPoly, u32> = BTreeMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e5_f0c7);
        for (sq, mult) in square_free(f, &self.monic(f)) {
            for (g, d) in distinct_degree(f, &sq) {
                for h in equal_degree(f, &g, d, &mut rng) {
                    *out.entry(h).or_default() += mult;
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `Some` when `self` is a unit times `a^c` with `a` monic irreducible,
    /// `None` when it has two distinct irreducible factors.
    pub fn primary_part(&self, f: &Field) -> Result<Option<PrimaryDecomposition>> {
        match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            _ => {}
        }
        let fac = self.factor(f)?;
        Ok((fac.len() == 1).then(|| PrimaryDecomposition {
            base: fac[0].0.clone(),
            exponent: fac[0].1,
        }))
    }
}

/// `p`-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &Field, g: &UniPoly) -> UniPoly {
    let p = f.characteristic() as usize;
    let k = f.degree();
    // a -> a^(p^(k-1)) inverts the absolute Frobenius.
    UniPoly::new(
        g.coeffs()
            .iter()
            .step_by(p)
            .map(|&c| f.frobenius(c, k - 1))
            .collect(),
    )
}

fn square_free(f: &Field, g: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = f.characteristic();
    let d = g.derivative(f);
    let mut c = UniPoly::gcd(f, g, &d);
    let mut w = g.div_exact(f, &c).expect("gcd is nonzero");
    let mut i = 1u32;
    while !w.is_one() {
        let y = UniPoly::gcd(f, &w, &c);
        let fac = w.div_exact(f, &y).expect("nonzero");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(f, &w).expect("nonzero");
        i += 1;
    }
    if !c.is_one() {
        for (h, m) in square_free(f, &pth_root(f, &c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// Splits a square-free monic `g` into products of irreducibles of equal degree.
fn distinct_degree(f: &Field, g: &UniPoly) -> Vec<(UniPoly, usize)> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    let mut rest = g.clone();
    let x = UniPoly::x();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(f, q, &rest).expect("nonzero modulus");
        let common = UniPoly::gcd(f, &h.sub(f, &x), &rest);
        if !common.is_one() {
            rest = rest.div_exact(f, &common).expect("nonzero");
            h = h.rem(f, &rest).expect("nonzero");
            out.push((common, d));
        }
    }
    if let Some(n) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn equal_degree(f: &Field, g: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = g.degree().expect("nonzero");
    if n == d {
        return vec![g.clone()];
    }
    let q = f.order() as u64;
    loop {
        let a = UniPoly::new((0..n).map(|_| Scalar(rng.gen_range(0..q as u32))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (q.pow(d as u32) - 1) / 2;
            a.powmod(f, e, g).expect("nonzero").sub(f, &UniPoly::one())
        } else {
            // Trace map a + a^2 + ... + a^(2^(kd-1)).
            let mut t = a.rem(f, g).expect("nonzero");
            let mut acc = t.clone();
            for _ in 1..(f.degree() as usize * d) {
                t = t.mul(f, &t).rem(f, g).expect("nonzero");
                acc = acc.add(f, &t);
            }
            acc
        };
        let s = UniPoly::gcd(f, &b, g);
        let sd = s.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let other = g.div_exact(f, &s).expect("nonzero");
            let mut out = equal_degree(f, &s, d, rng);
            out.extend(equal_degree(f, &other, d, rng));
            return out;
        }
    }
}
