use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::limits::DEFAULT_MAX_FIELD_ORDER;
use crate::polyring::UniPoly;
use crate::{Error, Result};

/// An element of a finite field, stored as the integer `sum c_i p^i` of its
/// canonical residue vector `(c_0, .., c_{k-1})` over the prime subfield.
///
/// Two scalars of the same field are equal iff their residue vectors are,
/// so derived `Eq`/`Ord`/`Hash` give exact set semantics.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Scalar(pub u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

/// The finite field `F_q`, `q = p^k`, with an explicit modulus when `k > 1`.
///
/// Cheap to clone; all tables are shared. Multiplication, inversion and
/// powers go through discrete log tables built once at construction.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low-to-high, length `k + 1`. `None` for prime fields.
    modulus: Option<Vec<u32>>,
    pow_p: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Self::with_cap(p, None, DEFAULT_MAX_FIELD_ORDER)
    }

    /// `F_p[x]/(modulus)`; `modulus` is monic, low-to-high, degree `k >= 2`,
    /// and must be irreducible over `F_p`.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Field> {
        Self::with_cap(p, Some(modulus), DEFAULT_MAX_FIELD_ORDER)
    }

    pub fn with_cap(p: u64, modulus: Option<&[u64]>, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let Some(modulus) = modulus else {
            if p > cap {
                return Err(Error::FieldTooLarge { order: p, cap });
            }
            return Ok(Self::build_prime(p as u32));
        };
        if modulus.len() < 3 {
            return Err(Error::InvalidModulus("degree must be at least 2".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} is not reduced mod {p}"
            )));
        }
        let k = (modulus.len() - 1) as u32;
        let order = (p as u128).pow(k);
        if order > cap as u128 {
            return Err(Error::FieldTooLarge {
                order: order.min(u64::MAX as u128) as u64,
                cap,
            });
        }
        let fp = Self::build_prime(p as u32);
        let poly = UniPoly::new(modulus.iter().map(|&c| Scalar(c as u32)).collect());
        if !poly.is_irreducible(&fp)? {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over F_{p}",
                poly.display(&fp, "x")
            )));
        }
        Ok(Self::build_extension(
            p as u32,
            modulus.iter().map(|&c| c as u32).collect(),
        ))
    }

    /// Prime fields for prime `q`, otherwise the fixed default moduli:
    /// `F_4 = F_2[x]/(x^2+x+1)`, `F_9 = F_3[x]/(x^2+1)`, `F_25 = F_5[x]/(x^2+2)`.
    pub fn standard(q: u64) -> Option<Field> {
        if is_prime(q) {
            return Field::prime(q).ok();
        }
        let (p, modulus): (u64, &[u64]) = match q {
            4 => (2, &[1, 1, 1]),
            9 => (3, &[1, 0, 1]),
            25 => (5, &[2, 0, 1]),
            _ => return None,
        };
        Field::extension(p, modulus).ok()
    }

    /// `F_{p^k}` using the first monic irreducible of degree `k` in
    /// enumeration order as modulus. Callers opt into this choice explicitly.
    pub fn with_least_modulus(p: u64, k: u32) -> Result<Field> {
        if k == 1 {
            return Field::prime(p);
        }
        let fp = Field::prime(p)?;
        let first = crate::polyring::first_monic_irreducible(&fp, k as usize)?;
        let modulus: Vec<u64> = first.coeffs().iter().map(|c| c.0 as u64).collect();
        Field::extension(p, &modulus)
    }

    fn build_prime(p: u32) -> Field {
        let q = p;
        let (exp, log) = if p == 2 {
            (vec![1], vec![0, 0])
        } else {
            let factors = prime_factors((p - 1) as u64);
            let pw = |mut b: u64, mut e: u64| {
                let mut r = 1u64;
                b %= p as u64;
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % p as u64;
                    }
                    b = b * b % p as u64;
                    e >>= 1;
                }
                r
            };
            let g = (2..p as u64)
                .find(|&g| factors.iter().all(|&r| pw(g, (p as u64 - 1) / r) != 1))
                .expect("prime field has a primitive root");
            tables(q, |a| (a as u64 * g % p as u64) as u32)
        };
        Field {
            inner: Arc::new(Inner {
                p,
                k: 1,
                q,
                modulus: None,
                pow_p: vec![1],
                exp,
                log,
            }),
        }
    }

    fn build_extension(p: u32, modulus: Vec<u32>) -> Field {
        let k = (modulus.len() - 1) as u32;
        let q = p.pow(k);
        let pow_p: Vec<u32> = (0..k).map(|i| p.pow(i)).collect();
        let raw = RawExt {
            p,
            k: k as usize,
            modulus: &modulus,
            pow_p: &pow_p,
        };
        let factors = prime_factors((q - 1) as u64);
        let g = (2..q)
            .find(|&g| factors.iter().all(|&r| raw.pow(g, (q as u64 - 1) / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let (exp, log) = tables(q, |a| raw.mul(a, g));
        Field {
            inner: Arc::new(Inner {
                p,
                k,
                q,
                modulus: Some(modulus),
                pow_p,
                exp,
                log,
            }),
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.inner.modulus.as_deref()
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Self::build_prime(self.inner.p)
        }
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> Scalar {
        Scalar(self.inner.exp[if self.inner.q == 2 { 0 } else { 1 }])
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> + Clone {
        (0..self.inner.q).map(Scalar)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Scalar> + Clone {
        (1..self.inner.q).map(Scalar)
    }

    /// Checks that `v` is a canonical encoding in this field.
    pub fn scalar(&self, v: u64) -> Result<Scalar> {
        if v >= self.inner.q as u64 {
            return Err(Error::InvalidScalar { value: v });
        }
        Ok(Scalar(v as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Scalar> {
        if coeffs.len() > self.inner.k as usize {
            return Err(Error::DimensionMismatch(format!(
                "{} residues for a degree-{} field",
                coeffs.len(),
                self.inner.k
            )));
        }
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.inner.p {
                return Err(Error::InvalidScalar { value: c as u64 });
            }
            v += c * self.inner.pow_p[i];
        }
        Ok(Scalar(v))
    }

    /// Residue vector `(c_0, .., c_{k-1})`, low-to-high.
    pub fn coeffs(&self, a: Scalar) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a.0;
        (0..self.inner.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.inner.p;
        if self.inner.k == 1 {
            let s = a.0 + b.0;
            return Scalar(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &pw in &self.inner.pow_p {
            let d = (x % p + y % p) % p;
            out += d * pw;
            x /= p;
            y /= p;
        }
        Scalar(out)
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Scalar(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut out) = (a.0, 0);
        for &pw in &self.inner.pow_p {
            out += ((p - x % p) % p) * pw;
            x /= p;
        }
        Scalar(out)
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.inner.k == 1 {
            return Scalar((a.0 as u64 * b.0 as u64 % self.inner.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let n = self.inner.q - 1;
        let e = (self.inner.log[a.0 as usize] + self.inner.log[b.0 as usize]) % n;
        Scalar(self.inner.exp[e as usize])
    }

    pub fn inv(&self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.inner.q - 1;
        let e = (n - self.inner.log[a.0 as usize]) % n;
        Ok(Scalar(self.inner.exp[e as usize]))
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        if e == 0 {
            return Scalar::ONE;
        }
        if a.is_zero() {
            return Scalar::ZERO;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64 * (e % n) % n;
        Scalar(self.inner.exp[l as usize])
    }

    /// `a^(p^times)`, the Frobenius automorphism applied `times` times.
    pub fn frobenius(&self, a: Scalar, times: u32) -> Scalar {
        let t = times % self.inner.k;
        if t == 0 || a.is_zero() {
            return a;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[a.0 as usize] as u64 * (self.inner.p as u64).pow(t) % n;
        Scalar(self.inner.exp[l as usize])
    }

    /// A square root of `a`, or `None` when `a` is a non-square.
    pub fn sqrt(&self, a: Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return Some(a);
        }
        if self.inner.p == 2 {
            return Some(self.pow(a, self.inner.q as u64 / 2));
        }
        let l = self.inner.log[a.0 as usize];
        l.is_multiple_of(2)
            .then(|| Scalar(self.inner.exp[(l / 2) as usize]))
    }

    /// Human readable form: an integer for prime fields, otherwise a
    /// polynomial in `a` (the class of `x` modulo the modulus).
    pub fn format(&self, s: Scalar) -> String {
        if self.is_prime_field() {
            return s.0.to_string();
        }
        let c = self.coeffs(s);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

fn tables(q: u32, mut times_g: impl FnMut(u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..n {
        exp.push(x);
        log[x as usize] = i as u32;
        x = times_g(x);
    }
    debug_assert_eq!(x, 1);
    (exp, log)
}

/// Arithmetic on encoded residue vectors before the log tables exist.
struct RawExt<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
    pow_p: &'a [u32],
}

impl RawExt<'_> {
    fn decode(&self, mut a: u32) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d as u64
            })
            .collect()
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(self.k) {
                let idx = d - self.k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[d] = 0;
        }
        (0..self.k).map(|i| prod[i] as u32 * self.pow_p[i]).sum()
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut r) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.modulus {
            None => write!(f, "F_{}", self.inner.p),
            Some(m) => {
                let fp = Field::build_prime(self.inner.p);
                let poly = UniPoly::new(m.iter().map(|&c| Scalar(c)).collect());
                write!(
                    f,
                    "F_{} = F_{}[x]/({})",
                    self.inner.q,
                    self.inner.p,
                    poly.display(&fp, "x")
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.inv(Scalar(1)).unwrap(), Scalar(1));
        assert_eq!(f5.inv(Scalar(2)).unwrap(), Scalar(3));
        assert_eq!(f5.inv(Scalar(0)), Err(Error::ZeroInverse));

        // F_9 = F_3[x]/(x^2+1): alpha^-1 = 2 alpha, checked by multiplying out.
        let f9 = Field::standard(9).unwrap();
        let alpha = f9.from_coeffs(&[0, 1]).unwrap();
        let two_alpha = f9.from_coeffs(&[0, 2]).unwrap();
        assert_eq!(f9.mul(alpha, two_alpha), Scalar::ONE);
        assert_eq!(f9.inv(alpha).unwrap(), two_alpha);
        assert_eq!(f9.inv(Scalar::ONE).unwrap(), Scalar::ONE);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
        assert!(matches!(
            Field::extension(5, &[1, 0, 1]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            Field::extension(3, &[1, 0, 2]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            Field::with_cap(2, Some(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]), 1024),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    fn all_fields_up_to_49() -> Vec<Field> {
        let mut out: Vec<Field> = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
            .iter()
            .map(|&p| Field::prime(p).unwrap())
            .collect();
        out.extend([4u64, 9, 25].iter().map(|&q| Field::standard(q).unwrap()));
        out.push(Field::extension(2, &[1, 1, 0, 1]).unwrap());
        out.push(Field::extension(2, &[1, 1, 0, 0, 1]).unwrap());
        out.push(Field::extension(2, &[1, 0, 1, 0, 0, 1]).unwrap());
        out.push(Field::extension(3, &[1, 2, 0, 1]).unwrap());
        out.push(Field::extension(7, &[1, 0, 1]).unwrap());
        out
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields_up_to_49() {
            let els: Vec<Scalar> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Scalar::ONE, "{f} {a:?}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // Associativity and distributivity on a deterministic sample of triples.
            let n = els.len();
            for i in 0..n {
                for j in (0..n).step_by(3) {
                    for l in (0..n).step_by(5) {
                        let (a, b, c) = (els[i], els[j], els[l]);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_subfield() {
        for f in all_fields_up_to_49() {
            let p = f.characteristic();
            let mut seen = std::collections::HashSet::new();
            for a in f.elements() {
                let fa = f.frobenius(a, 1);
                assert_eq!(fa, f.pow(a, p as u64));
                seen.insert(fa);
                let fixed = fa == a;
                let in_prime = f.coeffs(a)[1..].iter().all(|&c| c == 0);
                assert_eq!(fixed, in_prime, "{f} {a:?}");
                for b in f.elements().step_by(7) {
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(fa, f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(fa, f.frobenius(b, 1)));
                }
            }
            assert_eq!(seen.len(), f.order() as usize);
        }
    }

    #[test]
    fn square_roots() {
        for f in all_fields_up_to_49() {
            let squares: std::collections::HashSet<Scalar> =
                f.elements().map(|a| f.mul(a, a)).collect();
            for a in f.elements() {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.mul(r, r), a),
                    None => assert!(!squares.contains(&a)),
                }
            }
        }
    }

    #[test]
    fn residue_vectors_roundtrip() {
        let f = Field::standard(25).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        // alpha^2 + 2 = 0 in the default F_25.
        let alpha = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.add(f.mul(alpha, alpha), f.from_i64(2)), Scalar::ZERO);
        assert_eq!(f.format(alpha), "a");
        assert_eq!(format!("{f}"), "F_25 = F_5[x]/(x^2 + 2)");
    }
}
