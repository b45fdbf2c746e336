use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::mpoly::MPoly;
use super::UniPoly;
use crate::galois::{Field, Mat, Scalar};
use crate::{Error, Result};

/// Homogeneous polynomial in `nvars` variables. Terms are keyed by exponent
/// vectors; the zero form is stored with degree 0 and no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomForm {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl HomForm {
    pub fn zero(nvars: usize) -> HomForm {
        HomForm {
            nvars,
            degree: 0,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a form from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        f: &Field,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<HomForm> {
        let mut m = MPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector {e:?} for {nvars} variables"
                )));
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::NotHomogeneous(format!(
                    "term {e:?} in a form of degree {degree}"
                )));
            }
            m.add_term(f, e, c);
        }
        Ok(HomForm::from_mpoly_unchecked(m, degree))
    }

    /// Binary form from coefficients `c_0..c_n` of `X^(n-i) Y^i`.
    pub fn binary(f: &Field, coeffs: &[Scalar]) -> HomForm {
        let n = coeffs.len().saturating_sub(1) as u32;
        HomForm::from_terms(
            f,
            2,
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![n - i as u32, i as u32], c)),
        )
        .expect("well-formed binary form")
    }

    pub(crate) fn from_mpoly(m: MPoly) -> Result<HomForm> {
        let mut degs = m.terms.keys().map(|e| e.iter().sum::<u32>());
        let degree = degs.next().unwrap_or(0);
        if degs.any(|d| d != degree) {
            return Err(Error::NotHomogeneous("mixed total degrees".into()));
        }
        Ok(HomForm::from_mpoly_unchecked(m, degree))
    }

    fn from_mpoly_unchecked(m: MPoly, degree: u32) -> HomForm {
        let degree = if m.is_zero() { 0 } else { degree };
        HomForm {
            nvars: m.nvars,
            degree,
            terms: m.terms,
        }
    }

    pub(crate) fn to_mpoly(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the lex-greatest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Scalar)> {
        self.terms.iter().rev().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn leading_term(&self) -> Option<(&[u32], Scalar)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, &c)| (e.as_slice(), c))
    }

    /// Scales so the lex-greatest term has coefficient 1.
    pub fn normalized(&self, f: &Field) -> HomForm {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(f, f.inv(c).expect("nonzero")),
        }
    }

    pub fn scale(&self, f: &Field, c: Scalar) -> HomForm {
        HomForm::from_mpoly_unchecked(self.to_mpoly().scale(f, c), self.degree)
    }

    pub fn add(&self, f: &Field, o: &HomForm) -> Result<HomForm> {
        self.check_vars(o)?;
        if !self.is_zero() && !o.is_zero() && self.degree != o.degree {
            return Err(Error::NotHomogeneous(format!(
                "adding degrees {} and {}",
                self.degree, o.degree
            )));
        }
        let degree = if self.is_zero() {
            o.degree
        } else {
            self.degree
        };
        Ok(HomForm::from_mpoly_unchecked(
            self.to_mpoly().add(f, &o.to_mpoly()),
            degree,
        ))
    }

    pub fn sub(&self, f: &Field, o: &HomForm) -> Result<HomForm> {
        self.add(f, &o.scale(f, f.neg(Scalar::ONE)))
    }

    pub fn mul(&self, f: &Field, o: &HomForm) -> Result<HomForm> {
        self.check_vars(o)?;
        Ok(HomForm::from_mpoly_unchecked(
            self.to_mpoly().mul(f, &o.to_mpoly()),
            self.degree + o.degree,
        ))
    }

    pub fn pow(&self, f: &Field, e: u32) -> HomForm {
        let one = HomForm::from_mpoly_unchecked(MPoly::constant(self.nvars, Scalar::ONE), 0);
        (0..e).fold(one, |acc, _| acc.mul(f, self).expect("same variables"))
    }

    fn check_vars(&self, o: &HomForm) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} variables",
                self.nvars, o.nvars
            )));
        }
        Ok(())
    }

    pub fn eval(&self, f: &Field, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.terms.iter().fold(Scalar::ZERO, |acc, (e, &c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(c, |m, (&k, &x)| f.mul(m, f.pow(x, k as u64)));
            f.add(acc, mono)
        }))
    }

    /// Linear substitution `x_i -> sum_j t[i][j] x_j`, i.e. `F(T x)`.
    pub fn substitute(&self, f: &Field, t: &Mat) -> Result<HomForm> {
        if t.rows() != self.nvars || t.cols() != self.nvars {
            return Err(Error::DimensionMismatch("substitution matrix shape".into()));
        }
        let n = self.nvars;
        let lin: Vec<MPoly> = (0..n)
            .map(|i| {
                (0..n).fold(MPoly::zero(n), |acc, j| {
                    acc.add(f, &MPoly::linear(n, j, t[(i, j)]))
                })
            })
            .collect();
        // Cache powers of each substituted variable.
        let mut powers: Vec<Vec<MPoly>> = lin
            .iter()
            .map(|l| vec![MPoly::constant(n, Scalar::ONE), l.clone()])
            .collect();
        let mut out = MPoly::zero(n);
        for (e, &c) in &self.terms {
            let mut term = MPoly::constant(n, c);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(f, &lin[i]);
                    powers[i].push(next);
                }
                term = term.mul(f, &powers[i][k as usize]);
            }
            out = out.add(f, &term);
        }
        Ok(HomForm::from_mpoly_unchecked(out, self.degree))
    }

    /// Applies `a -> a^(p^times)` to every coefficient.
    pub fn frobenius(&self, f: &Field, times: u32) -> HomForm {
        HomForm {
            nvars: self.nvars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), f.frobenius(c, times)))
                .collect(),
        }
    }

    /// Sets variable `var` to 1, producing a univariate polynomial in the
    /// other variable of a binary form.
    pub fn dehomogenize(&self, var: usize) -> Result<UniPoly> {
        if self.nvars != 2 {
            return Err(Error::NotBivariate(self.nvars));
        }
        if var > 1 {
            return Err(Error::InvalidArgument(format!("variable index {var}")));
        }
        let other = 1 - var;
        let mut c = vec![Scalar::ZERO; self.degree as usize + 1];
        for (e, &a) in &self.terms {
            c[e[other] as usize] = a;
        }
        Ok(UniPoly::new(c))
    }

    /// Square root up to a scalar: a normalized `G` with `G^2` a nonzero
    /// multiple of `self`, or `None` when no such form exists.
    pub fn sqrt(&self, f: &Field) -> Option<HomForm> {
        form_sqrt(f, self)
    }

    pub fn display(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names: Vec<String> = if self.nvars <= 3 {
            ["X", "Y", "Z"][..self.nvars]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (1..=self.nvars).map(|i| format!("x{i}")).collect()
        };
        self.terms()
            .map(|(e, c)| {
                let mono: String = e
                    .iter()
                    .zip(&names)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, n)| {
                        if k == 1 {
                            n.clone()
                        } else {
                            format!("{n}^{k}")
                        }
                    })
                    .collect();
                let coef = f.format(c);
                if mono.is_empty() {
                    coef
                } else if c == Scalar::ONE {
                    mono
                } else if coef.contains('+') {
                    format!("({coef}){mono}")
                } else {
                    format!("{coef}{mono}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl UniPoly {
    /// `Y^n f(X/Y)` as a binary form in `(X, Y)` with `n = deg f`.
    pub fn homogenize(&self, f: &Field) -> Result<HomForm> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)? as u32;
        HomForm::from_terms(
            f,
            2,
            n,
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| (vec![i as u32, n - i as u32], c)),
        )
    }
}

fn sub_exps(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(&x, &y)| x.checked_sub(y)).collect()
}

/// Square root of a form up to a scalar.
///
/// Odd characteristic: peel terms off in lex order. If `G = g_1 + g_2 + ...`
/// with `g_1 > g_2 > ...`, the leading term of `F - (g_1 + ... + g_i)^2` is
/// `2 g_1 g_(i+1)`, which determines the next term; `F` is a square exactly
/// when the remainder reaches zero. Characteristic 2: squaring is additive,
/// so `F` is a square iff every exponent is even.
pub fn form_sqrt(f: &Field, form: &HomForm) -> Option<HomForm> {
    if form.is_zero() {
        return Some(form.clone());
    }
    if form.degree % 2 == 1 {
        return None;
    }
    let nv = form.nvars;
    let (lead_e, lead_c) = form.leading_term()?;
    // Normalizing first makes the leading coefficient a square.
    let inv = f.inv(lead_c).ok()?;
    let target = form.to_mpoly().scale(f, inv);
    let half = |e: &[u32]| -> Option<Vec<u32>> {
        e.iter().map(|&k| (k % 2 == 0).then_some(k / 2)).collect()
    };

    if f.characteristic() == 2 {
        let mut g = MPoly::zero(nv);
        for (e, &c) in &target.terms {
            g.add_term(f, half(e)?, f.sqrt(c)?);
        }
        return HomForm::from_mpoly(g).ok().map(|g| g.normalized(f));
    }

    let g1_e = half(lead_e)?;
    let two_g1_inv = f.inv(f.from_i64(2)).ok()?;
    let mut g = MPoly::zero(nv);
    g.add_term(f, g1_e.clone(), Scalar::ONE);
    let mut rem = target.sub(f, &g.mul(f, &g));
    let mut last = g1_e.clone();
    while let Some((e, &c)) = rem.terms.iter().next_back() {
        let te = sub_exps(e, &g1_e)?;
        if te >= last {
            return None;
        }
        let t = MPoly {
            nvars: nv,
            terms: BTreeMap::from([(te.clone(), f.mul(c, two_g1_inv))]),
        };
        // (G + t)^2 - G^2 = 2 G t + t^2
        let delta = g.scale(f, f.from_i64(2)).add(f, &t).mul(f, &t);
        rem = rem.sub(f, &delta);
        g = g.add(f, &t);
        last = te;
    }
    HomForm::from_mpoly(g).ok().map(|g| g.normalized(f))
}
