use std::collections::BTreeMap;

use crate::galois::{Field, Scalar};

/// Sparse multivariate polynomial; exponent vectors compare lexicographically
/// with the first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MPoly {
        let mut m = MPoly::zero(nvars);
        if !c.is_zero() {
            m.terms.insert(vec![0; nvars], c);
        }
        m
    }

    /// `c * x_i`.
    pub fn linear(nvars: usize, i: usize, c: Scalar) -> MPoly {
        let mut m = MPoly::zero(nvars);
        if !c.is_zero() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            m.terms.insert(e, c);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: &Field, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, f: &Field, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            out.add_term(f, e.clone(), c);
        }
        out
    }

    pub fn neg(&self, f: &Field) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Field, o: &MPoly) -> MPoly {
        self.add(f, &o.neg(f))
    }

    pub fn mul(&self, f: &Field, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(f, e, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn scale(&self, f: &Field, c: Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, &a) in &self.terms {
            out.add_term(f, e.clone(), f.mul(a, c));
        }
        out
    }
}

/// Division-free characteristic polynomial (Berkowitz). Returns
/// `c_0..c_n` with `det(tI - A) = sum_i c_i t^(n-i)` and `c_0 = 1`.
pub(crate) fn berkowitz<T: Clone>(
    a: &[Vec<T>],
    zero: &T,
    one: &T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    neg: impl Fn(&T) -> T,
) -> Vec<T> {
    let n = a.len();
    let mut v = vec![one.clone()];
    for r in 0..n {
        // Leading principal block of size r sits in rows/cols 0..r; the new
        // row/column is index r.
        let row: Vec<T> = (0..r).map(|j| a[r][j].clone()).collect();
        let col: Vec<T> = (0..r).map(|i| a[i][r].clone()).collect();
        let arr = a[r][r].clone();
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ...
        let mut t = Vec::with_capacity(r + 2);
        t.push(one.clone());
        t.push(neg(&arr));
        let mut cur = col;
        for _ in 0..r {
            let rc = row
                .iter()
                .zip(&cur)
                .fold(zero.clone(), |acc, (x, y)| add(&acc, &mul(x, y)));
            t.push(neg(&rc));
            cur = (0..r)
                .map(|i| (0..r).fold(zero.clone(), |acc, j| add(&acc, &mul(&a[i][j], &cur[j]))))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut s = zero.clone();
            for j in 0..=i.min(r) {
                if let (Some(tt), Some(vv)) = (t.get(i - j), v.get(j)) {
                    s = add(&s, &mul(tt, vv));
                }
            }
            next.push(s);
        }
        v = next;
    }
    v
}

/// Determinant of a square matrix of polynomials.
pub(crate) fn det_mpoly(f: &Field, nvars: usize, a: &[Vec<MPoly>]) -> MPoly {
    let n = a.len();
    let zero = MPoly::zero(nvars);
    let one = MPoly::constant(nvars, Scalar::ONE);
    let v = berkowitz(
        a,
        &zero,
        &one,
        |x, y| x.add(f, y),
        |x, y| x.mul(f, y),
        |x| x.neg(f),
    );
    if n.is_multiple_of(2) {
        v[n].clone()
    } else {
        v[n].neg(f)
    }
}

/// Characteristic polynomial `det(tI - A)` of a scalar matrix, low-to-high.
pub(crate) fn charpoly(f: &Field, a: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut v = berkowitz(
        a,
        &Scalar::ZERO,
        &Scalar::ONE,
        |x, y| f.add(*x, *y),
        |x, y| f.mul(*x, *y),
        |x| f.neg(*x),
    );
    v.reverse();
    v
}
