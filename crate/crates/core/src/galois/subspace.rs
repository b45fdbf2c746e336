//! Indexed enumeration of projective points and of `k`-subspaces of `F^n`
//! through their reduced echelon bases. Random access by index lets callers
//! split a scan across threads and still reduce deterministically.

use super::{Field, Mat, Scalar};

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Normalized representatives (first nonzero coordinate 1) of `P(F^n)`.
#[derive(Clone, Debug)]
pub struct ProjectivePoints {
    q: u64,
    n: usize,
    /// `offsets[j]` = number of points whose leading 1 sits before position `j`.
    offsets: Vec<u128>,
}

impl ProjectivePoints {
    pub fn new(f: &Field, n: usize) -> Self {
        let q = f.order() as u64;
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0u128;
        for j in 0..n {
            offsets.push(acc);
            acc += (q as u128).pow((n - 1 - j) as u32);
        }
        offsets.push(acc);
        Self { q, n, offsets }
    }

    pub fn len(&self) -> u128 {
        self.offsets[self.n]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: u128) -> Vec<Scalar> {
        assert!(index < self.len());
        let j = self.offsets.partition_point(|&o| o <= index) - 1;
        let mut rest = index - self.offsets[j];
        let mut v = vec![Scalar::ZERO; self.n];
        v[j] = Scalar::ONE;
        for slot in v.iter_mut().skip(j + 1) {
            *slot = Scalar((rest % self.q as u128) as u32);
            rest /= self.q as u128;
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<Scalar>> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

#[derive(Clone, Debug)]
struct Shape {
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    offset: u128,
}

/// All `k`-subspaces of `F^n`, each given by its reduced echelon basis
/// (a `k x n` matrix).
#[derive(Clone, Debug)]
pub struct Subspaces {
    q: u64,
    n: usize,
    k: usize,
    shapes: Vec<Shape>,
    total: u128,
}

impl Subspaces {
    pub fn new(f: &Field, n: usize, k: usize) -> Self {
        let q = f.order() as u64;
        let mut shapes = Vec::new();
        let mut total = 0u128;
        if k <= n {
            for pivots in combinations(n, k) {
                let free: Vec<(usize, usize)> = (0..k)
                    .flat_map(|r| {
                        let pivots = &pivots;
                        (pivots[r] + 1..n)
                            .filter(move |c| !pivots.contains(c))
                            .map(move |c| (r, c))
                    })
                    .collect();
                let size = (q as u128).pow(free.len() as u32);
                shapes.push(Shape {
                    pivots,
                    free,
                    offset: total,
                });
                total += size;
            }
        }
        Self {
            q,
            n,
            k,
            shapes,
            total,
        }
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn get(&self, index: u128) -> Mat {
        assert!(index < self.total);
        let s = &self.shapes[self.shapes.partition_point(|s| s.offset <= index) - 1];
        let mut rest = index - s.offset;
        let mut m = Mat::zeros(self.k, self.n);
        for (r, &c) in s.pivots.iter().enumerate() {
            m[(r, c)] = Scalar::ONE;
        }
        for &(r, c) in &s.free {
            m[(r, c)] = Scalar((rest % self.q as u128) as u32);
            rest /= self.q as u128;
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.total).map(|i| self.get(i))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 6, 3), 33_880);
        assert_eq!(gaussian_binomial(3, 4, 2), 130);
        assert_eq!(gaussian_binomial(5, 4, 2), 806);
        for q in [2u64, 3, 4] {
            let f = Field::standard(q).unwrap();
            for n in 0..5 {
                for k in 0..=n {
                    let subs = Subspaces::new(&f, n, k);
                    assert_eq!(subs.len(), gaussian_binomial(q, n, k));
                    let distinct: HashSet<Mat> = subs.iter().collect();
                    assert_eq!(distinct.len() as u128, subs.len());
                    for m in subs.iter() {
                        assert_eq!(m.rank(&f), k);
                        assert_eq!(m.rref(&f).mat, m);
                    }
                }
                let pts = ProjectivePoints::new(&f, n);
                assert_eq!(pts.len(), gaussian_binomial(q, n, 1));
            }
        }
    }

    #[test]
    fn projective_points_are_normalized_and_distinct() {
        let f = Field::prime(3).unwrap();
        let pts = ProjectivePoints::new(&f, 3);
        let all: Vec<_> = pts.iter().collect();
        assert_eq!(all.len(), 13);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 13);
        for v in all {
            assert_eq!(v.iter().find(|s| !s.is_zero()), Some(&Scalar::ONE));
        }
    }
}
