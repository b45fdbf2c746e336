use std::ops::{Index, IndexMut};

use super::{Field, Scalar};
use crate::{Error, Result};

/// Dense row-major matrix of scalars. Arithmetic takes the field explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solvable {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Builds a matrix from signed integers, reduced into the prime subfield.
    pub fn from_ints<R: AsRef<[i64]>>(f: &Field, rows: &[R]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &v) in r.as_ref().iter().enumerate() {
                m[(i, j)] = f.from_i64(v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Scalar::ZERO; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self[(i, j)]));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, f: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, f: &Field, c: Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, f: &Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }

    pub fn map(&self, g: impl Fn(Scalar) -> Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| g(a)).collect(),
        }
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Places `blocks` along the diagonal.
    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(parts: &[&Mat]) -> Mat {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Mat { rows, cols, data }
    }

    pub fn rref(&self, f: &Field) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { mat: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        // Forward elimination only.
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column,
    /// with that free coordinate set to 1.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Scalar>> {
        let Echelon { mat, pivots } = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[free] = Scalar::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(mat[(r, free)]);
                }
                v
            })
            .collect()
    }

    pub fn det(&self, f: &Field) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::ZERO;
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let pivot = m[(c, c)];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, m[(c, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], v);
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(n));
        let Echelon { mat, pivots } = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(mat.submatrix(0, n, n, n))
    }

    pub fn is_alternating(&self, f: &Field) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == f.neg(self[(j, i)]))
            })
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(f: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Solves `A x = b`: a particular solution plus a kernel basis, or
/// [`LinearSolution::Inconsistent`].
pub fn solve_linear(f: &Field, a: &Mat, b: &[Scalar]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let mut aug = Mat::zeros(a.rows(), n + 1);
    aug.set_block(0, 0, a);
    for (i, &bi) in b.iter().enumerate() {
        aug[(i, n)] = bi;
    }
    let Echelon { mat, pivots } = aug.rref(f);
    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![Scalar::ZERO; n];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = mat[(r, n)];
    }
    Ok(LinearSolution::Solvable {
        particular,
        kernel: a.kernel(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Mat::zeros(3, 3).rank(&f5), 0);
        for n in 0..6 {
            assert_eq!(Mat::identity(n).rank(&f5), n);
        }
        assert_eq!(Mat::from_ints(&f5, &[[1, 2], [2, 4]]).rank(&f5), 1);
    }

    #[test]
    fn solve_examples() {
        let f3 = Field::prime(3).unwrap();
        let b = vec![Scalar(2), Scalar(1), Scalar(0)];
        assert_eq!(
            solve_linear(&f3, &Mat::identity(3), &b).unwrap(),
            LinearSolution::Solvable {
                particular: b.clone(),
                kernel: vec![]
            }
        );
        let LinearSolution::Solvable { particular, kernel } =
            solve_linear(&f3, &Mat::zeros(2, 3), &[Scalar(0), Scalar(0)]).unwrap()
        else {
            panic!("zero system is consistent");
        };
        assert_eq!(particular, vec![Scalar(0); 3]);
        assert_eq!(Mat::from_rows(&kernel).unwrap().rank(&f3), 3);

        let a = Mat::from_ints(&f3, &[[1, 1], [0, 0]]);
        assert_eq!(
            solve_linear(&f3, &a, &[Scalar(2), Scalar(0)]).unwrap(),
            LinearSolution::Solvable {
                particular: vec![Scalar(2), Scalar(0)],
                kernel: vec![vec![Scalar(2), Scalar(1)]]
            }
        );
        assert_eq!(
            solve_linear(&f3, &a, &[Scalar(2), Scalar(1)]).unwrap(),
            LinearSolution::Inconsistent
        );
        assert!(matches!(
            solve_linear(&f3, &a, &[Scalar(2)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rank_nullity_and_inverse_on_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 9] {
            let f = Field::standard(q).unwrap();
            for _ in 0..60 {
                let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
                let data = (0..r * c)
                    .map(|_| Scalar(rng.gen_range(0..f.order())))
                    .collect();
                let m = Mat::from_vec(r, c, data).unwrap();
                let ker = m.kernel(&f);
                assert_eq!(m.rank(&f) + ker.len(), c);
                for v in &ker {
                    assert!(m.mul_vec(&f, v).iter().all(|s| s.is_zero()));
                }
                if r == c {
                    match m.inverse(&f) {
                        Ok(inv) => {
                            assert_eq!(inv.mul(&f, &m), Mat::identity(r));
                            assert!(!m.det(&f).is_zero());
                        }
                        Err(Error::Singular) => assert!(m.det(&f).is_zero()),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}
