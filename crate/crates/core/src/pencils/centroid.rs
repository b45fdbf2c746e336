use super::AltPencil;
use crate::galois::{Field, Mat, Scalar};
use crate::{Error, Limits, Result};

/// Basis of the centroid: pairs `(X, Z)` with
/// `(uX) o v = u o (vX) = (u o v) Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidBasis {
    pub basis: Vec<(Mat, Mat)>,
    /// `Some(order)` when the centroid is a field.
    pub field_order: Option<u128>,
}

impl CentroidBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_field(&self) -> bool {
        self.field_order.is_some()
    }
}

/// Solves the centroid identities as a linear system in the entries of
/// `X` (`n x n`) and `Z` (`d x d`).
pub fn centroid(p: &AltPencil, limits: &Limits) -> Result<CentroidBasis> {
    if !p.is_fully_nondegenerate() {
        return Err(Error::DegeneratePencil);
    }
    let f = p.field();
    let (n, d) = (p.dim_v(), p.dim_w());
    let nx = n * n;
    let unknowns = nx + d * d;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // X M_i - sum_j Z_ji M_j = 0 and M_i X^T - sum_j Z_ji M_j = 0, entrywise.
    for (i, mi) in p.mats().iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                let mut left = vec![Scalar::ZERO; unknowns];
                let mut right = vec![Scalar::ZERO; unknowns];
                for t in 0..n {
                    // (X M_i)[r][c] = sum_t X[r][t] M_i[t][c]
                    left[r * n + t] = f.add(left[r * n + t], mi[(t, c)]);
                    // (M_i X^T)[r][c] = sum_t M_i[r][t] X[c][t]
                    right[c * n + t] = f.add(right[c * n + t], mi[(r, t)]);
                }
                for (j, mj) in p.mats().iter().enumerate() {
                    let z = nx + j * d + i;
                    left[z] = f.sub(left[z], mj[(r, c)]);
                    right[z] = f.sub(right[z], mj[(r, c)]);
                }
                rows.push(left);
                rows.push(right);
            }
        }
    }
    let system = Mat::from_rows(&rows).expect("uniform rows");
    let kernel = system.kernel(f);
    let basis: Vec<(Mat, Mat)> = kernel
        .iter()
        .map(|v| {
            let x = Mat::from_vec(n, n, v[..nx].to_vec()).expect("shape");
            let z = Mat::from_vec(d, d, v[nx..].to_vec()).expect("shape");
            (x, z)
        })
        .collect();
    let algebra = Algebra::new(f, basis.iter().map(|(x, _)| x.clone()).collect());
    assert!(
        algebra.contains(&Mat::identity(n)),
        "identity is always central"
    );
    for a in &algebra.basis {
        for b in &algebra.basis {
            assert!(
                algebra.contains(&a.mul(f, b)),
                "centroid not closed under products"
            );
        }
    }
    let field_order = algebra
        .is_field(limits)
        .then(|| (f.order() as u128).pow(basis.len() as u32));
    Ok(CentroidBasis { basis, field_order })
}

/// `dim W` over the centroid field.
pub fn genus(p: &AltPencil, limits: &Limits) -> Result<usize> {
    let c = centroid(p, limits)?;
    if !c.is_field() {
        return Err(Error::CentroidNotField);
    }
    Ok(p.dim_w() / c.dim())
}

/// A commutative-or-not subalgebra of `M_n(K)`, given by a basis. The `X`
/// component determines a centroid element: if `X = 0` then `(u o v) Z = 0`
/// for all `u, v`, and fullness forces `Z = 0`.
pub(crate) struct Algebra<'a> {
    f: &'a Field,
    basis: Vec<Mat>,
    coords: Mat,
}

impl<'a> Algebra<'a> {
    pub fn new(f: &'a Field, basis: Vec<Mat>) -> Self {
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|m| m.entries().to_vec()).collect();
        // Columns are the flattened basis matrices.
        let coords = Mat::from_rows(&rows).expect("uniform").transpose();
        Algebra { f, basis, coords }
    }

    fn coordinates(&self, m: &Mat) -> Option<Vec<Scalar>> {
        match crate::galois::solve_linear(self.f, &self.coords, m.entries()).ok()? {
            crate::galois::LinearSolution::Inconsistent => None,
            crate::galois::LinearSolution::Solvable { particular, .. } => Some(particular),
        }
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.coordinates(m).is_some()
    }

    fn element(&self, c: &[Scalar]) -> Mat {
        let n = self.basis[0].rows();
        self.basis
            .iter()
            .zip(c)
            .fold(Mat::zeros(n, n), |acc, (b, &x)| {
                acc.add(self.f, &b.scale(self.f, x))
            })
    }

    fn commutative(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i + 1..]
                .iter()
                .all(|b| a.mul(self.f, b) == b.mul(self.f, a))
        })
    }

    /// Every nonzero element is invertible, by enumeration.
    fn is_field_exhaustive(&self) -> bool {
        let q = self.f.order() as u64;
        let m = self.basis.len() as u32;
        self.commutative()
            && (1..q.pow(m)).all(|mut idx| {
                let c: Vec<Scalar> = (0..m)
                    .map(|_| {
                        let x = Scalar((idx % q) as u32);
                        idx /= q;
                        x
                    })
                    .collect();
                !self.element(&c).det(self.f).is_zero()
            })
    }

    /// Commutative, `a -> a^q` injective (no nilpotents), and its fixed
    /// space is one-dimensional (a single simple factor).
    fn is_field_frobenius(&self) -> bool {
        if !self.commutative() {
            return false;
        }
        let f = self.f;
        let q = f.order() as u64;
        let m = self.basis.len();
        let images: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|b| {
                self.coordinates(&b.pow(f, q))
                    .expect("closed under products")
            })
            .collect();
        // Column j holds the coordinates of b_j^q.
        let phi = Mat::from_rows(&images).expect("uniform").transpose();
        phi.rank(f) == m && phi.sub(f, &Mat::identity(m)).kernel(f).len() == 1
    }

    pub fn is_field(&self, limits: &Limits) -> bool {
        let q = self.f.order() as u128;
        let m = self.basis.len() as u32;
        if m <= 4 && q.pow(m) <= limits.max_enum as u128 {
            self.is_field_exhaustive()
        } else {
            self.is_field_frobenius()
        }
    }
}
