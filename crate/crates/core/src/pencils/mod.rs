//! Alternating bimaps `V x V -> W` given by their structure matrices.
//!
//! A pencil with matrices `M_1..M_d` sends `(u, v)` to `(u M_i v^T)_i`.

mod centroid;
mod io;
mod pfaffian;

use crate::galois::{Field, Mat, Scalar};
use crate::{Error, Result};

pub use centroid::{centroid, genus, CentroidBasis};
pub use io::PencilFile;
pub use pfaffian::{
    count_totally_isotropic, discriminant, is_ses_direct, is_ses_pfaffian, pfaffian,
};

/// An alternating pencil: every matrix is skew with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltPencil {
    field: Field,
    dim_v: usize,
    mats: Vec<Mat>,
}

impl AltPencil {
    pub fn new(field: &Field, dim_v: usize, mats: Vec<Mat>) -> Result<AltPencil> {
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != dim_v || m.cols() != dim_v {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {i} is {}x{}, expected {dim_v}x{dim_v}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_alternating(field) {
                return Err(Error::NotAlternating(format!("matrix {i}")));
            }
        }
        Ok(AltPencil {
            field: field.clone(),
            dim_v,
            mats,
        })
    }

    /// Builds from integer grids (entries are field encodings, negatives
    /// read modulo `p` in prime fields).
    pub fn from_ints<R: AsRef<[i64]>>(field: &Field, mats: &[Vec<R>]) -> Result<AltPencil> {
        let n = mats.first().map_or(0, |m| m.len());
        let mats = mats.iter().map(|m| Mat::from_ints(field, m)).collect();
        AltPencil::new(field, n, mats)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    /// `u o v` as a vector in `W`.
    pub fn apply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        self.mats
            .iter()
            .map(|m| crate::galois::dot(f, &m.vec_mul(f, u), v))
            .collect()
    }

    /// Basis of `{v : M_i v = 0 for all i}`.
    pub fn radical(&self) -> Vec<Vec<Scalar>> {
        if self.mats.is_empty() {
            return (0..self.dim_v)
                .map(|i| Mat::identity(self.dim_v).row(i).to_vec())
                .collect();
        }
        let refs: Vec<&Mat> = self.mats.iter().collect();
        Mat::vstack(&refs).kernel(&self.field)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_empty()
    }

    /// The structure matrices are linearly independent.
    pub fn is_full(&self) -> bool {
        let flat: Vec<Vec<Scalar>> = self.mats.iter().map(|m| m.entries().to_vec()).collect();
        if flat.is_empty() {
            return true;
        }
        Mat::from_rows(&flat)
            .expect("equal shapes")
            .rank(&self.field)
            == self.mats.len()
    }

    pub fn is_fully_nondegenerate(&self) -> bool {
        self.is_full() && self.is_nondegenerate()
    }

    /// Change of basis on `V`: matrices `T M_i T^T`.
    pub fn transform_domain(&self, t: &Mat) -> Result<AltPencil> {
        let f = &self.field;
        if t.rows() != self.dim_v || t.cols() != self.dim_v {
            return Err(Error::DimensionMismatch("domain transform shape".into()));
        }
        let tt = t.transpose();
        AltPencil::new(
            f,
            self.dim_v,
            self.mats.iter().map(|m| t.mul(f, m).mul(f, &tt)).collect(),
        )
    }

    /// Change of basis on `W`: matrices `sum_j S_ij M_j`.
    pub fn transform_codomain(&self, s: &Mat) -> Result<AltPencil> {
        let f = &self.field;
        let d = self.dim_w();
        if s.rows() != d || s.cols() != d {
            return Err(Error::DimensionMismatch("codomain transform shape".into()));
        }
        let mats = (0..d)
            .map(|i| {
                (0..d).fold(Mat::zeros(self.dim_v, self.dim_v), |acc, j| {
                    acc.add(f, &self.mats[j].scale(f, s[(i, j)]))
                })
            })
            .collect();
        AltPencil::new(f, self.dim_v, mats)
    }

    /// The same bimap viewed over the prime subfield. `V` and `W` get the
    /// bases `x^a e_i`, where `x` is the class of the variable of the
    /// modulus; this matches the integer encoding of scalars.
    pub fn restrict_to_prime_field(&self) -> AltPencil {
        let f = &self.field;
        let k = f.degree() as usize;
        if k == 1 {
            return self.clone();
        }
        let p = f.characteristic();
        let basis: Vec<Scalar> = (0..k).map(|a| Scalar(p.pow(a as u32))).collect();
        let n = self.dim_v;
        let mut mats = Vec::with_capacity(self.dim_w() * k);
        for m in &self.mats {
            let mut parts = vec![Mat::zeros(n * k, n * k); k];
            for i in 0..n {
                for j in 0..n {
                    if m[(i, j)].is_zero() {
                        continue;
                    }
                    for a in 0..k {
                        for b in 0..k {
                            let val = f.mul(f.mul(basis[a], basis[b]), m[(i, j)]);
                            for (c, &coef) in f.coeffs(val).iter().enumerate() {
                                parts[c][(i * k + a, j * k + b)] = Scalar(coef);
                            }
                        }
                    }
                }
            }
            mats.extend(parts);
        }
        AltPencil::new(&f.prime_subfield(), n * k, mats)
            .expect("restriction of an alternating pencil is alternating")
    }
}

/// A bilinear map `U x V -> W` given by `d` matrices of shape `dim_u x dim_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectBimap {
    field: Field,
    dim_u: usize,
    dim_v: usize,
    mats: Vec<Mat>,
}

impl RectBimap {
    pub fn new(field: &Field, dim_u: usize, dim_v: usize, mats: Vec<Mat>) -> Result<RectBimap> {
        if mats.iter().any(|m| m.rows() != dim_u || m.cols() != dim_v) {
            return Err(Error::DimensionMismatch(format!(
                "expected {dim_u}x{dim_v} matrices"
            )));
        }
        Ok(RectBimap {
            field: field.clone(),
            dim_u,
            dim_v,
            mats,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }
}

/// The commutator pencil of the Heisenberg group of a bimap: on `U + V`,
/// `(u1, v1) o (u2, v2) = u1 o v2 - u2 o v1`, with matrices
/// `[[0, M_i], [-M_i^T, 0]]`.
pub fn heisenberg_double(b: &RectBimap) -> AltPencil {
    let f = &b.field;
    let n = b.dim_u + b.dim_v;
    let mats = b
        .mats
        .iter()
        .map(|m| {
            let mut big = Mat::zeros(n, n);
            big.set_block(0, b.dim_u, m);
            big.set_block(b.dim_u, 0, &m.transpose().neg(f));
            big
        })
        .collect();
    AltPencil::new(f, n, mats).expect("doubled bimaps are alternating")
}

/// Block-diagonal sum of pencils sharing a field and codomain.
pub fn direct_sum(ps: &[AltPencil]) -> Result<AltPencil> {
    let first = ps
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
    if ps
        .iter()
        .any(|p| p.dim_w() != first.dim_w() || p.field != first.field)
    {
        return Err(Error::MixedCodomain);
    }
    let n: usize = ps.iter().map(|p| p.dim_v).sum();
    let mats = (0..first.dim_w())
        .map(|i| {
            let blocks: Vec<&Mat> = ps.iter().map(|p| &p.mats[i]).collect();
            Mat::block_diag(&blocks)
        })
        .collect();
    AltPencil::new(&first.field, n, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals_and_fullness() {
        let f = Field::prime(5).unwrap();
        let zero = AltPencil::new(&f, 3, vec![Mat::zeros(3, 3)]).unwrap();
        assert_eq!(zero.radical().len(), 3);
        let j = Mat::from_ints(&f, &[[0, 1], [-1, 0]]);
        let p = AltPencil::new(&f, 2, vec![j.clone()]).unwrap();
        assert!(p.is_fully_nondegenerate());
        let dep = AltPencil::new(&f, 2, vec![j.clone(), j.scale(&f, Scalar(2))]).unwrap();
        assert!(!dep.is_full());
        let padded = direct_sum(&[
            p.clone(),
            AltPencil::new(&f, 1, vec![Mat::zeros(1, 1)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(padded.radical().len(), 1);
        assert!(AltPencil::new(&f, 2, vec![Mat::from_ints(&f, &[[1, 1], [-1, 0]])]).is_err());
        let empty = AltPencil::new(&f, 2, vec![]).unwrap();
        assert_eq!(empty.radical().len(), 2);
    }

    #[test]
    fn doubling_a_scalar_gives_the_symplectic_plane() {
        let f = Field::prime(7).unwrap();
        let b = RectBimap::new(&f, 1, 1, vec![Mat::identity(1)]).unwrap();
        let h = heisenberg_double(&b);
        assert_eq!(h.mats()[0], Mat::from_ints(&f, &[[0, 1], [-1, 0]]));
    }

    #[test]
    fn restriction_preserves_products() {
        let f = Field::standard(9).unwrap();
        let b = RectBimap::new(&f, 1, 1, vec![Mat::identity(1)]).unwrap();
        let h = heisenberg_double(&b);
        let r = h.restrict_to_prime_field();
        assert_eq!((r.dim_v(), r.dim_w()), (4, 2));
        assert!(r.is_fully_nondegenerate());
        // Compare u o v computed both ways on a few vectors.
        for (u, v) in [([1u32, 2], [5u32, 7]), ([3, 0], [4, 8]), ([6, 1], [2, 2])] {
            let uf: Vec<Scalar> = u.iter().map(|&x| Scalar(x)).collect();
            let vf: Vec<Scalar> = v.iter().map(|&x| Scalar(x)).collect();
            let w = h.apply(&uf, &vf)[0];
            let flat = |xs: &[Scalar]| -> Vec<Scalar> {
                xs.iter()
                    .flat_map(|&x| f.coeffs(x).into_iter().map(Scalar))
                    .collect()
            };
            let wr = r.apply(&flat(&uf), &flat(&vf));
            assert_eq!(wr, f.coeffs(w).into_iter().map(Scalar).collect::<Vec<_>>());
        }
    }
}
