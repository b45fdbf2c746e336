use crate::galois::{Field, Mat, Scalar};
use crate::pencils::RectBimap;
use crate::polyring::UniPoly;
use crate::{Error, Result};

/// `K[x]/(a(x)^c)` with `a` monic irreducible, on the basis `1, x, ..., x^(cd-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    field: Field,
    base: UniPoly,
    c: u32,
    modulus: UniPoly,
    /// `x^i mod a^c` for `i < 2 dim - 1`, as coordinate vectors.
    powers: Vec<Vec<Scalar>>,
}

impl LocalAlgebra {
    pub fn new(f: &Field, a: &UniPoly, c: u32) -> Result<LocalAlgebra> {
        if c == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1".into()));
        }
        if !a.is_monic() {
            return Err(Error::InvalidArgument(format!(
                "{} is not monic",
                a.display(f, "x")
            )));
        }
        if !a.is_irreducible(f)? {
            return Err(Error::NotIrreducible);
        }
        let modulus = a.pow(f, c);
        let dim = modulus.degree().expect("nonzero");
        let powers = (0..2 * dim - 1)
            .map(|i| {
                let r = UniPoly::monomial(Scalar::ONE, i)
                    .rem(f, &modulus)
                    .expect("nonzero modulus");
                (0..dim).map(|j| r.coeff(j)).collect()
            })
            .collect();
        Ok(LocalAlgebra {
            field: f.clone(),
            base: a.clone(),
            c,
            modulus,
            powers,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn base(&self) -> &UniPoly {
        &self.base
    }

    pub fn exponent(&self) -> u32 {
        self.c
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn dim(&self) -> usize {
        self.powers[0].len()
    }

    /// Coordinates of a polynomial reduced into the algebra.
    pub fn element(&self, p: &UniPoly) -> Vec<Scalar> {
        let r = p.rem(&self.field, &self.modulus).expect("nonzero modulus");
        (0..self.dim()).map(|j| r.coeff(j)).collect()
    }

    pub fn to_poly(&self, u: &[Scalar]) -> UniPoly {
        UniPoly::new(u.to_vec())
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = vec![Scalar::ZERO; self.dim()];
        for (i, &a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &x) in out.iter_mut().zip(&self.powers[i + j]) {
                    *o = f.add(*o, f.mul(ab, x));
                }
            }
        }
        out
    }

    /// Units are the elements outside the maximal ideal `(a)`.
    pub fn is_unit(&self, u: &[Scalar]) -> bool {
        !self
            .to_poly(u)
            .rem(&self.field, &self.base)
            .expect("nonzero")
            .is_zero()
    }

    /// Matrix of `v -> v u` on row vectors.
    pub fn mult_matrix(&self, u: &[Scalar]) -> Mat {
        let n = self.dim();
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut e = vec![Scalar::ZERO; n];
                e[i] = Scalar::ONE;
                self.mul(&e, u)
            })
            .collect();
        Mat::from_rows(&rows).expect("square")
    }

    pub fn inverse(&self, u: &[Scalar]) -> Result<Vec<Scalar>> {
        let inv = self.mult_matrix(u).inverse(&self.field)?;
        let mut one = vec![Scalar::ZERO; self.dim()];
        one[0] = Scalar::ONE;
        Ok(inv.vec_mul(&self.field, &one))
    }

    /// The ideal `(a^e)` as a subspace.
    pub fn ideal_power(&self, e: u32) -> SubspaceBasis {
        let f = &self.field;
        let gen = self.base.pow(f, e);
        let gd = gen.degree().expect("nonzero");
        let vecs: Vec<Vec<Scalar>> = (0..self.dim().saturating_sub(gd))
            .map(|i| self.element(&gen.mul(f, &UniPoly::monomial(Scalar::ONE, i))))
            .collect();
        SubspaceBasis::new(f, self.dim(), &vecs).expect("lengths match")
    }

    /// Multiplication as a bimap `A x A -> A`.
    pub fn multiplication_bimap(&self) -> RectBimap {
        let n = self.dim();
        let mats = (0..n)
            .map(|k| {
                let mut m = Mat::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = self.powers[i + j][k];
                    }
                }
                m
            })
            .collect();
        RectBimap::new(&self.field, n, n, mats).expect("square blocks")
    }
}

/// A subspace of `K^n` stored as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn new(f: &Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<SubspaceBasis> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vectors must have length {ambient}"
            )));
        }
        if vectors.is_empty() {
            return Ok(SubspaceBasis {
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            });
        }
        let e = Mat::from_rows(vectors)?.rref(f);
        let basis = (0..e.pivots.len()).map(|r| e.mat.row(r).to_vec()).collect();
        Ok(SubspaceBasis {
            ambient,
            basis,
            pivots: e.pivots,
        })
    }

    /// From the rows of a reduced echelon matrix such as [`crate::galois::Subspaces`] yields.
    pub fn from_echelon(f: &Field, m: &Mat) -> SubspaceBasis {
        let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        SubspaceBasis::new(f, m.cols(), &rows).expect("uniform rows")
    }

    pub fn zero(ambient: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not occupied by a pivot; they index a basis of the quotient.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    pub fn sum(&self, f: &Field, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(
                "subspaces of different spaces".into(),
            ));
        }
        let all: Vec<Vec<Scalar>> = self.basis.iter().chain(&other.basis).cloned().collect();
        SubspaceBasis::new(f, self.ambient, &all)
    }
}
