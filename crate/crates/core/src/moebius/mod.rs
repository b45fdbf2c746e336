//! The semilinear substitution action of `GammaL(2,q)` on binary forms,
//! read projectively: `f^(M,s)(X,Y) = f^s(aX + bY, cX + dY)`.
//!
//! This is a right action, so `(M,s)(N,t) = (M^t N, s + t)`.

mod orbits;
mod pgl;

use serde::{Deserialize, Serialize};

use crate::galois::{Field, Mat, Scalar};
use crate::polyring::{HomForm, UniPoly};
use crate::{Error, Result};

pub use orbits::{
    count_orbits, family_members, multiset_equivalent, multiset_orbit, orbit_of, orbits_of_family,
    Family,
};
pub use pgl::{
    dihedral_census, gl2_elements, stabilizer_gl, stabilizer_pgl, sylow3_bijection_check,
    DihedralCensus, PglElement, PglSubgroup,
};

/// Which group acts: `GL(2,q)`, or `GL(2,q)` extended by field automorphisms.
/// Over a prime field the two coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    GL,
    GammaL,
}

/// A pair `(M, s)`: invertible `2 x 2` matrix and Frobenius exponent `s < k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiLin2 {
    mat: Mat,
    frob: u32,
}

impl SemiLin2 {
    pub fn new(f: &Field, mat: Mat, frob: u32) -> Result<SemiLin2> {
        if mat.rows() != 2 || mat.cols() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.det(f).is_zero() {
            return Err(Error::Singular);
        }
        if frob >= f.degree() {
            return Err(Error::InvalidArgument(format!(
                "Frobenius exponent {frob} for degree {}",
                f.degree()
            )));
        }
        Ok(SemiLin2 { mat, frob })
    }

    pub fn linear(f: &Field, mat: Mat) -> Result<SemiLin2> {
        SemiLin2::new(f, mat, 0)
    }

    pub fn identity() -> SemiLin2 {
        SemiLin2 {
            mat: Mat::identity(2),
            frob: 0,
        }
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn frob(&self) -> u32 {
        self.frob
    }

    /// `self` followed by `other`.
    pub fn compose(&self, f: &Field, other: &SemiLin2) -> SemiLin2 {
        let twisted = self.mat.map(|a| f.frobenius(a, other.frob));
        SemiLin2 {
            mat: twisted.mul(f, &other.mat),
            frob: (self.frob + other.frob) % f.degree(),
        }
    }

    pub fn inverse(&self, f: &Field) -> SemiLin2 {
        // (M,s)^-1 = ((M^-1)^(k-s), k-s): check with the composition rule.
        let k = f.degree();
        let t = (k - self.frob) % k;
        let inv = self.mat.inverse(f).expect("invertible by construction");
        SemiLin2 {
            mat: inv.map(|a| f.frobenius(a, t)),
            frob: t,
        }
    }
}

/// The ideal generated by a nonzero binary form, stored as the coefficients
/// `c_i` of `X^(n-i) Y^i` scaled so the first nonzero one is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormIdeal {
    coeffs: Vec<Scalar>,
}

impl FormIdeal {
    pub fn new(f: &Field, coeffs: Vec<Scalar>) -> Result<FormIdeal> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument(
                "form ideals need degree at least 1".into(),
            ));
        }
        let lead = coeffs
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(Error::ZeroPolynomial)?;
        let inv = f.inv(lead)?;
        Ok(FormIdeal {
            coeffs: coeffs.into_iter().map(|c| f.mul(c, inv)).collect(),
        })
    }

    /// Assumes `coeffs` is already normalized.
    pub(crate) fn from_normalized(coeffs: Vec<Scalar>) -> FormIdeal {
        FormIdeal { coeffs }
    }

    pub fn from_form(f: &Field, form: &HomForm) -> Result<FormIdeal> {
        if form.nvars() != 2 {
            return Err(Error::NotBivariate(form.nvars()));
        }
        let n = form.degree();
        FormIdeal::new(f, (0..=n).map(|i| form.coeff(&[n - i, i])).collect())
    }

    /// Ideal of the homogenization `Y^n f(X/Y)`.
    pub fn from_poly(f: &Field, poly: &UniPoly) -> Result<FormIdeal> {
        FormIdeal::from_form(f, &poly.homogenize(f)?)
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn to_form(&self, f: &Field) -> HomForm {
        HomForm::binary(f, &self.coeffs)
    }

    /// `f(x, 1)`.
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().copied().collect())
    }

    pub fn act(&self, f: &Field, m: &SemiLin2) -> FormIdeal {
        let n = self.coeffs.len() - 1;
        let src: Vec<Scalar> = self
            .coeffs
            .iter()
            .map(|&c| f.frobenius(c, m.frob))
            .collect();
        let l1 = [m.mat[(0, 0)], m.mat[(0, 1)]];
        let l2 = [m.mat[(1, 0)], m.mat[(1, 1)]];
        let p1 = linear_powers(f, l1, n);
        let p2 = linear_powers(f, l2, n);
        let mut out = vec![Scalar::ZERO; n + 1];
        for (i, &c) in src.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = &p1[n - i];
            let b = &p2[i];
            for (j, &x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let cx = f.mul(c, x);
                for (l, &y) in b.iter().enumerate() {
                    out[j + l] = f.add(out[j + l], f.mul(cx, y));
                }
            }
        }
        FormIdeal::new(f, out).expect("invertible substitution keeps the form nonzero")
    }

    pub fn display(&self, f: &Field) -> String {
        self.to_form(f).display(f)
    }
}

/// Powers `(uX + vY)^j` for `j = 0..=n` as coefficient vectors.
fn linear_powers(f: &Field, l: [Scalar; 2], n: usize) -> Vec<Vec<Scalar>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(vec![Scalar::ONE]);
    for j in 1..=n {
        let prev: &Vec<Scalar> = &out[j - 1];
        let mut next = vec![Scalar::ZERO; j + 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i] = f.add(next[i], f.mul(c, l[0]));
            next[i + 1] = f.add(next[i + 1], f.mul(c, l[1]));
        }
        out.push(next);
    }
    out
}

/// Free-function form of [`FormIdeal::act`].
pub fn act(f: &Field, ideal: &FormIdeal, m: &SemiLin2) -> FormIdeal {
    ideal.act(f, m)
}

/// Generators used by every orbit search: `diag(w, 1)` for a primitive `w`,
/// the transvection `[[1,1],[0,1]]`, the swap `[[0,1],[1,0]]`, and for
/// `GammaL` over a proper extension also the Frobenius.
pub fn generators(f: &Field, group: Group) -> Vec<SemiLin2> {
    let w = f.primitive();
    let mut gens = vec![
        SemiLin2 {
            mat: Mat::from_rows(&[vec![w, Scalar::ZERO], vec![Scalar::ZERO, Scalar::ONE]]).unwrap(),
            frob: 0,
        },
        SemiLin2 {
            mat: Mat::from_ints(f, &[[1, 1], [0, 1]]),
            frob: 0,
        },
        SemiLin2 {
            mat: Mat::from_ints(f, &[[0, 1], [1, 0]]),
            frob: 0,
        },
    ];
    if group == Group::GammaL && f.degree() > 1 {
        gens.push(SemiLin2 {
            mat: Mat::identity(2),
            frob: 1,
        });
    }
    gens
}

/// `|GL(2,q)|`, times `k` for `GammaL(2,p^k)`.
pub fn group_order(f: &Field, group: Group) -> u128 {
    let q = f.order() as u128;
    let gl = (q * q - 1) * (q * q - q);
    match group {
        Group::GL => gl,
        Group::GammaL => gl * f.degree() as u128,
    }
}
