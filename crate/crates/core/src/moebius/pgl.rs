use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{FormIdeal, Group, SemiLin2};
use crate::galois::{Field, Mat, Scalar};
use crate::moebius::orbits::family_members;
use crate::moebius::Family;
use crate::{Error, Limits, Result};

/// All invertible `2 x 2` matrices, in order of their entry encodings.
pub fn gl2_elements(f: &Field) -> Vec<Mat> {
    let q = f.order();
    let mut out = Vec::with_capacity(((q * q - 1) * (q * q - q)) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m =
                        Mat::from_rows(&[vec![Scalar(a), Scalar(b)], vec![Scalar(c), Scalar(d)]])
                            .unwrap();
                    if !m.det(f).is_zero() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Element of `PGL(2,q)` stored as the matrix scaled so its first nonzero
/// entry (row-major) is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PglElement(Mat);

impl PglElement {
    pub fn new(f: &Field, m: &Mat) -> Result<PglElement> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch("PGL elements are 2x2".into()));
        }
        if m.det(f).is_zero() {
            return Err(Error::Singular);
        }
        let lead = m
            .entries()
            .iter()
            .copied()
            .find(|x| !x.is_zero())
            .expect("nonsingular");
        let inv = f.inv(lead)?;
        Ok(PglElement(m.scale(f, inv)))
    }

    pub fn identity() -> PglElement {
        PglElement(Mat::identity(2))
    }

    pub fn mat(&self) -> &Mat {
        &self.0
    }

    pub fn mul(&self, f: &Field, o: &PglElement) -> PglElement {
        PglElement::new(f, &self.0.mul(f, &o.0)).expect("product of invertibles")
    }

    pub fn inverse(&self, f: &Field) -> PglElement {
        PglElement::new(f, &self.0.inverse(f).expect("invertible")).expect("invertible")
    }

    /// Smallest `n >= 1` with `self^n = 1`.
    pub fn order(&self, f: &Field) -> u64 {
        let mut acc = self.clone();
        let mut n = 1;
        while acc != PglElement::identity() {
            acc = acc.mul(f, self);
            n += 1;
        }
        n
    }

    pub fn as_semilinear(&self, f: &Field) -> SemiLin2 {
        SemiLin2::linear(f, self.0.clone()).expect("invertible")
    }
}

/// An explicit finite subgroup of `PGL(2,q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PglSubgroup {
    elems: BTreeSet<PglElement>,
}

impl PglSubgroup {
    /// Checks closure under products and inverses.
    pub fn new(f: &Field, elems: impl IntoIterator<Item = PglElement>) -> Result<PglSubgroup> {
        let elems: BTreeSet<PglElement> = elems.into_iter().collect();
        if !elems.contains(&PglElement::identity()) {
            return Err(Error::InvalidArgument(
                "subgroup must contain the identity".into(),
            ));
        }
        for a in &elems {
            if !elems.contains(&a.inverse(f)) {
                return Err(Error::InvalidArgument("not closed under inverses".into()));
            }
            for b in &elems {
                if !elems.contains(&a.mul(f, b)) {
                    return Err(Error::InvalidArgument("not closed under products".into()));
                }
            }
        }
        Ok(PglSubgroup { elems })
    }

    /// The cyclic subgroup generated by `g`.
    pub fn cyclic(f: &Field, g: &PglElement) -> PglSubgroup {
        let mut elems = BTreeSet::from([PglElement::identity()]);
        let mut acc = g.clone();
        while acc != PglElement::identity() {
            elems.insert(acc.clone());
            acc = acc.mul(f, g);
        }
        PglSubgroup { elems }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, g: &PglElement) -> bool {
        self.elems.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = &PglElement> {
        self.elems.iter()
    }

    pub fn is_subgroup_of(&self, other: &PglSubgroup) -> bool {
        self.elems.is_subset(&other.elems)
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, f: &Field, g: &PglElement) -> PglSubgroup {
        let gi = g.inverse(f);
        PglSubgroup {
            elems: self.elems.iter().map(|h| gi.mul(f, h).mul(f, g)).collect(),
        }
    }
}

/// All of `PGL(2,q)`, as canonical representatives.
pub(crate) fn pgl2_elements(f: &Field) -> Vec<PglElement> {
    let set: BTreeSet<PglElement> = gl2_elements(f)
        .into_iter()
        .filter(|m| m.entries().iter().find(|x| !x.is_zero()) == Some(&Scalar::ONE))
        .map(PglElement)
        .collect();
    set.into_iter().collect()
}

fn check_group(f: &Field, limits: &Limits) -> Result<()> {
    limits.check_enum("GL(2,q) elements", super::group_order(f, Group::GL))
}

/// Elements of `GL(2,q)` fixing the ideal of `ideal`.
pub fn stabilizer_gl(f: &Field, ideal: &FormIdeal, limits: &Limits) -> Result<Vec<Mat>> {
    check_group(f, limits)?;
    Ok(gl2_elements(f)
        .into_par_iter()
        .filter(|m| {
            ideal.act(
                f,
                &SemiLin2 {
                    mat: m.clone(),
                    frob: 0,
                },
            ) == *ideal
        })
        .collect())
}

/// Stabilizer of the ideal in `PGL(2,q)`.
pub fn stabilizer_pgl(f: &Field, ideal: &FormIdeal, limits: &Limits) -> Result<PglSubgroup> {
    check_group(f, limits)?;
    let elems: Vec<PglElement> = pgl2_elements(f)
        .into_par_iter()
        .filter(|g| ideal.act(f, &g.as_semilinear(f)) == *ideal)
        .collect();
    Ok(PglSubgroup {
        elems: elems.into_iter().collect(),
    })
}

/// Conjugation orbits of a dihedral subgroup on the other dihedral subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralCensus {
    pub p: u64,
    /// Number of stabilizers of irreducible quadratics.
    pub delta_size: usize,
    /// Order of each of them.
    pub subgroup_order: usize,
    /// For each `D` in the set, the number of `D`-orbits on the rest.
    pub orbit_counts: Vec<usize>,
}

impl DihedralCensus {
    /// The orbit count, when it is the same for every member (it always is,
    /// since the members are conjugate).
    pub fn orbit_count(&self) -> Option<usize> {
        let first = *self.orbit_counts.first()?;
        self.orbit_counts
            .iter()
            .all(|&c| c == first)
            .then_some(first)
    }
}

fn quadratic_stabilizers(f: &Field, limits: &Limits) -> Result<Vec<PglSubgroup>> {
    let quads = family_members(f, 2, Family::Irreducible, limits)?;
    let all = pgl2_elements(f);
    Ok(quads
        .par_iter()
        .map(|quad| PglSubgroup {
            elems: all
                .iter()
                .filter(|g| quad.act(f, &g.as_semilinear(f)) == *quad)
                .cloned()
                .collect(),
        })
        .collect())
}

/// Builds the set of stabilizers in `PGL(2,p)` of irreducible quadratics and
/// counts, for each member `D`, the orbits of `D` acting by conjugation on the
/// remaining members.
pub fn dihedral_census(p: u64, limits: &Limits) -> Result<DihedralCensus> {
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    let f = Field::prime(p)?;
    check_group(&f, limits)?;
    let delta = quadratic_stabilizers(&f, limits)?;
    let distinct: HashSet<&PglSubgroup> = delta.iter().collect();
    assert_eq!(
        distinct.len(),
        delta.len(),
        "stabilizers of distinct quadratics coincide"
    );
    let orbit_counts = delta
        .par_iter()
        .map(|d| {
            let rest: Vec<&PglSubgroup> = delta.iter().filter(|e| *e != d).collect();
            let mut seen: HashSet<PglSubgroup> = HashSet::new();
            let mut count = 0;
            for e in rest {
                if seen.contains(e) {
                    continue;
                }
                count += 1;
                for g in d.elements() {
                    seen.insert(e.conjugate(&f, g));
                }
            }
            count
        })
        .collect();
    Ok(DihedralCensus {
        p,
        delta_size: delta.len(),
        subgroup_order: delta[0].order(),
        orbit_counts,
    })
}

/// For `p = 2 mod 3`: each stabilizer of an irreducible quadratic contains
/// exactly one Sylow 3-subgroup of `PGL(2,p)`, and this assignment is a
/// bijection onto the Sylow 3-subgroups.
pub fn sylow3_bijection_check(p: u64, limits: &Limits) -> Result<bool> {
    if p % 3 != 2 {
        return Err(Error::WrongResidue { p });
    }
    let f = Field::prime(p)?;
    check_group(&f, limits)?;
    let order = p * (p * p - 1);
    let mut sylow_order = 1;
    while order.is_multiple_of(sylow_order * 3) {
        sylow_order *= 3;
    }
    let all = pgl2_elements(&f);
    // The Sylow 3-subgroups here are cyclic (they sit in a cyclic torus of
    // order p+1), so they are generated by elements of full 3-power order.
    let sylows: BTreeSet<PglSubgroup> = all
        .iter()
        .filter(|g| g.order(&f) == sylow_order)
        .map(|g| PglSubgroup::cyclic(&f, g))
        .collect();
    let delta = quadratic_stabilizers(&f, limits)?;
    let mut hit: BTreeSet<&PglSubgroup> = BTreeSet::new();
    for d in &delta {
        let inside: Vec<&PglSubgroup> = sylows.iter().filter(|s| s.is_subgroup_of(d)).collect();
        if inside.len() != 1 || !hit.insert(inside[0]) {
            return Ok(false);
        }
    }
    Ok(hit.len() == sylows.len())
}
