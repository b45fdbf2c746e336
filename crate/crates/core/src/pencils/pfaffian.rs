use rayon::prelude::*;

use super::AltPencil;
use crate::galois::{gaussian_binomial, ProjectivePoints, Scalar, Subspaces};
use crate::polyring::mpoly::{det_mpoly, MPoly};
use crate::polyring::{form_sqrt, HomForm};
use crate::{Error, Limits, Result};

/// `det(sum_i x_i M_i)` as a form in `dim_w` variables.
pub fn discriminant(p: &AltPencil) -> HomForm {
    let f = p.field();
    let (n, d) = (p.dim_v(), p.dim_w());
    let entries: Vec<Vec<MPoly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    p.mats()
                        .iter()
                        .enumerate()
                        .fold(MPoly::zero(d), |acc, (i, m)| {
                            acc.add(f, &MPoly::linear(d, i, m[(r, c)]))
                        })
                })
                .collect()
        })
        .collect();
    let det = det_mpoly(f, d, &entries);
    HomForm::from_mpoly(det).expect("determinant of linear forms is homogeneous")
}

/// Normalized square root of the discriminant; zero when it vanishes.
pub fn pfaffian(p: &AltPencil) -> Result<HomForm> {
    let disc = discriminant(p);
    if disc.is_zero() {
        return Ok(HomForm::zero(p.dim_w()));
    }
    form_sqrt(p.field(), &disc).ok_or(Error::NotPerfectSquare)
}

/// For every nonzero `u`, `v -> u o v` maps onto `W`. Checking `L_u` alone
/// suffices: `v o u = -(u o v)`, so `R_u` has the same image.
pub fn is_ses_direct(p: &AltPencil, limits: &Limits) -> Result<bool> {
    let f = p.field();
    let pts = ProjectivePoints::new(f, p.dim_v());
    limits.check_enum("projective points of V", pts.len())?;
    if p.dim_w() == 0 {
        return Ok(true);
    }
    const CHUNK: u128 = 1 << 12;
    let chunks = pts.len().div_ceil(CHUNK);
    Ok((0..chunks).into_par_iter().all(|c| {
        let end = ((c + 1) * CHUNK).min(pts.len());
        surjective_on_range(p, &pts, c * CHUNK, end)
    }))
}

/// Scans points `start..end`. Over a prime field consecutive points differ
/// by adding 1 to a run of coordinates (an odometer whose wrapped digits go
/// from `p-1` to `0`), so the rows `u M_i` are updated instead of recomputed.
fn surjective_on_range(p: &AltPencil, pts: &ProjectivePoints, start: u128, end: u128) -> bool {
    let f = p.field();
    let (n, d) = (p.dim_v(), p.dim_w());
    let q = f.order();
    let mut u = pts.get(start);
    let mut rows: Vec<Vec<Scalar>> = p.mats().iter().map(|m| m.vec_mul(f, &u)).collect();
    let mut scratch = vec![vec![Scalar::ZERO; n]; d];
    for idx in start..end {
        if idx > start {
            let lead = u.iter().position(|x| !x.is_zero()).expect("nonzero point");
            let tail_full = u[lead + 1..].iter().all(|x| x.value() == q - 1);
            if !f.is_prime_field() || tail_full {
                u = pts.get(idx);
                for (r, m) in rows.iter_mut().zip(p.mats()) {
                    *r = m.vec_mul(f, &u);
                }
            } else {
                #[allow(clippy::needless_range_loop)]
                for t in lead + 1..n {
                    let wrapped = u[t].value() == q - 1;
                    u[t] = f.add(u[t], Scalar::ONE);
                    for (r, m) in rows.iter_mut().zip(p.mats()) {
                        for (x, &y) in r.iter_mut().zip(m.row(t)) {
                            *x = f.add(*x, y);
                        }
                    }
                    if !wrapped {
                        break;
                    }
                }
            }
        }
        for (s, r) in scratch.iter_mut().zip(&rows) {
            s.copy_from_slice(r);
        }
        if !rows_independent(f, &mut scratch) {
            return false;
        }
    }
    true
}

/// In-place elimination on a few rows; `true` iff they are independent.
fn rows_independent(f: &crate::Field, rows: &mut [Vec<Scalar>]) -> bool {
    let n = rows.first().map_or(0, |r| r.len());
    let mut col = 0;
    for i in 0..rows.len() {
        loop {
            if col == n {
                return false;
            }
            if let Some(piv) = (i..rows.len()).find(|&r| !rows[r][col].is_zero()) {
                rows.swap(i, piv);
                break;
            }
            col += 1;
        }
        let inv = f.inv(rows[i][col]).expect("nonzero pivot");
        let (top, rest) = rows.split_at_mut(i + 1);
        let pivot = &top[i];
        for row in rest {
            let factor = f.mul(row[col], inv);
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row[col..n].iter_mut().zip(&pivot[col..n]) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        col += 1;
    }
    true
}

/// The Pfaffian is nonzero and has no zero in projective `(dim_w - 1)`-space.
pub fn is_ses_pfaffian(p: &AltPencil, limits: &Limits) -> Result<bool> {
    let pf = pfaffian(p)?;
    if pf.is_zero() {
        return Ok(false);
    }
    let f = p.field();
    let pts = ProjectivePoints::new(f, p.dim_w());
    limits.check_enum("projective points of W", pts.len())?;
    Ok((0..pts.len())
        .into_par_iter()
        .all(|i| !pf.eval(f, &pts.get(i)).expect("matching arity").is_zero()))
}

/// Number of `k`-dimensional subspaces `S` of `V` with `S o S = 0`.
pub fn count_totally_isotropic(p: &AltPencil, k: usize, limits: &Limits) -> Result<u64> {
    let f = p.field();
    let n = p.dim_v();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {k} exceeds {n}"
        )));
    }
    limits.check_enum("subspaces", gaussian_binomial(f.order() as u64, n, k))?;
    let subs = Subspaces::new(f, n, k);
    Ok((0..subs.len())
        .into_par_iter()
        .filter(|&i| {
            let s = subs.get(i);
            let st = s.transpose();
            p.mats().iter().all(|m| s.mul(f, m).mul(f, &st).is_zero())
        })
        .count() as u64)
}
