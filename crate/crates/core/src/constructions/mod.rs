//! Commutator pencils of the groups built from local algebras, companion
//! matrices and dot products.

mod algebra;

pub use algebra::{LocalAlgebra, SubspaceBasis};

use crate::galois::{Field, Mat, Scalar};
use crate::pencils::{heisenberg_double, AltPencil, RectBimap};
use crate::polyring::UniPoly;
use crate::{Error, Result};

/// Heisenberg group over `A`: on `A + A`, `(e1, f1) o (e2, f2) = e1 f2 - e2 f1`.
pub fn heisenberg_pencil(a: &LocalAlgebra) -> AltPencil {
    heisenberg_double(&a.multiplication_bimap())
}

/// The Heisenberg pencil followed by the projection `A -> A/S`. The quotient
/// uses the coordinates at the non-pivot positions of `S`'s echelon basis,
/// highest power of `x` first.
pub fn quotient_pencil(a: &LocalAlgebra, s: &SubspaceBasis) -> Result<AltPencil> {
    if s.ambient() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subspace of K^{} in an algebra of dimension {}",
            s.ambient(),
            a.dim()
        )));
    }
    if s.dim() == a.dim() {
        return Err(Error::NotProper);
    }
    let f = a.field();
    let h = heisenberg_pencil(a);
    // Reducing w by S changes coordinate c to w_c - sum_r w_(pivot r) S_r[c].
    let mats = s
        .free_coordinates()
        .into_iter()
        .rev()
        .map(|c| {
            s.basis()
                .iter()
                .zip(s.pivots())
                .fold(h.mats()[c].clone(), |acc, (row, &pc)| {
                    acc.sub(f, &h.mats()[pc].scale(f, row[c]))
                })
        })
        .collect();
    AltPencil::new(f, h.dim_v(), mats)
}

/// `A = S + (a^(c-1))`, by a rank computation.
pub fn is_complement_of_socle(a: &LocalAlgebra, s: &SubspaceBasis) -> bool {
    let ideal = a.ideal_power(a.exponent() - 1);
    s.sum(a.field(), &ideal)
        .map(|t| t.dim() == a.dim())
        .unwrap_or(false)
}

/// For a complement `<f, g>` of `S`: `f` is a unit and multiplication by
/// `f^-1 g` makes `A` a cyclic module with primary characteristic
/// polynomial (its rational canonical form is one companion block).
pub fn module_condition(a: &LocalAlgebra, f_elt: &[Scalar], g_elt: &[Scalar]) -> Result<bool> {
    let k = a.field();
    if !a.is_unit(f_elt) {
        return Ok(false);
    }
    let t = a.mul(&a.inverse(f_elt)?, g_elt);
    let m = a.mult_matrix(&t);
    let n = a.dim();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let chi = UniPoly::new(crate::polyring::mpoly::charpoly(k, &rows));
    if chi.primary_part(k)?.is_none() {
        return Ok(false);
    }
    // Cyclic iff some vector's Krylov space is everything; for a primary
    // characteristic polynomial it suffices that the minimal polynomial has
    // full degree, i.e. I, T, ..., T^(n-1) are independent.
    let mut powers = vec![Mat::identity(n)];
    for _ in 1..n {
        powers.push(powers.last().unwrap().mul(k, &m));
    }
    let flat: Vec<Vec<Scalar>> = powers.iter().map(|p| p.entries().to_vec()).collect();
    Ok(Mat::from_rows(&flat)?.rank(k) == n)
}

/// Matrix group with `e` in `K^m` placed as `[[e_1 .. e_m, 0], [0, e_1 .. e_m]]`
/// against `f` in `K^(m+1)`: the bimap `K^m x K^(m+1) -> K^2`, doubled.
pub fn hflat_pencil(f: &Field, m: usize) -> Result<AltPencil> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let mut top = Mat::zeros(m, m + 1);
    let mut bottom = Mat::zeros(m, m + 1);
    for i in 0..m {
        top[(i, i)] = Scalar::ONE;
        bottom[(i, i + 1)] = Scalar::ONE;
    }
    Ok(heisenberg_double(&RectBimap::new(
        f,
        m,
        m + 1,
        vec![top, bottom],
    )?))
}

/// Companion matrix: ones on the superdiagonal, last row `-a_0 .. -a_(n-1)`.
pub fn companion_matrix(f: &Field, g: &UniPoly) -> Result<Mat> {
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let g = g.monic(f);
    let mut c = Mat::zeros(n, n);
    for i in 0..n - 1 {
        c[(i, i + 1)] = Scalar::ONE;
    }
    for j in 0..n {
        c[(n - 1, j)] = f.neg(g.coeff(j));
    }
    Ok(c)
}

/// `([[0, I], [-I, 0]], [[0, -C], [C^T, 0]])` for the companion matrix `C` of `g`.
/// Its Pfaffian is `det(XI - YC)`, the homogenization of `g`.
pub fn companion_pencil_of_poly(f: &Field, g: &UniPoly) -> Result<AltPencil> {
    let c = companion_matrix(f, g)?;
    let n = c.rows();
    let id = RectBimap::new(f, n, n, vec![Mat::identity(n), c.neg(f)])?;
    Ok(heisenberg_double(&id))
}

/// Companion pencil of `a^c` for monic irreducible `a`.
pub fn companion_pencil(f: &Field, a: &UniPoly, c: u32) -> Result<AltPencil> {
    if c == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    if !a.is_irreducible(f)? {
        return Err(Error::NotIrreducible);
    }
    companion_pencil_of_poly(f, &a.monic(f).pow(f, c))
}

/// `F_q` with the default modulus when there is one, else the least
/// irreducible modulus.
pub fn field_of_order(q: u64) -> Result<Field> {
    if let Some(f) = Field::standard(q) {
        return Ok(f);
    }
    let (p, k) = prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    Field::with_least_modulus(p, k)
}

pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Doubled dot product `K^n x K^n -> K` over `K = F_q`, viewed over `F_p`.
pub fn genus1_pencil(q: u64, n: usize) -> Result<AltPencil> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let k = field_of_order(q)?;
    let dot = RectBimap::new(&k, n, n, vec![Mat::identity(n)])?;
    Ok(heisenberg_double(&dot).restrict_to_prime_field())
}
