use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{generators, group_order, FormIdeal, Group, SemiLin2};
use crate::galois::{Field, Scalar};
use crate::polyring::{enumerate_monic_irreducibles_capped, monic_from_index};
use crate::{Error, Limits, Result};

/// Families of degree-`n` ideals that the action preserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Irreducible binary forms.
    Irreducible,
    /// Powers `a^c` of an irreducible `a` of degree at least 2.
    PrimaryNoLinearBase,
    /// Every nonzero binary form.
    All,
}

fn ideal_count(q: u64, n: u32) -> u128 {
    let q = q as u128;
    (q.pow(n + 1) - 1) / (q - 1)
}

/// Orbit of `seed` by breadth-first closure under [`generators`], sorted.
pub fn orbit_of(
    f: &Field,
    seed: &FormIdeal,
    group: Group,
    limits: &Limits,
) -> Result<Vec<FormIdeal>> {
    limits.check_enum(
        "binary form ideals",
        ideal_count(f.order() as u64, seed.degree()),
    )?;
    let gens = generators(f, group);
    Ok(closure(seed.clone(), &gens, |x, g| x.act(f, g))
        .into_iter()
        .collect())
}

/// Generic breadth-first closure; each frontier is expanded in parallel.
fn closure<T, A>(seed: T, gens: &[SemiLin2], apply: A) -> BTreeSet<T>
where
    T: Clone + Ord + std::hash::Hash + Send + Sync,
    A: Fn(&T, &SemiLin2) -> T + Sync,
{
    let mut seen: HashSet<T> = HashSet::from([seed.clone()]);
    let mut frontier = vec![seed];
    while !frontier.is_empty() {
        let images: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(|g| apply(x, g)).collect::<Vec<_>>())
            .collect();
        frontier = images
            .into_iter()
            .filter(|y| seen.insert(y.clone()))
            .collect();
    }
    seen.into_iter().collect()
}

/// All ideals in `family` of degree `n`, sorted.
pub fn family_members(
    f: &Field,
    n: u32,
    family: Family,
    limits: &Limits,
) -> Result<Vec<FormIdeal>> {
    if n == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    let q = f.order() as u64;
    let mut out: Vec<FormIdeal> = match family {
        Family::All => {
            let total = ideal_count(q, n);
            limits.check_enum("binary form ideals", total)?;
            // Leading coefficient 1 at position j, arbitrary after it.
            let mut v = Vec::with_capacity(total as usize);
            for j in 0..=n as usize {
                let free = n as usize - j;
                for idx in 0..q.pow(free as u32) {
                    let tail = monic_from_index(free, q, idx);
                    let mut c = vec![Scalar::ZERO; j];
                    // monic_from_index gives low-to-high; reverse into X-major order.
                    c.extend(tail.coeffs().iter().rev().copied());
                    v.push(FormIdeal::from_normalized(c));
                }
            }
            v
        }
        Family::Irreducible if n == 1 => family_members(f, 1, Family::All, limits)?,
        Family::Irreducible => enumerate_monic_irreducibles_capped(f, n as usize, limits)?
            .iter()
            .map(|p| FormIdeal::from_poly(f, p).expect("nonzero"))
            .collect(),
        Family::PrimaryNoLinearBase => {
            let mut v = Vec::new();
            for d in (2..=n).filter(|d| n.is_multiple_of(*d)) {
                for a in enumerate_monic_irreducibles_capped(f, d as usize, limits)? {
                    v.push(FormIdeal::from_poly(f, &a.pow(f, n / d)).expect("nonzero"));
                }
            }
            v
        }
    };
    out.sort();
    Ok(out)
}

/// Orbits of `group` on a family, each sorted, ordered by their least member.
pub fn orbits_of_family(
    f: &Field,
    n: u32,
    family: Family,
    group: Group,
    limits: &Limits,
) -> Result<Vec<Vec<FormIdeal>>> {
    let members = family_members(f, n, family, limits)?;
    let gens = generators(f, group);
    let mut visited: HashSet<FormIdeal> = HashSet::with_capacity(members.len());
    let mut out = Vec::new();
    for m in &members {
        if visited.contains(m) {
            continue;
        }
        let orbit: Vec<FormIdeal> = closure(m.clone(), &gens, |x, g| x.act(f, g))
            .into_iter()
            .collect();
        visited.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    Ok(out)
}

/// Number of `group`-orbits on the degree-`n` ideals of `family`.
pub fn count_orbits(
    f: &Field,
    n: u32,
    family: Family,
    group: Group,
    limits: &Limits,
) -> Result<u64> {
    Ok(orbits_of_family(f, n, family, group, limits)?.len() as u64)
}

fn act_multiset(f: &Field, ms: &[FormIdeal], g: &SemiLin2) -> Vec<FormIdeal> {
    let mut v: Vec<FormIdeal> = ms.iter().map(|x| x.act(f, g)).collect();
    v.sort();
    v
}

/// Orbit of a multiset (given as a sorted vector) under the generator closure.
pub fn multiset_orbit(f: &Field, seed: &[FormIdeal], group: Group) -> Vec<Vec<FormIdeal>> {
    let mut s = seed.to_vec();
    s.sort();
    let gens = generators(f, group);
    closure(s, &gens, |x, g| act_multiset(f, x, g))
        .into_iter()
        .collect()
}

/// Every element of `GL(2,q)` (or `GammaL`) in a fixed order.
pub(crate) fn all_semilinear(f: &Field, group: Group) -> Vec<SemiLin2> {
    let frobs = match group {
        Group::GL => 1,
        Group::GammaL => f.degree(),
    };
    let mats = super::gl2_elements(f);
    (0..frobs)
        .flat_map(|s| {
            mats.iter().map(move |m| SemiLin2 {
                mat: m.clone(),
                frob: s,
            })
        })
        .collect()
}

/// Decides whether some group element maps multiset `a` onto multiset `b`,
/// returning the first witness in a fixed enumeration order.
pub fn multiset_equivalent(
    f: &Field,
    a: &[FormIdeal],
    b: &[FormIdeal],
    group: Group,
    limits: &Limits,
) -> Result<Option<SemiLin2>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let mut degs_a: Vec<u32> = a.iter().map(|x| x.degree()).collect();
    let mut degs_b: Vec<u32> = b.iter().map(|x| x.degree()).collect();
    degs_a.sort();
    degs_b.sort();
    if degs_a != degs_b {
        return Ok(None);
    }
    let mut target = b.to_vec();
    target.sort();
    let mut src = a.to_vec();
    src.sort();
    if src == target {
        return Ok(Some(SemiLin2::identity()));
    }
    limits.check_enum("group elements", group_order(f, group))?;
    let elems = all_semilinear(f, group);
    Ok(elems
        .into_par_iter()
        .find_first(|g| act_multiset(f, &src, g) == target))
}
