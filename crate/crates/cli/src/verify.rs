//! Self-checks: closed forms against enumeration, the worked Pfaffian
//! examples against the shipped fixtures, and the subgroup lemmas.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use ses_core::census::{
    classes_bruteforce, classes_closed, decomposable_pair_closed, decomposable_pair_orbits,
    h_genus1, i_indecomposable, i_indecomposable_enumerated, n_closed, PairShape,
};
use ses_core::constructions::{
    companion_pencil, genus1_pencil, heisenberg_pencil, hflat_pencil, is_complement_of_socle,
    quotient_pencil, LocalAlgebra, SubspaceBasis,
};
use ses_core::galois::Subspaces;
use ses_core::moebius::{
    count_orbits, dihedral_census, family_members, multiset_equivalent, orbit_of, stabilizer_gl,
    sylow3_bijection_check, Family, Group,
};
use ses_core::pencils::{
    centroid, count_totally_isotropic, direct_sum, genus, is_ses_direct, is_ses_pfaffian, pfaffian,
    PencilFile,
};
use ses_core::polyring::enumerate_monic_irreducibles;
use ses_core::{AltPencil, Field, FormIdeal, HomForm, Limits, Mat, Scalar, UniPoly};

use crate::args::Suite;
use crate::report::{Report, SCHEMA_VERSION};

pub const GENUS_G: &str = include_str!("../../../fixtures/genus_g.json");
pub const GENUS_H: &str = include_str!("../../../fixtures/genus_h.json");
pub const SAME_PFAFF_1: &str = include_str!("../../../fixtures/same_pfaff_1.json");
pub const SAME_PFAFF_2: &str = include_str!("../../../fixtures/same_pfaff_2.json");

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{} checks, {} failed", self.checks.len(), failed);
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["check", "passed", "detail"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
            .collect()
    }
}

/// Collects checks; an error inside a check counts as a failure.
struct Checks(Vec<Check>);

impl Checks {
    fn add(
        &mut self,
        name: impl Into<String>,
        body: impl FnOnce() -> ses_core::Result<(bool, String)>,
    ) {
        let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.0.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    /// Check that `got == want`, with both in the detail.
    fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        body: impl FnOnce() -> ses_core::Result<(T, T)>,
    ) {
        self.add(name, || {
            let (got, want) = body()?;
            Ok((got == want, format!("got {got:?}, expected {want:?}")))
        });
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn run(
    suite: Suite,
    p: Option<u64>,
    max_p: u64,
    seed: u64,
    limits: &Limits,
) -> anyhow::Result<VerifyReport> {
    if let Some(p) = p {
        Field::prime(p)?;
    }
    let mut checks = Checks(Vec::new());
    let (label, formulas, examples, lemmas) = match suite {
        Suite::All => ("all", true, true, true),
        Suite::Formulas => ("formulas", true, false, false),
        Suite::Examples => ("examples", false, true, false),
        Suite::Lemmas => ("lemmas", false, false, true),
    };
    if formulas {
        formula_checks(&mut checks, max_p, limits);
    }
    if examples {
        example_checks(&mut checks, limits);
    }
    if lemmas {
        lemma_checks(&mut checks, p, seed, limits);
    }
    let passed = checks.0.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite: label,
        passed,
        checks: checks.0,
    })
}

fn formula_checks(checks: &mut Checks, max_p: u64, limits: &Limits) {
    let primes = primes_up_to(max_p);
    for &p in &primes {
        let top = if p <= 7 { 5 } else { 4 };
        for n in 2..=top {
            checks.eq(format!("orbit count N({p},{n})"), || {
                let f = Field::prime(p)?;
                Ok((
                    count_orbits(&f, n, Family::Irreducible, Group::GL, limits)?,
                    n_closed(p, n)?,
                ))
            });
        }
    }
    for &p in primes.iter().filter(|&&p| p <= 5) {
        for n in 2..=5 {
            checks.eq(format!("indecomposable count I({p},{n})"), || {
                Ok((
                    i_indecomposable_enumerated(p, n, limits)?,
                    i_indecomposable(p, n)?,
                ))
            });
        }
        // Genus 1 at degree n means a nondegenerate alternating form on
        // F_(p^2)^n with values in F_(p^2). It exists exactly for even n, and
        // the doubled dot product on F_(p^2)^(n/2) realizes it.
        for n in 2..=5u32 {
            checks.add(format!("genus-1 count H({},{})", p * p, n + 1), || {
                let h = h_genus1(p * p, n + 1)?;
                let exists = n % 2 == 0 && {
                    let pencil = genus1_pencil(p * p, (n / 2) as usize)?;
                    centroid(&pencil, limits)?.field_order == Some((p * p) as u128)
                        && genus(&pencil, limits)? == 1
                };
                Ok((
                    (h == 1) == exists,
                    format!("H = {h}, genus-1 pencil found: {exists}"),
                ))
            });
        }
    }
    for &p in primes.iter().filter(|&&p| p <= 7) {
        for e in [6, 8, 10] {
            class_check(checks, p, e, limits);
        }
        for shape in [PairShape::QuadQuad, PairShape::QuadCubic] {
            checks.eq(format!("{} pairs at p = {p}", shape.label()), || {
                Ok((
                    decomposable_pair_orbits(p, shape, limits)?,
                    decomposable_pair_closed(p, shape)?,
                ))
            });
        }
    }
    for &p in primes.iter().filter(|&&p| p <= 5) {
        class_check(checks, p, 12, limits);
    }
    checks.add(
        format!("class formulas are integers for p <= {}", max_p.max(1000)),
        || {
            for p in primes_up_to(max_p.max(1000)) {
                for e in [6, 8, 10, 12] {
                    classes_closed(p, e)?;
                }
            }
            Ok((true, "all divisions exact".into()))
        },
    );
}

fn class_check(checks: &mut Checks, p: u64, e: u32, limits: &Limits) {
    checks.add(format!("class count p = {p}, |G| = p^{e}"), || {
        let r = classes_bruteforce(p, e, limits)?;
        let expected = match e {
            6 | 8 => Some(1),
            10 => Some(p + 3 - gcd(2, p)),
            _ => None,
        };
        let total = r.brute_force.unwrap_or(0);
        let ok = r.closed_form == Some(total) && expected.is_none_or(|x| x == total);
        let strata: Vec<String> = r
            .breakdown
            .iter()
            .map(|s| format!("{} {}", s.label, s.count))
            .collect();
        Ok((ok, format!("total {total} ({})", strata.join(", "))))
    });
}

pub fn load(text: &str) -> ses_core::Result<AltPencil> {
    PencilFile::from_json(text)?.to_pencil()
}

fn quadratic_squared(f: &Field) -> HomForm {
    HomForm::binary(f, &[Scalar(1), Scalar(0), Scalar(2)]).pow(f, 2)
}

fn example_checks(checks: &mut Checks, limits: &Limits) {
    let f5 = Field::prime(5).expect("5 is prime");
    let f3 = Field::prime(3).expect("3 is prime");
    checks.add("genus example: G fixture", || {
        let g = load(GENUS_G)?;
        let pf = pfaffian(&g)?;
        let order = centroid(&g, limits)?.field_order;
        let ses = is_ses_direct(&g, limits)? && is_ses_pfaffian(&g, limits)?;
        let ok = pf == quadratic_squared(&f5) && order == Some(25) && ses;
        Ok((
            ok,
            format!(
                "Pf {}, centroid order {order:?}, ses {ses}",
                pf.display(&f5)
            ),
        ))
    });
    checks.add("genus example: H fixture", || {
        let h = load(GENUS_H)?;
        let pf = pfaffian(&h)?;
        let order = centroid(&h, limits)?.field_order;
        let ses = is_ses_direct(&h, limits)? && is_ses_pfaffian(&h, limits)?;
        let ok = pf == quadratic_squared(&f5) && order == Some(5) && ses;
        Ok((
            ok,
            format!(
                "Pf {}, centroid order {order:?}, ses {ses}",
                pf.display(&f5)
            ),
        ))
    });
    checks.add("genus example: H rebuilt from K[x]/((x^2+2)^2)", || {
        let a = LocalAlgebra::new(&f5, &UniPoly::from_ints(&f5, &[2, 0, 1]), 2)?;
        let s = SubspaceBasis::new(
            &f5,
            4,
            &[a.element(&UniPoly::one()), a.element(&UniPoly::x())],
        )?;
        let same = PencilFile::from_pencil(&quotient_pencil(&a, &s)?).to_json() == GENUS_H;
        Ok((
            same && is_complement_of_socle(&a, &s),
            format!("byte-identical to fixture: {same}"),
        ))
    });
    checks.add("genus example: printed structure constants", || {
        let cx = Mat::from_ints(
            &f5,
            &[[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        );
        let cy = Mat::from_ints(
            &f5,
            &[[0, 0, 2, 0], [0, 2, 0, 1], [2, 0, 1, 0], [0, 1, 0, 0]],
        );
        let mats = [cx, cy]
            .iter()
            .map(|b| {
                let mut m = Mat::zeros(8, 8);
                m.set_block(0, 4, b);
                m.set_block(4, 0, &b.transpose().neg(&f5));
                m
            })
            .collect();
        let printed = AltPencil::new(&f5, 8, mats)?;
        let pf = pfaffian(&printed)?;
        let quotient = pfaffian(&load(GENUS_H)?)?;
        let orbit = orbit_of(&f5, &FormIdeal::from_form(&f5, &pf)?, Group::GL, limits)?;
        let same_orbit = orbit.contains(&FormIdeal::from_form(&f5, &quotient)?);
        let order = centroid(&printed, limits)?.field_order;
        Ok((
            pf == quadratic_squared(&f5) && order == Some(5) && same_orbit,
            format!(
                "Pf {}, centroid order {order:?}, same orbit as H: {same_orbit}",
                pf.display(&f5)
            ),
        ))
    });
    checks.add("genus example: Pfaffian multisets are inequivalent", || {
        let q = FormIdeal::new(&f5, vec![Scalar(1), Scalar(0), Scalar(2)])?;
        let q2 = FormIdeal::from_form(&f5, &quadratic_squared(&f5))?;
        let w = multiset_equivalent(&f5, &[q.clone(), q], &[q2], Group::GL, limits)?;
        Ok((w.is_none(), format!("equivalent: {}", w.is_some())))
    });
    checks.add("same-Pfaffian example: equal Pfaffians", || {
        let a = pfaffian(&load(SAME_PFAFF_1)?)?;
        let b = pfaffian(&load(SAME_PFAFF_2)?)?;
        let expected = HomForm::parse(&f3, "x^3+x^2y+xy^2+2xz^2+2y^3+2y^2z+z^3", 3, true)?.value;
        Ok((
            a == expected && b == expected,
            format!("Pf {} and {}", a.display(&f3), b.display(&f3)),
        ))
    });
    checks.add("same-Pfaffian example: isotropic 3-subspaces", || {
        let a = count_totally_isotropic(&load(SAME_PFAFF_1)?, 3, limits)?;
        let b = count_totally_isotropic(&load(SAME_PFAFF_2)?, 3, limits)?;
        Ok((a >= 2 && b == 1, format!("{a} and {b}")))
    });
}

fn lemma_checks(checks: &mut Checks, only: Option<u64>, seed: u64, limits: &Limits) {
    let pick = |default: &[u64]| -> Vec<u64> {
        match only {
            Some(p) => vec![p],
            None => default.to_vec(),
        }
    };
    for p in pick(&primes_up_to(13)) {
        checks.add(
            format!("quadratic stabilizers have order 2(p^2-1) at p = {p}"),
            || {
                let f = Field::prime(p)?;
                let want = 2 * (p * p - 1) as usize;
                let quads = family_members(&f, 2, Family::Irreducible, limits)?;
                for q in &quads {
                    let got = stabilizer_gl(&f, q, limits)?.len();
                    if got != want {
                        return Ok((
                            false,
                            format!("({}) has stabilizer of order {got}", q.display(&f)),
                        ));
                    }
                }
                Ok((true, format!("{} quadratics, order {want}", quads.len())))
            },
        );
    }
    for p in pick(&[3, 5, 7, 11]).into_iter().filter(|&p| p != 2) {
        checks.eq(format!("dihedral orbit count at p = {p}"), || {
            Ok((
                dihedral_census(p, limits)?.orbit_count(),
                Some(((p - 1) / 2) as usize),
            ))
        });
    }
    for p in pick(&[5, 11]).into_iter().filter(|&p| p % 3 == 2) {
        checks.add(format!("Sylow 3-subgroup bijection at p = {p}"), || {
            let ok = sylow3_bijection_check(p, limits)?;
            Ok((ok, format!("bijective: {ok}")))
        });
    }
    let scans: Vec<(u64, usize, u32)> = [(2, 2, 2), (3, 2, 2), (5, 2, 2), (2, 2, 3)]
        .into_iter()
        .filter(|&(p, _, _)| only.is_none_or(|o| o == p))
        .collect();
    for (p, d, c) in scans {
        checks.add(
            format!("codimension-2 quotients, p = {p}, deg a = {d}, c = {c}"),
            || complement_scan(p, d, c, limits),
        );
    }
    let primes: Vec<u64> = pick(&[2, 3, 5]).into_iter().filter(|&p| p <= 5).collect();
    if !primes.is_empty() {
        checks.add("ses tests agree on constructed pencils", || {
            let mut count = 0;
            for &p in &primes {
                for pencil in constructed_pencils(p)? {
                    if is_ses_direct(&pencil, limits)? != is_ses_pfaffian(&pencil, limits)? {
                        return Ok((
                            false,
                            format!("disagreement at p = {p} on dim V = {}", pencil.dim_v()),
                        ));
                    }
                    count += 1;
                }
            }
            Ok((true, format!("{count} pencils")))
        });
        checks.add("ses tests agree on random pencils", || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = if only.is_some() { 100 } else { 500 };
            let mut ses = 0;
            for _ in 0..total {
                let p = primes[rng.gen_range(0..primes.len())];
                // Two alternating 2 x 2 matrices are proportional, so dim V = 2 is never full.
                let dim_v = rng.gen_range(3..=8);
                let pencil = random_pencil(&mut rng, &Field::prime(p)?, dim_v);
                let direct = is_ses_direct(&pencil, limits)?;
                if direct != is_ses_pfaffian(&pencil, limits)? {
                    return Ok((
                        false,
                        format!("disagreement at p = {p} on dim V = {}", pencil.dim_v()),
                    ));
                }
                ses += direct as u32;
            }
            Ok((true, format!("{total} pencils, {ses} semi-extraspecial")))
        });
    }
}

fn complement_scan(p: u64, d: usize, c: u32, limits: &Limits) -> ses_core::Result<(bool, String)> {
    let f = Field::prime(p)?;
    let a = enumerate_monic_irreducibles(&f, d)
        .into_iter()
        .next()
        .expect("irreducibles exist");
    let alg = LocalAlgebra::new(&f, &a, c)?;
    let n = alg.dim();
    let subs = Subspaces::new(&f, n, n - 2);
    let mut complements = 0u64;
    for s in subs.iter() {
        let s = SubspaceBasis::from_echelon(&f, &s);
        let cond = is_complement_of_socle(&alg, &s);
        if is_ses_direct(&quotient_pencil(&alg, &s)?, limits)? != (cond && d >= 2) {
            return Ok((false, format!("mismatch at S = {:?}", s.basis())));
        }
        complements += cond as u64;
    }
    // The socle has dimension d, so complements number p^(d * (n - 2)).
    let want = p.pow((d * (n - 2)) as u32);
    Ok((
        complements == want,
        format!("{complements} complements of {} subspaces", subs.len()),
    ))
}

/// Companion, Heisenberg, quotient, degenerate and genus-1 pencils with
/// two-dimensional codomain, plus direct sums of companion pencils.
pub fn constructed_pencils(p: u64) -> ses_core::Result<Vec<AltPencil>> {
    let f = Field::prime(p)?;
    let mut out = Vec::new();
    let quads = enumerate_monic_irreducibles(&f, 2);
    let linear = UniPoly::x();
    for c in 1..=2 {
        out.push(companion_pencil(&f, &quads[0], c)?);
        out.push(companion_pencil(&f, &linear, c + 1)?);
    }
    out.push(companion_pencil(
        &f,
        &enumerate_monic_irreducibles(&f, 3)[0],
        1,
    )?);
    out.push(heisenberg_pencil(&LocalAlgebra::new(&f, &quads[0], 1)?));
    let alg = LocalAlgebra::new(&f, &quads[0], 2)?;
    let one = alg.element(&UniPoly::one());
    let x = alg.element(&UniPoly::x());
    out.push(quotient_pencil(
        &alg,
        &SubspaceBasis::new(&f, 4, &[one.clone(), x])?,
    )?);
    let socle = alg.ideal_power(1);
    out.push(quotient_pencil(&alg, &socle)?);
    out.push(hflat_pencil(&f, 1)?);
    out.push(hflat_pencil(&f, 2)?);
    out.push(genus1_pencil(p * p, 1)?);
    out.push(direct_sum(&[
        companion_pencil(&f, &quads[0], 1)?,
        companion_pencil(&f, &quads[0], 1)?,
    ])?);
    if quads.len() > 1 {
        out.push(direct_sum(&[
            companion_pencil(&f, &quads[0], 1)?,
            companion_pencil(&f, &quads[1], 1)?,
        ])?);
    }
    Ok(out)
}

/// A uniformly random full nondegenerate pencil with two-dimensional
/// codomain, by rejection. Needs `dim_v >= 3`.
pub fn random_pencil(rng: &mut impl Rng, f: &Field, dim_v: usize) -> AltPencil {
    assert!(dim_v >= 3, "no full pencil with dim V < 3");
    loop {
        let mats = (0..2)
            .map(|_| {
                let mut m = Mat::zeros(dim_v, dim_v);
                for i in 0..dim_v {
                    for j in i + 1..dim_v {
                        let x = Scalar(rng.gen_range(0..f.order()));
                        m[(i, j)] = x;
                        m[(j, i)] = f.neg(x);
                    }
                }
                m
            })
            .collect();
        let pencil = AltPencil::new(f, dim_v, mats).expect("alternating by construction");
        if pencil.is_fully_nondegenerate() {
            return pencil;
        }
    }
}
