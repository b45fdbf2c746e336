//! The twelve acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ses_cli::verify::{load, GENUS_G, GENUS_H, SAME_PFAFF_1, SAME_PFAFF_2};
use ses_core::census::{
    classes_bruteforce, classes_closed, n_closed, STRATUM_DECOMPOSABLE, STRATUM_GENUS1,
    STRATUM_INDECOMPOSABLE,
};
use ses_core::constructions::{
    companion_pencil, genus1_pencil, heisenberg_pencil, hflat_pencil, is_complement_of_socle,
    quotient_pencil, LocalAlgebra, SubspaceBasis,
};
use ses_core::galois::{gaussian_binomial, Subspaces};
use ses_core::moebius::{
    count_orbits, dihedral_census, family_members, multiset_equivalent, stabilizer_gl,
    sylow3_bijection_check, Family, Group,
};
use ses_core::pencils::{
    centroid, count_totally_isotropic, direct_sum, is_ses_direct, is_ses_pfaffian, pfaffian,
};
use ses_core::polyring::enumerate_monic_irreducibles;
use ses_core::{AltPencil, Field, FormIdeal, HomForm, Limits, Mat, Scalar, UniPoly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn orbit_count_formulas() -> Outcome {
    let limits = Limits::default();
    let mut grid: Vec<(u64, u32)> = [2u64, 3, 5, 7, 11, 13]
        .iter()
        .flat_map(|&p| (2..=4).map(move |n| (p, n)))
        .collect();
    grid.extend([2u64, 3, 5, 7].map(|p| (p, 5)));
    for &(p, n) in &grid {
        let f = Field::prime(p).unwrap();
        let got = count_orbits(&f, n, Family::Irreducible, Group::GL, &limits)
            .map_err(|e| e.to_string())?;
        let want = n_closed(p, n).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("N({p},{n}): enumerated {got}, closed form {want}")
        })?;
    }
    // Spot values worked out by hand: quartics over F_3 fall into two
    // orbits, and over F_2 the single irreducible quintic orbit.
    ensure(n_closed(3, 4) == Ok(2) && n_closed(2, 5) == Ok(1), || {
        "frozen spot values".into()
    })?;
    Ok(format!("{} (p, n) pairs", grid.len()))
}

fn small_orders() -> Outcome {
    let limits = Limits::default();
    for p in [2u64, 3, 5, 7] {
        for e in [6, 8] {
            let r = classes_bruteforce(p, e, &limits).map_err(|e| e.to_string())?;
            ensure(r.brute_force == Some(1), || {
                format!("p = {p}, p^{e}: {:?}", r.brute_force)
            })?;
        }
    }
    Ok("exponents 6 and 8 give one class for p = 2, 3, 5, 7".into())
}

fn order_p10() -> Outcome {
    let limits = Limits::default();
    let mut totals = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let r = classes_bruteforce(p, 10, &limits).map_err(|e| e.to_string())?;
        let want = p + 3 - gcd(2, p);
        ensure(r.brute_force == Some(want), || {
            format!("p = {p}: {:?}, expected {want}", r.brute_force)
        })?;
        let n4 = n_closed(p, 4).unwrap();
        let n2 = n_closed(p, 2).unwrap();
        let strata = (
            r.stratum(STRATUM_INDECOMPOSABLE),
            r.stratum(STRATUM_DECOMPOSABLE),
            r.stratum(STRATUM_GENUS1),
        );
        let want_strata = (
            Some(n4 + n2),
            Some(if p == 2 { 0 } else { (p - 1) / 2 }),
            Some(1),
        );
        ensure(strata == want_strata, || {
            format!("p = {p}: strata {strata:?}, expected {want_strata:?}")
        })?;
        totals.push(want);
    }
    ensure(totals == [3, 5, 7, 9], || format!("totals {totals:?}"))?;
    Ok(format!("totals {totals:?}"))
}

fn order_p12() -> Outcome {
    let limits = Limits::default();
    let mut totals = Vec::new();
    for p in [2u64, 3, 5] {
        let r = classes_bruteforce(p, 12, &limits).map_err(|e| e.to_string())?;
        let closed = classes_closed(p, 12).unwrap();
        ensure(r.brute_force == Some(closed), || {
            format!("p = {p}: {:?} vs {closed}", r.brute_force)
        })?;
        let pairs = if p % 3 == 2 {
            (p * p - p + 4) / 6
        } else {
            (p * p - p) / 6
        };
        let strata = (
            r.stratum(STRATUM_INDECOMPOSABLE),
            r.stratum(STRATUM_DECOMPOSABLE),
            r.stratum(STRATUM_GENUS1),
        );
        let want = (Some(n_closed(p, 5).unwrap()), Some(pairs), Some(0));
        ensure(strata == want, || {
            format!("p = {p}: strata {strata:?}, expected {want:?}")
        })?;
        totals.push(closed);
    }
    ensure(totals == [2, 3, 10], || format!("totals {totals:?}"))?;
    Ok(format!("totals {totals:?}"))
}

fn quadratic_stabilizers() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        let f = Field::prime(p).unwrap();
        for q in family_members(&f, 2, Family::Irreducible, &limits).unwrap() {
            let order = stabilizer_gl(&f, &q, &limits).unwrap().len() as u64;
            ensure(order == 2 * (p * p - 1), || {
                format!("({}) over F_{p}: {order}", q.display(&f))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} quadratics"))
}

fn dihedral_orbits() -> Outcome {
    let limits = Limits::default();
    for p in [3u64, 5, 7, 11] {
        let c = dihedral_census(p, &limits).map_err(|e| e.to_string())?;
        let want = ((p - 1) / 2) as usize;
        ensure(c.orbit_count() == Some(want), || {
            format!("p = {p}: {:?}", c.orbit_counts)
        })?;
    }
    Ok("(p-1)/2 orbits for p = 3, 5, 7, 11".into())
}

fn sylow_bijection() -> Outcome {
    let limits = Limits::default();
    for p in [5u64, 11] {
        ensure(sylow3_bijection_check(p, &limits) == Ok(true), || {
            format!("p = {p}")
        })?;
    }
    Ok("p = 5, 11".into())
}

fn quotient_scan() -> Outcome {
    let limits = Limits::default();
    let mut summary = Vec::new();
    for (p, d, c) in [(2u64, 2usize, 2u32), (3, 2, 2), (5, 2, 2), (2, 2, 3)] {
        let f = Field::prime(p).unwrap();
        let a = enumerate_monic_irreducibles(&f, d).remove(0);
        let alg = LocalAlgebra::new(&f, &a, c).unwrap();
        let n = alg.dim();
        let subs = Subspaces::new(&f, n, n - 2);
        let mut complements = 0u64;
        for s in subs.iter() {
            let s = SubspaceBasis::from_echelon(&f, &s);
            let cond = is_complement_of_socle(&alg, &s);
            let ses = is_ses_direct(&quotient_pencil(&alg, &s).unwrap(), &limits).unwrap();
            ensure(ses == cond, || {
                format!("p = {p}, c = {c}: S = {:?}", s.basis())
            })?;
            complements += cond as u64;
        }
        // Complements of a d-dimensional subspace among (n-2)-dimensional ones.
        let want = p.pow((d * (n - 2)) as u32);
        ensure(complements == want, || {
            format!("p = {p}, c = {c}: {complements} complements, expected {want}")
        })?;
        if c == 2 {
            ensure(complements == p.pow(4), || "p^4 complements".into())?;
        }
        summary.push(format!("{complements}/{}", subs.len()));
    }
    Ok(summary.join(", "))
}

fn random_pencil(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> AltPencil {
    loop {
        let mats = (0..2)
            .map(|_| {
                let mut m = Mat::zeros(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let x = Scalar(rng.gen_range(0..f.order()));
                        m[(i, j)] = x;
                        m[(j, i)] = f.neg(x);
                    }
                }
                m
            })
            .collect();
        let p = AltPencil::new(f, n, mats).unwrap();
        if p.is_fully_nondegenerate() {
            return p;
        }
    }
}

fn constructed(p: u64) -> Vec<AltPencil> {
    let f = Field::prime(p).unwrap();
    let mut out = Vec::new();
    for d in 1..=3 {
        for a in enumerate_monic_irreducibles(&f, d).into_iter().take(2) {
            for c in 1..=(4 / d as u32) {
                out.push(companion_pencil(&f, &a, c).unwrap());
            }
        }
    }
    let quads = enumerate_monic_irreducibles(&f, 2);
    out.push(heisenberg_pencil(
        &LocalAlgebra::new(&f, &quads[0], 1).unwrap(),
    ));
    let alg = LocalAlgebra::new(&f, &quads[0], 2).unwrap();
    for s in Subspaces::new(&f, 4, 2).iter().take(12) {
        out.push(quotient_pencil(&alg, &SubspaceBasis::from_echelon(&f, &s)).unwrap());
    }
    for m in 1..=3 {
        out.push(hflat_pencil(&f, m).unwrap());
    }
    for n in 1..=2 {
        out.push(genus1_pencil(p * p, n).unwrap());
    }
    let x = UniPoly::x();
    let parts = [
        companion_pencil(&f, &quads[0], 1).unwrap(),
        companion_pencil(&f, &x, 2).unwrap(),
        companion_pencil(&f, &enumerate_monic_irreducibles(&f, 3)[0], 1).unwrap(),
    ];
    for i in 0..parts.len() {
        for j in i..parts.len() {
            out.push(direct_sum(&[parts[i].clone(), parts[j].clone()]).unwrap());
        }
    }
    // Stay within the default enumeration cap on points of V.
    out.retain(|pencil| {
        (p as u128).pow(pencil.dim_v() as u32) <= Limits::default().max_enum as u128
    });
    out
}

fn ses_tests_agree() -> Outcome {
    let limits = Limits::default();
    let mut built = 0;
    for p in [2u64, 3, 5] {
        for pencil in constructed(p) {
            let (d, pf) = (
                is_ses_direct(&pencil, &limits).unwrap(),
                is_ses_pfaffian(&pencil, &limits).unwrap(),
            );
            ensure(d == pf, || {
                format!(
                    "constructed pencil over F_{p} with dim V = {}",
                    pencil.dim_v()
                )
            })?;
            built += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    let fields = [2u64, 3, 5].map(|p| Field::prime(p).unwrap());
    let mut ses = 0;
    for i in 0..500 {
        let f = &fields[i % 3];
        let n = rng.gen_range(3..=8);
        let pencil = random_pencil(&mut rng, f, n);
        let d = is_ses_direct(&pencil, &limits).unwrap();
        ensure(d == is_ses_pfaffian(&pencil, &limits).unwrap(), || {
            format!(
                "random pencil {i} over F_{} with dim V = {n}",
                f.characteristic()
            )
        })?;
        ses += d as u32;
    }
    Ok(format!(
        "{built} constructed, 500 random ({ses} semi-extraspecial)"
    ))
}

fn genus_example() -> Outcome {
    let limits = Limits::default();
    let f = Field::prime(5).unwrap();
    let square = HomForm::binary(&f, &[Scalar(1), Scalar(0), Scalar(2)]).pow(&f, 2);
    let h = load(GENUS_H).unwrap();
    let g = load(GENUS_G).unwrap();
    ensure(pfaffian(&h).unwrap() == square, || "Pf(H)".into())?;
    let orders = (
        centroid(&g, &limits).unwrap().field_order,
        centroid(&h, &limits).unwrap().field_order,
    );
    ensure(orders == (Some(25), Some(5)), || {
        format!("centroid orders {orders:?}")
    })?;
    let q = FormIdeal::new(&f, vec![Scalar(1), Scalar(0), Scalar(2)]).unwrap();
    let q2 = FormIdeal::from_form(&f, &square).unwrap();
    let eq = multiset_equivalent(&f, &[q.clone(), q], &[q2], Group::GL, &limits).unwrap();
    ensure(eq.is_none(), || "multisets reported equivalent".into())?;
    Ok("Pf(H) = (X^2+2Y^2)^2, centroids 25 and 5, multisets inequivalent".into())
}

fn same_pfaffian_example() -> Outcome {
    let limits = Limits::default();
    let f = Field::prime(3).unwrap();
    let want = HomForm::parse(&f, "x^3+x^2y+xy^2+2xz^2+2y^3+2y^2z+z^3", 3, true)
        .unwrap()
        .value;
    let (a, b) = (load(SAME_PFAFF_1).unwrap(), load(SAME_PFAFF_2).unwrap());
    ensure(
        pfaffian(&a).unwrap() == want && pfaffian(&b).unwrap() == want,
        || "Pfaffians differ".into(),
    )?;
    ensure(gaussian_binomial(3, 6, 3) == 33_880, || {
        "subspace count".into()
    })?;
    let (ca, cb) = (
        count_totally_isotropic(&a, 3, &limits).unwrap(),
        count_totally_isotropic(&b, 3, &limits).unwrap(),
    );
    ensure(ca >= 2 && cb == 1, || {
        format!("isotropic counts {ca} and {cb}")
    })?;
    Ok(format!("isotropic 3-subspaces {ca} and {cb} among 33880"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    std::fs::write(&h, GENUS_H).unwrap();
    let same = dir.path().join("s.json");
    std::fs::write(&same, SAME_PFAFF_1).unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "census",
            "--p",
            "2,3,5",
            "--exp",
            "6,8,10,12",
            "--format",
            "json",
        ],
        vec![
            "census",
            "--p",
            "2,3,5,7,11",
            "--exp",
            "10,12",
            "--format",
            "csv",
        ],
        vec!["orbits", "--p", "5", "--n", "4", "--family", "all"],
        vec![
            "orbits", "--p", "2", "--k", "2", "--n", "3", "--group", "gammal", "--format", "json",
        ],
        vec!["irreducibles", "--p", "7", "--n", "3", "--format", "csv"],
        vec![
            "stabilizer",
            "--p",
            "7",
            "--poly",
            "x^3+3",
            "--format",
            "json",
        ],
        vec!["pfaffian", h.to_str().unwrap(), "--format", "json"],
        vec!["pfaffian", same.to_str().unwrap(), "--isotropic", "3"],
        vec![
            "construct",
            "quotient",
            "--p",
            "5",
            "--poly",
            "x^2+2",
            "--c",
            "2",
            "--subspace",
            "1;x",
        ],
        vec!["verify", "--suite", "examples", "--format", "json"],
        vec!["verify", "--suite", "lemmas", "--p", "3"],
    ];
    for args in &commands {
        let outputs: Vec<_> = [1, 3]
            .iter()
            .map(|w| {
                Command::new(env!("CARGO_BIN_EXE_ses"))
                    .args(args)
                    .args(["--workers", &w.to_string()])
                    .output()
                    .unwrap()
            })
            .collect();
        ensure(outputs[0].status.success(), || format!("{args:?} failed"))?;
        ensure(
            outputs[0].stdout == outputs[1].stdout && outputs[0].status == outputs[1].status,
            || format!("{args:?} differs between 1 and 3 workers"),
        )?;
    }
    Ok(format!(
        "{} commands byte-identical at 1 and 3 workers",
        commands.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 12] = [
        ("orbit-count formulas", orbit_count_formulas),
        ("one class at orders p^6 and p^8", small_orders),
        ("class count at order p^10", order_p10),
        ("class count at order p^12", order_p12),
        (
            "quadratic stabilizers have order 2(p^2-1)",
            quadratic_stabilizers,
        ),
        ("dihedral conjugation orbits", dihedral_orbits),
        ("Sylow 3-subgroup bijection", sylow_bijection),
        (
            "semi-extraspecial quotients are the socle complements",
            quotient_scan,
        ),
        ("direct and Pfaffian ses tests agree", ses_tests_agree),
        ("genus example", genus_example),
        ("same-Pfaffian example", same_pfaffian_example),
        ("worker count does not change output", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
