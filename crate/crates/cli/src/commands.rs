use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use ses_core::census::{class_count_report, ClassCountReport};
use ses_core::constructions::{
    companion_pencil, field_of_order, genus1_pencil, heisenberg_pencil, hflat_pencil,
    quotient_pencil, LocalAlgebra, SubspaceBasis,
};
use ses_core::moebius::{
    group_order, orbits_of_family, stabilizer_gl, stabilizer_pgl, Family, Group,
};
use ses_core::pencils::{
    centroid, count_totally_isotropic, is_ses_direct, is_ses_pfaffian, pfaffian, PencilFile,
};
use ses_core::polyring::enumerate_monic_irreducibles_capped;
use ses_core::{AltPencil, Field, FormIdeal, HomForm, Limits, UniPoly};

use crate::args::{Cli, Command, ConstructKind, FamilyArg, GroupArg};
use crate::report::{render, Outcome, Report, SCHEMA_VERSION};
use crate::{verify, EXIT_OK, EXIT_VERIFY};

pub(crate) fn dispatch(cli: &Cli, limits: &Limits) -> anyhow::Result<Outcome> {
    let fmt = cli.global.format;
    let mut ctx = Ctx {
        strict: cli.global.strict,
        warnings: Vec::new(),
    };
    let (body, code) = match &cli.command {
        Command::Irreducibles { p, k, n } => {
            (render(&irreducibles(*p, *k, *n, limits)?, fmt)?, EXIT_OK)
        }
        Command::Orbits {
            p,
            k,
            n,
            family,
            group,
        } => (
            render(&orbits(*p, *k, *n, *family, *group, limits)?, fmt)?,
            EXIT_OK,
        ),
        Command::Stabilizer { p, k, poly } => (
            render(&stabilizer(&mut ctx, *p, *k, poly, limits)?, fmt)?,
            EXIT_OK,
        ),
        Command::Pfaffian { file, isotropic } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", file.display()))?;
            (
                render(&pfaffian_report(&text, *isotropic, limits)?, fmt)?,
                EXIT_OK,
            )
        }
        // Pencil files are JSON whatever the format flag says.
        Command::Construct { kind } => (
            PencilFile::from_pencil(&construct(&mut ctx, kind)?).to_json(),
            EXIT_OK,
        ),
        Command::Census { p, exp } => (render(&census(p, exp, limits)?, fmt)?, EXIT_OK),
        Command::Verify { suite, p, max_p } => {
            let report = verify::run(*suite, *p, *max_p, cli.global.seed, limits)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY };
            (render(&report, fmt)?, code)
        }
    };
    Ok(Outcome {
        body,
        code,
        warnings: ctx.warnings,
    })
}

struct Ctx {
    strict: bool,
    warnings: Vec<String>,
}

impl Ctx {
    fn poly(&mut self, f: &Field, s: &str) -> anyhow::Result<UniPoly> {
        let parsed = UniPoly::parse(f, s, self.strict)?;
        if parsed.reduced {
            self.warnings.push(format!(
                "coefficients of {s:?} were reduced mod {}",
                f.characteristic()
            ));
        }
        Ok(parsed.value)
    }

    fn form(&mut self, f: &Field, s: &str) -> anyhow::Result<HomForm> {
        let parsed = HomForm::parse(f, s, 2, self.strict)?;
        if parsed.reduced {
            self.warnings.push(format!(
                "coefficients of {s:?} were reduced mod {}",
                f.characteristic()
            ));
        }
        Ok(parsed.value)
    }
}

/// `F_(p^k)` with `p` checked to be prime first, so `--p 4` fails as "not prime".
fn field(p: u64, k: u32, limits: &Limits) -> anyhow::Result<Field> {
    let base = Field::prime(p)?;
    if k == 1 {
        return Ok(base);
    }
    let q = p.checked_pow(k).unwrap_or(u64::MAX);
    if q > limits.max_field_order {
        return Err(ses_core::Error::FieldTooLarge {
            order: q,
            cap: limits.max_field_order,
        }
        .into());
    }
    Ok(field_of_order(q)?)
}

fn field_label(p: u64, k: u32) -> String {
    if k == 1 {
        format!("F_{p}")
    } else {
        format!("F_{p}^{k}")
    }
}

#[derive(Serialize)]
struct IrreduciblesReport {
    schema_version: u32,
    p: u64,
    k: u32,
    n: usize,
    count: usize,
    polynomials: Vec<String>,
}

impl Report for IrreduciblesReport {
    fn text(&self) -> String {
        let mut s = format!(
            "{} monic irreducible polynomials of degree {} over {}\n",
            self.count,
            self.n,
            field_label(self.p, self.k)
        );
        for poly in &self.polynomials {
            let _ = writeln!(s, "  {poly}");
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["index", "polynomial"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.polynomials
            .iter()
            .enumerate()
            .map(|(i, p)| vec![i.to_string(), p.clone()])
            .collect()
    }
}

fn irreducibles(p: u64, k: u32, n: usize, limits: &Limits) -> anyhow::Result<IrreduciblesReport> {
    let f = field(p, k, limits)?;
    let polys = enumerate_monic_irreducibles_capped(&f, n, limits)?;
    Ok(IrreduciblesReport {
        schema_version: SCHEMA_VERSION,
        p,
        k,
        n,
        count: polys.len(),
        polynomials: polys.iter().map(|a| a.display(&f, "x")).collect(),
    })
}

#[derive(Serialize)]
struct OrbitRow {
    representative: String,
    size: usize,
}

#[derive(Serialize)]
struct OrbitsReport {
    schema_version: u32,
    p: u64,
    k: u32,
    n: u32,
    family: &'static str,
    group: &'static str,
    orbit_count: usize,
    orbits: Vec<OrbitRow>,
}

impl Report for OrbitsReport {
    fn text(&self) -> String {
        let mut s = format!(
            "{} orbits of {}(2,{}) on {} forms of degree {}\n",
            self.orbit_count,
            self.group,
            field_label(self.p, self.k),
            self.family,
            self.n
        );
        for o in &self.orbits {
            let _ = writeln!(s, "  ({})  size {}", o.representative, o.size);
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["representative", "size"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.orbits
            .iter()
            .map(|o| vec![o.representative.clone(), o.size.to_string()])
            .collect()
    }
}

fn orbits(
    p: u64,
    k: u32,
    n: u32,
    family: FamilyArg,
    group: GroupArg,
    limits: &Limits,
) -> anyhow::Result<OrbitsReport> {
    let f = field(p, k, limits)?;
    let (fam, fam_label) = match family {
        FamilyArg::Irreducible => (Family::Irreducible, "irreducible"),
        FamilyArg::Primary => (Family::PrimaryNoLinearBase, "primary"),
        FamilyArg::All => (Family::All, "all"),
    };
    let (grp, grp_label) = match group {
        GroupArg::Gl => (Group::GL, "GL"),
        GroupArg::Gammal => (Group::GammaL, "GammaL"),
    };
    let orbits = orbits_of_family(&f, n, fam, grp, limits)?;
    Ok(OrbitsReport {
        schema_version: SCHEMA_VERSION,
        p,
        k,
        n,
        family: fam_label,
        group: grp_label,
        orbit_count: orbits.len(),
        orbits: orbits
            .iter()
            .map(|o| OrbitRow {
                representative: o[0].display(&f),
                size: o.len(),
            })
            .collect(),
    })
}

#[derive(Serialize)]
struct StabilizerReport {
    schema_version: u32,
    p: u64,
    k: u32,
    form: String,
    gl_order: usize,
    pgl_order: usize,
    orbit_size: u128,
}

impl Report for StabilizerReport {
    fn text(&self) -> String {
        format!(
            "stabilizer of ({}) over {}: GL order {}, PGL order {}, orbit size {}\n",
            self.form,
            field_label(self.p, self.k),
            self.gl_order,
            self.pgl_order,
            self.orbit_size
        )
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["form", "gl_order", "pgl_order", "orbit_size"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.form.clone(),
            self.gl_order.to_string(),
            self.pgl_order.to_string(),
            self.orbit_size.to_string(),
        ]]
    }
}

fn stabilizer(
    ctx: &mut Ctx,
    p: u64,
    k: u32,
    poly: &str,
    limits: &Limits,
) -> anyhow::Result<StabilizerReport> {
    let f = field(p, k, limits)?;
    // Uppercase variables or a `y` mean a binary form; otherwise a polynomial in x.
    let ideal = if poly.chars().any(|c| matches!(c, 'X' | 'Y' | 'y')) {
        FormIdeal::from_form(&f, &ctx.form(&f, poly)?)?
    } else {
        FormIdeal::from_poly(&f, &ctx.poly(&f, poly)?)?
    };
    let gl = stabilizer_gl(&f, &ideal, limits)?.len();
    let pgl = stabilizer_pgl(&f, &ideal, limits)?.order();
    Ok(StabilizerReport {
        schema_version: SCHEMA_VERSION,
        p,
        k,
        form: ideal.display(&f),
        gl_order: gl,
        pgl_order: pgl,
        orbit_size: group_order(&f, Group::GL) / gl as u128,
    })
}

#[derive(Serialize)]
pub(crate) struct IsotropicCount {
    dim: usize,
    count: u64,
}

#[derive(Serialize)]
pub(crate) struct PfaffianReport {
    schema_version: u32,
    p: u64,
    k: u32,
    dim_v: usize,
    dim_w: usize,
    pfaffian: String,
    ses_direct: bool,
    ses_pfaffian: bool,
    fully_nondegenerate: bool,
    /// Order of the centroid when it is a field.
    centroid_order: Option<u128>,
    centroid_dim: Option<usize>,
    genus: Option<usize>,
    isotropic: Option<IsotropicCount>,
}

impl Report for PfaffianReport {
    fn text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
        let mut s = format!(
            "pencil over {} with dim V = {}, dim W = {}\n",
            field_label(self.p, self.k),
            self.dim_v,
            self.dim_w
        );
        let _ = writeln!(s, "Pfaffian: {}", self.pfaffian);
        let _ = writeln!(s, "ses (direct): {}", self.ses_direct);
        let _ = writeln!(s, "ses (Pfaffian): {}", self.ses_pfaffian);
        let _ = writeln!(s, "fully nondegenerate: {}", self.fully_nondegenerate);
        let _ = writeln!(
            s,
            "centroid dimension: {}",
            opt(self.centroid_dim.map(|d| d.to_string()))
        );
        let _ = writeln!(
            s,
            "centroid field order: {}",
            opt(self.centroid_order.map(|o| o.to_string()))
        );
        let _ = writeln!(s, "genus: {}", opt(self.genus.map(|g| g.to_string())));
        if let Some(iso) = &self.isotropic {
            let _ = writeln!(s, "totally isotropic {}-subspaces: {}", iso.dim, iso.count);
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "p",
            "k",
            "dim_v",
            "dim_w",
            "pfaffian",
            "ses_direct",
            "ses_pfaffian",
            "centroid_order",
            "genus",
            "isotropic_dim",
            "isotropic_count",
        ]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![vec![
            self.p.to_string(),
            self.k.to_string(),
            self.dim_v.to_string(),
            self.dim_w.to_string(),
            self.pfaffian.clone(),
            self.ses_direct.to_string(),
            self.ses_pfaffian.to_string(),
            opt(self.centroid_order.map(|o| o.to_string())),
            opt(self.genus.map(|g| g.to_string())),
            opt(self.isotropic.as_ref().map(|i| i.dim.to_string())),
            opt(self.isotropic.as_ref().map(|i| i.count.to_string())),
        ]]
    }
}

pub(crate) fn pfaffian_report(
    json: &str,
    isotropic: Option<usize>,
    limits: &Limits,
) -> anyhow::Result<PfaffianReport> {
    let file = PencilFile::from_json(json)?;
    let pencil = file.to_pencil()?;
    let f = pencil.field();
    let pf = pfaffian(&pencil)?;
    let nondeg = pencil.is_fully_nondegenerate();
    let cent = if nondeg {
        Some(centroid(&pencil, limits)?)
    } else {
        None
    };
    let genus = cent
        .as_ref()
        .and_then(|c| c.is_field().then(|| pencil.dim_w() / c.dim()));
    let isotropic = match isotropic {
        Some(dim) => Some(IsotropicCount {
            dim,
            count: count_totally_isotropic(&pencil, dim, limits)?,
        }),
        None => None,
    };
    Ok(PfaffianReport {
        schema_version: SCHEMA_VERSION,
        p: file.p,
        k: file.k,
        dim_v: pencil.dim_v(),
        dim_w: pencil.dim_w(),
        pfaffian: pf.display(f),
        ses_direct: is_ses_direct(&pencil, limits)?,
        ses_pfaffian: is_ses_pfaffian(&pencil, limits)?,
        fully_nondegenerate: nondeg,
        centroid_order: cent.as_ref().and_then(|c| c.field_order),
        centroid_dim: cent.as_ref().map(|c| c.dim()),
        genus,
        isotropic,
    })
}

fn construct(ctx: &mut Ctx, kind: &ConstructKind) -> anyhow::Result<AltPencil> {
    Ok(match kind {
        ConstructKind::Heisenberg { p, poly, c } => {
            let f = Field::prime(*p)?;
            let a = ctx.poly(&f, poly)?;
            heisenberg_pencil(&LocalAlgebra::new(&f, &a, *c)?)
        }
        ConstructKind::Quotient {
            p,
            poly,
            c,
            subspace,
        } => {
            let f = Field::prime(*p)?;
            let a = ctx.poly(&f, poly)?;
            let alg = LocalAlgebra::new(&f, &a, *c)?;
            let mut vectors = Vec::new();
            for part in subspace.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                vectors.push(alg.element(&ctx.poly(&f, part)?));
            }
            quotient_pencil(&alg, &SubspaceBasis::new(&f, alg.dim(), &vectors)?)?
        }
        ConstructKind::Hflat { p, m } => hflat_pencil(&Field::prime(*p)?, *m)?,
        ConstructKind::Companion { p, poly, c } => {
            let f = Field::prime(*p)?;
            let a = ctx.poly(&f, poly)?;
            companion_pencil(&f, &a, *c)?
        }
        ConstructKind::Genus1 { q, n } => genus1_pencil(*q, *n)?,
    })
}

#[derive(Serialize)]
struct CensusReport {
    schema_version: u32,
    reports: Vec<ClassCountReport>,
}

impl Report for CensusReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.reports {
            let num = |v: Option<u64>| v.map_or_else(|| "skipped".to_string(), |v| v.to_string());
            let _ = write!(
                s,
                "p = {}, |G| = p^{}: closed form {}, brute force {}",
                r.p,
                r.order_exponent,
                num(r.closed_form),
                num(r.brute_force)
            );
            if !r.breakdown.is_empty() {
                let parts: Vec<String> = r
                    .breakdown
                    .iter()
                    .map(|st| format!("{} {}", st.label, st.count))
                    .collect();
                let _ = write!(s, " ({})", parts.join(", "));
            }
            s.push('\n');
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "order_exponent", "stratum", "count", "method"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for r in &self.reports {
            let row = |stratum: &str, count: Option<u64>, method: &str| {
                vec![
                    r.p.to_string(),
                    r.order_exponent.to_string(),
                    stratum.to_string(),
                    count.map_or_else(|| "skipped".to_string(), |c| c.to_string()),
                    method.to_string(),
                ]
            };
            for st in &r.breakdown {
                rows.push(row(&st.label, Some(st.count), "brute_force"));
            }
            rows.push(row("total", r.closed_form, "closed_form"));
            rows.push(row("total", r.brute_force, "brute_force"));
        }
        rows
    }
}

fn census(primes: &[u64], exps: &[u32], limits: &Limits) -> anyhow::Result<CensusReport> {
    let jobs: Vec<(u64, u32)> = primes
        .iter()
        .flat_map(|&p| exps.iter().map(move |&e| (p, e)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(p, e)| class_count_report(p, e, limits))
        .collect::<ses_core::Result<Vec<_>>>()?;
    Ok(CensusReport {
        schema_version: SCHEMA_VERSION,
        reports,
    })
}
