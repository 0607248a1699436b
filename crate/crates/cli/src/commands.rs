use std::ops::RangeInclusive;
use std::path::Path;

use detrep_core::audit::{h0_p2, linear_from, Family, DEFAULT_AUT_DIM};
use detrep_core::biproj::QuadSections;
use detrep_core::detrep::{
    column_reduce_normalize, det_cofactor, det_fraction_free, parse_matrix_file,
};
use detrep_core::ideal::{default_k_max, monomial_in_image, remark_monomials, remark_pair};
use detrep_core::random::{random_triple, trial_rng};
use detrep_core::{
    containment_degree, det_degree, det_poly, diagram_crosscheck, dpsi_report, inequality_audit,
    monomial_cover_check, select_e_d, smoothness_check, tangent_map, u_generators, wedge_curve,
    BundleSection, BundleSpec, Error, HomPoly,
};
use thiserror::Error as ThisError;

use crate::report::RunReport;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Splits `"x; 2*y; 3*z"` (or comma separated) into components.
pub fn split_components(text: &str) -> Vec<&str> {
    text.split([';', ',']).map(str::trim).collect()
}

fn p(s: &str) -> HomPoly {
    HomPoly::parse(s, None).expect("literal parses")
}

fn tangent_section(
    report: &mut RunReport,
    v1: &BundleSection,
    v2: &BundleSection,
    expect: bool,
) -> Result<()> {
    let curve = wedge_curve(&[v1.clone(), v2.clone()])?;
    report.output("curve", &curve);
    let gpli = !curve.is_zero();
    report.verdict("gpli", true, gpli);
    if !gpli {
        return Ok(());
    }
    let t = tangent_map(v1, v2)?;
    report
        .dim("hom_dim", t.hom_dim)
        .dim("target_dim", t.target_dim)
        .dim("rank", t.rank)
        .dim("augmented_rank", t.augmented_rank);
    report.verdict("tangent_surjective", expect, t.surjective);
    Ok(())
}

fn verify_example(
    name: &str,
    bundle: &str,
    home: BundleSpec,
    sections: [&[&str]; 2],
    curve: &str,
    k_max: u32,
) -> Result<RunReport> {
    let spec: BundleSpec = bundle.parse()?;
    if spec != home {
        return usage(format!("{name} lives on {home}, not {spec}"));
    }
    let mut r = RunReport::new(name);
    r.input("bundle", spec);
    let v1 = BundleSection::parse(spec, sections[0])?;
    let v2 = BundleSection::parse(spec, sections[1])?;
    r.input("v1", sections[0].join("; "))
        .input("v2", sections[1].join("; "));
    let f = wedge_curve(&[v1.clone(), v2.clone()])?;
    r.verdict("curve_matches", true, f == p(curve));
    r.verdict("smooth", true, smoothness_check(&f, k_max)?.certified);
    tangent_section(&mut r, &v1, &v2, true)?;
    Ok(r)
}

pub fn verify_example1(bundle: &str) -> Result<RunReport> {
    verify_example(
        "verify-example1",
        bundle,
        BundleSpec::t(0)?,
        [&["x", "2*y", "3*z"], &["y", "z", "x"]],
        "x^2*y - 2*x*z^2 + y^2*z",
        9,
    )
}

pub fn verify_example2(bundle: &str) -> Result<RunReport> {
    verify_example(
        "verify-example2",
        bundle,
        BundleSpec::n(0)?,
        [&["0", "1", "y"], &["1", "0", "x"]],
        "x^2 + y^2 - z^2",
        6,
    )
}

pub fn tangent(family: &str, n: i64, v1: &str, v2: &str, expect: bool) -> Result<RunReport> {
    let spec = BundleSpec::new(family.parse()?, n)?;
    if spec.rank() != 2 {
        return usage(format!(
            "the tangent map needs a rank-2 bundle, {spec} has rank {}",
            spec.rank()
        ));
    }
    let mut r = RunReport::new("tangent");
    r.input("bundle", spec).input("v1", v1).input("v2", v2);
    let s1 = BundleSection::parse(spec, &split_components(v1))?;
    let s2 = BundleSection::parse(spec, &split_components(v2))?;
    tangent_section(&mut r, &s1, &s2, expect)?;
    Ok(r)
}

fn parse_triple(text: &str) -> Result<[HomPoly; 3]> {
    let parts = split_components(text);
    if parts.len() != 3 {
        return usage(format!("expected three forms, got {}", parts.len()));
    }
    let polys: Vec<HomPoly> = parts
        .iter()
        .map(|s| HomPoly::parse(s, None))
        .collect::<std::result::Result<_, _>>()?;
    Ok(polys.try_into().expect("three forms"))
}

pub struct MultArgs<'a> {
    pub n: Option<u32>,
    pub seed: u64,
    pub trials: u32,
    pub f: Option<&'a str>,
    pub g: Option<&'a str>,
    pub remark: bool,
    pub expect: Option<bool>,
}

pub fn mult(args: MultArgs<'_>) -> Result<RunReport> {
    let mut r = RunReport::new("mult");
    let pairs: Vec<([HomPoly; 3], [HomPoly; 3])> = match (args.f, args.g, args.remark) {
        (Some(f), Some(g), false) => {
            let (f, g) = (parse_triple(f)?, parse_triple(g)?);
            let d = f[0].degree();
            if d == 0 {
                return usage("forms must have positive degree n + 1");
            }
            if args.n.is_some_and(|n| n + 1 != d) {
                return usage(format!("--n disagrees with the degree {d} of the forms"));
            }
            r.input("f", args.f.unwrap_or_default())
                .input("g", args.g.unwrap_or_default());
            vec![(f, g)]
        }
        (None, None, true) => {
            let Some(n) = args.n else {
                return usage("--remark needs --n");
            };
            r.input("n", n).input("pair", "remark");
            vec![remark_pair(n)]
        }
        (None, None, false) => {
            let Some(n) = args.n else {
                return usage("give --n (random trials), --f and --g, or --remark");
            };
            if args.trials == 0 {
                return usage("--trials must be positive");
            }
            r.input("n", n).input("trials", args.trials);
            r.seed = Some(args.seed);
            (0..args.trials as u64)
                .map(|t| {
                    let mut rng = trial_rng(args.seed, t);
                    (
                        random_triple(&mut rng, n + 1),
                        random_triple(&mut rng, n + 1),
                    )
                })
                .collect()
        }
        _ => return usage("--f and --g go together and exclude --remark"),
    };
    let expect = args.expect.unwrap_or(!args.remark);
    let n = pairs[0].0[0].degree() - 1;
    r.dim("domain_dim", 6 * h0_p2(n as i64 + 1))
        .dim("target_dim", h0_p2(2 * n as i64 + 3));

    let mut surjective = 0;
    let mut agree = 0;
    for (f, g) in &pairs {
        let c = diagram_crosscheck(f, g)?;
        surjective += c.mult_surjective as u32;
        agree += c.agree as u32;
        if pairs.len() == 1 {
            r.dim("mult_rank", c.mult_rank);
            if let Some(a) = c.tangent_augmented_rank {
                r.dim("tangent_augmented_rank", a);
            }
            r.output("gpli", c.gpli);
        }
    }
    let total = pairs.len() as u32;
    r.output("surjective_trials", format!("{surjective}/{total}"));
    r.verdict(
        "mult_surjective",
        expect,
        if expect {
            surjective == total
        } else {
            surjective > 0
        },
    );
    r.verdict("diagram_agrees", true, agree == total);

    if args.remark {
        if let Some(monos) = remark_monomials(n) {
            let u = u_generators(&pairs[0].0, &pairs[0].1)?;
            for m in monos {
                let member = monomial_in_image(&u, m)?.is_member();
                r.output(
                    &HomPoly::monomial(m).to_string(),
                    if member { "in image" } else { "not in image" },
                );
            }
        }
    }
    Ok(r)
}

pub fn p1p1(a: u32, b: u32, m: u32) -> Result<RunReport> {
    if a == 0 || b == 0 || m == 0 {
        return usage(format!("a, b, m must be positive, got ({a}, {b}, {m})"));
    }
    let mut r = RunReport::new("p1p1");
    r.input("a", a).input("b", b).input("m", m);
    let cover = monomial_cover_check(a, b, m)?;
    let d = dpsi_report(&QuadSections::witness(a, b, m)?);
    r.dim("domain_dim", d.domain_dim)
        .dim("target_dim", d.target_dim)
        .dim("rank", d.rank);
    r.verdict("monomial_cover", true, cover)
        .verdict("dpsi_surjective", true, d.surjective)
        .verdict("checks_agree", true, cover == d.surjective);
    Ok(r)
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_range(text: &str) -> Result<RangeInclusive<i64>> {
    let bad = || CliError::Usage(format!("expected a range like 0..10, got `{text}`"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub fn audit(
    family: &str,
    params: Option<u32>,
    m_range: &str,
    g: Option<i64>,
    degree: Option<i64>,
) -> Result<RunReport> {
    let family = match (family, params) {
        ("M", Some(k)) => Family::M { k },
        ("E", Some(r)) => Family::E { r },
        ("M" | "E", None) => return usage(format!("family {family} needs --params")),
        (other, None) => other.parse()?,
        (other, Some(_)) => return usage(format!("--params does not apply to family {other}")),
    };
    let spec = BundleSpec::new(family, 0)?;
    let range = parse_range(m_range)?;
    let g = g.unwrap_or(DEFAULT_AUT_DIM);
    let mut r = RunReport::new("audit");
    r.input("family", family)
        .input("m_range", format!("{}..{}", range.start(), range.end()))
        .input("g", g);
    let rows = inequality_audit(&spec, range, g)?;
    for row in &rows {
        r.output(
            &format!("m={}", row.m),
            format!("lhs {} rhs {} gap {}", row.lhs, row.rhs, row.rhs - row.lhs),
        );
    }
    r.output(
        "linear_from",
        linear_from(&rows).map_or("not within range".to_string(), |m| m.to_string()),
    );
    r.verdict("inequality_holds", true, rows.iter().all(|row| row.holds));
    if let Some(d) = degree {
        r.input("degree", d);
        let e = select_e_d(d)?;
        r.output("selected_bundle", e);
        r.verdict("selector_degree", true, det_degree(&e)? == d);
    }
    Ok(r)
}

pub fn containment(path: &Path, k_max: Option<u32>) -> Result<RunReport> {
    let text = read(path)?;
    let gens: Vec<HomPoly> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| HomPoly::parse(l, None))
        .collect::<std::result::Result<_, _>>()?;
    let top = gens.iter().map(HomPoly::degree).max().unwrap_or(0);
    let k_max = k_max.unwrap_or_else(|| default_k_max(top));
    let mut r = RunReport::new("containment");
    r.input("gens_file", path.display())
        .input("generators", gens.len())
        .input("k_max", k_max);
    let c = containment_degree(&gens, k_max)?;
    for d in &c.ladder.dims {
        r.output(&format!("I_{}", d.degree), format!("{}/{}", d.dim, d.full));
    }
    r.output(
        "degree",
        c.degree
            .map_or("not reached".to_string(), |k| k.to_string()),
    );
    r.verdict("contained", true, c.degree.is_some());
    Ok(r)
}

pub fn det(path: &Path, normalize: bool) -> Result<RunReport> {
    let m = parse_matrix_file(&read(path)?)?;
    let mut r = RunReport::new("det");
    r.input("matrix_file", path.display()).dim("size", m.size());
    let f = det_poly(&m);
    r.dim("degree", m.det_degree()).output("det", &f);
    r.verdict(
        "engines_agree",
        true,
        det_cofactor(&m) == det_fraction_free(&m),
    );
    if normalize {
        let norm = column_reduce_normalize(&m)?;
        let g = det_poly(&norm.matrix);
        r.output("normalized_det", &g)
            .output("scale", &norm.scale)
            .output(
                "substitution",
                norm.substitution
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            );
        let back = f.substitute_linear(&norm.substitution);
        r.verdict(
            "normalization_consistent",
            true,
            g.scale(&norm.scale) == back,
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0..10").unwrap(), 0..=10);
        assert_eq!(parse_range("-1..=3").unwrap(), -1..=3);
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn examples_pass() {
        assert!(verify_example1("T(0)").unwrap().passed());
        assert!(verify_example2("N(0)").unwrap().passed());
        assert!(matches!(verify_example1("N(0)"), Err(CliError::Usage(_))));
    }

    #[test]
    fn tangent_verdicts() {
        assert!(tangent("T", 0, "x;2*y;3*z", "y;z;x", true)
            .unwrap()
            .passed());
        let dependent = tangent("T", 0, "x;2*y;3*z", "2*x;4*y;6*z", true).unwrap();
        assert!(!dependent.passed());
        let remark = tangent("T", 3, "z^4;x^4;0", "0;z^4;y^4", false).unwrap();
        assert!(remark.passed());
        assert!(matches!(
            tangent("M_2", 0, "1", "1", true),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn mult_modes() {
        let base = MultArgs {
            n: Some(0),
            seed: 1,
            trials: 3,
            f: None,
            g: None,
            remark: false,
            expect: None,
        };
        assert!(mult(base).unwrap().passed());
        let same = MultArgs {
            n: None,
            seed: 0,
            trials: 1,
            f: Some("x;y^1;z"),
            g: Some("x;y;z"),
            remark: false,
            expect: None,
        };
        assert!(!mult(same).unwrap().passed());
        let remark = MultArgs {
            n: Some(6),
            seed: 0,
            trials: 1,
            f: None,
            g: None,
            remark: true,
            expect: None,
        };
        let r = mult(remark).unwrap();
        assert!(r.passed());
        assert!(r
            .outputs
            .iter()
            .any(|f| f.name == "x^5*y^5*z^5" && f.value == "not in image"));
    }

    #[test]
    fn p1p1_and_audit() {
        assert!(p1p1(2, 2, 2).unwrap().passed());
        assert!(matches!(p1p1(0, 1, 1), Err(CliError::Usage(_))));
        let a = audit("N", None, "0..10", None, Some(2)).unwrap();
        assert!(a.passed());
        assert!(a
            .outputs
            .iter()
            .any(|f| f.name == "selected_bundle" && f.value == "N(0)"));
        assert!(audit("M", Some(2), "0..4", Some(8), None).unwrap().passed());
        assert!(audit("Q", None, "0..4", None, None).is_err());
        assert!(matches!(
            audit("E", None, "0..4", None, None),
            Err(CliError::Usage(_))
        ));
    }
}
