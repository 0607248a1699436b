//! The multiplication map `H⁰(O(n+1)) ⊗ U → H⁰(O(2n+3))` built from two
//! triples of forms, and graded-component computations for homogeneous
//! ideals (when does `𝗆^k ⊆ I` start to hold).
//!
//! For triples `f, g` of forms of degree `n + 1`, `U` is spanned by the
//! 2×2 minors of `[f; (x, y, z)]` and `[g; (x, y, z)]`. Expanding
//! `v1 ∧ a` along the middle row shows that the image of the
//! multiplication map equals the span of all `v1 ∧ a − v2 ∧ b`, which is the
//! column space of the augmented tangent matrix; [`diagram_crosscheck`]
//! computes both sides independently.

use crate::audit::{h0_p2, BundleSpec};
use crate::detrep::{is_gpli, BundleSection};
use crate::error::{Error, Result};
use crate::linalg::{in_column_space, rank, report, ExactMatrix, LinearMapReport, Membership};
use crate::poly::{mono_basis, HomPoly, Mono3};
use crate::tangent::tangent_map;

/// Default search cap for containment ladders attached to twist `n`.
pub fn default_k_max(n: u32) -> u32 {
    4 * n + 8
}

/// The six generators of `U`, all of degree `n + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USpace {
    pub n: u32,
    pub f: [HomPoly; 3],
    pub g: [HomPoly; 3],
    pub generators: [HomPoly; 6],
}

/// `(t1·y − t2·x, t1·z − t3·x, t2·z − t3·y)`
pub fn euler_minors(t: &[HomPoly; 3]) -> [HomPoly; 3] {
    let (x, y, z) = (HomPoly::x(), HomPoly::y(), HomPoly::z());
    [
        &(&t[0] * &y) - &(&t[1] * &x),
        &(&t[0] * &z) - &(&t[2] * &x),
        &(&t[1] * &z) - &(&t[2] * &y),
    ]
}

pub fn u_generators(f: &[HomPoly; 3], g: &[HomPoly; 3]) -> Result<USpace> {
    let d = f[0].degree();
    if d == 0 {
        return Err(Error::DegreeMismatch {
            expected: "positive degree n + 1".into(),
            found: "0".into(),
        });
    }
    if let Some(bad) = f.iter().chain(g).find(|p| p.degree() != d) {
        return Err(Error::DegreeMismatch {
            expected: d.to_string(),
            found: bad.degree().to_string(),
        });
    }
    let [a, b, c] = euler_minors(f);
    let [e, h, k] = euler_minors(g);
    Ok(USpace {
        n: d - 1,
        f: f.clone(),
        g: g.clone(),
        generators: [a, b, c, e, h, k],
    })
}

/// Columns `μ · u_j`, monomial-major over `μ ∈ mono_basis(n + 1)`.
pub fn mult_map_matrix(u: &USpace) -> ExactMatrix {
    let n = u.n as i64;
    let columns: Vec<_> = mono_basis(n + 1)
        .iter()
        .flat_map(|mu| {
            u.generators
                .iter()
                .map(move |g| g.mul_monomial(mu).coeff_vector())
        })
        .collect();
    ExactMatrix::from_columns(h0_p2(2 * n + 3) as usize, &columns).expect("uniform degree")
}

pub fn mult_map_report(u: &USpace) -> LinearMapReport {
    report(&mult_map_matrix(u))
}

/// Is the monomial `m` (of degree `2n + 3`) in the image of the multiplication map?
pub fn monomial_in_image(u: &USpace, m: Mono3) -> Result<Membership> {
    let target = 2 * u.n + 3;
    if m.degree() != target {
        return Err(Error::DegreeMismatch {
            expected: target.to_string(),
            found: m.degree().to_string(),
        });
    }
    let v = HomPoly::monomial(m).coeff_vector();
    in_column_space(&mult_map_matrix(u), &v)
}

/// Both sides of the commutative square relating the multiplication map to
/// the tangent map at `V = ⟨f, g⟩ ⊂ H⁰(T(n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub n: u32,
    pub gpli: bool,
    pub mult_rank: usize,
    pub mult_surjective: bool,
    /// `None` when `V` is not GPLI (no curve, no tangent map).
    pub tangent_augmented_rank: Option<usize>,
    /// Reported `false` when `V` is not GPLI.
    pub tangent_surjective: bool,
    pub agree: bool,
}

pub fn diagram_crosscheck(f: &[HomPoly; 3], g: &[HomPoly; 3]) -> Result<DiagramCheck> {
    let u = u_generators(f, g)?;
    let mult = mult_map_report(&u);
    let bundle = BundleSpec::t(u.n as i64)?;
    let v1 = BundleSection::new(bundle, f.to_vec())?;
    let v2 = BundleSection::new(bundle, g.to_vec())?;
    let gpli = is_gpli(&[v1.clone(), v2.clone()])?;
    let (tangent_surjective, tangent_augmented_rank) = if gpli {
        let t = tangent_map(&v1, &v2)?;
        (t.surjective, Some(t.augmented_rank))
    } else {
        (false, None)
    };
    Ok(DiagramCheck {
        n: u.n,
        gpli,
        mult_rank: mult.rank,
        mult_surjective: mult.surjective,
        tangent_augmented_rank,
        tangent_surjective,
        agree: mult.surjective == tangent_surjective,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentDim {
    pub degree: u32,
    /// `dim I_d`
    pub dim: usize,
    /// `h⁰(O(d))`
    pub full: usize,
}

impl ComponentDim {
    pub fn is_full(&self) -> bool {
        self.dim == self.full
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealComponentLadder {
    pub generators: Vec<HomPoly>,
    pub dims: Vec<ComponentDim>,
}

/// Columns `μ · g` spanning `I_d`, for generators of degree at most `d`.
pub fn component_matrix(generators: &[HomPoly], d: u32) -> ExactMatrix {
    let columns: Vec<_> = generators
        .iter()
        .filter(|g| g.degree() <= d && !g.is_zero())
        .flat_map(|g| {
            mono_basis((d - g.degree()) as i64)
                .into_iter()
                .map(move |mu| g.mul_monomial(&mu).coeff_vector())
        })
        .collect();
    ExactMatrix::from_columns(h0_p2(d as i64) as usize, &columns).expect("uniform degree")
}

pub fn component_dim(generators: &[HomPoly], d: u32) -> ComponentDim {
    ComponentDim {
        degree: d,
        dim: rank(&component_matrix(generators, d)),
        full: h0_p2(d as i64) as usize,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    /// Smallest `k ≤ k_max` with `I_k = S_k`, if any.
    pub degree: Option<u32>,
    pub ladder: IdealComponentLadder,
}

/// Walks `d = 0, 1, …, k_max` until `I_d` is all of `S_d`. Once found, the
/// next component is computed as well and must also be full
/// (`I_{k+1} ⊇ 𝗆·I_k`).
pub fn containment_degree(generators: &[HomPoly], k_max: u32) -> Result<Containment> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let mut dims = Vec::new();
    let mut degree = None;
    for d in 0..=k_max {
        let c = component_dim(generators, d);
        dims.push(c);
        if c.is_full() {
            let next = component_dim(generators, d + 1);
            assert!(next.is_full(), "I_{} full but I_{} is not", d, d + 1);
            dims.push(next);
            degree = Some(d);
            break;
        }
    }
    Ok(Containment {
        degree,
        ladder: IdealComponentLadder {
            generators: generators.to_vec(),
            dims,
        },
    })
}

/// True iff the six `U` generators have no common zero in ℙ², certified by
/// `𝗆^k ⊆ (U)` for some `k ≤ k_max`.
pub fn disjointness_check(f: &[HomPoly; 3], g: &[HomPoly; 3], k_max: u32) -> Result<bool> {
    let u = u_generators(f, g)?;
    Ok(containment_degree(&u.generators, k_max)?.degree.is_some())
}

/// The pair `(z^{n+1}, x^{n+1}, 0)`, `(0, z^{n+1}, y^{n+1})`.
pub fn remark_pair(n: u32) -> ([HomPoly; 3], [HomPoly; 3]) {
    let e = n + 1;
    let pow = |i: usize| HomPoly::var(i).pow(e);
    let zero = || HomPoly::zero(e);
    ([pow(2), pow(0), zero()], [zero(), pow(2), pow(1)])
}

/// For `2n + 3 = 3k`: the monomials `x^k y^k z^k` and `x^{k+1} y^k z^{k−1}`.
pub fn remark_monomials(n: u32) -> Option<[Mono3; 2]> {
    let d = 2 * n + 3;
    if !d.is_multiple_of(3) {
        return None;
    }
    let k = d / 3;
    Some([Mono3::new(k, k, k), Mono3::new(k + 1, k, k - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HomPoly {
        HomPoly::parse(s, None).unwrap()
    }

    fn triple(a: &str, b: &str, c: &str, d: u32) -> [HomPoly; 3] {
        [a, b, c].map(|s| HomPoly::parse(s, Some(d)).unwrap())
    }

    #[test]
    fn generator_examples() {
        let u = u_generators(&triple("x", "y", "z", 1), &triple("z", "x", "y", 1)).unwrap();
        assert!(u.generators[0].is_zero());
        assert_eq!(u.n, 0);

        let u = u_generators(&triple("x", "2*y", "3*z", 1), &triple("z", "x", "y", 1)).unwrap();
        assert_eq!(u.generators[0], p("-x*y"));

        let u = u_generators(&triple("z", "0", "0", 1), &triple("z", "x", "y", 1)).unwrap();
        assert_eq!(u.generators[0], p("y*z"));
        assert_eq!(u.generators[1], p("z^2"));
        assert!(u.generators[2].is_zero());

        let bad = u_generators(&triple("x", "y", "z", 1), &triple("x^2", "y^2", "z^2", 2));
        assert!(matches!(bad, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn equal_triples_never_surjective() {
        let f = triple("x", "2*y", "3*z", 1);
        let r = mult_map_report(&u_generators(&f, &f).unwrap());
        assert!(!r.surjective);
        assert!(r.rank <= 9);
    }

    #[test]
    fn example1_pair_surjective_and_agrees() {
        let f = triple("x", "2*y", "3*z", 1);
        let g = triple("y", "z", "x", 1);
        let u = u_generators(&f, &g).unwrap();
        assert!(mult_map_report(&u).surjective);
        let d = diagram_crosscheck(&f, &g).unwrap();
        assert!(d.mult_surjective && d.tangent_surjective && d.agree);
        assert_eq!(Some(d.mult_rank), d.tangent_augmented_rank);
        assert!(disjointness_check(&f, &g, default_k_max(0)).unwrap());
    }

    #[test]
    fn degenerate_pairs() {
        let f = triple("x", "2*y", "3*z", 1);
        let d = diagram_crosscheck(&f, &f).unwrap();
        assert!(!d.gpli && !d.mult_surjective && !d.tangent_surjective && d.agree);
        assert!(!disjointness_check(&f, &f, 8).unwrap());
        let euler = triple("x", "y", "z", 1);
        assert!(!disjointness_check(&euler, &triple("y", "z", "x", 1), 8).unwrap());
    }

    #[test]
    fn containment_examples() {
        let c = containment_degree(&[p("x"), p("y"), p("z")], 5).unwrap();
        assert_eq!(c.degree, Some(1));

        let c = containment_degree(&[p("x^2"), p("y^2"), p("z^2")], 8).unwrap();
        assert_eq!(c.degree, Some(4));
        assert_eq!(
            c.ladder.dims[3],
            ComponentDim {
                degree: 3,
                dim: 9,
                full: 10
            }
        );

        let c = containment_degree(&[p("x^2"), p("y^2")], 6).unwrap();
        assert_eq!(c.degree, None);
        assert_eq!(c.ladder.dims.len(), 7);

        assert_eq!(
            containment_degree(&[], 3).unwrap_err(),
            Error::EmptyGenerators
        );
    }

    #[test]
    fn remark_pair_k3() {
        let (f, g) = remark_pair(3);
        let u = u_generators(&f, &g).unwrap();
        let [m1, m2] = remark_monomials(3).unwrap();
        let a = monomial_in_image(&u, m1).unwrap();
        let b = monomial_in_image(&u, m2).unwrap();
        let mat = mult_map_matrix(&u);
        assert!(!a.is_member());
        assert!(a.verify(&mat, &HomPoly::monomial(m1).coeff_vector()));
        // x^4 z is a generator, so x^4 y^3 z^2 is reached
        assert!(b.is_member());
        assert!(b.verify(&mat, &HomPoly::monomial(m2).coeff_vector()));
        assert!(remark_monomials(1).is_none());
    }
}
