//! Section spaces as explicit quotients, and the tangent map of the
//! degeneracy-curve map at a pencil of sections.
//!
//! For a two-dimensional `V = ⟨v1, v2⟩ ⊂ H⁰(E)` with degeneracy curve
//! `C = Z(F)`, `F = v1 ∧ v2`, the tangent map sends
//! `φ ∈ Hom(V, H⁰(E)/V)` to `(v1 ∧ φ(v2) − v2 ∧ φ(v1))|_C`. Restriction to
//! `C` is handled by appending the coefficient vector of `F` to the matrix:
//! the kernel of `H⁰(O(D)) → H⁰(O_C(D))` is spanned by `F` when `D = deg F`,
//! so the map onto `H⁰(O_C(D))` is surjective iff the augmented matrix has
//! rank `h⁰(O(D))`.

use num_traits::Zero;

use crate::audit::{h0_p2, BundleSpec};
use crate::detrep::{wedge_curve, BundleSection};
use crate::error::{Error, Result};
use crate::ideal::{containment_degree, IdealComponentLadder};
use crate::linalg::{rank, rref, ExactMatrix};
use crate::poly::{mono_basis, HomPoly, Rat};

/// `H⁰(E)` presented as `H⁰(ambient) / image(relations)`.
///
/// Coset representatives are spanned by the ambient coordinates that are
/// not pivots of the relation subspace's reduced echelon form.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    bundle: BundleSpec,
    ambient_degrees: Vec<i64>,
    relation_matrix: ExactMatrix,
    echelon: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl SectionSpace {
    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    pub fn ambient_degrees(&self) -> &[i64] {
        &self.ambient_degrees
    }

    pub fn ambient_dim(&self) -> usize {
        self.relation_matrix.rows()
    }

    /// Columns are the images of the source monomials.
    pub fn relation_matrix(&self) -> &ExactMatrix {
        &self.relation_matrix
    }

    /// Ambient coordinates used as coset representatives.
    pub fn coset_positions(&self) -> &[usize] {
        &self.free
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of the class of `v` in `H⁰(E)`.
    pub fn reduce(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let w = self.normal_form(v)?;
        Ok(self.free.iter().map(|&i| w[i].clone()).collect())
    }

    /// The coset representative of `v` (an ambient vector).
    pub fn normal_form(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        let mut w = v.to_vec();
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &c * ri;
                }
            }
        }
        Ok(w)
    }

    /// Ambient vector representing the given reduced coordinates.
    pub fn lift(&self, coords: &[Rat]) -> Result<Vec<Rat>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let mut v = vec![Rat::zero(); self.ambient_dim()];
        for (&i, c) in self.free.iter().zip(coords) {
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn reduce_section(&self, s: &BundleSection) -> Result<Vec<Rat>> {
        if *s.bundle() != self.bundle {
            return Err(Error::MixedBundles);
        }
        self.reduce(&s.ambient_vector())
    }
}

pub fn section_space(bundle: &BundleSpec) -> Result<SectionSpace> {
    bundle.validate()?;
    let ambient_degrees = bundle.ambient_degrees();
    let ambient_dim: usize = ambient_degrees.iter().map(|&d| h0_p2(d) as usize).sum();
    let mut columns = Vec::new();
    for rel in bundle.relation_rows() {
        for f in mono_basis(rel.source_degree) {
            let image: Vec<Rat> = rel
                .entries
                .iter()
                .flat_map(|e| e.mul_monomial(&f).coeff_vector())
                .collect();
            columns.push(image);
        }
    }
    let relation_matrix = ExactMatrix::from_columns(ambient_dim, &columns)?;
    let (echelon, pivots) = rref(&relation_matrix.transpose());
    let free = (0..ambient_dim).filter(|i| !pivots.contains(i)).collect();
    Ok(SectionSpace {
        bundle: *bundle,
        ambient_degrees,
        relation_matrix,
        echelon,
        pivots,
        free,
    })
}

/// `H⁰(E)/V` for a two-dimensional `V`, with lifts of a basis to the ambient.
#[derive(Clone, Debug)]
pub struct QuotientByV {
    parent: SectionSpace,
    v_basis: [Vec<Rat>; 2],
    complement: Vec<usize>,
}

impl QuotientByV {
    pub fn new(parent: SectionSpace, v1: &BundleSection, v2: &BundleSection) -> Result<Self> {
        let r1 = parent.reduce_section(v1)?;
        let r2 = parent.reduce_section(v2)?;
        let mut rows = parent.echelon.clone();
        rows.push(v1.ambient_vector());
        rows.push(v2.ambient_vector());
        let stacked = ExactMatrix::from_rows(rows)?;
        let (_, pivots) = rref(&stacked);
        if pivots.len() != parent.echelon.len() + 2 {
            return Err(Error::DependentSections);
        }
        let complement = (0..parent.ambient_dim())
            .filter(|i| !pivots.contains(i))
            .collect();
        Ok(QuotientByV {
            parent,
            v_basis: [r1, r2],
            complement,
        })
    }

    pub fn parent(&self) -> &SectionSpace {
        &self.parent
    }

    pub fn v_basis(&self) -> &[Vec<Rat>; 2] {
        &self.v_basis
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient lifts of a basis of `H⁰(E)/V` (unit vectors on the complement).
    pub fn lifts(&self) -> Result<Vec<BundleSection>> {
        let n = self.parent.ambient_dim();
        self.complement
            .iter()
            .map(|&i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::from_integer(1.into());
                BundleSection::from_ambient_vector(self.parent.bundle, &v)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TangentReport {
    /// Columns are the images of the Hom basis, in `H⁰(O(D))` coordinates.
    pub matrix: ExactMatrix,
    pub hom_dim: usize,
    pub curve: HomPoly,
    /// `h⁰(O(D)) − 1 = h⁰(O_C(D))`
    pub target_dim: usize,
    pub rank: usize,
    /// Rank of `[matrix | coeff_vector(F)]`.
    pub augmented_rank: usize,
    pub surjective: bool,
}

fn wedge2(a: &BundleSection, b: &BundleSection) -> Result<HomPoly> {
    wedge_curve(&[a.clone(), b.clone()])
}

/// Matrix of `φ ↦ v1 ∧ φ(v2) − v2 ∧ φ(v1)` for the Hom basis
/// `φ_{i,j}: v_i ↦ q_j`, other generator ↦ 0, given lifts `q_j`.
/// Columns for `i = 1` come first.
pub fn tangent_matrix(
    v1: &BundleSection,
    v2: &BundleSection,
    lifts: &[BundleSection],
) -> Result<ExactMatrix> {
    let mut columns = Vec::with_capacity(2 * lifts.len());
    for q in lifts {
        columns.push((-wedge2(v2, q)?).coeff_vector());
    }
    for q in lifts {
        columns.push(wedge2(v1, q)?.coeff_vector());
    }
    let degree = crate::audit::det_degree(v1.bundle())?;
    ExactMatrix::from_columns(h0_p2(degree) as usize, &columns)
}

pub fn tangent_map(v1: &BundleSection, v2: &BundleSection) -> Result<TangentReport> {
    let bundle = *v1.bundle();
    if *v2.bundle() != bundle {
        return Err(Error::MixedBundles);
    }
    if bundle.rank() != 2 {
        return Err(Error::InvalidBundle(format!(
            "{bundle} has rank {}, the tangent map needs rank 2",
            bundle.rank()
        )));
    }
    let curve = wedge2(v1, v2)?;
    if curve.is_zero() {
        return Err(Error::NotGpli);
    }
    let quotient = QuotientByV::new(section_space(&bundle)?, v1, v2)?;
    let lifts = quotient.lifts()?;
    let matrix = tangent_matrix(v1, v2, &lifts)?;
    let augmented = matrix.augment(&curve.coeff_vector())?;
    let rank_plain = rank(&matrix);
    let augmented_rank = rank(&augmented);
    let full = matrix.rows();
    Ok(TangentReport {
        hom_dim: matrix.cols(),
        target_dim: full - 1,
        rank: rank_plain,
        augmented_rank,
        surjective: augmented_rank == full,
        curve,
        matrix,
    })
}

#[derive(Clone, Debug)]
pub struct SmoothnessVerdict {
    /// `true` means the Jacobian ideal is 𝗆-primary, i.e. `Z(F)` is smooth.
    /// `false` means "not certified within `k_max`", never "singular".
    pub certified: bool,
    pub degree: Option<u32>,
    pub ladder: IdealComponentLadder,
}

/// Certifies smoothness of `Z(F)` by finding a degree in which the Jacobian
/// ideal contains every form.
pub fn smoothness_check(f: &HomPoly, k_max: u32) -> Result<SmoothnessVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::InvalidParameter(
            "a nonzero constant defines no curve".into(),
        ));
    }
    let partials: Vec<HomPoly> = (0..3).map(|i| f.partial(i)).collect();
    let found = containment_degree(&partials, k_max)?;
    Ok(SmoothnessVerdict {
        certified: found.degree.is_some(),
        degree: found.degree,
        ladder: found.ladder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::h0_bundle;
    use crate::poly::int;

    fn p(s: &str) -> HomPoly {
        HomPoly::parse(s, None).unwrap()
    }

    fn example1() -> (BundleSection, BundleSection) {
        let t0 = BundleSpec::t(0).unwrap();
        (
            BundleSection::parse(t0, &["x", "2*y", "3*z"]).unwrap(),
            BundleSection::parse(t0, &["y", "z", "x"]).unwrap(),
        )
    }

    #[test]
    fn small_section_spaces() {
        let t0 = section_space(&BundleSpec::t(0).unwrap()).unwrap();
        assert_eq!(t0.dim(), 8);
        assert_eq!(rank(t0.relation_matrix()), 1);
        let n0 = section_space(&BundleSpec::n(0).unwrap()).unwrap();
        assert_eq!(n0.dim(), 5);
        assert_eq!(n0.relation_matrix().cols(), 0);
        let m10 = section_space(&BundleSpec::m(1, 0).unwrap()).unwrap();
        assert_eq!(m10.dim(), 3);
    }

    #[test]
    fn dims_match_closed_form() {
        let mut specs = Vec::new();
        for n in 0..=5 {
            specs.push(BundleSpec::n(n).unwrap());
            specs.push(BundleSpec::t(n).unwrap());
            for k in 1..=3 {
                specs.push(BundleSpec::m(k, n).unwrap());
            }
            for r in 2..=4 {
                specs.push(BundleSpec::e(r, n).unwrap());
            }
        }
        for s in specs {
            let space = section_space(&s).unwrap();
            assert_eq!(space.dim() as u64, h0_bundle(&s, 0).unwrap(), "{s}");
        }
    }

    #[test]
    fn reduce_kills_relations() {
        let t0 = BundleSpec::t(0).unwrap();
        let space = section_space(&t0).unwrap();
        let euler = BundleSection::parse(t0, &["x", "y", "z"]).unwrap();
        assert!(space
            .reduce_section(&euler)
            .unwrap()
            .iter()
            .all(Zero::is_zero));

        let (v1, v2) = example1();
        let shifted = v1.shift_by_relation(0, &p("7")).unwrap();
        assert_eq!(
            space.reduce_section(&v1).unwrap(),
            space.reduce_section(&shifted).unwrap()
        );

        let r1 = space.reduce_section(&v1).unwrap();
        let r2 = space.reduce_section(&v2).unwrap();
        assert!(r1.iter().any(|c| !c.is_zero()));
        assert_eq!(
            rank(&ExactMatrix::from_rows(vec![r1.clone(), r2]).unwrap()),
            2
        );

        // idempotent on representatives
        let rep = space.lift(&r1).unwrap();
        assert_eq!(space.reduce(&rep).unwrap(), r1);
        assert!(matches!(
            space.reduce(&[int(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn example1_tangent_surjective() {
        let (v1, v2) = example1();
        let r = tangent_map(&v1, &v2).unwrap();
        assert_eq!(r.curve, p("x^2*y - 2*x*z^2 + y^2*z"));
        assert_eq!(r.hom_dim, 12);
        assert_eq!(r.target_dim, 9);
        assert_eq!(r.augmented_rank, 10);
        assert!(r.surjective);
    }

    #[test]
    fn example2_tangent_surjective() {
        let n0 = BundleSpec::n(0).unwrap();
        let u1 = BundleSection::parse(n0, &["0", "1", "y"]).unwrap();
        let u2 = BundleSection::parse(n0, &["1", "0", "x"]).unwrap();
        let r = tangent_map(&u1, &u2).unwrap();
        assert_eq!(r.hom_dim, 6);
        assert_eq!(r.target_dim, 5);
        assert!(r.surjective);
    }

    #[test]
    fn remark_pair_not_surjective() {
        let t3 = BundleSpec::t(3).unwrap();
        let v1 = BundleSection::parse(t3, &["z^4", "x^4", "0"]).unwrap();
        let v2 = BundleSection::parse(t3, &["0", "z^4", "y^4"]).unwrap();
        let r = tangent_map(&v1, &v2).unwrap();
        assert!(!r.surjective);
        assert!(r.rank <= r.hom_dim.min(r.matrix.rows()));
    }

    #[test]
    fn tangent_errors() {
        let (v1, _) = example1();
        assert_eq!(
            tangent_map(&v1, &v1.scale(&int(2))).unwrap_err(),
            Error::NotGpli
        );
        let m2 = BundleSpec::m(2, 0).unwrap();
        let s = BundleSection::new(m2, vec![HomPoly::constant(int(1)); 6]).unwrap();
        assert!(matches!(tangent_map(&s, &s), Err(Error::InvalidBundle(_))));
    }

    #[test]
    fn smoothness_examples() {
        let v = smoothness_check(&p("x^2*y - 2*x*z^2 + y^2*z"), 9).unwrap();
        assert!(v.certified);
        assert!(
            smoothness_check(&p("x^2 + y^2 - z^2"), 6)
                .unwrap()
                .certified
        );
        assert!(!smoothness_check(&p("x*y*z"), 9).unwrap().certified);
        assert_eq!(
            smoothness_check(&HomPoly::zero(3), 5).unwrap_err(),
            Error::ZeroPolynomial
        );
    }
}
