//! Closed-form section counts for the bundle families on ℙ², determinant
//! degrees, the dimension-count inequality
//! `h⁰(det E(m)) − 1 ≤ d·(h⁰(E(m)) − d) + g`, and the rank-2 bundle
//! selector for curves of a given degree.
//!
//! Every bundle here is presented as a cokernel of an injection of split
//! bundles. All line bundles on ℙ² have vanishing H¹, so section counts are
//! differences of `h⁰(O(d)) = binom(d + 2, 2)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{mono_basis, HomPoly, Mono3};

/// Dimension of PGL₃, the default `g` of the inequality audit.
pub const DEFAULT_AUT_DIM: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Quotient of `O² ⊕ O(1)` by `(x, y, z²)·O(−1)`.
    N,
    /// Tangent bundle, via the Euler sequence.
    T,
    /// Syzygy bundle of `O(k)`, rank `binom(k+2, 2) − 1`.
    M { k: u32 },
    /// Rank-`r` cokernel of `O(−1)² → O^{r+2}`, `2 ≤ r ≤ 4`.
    E { r: u32 },
}

/// One of the four bundle families together with a twist `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BundleSpec {
    pub family: Family,
    pub twist: i64,
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::N => write!(f, "N({})", self.twist),
            Family::T => write!(f, "T({})", self.twist),
            Family::M { k } => write!(f, "M_{k}({})", self.twist),
            Family::E { r } => write!(f, "E_{r}({})", self.twist),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::N => write!(f, "N"),
            Family::T => write!(f, "T"),
            Family::M { k } => write!(f, "M_{k}"),
            Family::E { r } => write!(f, "E_{r}"),
        }
    }
}

/// Accepts `N`, `T`, `M_k` and `E_r` (the underscore is optional).
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidBundle(format!("unknown family `{s}`"));
        let index = |rest: &str| -> Result<u32> {
            rest.strip_prefix('_')
                .unwrap_or(rest)
                .parse()
                .map_err(|_| bad())
        };
        match s.chars().next() {
            Some('N') if s.len() == 1 => Ok(Family::N),
            Some('T') if s.len() == 1 => Ok(Family::T),
            Some('M') => Ok(Family::M { k: index(&s[1..])? }),
            Some('E') => Ok(Family::E { r: index(&s[1..])? }),
            _ => Err(bad()),
        }
    }
}

/// Inverse of `Display`: `T(0)`, `M_2(-1)`, ...
impl FromStr for BundleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidBundle(format!("expected e.g. `T(0)`, got `{s}`"));
        let (fam, rest) = s.split_once('(').ok_or_else(bad)?;
        let twist = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        BundleSpec::new(fam.parse()?, twist)
    }
}

/// A linear map `O(source_degree) → ⊕ O(ambient_degrees[i])` given by a
/// row of forms; the bundle is the cokernel of the sum of these maps.
#[derive(Clone, Debug)]
pub struct RelationRow {
    pub source_degree: i64,
    pub entries: Vec<HomPoly>,
}

impl BundleSpec {
    pub fn new(family: Family, twist: i64) -> Result<Self> {
        let s = BundleSpec { family, twist };
        s.validate()?;
        Ok(s)
    }

    pub fn n(twist: i64) -> Result<Self> {
        Self::new(Family::N, twist)
    }

    pub fn t(twist: i64) -> Result<Self> {
        Self::new(Family::T, twist)
    }

    pub fn m(k: u32, twist: i64) -> Result<Self> {
        Self::new(Family::M { k }, twist)
    }

    pub fn e(r: u32, twist: i64) -> Result<Self> {
        Self::new(Family::E { r }, twist)
    }

    pub fn validate(&self) -> Result<()> {
        let min_twist = if self.family == Family::T { -1 } else { 0 };
        if self.twist < min_twist {
            return Err(Error::InvalidBundle(format!(
                "{self}: twist must be at least {min_twist}"
            )));
        }
        match self.family {
            Family::M { k } if k < 1 => Err(Error::InvalidBundle(format!("{self}: need k >= 1"))),
            Family::E { r } if !(2..=4).contains(&r) => {
                Err(Error::InvalidBundle(format!("{self}: need 2 <= r <= 4")))
            }
            _ => Ok(()),
        }
    }

    pub fn twisted(&self, extra: i64) -> Result<Self> {
        Self::new(self.family, self.twist + extra)
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::N | Family::T => 2,
            Family::M { k } => h0_p2(k as i64) as usize - 1,
            Family::E { r } => r as usize,
        }
    }

    /// Degrees of the summands of the split bundle the sections live in.
    pub fn ambient_degrees(&self) -> Vec<i64> {
        let n = self.twist;
        match self.family {
            Family::N => vec![n, n, n + 1],
            Family::T => vec![n + 1; 3],
            Family::M { k } => vec![n; h0_p2(k as i64) as usize],
            Family::E { r } => vec![n; r as usize + 2],
        }
    }

    /// The injected relations, one row per source line bundle.
    pub fn relation_rows(&self) -> Vec<RelationRow> {
        let n = self.twist;
        let var = HomPoly::var;
        match self.family {
            Family::N => vec![RelationRow {
                source_degree: n - 1,
                entries: vec![var(0), var(1), HomPoly::monomial(Mono3::new(0, 0, 2))],
            }],
            Family::T => vec![RelationRow {
                source_degree: n,
                entries: vec![var(0), var(1), var(2)],
            }],
            Family::M { k } => vec![RelationRow {
                source_degree: n - k as i64,
                entries: mono_basis(k as i64)
                    .into_iter()
                    .map(HomPoly::monomial)
                    .collect(),
            }],
            Family::E { r } => {
                let r = r as usize;
                let row = |offset: usize| {
                    (0..r + 2)
                        .map(|i| match i.checked_sub(offset) {
                            Some(j) if j < 3 => var(j),
                            _ => HomPoly::zero(1),
                        })
                        .collect()
                };
                vec![
                    RelationRow {
                        source_degree: n - 1,
                        entries: row(0),
                    },
                    RelationRow {
                        source_degree: n - 1,
                        entries: row(r - 1),
                    },
                ]
            }
        }
    }
}

/// `h⁰(ℙ², O(d))`.
pub fn h0_p2(d: i64) -> u64 {
    if d < 0 {
        0
    } else {
        let d = d as u64;
        (d + 1) * (d + 2) / 2
    }
}

/// `h⁰` of the bundle twisted by a further `extra`.
pub fn h0_bundle(spec: &BundleSpec, extra: i64) -> Result<u64> {
    let s = spec.twisted(extra)?;
    let n = s.twist;
    Ok(match s.family {
        Family::N => 2 * h0_p2(n) + h0_p2(n + 1) - h0_p2(n - 1),
        Family::T => 3 * h0_p2(n + 1) - h0_p2(n),
        Family::M { k } => h0_p2(k as i64) * h0_p2(n) - h0_p2(n - k as i64),
        Family::E { r } => (r as u64 + 2) * h0_p2(n) - 2 * h0_p2(n - 1),
    })
}

/// Degree of the determinant line bundle, i.e. of the degeneracy curve.
pub fn det_degree(spec: &BundleSpec) -> Result<i64> {
    spec.validate()?;
    let n = spec.twist;
    Ok(match spec.family {
        Family::N => 2 * n + 2,
        Family::T => 2 * n + 3,
        Family::M { k } => (h0_p2(k as i64) as i64 - 1) * n + k as i64,
        Family::E { r } => r as i64 * n + 2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub m: i64,
    /// `h⁰(det E(m)) − 1`
    pub lhs: i64,
    /// `d·(h⁰(E(m)) − d) + g`
    pub rhs: i64,
    pub holds: bool,
}

pub fn inequality_audit(
    spec: &BundleSpec,
    m_range: RangeInclusive<i64>,
    g: i64,
) -> Result<Vec<AuditRow>> {
    if g < 0 {
        return Err(Error::InvalidParameter(format!(
            "g must be non-negative, got {g}"
        )));
    }
    let d = spec.rank() as i64;
    m_range
        .map(|m| {
            let twisted = spec.twisted(m)?;
            let lhs = h0_p2(det_degree(&twisted)?) as i64 - 1;
            let rhs = d * (h0_bundle(&twisted, 0)? as i64 - d) + g;
            Ok(AuditRow {
                m,
                lhs,
                rhs,
                holds: lhs <= rhs,
            })
        })
        .collect()
}

/// First index from which `rhs − lhs` is linear (vanishing second
/// differences through the end of `rows`). Needs at least three rows.
pub fn linear_from(rows: &[AuditRow]) -> Option<i64> {
    if rows.len() < 3 {
        return None;
    }
    let gap: Vec<i64> = rows.iter().map(|r| r.rhs - r.lhs).collect();
    let second: Vec<i64> = gap.windows(3).map(|w| w[2] - 2 * w[1] + w[0]).collect();
    if *second.last()? != 0 {
        return None;
    }
    let mut start = second.len();
    while start > 0 && second[start - 1] == 0 {
        start -= 1;
    }
    Some(rows[start].m)
}

/// Rank-2 bundle whose sections realise curves of degree `d`:
/// `N(k − 1)` for `d = 2k`, `T(k − 1)` for `d = 2k + 1`.
pub fn select_e_d(d: i64) -> Result<BundleSpec> {
    if d <= 0 {
        return Err(Error::InvalidParameter(format!(
            "curve degree must be positive, got {d}"
        )));
    }
    let k = d / 2;
    let spec = if d % 2 == 0 {
        BundleSpec::n(k - 1)?
    } else {
        BundleSpec::t(k - 1)?
    };
    debug_assert_eq!(det_degree(&spec).ok(), Some(d));
    Ok(spec)
}
