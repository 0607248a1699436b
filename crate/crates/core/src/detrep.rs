//! Determinants of matrices of forms and the degeneracy curves of bundle
//! sections.
//!
//! Sections of a bundle `E = coker(⊕O(s_j) → ⊕O(a_i))` are represented by
//! tuples of forms in the ambient split bundle. The degeneracy curve of
//! `rank E` sections is the determinant of the square matrix whose rows are
//! the sections followed by the relation rows of the presentation.

use num_traits::{One, Zero};

use crate::audit::{det_degree, BundleSpec};
use crate::error::{Error, Result};
use crate::linalg::{rank, ExactMatrix};
use crate::poly::{HomPoly, Rat};

/// Square matrix of forms whose entry degrees have the shape `r_i + c_j`,
/// which makes the determinant homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<HomPoly>,
}

impl PolyMatrix {
    /// Degrees are taken from the entries (zero entries carry their declared degree).
    pub fn new(rows: Vec<Vec<HomPoly>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let m = PolyMatrix { size, entries };
        m.check_pattern()?;
        Ok(m)
    }

    /// Like [`PolyMatrix::new`], additionally checking a declared degree pattern.
    pub fn with_pattern(rows: Vec<Vec<HomPoly>>, pattern: &[Vec<u32>]) -> Result<Self> {
        let m = Self::new(rows)?;
        if pattern.len() != m.size || pattern.iter().any(|r| r.len() != m.size) {
            return Err(Error::InconsistentDegreePattern(
                "pattern shape does not match the matrix".into(),
            ));
        }
        for (i, row) in pattern.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                let found = m.get(i, j).degree();
                if found != want {
                    return Err(Error::DegreeMismatch {
                        expected: format!("{want} at ({i},{j})"),
                        found: found.to_string(),
                    });
                }
            }
        }
        Ok(m)
    }

    fn check_pattern(&self) -> Result<()> {
        let d = |i, j| self.get(i, j).degree() as i64;
        for i in 0..self.size {
            for j in 0..self.size {
                if d(i, j) + d(0, 0) != d(i, 0) + d(0, j) {
                    return Err(Error::InconsistentDegreePattern(format!(
                        "entry ({i},{j}) has degree {} which breaks homogeneity",
                        d(i, j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[HomPoly] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn degree_pattern(&self) -> Vec<Vec<u32>> {
        (0..self.size)
            .map(|i| self.row(i).iter().map(HomPoly::degree).collect())
            .collect()
    }

    /// Degree of the determinant: the sum along any generalized diagonal.
    pub fn det_degree(&self) -> u32 {
        (0..self.size).map(|i| self.get(i, i).degree()).sum()
    }

    pub fn rows(&self) -> Vec<Vec<HomPoly>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    /// Evaluates every entry at a point of ℚ³.
    pub fn eval(&self, point: &[Rat; 3]) -> ExactMatrix {
        let rows = (0..self.size)
            .map(|i| self.row(i).iter().map(|p| p.eval(point)).collect())
            .collect();
        ExactMatrix::from_rows(rows).expect("square matrix")
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> HomPoly {
    let rows = m.rows();
    let cols: Vec<usize> = (0..m.size).collect();
    cofactor(&rows, 0, &cols, m.det_degree())
}

fn cofactor(rows: &[Vec<HomPoly>], r: usize, cols: &[usize], degree: u32) -> HomPoly {
    if cols.is_empty() {
        return HomPoly::constant(Rat::one());
    }
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let mut acc = HomPoly::zero(degree);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&k| k != c).collect();
        let minor_degree = degree - entry.degree();
        let term = entry * &cofactor(rows, r + 1, &rest, minor_degree);
        acc = if pos % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Bareiss elimination over the polynomial ring; every division is exact.
pub fn det_fraction_free(m: &PolyMatrix) -> HomPoly {
    let n = m.size;
    let degree = m.det_degree();
    if n == 0 {
        return HomPoly::constant(Rat::one());
    }
    let mut a = m.rows();
    let mut prev = HomPoly::constant(Rat::one());
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return HomPoly::zero(degree);
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let det = if negate { -det } else { det };
    if det.is_zero() {
        HomPoly::zero(degree)
    } else {
        det
    }
}

/// Cofactor expansion up to 4×4, polynomial Bareiss beyond.
pub fn det_poly(m: &PolyMatrix) -> HomPoly {
    if m.size <= 4 {
        det_cofactor(m)
    } else {
        det_fraction_free(m)
    }
}

/// A global section of a bundle, given by a lift to the ambient split bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSection {
    bundle: BundleSpec,
    components: Vec<HomPoly>,
}

impl BundleSection {
    pub fn new(bundle: BundleSpec, components: Vec<HomPoly>) -> Result<Self> {
        bundle.validate()?;
        let degrees = bundle.ambient_degrees();
        if components.len() != degrees.len() {
            return Err(Error::DimensionMismatch {
                expected: degrees.len(),
                found: components.len(),
            });
        }
        for (c, &d) in components.iter().zip(&degrees) {
            if c.degree() as i64 != d {
                return Err(Error::DegreeMismatch {
                    expected: d.to_string(),
                    found: c.degree().to_string(),
                });
            }
        }
        Ok(BundleSection { bundle, components })
    }

    /// Parses components in the polynomial grammar, with degrees taken
    /// from the bundle's ambient summands.
    pub fn parse(bundle: BundleSpec, texts: &[&str]) -> Result<Self> {
        let degrees = bundle.ambient_degrees();
        if texts.len() != degrees.len() {
            return Err(Error::DimensionMismatch {
                expected: degrees.len(),
                found: texts.len(),
            });
        }
        let components = texts
            .iter()
            .zip(&degrees)
            .map(|(t, &d)| {
                let d = u32::try_from(d).map_err(|_| {
                    Error::InvalidBundle(format!("{bundle}: negative ambient degree"))
                })?;
                HomPoly::parse(t, Some(d))
            })
            .collect::<Result<_>>()?;
        Self::new(bundle, components)
    }

    pub fn bundle(&self) -> &BundleSpec {
        &self.bundle
    }

    pub fn components(&self) -> &[HomPoly] {
        &self.components
    }

    pub fn scale(&self, c: &Rat) -> Self {
        BundleSection {
            bundle: self.bundle,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.bundle != other.bundle {
            return Err(Error::MixedBundles);
        }
        Ok(BundleSection {
            bundle: self.bundle,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Concatenated coefficient vectors of the components.
    pub fn ambient_vector(&self) -> Vec<Rat> {
        self.components
            .iter()
            .flat_map(HomPoly::coeff_vector)
            .collect()
    }

    pub fn from_ambient_vector(bundle: BundleSpec, v: &[Rat]) -> Result<Self> {
        let mut components = Vec::new();
        let mut offset = 0;
        for d in bundle.ambient_degrees() {
            let d = d as u32;
            let len = crate::poly::mono_basis(d as i64).len();
            let chunk = v
                .get(offset..offset + len)
                .ok_or(Error::DimensionMismatch {
                    expected: offset + len,
                    found: v.len(),
                })?;
            components.push(HomPoly::from_coeff_vector(d, chunk)?);
            offset += len;
        }
        if offset != v.len() {
            return Err(Error::DimensionMismatch {
                expected: offset,
                found: v.len(),
            });
        }
        Self::new(bundle, components)
    }

    /// Adds `f · (relation row)`; the image in the bundle is unchanged.
    pub fn shift_by_relation(&self, row: usize, f: &HomPoly) -> Result<Self> {
        let rel = self
            .bundle
            .relation_rows()
            .into_iter()
            .nth(row)
            .ok_or_else(|| Error::InvalidParameter(format!("no relation row {row}")))?;
        if f.degree() as i64 != rel.source_degree {
            return Err(Error::DegreeMismatch {
                expected: rel.source_degree.to_string(),
                found: f.degree().to_string(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&rel.entries)
            .map(|(c, e)| c + &(f * e))
            .collect();
        Self::new(self.bundle, components)
    }
}

/// Sections first, relation rows last.
pub fn degeneracy_matrix(sections: &[BundleSection]) -> Result<PolyMatrix> {
    let bundle = *sections
        .first()
        .ok_or(Error::WrongSectionCount {
            expected: 1,
            found: 0,
        })?
        .bundle();
    if sections.iter().any(|s| *s.bundle() != bundle) {
        return Err(Error::MixedBundles);
    }
    if sections.len() != bundle.rank() {
        return Err(Error::WrongSectionCount {
            expected: bundle.rank(),
            found: sections.len(),
        });
    }
    let mut rows: Vec<Vec<HomPoly>> = sections.iter().map(|s| s.components().to_vec()).collect();
    rows.extend(bundle.relation_rows().into_iter().map(|r| r.entries));
    PolyMatrix::new(rows)
}

/// Defining form of the degeneracy locus of `rank E` sections.
pub fn wedge_curve(sections: &[BundleSection]) -> Result<HomPoly> {
    let m = degeneracy_matrix(sections)?;
    let det = det_poly(&m);
    debug_assert_eq!(
        Some(det.degree() as i64),
        det_degree(sections[0].bundle()).ok()
    );
    Ok(det)
}

/// Generically point-wise linearly independent ⟺ nonzero wedge.
pub fn is_gpli(sections: &[BundleSection]) -> Result<bool> {
    Ok(!wedge_curve(sections)?.is_zero())
}

/// Sampling check for GPLI: the sections are independent in the fibre at a
/// point `p` exactly when the evaluated degeneracy matrix is invertible.
/// A `true` answer is a certificate; `false` only means no sampled point
/// witnessed independence.
pub fn gpli_by_sampling(sections: &[BundleSection], points: &[[Rat; 3]]) -> Result<bool> {
    let m = degeneracy_matrix(sections)?;
    Ok(points.iter().any(|p| rank(&m.eval(p)) == m.size()))
}

/// Output of [`column_reduce_normalize`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub matrix: PolyMatrix,
    /// Images of `x, y, z` under the coordinate change applied to every entry.
    pub substitution: [HomPoly; 3],
    /// Column 3 had `h1·col1 + h2·col2` subtracted.
    pub multipliers: (HomPoly, HomPoly),
    /// Column 3 was divided by this nonzero constant.
    pub scale: Rat,
}

/// Brings a 3×3 matrix with last row `(l, m, Q)` (two independent linear
/// forms and a quadric outside `(l, m)`) to last row `(x, y, z²)` by a
/// linear change of coordinates, a column operation and a rescaling of the
/// last column. `det(output) = σ(det(input)) / scale`.
pub fn column_reduce_normalize(m: &PolyMatrix) -> Result<Normalization> {
    if m.size() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: m.size(),
        });
    }
    let (l, mm, q) = (m.get(2, 0), m.get(2, 1), m.get(2, 2));
    if l.degree() != 1 || mm.degree() != 1 || q.degree() != 2 {
        return Err(Error::InconsistentDegreePattern(
            "last row must have degrees (1, 1, 2)".into(),
        ));
    }
    let lin = |p: &HomPoly| -> Vec<Rat> { p.coeff_vector() };
    if rank(&ExactMatrix::from_rows(vec![lin(l), lin(mm)])?) < 2 {
        return Err(Error::DependentLinearForms);
    }
    // complete (l, m) to a basis with the first of z, y, x that works
    let a = [2usize, 1, 0]
        .into_iter()
        .map(|i| ExactMatrix::from_rows(vec![lin(l), lin(mm), lin(&HomPoly::var(i))]).unwrap())
        .find(|a| rank(a) == 3)
        .expect("two independent forms extend to a basis");
    let inv = invert3(&a);
    let substitution: [HomPoly; 3] =
        std::array::from_fn(|i| HomPoly::from_coeff_vector(1, inv.row(i)).expect("linear form"));

    let rows: Vec<Vec<HomPoly>> = m
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|p| p.substitute_linear(&substitution))
                .collect()
        })
        .collect();

    // σ(Q) = y·h2 + x·h1 + c·z²
    let q_sub = &rows[2][2];
    let mut h1 = HomPoly::zero(1);
    let mut h2 = HomPoly::zero(1);
    let mut c = Rat::zero();
    for (mono, coeff) in q_sub.terms() {
        let [ex, ey, ez] = mono.0;
        if ey > 0 {
            h2 = &h2 + &HomPoly::term(coeff.clone(), crate::poly::Mono3::new(ex, ey - 1, ez));
        } else if ex > 0 {
            h1 = &h1 + &HomPoly::term(coeff.clone(), crate::poly::Mono3::new(ex - 1, ey, ez));
        } else {
            c = coeff.clone();
        }
    }
    if c.is_zero() {
        return Err(Error::QuadricInIdeal);
    }
    let inv_c = Rat::one() / &c;
    let out: Vec<Vec<HomPoly>> = rows
        .iter()
        .map(|r| {
            let col3 = &(&r[2] - &(&h1 * &r[0])) - &(&h2 * &r[1]);
            vec![r[0].clone(), r[1].clone(), col3.scale(&inv_c)]
        })
        .collect();
    Ok(Normalization {
        matrix: PolyMatrix::new(out)?,
        substitution,
        multipliers: (h1, h2),
        scale: c,
    })
}

fn invert3(a: &ExactMatrix) -> ExactMatrix {
    let n = a.rows();
    let mut aug = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = a.row(i).to_vec();
        row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        aug.push(row);
    }
    let (rows, _) = crate::linalg::rref(&ExactMatrix::from_rows(aug).unwrap());
    ExactMatrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()).unwrap()
}

/// Parses the matrix file format: a header `degrees: d d d | d d d | ...`
/// followed by one matrix row per line with entries separated by `;`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_matrix_file(text: &str) -> Result<PolyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::MatrixFormat {
        line: 0,
        msg: "missing degree header".into(),
    })?;
    let spec = header.strip_prefix("degrees:").ok_or(Error::MatrixFormat {
        line: hline,
        msg: "header must start with `degrees:`".into(),
    })?;
    let pattern: Vec<Vec<u32>> = spec
        .split('|')
        .map(|row| {
            row.split([',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse().map_err(|_| Error::MatrixFormat {
                        line: hline,
                        msg: format!("bad degree `{s}`"),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (lineno, line) in lines {
        let i = rows.len();
        let expected = pattern.get(i).ok_or(Error::MatrixFormat {
            line: lineno,
            msg: "more rows than the degree header declares".into(),
        })?;
        let cells: Vec<&str> = line.split(';').collect();
        if cells.len() != expected.len() {
            return Err(Error::MatrixFormat {
                line: lineno,
                msg: format!("expected {} entries, found {}", expected.len(), cells.len()),
            });
        }
        let row = cells
            .iter()
            .zip(expected)
            .map(|(c, &d)| {
                HomPoly::parse(c, Some(d)).map_err(|e| Error::MatrixFormat {
                    line: lineno,
                    msg: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != pattern.len() {
        return Err(Error::MatrixFormat {
            line: 0,
            msg: format!("expected {} rows, found {}", pattern.len(), rows.len()),
        });
    }
    PolyMatrix::with_pattern(rows, &pattern)
}

pub fn format_matrix_file(m: &PolyMatrix) -> String {
    let header: Vec<String> = m
        .degree_pattern()
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    let mut out = format!("degrees: {}\n", header.join(" | "));
    for i in 0..m.size() {
        let cells: Vec<String> = m.row(i).iter().map(HomPoly::to_string).collect();
        out.push_str(&cells.join("; "));
        out.push('\n');
    }
    out
}
