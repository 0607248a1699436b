//! Exact linear algebra over the rationals.
//!
//! All routines first clear denominators row by row (which changes neither
//! the rank nor the solution set) and then run fraction-free elimination on
//! big integers: Bareiss forward elimination for [`rank`] and its
//! Gauss-Jordan variant for kernels and preimages. Every division performed
//! is exact because each intermediate entry is a minor of the input.
//!
//! Pivoting is deterministic: the pivot for a column is the first row (in
//! row order) at or below the current pivot row with a nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Appends `v` as a new last column.
    pub fn augment(&self, v: &[Rat]) -> Result<Self> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + 1);
        for (i, vi) in v.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, vi.clone());
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `yᵀ M`.
    pub fn left_mul_vec(&self, y: &[Rat]) -> Result<Vec<Rat>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: y.len(),
            });
        }
        let mut out = vec![Rat::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += yi * a;
            }
        }
        Ok(out)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn find_pivot(a: &[Vec<BigInt>], from: usize, col: usize) -> Option<usize> {
    (from..a.len()).find(|&i| !a[i][col].is_zero())
}

/// Bareiss forward elimination; returns the pivot columns.
fn bareiss_forward(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = find_pivot(a, r, c) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pv = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pv * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pv.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Result of fraction-free Gauss-Jordan elimination: every pivot entry
/// equals `scale`, and pivot columns are zero outside their pivot row.
struct GaussJordan {
    reduced: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    scale: BigInt,
}

fn gauss_jordan(mut a: Vec<Vec<BigInt>>, cols: usize) -> GaussJordan {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = find_pivot(&a, r, c) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let pv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let mut v = &pv * &row[j];
                if !f.is_zero() {
                    v -= &f * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        a[r] = pivot_row;
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    GaussJordan {
        reduced: a,
        pivots,
        scale: prev,
    }
}

/// Rank over ℚ.
pub fn rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.integer_rows();
    bareiss_forward(&mut a, m.cols).len()
}

/// Pivot columns of the row echelon form, in increasing order.
pub fn pivot_columns(m: &ExactMatrix) -> Vec<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Vec::new();
    }
    let mut a = m.integer_rows();
    bareiss_forward(&mut a, m.cols)
}

/// Reduced row echelon form over ℚ: the nonzero rows (pivot entries 1)
/// and their pivot columns.
pub fn rref(m: &ExactMatrix) -> (Vec<Vec<Rat>>, Vec<usize>) {
    if m.rows == 0 || m.cols == 0 {
        return (Vec::new(), Vec::new());
    }
    let gj = gauss_jordan(m.integer_rows(), m.cols);
    let rows = gj
        .reduced
        .iter()
        .take(gj.pivots.len())
        .map(|row| {
            row.iter()
                .map(|v| Rat::new(v.clone(), gj.scale.clone()))
                .collect()
        })
        .collect();
    (rows, gj.pivots)
}

/// Basis of the right null space, one vector per non-pivot column.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Rat>> {
    let n = m.cols;
    if m.rows == 0 {
        return (0..n).map(|j| unit(n, j)).collect();
    }
    let gj = gauss_jordan(m.integer_rows(), n);
    let mut is_pivot = vec![false; n];
    for &c in &gj.pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![Rat::zero(); n];
            v[j] = Rat::one();
            for (i, &c) in gj.pivots.iter().enumerate() {
                v[c] = -Rat::new(gj.reduced[i][j].clone(), gj.scale.clone());
            }
            v
        })
        .collect()
}

fn unit(n: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[j] = Rat::one();
    v
}

/// Outcome of a column-space membership query, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `M · preimage = v`.
    InSpan { preimage: Vec<Rat> },
    /// `witnessᵀ · M = 0` and `witnessᵀ · v ≠ 0`.
    NotInSpan { witness: Vec<Rat> },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::InSpan { .. })
    }

    /// Re-checks the certificate against `m` and `v`.
    pub fn verify(&self, m: &ExactMatrix, v: &[Rat]) -> bool {
        match self {
            Membership::InSpan { preimage } => m.mul_vec(preimage).is_ok_and(|w| w == v),
            Membership::NotInSpan { witness } => {
                m.left_mul_vec(witness)
                    .is_ok_and(|w| w.iter().all(Zero::is_zero))
                    && !dot(witness, v).is_zero()
            }
        }
    }
}

pub fn in_column_space(m: &ExactMatrix, v: &[Rat]) -> Result<Membership> {
    let aug = m.augment(v)?;
    let n = m.cols;
    let gj = gauss_jordan(aug.integer_rows(), n + 1);
    if gj.pivots.last() == Some(&n) {
        let witness = kernel_basis(&m.transpose())
            .into_iter()
            .find(|y| !dot(y, v).is_zero())
            .expect("inconsistent system has a separating functional");
        return Ok(Membership::NotInSpan { witness });
    }
    let mut preimage = vec![Rat::zero(); n];
    for (i, &c) in gj.pivots.iter().enumerate() {
        preimage[c] = Rat::new(gj.reduced[i][n].clone(), gj.scale.clone());
    }
    Ok(Membership::InSpan { preimage })
}

/// Rank and surjectivity of a linear map given by its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapReport {
    pub rank: usize,
    pub domain_dim: usize,
    pub target_dim: usize,
    pub surjective: bool,
    /// A nonzero functional vanishing on the image, when not surjective.
    pub cokernel_witness: Option<Vec<Rat>>,
}

pub fn report(m: &ExactMatrix) -> LinearMapReport {
    let r = rank(m);
    let surjective = r == m.rows;
    let cokernel_witness = if surjective {
        None
    } else if m.cols == 0 {
        Some(unit(m.rows, 0))
    } else {
        kernel_basis(&m.transpose()).into_iter().next()
    };
    LinearMapReport {
        rank: r,
        domain_dim: m.cols,
        target_dim: m.rows,
        surjective,
        cokernel_witness,
    }
}
