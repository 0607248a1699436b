#![allow(dead_code)]

use detrep_core::poly::{int, mono_basis, Rat};
use detrep_core::HomPoly;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn p(s: &str) -> HomPoly {
    HomPoly::parse(s, None).unwrap()
}

pub fn form(degree: u32) -> impl Strategy<Value = HomPoly> {
    let len = mono_basis(degree as i64).len();
    proptest::collection::vec(-10i64..=10, len).prop_map(move |c| {
        let c: Vec<Rat> = c.into_iter().map(int).collect();
        HomPoly::from_coeff_vector(degree, &c).unwrap()
    })
}

pub fn triple(degree: u32) -> impl Strategy<Value = [HomPoly; 3]> {
    (form(degree), form(degree), form(degree)).prop_map(|(a, b, c)| [a, b, c])
}

pub fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    proptest::collection::vec(proptest::collection::vec(-5i64..=5, cols), rows).prop_map(|m| {
        m.into_iter()
            .map(|r| r.into_iter().map(int).collect())
            .collect()
    })
}

/// Leibniz expansion over permutations; the reference determinant.
pub fn leibniz(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rat::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<Rat>], total: &mut Rat) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut prod = Rat::one();
        for (i, &j) in perm.iter().enumerate() {
            prod *= &m[i][j];
        }
        if inversions % 2 == 1 {
            prod = -prod;
        }
        *total += prod;
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}

pub fn sample_points() -> Vec<[Rat; 3]> {
    let raw = [
        [1, 2, 3],
        [-2, 1, 5],
        [3, -1, 2],
        [7, 4, -3],
        [1, 1, 1],
        [0, 2, -5],
        [5, -3, 1],
    ];
    raw.iter()
        .map(|r| [int(r[0]), int(r[1]), int(r[2])])
        .collect()
}
