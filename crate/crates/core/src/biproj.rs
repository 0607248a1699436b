//! The 2×2 determinant map `ψ(f1, f2, f3, f4) = f1·f4 − f2·f3` on
//! quadruples of bihomogeneous forms on ℙ¹×ℙ¹, its differential, and the
//! monomial witness `(X0^{ma}Y0^{mb}, X0^{ma}Y1^{mb}, X1^{ma}Y0^{mb}, X1^{ma}Y1^{mb})`.

use crate::error::{Error, Result};
use crate::linalg::{report, ExactMatrix, LinearMapReport};
use crate::poly::{Bidegree, BigradedPoly, Mono22, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSections {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    pub polys: [BigradedPoly; 4],
}

fn check_params(a: u32, b: u32, m: u32) -> Result<()> {
    if a == 0 || b == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need a, b, m >= 1, got ({a}, {b}, {m})"
        )));
    }
    Ok(())
}

impl QuadSections {
    pub fn new(a: u32, b: u32, m: u32, polys: [BigradedPoly; 4]) -> Result<Self> {
        check_params(a, b, m)?;
        let want = Bidegree(m * a, m * b);
        if let Some(p) = polys.iter().find(|p| p.bidegree() != want) {
            return Err(Error::DegreeMismatch {
                expected: want.to_string(),
                found: p.bidegree().to_string(),
            });
        }
        Ok(QuadSections { a, b, m, polys })
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree(self.m * self.a, self.m * self.b)
    }

    /// The monomial quadruple whose differential is surjective.
    pub fn witness(a: u32, b: u32, m: u32) -> Result<Self> {
        check_params(a, b, m)?;
        let (p, q) = (m * a, m * b);
        let mono = |i: u32, j: u32| {
            let mut e = [0; 4];
            e[i as usize] = p;
            e[2 + j as usize] = q;
            BigradedPoly::monomial(Mono22(e))
        };
        Self::new(a, b, m, [mono(0, 0), mono(0, 1), mono(1, 0), mono(1, 1)])
    }

    pub fn zero(a: u32, b: u32, m: u32) -> Result<Self> {
        check_params(a, b, m)?;
        let z = BigradedPoly::zero(Bidegree(m * a, m * b));
        Self::new(a, b, m, [z.clone(), z.clone(), z.clone(), z])
    }
}

pub fn psi(f: &QuadSections) -> BigradedPoly {
    let [f1, f2, f3, f4] = &f.polys;
    &(f1 * f4) - &(f2 * f3)
}

/// `dψ_F(f) = F1·f4 + F4·f1 − F2·f3 − F3·f2`.
pub fn dpsi_apply(at: &QuadSections, f: &[BigradedPoly; 4]) -> Result<BigradedPoly> {
    let want = at.bidegree();
    if let Some(p) = f.iter().find(|p| p.bidegree() != want) {
        return Err(Error::DegreeMismatch {
            expected: want.to_string(),
            found: p.bidegree().to_string(),
        });
    }
    let [c1, c2, c3, c4] = &at.polys;
    Ok(&(&(&(c1 * &f[3]) + &(c4 * &f[0])) - &(c2 * &f[2])) - &(c3 * &f[1]))
}

/// Matrix of `dψ_F : S⁴_{ma,mb} → S_{2ma,2mb}`; the domain is ordered by
/// slot, then by the monomial basis.
pub fn dpsi_matrix(at: &QuadSections) -> ExactMatrix {
    let g = at.bidegree();
    let [c1, c2, c3, c4] = &at.polys;
    // slot i of the input pairs with this coefficient polynomial and sign
    let partners = [(c4, false), (c3, true), (c2, true), (c1, false)];
    let basis = Mono22::basis(g);
    let mut columns = Vec::with_capacity(4 * basis.len());
    for (partner, negate) in partners {
        for mu in &basis {
            let img = partner.mul_monomial(mu);
            let img = if negate { -img } else { img };
            columns.push(img.coeff_vector());
        }
    }
    let target = Mono22::basis_len(Mono22::add_grades(g, g));
    ExactMatrix::from_columns(target, &columns).expect("uniform bidegree")
}

pub fn dpsi_report(at: &QuadSections) -> LinearMapReport {
    report(&dpsi_matrix(at))
}

/// Every monomial of bidegree `(2ma, 2mb)` is divisible by some
/// `X_i^{ma} Y_j^{mb}`; checked by enumeration.
pub fn monomial_cover_check(a: u32, b: u32, m: u32) -> Result<bool> {
    let w = QuadSections::witness(a, b, m)?;
    let leads: Vec<Mono22> = w
        .polys
        .iter()
        .map(|p| *p.leading_term().expect("witness is monomial").0)
        .collect();
    let g = w.bidegree();
    Ok(Mono22::basis(Mono22::add_grades(g, g))
        .iter()
        .all(|mono| leads.iter().any(|l| l.divides(mono))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> BigradedPoly {
        BigradedPoly::parse(s, None).unwrap()
    }

    #[test]
    fn psi_of_witness_vanishes() {
        let w = QuadSections::witness(1, 1, 1).unwrap();
        assert_eq!(w.polys[0], bp("X0*Y0"));
        assert_eq!(w.polys[3], bp("X1*Y1"));
        let v = psi(&w);
        assert!(v.is_zero());
        assert_eq!(v.bidegree(), Bidegree(2, 2));
    }

    #[test]
    fn parameter_checks() {
        assert!(QuadSections::witness(1, 0, 1).is_err());
        let polys = [bp("X0"), bp("X1"), bp("X1"), bp("X0")];
        assert!(QuadSections::new(1, 0, 1, polys).is_err());
        let mixed = [bp("X0*Y0"), bp("X0*Y1"), bp("X1*Y0"), bp("X1^2*Y1")];
        assert!(matches!(
            QuadSections::new(1, 1, 1, mixed),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(monomial_cover_check(0, 1, 1).is_err());
    }

    #[test]
    fn witness_differential() {
        let r = dpsi_report(&QuadSections::witness(1, 1, 1).unwrap());
        assert_eq!((r.domain_dim, r.target_dim, r.rank), (16, 9, 9));
        assert!(r.surjective);
        assert!(!dpsi_report(&QuadSections::zero(1, 1, 1).unwrap()).surjective);
    }

    #[test]
    fn cover_small_cases() {
        assert!(monomial_cover_check(1, 1, 1).unwrap());
        assert!(monomial_cover_check(2, 3, 1).unwrap());
        let f = bp("X0*X1*Y0*Y1");
        let lead = *f.leading_term().unwrap().0;
        assert!(Mono22::new(1, 0, 1, 0).divides(&lead));
    }

    #[test]
    fn matrix_matches_apply() {
        let at = QuadSections::new(
            1,
            1,
            1,
            [
                bp("X0*Y0 + X1*Y1"),
                bp("2*X0*Y1"),
                bp("X1*Y0 - X0*Y0"),
                bp("X1*Y1"),
            ],
        )
        .unwrap();
        let m = dpsi_matrix(&at);
        let basis = Mono22::basis(Bidegree(1, 1));
        for slot in 0..4 {
            for (j, mu) in basis.iter().enumerate() {
                let mut f: [BigradedPoly; 4] =
                    std::array::from_fn(|_| BigradedPoly::zero(Bidegree(1, 1)));
                f[slot] = BigradedPoly::monomial(*mu);
                let img = dpsi_apply(&at, &f).unwrap().coeff_vector();
                assert_eq!(m.column(slot * basis.len() + j), img);
            }
        }
    }
}
