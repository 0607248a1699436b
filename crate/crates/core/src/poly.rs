//! Homogeneous and bigraded polynomials with exact rational coefficients.
//!
//! Polynomials are sparse maps from monomials to nonzero rationals, tagged
//! with their (bi)degree. Every graded component has a fixed monomial basis
//! ([`mono_basis`], [`bimono_basis`]) which determines the coordinates used
//! by [`Poly::coeff_vector`] and, downstream, the row layout of every matrix
//! in the crate.
//!
//! Within a graded component monomials are ordered lexicographically with
//! `x > y > z` (resp. `X0 > X1`, `Y0 > Y1`): the basis of degree 2 is
//! `x^2, x*y, x*z, y^2, y*z, z^2`. The `Ord` impls on [`Mono3`] and
//! [`Mono22`] put the lex-largest monomial *first*, so iteration order,
//! basis order and coordinate order all coincide.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A monomial type with a grading and a deterministic basis per grade.
pub trait Monomial: Clone + Ord + Hash + fmt::Debug {
    type Grade: Copy + Eq + Ord + fmt::Debug + fmt::Display;

    /// Variable names, in exponent order.
    const VARS: &'static [&'static str];

    fn from_exponents(exps: &[u32]) -> Self;
    fn exponents(&self) -> &[u32];
    fn grade(&self) -> Self::Grade;
    fn zero_grade() -> Self::Grade;
    fn add_grades(a: Self::Grade, b: Self::Grade) -> Self::Grade;
    fn sub_grades(a: Self::Grade, b: Self::Grade) -> Option<Self::Grade>;
    fn basis(grade: Self::Grade) -> Vec<Self>;
    fn basis_len(grade: Self::Grade) -> usize;
    /// Position of `self` inside `Self::basis(self.grade())`.
    fn basis_index(&self) -> usize;

    fn one() -> Self {
        Self::from_exponents(&vec![0; Self::VARS.len()])
    }

    fn mul(&self, other: &Self) -> Self {
        let e: Vec<u32> = self
            .exponents()
            .iter()
            .zip(other.exponents())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_exponents(&e)
    }

    fn divides(&self, other: &Self) -> bool {
        self.exponents()
            .iter()
            .zip(other.exponents())
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let e: Vec<u32> = other
            .exponents()
            .iter()
            .zip(self.exponents())
            .map(|(a, b)| a - b)
            .collect();
        Some(Self::from_exponents(&e))
    }
}

/// `x^a y^b z^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono3(pub [u32; 3]);

impl Mono3 {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Mono3([a, b, c])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono3 {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Mono3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for Mono3 {
    type Grade = u32;
    const VARS: &'static [&'static str] = &["x", "y", "z"];

    fn from_exponents(exps: &[u32]) -> Self {
        Mono3([exps[0], exps[1], exps[2]])
    }
    fn exponents(&self) -> &[u32] {
        &self.0
    }
    fn grade(&self) -> u32 {
        self.degree()
    }
    fn zero_grade() -> u32 {
        0
    }
    fn add_grades(a: u32, b: u32) -> u32 {
        a + b
    }
    fn sub_grades(a: u32, b: u32) -> Option<u32> {
        a.checked_sub(b)
    }
    fn basis(d: u32) -> Vec<Self> {
        let mut out = Vec::with_capacity(Self::basis_len(d));
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push(Mono3([a, b, d - a - b]));
            }
        }
        out
    }
    fn basis_len(d: u32) -> usize {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
    fn basis_index(&self) -> usize {
        let d = self.degree() as usize;
        let s = d - self.0[0] as usize;
        s * (s + 1) / 2 + (s - self.0[1] as usize)
    }
}

/// `X0^a0 X1^a1 Y0^b0 Y1^b1`, bidegree `(a0 + a1, b0 + b1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono22(pub [u32; 4]);

impl Mono22 {
    pub fn new(a0: u32, a1: u32, b0: u32, b1: u32) -> Self {
        Mono22([a0, a1, b0, b1])
    }

    pub fn bidegree(&self) -> Bidegree {
        Bidegree(self.0[0] + self.0[1], self.0[2] + self.0[3])
    }
}

impl Ord for Mono22 {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Mono22 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bidegree `(a, b)` in the `X` and `Y` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bidegree(pub u32, pub u32);

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl Monomial for Mono22 {
    type Grade = Bidegree;
    const VARS: &'static [&'static str] = &["X0", "X1", "Y0", "Y1"];

    fn from_exponents(exps: &[u32]) -> Self {
        Mono22([exps[0], exps[1], exps[2], exps[3]])
    }
    fn exponents(&self) -> &[u32] {
        &self.0
    }
    fn grade(&self) -> Bidegree {
        self.bidegree()
    }
    fn zero_grade() -> Bidegree {
        Bidegree(0, 0)
    }
    fn add_grades(a: Bidegree, b: Bidegree) -> Bidegree {
        Bidegree(a.0 + b.0, a.1 + b.1)
    }
    fn sub_grades(a: Bidegree, b: Bidegree) -> Option<Bidegree> {
        Some(Bidegree(a.0.checked_sub(b.0)?, a.1.checked_sub(b.1)?))
    }
    fn basis(g: Bidegree) -> Vec<Self> {
        let Bidegree(a, b) = g;
        let mut out = Vec::with_capacity(Self::basis_len(g));
        for a0 in (0..=a).rev() {
            for b0 in (0..=b).rev() {
                out.push(Mono22([a0, a - a0, b0, b - b0]));
            }
        }
        out
    }
    fn basis_len(g: Bidegree) -> usize {
        (g.0 as usize + 1) * (g.1 as usize + 1)
    }
    fn basis_index(&self) -> usize {
        let b = (self.0[2] + self.0[3]) as usize;
        self.0[1] as usize * (b + 1) + self.0[3] as usize
    }
}

/// Monomials of total degree `d` in `x, y, z`; empty when `d < 0`.
pub fn mono_basis(d: i64) -> Vec<Mono3> {
    if d < 0 {
        Vec::new()
    } else {
        Mono3::basis(d as u32)
    }
}

/// Monomials of bidegree `(a, b)`; empty when either entry is negative.
pub fn bimono_basis(a: i64, b: i64) -> Vec<Mono22> {
    if a < 0 || b < 0 {
        Vec::new()
    } else {
        Mono22::basis(Bidegree(a as u32, b as u32))
    }
}

/// A polynomial all of whose monomials share one grade.
///
/// The grade is stored explicitly so that the zero polynomial of a given
/// degree still has a well-defined coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<M: Monomial> {
    grade: M::Grade,
    terms: BTreeMap<M, Rat>,
}

pub type HomPoly = Poly<Mono3>;
pub type BigradedPoly = Poly<Mono22>;

impl<M: Monomial> Poly<M> {
    pub fn zero(grade: M::Grade) -> Self {
        Poly {
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, M::one())
    }

    pub fn term(c: Rat, m: M) -> Self {
        let mut p = Self::zero(m.grade());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: M) -> Self {
        Self::term(Rat::one(), m)
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, summing
    /// repeated monomials. Fails if a monomial has the wrong grade.
    pub fn from_terms(grade: M::Grade, terms: impl IntoIterator<Item = (Rat, M)>) -> Result<Self> {
        let mut p = Self::zero(grade);
        for (c, m) in terms {
            if m.grade() != grade {
                return Err(Error::DegreeMismatch {
                    expected: grade.to_string(),
                    found: m.grade().to_string(),
                });
            }
            p.add_term(c, m);
        }
        Ok(p)
    }

    /// Inverse of [`Poly::coeff_vector`].
    pub fn from_coeff_vector(grade: M::Grade, coeffs: &[Rat]) -> Result<Self> {
        let basis = M::basis(grade);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coeffs.len(),
            });
        }
        let terms = basis
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        Ok(Poly { grade, terms })
    }

    fn add_term(&mut self, c: Rat, m: M) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn grade(&self) -> M::Grade {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// The lex-largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&M, &Rat)> {
        self.terms.iter().next()
    }

    /// Coordinates with respect to the monomial basis of this grade.
    pub fn coeff_vector(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); M::basis_len(self.grade)];
        for (m, c) in &self.terms {
            v[m.basis_index()] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.grade);
        }
        Poly {
            grade: self.grade,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_same_grade(&self, other: &Self) -> Result<()> {
        if self.grade != other.grade {
            return Err(Error::DegreeMismatch {
                expected: self.grade.to_string(),
                found: other.grade.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_grade(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_grade(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(-c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero(M::add_grades(self.grade, other.grade));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.mul(m2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &M) -> Self {
        Poly {
            grade: M::add_grades(self.grade, m.grade()),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Rat::one());
        for _ in 0..e {
            out = out.mul_poly(self);
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`. Uses division by lex leading terms.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let grade = M::sub_grades(self.grade, divisor.grade)?;
        let mut quotient = Self::zero(grade);
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = lm.quotient_of(rm)?;
            let qc = rc / lc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = rem.try_sub(&step).ok()?;
            quotient.add_term(qc, qm);
        }
        Some(quotient)
    }

    /// Parses text in the polynomial grammar. When `declared` is given the
    /// result must have that grade; the text `0` then yields the zero
    /// polynomial of that grade.
    pub fn parse(text: &str, declared: Option<M::Grade>) -> Result<Self> {
        let terms = parse_terms::<M>(text)?;
        let mut grade: Option<M::Grade> = None;
        for (c, m) in &terms {
            if c.is_zero() {
                continue;
            }
            match grade {
                None => grade = Some(m.grade()),
                Some(g) if g != m.grade() => {
                    return Err(Error::Inhomogeneous {
                        first: g.to_string(),
                        second: m.grade().to_string(),
                    })
                }
                _ => {}
            }
        }
        let grade = match (grade, declared) {
            (Some(g), Some(d)) if g != d => {
                return Err(Error::DegreeMismatch {
                    expected: d.to_string(),
                    found: g.to_string(),
                })
            }
            (Some(g), _) => g,
            (None, Some(d)) => d,
            (None, None) => M::zero_grade(),
        };
        let nonzero = terms.into_iter().filter(|(c, _)| !c.is_zero());
        Self::from_terms(grade, nonzero)
    }
}

impl HomPoly {
    pub fn degree(&self) -> u32 {
        self.grade
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(Mono3(e))
    }

    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    pub fn eval(&self, point: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (p, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= p;
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial derivative with respect to variable `i` (0 = x, 1 = y, 2 = z).
    /// The derivative of a constant is the zero form of degree 0.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.grade.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.0;
            dm[i] -= 1;
            out.add_term(c * int(e as i64), Mono3(dm));
        }
        out
    }

    /// Substitutes each variable by a linear form: `p(l0, l1, l2)`.
    pub fn substitute_linear(&self, forms: &[HomPoly; 3]) -> Self {
        let mut out = Self::zero(self.grade);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (form, &e) in forms.iter().zip(&m.0) {
                t = t.mul_poly(&form.pow(e));
            }
            out = out.try_add(&t).expect("substitution preserves degree");
        }
        out
    }
}

impl BigradedPoly {
    pub fn bidegree(&self) -> Bidegree {
        self.grade
    }
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        self.try_add(rhs)
            .expect("adding polynomials of different degree")
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        self.try_sub(rhs)
            .expect("subtracting polynomials of different degree")
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        self.mul_poly(rhs)
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly {
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<M: Monomial> Add for Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: Self) -> Poly<M> {
        &self + &rhs
    }
}

impl<M: Monomial> Sub for Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: Self) -> Poly<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Mul for Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: Self) -> Poly<M> {
        self.mul_poly(&rhs)
    }
}

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -&self
    }
}

fn write_monomial<M: Monomial>(f: &mut fmt::Formatter<'_>, m: &M) -> fmt::Result {
    let mut first = true;
    for (name, &e) in M::VARS.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let is_const = m.exponents().iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.grade, self)
    }
}

/// Which variable set a piece of polynomial text is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarSet {
    /// `x, y, z`
    Ternary,
    /// `X0, X1, Y0, Y1`
    Bigraded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedPoly {
    Hom(HomPoly),
    Bigraded(BigradedPoly),
}

pub fn parse_poly(text: &str, vars: VarSet) -> Result<ParsedPoly> {
    match vars {
        VarSet::Ternary => HomPoly::parse(text, None).map(ParsedPoly::Hom),
        VarSet::Bigraded => BigradedPoly::parse(text, None).map(ParsedPoly::Bigraded),
    }
}

struct Lexer<'a> {
    // (original byte offset, char) with whitespace removed
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Lexer { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(o, _)| o)
            .unwrap_or(self.src.len())
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        s.parse().ok()
    }

    fn coefficient(&mut self) -> Result<Option<Rat>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.eat('/') {
            let den = self
                .digits()
                .ok_or_else(|| self.err("expected denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(Rat::new(num, den)))
        } else {
            Ok(Some(Rat::from_integer(num)))
        }
    }

    fn variable<M: Monomial>(&mut self) -> Result<Option<usize>> {
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        if !c.is_ascii_alphabetic() {
            return Ok(None);
        }
        let start = self.offset();
        // longest match over the variable names
        let mut best: Option<(usize, usize)> = None;
        for (i, name) in M::VARS.iter().enumerate() {
            let n = name.chars().count();
            let candidate: String = self
                .chars
                .iter()
                .skip(self.pos)
                .take(n)
                .map(|&(_, c)| c)
                .collect();
            if candidate == *name && best.is_none_or(|(_, len)| n > len) {
                best = Some((i, n));
            }
        }
        match best {
            Some((i, n)) => {
                self.pos += n;
                Ok(Some(i))
            }
            None => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Err(Error::UnknownVariable { name, pos: start })
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat('^') {
            return Ok(1);
        }
        let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let e = e.to_u32().ok_or_else(|| self.err("exponent too large"))?;
        if e == 0 {
            return Err(self.err("exponent must be positive"));
        }
        Ok(e)
    }
}

fn parse_terms<M: Monomial>(text: &str) -> Result<Vec<(Rat, M)>> {
    let mut lx = Lexer::new(text);
    let mut out = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut sign = Rat::one();
        if lx.eat('-') {
            sign = -sign;
        } else if !lx.eat('+') && !first {
            return Err(lx.err("expected `+` or `-`"));
        }
        first = false;

        let coef = lx.coefficient()?;
        if coef.is_some() {
            lx.eat('*');
        }
        let mut exps = vec![0u32; M::VARS.len()];
        let mut saw_var = false;
        while let Some(v) = lx.variable::<M>()? {
            exps[v] += lx.exponent()?;
            saw_var = true;
            if !lx.eat('*') {
                // juxtaposition `xy` is accepted as well
                if !matches!(lx.peek(), Some(c) if c.is_ascii_alphabetic()) {
                    break;
                }
            } else if !matches!(lx.peek(), Some(c) if c.is_ascii_alphabetic()) {
                return Err(lx.err("expected variable after `*`"));
            }
        }
        if coef.is_none() && !saw_var {
            return Err(lx.err("expected coefficient or variable"));
        }
        let c = coef.unwrap_or_else(Rat::one) * sign;
        out.push((c, M::from_exponents(&exps)));
        if lx.peek().is_none() {
            break;
        }
    }
    Ok(out)
}
