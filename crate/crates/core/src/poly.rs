//! Sparse multivariate polynomials over the rationals.
//!
//! `GradedPoly` models the regular functions on the reflection
//! representation: generators are the simple roots `a1..an`, every
//! variable sits in internal degree 2, so a monomial of total exponent
//! degree k has internal degree 2k.  Monomials are ordered graded-lex
//! with `a1` strongest; that order is used for leading terms, for the
//! canonical text form and for Groebner computations downstream.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector. `Ord` is graded lexicographic: total degree first,
/// then the exponent vector itself (earlier variables dominate).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Internal degree: each variable weighs 2.
    pub fn degree(&self) -> i64 {
        2 * self.total_degree() as i64
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// All monomials of the given total degree, in ascending graded-lex order.
pub fn monomials_of_total_degree(nvars: usize, total: u32) -> Vec<Monomial> {
    fn go(nvars: usize, total: u32, pos: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            cur.push(total as u16);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=total {
            cur.push(e as u16);
            go(nvars, total - e, pos + 1, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if total == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    go(nvars, total, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial; terms keyed by monomial, all coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedPoly {
    pub fn zero(nvars: usize) -> Self {
        GradedPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        GradedPoly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(nvars, i), Rational::one());
        GradedPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, list: Vec<(Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in list {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Linear form with the given coefficients on a1..an.
    pub fn linear_form(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> GradedPoly {
        GradedPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        GradedPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        GradedPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut r = Self::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Internal degree if homogeneous (all monomials of equal total degree).
    /// The zero polynomial is homogeneous of every degree; reported as None
    /// by `homogeneous_degree` and accepted by `is_homogeneous_of`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Nonzero scalar (a unit of the graded ring).
    pub fn as_unit_scalar(&self) -> Option<Rational> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// Exact division; None when the division leaves a remainder.
    pub fn div_exact(&self, d: &GradedPoly) -> Option<GradedPoly> {
        assert_eq!(self.nvars, d.nvars, "variable count mismatch");
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let m = dm.quotient_into(rm);
            let c = rc / dc;
            q.add_term(m.clone(), c.clone());
            rem = rem.sub(&d.mul_term(&m, &c));
        }
        Some(q)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(self.nvars),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Gcd of the coefficients, signed by the leading coefficient.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num::integer::gcd(num, c.numer().clone());
            den = num::integer::lcm(den, c.denom().clone());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        let c = Rational::new(num, den);
        if self.leading().unwrap().1.is_negative() {
            -c
        } else {
            c
        }
    }

    /// Scale to integer coefficients with gcd one and positive leading
    /// coefficient; returns the normalized polynomial and the factor it
    /// was divided by.
    pub fn primitive_part(&self) -> (GradedPoly, Rational) {
        let c = self.content();
        if c.is_zero() {
            return (self.clone(), Rational::one());
        }
        (self.scale(&(Rational::one() / &c)), c)
    }

    /// Monic in the leading coefficient.
    pub fn monic(&self) -> GradedPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rational::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// Ring endomorphism sending variable i to images[i].
    pub fn substitute_linear(&self, images: &[GradedPoly]) -> GradedPoly {
        assert_eq!(images.len(), self.nvars, "image count mismatch");
        let out_vars = if images.is_empty() {
            self.nvars
        } else {
            images[0].nvars()
        };
        let mut r = GradedPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32));
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Canonical text form; `parse` inverts it.
    pub fn canonical_text(&self) -> String {
        format!("{}", self)
    }

    pub fn parse(nvars: usize, s: &str) -> Result<GradedPoly, String> {
        parse_poly(nvars, s)
    }
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(format!("a{}", i + 1));
        } else if e > 1 {
            parts.push(format!("a{}^{}", i + 1, e));
        }
    }
    parts.join("*")
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ms = format_monomial(m);
            if ms.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", ms)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), ms)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            chars: s.chars().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next()
    }

    fn number(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap());
        }
        if digits.is_empty() {
            return Err("expected digits".to_string());
        }
        digits
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer: {}", e))
    }
}

fn parse_poly(nvars: usize, s: &str) -> Result<GradedPoly, String> {
    let mut lx = Lexer::new(s);
    let mut out = GradedPoly::zero(nvars);
    let mut sign = Rational::one();
    // leading sign
    if let Some('-') = lx.peek() {
        lx.bump();
        sign = -sign;
    } else if let Some('+') = lx.peek() {
        lx.bump();
    }
    loop {
        let (m, c) = parse_term(nvars, &mut lx)?;
        out.add_term(m, c * &sign);
        match lx.peek() {
            None => break,
            Some('+') => {
                lx.bump();
                sign = Rational::one();
            }
            Some('-') => {
                lx.bump();
                sign = -Rational::one();
            }
            Some(c) => return Err(format!("unexpected character '{}'", c)),
        }
    }
    Ok(out)
}

fn parse_term(nvars: usize, lx: &mut Lexer) -> Result<(Monomial, Rational), String> {
    let mut coeff = Rational::one();
    let mut mono = Monomial::one(nvars);
    let mut saw_factor = false;
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = lx.number()?;
                let mut r = Rational::from_integer(n);
                if let Some('/') = lx.peek() {
                    lx.bump();
                    let d = lx.number()?;
                    if d.is_zero() {
                        return Err("zero denominator".to_string());
                    }
                    r /= Rational::from_integer(d);
                }
                coeff *= r;
                saw_factor = true;
            }
            Some('a') => {
                lx.bump();
                let idx = lx.number()?;
                let idx: usize = idx
                    .try_into()
                    .map_err(|_| "variable index too large".to_string())?;
                if idx == 0 || idx > nvars {
                    return Err(format!("variable a{} out of range", idx));
                }
                let mut exp: u16 = 1;
                if let Some('^') = lx.peek() {
                    lx.bump();
                    let e = lx.number()?;
                    exp = e.try_into().map_err(|_| "exponent too large".to_string())?;
                }
                let mut v = vec![0u16; nvars];
                v[idx - 1] = exp;
                mono = mono.mul(&Monomial(v));
                saw_factor = true;
            }
            _ => break,
        }
        if let Some('*') = lx.peek() {
            lx.bump();
        } else {
            break;
        }
    }
    if !saw_factor {
        return Err("expected a term".to_string());
    }
    Ok((mono, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (GradedPoly, GradedPoly) {
        (GradedPoly::var(2, 0), GradedPoly::var(2, 1))
    }

    #[test]
    fn product_of_sum_and_difference() {
        let (x, y) = xy();
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn internal_degree_doubles_exponent_degree() {
        let (x, y) = xy();
        let p = x.mul(&y);
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert!(x.add(&x.mul(&y)).homogeneous_degree().is_none());
        assert!(GradedPoly::zero(2).homogeneous_degree().is_none());
        assert!(GradedPoly::zero(2).is_homogeneous_of(6));
    }

    #[test]
    fn additive_identity_and_scaling() {
        let (x, _) = xy();
        assert_eq!(GradedPoly::zero(2).add(&x), x);
        assert_eq!(x.scale(&rat_int(0)), GradedPoly::zero(2));
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn graded_lex_leading_term() {
        let (x, y) = xy();
        // x*y^2 beats x^2 in total degree; x^2 beats x*y lexicographically.
        let p = x.mul(&x).add(&x.mul(&y.mul(&y)));
        let (m, _) = p.leading().unwrap();
        assert_eq!(m, &Monomial(vec![1, 2]));
        let q = x.mul(&x).add(&x.mul(&y));
        assert_eq!(q.leading().unwrap().0, &Monomial(vec![2, 0]));
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let p = x.mul(&x).sub(&y.mul(&y));
        let q = p.div_exact(&x.sub(&y)).unwrap();
        assert_eq!(q, x.add(&y));
        assert!(p.div_exact(&x).is_none());
        assert_eq!(
            x.mul(&y).div_exact(&x).unwrap(),
            y,
            "monomial division is exact"
        );
    }

    #[test]
    fn substitution_is_ring_hom() {
        let (x, y) = xy();
        // x -> x + y, y -> -y
        let images = vec![x.add(&y), y.neg()];
        let p = x.mul(&y).add(&x);
        let q = x.mul(&x);
        let lhs = p.mul(&q).substitute_linear(&images);
        let rhs = p
            .substitute_linear(&images)
            .mul(&q.substitute_linear(&images));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_text_round_trip() {
        let (x, y) = xy();
        let p = x
            .mul(&x)
            .scale(&rat(3, 2))
            .sub(&x.mul(&y))
            .add(&GradedPoly::constant(2, rat_int(-7)));
        let s = p.canonical_text();
        assert_eq!(s, "3/2*a1^2 - a1*a2 - 7");
        assert_eq!(GradedPoly::parse(2, &s).unwrap(), p);
        assert_eq!(GradedPoly::parse(2, "0").unwrap(), GradedPoly::zero(2));
        assert_eq!(
            GradedPoly::parse(3, "a3^4 + 1/3").unwrap().canonical_text(),
            "a3^4 + 1/3"
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(GradedPoly::parse(2, "a3").is_err());
        assert!(GradedPoly::parse(2, "1 +").is_err());
        assert!(GradedPoly::parse(2, "b1").is_err());
        assert!(GradedPoly::parse(2, "1/0").is_err());
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let (x, y) = xy();
        let p = x.scale(&rat(-4, 3)).add(&y.scale(&rat_int(-2)));
        let (prim, c) = p.primitive_part();
        assert_eq!(c, rat(-2, 3));
        assert_eq!(prim, x.scale(&rat_int(2)).add(&y.scale(&rat_int(3))));
        assert!(prim.leading().unwrap().1 > &Rational::zero());
    }
}
