//! The graded fraction field of the polynomial ring.
//!
//! Fractions are kept fully reduced: cheap passes (coefficient content,
//! common monomial factors, exact-division trials) run first, then a
//! primitive pseudo-remainder gcd removes any remaining common factor.
//! Without that last step the Gauss elimination over the fraction field
//! blows up on modules of rank eight and beyond. Equality still tests
//! by cross multiplication, so any representative is correct.

use crate::gcd::poly_gcd;
use crate::matrix::PolyMatrix;
use crate::poly::{GradedPoly, Rational};
use num::One;
use std::fmt;

#[derive(Clone, Debug)]
pub struct FracElem {
    num: GradedPoly,
    den: GradedPoly,
}

impl FracElem {
    pub fn from_poly(p: GradedPoly) -> Self {
        let n = p.nvars();
        FracElem {
            num: p,
            den: GradedPoly::one(n),
        }
    }

    pub fn new(num: GradedPoly, den: GradedPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = FracElem { num, den };
        f.reduce();
        f
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(GradedPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(GradedPoly::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &GradedPoly {
        &self.num
    }

    pub fn den(&self) -> &GradedPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_unit_scalar().map_or(false, |c| c.is_one())
    }

    /// Degree of a homogeneous fraction (numerator minus denominator).
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let dn = self.num.homogeneous_degree()?;
        let dd = self.den.homogeneous_degree()?;
        Some(dn - dd)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero()
            || (self.num.homogeneous_degree().is_some() && self.den.homogeneous_degree().is_some())
    }

    fn reduce(&mut self) {
        let n = self.num.nvars();
        if self.num.is_zero() {
            self.den = GradedPoly::one(n);
            return;
        }
        // common monomial factor
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            let gp = GradedPoly::from_terms(n, vec![(g, Rational::one())]);
            self.num = self.num.div_exact(&gp).unwrap();
            self.den = self.den.div_exact(&gp).unwrap();
        }
        // exact-division trials
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = GradedPoly::one(n);
        } else if let Some(q) = self.den.div_exact(&self.num) {
            self.num = GradedPoly::one(n);
            self.den = q;
        } else if !self.num.is_constant() && !self.den.is_constant() {
            let g = poly_gcd(&self.num, &self.den);
            if !g.is_constant() {
                self.num = self.num.div_exact(&g).unwrap();
                self.den = self.den.div_exact(&g).unwrap();
            }
        }
        // primitive positive-leading denominator
        let (dp, c) = self.den.primitive_part();
        self.den = dp;
        self.num = self.num.scale(&(Rational::one() / c));
    }

    pub fn add(&self, other: &FracElem) -> FracElem {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        FracElem::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> FracElem {
        FracElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &FracElem) -> FracElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FracElem) -> FracElem {
        FracElem::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> FracElem {
        assert!(!self.is_zero(), "inverting zero");
        FracElem::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &FracElem) -> FracElem {
        self.mul(&other.inv())
    }
}

impl PartialEq for FracElem {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for FracElem {}

impl fmt::Display for FracElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Least common multiple up to scalars.
pub fn poly_lcm(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    assert!(!a.is_zero() && !b.is_zero());
    if b.div_exact(a).is_some() {
        return b.primitive_part().0;
    }
    if a.div_exact(b).is_some() {
        return a.primitive_part().0;
    }
    let g = poly_gcd(a, b);
    let prod = a.mul(b);
    let over = if g.is_constant() {
        prod
    } else {
        prod.div_exact(&g).unwrap()
    };
    over.primitive_part().0
}

/// Scale each row to polynomial entries; returns the cleared matrix and
/// the per-row scaling factors.
pub fn clear_denominators(rows: &[Vec<FracElem>], nvars: usize) -> (PolyMatrix, Vec<GradedPoly>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut out_rows = Vec::with_capacity(rows.len());
    let mut factors = Vec::with_capacity(rows.len());
    for row in rows {
        let mut factor = GradedPoly::one(nvars);
        for e in row {
            if !e.is_zero() && !e.den().as_unit_scalar().is_some() {
                factor = poly_lcm(&factor, e.den());
            }
        }
        let cleared: Vec<GradedPoly> = row
            .iter()
            .map(|e| {
                let f = e.mul(&FracElem::from_poly(factor.clone()));
                assert!(f.is_polynomial(), "factor did not clear denominator");
                f.num().clone()
            })
            .collect();
        out_rows.push(cleared);
        factors.push(factor);
    }
    if out_rows.is_empty() {
        return (PolyMatrix::zero(nvars, 0, ncols), factors);
    }
    (PolyMatrix::from_rows(nvars, out_rows), factors)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<FracElem>>, ncols: usize, nvars: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv();
        for j in c..ncols {
            rows[r][j] = rows[r][j].mul(&inv);
        }
        rows[r][c] = FracElem::one(nvars);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let sub = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&sub);
                }
                rows[i][c] = FracElem::zero(nvars);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Kernel of a matrix over the fraction field. Returns an echelon-form
/// basis (unit at the free column); homogeneous input rows give
/// homogeneous basis vectors. Vectors are normalized to primitive
/// polynomial entries.
pub fn frac_kernel(rows: &[Vec<FracElem>], ncols: usize, nvars: usize) -> Vec<Vec<FracElem>> {
    let mut m: Vec<Vec<FracElem>> = rows
        .iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .cloned()
        .collect();
    for row in &m {
        assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut m, ncols, nvars);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FracElem::zero(nvars); ncols];
            v[f] = FracElem::one(nvars);
            for (ri, &p) in pivots.iter().enumerate() {
                v[p] = m[ri][f].neg();
            }
            normalize_vector(&mut v, nvars);
            v
        })
        .collect()
}

/// Clear denominators and divide by content; first nonzero entry gets a
/// monic leading coefficient sign.
fn normalize_vector(v: &mut [FracElem], nvars: usize) {
    let mut factor = GradedPoly::one(nvars);
    for e in v.iter() {
        if !e.is_zero() && e.den().as_unit_scalar().is_none() {
            factor = poly_lcm(&factor, e.den());
        }
    }
    let ff = FracElem::from_poly(factor);
    for e in v.iter_mut() {
        *e = e.mul(&ff);
    }
    // content across all entries
    let mut content: Option<Rational> = None;
    for e in v.iter() {
        if !e.is_zero() {
            let c = e.num().content();
            content = Some(match content {
                None => c,
                Some(prev) => {
                    let num = num::integer::gcd(prev.numer().clone(), c.numer().clone());
                    let den = num::integer::lcm(prev.denom().clone(), c.denom().clone());
                    Rational::new(num, den)
                }
            });
        }
    }
    if let Some(mut c) = content {
        if let Some(first) = v.iter().find(|e| !e.is_zero()) {
            if first.num().leading().unwrap().1 < &Rational::from_integer(0.into()) {
                c = -c;
            }
        }
        let inv = FracElem::from_poly(GradedPoly::constant(nvars, Rational::one() / c));
        for e in v.iter_mut() {
            *e = e.mul(&inv);
        }
    }
}

/// Inverse of a square matrix over the fraction field.
pub fn frac_invert(mat: &[Vec<FracElem>], nvars: usize) -> Option<Vec<Vec<FracElem>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<FracElem>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    FracElem::one(nvars)
                } else {
                    FracElem::zero(nvars)
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n, nvars);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
