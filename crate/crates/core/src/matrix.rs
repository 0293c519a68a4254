//! Dense matrices over `GradedPoly`.
//!
//! Graded matrices carry their shape only; the degree bookkeeping lives
//! with the callers (bimodules, maps, differentials), which validate
//! entries through `is_graded`: entry (a, b) must be zero or homogeneous
//! of degree `col_deg[b] + delta - row_deg[a]`.

use crate::poly::{GradedPoly, Rational};
use num::One;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    nrows: usize,
    ncols: usize,
    entries: Vec<GradedPoly>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nvars,
            nrows,
            ncols,
            entries: vec![GradedPoly::zero(nvars); nrows * ncols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zero(nvars, n, n);
        for i in 0..n {
            m.set(i, i, GradedPoly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<GradedPoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            for e in r {
                assert_eq!(e.nvars(), nvars);
                entries.push(e);
            }
        }
        PolyMatrix {
            nvars,
            nrows,
            ncols,
            entries,
        }
    }

    pub fn scalar(nvars: usize, nrows: usize, ncols: usize, c: Rational) -> Self {
        let mut m = Self::zero(nvars, nrows, ncols);
        for i in 0..nrows.min(ncols) {
            m.set(i, i, GradedPoly::constant(nvars, c.clone()));
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &GradedPoly {
        &self.entries[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GradedPoly) {
        assert_eq!(v.nvars(), self.nvars);
        self.entries[r * self.ncols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<GradedPoly> {
        (0..self.ncols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<GradedPoly> {
        (0..self.nrows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        PolyMatrix {
            nvars: self.nvars,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &GradedPoly) -> Self {
        PolyMatrix {
            nvars: self.nvars,
            nrows: self.nrows,
            ncols: self.ncols,
            entries: self.entries.iter().map(|e| e.mul(p)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let mut out = Self::zero(self.nvars, self.nrows, other.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.ncols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[GradedPoly]) -> Vec<GradedPoly> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|r| {
                let mut acc = GradedPoly::zero(self.nvars);
                for c in 0..self.ncols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = acc.add(&e.mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zero(
            self.nvars,
            self.nrows + other.nrows,
            self.ncols + other.ncols,
        );
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.nrows {
            for c in 0..other.ncols {
                out.set(self.nrows + r, self.ncols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Assemble from a grid of blocks with consistent shapes.
    pub fn from_blocks(nvars: usize, blocks: &[Vec<&PolyMatrix>]) -> Self {
        let row_heights: Vec<usize> = blocks.iter().map(|row| row[0].nrows()).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.ncols()).collect();
        let nrows: usize = row_heights.iter().sum();
        let ncols: usize = col_widths.iter().sum();
        let mut out = Self::zero(nvars, nrows, ncols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            assert_eq!(row.len(), col_widths.len(), "ragged block grid");
            let mut c0 = 0;
            for (bj, blk) in row.iter().enumerate() {
                assert_eq!(blk.nrows(), row_heights[bi], "block height mismatch");
                assert_eq!(blk.ncols(), col_widths[bj], "block width mismatch");
                for r in 0..blk.nrows() {
                    for c in 0..blk.ncols() {
                        out.set(r0 + r, c0 + c, blk.get(r, c).clone());
                    }
                }
                c0 += blk.ncols();
            }
            r0 += row_heights[bi];
        }
        out
    }

    /// Every entry zero or homogeneous of degree col_deg + delta - row_deg.
    pub fn is_graded(&self, row_degs: &[i64], col_degs: &[i64], delta: i64) -> bool {
        assert_eq!(row_degs.len(), self.nrows);
        assert_eq!(col_degs.len(), self.ncols);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let e = self.get(r, c);
                if !e.is_homogeneous_of(col_degs[c] + delta - row_degs[r]) {
                    return false;
                }
            }
        }
        true
    }

    /// Fraction-free Bareiss determinant (exact divisions only).
    pub fn det(&self) -> GradedPoly {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return GradedPoly::one(self.nvars);
        }
        let mut a: Vec<Vec<GradedPoly>> = (0..n).map(|r| self.row(r)).collect();
        let mut sign = Rational::one();
        let mut prev = GradedPoly::one(self.nvars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
                match swap {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return GradedPoly::zero(self.nvars),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division must be exact");
                }
            }
            for i in k + 1..n {
                a[i][k] = GradedPoly::zero(self.nvars);
            }
            prev = a[k][k].clone();
        }
        a[n - 1][n - 1].scale(&sign)
    }
}

/// Evaluate a polynomial at pairwise commuting matrices (variable i goes
/// to mats[i]); the ring map behind the right action on tensor products.
pub fn substitute_matrices(g: &GradedPoly, mats: &[PolyMatrix]) -> PolyMatrix {
    assert_eq!(g.nvars(), mats.len(), "one matrix per variable");
    assert!(!mats.is_empty(), "need at least one variable");
    let n = mats[0].nrows();
    let nvars = mats[0].nvars();
    for m in mats {
        assert_eq!(m.nrows(), n);
        assert_eq!(m.ncols(), n);
    }
    let mut out = PolyMatrix::zero(nvars, n, n);
    for (mono, c) in g.terms() {
        let mut term = PolyMatrix::scalar(nvars, n, n, c.clone());
        for (i, &e) in mono.0.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&mats[i]);
            }
        }
        out = out.add(&term);
    }
    out
}

pub fn pairwise_commute(mats: &[PolyMatrix]) -> bool {
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if mats[i].mul(&mats[j]) != mats[j].mul(&mats[i]) {
                return false;
            }
        }
    }
    true
}
