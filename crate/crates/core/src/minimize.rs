//! Complexes of graded free left modules and their minimal models.
//!
//! Forgetting the right action turns a bimodule complex into matrices
//! over R acting on columns of generator degrees. Gaussian elimination
//! of scalar entries removes contractible two-term pieces; a bounded
//! complex of graded free modules is exact precisely when this
//! process wipes it out completely, and the graded pieces of its
//! cohomology are exact rank counts over the rationals.

use crate::complex::Complex;
use crate::linalg::{rank_of_rows, SparseVec};
use crate::matrix::PolyMatrix;
use crate::poly::{monomials_of_total_degree, Monomial};
use std::collections::HashMap;

#[derive(Clone, PartialEq, Debug)]
pub struct FreeComplex {
    nvars: usize,
    min_deg: i64,
    degrees: Vec<Vec<i64>>,
    diffs: Vec<PolyMatrix>,
}

impl FreeComplex {
    pub fn new(nvars: usize, min_deg: i64, degrees: Vec<Vec<i64>>, diffs: Vec<PolyMatrix>) -> Self {
        let c = FreeComplex {
            nvars,
            min_deg,
            degrees,
            diffs,
        };
        c.validate();
        c
    }

    pub fn validate(&self) {
        assert_eq!(self.diffs.len(), self.degrees.len().saturating_sub(1));
        for (k, d) in self.diffs.iter().enumerate() {
            assert!(
                d.is_graded(&self.degrees[k + 1], &self.degrees[k], 0),
                "differential {} not graded",
                k
            );
        }
        for k in 1..self.diffs.len() {
            assert!(self.diffs[k].mul(&self.diffs[k - 1]).is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.degrees.len() as i64 - 1
    }

    pub fn gen_degrees(&self, i: i64) -> &[i64] {
        static EMPTY: &[i64] = &[];
        let idx = i - self.min_deg;
        if idx < 0 || idx as usize >= self.degrees.len() {
            EMPTY
        } else {
            &self.degrees[idx as usize]
        }
    }

    pub fn rank_at(&self, i: i64) -> usize {
        self.gen_degrees(i).len()
    }

    pub fn diff(&self, i: i64) -> PolyMatrix {
        let idx = i - self.min_deg;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            self.diffs[idx as usize].clone()
        } else {
            PolyMatrix::zero(self.nvars, self.rank_at(i + 1), self.rank_at(i))
        }
    }

    pub fn total_rank(&self) -> usize {
        self.degrees.iter().map(|d| d.len()).sum()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.total_rank() == 0
    }

    /// Homotopy-equivalent complex with no scalar entries in any
    /// differential.
    pub fn minimize(&self) -> FreeComplex {
        let mut degrees = self.degrees.clone();
        let mut diffs = self.diffs.clone();
        loop {
            // find a unit entry
            let mut pivot: Option<(usize, usize, usize)> = None;
            'search: for (k, d) in diffs.iter().enumerate() {
                for r in 0..d.nrows() {
                    for c in 0..d.ncols() {
                        if d.get(r, c).as_unit_scalar().is_some() {
                            pivot = Some((k, r, c));
                            break 'search;
                        }
                    }
                }
            }
            let (k, r, c) = match pivot {
                None => break,
                Some(p) => p,
            };
            let p = diffs[k].get(r, c).as_unit_scalar().unwrap();

            // clear the pivot column; mirrored column ops on d_{k+1}
            let rows = diffs[k].nrows();
            for r2 in 0..rows {
                if r2 == r || diffs[k].get(r2, c).is_zero() {
                    continue;
                }
                let lambda = diffs[k].get(r2, c).scale(&p.recip());
                for c2 in 0..diffs[k].ncols() {
                    let v = diffs[k].get(r2, c2).sub(&lambda.mul(diffs[k].get(r, c2)));
                    diffs[k].set(r2, c2, v);
                }
                if k + 1 < diffs.len() {
                    for r3 in 0..diffs[k + 1].nrows() {
                        let v = diffs[k + 1]
                            .get(r3, r)
                            .add(&lambda.mul(diffs[k + 1].get(r3, r2)));
                        diffs[k + 1].set(r3, r, v);
                    }
                }
            }
            // clear the pivot row; mirrored row ops on d_{k-1}
            let cols = diffs[k].ncols();
            for c2 in 0..cols {
                if c2 == c || diffs[k].get(r, c2).is_zero() {
                    continue;
                }
                let mu = diffs[k].get(r, c2).scale(&p.recip());
                for r2 in 0..diffs[k].nrows() {
                    let v = diffs[k].get(r2, c2).sub(&mu.mul(diffs[k].get(r2, c)));
                    diffs[k].set(r2, c2, v);
                }
                if k > 0 {
                    for c3 in 0..diffs[k - 1].ncols() {
                        let v = diffs[k - 1]
                            .get(c, c3)
                            .add(&mu.mul(diffs[k - 1].get(c2, c3)));
                        diffs[k - 1].set(c, c3, v);
                    }
                }
            }
            // after clearing, nothing else touches the pivot pair
            if k > 0 {
                assert!(diffs[k - 1].row(c).iter().all(|e| e.is_zero()));
            }
            if k + 1 < diffs.len() {
                assert!(diffs[k + 1].col(r).iter().all(|e| e.is_zero()));
            }

            degrees[k].remove(c);
            degrees[k + 1].remove(r);
            diffs[k] = drop_row_col(&diffs[k], Some(r), Some(c));
            if k > 0 {
                diffs[k - 1] = drop_row_col(&diffs[k - 1], Some(c), None);
            }
            if k + 1 < diffs.len() {
                diffs[k + 1] = drop_row_col(&diffs[k + 1], None, Some(r));
            }
        }
        FreeComplex::new(self.nvars, self.min_deg, degrees, diffs)
    }

    /// Bounded complexes of graded free modules are exact exactly
    /// when their minimal model is zero.
    pub fn is_exact(&self) -> bool {
        self.minimize().is_zero_complex()
    }

    /// Equality after rescaling each generator by a nonzero rational,
    /// the slack under which expected complexes are quoted. Only
    /// implemented for terms of rank at most one: there each scale is
    /// shared by two consecutive differentials and can be chosen
    /// degree by degree, so the condition is that matching entries are
    /// proportional.
    pub fn equal_up_to_unit_rescaling(&self, other: &FreeComplex) -> bool {
        assert!(
            self.degrees.iter().chain(&other.degrees).all(|d| d.len() <= 1),
            "rescaling comparison needs rank at most one per term"
        );
        if self.min_deg != other.min_deg || self.degrees != other.degrees {
            return false;
        }
        for i in self.min_deg()..self.max_deg() {
            let (a, b) = (self.diff(i), other.diff(i));
            if a.nrows() == 0 || a.ncols() == 0 {
                continue;
            }
            let (pa, pb) = (a.get(0, 0), b.get(0, 0));
            if pa.is_zero() != pb.is_zero() {
                return false;
            }
            if pa.is_zero() {
                continue;
            }
            let ca = pa.leading().unwrap().1.clone();
            let cb = pb.leading().unwrap().1.clone();
            if pa.scale(&(cb / ca)) != *pb {
                return false;
            }
        }
        true
    }

    /// dim over the rationals of H^i in internal degree d.
    pub fn cohomology_dim(&self, i: i64, d: i64) -> usize {
        let dim_here = graded_piece(self.nvars, self.gen_degrees(i), d).len();
        let r_out = graded_rank(&self.diff(i), self.gen_degrees(i), self.gen_degrees(i + 1), d);
        let r_in = graded_rank(
            &self.diff(i - 1),
            self.gen_degrees(i - 1),
            self.gen_degrees(i),
            d,
        );
        dim_here - r_out - r_in
    }
}

fn drop_row_col(m: &PolyMatrix, row: Option<usize>, col: Option<usize>) -> PolyMatrix {
    let rows: Vec<usize> = (0..m.nrows()).filter(|&r| Some(r) != row).collect();
    let cols: Vec<usize> = (0..m.ncols()).filter(|&c| Some(c) != col).collect();
    let mut out = PolyMatrix::zero(m.nvars(), rows.len(), cols.len());
    for (ri, &r) in rows.iter().enumerate() {
        for (ci, &c) in cols.iter().enumerate() {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.set(ri, ci, v.clone());
            }
        }
    }
    out
}

/// Basis slots (generator, monomial) of the degree-d piece.
fn graded_piece(nvars: usize, degs: &[i64], d: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (g, &dg) in degs.iter().enumerate() {
        let rem = d - dg;
        if rem >= 0 && rem % 2 == 0 {
            for m in monomials_of_total_degree(nvars, rem as u32 / 2) {
                out.push((g, m));
            }
        }
    }
    out
}

fn graded_rank(diff: &PolyMatrix, src_degs: &[i64], tgt_degs: &[i64], d: i64) -> usize {
    let nv = diff.nvars();
    let src = graded_piece(nv, src_degs, d);
    let tgt = graded_piece(nv, tgt_degs, d);
    if src.is_empty() || tgt.is_empty() {
        return 0;
    }
    let index: HashMap<(usize, Monomial), usize> = tgt
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let rows: Vec<SparseVec> = src
        .iter()
        .map(|(g, mu)| {
            let mut row: SparseVec = Vec::new();
            for r in 0..diff.nrows() {
                let e = diff.get(r, *g);
                for (nu, c) in e.terms() {
                    if let Some(&slot) = index.get(&(r, mu.mul(nu))) {
                        row.push((slot, c.clone()));
                    }
                }
            }
            row.sort_by_key(|&(i, _)| i);
            row
        })
        .collect();
    rank_of_rows(index.len(), rows)
}

/// Left module structure of a bimodule complex.
pub fn forget_left(c: &Complex) -> FreeComplex {
    let degrees: Vec<Vec<i64>> = c
        .degrees()
        .map(|i| c.term(i).map_or(Vec::new(), |m| m.gen_degrees().to_vec()))
        .collect();
    let diffs: Vec<PolyMatrix> = (c.min_deg()..c.max_deg()).map(|i| c.diff(i)).collect();
    FreeComplex::new(c.nvars(), c.min_deg(), degrees, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{make_bs, make_r};
    use crate::complex::{cone, ChainMap};
    use crate::coxeter::CoxeterSystem;
    use crate::hilbert::dim_r;
    use crate::poly::GradedPoly;
    use std::collections::BTreeMap;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::build("A2").unwrap()
    }

    fn f_s(sys: &CoxeterSystem, i: usize) -> Complex {
        let bs = make_bs(sys, i);
        let r1 = make_r(sys).shift(1);
        let mut d = PolyMatrix::zero(sys.rank(), 1, 2);
        d.set(0, 0, GradedPoly::one(sys.rank()));
        d.set(0, 1, sys.alpha(i));
        Complex::new(sys.rank(), 0, vec![bs, r1], vec![d])
    }

    #[test]
    fn minimal_model_of_a_rouquier_generator() {
        let sys = a2();
        let fc = forget_left(&f_s(&sys, 0));
        let min = fc.minimize();
        // kernel of the counit is free on one generator of degree 1
        assert_eq!(min.rank_at(0), 1);
        assert_eq!(min.gen_degrees(0), &[1]);
        assert_eq!(min.rank_at(1), 0);
        assert!(!fc.is_exact());
    }

    #[test]
    fn contractible_cone_is_exact() {
        let sys = a2();
        let c = f_s(&sys, 0);
        let mut maps = BTreeMap::new();
        for i in c.degrees() {
            maps.insert(i, PolyMatrix::identity(2, c.rank_at(i)));
        }
        let cn = cone(&ChainMap::new(c.clone(), c.clone(), maps));
        let fc = forget_left(&cn);
        assert!(fc.is_exact());
        assert!(fc.minimize().is_zero_complex());
    }

    #[test]
    fn graded_cohomology_dimensions() {
        let sys = a2();
        let fc = forget_left(&f_s(&sys, 0));
        for d in -2..8 {
            assert_eq!(
                fc.cohomology_dim(0, d),
                dim_r(2, d - 1) as usize,
                "H^0 in degree {}",
                d
            );
            assert_eq!(fc.cohomology_dim(1, d), 0);
        }
        // minimization preserves cohomology
        let min = fc.minimize();
        for d in -2..8 {
            assert_eq!(min.cohomology_dim(0, d), fc.cohomology_dim(0, d));
        }
    }

    #[test]
    fn unit_rescaling_comparison() {
        let alpha = GradedPoly::var(2, 0);
        let chain = |p: &GradedPoly| {
            let mut m = PolyMatrix::zero(2, 1, 1);
            m.set(0, 0, p.clone());
            FreeComplex::new(2, 0, vec![vec![1], vec![-1]], vec![m])
        };
        let a = chain(&alpha);
        assert!(a.equal_up_to_unit_rescaling(&a));
        assert!(a.equal_up_to_unit_rescaling(&chain(&alpha.scale(&crate::poly::rat_int(-7)))));
        // different polynomial, shifted degrees, dropped entry: refused
        let beta = GradedPoly::var(2, 1);
        assert!(!a.equal_up_to_unit_rescaling(&chain(&alpha.add(&beta))));
        assert!(!a.equal_up_to_unit_rescaling(&FreeComplex::new(
            2,
            0,
            vec![vec![3], vec![1]],
            vec![{
                let mut m = PolyMatrix::zero(2, 1, 1);
                m.set(0, 0, alpha.clone());
                m
            }],
        )));
        assert!(!a.equal_up_to_unit_rescaling(&FreeComplex::new(
            2,
            0,
            vec![vec![1], vec![-1]],
            vec![PolyMatrix::zero(2, 1, 1)],
        )));
    }

    #[test]
    fn nonunit_scalar_pivot_still_eliminates() {
        // two-term complex with differential [3]: contractible
        let fc = FreeComplex::new(
            2,
            0,
            vec![vec![0], vec![0]],
            vec![PolyMatrix::scalar(2, 1, 1, crate::poly::rat_int(3))],
        );
        assert!(fc.is_exact());
    }
}
