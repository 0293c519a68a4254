//! Sparse exact linear algebra over the rationals: incremental reduced
//! row echelon form, rank and nullspace. Backs the finite-dimensional
//! solving steps (bimodule Hom spaces, hom-complex cohomology ranks).

use crate::poly::Rational;
use num::{One, Zero};
use std::collections::BTreeMap;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_axpy(v: &mut SparseVec, c: &Rational, w: &SparseVec) {
    if c.is_zero() || w.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(v.len() + w.len());
    let mut i = 0;
    let mut j = 0;
    while i < v.len() || j < w.len() {
        match (v.get(i), w.get(j)) {
            (Some((vi, vc)), Some((wj, wc))) => {
                if vi < wj {
                    out.push((*vi, vc.clone()));
                    i += 1;
                } else if wj < vi {
                    out.push((*wj, c * wc));
                    j += 1;
                } else {
                    let s = vc + &(c * wc);
                    if !s.is_zero() {
                        out.push((*vi, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
            (Some((vi, vc)), None) => {
                out.push((*vi, vc.clone()));
                i += 1;
            }
            (None, Some((wj, wc))) => {
                out.push((*wj, c * wc));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    *v = out;
}

pub fn sparse_scale(v: &mut SparseVec, c: &Rational) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for (_, e) in v.iter_mut() {
        *e *= c;
    }
}

pub fn sparse_get(v: &SparseVec, idx: usize) -> Rational {
    match v.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Rational::zero(),
    }
}

/// Incrementally maintained reduced row echelon form.
pub struct RowEchelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce a vector against the current rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        let mut i = 0;
        while i < r.len() {
            let col = r[i].0;
            if let Some(row) = self.rows.get(&col) {
                let c = -r[i].1.clone();
                sparse_axpy(&mut r, &c, row);
                // the entry at `col` is gone; indices before i are untouched
            } else {
                i += 1;
            }
        }
        r
    }

    /// Reduce and insert when independent; reports whether rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let pivot = r[0].0;
        let inv = Rational::one() / &r[0].1;
        sparse_scale(&mut r, &inv);
        // keep reduced form: clear the new pivot column everywhere
        let updates: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, row)| !sparse_get(row, pivot).is_zero())
            .map(|(p, _)| *p)
            .collect();
        for p in updates {
            let mut row = self.rows.remove(&p).unwrap();
            let c = -sparse_get(&row, pivot);
            sparse_axpy(&mut row, &c, &r);
            self.rows.insert(p, row);
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Basis of the solution space of (rows) * x = 0, one vector per free
    /// column, with a unit at that column.
    pub fn nullspace_basis(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        free.iter()
            .map(|&f| {
                let mut v: SparseVec = Vec::new();
                for (p, row) in &self.rows {
                    let c = sparse_get(row, f);
                    if !c.is_zero() {
                        v.push((*p, -c));
                    }
                }
                v.push((f, Rational::one()));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}

/// Rank of a list of sparse rows.
pub fn rank_of_rows(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = RowEchelon::new(ncols);
    for r in rows {
        ech.insert(&r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat_int;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, rat_int(c))).collect()
    }

    #[test]
    fn rank_and_nullspace_of_small_system() {
        // x0 + x1 = 0, x1 + x2 = 0 over 3 columns.
        let mut e = RowEchelon::new(3);
        assert!(e.insert(&sv(&[(0, 1), (1, 1)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 1), (2, -1)])), "dependent row");
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace_basis();
        assert_eq!(ns.len(), 1);
        // solution (1, -1, 1) scaled to have unit at the free column 2
        assert_eq!(ns[0], sv(&[(0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn nullspace_vectors_satisfy_system() {
        let rows = vec![
            sv(&[(0, 2), (2, -1), (3, 5)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 2), (1, 1), (3, 5)]),
        ];
        let mut e = RowEchelon::new(4);
        for r in &rows {
            e.insert(r);
        }
        for v in e.nullspace_basis() {
            for r in &rows {
                let dot: Rational = r
                    .iter()
                    .map(|(i, c)| c * &sparse_get(&v, *i))
                    .sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(e.rank() + e.nullspace_basis().len(), 4);
    }
}
