//! Graded R-bimodules that are free as left modules.
//!
//! A bimodule is stored by the degrees of a left basis together with
//! one matrix per variable describing the right action in that basis:
//! coords(m * a_i) = rho_i * coords(m). The right action matrices
//! commute pairwise and raise degree by two, which `validate` checks.
//! Morphisms are polynomial matrices intertwining the right actions;
//! `hom_basis` solves for all of them in a fixed degree by exact
//! linear algebra over the rationals.

use crate::coxeter::{CoxeterSystem, Elem};
use crate::linalg::RowEchelon;
use crate::matrix::{pairwise_commute, substitute_matrices, PolyMatrix};
use crate::poly::{monomials_of_total_degree, rat, GradedPoly, Monomial, Rational};
use num::Zero;
use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bimodule {
    nvars: usize,
    gen_degrees: Vec<i64>,
    rho: Vec<PolyMatrix>,
}

impl Bimodule {
    pub fn new(nvars: usize, gen_degrees: Vec<i64>, rho: Vec<PolyMatrix>) -> Self {
        let b = Bimodule {
            nvars,
            gen_degrees,
            rho,
        };
        b.validate();
        b
    }

    pub fn zero_module(nvars: usize) -> Self {
        Bimodule {
            nvars,
            gen_degrees: Vec::new(),
            rho: vec![PolyMatrix::zero(nvars, 0, 0); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gen_degrees.is_empty()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn rho(&self, i: usize) -> &PolyMatrix {
        &self.rho[i]
    }

    pub fn validate(&self) {
        assert_eq!(self.rho.len(), self.nvars);
        for m in &self.rho {
            assert_eq!(m.nrows(), self.rank());
            assert_eq!(m.ncols(), self.rank());
            assert!(
                m.is_graded(&self.gen_degrees, &self.gen_degrees, 2),
                "right action must raise degree by 2"
            );
        }
        assert!(
            pairwise_commute(&self.rho),
            "right action matrices must commute"
        );
    }

    /// Matrix of the right action of an arbitrary polynomial.
    pub fn act(&self, f: &GradedPoly) -> PolyMatrix {
        substitute_matrices(f, &self.rho)
    }

    /// Shift M(k): degrees drop by k, the action is unchanged.
    pub fn shift(&self, k: i64) -> Bimodule {
        Bimodule {
            nvars: self.nvars,
            gen_degrees: self.gen_degrees.iter().map(|d| d - k).collect(),
            rho: self.rho.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Bimodule {
        assert_eq!(self.nvars, other.nvars);
        let mut degs = self.gen_degrees.clone();
        degs.extend_from_slice(&other.gen_degrees);
        let rho = (0..self.nvars)
            .map(|i| self.rho[i].direct_sum(&other.rho[i]))
            .collect();
        Bimodule {
            nvars: self.nvars,
            gen_degrees: degs,
            rho,
        }
    }

    /// Tensor product over R. Basis vector (a, c) of M (x) N sits at
    /// index a * rank(N) + c.
    pub fn tensor(&self, other: &Bimodule) -> Bimodule {
        assert_eq!(self.nvars, other.nvars);
        let (rm, rn) = (self.rank(), other.rank());
        let rank = rm * rn;
        let mut degs = Vec::with_capacity(rank);
        for a in 0..rm {
            for c in 0..rn {
                degs.push(self.gen_degrees[a] + other.gen_degrees[c]);
            }
        }
        let rho = (0..self.nvars)
            .map(|i| {
                let mut t = PolyMatrix::zero(self.nvars, rank, rank);
                for d in 0..rn {
                    for c in 0..rn {
                        let g = other.rho[i].get(d, c);
                        if g.is_zero() {
                            continue;
                        }
                        // scalars from the right factor pass through
                        // the tensor as a right action on the left one
                        let block = self.act(g);
                        for b in 0..rm {
                            for a in 0..rm {
                                let v = block.get(b, a);
                                if !v.is_zero() {
                                    t.set(b * rn + d, a * rn + c, v.clone());
                                }
                            }
                        }
                    }
                }
                t
            })
            .collect();
        Bimodule {
            nvars: self.nvars,
            gen_degrees: degs,
            rho,
        }
    }

    /// Stable text form of the presentation, used as a cache key.
    pub fn content_key(&self) -> String {
        let mut s = format!("n{};d", self.nvars);
        s.push_str(
            &self
                .gen_degrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        for m in &self.rho {
            s.push('|');
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    s.push_str(&m.get(r, c).canonical_text());
                    s.push(';');
                }
            }
        }
        s
    }
}

/// R as a bimodule over itself.
pub fn make_r(sys: &CoxeterSystem) -> Bimodule {
    let n = sys.rank();
    Bimodule::new(
        n,
        vec![0],
        (0..n)
            .map(|i| {
                let mut m = PolyMatrix::zero(n, 1, 1);
                m.set(0, 0, GradedPoly::var(n, i));
                m
            })
            .collect(),
    )
}

/// R_x: rank one, the right action twisted through x.
pub fn make_r_twisted(sys: &CoxeterSystem, x: Elem) -> Bimodule {
    let n = sys.rank();
    Bimodule::new(
        n,
        vec![0],
        (0..n)
            .map(|i| {
                let mut m = PolyMatrix::zero(n, 1, 1);
                m.set(0, 0, sys.act_root(x, i));
                m
            })
            .collect(),
    )
}

/// f = a + b * alpha_i with a, b invariant under s_i.
pub fn demazure_split(sys: &CoxeterSystem, i: usize, f: &GradedPoly) -> (GradedPoly, GradedPoly) {
    let sf = sys.act_poly(sys.generator(i), f);
    let half = rat(1, 2);
    let a = f.add(&sf).scale(&half);
    let b = f
        .sub(&sf)
        .scale(&half)
        .div_exact(&sys.alpha(i))
        .expect("f - s(f) is divisible by alpha_i");
    (a, b)
}

/// B_s = R (x)_{R^s} R (1), with left basis e1 = 1(x)1 in degree -1
/// and e2 = 1(x)alpha_s in degree 1.
pub fn make_bs(sys: &CoxeterSystem, i: usize) -> Bimodule {
    let n = sys.rank();
    let alpha_sq = sys.alpha(i).mul(&sys.alpha(i));
    let rho = (0..n)
        .map(|j| {
            let (a, b) = demazure_split(sys, i, &sys.alpha(j));
            PolyMatrix::from_rows(n, vec![vec![a.clone(), alpha_sq.mul(&b)], vec![b, a]])
        })
        .collect();
    Bimodule::new(n, vec![-1, 1], rho)
}

/// Tensor of the B_s along a word, starting from R.
pub fn make_bott_samelson(sys: &CoxeterSystem, word: &[usize]) -> Bimodule {
    let mut m = make_r(sys);
    for &s in word {
        m = m.tensor(&make_bs(sys, s));
    }
    m
}

/// Degree-d bimodule maps M -> N as matrices on left-basis coordinates.
///
/// Entry (b, a) of a solution is homogeneous of degree
/// deg_M(a) + d - deg_N(b); the basis returned is echelonized over the
/// coefficient field and is deterministic.
pub fn hom_basis(m: &Bimodule, n: &Bimodule, d: i64) -> Vec<PolyMatrix> {
    let nv = m.nvars();
    assert_eq!(nv, n.nvars());
    let (rm, rn) = (m.rank(), n.rank());

    // unknowns: coefficients of each entry in its forced degree
    let mut offsets = vec![vec![(0usize, Vec::new()); rm]; rn];
    let mut total = 0usize;
    for b in 0..rn {
        for a in 0..rm {
            let dab = m.gen_degrees[a] + d - n.gen_degrees[b];
            let monos = if dab >= 0 && dab % 2 == 0 {
                monomials_of_total_degree(nv, (dab / 2) as u32)
            } else {
                Vec::new()
            };
            offsets[b][a] = (total, monos);
            total += offsets[b][a].1.len();
        }
    }
    if total == 0 {
        return Vec::new();
    }

    // intertwining relations phi * rho_M,i = rho_N,i * phi, one linear
    // equation per (i, row, col, monomial)
    let mut eqs: HashMap<(usize, usize, usize, Monomial), Vec<(usize, Rational)>> = HashMap::new();
    let mut add = |key: (usize, usize, usize, Monomial), unk: usize, c: Rational| {
        if c.is_zero() {
            return;
        }
        eqs.entry(key).or_default().push((unk, c));
    };
    for i in 0..nv {
        for r in 0..rn {
            for c in 0..rm {
                // [phi * rho_M,i]_{rc} = sum_a phi_{ra} (rho_M,i)_{ac}
                for a in 0..rm {
                    let known = m.rho[i].get(a, c);
                    if known.is_zero() {
                        continue;
                    }
                    let (off, monos) = &offsets[r][a];
                    for (k, mu) in monos.iter().enumerate() {
                        for (nu, q) in known.terms() {
                            add((i, r, c, mu.mul(nu)), off + k, q.clone());
                        }
                    }
                }
                // -[rho_N,i * phi]_{rc} = -sum_b (rho_N,i)_{rb} phi_{bc}
                for b in 0..rn {
                    let known = n.rho[i].get(r, b);
                    if known.is_zero() {
                        continue;
                    }
                    let (off, monos) = &offsets[b][c];
                    for (k, mu) in monos.iter().enumerate() {
                        for (nu, q) in known.terms() {
                            add((i, r, c, mu.mul(nu)), off + k, -q.clone());
                        }
                    }
                }
            }
        }
    }

    let mut ech = RowEchelon::new(total);
    let mut keys: Vec<_> = eqs.keys().cloned().collect();
    keys.sort();
    for key in keys {
        let mut row = eqs.remove(&key).unwrap();
        row.sort_by_key(|&(j, _)| j);
        // merge duplicate unknowns
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
        for (j, c) in row {
            match merged.last_mut() {
                Some((k, acc)) if *k == j => *acc += c,
                _ => merged.push((j, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        ech.insert(&merged);
    }

    ech.nullspace_basis()
        .into_iter()
        .map(|v| {
            let mut phi = PolyMatrix::zero(nv, rn, rm);
            for b in 0..rn {
                for a in 0..rm {
                    let (off, monos) = &offsets[b][a];
                    let mut terms = Vec::new();
                    for (k, mu) in monos.iter().enumerate() {
                        let c = v
                            .iter()
                            .find(|&&(j, _)| j == off + k)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(Rational::zero);
                        if !c.is_zero() {
                            terms.push((mu.clone(), c));
                        }
                    }
                    if !terms.is_empty() {
                        phi.set(b, a, GradedPoly::from_terms(nv, terms));
                    }
                }
            }
            phi
        })
        .collect()
}

pub fn hom_dim(m: &Bimodule, n: &Bimodule, d: i64) -> usize {
    hom_basis(m, n, d).len()
}

/// Checks that phi is a degree-d map of bimodules M -> N.
pub fn is_bimodule_map(m: &Bimodule, n: &Bimodule, phi: &PolyMatrix, d: i64) -> bool {
    if phi.nrows() != n.rank() || phi.ncols() != m.rank() {
        return false;
    }
    if !phi.is_graded(n.gen_degrees(), m.gen_degrees(), d) {
        return false;
    }
    (0..m.nvars()).all(|i| phi.mul(m.rho(i)) == n.rho(i).mul(phi))
}

/// A degree-0 map of free left modules is invertible exactly when its
/// determinant is a nonzero scalar.
pub fn is_isomorphism(m: &Bimodule, n: &Bimodule, phi: &PolyMatrix) -> bool {
    if m.rank() != n.rank() || !is_bimodule_map(m, n, phi, 0) {
        return false;
    }
    if m.rank() == 0 {
        return true;
    }
    phi.det().as_unit_scalar().is_some()
}
