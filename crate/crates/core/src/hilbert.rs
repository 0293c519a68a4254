//! Hilbert series of graded modules over the polynomial ring.
//!
//! Every series handled here is p(v) / (1 - v^2)^n with p an integer
//! Laurent polynomial, stored exactly as its numerator. Series of
//! quotients by leading-term modules come from the standard pivot
//! recursion on monomial ideals, so all comparisons are exact.

use crate::poly::Monomial;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    nvars: usize,
    numer: BTreeMap<i64, i64>,
}

/// Binomial coefficient, small arguments.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Dimension of the degree-d part of the polynomial ring on n variables
/// of internal degree 2.
pub fn dim_r(nvars: usize, d: i64) -> i64 {
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    binom(d / 2 + nvars as i64 - 1, nvars as i64 - 1)
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries {
            nvars,
            numer: BTreeMap::new(),
        }
    }

    pub fn from_numer(nvars: usize, numer: BTreeMap<i64, i64>) -> Self {
        let mut h = HilbertSeries { nvars, numer };
        h.numer.retain(|_, c| *c != 0);
        h
    }

    /// Series of a free module with the given generator degrees.
    pub fn free(nvars: usize, gen_degrees: &[i64]) -> Self {
        let mut numer = BTreeMap::new();
        for &d in gen_degrees {
            *numer.entry(d).or_insert(0) += 1;
        }
        Self::from_numer(nvars, numer)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn numer(&self) -> &BTreeMap<i64, i64> {
        &self.numer
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut numer = self.numer.clone();
        for (d, c) in &other.numer {
            *numer.entry(*d).or_insert(0) += c;
        }
        Self::from_numer(self.nvars, numer)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut numer = self.numer.clone();
        for (d, c) in &other.numer {
            *numer.entry(*d).or_insert(0) -= c;
        }
        Self::from_numer(self.nvars, numer)
    }

    /// Multiply by v^k (a grading shift placing generators k higher).
    pub fn shift(&self, k: i64) -> Self {
        HilbertSeries {
            nvars: self.nvars,
            numer: self.numer.iter().map(|(d, c)| (d + k, *c)).collect(),
        }
    }

    /// When the numerator has nonnegative coefficients, the multiset of
    /// generator degrees of the free module with this series.
    pub fn as_free_degrees(&self) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (d, c) in &self.numer {
            if *c < 0 {
                return None;
            }
            for _ in 0..*c {
                out.push(*d);
            }
        }
        Some(out)
    }

    /// Graded dimensions up to and including degree `max_degree`.
    pub fn coefficients_up_to(&self, max_degree: i64) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (d0, c) in &self.numer {
            let mut k = 0;
            loop {
                let d = d0 + 2 * k;
                if d > max_degree {
                    break;
                }
                *out.entry(d).or_insert(0) += c * binom(k + self.nvars as i64 - 1, self.nvars as i64 - 1);
                k += 1;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Dimension of a single graded piece.
    pub fn dim_at(&self, d: i64) -> i64 {
        self.numer
            .iter()
            .map(|(d0, c)| c * dim_r(self.nvars, d - d0))
            .sum()
    }
}

fn minimalize(gens: &mut Vec<Monomial>) {
    gens.sort();
    gens.dedup();
    let snapshot = gens.clone();
    gens.retain(|m| !snapshot.iter().any(|g| g != m && g.divides(m)));
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !gens[i].gcd(&gens[j]).is_one() {
                return false;
            }
        }
    }
    true
}

/// Numerator (in t = v^2, keyed by exponent of t) of the series of
/// R / (monomial ideal).
fn monomial_quotient_numer(gens: &[Monomial]) -> BTreeMap<u32, i64> {
    let mut gens = gens.to_vec();
    minimalize(&mut gens);
    if gens.iter().any(|m| m.is_one()) {
        return BTreeMap::new(); // unit ideal
    }
    if pairwise_coprime(&gens) {
        // product of (1 - t^deg)
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        out.insert(0, 1);
        for m in &gens {
            let d = m.total_degree();
            let mut next: BTreeMap<u32, i64> = BTreeMap::new();
            for (e, c) in &out {
                *next.entry(*e).or_insert(0) += c;
                *next.entry(e + d).or_insert(0) -= c;
            }
            next.retain(|_, c| *c != 0);
            out = next;
        }
        return out;
    }
    // pivot on the most frequent variable
    let nvars = gens[0].0.len();
    let pivot_var = (0..nvars)
        .max_by_key(|&j| gens.iter().filter(|m| m.0[j] > 0).count())
        .unwrap();
    // I + (x): generators not involving x, plus x itself
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.0[pivot_var] == 0).cloned().collect();
    plus.push(Monomial::var(nvars, pivot_var));
    // I : x - exponent of x drops by one where positive
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.0.clone();
            if e[pivot_var] > 0 {
                e[pivot_var] -= 1;
            }
            Monomial(e)
        })
        .collect();
    let a = monomial_quotient_numer(&plus);
    let b = monomial_quotient_numer(&colon);
    let mut out = a;
    for (e, c) in b {
        *out.entry(e + 1).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Series of F / L where F is free with the given generator degrees and
/// L is a monomial submodule given per position.
pub fn quotient_by_monomial_module(
    nvars: usize,
    gen_degrees: &[i64],
    gens_per_position: &[Vec<Monomial>],
) -> HilbertSeries {
    assert_eq!(gen_degrees.len(), gens_per_position.len());
    let mut numer: BTreeMap<i64, i64> = BTreeMap::new();
    for (p, d) in gen_degrees.iter().enumerate() {
        for (e, c) in monomial_quotient_numer(&gens_per_position[p]) {
            *numer.entry(d + 2 * e as i64).or_insert(0) += c;
        }
    }
    HilbertSeries::from_numer(nvars, numer)
}
