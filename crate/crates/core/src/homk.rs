//! Hom complexes between bounded complexes of bimodules.
//!
//! For complexes A and B the k-th hom term collects the bimodule maps
//! A^j -> B^{j+k} of a fixed internal degree, and the differential
//! sends phi to d_B phi - (-1)^k phi d_A. Dimensions of its cohomology
//! are computed by exact rank counts over the rationals. A shared
//! cache keyed by content hashes avoids re-solving the same hom space
//! across grid cells, and all entry points take a cooperative deadline
//! so long grids can give up between solves instead of mid-solve.

use crate::bimodule::{hom_basis, Bimodule};
use crate::complex::Complex;
use crate::linalg::{rank_of_rows, RowEchelon, SparseVec};
use crate::matrix::PolyMatrix;
use crate::poly::{monomials_of_total_degree, Monomial};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

/// Cooperative deadline checked between linear solves.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline(pub Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn expired(&self) -> bool {
        match self.0 {
            None => false,
            Some(t) => Instant::now() > t,
        }
    }
}

fn digest(s: &str) -> String {
    let mut h = Sha256::new();
    h.update(s.as_bytes());
    format!("{:x}", h.finalize())
}

/// Shared cache of hom space bases between bimodules.
#[derive(Default)]
pub struct HomCache {
    map: Mutex<HashMap<(String, String, i64), Arc<Vec<PolyMatrix>>>>,
}

impl HomCache {
    pub fn new() -> Self {
        HomCache::default()
    }

    pub fn basis(&self, m: &Bimodule, n: &Bimodule, d: i64) -> Arc<Vec<PolyMatrix>> {
        let key = (digest(&m.content_key()), digest(&n.content_key()), d);
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let computed = Arc::new(hom_basis(m, n, d));
        self.map
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(computed)
            .clone()
    }
}

/// Summand degrees j contributing maps A^j -> B^{j+k}.
fn summands(a: &Complex, b: &Complex, k: i64) -> Vec<i64> {
    a.degrees()
        .filter(|&j| a.rank_at(j) > 0 && b.rank_at(j + k) > 0)
        .collect()
}

/// Coefficient layout of one hom space: per matrix entry (row, col)
/// the list of monomials allowed by the forced degree.
fn entry_layout(m: &Bimodule, n: &Bimodule, d: i64) -> (usize, Vec<Vec<Vec<Monomial>>>) {
    let nv = m.nvars();
    let mut total = 0usize;
    let mut rows = Vec::with_capacity(n.rank());
    for b in 0..n.rank() {
        let mut cols = Vec::with_capacity(m.rank());
        for a in 0..m.rank() {
            let dab = m.gen_degrees()[a] + d - n.gen_degrees()[b];
            let monos = if dab >= 0 && dab % 2 == 0 {
                monomials_of_total_degree(nv, (dab / 2) as u32)
            } else {
                Vec::new()
            };
            total += monos.len();
            cols.push(monos);
        }
        rows.push(cols);
    }
    (total, rows)
}

/// Raw coordinate layout of Hom^k(A, B)_d over its summands.
struct HomLayout {
    summands: Vec<i64>,
    offsets: Vec<usize>,
    total: usize,
}

fn hom_layout(a: &Complex, b: &Complex, k: i64, d: i64) -> HomLayout {
    let summands = summands(a, b, k);
    let mut offsets = Vec::with_capacity(summands.len());
    let mut total = 0usize;
    for &j in &summands {
        offsets.push(total);
        let (sz, _) = entry_layout(a.term(j).unwrap(), b.term(j + k).unwrap(), d);
        total += sz;
    }
    HomLayout {
        summands,
        offsets,
        total,
    }
}

/// Flattens phi: A^j -> B^{j+k} into the raw coordinates, adding the
/// entries into out with the given sign.
fn flatten_into(
    phi: &PolyMatrix,
    m: &Bimodule,
    n: &Bimodule,
    d: i64,
    base: usize,
    negate: bool,
    out: &mut Vec<(usize, crate::poly::Rational)>,
) {
    let (_, layout) = entry_layout(m, n, d);
    let mut off = base;
    for b in 0..n.rank() {
        for a in 0..m.rank() {
            let monos = &layout[b][a];
            if monos.is_empty() {
                assert!(
                    phi.get(b, a).is_zero(),
                    "entry outside the allowed degree"
                );
                continue;
            }
            let index: HashMap<&Monomial, usize> =
                monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            for (mono, c) in phi.get(b, a).terms() {
                let slot = *index.get(mono).expect("entry outside the allowed degree");
                let c = if negate { -c.clone() } else { c.clone() };
                out.push((off + slot, c));
            }
            off += monos.len();
        }
    }
}

/// One basis element of Hom^k, remembered with its summand.
struct HomBasisElem {
    j: i64,
    phi: Arc<Vec<PolyMatrix>>,
    index: usize,
}

fn hom_component_basis(
    a: &Complex,
    b: &Complex,
    k: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Option<Vec<HomBasisElem>> {
    let mut out = Vec::new();
    for j in summands(a, b, k) {
        if deadline.expired() {
            return None;
        }
        let basis = cache.basis(a.term(j).unwrap(), b.term(j + k).unwrap(), d);
        for index in 0..basis.len() {
            out.push(HomBasisElem {
                j,
                phi: basis.clone(),
                index,
            });
        }
    }
    Some(out)
}

/// Image of a single hom basis element under the hom differential, in
/// the raw coordinates of Hom^{k+1}.
fn differential_image(
    a: &Complex,
    b: &Complex,
    k: i64,
    d: i64,
    elem: &HomBasisElem,
    layout_next: &HomLayout,
) -> SparseVec {
    let j = elem.j;
    let phi = &elem.phi[elem.index];
    let mut out = Vec::new();
    // component at j: d_B phi
    if let Some(pos) = layout_next.summands.iter().position(|&x| x == j) {
        let tgt = b.term(j + k + 1);
        if tgt.is_some() {
            let img = b.diff(j + k).mul(phi);
            if !img.is_zero() {
                flatten_into(
                    &img,
                    a.term(j).unwrap(),
                    tgt.unwrap(),
                    d,
                    layout_next.offsets[pos],
                    false,
                    &mut out,
                );
            }
        }
    }
    // component at j - 1: -(-1)^k phi d_A
    if let Some(pos) = layout_next.summands.iter().position(|&x| x == j - 1) {
        let src = a.term(j - 1);
        if src.is_some() {
            let img = phi.mul(&a.diff(j - 1));
            if !img.is_zero() {
                flatten_into(
                    &img,
                    src.unwrap(),
                    b.term(j + k).unwrap(),
                    d,
                    layout_next.offsets[pos],
                    k % 2 == 0,
                    &mut out,
                );
            }
        }
    }
    out.sort_by_key(|&(i, _)| i);
    out
}

fn rank_of_differential(
    a: &Complex,
    b: &Complex,
    k: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Option<usize> {
    let basis = hom_component_basis(a, b, k, d, cache, deadline)?;
    if basis.is_empty() {
        return Some(0);
    }
    let layout_next = hom_layout(a, b, k + 1, d);
    if layout_next.total == 0 {
        return Some(0);
    }
    let mut rows = Vec::with_capacity(basis.len());
    for e in &basis {
        if deadline.expired() {
            return None;
        }
        rows.push(differential_image(a, b, k, d, e, &layout_next));
    }
    Some(rank_of_rows(layout_next.total, rows))
}

/// dim of Hom_K(A, B[i]) in internal degree d, the cohomology of the
/// hom complex at spot i.
pub fn homk_dim(
    a: &Complex,
    b: &Complex,
    i: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Option<usize> {
    let dim_i: usize = hom_component_basis(a, b, i, d, cache, deadline)?.len();
    if dim_i == 0 {
        return Some(0);
    }
    let r_i = rank_of_differential(a, b, i, d, cache, deadline)?;
    let r_prev = rank_of_differential(a, b, i - 1, d, cache, deadline)?;
    Some(
        dim_i
            .checked_sub(r_i + r_prev)
            .expect("rank bound violated"),
    )
}

/// Dimensions of Hom_K(A, B[i])_d for every i in i_lo..=i_hi at once,
/// sharing each rank between the two neighbouring spots that use it.
/// Cells left unresolved when the deadline expires come back as None.
pub fn homk_dims_row(
    a: &Complex,
    b: &Complex,
    i_lo: i64,
    i_hi: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Vec<Option<usize>> {
    assert!(i_lo <= i_hi, "empty shift range");
    let n = (i_hi - i_lo + 1) as usize;
    let mut out = vec![None; n];
    let mut dims = Vec::with_capacity(n);
    for i in i_lo..=i_hi {
        match hom_component_basis(a, b, i, d, cache, deadline) {
            Some(basis) => dims.push(basis.len()),
            None => return out,
        }
    }
    let mut prev = match rank_of_differential(a, b, i_lo - 1, d, cache, deadline) {
        Some(r) => r,
        None => return out,
    };
    for (slot, i) in (i_lo..=i_hi).enumerate() {
        let r = match rank_of_differential(a, b, i, d, cache, deadline) {
            Some(r) => r,
            None => return out,
        };
        out[slot] = Some(
            dims[slot]
                .checked_sub(r + prev)
                .expect("rank bound violated"),
        );
        prev = r;
    }
    out
}

/// Basis of cocycles in Hom^k(A, B)_d, as maps per source degree.
/// k = 0, d = 0 yields the honest chain maps A -> B.
pub fn hom_cocycles(
    a: &Complex,
    b: &Complex,
    k: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Option<Vec<BTreeMap<i64, PolyMatrix>>> {
    let basis = hom_component_basis(a, b, k, d, cache, deadline)?;
    if basis.is_empty() {
        return Some(Vec::new());
    }
    let layout_next = hom_layout(a, b, k + 1, d);
    // equations: for each raw coordinate of Hom^{k+1}, the combination
    // of basis images must vanish
    let mut columns: Vec<SparseVec> = Vec::with_capacity(basis.len());
    for e in &basis {
        if deadline.expired() {
            return None;
        }
        columns.push(differential_image(a, b, k, d, e, &layout_next));
    }
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (t, col) in columns.iter().enumerate() {
        for (r, c) in col {
            rows.entry(*r).or_default().push((t, c.clone()));
        }
    }
    let mut ech = RowEchelon::new(basis.len());
    for (_, row) in rows {
        ech.insert(&row);
    }
    let sols = ech.nullspace_basis();
    Some(
        sols.into_iter()
            .map(|sol| {
                let mut maps: BTreeMap<i64, PolyMatrix> = BTreeMap::new();
                for (t, c) in sol {
                    let e = &basis[t];
                    let acc = maps.entry(e.j).or_insert_with(|| {
                        PolyMatrix::zero(
                            a.nvars(),
                            b.rank_at(e.j + k),
                            a.rank_at(e.j),
                        )
                    });
                    *acc = acc.add(&e.phi[e.index].scale(&c));
                }
                maps.retain(|_, m| !m.is_zero());
                maps
            })
            .collect(),
    )
}

/// Whether the hom^k element lies in the image of the differential,
/// i.e. is homotopic to zero when it is a cocycle.
pub fn is_nullhomotopic(
    a: &Complex,
    b: &Complex,
    phi: &BTreeMap<i64, PolyMatrix>,
    k: i64,
    d: i64,
    cache: &HomCache,
    deadline: &Deadline,
) -> Option<bool> {
    let layout = hom_layout(a, b, k, d);
    let mut flat = Vec::new();
    for (&j, m) in phi {
        if m.is_zero() {
            continue;
        }
        let pos = layout
            .summands
            .iter()
            .position(|&x| x == j)
            .expect("map supported outside the hom complex");
        flatten_into(
            m,
            a.term(j).unwrap(),
            b.term(j + k).unwrap(),
            d,
            layout.offsets[pos],
            false,
            &mut flat,
        );
    }
    flat.sort_by_key(|&(i, _)| i);
    if flat.is_empty() {
        return Some(true);
    }
    let below = hom_component_basis(a, b, k - 1, d, cache, deadline)?;
    let mut ech = RowEchelon::new(layout.total);
    for e in &below {
        if deadline.expired() {
            return None;
        }
        let img = differential_image(a, b, k - 1, d, e, &layout);
        ech.insert(&img);
    }
    Some(!ech.insert(&flat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{make_bs, make_r};
    use crate::complex::{cone, ChainMap, Complex};
    use crate::coxeter::CoxeterSystem;
    use crate::hilbert::dim_r;
    use crate::poly::GradedPoly;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::build("A2").unwrap()
    }

    fn unit(sys: &CoxeterSystem) -> Complex {
        Complex::concentrated(make_r(sys), 0)
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
    fn hom_of_units_is_the_ring() {
        let sys = a2();
        let u = unit(&sys);
        let cache = HomCache::new();
        let dl = Deadline::none();
        for d in -2..6 {
            for i in -2..3 {
                let expect = if i == 0 { dim_r(2, d) as usize } else { 0 };
                assert_eq!(homk_dim(&u, &u, i, d, &cache, &dl), Some(expect));
            }
        }
    }

    /// Endomorphisms of a two-term complex, checked against a value
    /// computed by hand: the complex B_s -> R(1) has endomorphism ring
    /// R in the homotopy category.
    #[test]
    fn endomorphisms_of_a_small_complex()
    {
        let sys = a2();
        let c = f_s(&sys, 0);
        let cache = HomCache::new();
        let dl = Deadline::none();
        for d in 0..6 {
            assert_eq!(
                homk_dim(&c, &c, 0, d, &cache, &dl),
                Some(dim_r(2, d) as usize),
                "degree {}",
                d
            );
        }
        for i in [-1, 1, 2] {
            for d in 0..6 {
                assert_eq!(homk_dim(&c, &c, i, d, &cache, &dl), Some(0));
            }
        }
    }

    #[test]
    fn cone_of_identity_has_no_homs() {
        let sys = a2();
        let c = f_s(&sys, 0);
        let mut maps = BTreeMap::new();
        for i in c.degrees() {
            maps.insert(i, PolyMatrix::identity(2, c.rank_at(i)));
        }
        let cn = cone(&ChainMap::new(c.clone(), c.clone(), maps));
        let cache = HomCache::new();
        let dl = Deadline::none();
        let u = unit(&sys);
        for i in -2..3 {
            for d in 0..4 {
                assert_eq!(homk_dim(&u, &cn, i, d, &cache, &dl), Some(0));
                assert_eq!(homk_dim(&cn, &u, i, d, &cache, &dl), Some(0));
            }
        }
    }

    #[test]
    fn cocycles_and_homotopies() {
        let sys = a2();
        let c = f_s(&sys, 0);
        let cache = HomCache::new();
        let dl = Deadline::none();
        // chain maps c -> c in degree 0: one class, the identity
        let cocycles = hom_cocycles(&c, &c, 0, 0, &cache, &dl).unwrap();
        assert_eq!(cocycles.len(), 1);
        let rep = &cocycles[0];
        assert_eq!(
            is_nullhomotopic(&c, &c, rep, 0, 0, &cache, &dl),
            Some(false)
        );
        // the zero map is nullhomotopic
        let zero = BTreeMap::new();
        assert_eq!(is_nullhomotopic(&c, &c, &zero, 0, 0, &cache, &dl), Some(true));
    }

    #[test]
    fn row_dimensions_match_single_cells() {
        let sys = a2();
        let c = f_s(&sys, 0);
        let u = unit(&sys);
        let cache = HomCache::new();
        let dl = Deadline::none();
        for d in 0..5 {
            let row = homk_dims_row(&c, &u, -2, 2, d, &cache, &dl);
            for (slot, i) in (-2..=2).enumerate() {
                assert_eq!(row[slot], homk_dim(&c, &u, i, d, &cache, &dl));
            }
        }
        let past = Deadline(Some(Instant::now() - std::time::Duration::from_secs(1)));
        assert_eq!(
            homk_dims_row(&c, &u, -1, 1, 0, &cache, &past),
            vec![None, None, None]
        );
    }

    #[test]
    fn expired_deadline_returns_none() {
        let sys = a2();
        let c = f_s(&sys, 0);
        let cache = HomCache::new();
        let past = Deadline(Some(Instant::now() - std::time::Duration::from_secs(1)));
        assert_eq!(homk_dim(&c, &c, 0, 0, &cache, &past), None);
    }
}
