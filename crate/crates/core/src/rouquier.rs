//! Rouquier complexes of braid words and their augmented variants.
//!
//! A positive crossing contributes [B_s -> R(1)] sitting in degrees 0
//! and 1, a negative crossing contributes [R(-1) -> B_s] in degrees -1
//! and 0, and a braid word contributes the tensor product of its
//! letters. For a reduced positive lift the complex of w admits a
//! canonical copy of the twisted bimodule R_w(-l(w)) inside the kernel
//! of its first differential, and dually the negative lift projects
//! onto R_w(l(w)); the cones over these maps are the augmented
//! standard and costandard complexes. Both augmentations are found by
//! Groebner calculations and certified on the spot: the kernel must be
//! principal with a generator of the predicted degree, and the
//! cokernel must be free of rank one, so a failed certificate panics
//! rather than returning a wrong complex.

use crate::bimodule::{make_bs, make_r, make_r_twisted, Bimodule};
use crate::complex::{cone, ChainMap, Complex};
use crate::coxeter::{BraidWord, CoxeterSystem, Elem};
use crate::groebner::{kernel_of_matrix, ModVec, SubmoduleGB};
use crate::matrix::PolyMatrix;
use crate::poly::{GradedPoly, Rational};
use std::collections::BTreeMap;

/// R concentrated in cohomological degree 0, the tensor unit.
pub fn unit_complex(sys: &CoxeterSystem) -> Complex {
    Complex::concentrated(make_r(sys), 0)
}

/// Complex of a positive crossing: B_s -> R(1) in degrees 0..1, with
/// the multiplication map e1 -> 1, e2 -> alpha_s.
pub fn f_letter(sys: &CoxeterSystem, i: usize) -> Complex {
    let bs = make_bs(sys, i);
    let r1 = make_r(sys).shift(1);
    let mut d = PolyMatrix::zero(sys.rank(), 1, 2);
    d.set(0, 0, GradedPoly::one(sys.rank()));
    d.set(0, 1, sys.alpha(i));
    Complex::new(sys.rank(), 0, vec![bs, r1], vec![d])
}

/// Complex of a negative crossing: R(-1) -> B_s in degrees -1..0, with
/// 1 -> (alpha_s e1 + e2) / 2, the invariant element of B_s.
pub fn e_letter(sys: &CoxeterSystem, i: usize) -> Complex {
    let r = make_r(sys).shift(-1);
    let bs = make_bs(sys, i);
    let half = Rational::new(1.into(), 2.into());
    let mut d = PolyMatrix::zero(sys.rank(), 2, 1);
    d.set(0, 0, sys.alpha(i).scale(&half));
    d.set(1, 0, GradedPoly::constant(sys.rank(), half));
    Complex::new(sys.rank(), -1, vec![r, bs], vec![d])
}

/// Tensor product of the letter complexes of a braid word.
pub fn braid_complex(sys: &CoxeterSystem, word: &BraidWord) -> Complex {
    let mut c = unit_complex(sys);
    for &(i, e) in &word.0 {
        let letter = if e > 0 {
            f_letter(sys, i)
        } else {
            e_letter(sys, i)
        };
        c = c.tensor(&letter);
    }
    c
}

/// Complex of the positive braid lift of x, in degrees 0..l(x).
pub fn f_complex(sys: &CoxeterSystem, x: Elem) -> Complex {
    braid_complex(sys, &sys.positive_lift(x))
}

/// Complex of the negative braid lift of x, in degrees -l(x)..0. The
/// word inverts the positive lift of x^-1, so its letters follow a
/// reduced word for x with negative crossings.
pub fn e_complex(sys: &CoxeterSystem, x: Elem) -> Complex {
    braid_complex(sys, &sys.positive_lift(sys.inverse(x)).inverse())
}

/// Tensor inverse of f_complex(x), the complex of the inverted
/// positive lift.
pub fn f_inverse_complex(sys: &CoxeterSystem, x: Elem) -> Complex {
    braid_complex(sys, &sys.positive_lift(x).inverse())
}

/// The inclusion R_x(-l(x)) -> F_x in degree 0 whose image is the
/// kernel of the first differential. Panics if that kernel is not
/// principal with a generator of degree l(x), or if the generator
/// fails to intertwine the x-twisted right action.
pub fn standard_inclusion(sys: &CoxeterSystem, x: Elem) -> ChainMap {
    let f = f_complex(sys, x);
    let ell = sys.length(x) as i64;
    let term0 = f.term(0).unwrap().clone();
    let gens = kernel_of_matrix(&f.diff(0));
    let gb = SubmoduleGB::from_dense_gens(sys.rank(), term0.rank(), &gens);
    let basis = gb.reduced_basis();
    assert!(
        basis.len() == 1,
        "kernel of the first differential must be principal"
    );
    let v = basis[0].to_dense(term0.rank());
    assert_eq!(
        basis[0].homogeneous_degree(term0.gen_degrees()),
        Some(ell),
        "kernel generator must sit in degree l(x)"
    );
    let mut incl = PolyMatrix::zero(sys.rank(), term0.rank(), 1);
    for (b, p) in v.into_iter().enumerate() {
        incl.set(b, 0, p);
    }
    let source = Complex::concentrated(make_r_twisted(sys, x).shift(-ell), 0);
    ChainMap::new(source, f, BTreeMap::from([(0, incl)]))
}

/// Cone over standard_inclusion: R_x(-l(x)) in degree -1 followed by
/// the terms of F_x.
pub fn standard_augmented(sys: &CoxeterSystem, x: Elem) -> Complex {
    cone(&standard_inclusion(sys, x))
}

/// The projection E_x -> R_x(l(x)) in degree 0 that kills the image of
/// the last differential. Panics unless the cokernel is certified free
/// of rank one on the unique lowest-degree generator of the degree-0
/// term.
pub fn costandard_projection(sys: &CoxeterSystem, x: Elem) -> ChainMap {
    let e = e_complex(sys, x);
    let ell = sys.length(x) as i64;
    let term0 = e.term(0).unwrap().clone();
    let degs = term0.gen_degrees().to_vec();
    let d_in = e.diff(-1);
    let mut gens: Vec<ModVec> = (0..d_in.ncols())
        .map(|c| ModVec::from_dense(sys.rank(), &d_in.col(c)))
        .collect();
    let image = SubmoduleGB::new(sys.rank(), term0.rank(), gens.clone());
    assert!(
        image.hilbert_quotient(&degs) == crate::hilbert::HilbertSeries::free(sys.rank(), &[-ell]),
        "cokernel of the last differential must be free on one generator"
    );
    let g_pos: Vec<usize> = (0..degs.len()).filter(|&b| degs[b] == -ell).collect();
    assert!(g_pos.len() == 1, "generator position must be unique");
    gens.push(ModVec::unit(sys.rank(), g_pos[0]));
    let spanning = SubmoduleGB::new(sys.rank(), term0.rank(), gens);
    assert!(
        spanning.hilbert_quotient(&degs).is_zero(),
        "image plus the generator must span the degree-0 term"
    );
    // the free cokernel makes the generator coefficient of any element
    // unique, so these coordinates define the projection
    let mut eps = PolyMatrix::zero(sys.rank(), 1, term0.rank());
    for b in 0..term0.rank() {
        let coords = spanning
            .coordinates(&ModVec::unit(sys.rank(), b))
            .expect("spanning set must cover every basis vector");
        eps.set(0, b, coords.last().unwrap().clone());
    }
    let target = Complex::concentrated(make_r_twisted(sys, x).shift(ell), 0);
    ChainMap::new(e, target, BTreeMap::from([(0, eps)]))
}

/// Cone over costandard_projection: the terms of E_x shifted one step
/// left, followed by R_x(l(x)) in degree 0.
pub fn costandard_augmented(sys: &CoxeterSystem, x: Elem) -> Complex {
    cone(&costandard_projection(sys, x))
}

/// Degree-0 term of e_complex for a reduced word of x, the tensor of
/// the B_s along the word.
pub fn bott_samelson_term(sys: &CoxeterSystem, x: Elem) -> Bimodule {
    let mut m = make_r(sys);
    for &i in sys.word(x) {
        m = m.tensor(&make_bs(sys, i));
    }
    m
}
