//! Polynomial greatest common divisors.
//!
//! The fraction field keeps every entry reduced, so gcds are computed
//! constantly and must be cheap. Three routes, picked by how many
//! variables actually appear: a univariate primitive remainder sequence
//! over the integers, a bivariate evaluation and interpolation scheme,
//! and a dehomogenization step that drops homogeneous inputs in more
//! variables down to one of the first two. A pseudo-remainder fallback
//! covers inhomogeneous inputs in three or more variables; the module
//! systems never produce those, so it is effectively dead weight kept
//! for totality.

use crate::poly::{rat_int, GradedPoly, Monomial, Rational};
use num::{BigInt, One, Signed, Zero};

pub(crate) fn degree_in(p: &GradedPoly, v: usize) -> u16 {
    p.terms().map(|(m, _)| m.0[v]).max().unwrap_or(0)
}

/// Coefficient of the top power of variable v, with that power removed.
fn lead_in(p: &GradedPoly, v: usize) -> (u16, GradedPoly) {
    let n = p.nvars();
    let d = degree_in(p, v);
    let terms: Vec<(Monomial, Rational)> = p
        .terms()
        .filter(|(m, _)| m.0[v] == d)
        .map(|(m, c)| {
            let mut e = m.clone();
            e.0[v] = 0;
            (e, c.clone())
        })
        .collect();
    (d, GradedPoly::from_terms(n, terms))
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub fn poly_gcd(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let n = a.nvars();
    if a.is_zero() {
        return if b.is_zero() {
            GradedPoly::zero(n)
        } else {
            b.primitive_part().0
        };
    }
    if b.is_zero() {
        return a.primitive_part().0;
    }
    if a.is_constant() || b.is_constant() {
        return GradedPoly::one(n);
    }
    // split off the monomial contents; what remains is divisible by no
    // variable, so the two parts share no factor
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = GradedPoly::from_terms(n, vec![(ma.gcd(&mb), Rational::one())]);
    let a1 = a
        .div_exact(&GradedPoly::from_terms(n, vec![(ma, Rational::one())]))
        .unwrap();
    let b1 = b
        .div_exact(&GradedPoly::from_terms(n, vec![(mb, Rational::one())]))
        .unwrap();
    if a1.is_constant() || b1.is_constant() {
        return mono;
    }
    let vars: Vec<usize> = (0..n)
        .filter(|&v| degree_in(&a1, v) > 0 || degree_in(&b1, v) > 0)
        .collect();
    let core = match vars.len() {
        1 => {
            let v = vars[0];
            uni_to(n, v, &uni_gcd(&uni_from(&a1, v), &uni_from(&b1, v)))
        }
        2 => bi_gcd(&a1, &b1, vars[0], vars[1]),
        _ => {
            if a1.homogeneous_degree().is_some() && b1.homogeneous_degree().is_some() {
                let v = *vars.last().unwrap();
                let g = poly_gcd(&dehomogenize(&a1, v), &dehomogenize(&b1, v));
                homogenize(&g, v)
            } else {
                gcd_content_free(&a1, &b1)
            }
        }
    };
    mono.mul(&core).primitive_part().0
}

/// Set variable v to one. Injective on terms of a homogeneous input.
fn dehomogenize(p: &GradedPoly, v: usize) -> GradedPoly {
    let n = p.nvars();
    let terms: Vec<(Monomial, Rational)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = m.clone();
            e.0[v] = 0;
            (e, c.clone())
        })
        .collect();
    GradedPoly::from_terms(n, terms)
}

/// Pad every term with a power of variable v up to the top total degree.
fn homogenize(p: &GradedPoly, v: usize) -> GradedPoly {
    let n = p.nvars();
    let top = p
        .terms()
        .map(|(m, _)| m.total_degree())
        .max()
        .unwrap_or(0);
    let terms: Vec<(Monomial, Rational)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = m.clone();
            e.0[v] = (top - m.total_degree()) as u16;
            (e, c.clone())
        })
        .collect();
    GradedPoly::from_terms(n, terms)
}

// ---- univariate layer: dense coefficient vectors, low power first ----

fn uni_trim(c: &mut Vec<Rational>) {
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
}

pub(crate) fn uni_from(p: &GradedPoly, v: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); degree_in(p, v) as usize + 1];
    for (m, c) in p.terms() {
        debug_assert!(m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0));
        out[m.0[v] as usize] = c.clone();
    }
    uni_trim(&mut out);
    out
}

pub(crate) fn uni_to(nvars: usize, v: usize, c: &[Rational]) -> GradedPoly {
    let terms: Vec<(Monomial, Rational)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| {
            let mut m = Monomial::one(nvars);
            m.0[v] = k as u16;
            (m, x.clone())
        })
        .collect();
    GradedPoly::from_terms(nvars, terms)
}

fn uni_eval(c: &[Rational], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for x in c.iter().rev() {
        acc = acc * t + x;
    }
    acc
}

/// Primitive integer vector proportional to the input.
fn uni_primitive(c: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in c {
        den = num::integer::lcm(den, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.clone());
    }
    if !g.is_zero() {
        if ints.last().map_or(false, |x| x.is_negative()) {
            g = -g;
        }
        for x in &mut ints {
            *x /= &g;
        }
    }
    ints
}

fn int_content(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in c {
        g = num::integer::gcd(g, x.clone());
    }
    g
}

/// Primitive remainder sequence over the integers.
pub(crate) fn uni_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut f = uni_primitive(a);
    let mut g = uni_primitive(b);
    if f.is_empty() {
        return g.into_iter().map(Rational::from_integer).collect();
    }
    if g.is_empty() {
        return f.into_iter().map(Rational::from_integer).collect();
    }
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        if g.len() == 1 {
            return vec![Rational::one()];
        }
        // pseudo-remainder of f by g
        let mut r = f.clone();
        let lg = g.last().unwrap().clone();
        while r.len() >= g.len() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - g.len();
            for x in &mut r {
                *x *= &lg;
            }
            for (i, gx) in g.iter().enumerate() {
                r[i + shift] -= gx * &lr;
            }
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
        }
        let c = int_content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in &mut r {
                *x /= &c;
            }
        }
        f = std::mem::replace(&mut g, r);
    }
    if f.last().map_or(false, |x| x.is_negative()) {
        for x in &mut f {
            *x = -x.clone();
        }
    }
    f.into_iter().map(Rational::from_integer).collect()
}

/// Newton interpolation through distinct nodes.
fn uni_interpolate(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    // divided differences
    let n = nodes.len();
    let mut dd: Vec<Rational> = values.to_vec();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(dd[0].clone());
        for i in 0..n - k - 1 {
            dd[i] = (&dd[i + 1] - &dd[i]) / (&nodes[i + k + 1] - &nodes[i]);
        }
        dd.pop();
    }
    // expand the Newton form
    let mut out = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()]; // product of (x - nodes[j]) so far
    for (k, c) in coeffs.iter().enumerate() {
        for (i, bx) in basis.iter().enumerate() {
            out[i] += c * bx;
        }
        if k + 1 < n {
            // basis *= (x - nodes[k])
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (i, bx) in basis.iter().enumerate() {
                next[i + 1] += bx;
                next[i] -= bx * &nodes[k];
            }
            basis = next;
        }
    }
    uni_trim(&mut out);
    out
}

// ---- bivariate layer: evaluate the second variable, interpolate ----

/// Coefficients of p as a polynomial in vx, each a polynomial in vy only.
fn coeffs_in(p: &GradedPoly, vx: usize) -> Vec<GradedPoly> {
    let n = p.nvars();
    let mut out = vec![GradedPoly::zero(n); degree_in(p, vx) as usize + 1];
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); out.len()];
    for (m, c) in p.terms() {
        let mut e = m.clone();
        let k = e.0[vx] as usize;
        e.0[vx] = 0;
        buckets[k].push((e, c.clone()));
    }
    for (k, terms) in buckets.into_iter().enumerate() {
        out[k] = GradedPoly::from_terms(n, terms);
    }
    out
}

/// Content of p with respect to vx: a polynomial in vy alone.
fn content_uni(p: &GradedPoly, vx: usize, vy: usize) -> GradedPoly {
    let n = p.nvars();
    let mut acc: Vec<Rational> = Vec::new();
    for c in coeffs_in(p, vx) {
        if c.is_zero() {
            continue;
        }
        acc = uni_gcd(&acc, &uni_from(&c, vy));
        if acc.len() == 1 {
            break;
        }
    }
    uni_to(n, vy, &acc)
}

fn substitute_var(p: &GradedPoly, v: usize, t: &Rational) -> GradedPoly {
    let n = p.nvars();
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (m, c) in p.terms() {
        let mut e = m.clone();
        let k = e.0[v] as u32;
        e.0[v] = 0;
        let mut coeff = c.clone();
        for _ in 0..k {
            coeff *= t;
        }
        terms.push((e, coeff));
    }
    GradedPoly::from_terms(n, terms)
}

/// Gcd of two polynomials in exactly the variables vx and vy, both free
/// of monomial content. Evaluation at integer values of vy, univariate
/// gcds, interpolation back, then a divisibility check; the check
/// guards against an unlucky run of evaluation points.
fn bi_gcd(a: &GradedPoly, b: &GradedPoly, vx: usize, vy: usize) -> GradedPoly {
    let n = a.nvars();
    if degree_in(a, vx) == 0 || degree_in(b, vx) == 0 {
        // one side lives in vy alone, so only contents can be shared
        let ca = if degree_in(a, vx) == 0 {
            uni_from(a, vy)
        } else {
            uni_from(&content_uni(a, vx, vy), vy)
        };
        let cb = if degree_in(b, vx) == 0 {
            uni_from(b, vy)
        } else {
            uni_from(&content_uni(b, vx, vy), vy)
        };
        return uni_to(n, vy, &uni_gcd(&ca, &cb));
    }
    let cont_a = content_uni(a, vx, vy);
    let cont_b = content_uni(b, vx, vy);
    let fa = a.div_exact(&cont_a).unwrap();
    let fb = b.div_exact(&cont_b).unwrap();
    let c = uni_to(
        n,
        vy,
        &uni_gcd(&uni_from(&cont_a, vy), &uni_from(&cont_b, vy)),
    );
    let lc_a = uni_from(coeffs_in(&fa, vx).last().unwrap(), vy);
    let lc_b = uni_from(coeffs_in(&fb, vx).last().unwrap(), vy);
    let gamma = uni_gcd(&lc_a, &lc_b);
    let dy = (gamma.len() - 1)
        + (degree_in(&fa, vy) as usize).min(degree_in(&fb, vy) as usize);
    let mut target = dy + 1;
    for _round in 0..6 {
        let mut best_deg = usize::MAX;
        let mut nodes: Vec<Rational> = Vec::new();
        let mut samples: Vec<Vec<Rational>> = Vec::new();
        let mut t = 0i64;
        let mut tried = 0;
        while samples.len() < target && tried < 40 * target {
            let point = rat_int(t);
            t = if t >= 0 { -(t + 1) } else { -t };
            tried += 1;
            if uni_eval(&lc_a, &point).is_zero() || uni_eval(&lc_b, &point).is_zero() {
                continue;
            }
            let at = uni_from(&substitute_var(&fa, vy, &point), vx);
            let bt = uni_from(&substitute_var(&fb, vy, &point), vx);
            let h = uni_gcd(&at, &bt);
            if h.len() == 1 {
                // coprime primitive parts
                return c;
            }
            if h.len() - 1 > best_deg {
                continue;
            }
            if h.len() - 1 < best_deg {
                best_deg = h.len() - 1;
                nodes.clear();
                samples.clear();
            }
            // normalize the sample so its leading coefficient is gamma(t)
            let scale = uni_eval(&gamma, &point) / h.last().unwrap();
            nodes.push(point);
            samples.push(h.iter().map(|x| x * &scale).collect());
        }
        if samples.len() >= target {
            let mut cand = GradedPoly::zero(n);
            for i in 0..=best_deg {
                let vals: Vec<Rational> = samples
                    .iter()
                    .map(|s| s.get(i).cloned().unwrap_or_else(Rational::zero))
                    .collect();
                let coeff = uni_interpolate(&nodes, &vals);
                let mut xm = Monomial::one(n);
                xm.0[vx] = i as u16;
                cand = cand.add(&uni_to(n, vy, &coeff).mul_term(&xm, &Rational::one()));
            }
            let cc = content_uni(&cand, vx, vy);
            if let Some(prim) = cand.div_exact(&cc) {
                if fa.div_exact(&prim).is_some() && fb.div_exact(&prim).is_some() {
                    return c.mul(&prim).primitive_part().0;
                }
            }
        }
        target += dy + 1;
    }
    gcd_content_free(a, b)
}

// ---- pseudo-remainder fallback for inhomogeneous many-variable input ----

/// Pseudo-remainder of f by g with respect to variable v.
fn pseudo_rem(f: &GradedPoly, g: &GradedPoly, v: usize) -> GradedPoly {
    let n = f.nvars();
    let (dg, lg) = lead_in(g, v);
    let mut r = f.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in(&r, v);
        if dr < dg {
            break;
        }
        let mut shift = Monomial::one(n);
        shift.0[v] = dr - dg;
        r = r.mul(&lg).sub(&g.mul(&lr).mul_term(&shift, &Rational::one()));
    }
    r
}

/// Gcd of the coefficients of p as a polynomial in variable v.
fn content_in(p: &GradedPoly, v: usize) -> GradedPoly {
    let n = p.nvars();
    let mut grouped: std::collections::BTreeMap<u16, Vec<(Monomial, Rational)>> =
        std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let mut e = m.clone();
        let k = e.0[v];
        e.0[v] = 0;
        grouped.entry(k).or_default().push((e, c.clone()));
    }
    let mut acc = GradedPoly::zero(n);
    for terms in grouped.into_values() {
        acc = poly_gcd(&acc, &GradedPoly::from_terms(n, terms));
        if !acc.is_zero() && acc.is_constant() {
            return GradedPoly::one(n);
        }
    }
    acc
}

fn gcd_content_free(a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
    let n = a.nvars();
    let v = (0..n)
        .rev()
        .find(|&v| degree_in(a, v) > 0 || degree_in(b, v) > 0)
        .expect("nonconstant polynomial without variables");
    if degree_in(a, v) == 0 {
        return poly_gcd(a, &content_in(b, v));
    }
    if degree_in(b, v) == 0 {
        return poly_gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cg = poly_gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).unwrap();
    let mut g = b.div_exact(&cb).unwrap();
    if degree_in(&f, v) < degree_in(&g, v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, v);
        let next = if r.is_zero() {
            GradedPoly::zero(n)
        } else {
            let rc = content_in(&r, v);
            r.div_exact(&rc).unwrap()
        };
        f = std::mem::replace(&mut g, next);
    }
    cg.mul(&f).primitive_part().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn v(n: usize, i: usize) -> GradedPoly {
        GradedPoly::var(n, i)
    }

    #[test]
    fn univariate_remainder_sequence() {
        // gcd(x^2 - 1, x^2 + 2x + 1) = x + 1, written low power first
        let a = vec![rat_int(-1), rat_int(0), rat_int(1)];
        let b = vec![rat_int(1), rat_int(2), rat_int(1)];
        assert_eq!(uni_gcd(&a, &b), vec![rat_int(1), rat_int(1)]);
        // coprime
        let c = vec![rat_int(1), rat_int(1)];
        let d = vec![rat_int(2), rat_int(1)];
        assert_eq!(uni_gcd(&c, &d), vec![rat_int(1)]);
        // rational inputs are cleared to primitive integers
        let e = vec![rat(1, 2), rat(1, 2)];
        assert_eq!(uni_gcd(&e, &e), vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let nodes = vec![rat_int(0), rat_int(1), rat_int(-1), rat_int(2)];
        // x^3 - 2x + 5
        let vals: Vec<Rational> = nodes
            .iter()
            .map(|t| t * t * t - rat_int(2) * t + rat_int(5))
            .collect();
        assert_eq!(
            uni_interpolate(&nodes, &vals),
            vec![rat_int(5), rat_int(-2), rat_int(0), rat_int(1)]
        );
    }

    #[test]
    fn bivariate_gcd_with_nontrivial_content_and_leading_coefficient() {
        let x = v(2, 0);
        let y = v(2, 1);
        let xy = x.add(&y);
        // shared factor (x + y), distinct cofactors with y-dependent lead
        let a = xy.mul(&y.mul(&x).add(&GradedPoly::one(2)));
        let b = xy.mul(&y.mul(&y).add(&x));
        assert_eq!(poly_gcd(&a, &b), xy);
        // y-only content meets an x-poly
        let p = y.mul(&y).mul(&x.add(&GradedPoly::one(2)));
        let q = y.mul(&x.mul(&x).sub(&GradedPoly::one(2)));
        assert_eq!(poly_gcd(&p, &q), y.mul(&x.add(&GradedPoly::one(2))));
    }

    #[test]
    fn homogeneous_three_variable_gcd_dehomogenizes() {
        let a1 = v(3, 0);
        let a2 = v(3, 1);
        let a3 = v(3, 2);
        let l1 = a1.add(&a2);
        let l2 = a2.add(&a3);
        let l3 = a1.add(&a3).add(&a2.scale(&rat_int(2)));
        let f = l1.mul(&l2).mul(&l3);
        let g = l1.mul(&l2).mul(&l2);
        assert_eq!(poly_gcd(&f, &g), l1.mul(&l2));
        assert_eq!(poly_gcd(&l3, &l1.mul(&l1)), GradedPoly::one(3));
    }

    #[test]
    fn repeated_factors_keep_multiplicity() {
        let x = v(2, 0);
        let y = v(2, 1);
        let xy = x.add(&y);
        let a = xy.pow(3).mul(&x);
        let b = xy.pow(2).mul(&y.sub(&x));
        assert_eq!(poly_gcd(&a, &b), xy.pow(2));
    }
}
