//! Canonical text serialization of the algebra objects.
//!
//! Every format is line-based and deterministic: polynomials print in
//! the fixed monomial order with reduced coefficients, matrices print
//! row-major one entry per line, and parsing each format back is the
//! identity on values. The same text feeds content-addressed cache
//! keys and the golden files for expected complexes.

use crate::bimodule::Bimodule;
use crate::complex::Complex;
use crate::matrix::PolyMatrix;
use crate::minimize::FreeComplex;
use crate::poly::GradedPoly;
use std::fmt::Write as _;

fn push_matrix(out: &mut String, label: &str, m: &PolyMatrix) {
    let _ = writeln!(out, "{}: rows {} cols {}", label, m.nrows(), m.ncols());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let _ = writeln!(out, "{}", m.get(r, c).canonical_text());
        }
    }
}

fn push_degrees(out: &mut String, label: &str, degs: &[i64]) {
    let body = degs
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    if body.is_empty() {
        let _ = writeln!(out, "{}:", label);
    } else {
        let _ = writeln!(out, "{}: {}", label, body);
    }
}

pub fn free_complex_to_text(c: &FreeComplex) -> String {
    let mut out = String::from("free-complex v1\n");
    let _ = writeln!(out, "nvars {}", c.nvars());
    let _ = writeln!(out, "min {}", c.min_deg());
    let _ = writeln!(out, "terms {}", c.max_deg() - c.min_deg() + 1);
    for i in c.min_deg()..=c.max_deg() {
        push_degrees(&mut out, &format!("gens {}", i), c.gen_degrees(i));
    }
    for i in c.min_deg()..c.max_deg() {
        push_matrix(&mut out, &format!("diff {}", i), &c.diff(i));
    }
    out
}

pub fn bimodule_to_text(m: &Bimodule) -> String {
    let mut out = String::from("bimodule v1\n");
    let _ = writeln!(out, "nvars {}", m.nvars());
    push_degrees(&mut out, "gens", m.gen_degrees());
    for j in 0..m.nvars() {
        push_matrix(&mut out, &format!("rho {}", j), m.rho(j));
    }
    out
}

pub fn complex_to_text(c: &Complex) -> String {
    let mut out = String::from("complex v1\n");
    let _ = writeln!(out, "nvars {}", c.nvars());
    let _ = writeln!(out, "min {}", c.min_deg());
    let _ = writeln!(out, "terms {}", c.max_deg() - c.min_deg() + 1);
    for i in c.min_deg()..=c.max_deg() {
        out.push_str(&bimodule_to_text(c.term(i).unwrap()));
    }
    for i in c.min_deg()..c.max_deg() {
        push_matrix(&mut out, &format!("diff {}", i), &c.diff(i));
    }
    out
}

/// Line cursor over a serialized object.
struct Lines<'a> {
    iter: std::iter::Peekable<std::str::Lines<'a>>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        Lines {
            iter: s.lines().peekable(),
            at: 0,
        }
    }

    fn next(&mut self) -> Result<&'a str, String> {
        self.at += 1;
        self.iter
            .next()
            .ok_or_else(|| format!("unexpected end of input at line {}", self.at))
    }

    fn expect(&mut self, head: &str) -> Result<&'a str, String> {
        let at = self.at + 1;
        let line = self.next()?;
        line.strip_prefix(head)
            .map(str::trim)
            .ok_or_else(|| format!("line {}: expected `{}`, got `{}`", at, head, line))
    }
}

fn parse_i64(s: &str) -> Result<i64, String> {
    s.trim()
        .parse::<i64>()
        .map_err(|e| format!("bad integer `{}`: {}", s, e))
}

fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|e| format!("bad count `{}`: {}", s, e))
}

fn parse_degree_list(s: &str) -> Result<Vec<i64>, String> {
    s.split_whitespace().map(parse_i64).collect()
}

fn parse_matrix(lines: &mut Lines, nvars: usize, label: &str) -> Result<PolyMatrix, String> {
    let shape = lines.expect(label)?;
    let shape = shape
        .strip_prefix(": rows")
        .ok_or_else(|| format!("bad matrix header `{}`", shape))?;
    let (rows, cols) = shape
        .split_once("cols")
        .ok_or_else(|| format!("bad matrix header `{}`", shape))?;
    let (rows, cols) = (parse_usize(rows)?, parse_usize(cols)?);
    let mut m = PolyMatrix::zero(nvars, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let p = GradedPoly::parse(nvars, lines.next()?)?;
            if !p.is_zero() {
                m.set(r, c, p);
            }
        }
    }
    Ok(m)
}

pub fn free_complex_from_text(s: &str) -> Result<FreeComplex, String> {
    let mut lines = Lines::new(s);
    lines.expect("free-complex v1")?;
    let nvars = parse_usize(lines.expect("nvars")?)?;
    let min = parse_i64(lines.expect("min")?)?;
    let terms = parse_i64(lines.expect("terms")?)?;
    let mut degrees = Vec::new();
    for i in min..min + terms {
        degrees.push(parse_degree_list(
            lines.expect(&format!("gens {}:", i))?,
        )?);
    }
    let mut diffs = Vec::new();
    for i in min..min + terms - 1 {
        diffs.push(parse_matrix(&mut lines, nvars, &format!("diff {}", i))?);
    }
    Ok(FreeComplex::new(nvars, min, degrees, diffs))
}

fn parse_bimodule(lines: &mut Lines) -> Result<Bimodule, String> {
    lines.expect("bimodule v1")?;
    let nvars = parse_usize(lines.expect("nvars")?)?;
    let degs = parse_degree_list(lines.expect("gens:")?)?;
    let mut rho = Vec::with_capacity(nvars);
    for j in 0..nvars {
        rho.push(parse_matrix(lines, nvars, &format!("rho {}", j))?);
    }
    Ok(Bimodule::new(nvars, degs, rho))
}

pub fn bimodule_from_text(s: &str) -> Result<Bimodule, String> {
    parse_bimodule(&mut Lines::new(s))
}

pub fn complex_from_text(s: &str) -> Result<Complex, String> {
    let mut lines = Lines::new(s);
    lines.expect("complex v1")?;
    let nvars = parse_usize(lines.expect("nvars")?)?;
    let min = parse_i64(lines.expect("min")?)?;
    let terms = parse_i64(lines.expect("terms")?)?;
    let mut mods = Vec::new();
    for _ in 0..terms {
        mods.push(parse_bimodule(&mut lines)?);
    }
    let mut diffs = Vec::new();
    for i in min..min + terms - 1 {
        diffs.push(parse_matrix(&mut lines, nvars, &format!("diff {}", i))?);
    }
    Ok(Complex::new(nvars, min, mods, diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{make_bs, make_r_twisted};
    use crate::coxeter::CoxeterSystem;
    use crate::rouquier::f_complex;
    use crate::support::{gamma_complex, Side};

    fn a2() -> CoxeterSystem {
        CoxeterSystem::build("A2").unwrap()
    }

    #[test]
    fn bimodule_round_trip() {
        let sys = a2();
        let w = sys.parse_elem("s1 s2").unwrap();
        for m in [make_bs(&sys, 0), make_r_twisted(&sys, w).shift(3)] {
            let text = bimodule_to_text(&m);
            let back = bimodule_from_text(&text).unwrap();
            assert_eq!(bimodule_to_text(&back), text);
            assert_eq!(back.gen_degrees(), m.gen_degrees());
        }
    }

    #[test]
    fn complex_round_trip() {
        let sys = a2();
        let w = sys.parse_elem("s1 s2").unwrap();
        let c = f_complex(&sys, w);
        let text = complex_to_text(&c);
        let back = complex_from_text(&text).unwrap();
        assert_eq!(complex_to_text(&back), text);
        assert_eq!(back.content_key(), c.content_key());
    }

    #[test]
    fn free_complex_round_trip_through_gamma() {
        let sys = a2();
        let s = sys.parse_elem("s1").unwrap();
        let fc = gamma_complex(&sys, &f_complex(&sys, s), s, Side::Delta).unwrap();
        let text = free_complex_to_text(&fc);
        let back = free_complex_from_text(&text).unwrap();
        assert_eq!(back, fc);
    }

    #[test]
    fn malformed_input_reports_the_line() {
        let err = free_complex_from_text("free-complex v1\nnvars 2\nmin x\n").unwrap_err();
        assert!(err.contains("bad integer"), "{}", err);
        let err = bimodule_from_text("complex v1\n").unwrap_err();
        assert!(err.contains("expected"), "{}", err);
    }
}
