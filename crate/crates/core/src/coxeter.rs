//! Finite Weyl groups realized on the dual of the reflection
//! representation over the rationals.
//!
//! A system is built from an integral Cartan matrix; elements are
//! enumerated breadth-first and stored with their action on the span of
//! the simple roots, their lexicographically least reduced word and
//! their length. Construction verifies the defining relations and that
//! the realization is reflection faithful: an element fixes a
//! hyperplane exactly when it is a reflection.

use crate::linalg::{rank_of_rows, SparseVec};
use crate::poly::{GradedPoly, Rational};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum CoxeterError {
    #[error("unknown Cartan type '{0}'")]
    UnknownType(String),
    #[error("dihedral order {0} needs an extension field and is not supported")]
    UnsupportedDihedral(u32),
    #[error("group is not finite (enumeration exceeded the cap)")]
    NotFinite,
    #[error("realization failed validation: {0}")]
    BadRealization(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Handle into a system's element table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub usize);

#[derive(Clone, Debug)]
struct ElemData {
    /// Action on the root span, column j = image of alpha_j.
    mat: Vec<Rational>,
    word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    name: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    coxeter_m: Vec<Vec<u32>>,
    elems: Vec<ElemData>,
    gen_idx: Vec<usize>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    reflections: Vec<bool>,
    leq: Vec<Vec<bool>>,
    longest: usize,
}

fn coxeter_order(product: i64) -> Option<u32> {
    match product {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn cartan_for(name: &str) -> Result<Vec<Vec<i64>>, CoxeterError> {
    let mat = match name {
        "A1" => vec![vec![2]],
        "A2" | "I2:3" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "B2" | "I2:4" => vec![vec![2, -1], vec![-2, 2]],
        "B3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        "G2" | "I2:6" => vec![vec![2, -1], vec![-3, 2]],
        _ => {
            if let Some(m) = name.strip_prefix("I2:") {
                let m: u32 = m
                    .parse()
                    .map_err(|_| CoxeterError::UnknownType(name.to_string()))?;
                return Err(CoxeterError::UnsupportedDihedral(m));
            }
            return Err(CoxeterError::UnknownType(name.to_string()));
        }
    };
    Ok(mat)
}

fn mat_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                let v = &a[i * n + k] * &b[k * n + j];
                out[i * n + j] += v;
            }
        }
    }
    out
}

fn mat_key(m: &[Rational]) -> String {
    m.iter()
        .map(|c| format!("{}/{}", c.numer(), c.denom()))
        .collect::<Vec<_>>()
        .join(",")
}

const ENUM_CAP: usize = 5000;

impl CoxeterSystem {
    pub fn build(name: &str) -> Result<Self, CoxeterError> {
        let cartan = cartan_for(name)?;
        let rank = cartan.len();
        let mut coxeter_m = vec![vec![0u32; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    coxeter_m[i][j] = 1;
                } else {
                    coxeter_m[i][j] = coxeter_order(cartan[i][j] * cartan[j][i]).ok_or_else(
                        || CoxeterError::BadRealization("Cartan product out of range".into()),
                    )?;
                }
            }
        }

        // generator matrices: s_i(alpha_j) = alpha_j - a_ij alpha_i
        let gens: Vec<Vec<Rational>> = (0..rank)
            .map(|i| {
                let mut m = vec![Rational::zero(); rank * rank];
                for j in 0..rank {
                    m[j * rank + j] = Rational::one();
                    m[i * rank + j] -= Rational::from_integer(cartan[i][j].into());
                }
                m
            })
            .collect();

        // breadth-first enumeration in (length, word-lex) order
        let mut elems = vec![ElemData {
            mat: {
                let mut id = vec![Rational::zero(); rank * rank];
                for i in 0..rank {
                    id[i * rank + i] = Rational::one();
                }
                id
            },
            word: Vec::new(),
        }];
        let mut index: HashMap<String, usize> = HashMap::new();
        index.insert(mat_key(&elems[0].mat), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for s in 0..rank {
                    let m = mat_mul(&elems[w].mat, &gens[s], rank);
                    let key = mat_key(&m);
                    if !index.contains_key(&key) {
                        let mut word = elems[w].word.clone();
                        word.push(s);
                        index.insert(key, elems.len());
                        next.push(elems.len());
                        elems.push(ElemData { mat: m, word });
                        if elems.len() > ENUM_CAP {
                            return Err(CoxeterError::NotFinite);
                        }
                    }
                }
            }
            frontier = next;
        }
        let order = elems.len();
        let gen_idx: Vec<usize> = (0..rank).map(|s| index[&mat_key(&gens[s])]).collect();

        let mult: Vec<Vec<usize>> = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let m = mat_mul(&elems[a].mat, &elems[b].mat, rank);
                        index[&mat_key(&m)]
                    })
                    .collect()
            })
            .collect();
        let inv: Vec<usize> = (0..order)
            .map(|a| (0..order).find(|&b| mult[a][b] == 0).unwrap())
            .collect();

        // defining relations
        for i in 0..rank {
            let si = gen_idx[i];
            if mult[si][si] != 0 {
                return Err(CoxeterError::BadRealization("generator not an involution".into()));
            }
            for j in 0..i {
                let sj = gen_idx[j];
                let mut prod = 0usize;
                for k in 0..coxeter_m[i][j] {
                    prod = mult[prod][if k % 2 == 0 { si } else { sj }];
                }
                let mut prod2 = 0usize;
                for k in 0..coxeter_m[i][j] {
                    prod2 = mult[prod2][if k % 2 == 0 { sj } else { si }];
                }
                if prod != prod2 {
                    return Err(CoxeterError::BadRealization("braid relation fails".into()));
                }
            }
        }

        // reflections = conjugates of generators
        let mut reflections = vec![false; order];
        for w in 0..order {
            for &si in &gen_idx {
                reflections[mult[mult[w][si]][inv[w]]] = true;
            }
        }

        // reflection faithfulness: fixed hyperplane iff reflection
        for (w, data) in elems.iter().enumerate() {
            let rows: Vec<SparseVec> = (0..rank)
                .map(|i| {
                    (0..rank)
                        .filter_map(|j| {
                            let mut c = data.mat[i * rank + j].clone();
                            if i == j {
                                c -= Rational::one();
                            }
                            if c.is_zero() {
                                None
                            } else {
                                Some((j, c))
                            }
                        })
                        .collect()
                })
                .collect();
            let fix_dim = rank - rank_of_rows(rank, rows);
            let is_refl_space = fix_dim == rank - 1;
            if w == 0 {
                if fix_dim != rank {
                    return Err(CoxeterError::BadRealization("identity must act trivially".into()));
                }
            } else if is_refl_space != reflections[w] {
                return Err(CoxeterError::BadRealization(
                    "fixed hyperplanes do not match reflections".into(),
                ));
            }
        }

        // Bruhat order by descent recursion, filled by increasing length
        let mut by_length: Vec<usize> = (0..order).collect();
        by_length.sort_by_key(|&w| elems[w].word.len());
        let mut leq = vec![vec![false; order]; order];
        for &y in &by_length {
            let ly = elems[y].word.len();
            for x in 0..order {
                let lx = elems[x].word.len();
                leq[x][y] = if x == y {
                    true
                } else if lx >= ly {
                    false
                } else {
                    // s = last letter of the canonical word of y
                    let s = *elems[y].word.last().unwrap();
                    let si = gen_idx[s];
                    let ys = mult[y][si];
                    let xs = mult[x][si];
                    if elems[xs].word.len() < lx {
                        leq[xs][ys]
                    } else {
                        leq[x][ys]
                    }
                };
            }
        }
        let longest = *by_length.last().unwrap();

        Ok(CoxeterSystem {
            name: name.to_string(),
            rank,
            cartan,
            coxeter_m,
            elems,
            gen_idx,
            mult,
            inv,
            reflections,
            leq,
            longest,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn cartan(&self) -> &Vec<Vec<i64>> {
        &self.cartan
    }

    pub fn coxeter_matrix(&self) -> &Vec<Vec<u32>> {
        &self.coxeter_m
    }

    pub fn id(&self) -> Elem {
        Elem(0)
    }

    pub fn generator(&self, i: usize) -> Elem {
        assert!(i < self.rank);
        Elem(self.gen_idx[i])
    }

    pub fn all(&self) -> impl Iterator<Item = Elem> {
        (0..self.elems.len()).map(Elem)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mult[a.0][b.0])
    }

    pub fn mul_gen(&self, a: Elem, s: usize) -> Elem {
        self.mul(a, self.generator(s))
    }

    pub fn inverse(&self, a: Elem) -> Elem {
        Elem(self.inv[a.0])
    }

    pub fn length(&self, a: Elem) -> usize {
        self.elems[a.0].word.len()
    }

    /// Lexicographically least reduced word.
    pub fn word(&self, a: Elem) -> &[usize] {
        &self.elems[a.0].word
    }

    pub fn elem_from_word(&self, word: &[usize]) -> Elem {
        let mut m = self.id();
        for &s in word {
            assert!(s < self.rank, "generator out of range");
            m = self.mul_gen(m, s);
        }
        m
    }

    pub fn is_reflection(&self, a: Elem) -> bool {
        self.reflections[a.0]
    }

    pub fn reflections(&self) -> Vec<Elem> {
        (0..self.elems.len())
            .filter(|&w| self.reflections[w])
            .map(Elem)
            .collect()
    }

    pub fn longest_element(&self) -> Elem {
        Elem(self.longest)
    }

    pub fn bruhat_leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x.0][y.0]
    }

    pub fn bruhat_lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq[x.0][y.0]
    }

    /// Elements covering x (length goes up by one).
    pub fn covers_above(&self, x: Elem) -> Vec<Elem> {
        self.all()
            .filter(|&y| self.length(y) == self.length(x) + 1 && self.bruhat_leq(x, y))
            .collect()
    }

    /// Elements covered by x.
    pub fn covers_below(&self, x: Elem) -> Vec<Elem> {
        self.all()
            .filter(|&y| self.length(x) == self.length(y) + 1 && self.bruhat_leq(y, x))
            .collect()
    }

    /// Image of alpha_j under w, as a linear form.
    pub fn act_root(&self, w: Elem, j: usize) -> GradedPoly {
        let n = self.rank;
        let coeffs: Vec<Rational> = (0..n)
            .map(|i| self.elems[w.0].mat[i * n + j].clone())
            .collect();
        GradedPoly::linear_form(&coeffs)
    }

    /// Action of w on a polynomial through its action on the roots.
    pub fn act_poly(&self, w: Elem, p: &GradedPoly) -> GradedPoly {
        assert_eq!(p.nvars(), self.rank);
        let images: Vec<GradedPoly> = (0..self.rank).map(|j| self.act_root(w, j)).collect();
        p.substitute_linear(&images)
    }

    pub fn alpha(&self, i: usize) -> GradedPoly {
        GradedPoly::var(self.rank, i)
    }

    /// Linear order refining the Bruhat order; with a generator given,
    /// the cosets {w, ws} appear as adjacent pairs, shorter first.
    pub fn bruhat_enumeration(&self, coset_gen: Option<usize>) -> Vec<Elem> {
        let order: Vec<Elem> = match coset_gen {
            None => self.all().collect(),
            Some(s) => {
                let si = self.generator(s);
                let mut reps: Vec<Elem> = self
                    .all()
                    .filter(|&w| self.length(self.mul(w, si)) > self.length(w))
                    .collect();
                reps.sort_by_key(|&w| (self.length(w), self.word(w).to_vec()));
                let mut out = Vec::with_capacity(self.order());
                for w in reps {
                    out.push(w);
                    out.push(self.mul(w, si));
                }
                out
            }
        };
        // defining property: positions respect the Bruhat order
        for (i, &x) in order.iter().enumerate() {
            for (j, &y) in order.iter().enumerate() {
                if self.bruhat_leq(x, y) {
                    assert!(i <= j, "enumeration must refine the Bruhat order");
                }
            }
        }
        order
    }

    /// Canonical reduced word with positive exponents.
    pub fn positive_lift(&self, w: Elem) -> BraidWord {
        BraidWord(self.word(w).iter().map(|&s| (s, 1)).collect())
    }

    pub fn elem_to_string(&self, w: Elem) -> String {
        if w == self.id() {
            return "e".to_string();
        }
        self.word(w)
            .iter()
            .map(|s| format!("s{}", s + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem, CoxeterError> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.id());
        }
        let mut word = Vec::new();
        for tok in s.split_whitespace() {
            let idx = tok
                .strip_prefix('s')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| CoxeterError::Parse(format!("bad generator '{}'", tok)))?;
            if idx == 0 || idx > self.rank {
                return Err(CoxeterError::Parse(format!("generator '{}' out of range", tok)));
            }
            word.push(idx - 1);
        }
        Ok(self.elem_from_word(&word))
    }
}

/// Word in the braid group generators with exponents +1 or -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord(pub Vec<(usize, i32)>);

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord(Vec::new())
    }

    /// Sum of exponents.
    pub fn epsilon(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|&(s, e)| (s, -e)).collect())
    }

    /// Image in the Weyl group.
    pub fn image(&self, sys: &CoxeterSystem) -> Elem {
        let mut w = sys.id();
        for &(s, _) in &self.0 {
            w = sys.mul(w, sys.generator(s));
        }
        w
    }

    pub fn parse(sys: &CoxeterSystem, s: &str) -> Result<BraidWord, CoxeterError> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(BraidWord::empty());
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (gen_part, exp) = match tok.split_once('^') {
                None => (tok, 1i32),
                Some((g, e)) => {
                    let e: i32 = e
                        .parse()
                        .map_err(|_| CoxeterError::Parse(format!("bad exponent in '{}'", tok)))?;
                    if e != 1 && e != -1 {
                        return Err(CoxeterError::Parse(format!(
                            "exponent must be 1 or -1 in '{}'",
                            tok
                        )));
                    }
                    (g, e)
                }
            };
            let idx = gen_part
                .strip_prefix('s')
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| CoxeterError::Parse(format!("bad letter '{}'", tok)))?;
            if idx == 0 || idx > sys.rank() {
                return Err(CoxeterError::Parse(format!("letter '{}' out of range", tok)));
            }
            letters.push((idx - 1, exp));
        }
        Ok(BraidWord(letters))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(s, e)| {
                if e == 1 {
                    format!("s{}", s + 1)
                } else {
                    format!("s{}^{}", s + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
