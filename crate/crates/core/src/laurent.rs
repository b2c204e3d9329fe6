//! Sparse Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] lives in `Z[X₁^±, …, Xₙ^±]` for a fixed `n`. Terms are
//! kept in a sorted map with no zero coefficients, so structural equality is
//! mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::check_dim;
use crate::exactgeom::{convex_hull, Direction, Polytope};
use crate::{Error, Int, Rat, Result};

/// Exponent vector in `Zⁿ`.
///
/// Ordered graded-lexicographically: first by the sum of the entries, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Largest absolute entry (0 for the empty vector).
    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// `Σ self[i]·basis[i]`, the image under the substitution `X̃ᵢ = X^{βᵢ}`.
    pub fn combine(&self, basis: &[ExpVec], target_n: usize) -> ExpVec {
        let mut out = vec![0; target_n];
        for (k, b) in self.0.iter().zip(basis) {
            for (o, x) in out.iter_mut().zip(&b.0) {
                *o += k * x;
            }
        }
        ExpVec(out)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        let s: i64 = self.0.iter().sum();
        let t: i64 = other.0.iter().sum();
        s.cmp(&t).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}

/// Element of `Z[X₁^±, …, Xₙ^±]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<ExpVec, Int>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Int::one())
    }

    pub fn constant(n: usize, c: Int) -> Self {
        Self::monomial(c, ExpVec::zero(n))
    }

    /// `c·X^e`; the variable count is taken from `e`.
    pub fn monomial(c: Int, e: ExpVec) -> Self {
        let mut terms = BTreeMap::new();
        let n = e.len();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { n, terms }
    }

    /// `X^e` with coefficient 1.
    pub fn x_pow(e: ExpVec) -> Self {
        Self::monomial(Int::one(), e)
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Int, ExpVec)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (c, e) in terms {
            check_dim(n, e.len())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &Int)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> Int {
        self.terms.get(e).cloned().unwrap_or_else(Int::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &ExpVec> {
        self.terms.keys()
    }

    /// Adds `c·X^e` in place.
    pub fn add_term(&mut self, e: ExpVec, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.add(f), c * d);
            }
        }
        Ok(out)
    }

    /// `X^e · self`.
    pub fn mul_monomial(&self, e: &ExpVec) -> Self {
        assert_eq!(self.n, e.len(), "monomial has the wrong number of variables");
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(f, c)| (f.add(e), c.clone())).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Weighted degree `max v·e` over the support (`None` is `-∞`, the degree
    /// of the zero polynomial) and the initial polynomial: the sum of the
    /// terms attaining it.
    pub fn deg_and_initial(&self, v: &Direction) -> (Option<i64>, LaurentPoly) {
        let deg = self.terms.keys().map(|e| v.dot(&e.0)).max();
        let init = match deg {
            None => Self::zero(self.n),
            Some(d) => LaurentPoly {
                n: self.n,
                terms: self
                    .terms
                    .iter()
                    .filter(|(e, _)| v.dot(&e.0) == d)
                    .map(|(e, c)| (e.clone(), c.clone()))
                    .collect(),
            },
        };
        (deg, init)
    }

    /// Weighted degree only.
    pub fn deg(&self, v: &Direction) -> Option<i64> {
        self.terms.keys().map(|e| v.dot(&e.0)).max()
    }

    /// Exact value at a point with positive rational coordinates.
    pub fn evaluate_at(&self, r: &[Rat]) -> Result<Rat> {
        check_dim(self.n, r.len())?;
        if r.iter().any(|x| !x.is_positive()) {
            return Err(Error::Invalid("evaluation point must be positive".into()));
        }
        Ok(self.eval_unchecked(r))
    }

    /// Value at a point with nonzero coordinates (no positivity requirement).
    pub(crate) fn eval_unchecked(&self, r: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = Rat::from_integer(c.clone());
            for (x, &k) in r.iter().zip(&e.0) {
                term *= pow_rat(x, k);
            }
            total += term;
        }
        total
    }

    /// Convex hull of the support.
    pub fn newton_polytope(&self) -> Result<Polytope> {
        if self.is_zero() {
            return Err(Error::Invalid("the zero polynomial has no Newton polytope".into()));
        }
        let pts: Vec<Vec<Rat>> =
            self.terms.keys().map(|e| crate::rat::to_rat_vec(&e.0)).collect();
        convex_hull(&pts)
    }

    /// Applies an exponent map term by term, producing a polynomial in
    /// `target_n` variables.
    pub fn map_exponents(&self, target_n: usize, f: impl Fn(&ExpVec) -> ExpVec) -> Self {
        let mut out = Self::zero(target_n);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn max_abs_coeff(&self) -> Int {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Int::zero)
    }

    /// Sum of the coefficients (the value at `1ⁿ`).
    pub fn coeff_sum(&self) -> Int {
        self.terms.values().sum()
    }

    /// Parses the text grammar `3*X1^2*X2^-1 - X1`, `0`, `1`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, n }.poly()
    }
}

fn pow_rat(x: &Rat, k: i64) -> Rat {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| if k == 1 { format!("X{}", j + 1) } else { format!("X{}^{}", j + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at offset {} in polynomial {text:?}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn int(&mut self) -> Option<Int> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn signed_int(&mut self) -> Option<Int> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.int().map(|v| if neg { -v } else { v })
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut p = LaurentPoly::zero(self.n);
        let mut first = true;
        while self.pos < self.chars.len() {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Int::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Int::one()
                }
                _ if first => Int::one(),
                _ => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let (c, e) = self.term()?;
            p.add_term(e, sign * c);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Int, ExpVec)> {
        let mut coeff = Int::one();
        let mut exp = vec![0i64; self.n];
        let mut seen_any = false;
        if let Some(c) = self.int() {
            coeff = c;
            seen_any = true;
        }
        loop {
            let had_star = self.peek() == Some('*');
            if had_star {
                if !seen_any {
                    return Err(self.err("term starts with '*'"));
                }
                self.pos += 1;
            }
            if self.peek() != Some('X') {
                if had_star {
                    return Err(self.err("expected a variable after '*'"));
                }
                break;
            }
            self.pos += 1;
            let idx = self
                .int()
                .and_then(|i| i.to_usize())
                .ok_or_else(|| self.err("expected a variable index"))?;
            if idx == 0 || idx > self.n {
                return Err(self.err(&format!("variable X{idx} out of range 1..={}", self.n)));
            }
            let mut k = 1i64;
            if self.peek() == Some('^') {
                self.pos += 1;
                k = self
                    .signed_int()
                    .and_then(|v| v.to_i64())
                    .ok_or_else(|| self.err("expected an integer exponent"))?;
            }
            exp[idx - 1] += k;
            seen_any = true;
        }
        if !seen_any {
            return Err(self.err("empty term"));
        }
        Ok((coeff, ExpVec(exp)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
