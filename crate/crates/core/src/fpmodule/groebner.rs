//! Strong Gröbner bases for submodules of `Z[x₁…xₙ, y₁…yₙ]^d`.
//!
//! Laurent modules are encoded by sending `X^a` to `x^{a⁺} y^{a⁻}` and adding
//! the relations `(xᵢyᵢ − 1)·eⱼ`. Over the integers a *strong* basis is needed
//! for normal forms to be canonical, so Buchberger's loop processes both
//! S-polynomials and G-polynomials (the gcd combination of leading
//! coefficients). The term order is graded lexicographic on monomials with
//! ties broken by component.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::{ExpVec, LaurentPoly};
use crate::{Error, Int, Rat, Result};

/// Upper limit on Buchberger pair reductions before giving up.
const PAIR_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Key {
    deg: u32,
    mono: Vec<u32>,
    comp: usize,
}

impl Key {
    fn new(mono: Vec<u32>, comp: usize) -> Self {
        Key { deg: mono.iter().sum(), mono, comp }
    }

    fn divides(&self, other: &Key) -> bool {
        self.comp == other.comp && self.mono.iter().zip(&other.mono).all(|(a, b)| a <= b)
    }

    fn quotient(&self, by: &Key) -> Vec<u32> {
        self.mono.iter().zip(&by.mono).map(|(a, b)| a - b).collect()
    }

    fn shifted(&self, m: &[u32]) -> Key {
        Key::new(self.mono.iter().zip(m).map(|(a, b)| a + b).collect(), self.comp)
    }
}

type ZPoly = BTreeMap<Key, Int>;

fn add_term(p: &mut ZPoly, k: Key, c: Int) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(k.clone()).or_insert_with(Int::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&k);
    }
}

/// `p += c · m · g`
fn add_multiple(p: &mut ZPoly, c: &Int, m: &[u32], g: &ZPoly) {
    for (k, v) in g {
        add_term(p, k.shifted(m), c * v);
    }
}

fn lead(p: &ZPoly) -> (&Key, &Int) {
    p.last_key_value().expect("nonzero polynomial")
}

fn make_lead_positive(p: ZPoly) -> ZPoly {
    if lead(&p).1.is_negative() {
        p.into_iter().map(|(k, v)| (k, -v)).collect()
    } else {
        p
    }
}

/// A strong Gröbner basis of an encoded Laurent relation module.
#[derive(Debug, Clone)]
pub(crate) struct GroebnerBasis {
    n: usize,
    rank: usize,
    basis: Vec<ZPoly>,
}

impl GroebnerBasis {
    pub(crate) fn new(n: usize, rank: usize, relations: &[Vec<LaurentPoly>]) -> Result<Self> {
        let mut gens: Vec<ZPoly> = Vec::new();
        for rel in relations {
            let enc = encode(n, rel);
            if !enc.is_empty() {
                gens.push(enc);
            }
        }
        for comp in 0..rank {
            for i in 0..n {
                let mut mono = vec![0u32; 2 * n];
                mono[i] = 1;
                mono[n + i] = 1;
                let mut p = ZPoly::new();
                p.insert(Key::new(mono, comp), Int::one());
                p.insert(Key::new(vec![0; 2 * n], comp), -Int::one());
                gens.push(p);
            }
        }
        let mut gb = GroebnerBasis { n, rank, basis: Vec::new() };
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for g in gens {
            gb.insert(g, &mut pairs);
        }
        let mut processed = 0;
        while let Some((i, j)) = pairs.pop() {
            processed += 1;
            if processed > PAIR_LIMIT {
                return Err(Error::Unsupported(
                    "Gröbner basis computation exceeded its pair limit".into(),
                ));
            }
            let (si, sj) = (gb.basis[i].clone(), gb.basis[j].clone());
            let (ki, ci) = lead(&si);
            let (kj, cj) = lead(&sj);
            let l = Key::new(ki.mono.iter().zip(&kj.mono).map(|(a, b)| *a.max(b)).collect(), ki.comp);
            let mi = l.quotient(ki);
            let mj = l.quotient(kj);
            // S-polynomial.
            let c = ci.lcm(cj);
            let mut s = ZPoly::new();
            add_multiple(&mut s, &(&c / ci), &mi, &si);
            add_multiple(&mut s, &-(&c / cj), &mj, &sj);
            // G-polynomial.
            let eg = ci.extended_gcd(cj);
            let mut g = ZPoly::new();
            add_multiple(&mut g, &eg.x, &mi, &si);
            add_multiple(&mut g, &eg.y, &mj, &sj);
            for p in [s, g] {
                let r = gb.reduce(p);
                if !r.is_empty() {
                    gb.insert(r, &mut pairs);
                }
            }
        }
        Ok(gb)
    }

    fn insert(&mut self, p: ZPoly, pairs: &mut Vec<(usize, usize)>) {
        let p = make_lead_positive(p);
        let idx = self.basis.len();
        let comp = lead(&p).0.comp;
        for (i, q) in self.basis.iter().enumerate() {
            if lead(q).0.comp == comp {
                pairs.push((i, idx));
            }
        }
        self.basis.push(p);
    }

    /// Canonical remainder: each remaining coefficient lies in `[0, c)` where
    /// `c` is the smallest leading coefficient among basis elements whose
    /// leading monomial divides that term.
    fn reduce(&self, mut p: ZPoly) -> ZPoly {
        let mut rem = ZPoly::new();
        while let Some((k, c)) = p.pop_last() {
            let best = self
                .basis
                .iter()
                .filter(|g| lead(g).0.divides(&k))
                .min_by(|a, b| lead(a).1.cmp(lead(b).1));
            match best {
                None => {
                    rem.insert(k, c);
                }
                Some(g) => {
                    let (gk, gc) = lead(g);
                    let q = c.div_floor(gc);
                    let r = &c - &q * gc;
                    if !q.is_zero() {
                        let m = k.quotient(gk);
                        for (tk, tv) in g.iter().rev().skip(1) {
                            add_term(&mut p, tk.shifted(&m), -(&q * tv));
                        }
                    }
                    if !r.is_zero() {
                        rem.insert(k, r);
                    }
                }
            }
        }
        rem
    }

    /// Normal form over `Z` of a Laurent vector, decoded back to Laurent form.
    pub(crate) fn normal_form(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        decode(self.n, self.rank, &self.reduce(encode(self.n, v)))
    }

    /// Normal form over `Q`, keyed by (component, encoded monomial). This is
    /// the coordinate vector of the image of `v` in `Y ⊗ Q`.
    pub(crate) fn rational_normal_form(&self, v: &[LaurentPoly]) -> BTreeMap<(usize, Vec<i64>), Rat> {
        let mut p: BTreeMap<Key, Rat> = encode(self.n, v)
            .into_iter()
            .map(|(k, c)| (k, Rat::from_integer(c)))
            .collect();
        let mut out = BTreeMap::new();
        while let Some((k, c)) = p.pop_last() {
            match self.basis.iter().find(|g| lead(g).0.divides(&k)) {
                None => {
                    out.insert((k.comp, k.mono.iter().map(|&x| x as i64).collect()), c);
                }
                Some(g) => {
                    let (gk, gc) = lead(g);
                    let q = &c / Rat::from_integer(gc.clone());
                    let m = k.quotient(gk);
                    for (tk, tv) in g.iter().rev().skip(1) {
                        let key = tk.shifted(&m);
                        let e = p.entry(key.clone()).or_insert_with(Rat::zero);
                        *e -= &q * Rat::from_integer(tv.clone());
                        if e.is_zero() {
                            p.remove(&key);
                        }
                    }
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.basis.len()
    }
}

fn encode(n: usize, v: &[LaurentPoly]) -> ZPoly {
    let mut out = ZPoly::new();
    for (comp, p) in v.iter().enumerate() {
        for (e, c) in p.terms() {
            let mut mono = vec![0u32; 2 * n];
            for (i, &a) in e.0.iter().enumerate() {
                if a >= 0 {
                    mono[i] = a as u32;
                } else {
                    mono[n + i] = (-a) as u32;
                }
            }
            add_term(&mut out, Key::new(mono, comp), c.clone());
        }
    }
    out
}

fn decode(n: usize, rank: usize, p: &ZPoly) -> Vec<LaurentPoly> {
    let mut out = vec![LaurentPoly::zero(n); rank];
    for (k, c) in p {
        let e: Vec<i64> = (0..n).map(|i| k.mono[i] as i64 - k.mono[n + i] as i64).collect();
        out[k.comp].add_term(ExpVec(e), c.clone());
    }
    out
}

/// Total degree of the encoded form of a relation vector.
pub(crate) fn encoded_degree(v: &[LaurentPoly]) -> u32 {
    v.iter()
        .flat_map(|p| p.terms().map(|(e, _)| e.0.iter().map(|a| a.unsigned_abs() as u32).sum::<u32>()))
        .max()
        .unwrap_or(0)
}
