//! Multivariate polynomials over `F_p` with every variable in degree one.
//!
//! Monomials are exponent vectors compared in degrevlex with the declared
//! variable order. Polynomials are sparse maps from monomials to nonzero
//! canonical coefficients.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::combinat::count_monomials;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::limits::Limits;

/// Largest exponent a monomial may carry.
pub const MAX_EXPONENT: u32 = (1 << 31) - 1;

/// `F_p[x_0, ..., x_n]` with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    p: Prime,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(p: Prime, vars: Vec<String>) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::invalid("a ring needs at least one variable"));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { p, vars }))
    }

    /// Convenience constructor: `Ring::with_names(2, &["x", "y"])`.
    pub fn with_names(p: u32, names: &[&str]) -> Result<Arc<Self>> {
        Ring::new(Prime::new(p)?, names.iter().map(|s| s.to_string()).collect())
    }

    /// Variables named `x0, ..., x{n-1}`.
    pub fn indexed(p: u32, n: usize) -> Result<Arc<Self>> {
        Ring::new(Prime::new(p)?, (0..n).map(|i| format!("x{i}")).collect())
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// All monomials of degree `d` (optionally with every exponent at most
    /// `cap`), in descending degrevlex order.
    pub fn monomials_of_degree(&self, d: u64, cap: Option<u32>, limits: &Limits) -> Result<Vec<Monomial>> {
        monomials_of_degree(self.nvars(), d, cap, limits)
    }
}

/// An exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if let Some(&e) = exps.iter().find(|&&e| e > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow(format!("exponent {e} exceeds 2^31 - 1")));
        }
        Ok(Monomial { exps })
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| match a.checked_add(b) {
                Some(s) if s <= MAX_EXPONENT => Ok(s),
                _ => Err(Error::ExponentOverflow(format!("{a} + {b} exceeds 2^31 - 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| match (a as u64).checked_mul(k) {
                Some(s) if s <= MAX_EXPONENT as u64 => Ok(s as u32),
                _ => Err(Error::ExponentOverflow(format!("{a} * {k} exceeds 2^31 - 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    /// True when every exponent is below `q`, i.e. the monomial lies outside
    /// the bracket power `m^[q]` of the maximal ideal.
    #[inline]
    pub fn all_below(&self, q: u64) -> bool {
        self.exps.iter().all(|&e| (e as u64) < q)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// `Some(i)` if this is a pure power `x_i^a` with `a >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.support();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, ring }
    }

    pub fn to_string_in(&self, ring: &Ring) -> String {
        self.display(ring).to_string()
    }
}

/// Degrevlex: higher degree first; ties broken by the last variable, where
/// the smaller exponent wins.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.exps.len().cmp(&other.exps.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Listing order used for staircases and generator lists: ascending degree,
/// and within one degree descending degrevlex (`x^2, xy, y^2`).
pub fn staircase_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ring: &'a Ring,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `nvars` variables (exponents capped when
/// `cap` is given), in descending degrevlex order.
pub fn monomials_of_degree(nvars: usize, d: u64, cap: Option<u32>, limits: &Limits) -> Result<Vec<Monomial>> {
    let count = count_monomials(nvars, d, cap.map(u64::from));
    let needed: u128 = count.try_into().unwrap_or(u128::MAX);
    limits.check_monomials("monomial enumeration", needed)?;
    if d > MAX_EXPONENT as u64 * nvars as u64 {
        return Ok(Vec::new());
    }
    let cap = cap.unwrap_or(MAX_EXPONENT).min(MAX_EXPONENT);
    let mut out = Vec::with_capacity(needed as usize);
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, d, cap);
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

fn fill(out: &mut Vec<Monomial>, exps: &mut [u32], i: usize, rest: u64, cap: u32) {
    let n = exps.len();
    if n == 0 {
        if rest == 0 {
            out.push(Monomial { exps: Vec::new() });
        }
        return;
    }
    if i == n - 1 {
        if rest <= cap as u64 {
            exps[i] = rest as u32;
            out.push(Monomial { exps: exps.to_vec() });
        }
        return;
    }
    // the remaining variables can absorb at most (n - 1 - i) * cap
    let tail = (n - 1 - i) as u64 * cap as u64;
    let lo = rest.saturating_sub(tail);
    let hi = rest.min(cap as u64);
    if lo > hi {
        return;
    }
    for e in (lo..=hi).rev() {
        exps[i] = e as u32;
        fill(out, exps, i + 1, rest - e, cap);
    }
    exps[i] = 0;
}

/// A polynomial over `F_p`: monomials mapped to nonzero canonical coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_monomial(ring, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::from_monomial(ring, Monomial::var(ring.nvars(), i))
    }

    pub fn from_monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Self::term(ring, m, 1)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: u64) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = ring.p.reduce(c);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    /// Build from `(monomial, coefficient)` pairs; like terms are combined
    /// and zero coefficients dropped.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let p = ring.p;
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = p.reduce(c);
            let e = map.entry(m).or_insert(0);
            *e = p.add(*e, c);
        }
        map.retain(|_, c| *c != 0);
        Polynomial { ring: ring.clone(), terms: map }
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        parse_polynomial(ring, text)
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// The single monomial of a one-term polynomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.p;
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert(0);
            *e = p.add(*e, c);
            if *e == 0 {
                terms.remove(m);
            }
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.ring.p;
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), p.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let p = self.ring.p;
        let c = c % p.get();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, &a)| (m.clone(), p.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(t, &c)| Ok((t.mul(m)?, c)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.p;
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let m = a.mul(b)?;
                let e = terms.entry(m).or_insert(0);
                *e = p.add(*e, p.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// `f^n` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, mut n: u64) -> Result<Polynomial> {
        if let Some(d) = self.terms.keys().map(Monomial::degree).max() {
            if d.checked_mul(n).is_none_or(|t| t > MAX_EXPONENT as u64 * self.ring.nvars() as u64) {
                return Err(Error::ExponentOverflow(format!("degree {d} times {n} is out of range")));
            }
        }
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self * other` modulo `m^[q]`: products with an exponent `>= q` are
    /// dropped, which is exact since `m^[q]` is a monomial ideal.
    pub fn mul_below(&self, other: &Polynomial, q: u64) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.p;
        let mut terms: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if a.exps.iter().zip(&b.exps).any(|(&x, &y)| x as u64 + y as u64 >= q) {
                    continue;
                }
                let m = a.mul(b)?;
                let e = terms.entry(m).or_insert(0);
                *e = p.add(*e, p.mul(ca, cb));
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// `f^n` modulo `m^[q]`.
    pub fn pow_below(&self, mut n: u64, q: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring).truncate_below(q);
        let mut base = self.truncate_below(q);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_below(&base, q)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_below(&base, q)?;
            }
        }
        Ok(acc)
    }

    /// The terms of `f` outside `m^[q]`.
    pub fn truncate_below(&self, q: u64) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.all_below(q)).map(|(m, &c)| (m.clone(), c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `f^(p^e)`, computed termwise as the sum of `c * m^(p^e)`; exact because
    /// Frobenius is additive and fixes every element of `F_p`.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = self.ring.p.power(e)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| Ok((m.pow(q)?, c)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Membership in `m^[q] = (x_0^q, ..., x_n^q)`: since the ideal is
    /// monomial, `f` belongs to it iff every term does.
    pub fn in_bracket_max(&self, q: u64) -> bool {
        self.terms.keys().all(|m| !m.all_below(q))
    }

    /// A term of `f` lying outside `m^[q]`, if any (the first in descending
    /// degrevlex order).
    pub fn term_outside_bracket_max(&self, q: u64) -> Option<&Monomial> {
        self.terms.keys().rev().find(|m| m.all_below(q))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, &c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (c, m.is_one()) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", m.display(&self.ring))?,
                _ => write!(f, "{c}*{}", m.display(&self.ring))?,
            }
        }
        Ok(())
    }
}

/// Free-function form of `f in m^[q]`.
pub fn in_bracket_max(f: &Polynomial, q: u64) -> bool {
    f.in_bracket_max(q)
}

/// Parse the text grammar: terms joined by `+` (a leading or infix `-` is
/// accepted too), each term an optional integer coefficient followed by
/// `*`-separated powers `x^k`. Whitespace is ignored; coefficients are
/// reduced mod `p`.
fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let p = ring.p;
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    loop {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^') {
            let piece = &s[start..i];
            if piece.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let (m, c) = parse_term(ring, piece)?;
            let c = if negative { p.neg(c) } else { c };
            terms.push((m, c as u64));
            if i == bytes.len() {
                break;
            }
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(ring: &Ring, piece: &str) -> Result<(Monomial, u32)> {
    let p = ring.p;
    let mut coeff = 1u32;
    let mut exps = vec![0u64; ring.nvars()];
    for factor in piece.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {piece:?}")));
        }
        if factor.bytes().all(|b| b.is_ascii_digit()) {
            coeff = p.mul(coeff, reduce_decimal(factor, p));
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let e: u64 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (name, e)
            }
            None => (factor, 1),
        };
        let idx = ring
            .var_index(name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        exps[idx] = exps[idx].saturating_add(exp);
    }
    let exps = exps
        .into_iter()
        .map(|e| {
            u32::try_from(e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::ExponentOverflow(format!("exponent {e} exceeds 2^31 - 1")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Monomial::new(exps)?, coeff))
}

fn reduce_decimal(digits: &str, p: Prime) -> u32 {
    digits
        .bytes()
        .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p.get() as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, names: &[&str]) -> Arc<Ring> {
        Ring::with_names(p, names).unwrap()
    }

    fn poly(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn add_examples() {
        let r = ring(5, &["x", "y"]);
        assert!(poly(&r, "x").add(&poly(&r, "4*x")).unwrap().is_zero());
        assert_eq!(poly(&r, "x").add(&poly(&r, "y")).unwrap(), poly(&r, "x + y"));
        let r2 = ring(2, &["x", "y"]);
        let s = poly(&r2, "x^2 + x*y").add(&poly(&r2, "x*y")).unwrap();
        assert_eq!(s, poly(&r2, "x^2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(5, &["x", "y"]);
        let b = ring(7, &["x", "y"]);
        assert_eq!(poly(&a, "x").add(&poly(&b, "x")), Err(Error::RingMismatch));
        assert_eq!(poly(&a, "x").mul(&poly(&b, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn mul_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(poly(&r, "x").mul(&poly(&r, "y")).unwrap(), poly(&r, "x*y"));
        let s = poly(&r, "x + y");
        assert_eq!(s.mul(&s).unwrap(), poly(&r, "x^2 + y^2"));

        let r3 = ring(3, &["x0", "x1", "x2", "x3"]);
        let f = poly(&r3, "x0*x1 + x2*x3");
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq, poly(&r3, "x0^2*x1^2 + 2*x0*x1*x2*x3 + x2^2*x3^2"));
        assert_eq!(sq.homogeneous_degree(), Some(4));
    }

    #[test]
    fn exponent_overflow_is_checked() {
        let r = ring(3, &["x"]);
        let big = Polynomial::from_monomial(&r, Monomial::new(vec![MAX_EXPONENT]).unwrap());
        assert!(matches!(big.mul(&poly(&r, "x")), Err(Error::ExponentOverflow(_))));
        assert!(matches!(big.pow(2), Err(Error::ExponentOverflow(_))));
        assert!(Monomial::new(vec![MAX_EXPONENT + 1]).is_err());
        assert!(matches!(Polynomial::parse(&r, "x^4294967296"), Err(Error::ExponentOverflow(_))));
    }

    #[test]
    fn power_examples() {
        let r = ring(3, &["x", "y"]);
        assert_eq!(poly(&r, "x").pow(3).unwrap(), poly(&r, "x^3"));
        assert_eq!(poly(&r, "x + y").pow(0).unwrap(), Polynomial::one(&r));

        let r5 = ring(5, &["x", "y", "z"]);
        let f4 = poly(&r5, "x^3 + y^3 + z^3").pow(4).unwrap();
        for (m, _) in f4.terms() {
            assert!(m.exps().iter().all(|e| e % 3 == 0));
            assert_eq!(m.degree(), 12);
        }
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2, &["x", "y"]);
        assert_eq!(poly(&r2, "x + y").frobenius_power(1).unwrap(), poly(&r2, "x^2 + y^2"));
        let r3 = ring(3, &["x", "y"]);
        assert_eq!(poly(&r3, "2*x + y").frobenius_power(1).unwrap(), poly(&r3, "2*x^3 + y^3"));
    }

    #[test]
    fn bracket_max_membership() {
        let r = ring(5, &["x", "y", "z"]);
        for q in [2u64, 3, 5, 25] {
            let m = Monomial::new(vec![q as u32 - 1, q as u32 - 1, 0]).unwrap();
            assert!(!Polynomial::from_monomial(&r, m).in_bracket_max(q));
        }
        assert!(!poly(&r, "x^5 + y").in_bracket_max(5));
        let f4 = poly(&r, "x^3 + y^3 + z^3").pow(4).unwrap();
        assert!(in_bracket_max(&f4, 5));
        assert!(Polynomial::zero(&r).in_bracket_max(5));
    }

    #[test]
    fn monomial_enumeration() {
        let r = ring(2, &["x", "y"]);
        let l = Limits::default();
        let got: Vec<String> = r
            .monomials_of_degree(2, None, &l)
            .unwrap()
            .iter()
            .map(|m| m.to_string_in(&r))
            .collect();
        assert_eq!(got, ["x^2", "x*y", "y^2"]);
        let capped = r.monomials_of_degree(2, Some(1), &l).unwrap();
        assert_eq!(capped.len(), 1);
        assert_eq!(capped[0].to_string_in(&r), "x*y");

        let tight = Limits { max_monomials: 5, ..Limits::default() };
        let r3 = ring(2, &["a", "b", "c"]);
        assert!(matches!(
            r3.monomials_of_degree(3, None, &tight),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn degrevlex_examples() {
        let m = |v: &[u32]| Monomial::new(v.to_vec()).unwrap();
        // x > y > z, and in degree two x*z > y^2 under degrevlex
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[0, 0, 2]) > m(&[0, 0, 1]));
    }

    #[test]
    fn parse_and_display() {
        let r = ring(7, &["x", "y"]);
        let f = poly(&r, " 3*x^2*y + 10 - x*y^3 ");
        assert_eq!(f.to_string(), "6*x*y^3 + 3*x^2*y + 3");
        assert_eq!(poly(&r, "x*x*y").to_string(), "x^2*y");
        assert_eq!(poly(&r, "7*x").to_string(), "0");
        assert!(Polynomial::parse(&r, "x + + y").is_err());
        assert!(Polynomial::parse(&r, "z").is_err());
        assert!(Polynomial::parse(&r, "").is_err());
        assert!(Polynomial::parse(&r, "x^").is_err());
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::with_names(4, &["x"]).is_err());
        assert!(Ring::with_names(2, &[]).is_err());
        assert!(Ring::with_names(2, &["x", "x"]).is_err());
        assert!(Ring::with_names(2, &["1x"]).is_err());
    }
}
