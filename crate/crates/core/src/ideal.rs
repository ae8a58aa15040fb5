//! Ideals in `S = F_p[x_0, ..., x_n]` of the two supported classes: monomial
//! ideals (exact combinatorics) and complete intersections given by a
//! regular sequence (closed-form colon ideal).

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

use crate::combinat::count_monomials;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::limits::Limits;
use crate::par;
use crate::poly::{monomials_of_degree, staircase_order, Monomial, Polynomial, Ring};

/// A monomial ideal kept as its minimal generating set, sorted in
/// staircase order (ascending degree, then descending degrevlex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(staircase_order);
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl MonomialIdeal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == ring.nvars()));
        MonomialIdeal { ring: ring.clone(), gens: minimalize(gens) }
    }

    /// Parse a comma-separated list of monomials, e.g. `"x^4, x^2*y^2, y^4"`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        let polys = split_generators(text)
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_polynomials(ring, &polys)
    }

    /// Every nonzero generator must be a single term.
    pub fn from_polynomials(ring: &Arc<Ring>, polys: &[Polynomial]) -> Result<Self> {
        let mut gens = Vec::new();
        for f in polys.iter().filter(|f| !f.is_zero()) {
            let m = f.as_monomial().ok_or_else(|| {
                Error::UnsupportedClass(format!("generator {f} is not a monomial"))
            })?;
            gens.push(m.clone());
        }
        Ok(Self::new(ring, gens))
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        MonomialIdeal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        MonomialIdeal { ring: ring.clone(), gens: vec![Monomial::one(ring.nvars())] }
    }

    /// The homogeneous maximal ideal `(x_0, ..., x_n)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        let n = ring.nvars();
        Self::new(ring, (0..n).map(|i| Monomial::var(n, i)).collect())
    }

    /// `m^[q] = (x_0^q, ..., x_n^q)`.
    pub fn bracket_maximal(ring: &Arc<Ring>, q: u64) -> Result<Self> {
        Self::maximal(ring).bracket_power(q)
    }

    /// `m^j`.
    pub fn maximal_power(ring: &Arc<Ring>, j: u64, limits: &Limits) -> Result<Self> {
        Ok(Self::new(ring, ring.monomials_of_degree(j, None, limits)?))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// A polynomial lies in a monomial ideal iff each of its terms does.
    pub fn contains_polynomial(&self, f: &Polynomial) -> bool {
        f.terms().all(|(m, _)| self.contains(m))
    }

    /// Ideal equality by mutual generator membership.
    pub fn same_ideal(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g)) && other.gens.iter().all(|g| self.contains(g))
    }

    pub fn generator_polynomials(&self) -> Vec<Polynomial> {
        self.gens.iter().map(|g| Polynomial::from_monomial(&self.ring, g.clone())).collect()
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(&self.ring, self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(Self::new(&self.ring, gens))
    }

    /// `I^[q]`, generated by the `q`-th powers of the generators.
    pub fn bracket_power(&self, q: u64) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.pow(q)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(&self.ring, gens))
    }

    /// `(self : g)` for a single monomial `g`.
    pub fn colon_monomial(&self, g: &Monomial) -> Self {
        let gens = self
            .gens
            .iter()
            .map(|j| {
                let gcd = j.gcd(g);
                gcd.quotient_of(j).expect("gcd divides")
            })
            .collect();
        Self::new(&self.ring, gens)
    }

    /// `(self : other)`, the intersection of `(self : g)` over the generators
    /// `g` of `other`. The colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        let mut acc = Self::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_monomial(g))?;
        }
        Ok(acc)
    }

    /// All generators have degree at least two (and the ideal is proper).
    pub fn in_max_squared(&self) -> bool {
        self.gens.iter().all(|g| g.degree() >= 2)
    }

    /// Pairwise coprime generators form a regular sequence.
    pub fn is_complete_intersection(&self) -> bool {
        let n = self.nvars();
        let mut used = vec![false; n];
        for g in &self.gens {
            for i in g.support() {
                if used[i] {
                    return false;
                }
                used[i] = true;
            }
        }
        !self.is_unit()
    }

    /// For each variable, the smallest `a` with `x_i^a` among the generators.
    pub fn pure_powers(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.nvars()];
        for g in &self.gens {
            if let Some(i) = g.pure_power_var() {
                let a = g.exps()[i];
                out[i] = Some(out[i].map_or(a, |b: u32| b.min(a)));
            }
        }
        out
    }

    pub fn is_artinian(&self) -> bool {
        self.is_unit() || self.pure_powers().iter().all(Option::is_some)
    }

    fn require_artinian(&self) -> Result<Vec<u32>> {
        if self.is_unit() {
            return Err(Error::invalid("the quotient by the unit ideal is the zero ring"));
        }
        self.pure_powers()
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or_else(|| {
                    Error::NotArtinian(format!("no pure power of {} among the generators", self.ring.vars()[i]))
                })
            })
            .collect()
    }

    /// Degree of the lcm of all generators (0 for the zero ideal).
    pub fn lcm_degree(&self) -> u64 {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm(g))
            .degree()
    }

    /// Standard monomials through degree `bound`.
    pub fn staircase(&self, bound: u64, limits: &Limits) -> Result<QuotientStaircase> {
        QuotientStaircase::new(self, bound, limits)
    }

    /// `dim_k (S/I)_d`.
    pub fn hilbert_function(&self, d: u64, limits: &Limits) -> Result<usize> {
        let all = monomials_of_degree(self.nvars(), d, None, limits)?;
        Ok(all.iter().filter(|m| !self.contains(m)).count())
    }

    /// Least `n` with `m^n` contained in the ideal.
    pub fn loewy_length(&self, limits: &Limits) -> Result<u64> {
        let powers = self.require_artinian()?;
        let top: u64 = powers.iter().map(|&a| a as u64 - 1).sum::<u64>() + 1;
        for d in 0..=top {
            if self.hilbert_function(d, limits)? == 0 {
                return Ok(d);
            }
        }
        Err(Error::Verification(format!("no vanishing Hilbert function below degree {top}")))
    }

    /// `dim_k S/(I + m^[q])` with `q = p^e`: the minimal number of generators
    /// of `F^e_* R` over `R` when the base field is `F_p`.
    pub fn pushforward_min_generators(&self, e: u32, limits: &Limits) -> Result<u64> {
        let q = self.ring.prime().power(e)?;
        let n = self.nvars();
        let cap = u32::try_from(q - 1).map_err(|_| Error::guard("q", q as u128, u32::MAX as u128))?;
        let grid = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        limits.check_monomials("pushforward staircase", grid)?;
        let degrees: Vec<u64> = (0..=n as u64 * (q - 1)).collect();
        let counts = par::try_map(&degrees, |&d| {
            let ms = monomials_of_degree(n, d, Some(cap), limits)?;
            Ok::<u64, Error>(ms.iter().filter(|m| !self.contains(m)).count() as u64)
        })?;
        Ok(counts.into_iter().sum())
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string_in(&self.ring)).collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

/// Standard monomials of `S/I`, listed per degree, complete through `bound`.
#[derive(Debug, Clone)]
pub struct QuotientStaircase {
    bound: u64,
    by_degree: Vec<Vec<Monomial>>,
}

impl QuotientStaircase {
    pub fn new(ideal: &MonomialIdeal, bound: u64, limits: &Limits) -> Result<Self> {
        let n = ideal.nvars();
        // every degree up to `bound` is enumerated in full before filtering
        let total = count_monomials(n + 1, bound, None);
        limits.check_monomials("staircase enumeration", total.try_into().unwrap_or(u128::MAX))?;
        let degrees: Vec<u64> = (0..=bound).collect();
        let by_degree = par::try_map(&degrees, |&d| {
            let all = monomials_of_degree(n, d, None, limits)?;
            let mut std: Vec<Monomial> = all.into_iter().filter(|m| !ideal.contains(m)).collect();
            std.sort_by(staircase_order);
            Ok::<_, Error>(std)
        })?;
        Ok(QuotientStaircase { bound, by_degree })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn degree(&self, d: u64) -> &[Monomial] {
        self.by_degree.get(d as usize).map_or(&[], Vec::as_slice)
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    /// All standard monomials in staircase order.
    pub fn basis(&self) -> Vec<Monomial> {
        self.by_degree.iter().flatten().cloned().collect()
    }
}

/// Whether the regular-sequence hypothesis was checked or taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    /// Monomial generators with pairwise disjoint supports.
    Verified,
    /// Recorded as an assertion by the caller.
    Asserted,
}

/// An ideal generated by homogeneous `f_1, ..., f_t` forming a regular sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiIdeal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    regularity: Regularity,
}

impl CiIdeal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::UnsupportedClass("a complete intersection needs at least one generator".into()));
        }
        if gens.len() > ring.nvars() {
            return Err(Error::UnsupportedClass(format!(
                "{} generators cannot form a regular sequence in {} variables",
                gens.len(),
                ring.nvars()
            )));
        }
        for f in &gens {
            if f.ring() != ring {
                return Err(Error::RingMismatch);
            }
            match f.homogeneous_degree() {
                Some(d) if d >= 1 => {}
                _ => {
                    return Err(Error::UnsupportedClass(format!(
                        "generator {f} is not homogeneous of positive degree"
                    )))
                }
            }
        }
        let regularity = if gens.iter().all(|f| f.as_monomial().is_some()) {
            let ms: Vec<Monomial> = gens.iter().map(|f| f.as_monomial().unwrap().clone()).collect();
            let mut used = vec![false; ring.nvars()];
            for m in &ms {
                for i in m.support() {
                    if used[i] {
                        return Err(Error::UnsupportedClass(
                            "monomial generators sharing a variable are not a regular sequence".into(),
                        ));
                    }
                    used[i] = true;
                }
            }
            Regularity::Verified
        } else {
            Regularity::Asserted
        };
        Ok(CiIdeal { ring: ring.clone(), gens, regularity })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn regularity(&self) -> Regularity {
        self.regularity
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.gens.iter().map(|f| f.homogeneous_degree().unwrap_or(0)).collect()
    }

    /// Degree of `f = f_1 ... f_t`.
    pub fn total_degree(&self) -> u64 {
        self.degrees().iter().sum()
    }

    pub fn product(&self) -> Result<Polynomial> {
        self.gens
            .iter()
            .try_fold(Polynomial::one(&self.ring), |acc, f| acc.mul(f))
    }

    pub fn in_max_squared(&self) -> bool {
        self.degrees().iter().all(|&d| d >= 2)
    }

    pub fn bracket_power(&self, q: u64) -> Result<Self> {
        let e = exponent_of(self.ring.prime(), q)?;
        let gens = self.gens.iter().map(|f| f.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
        Ok(CiIdeal { ring: self.ring.clone(), gens, regularity: self.regularity })
    }

    /// `(I^[q] : I) = (f^(q-1)) + I^[q]` with `f = f_1 ... f_t`.
    pub fn colon(&self, q: u64) -> Result<CiColon> {
        let f_power = self.product()?.pow(q - 1)?;
        let bracket = self.bracket_power(q)?.gens;
        Ok(CiColon { q, f_power, bracket })
    }

    /// The same ideal as a monomial ideal, when every generator is a monomial.
    pub fn to_monomial_ideal(&self) -> Option<MonomialIdeal> {
        let ms: Option<Vec<Monomial>> = self.gens.iter().map(|f| f.as_monomial().cloned()).collect();
        ms.map(|ms| MonomialIdeal::new(&self.ring, ms))
    }
}

impl fmt::Display for CiIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The colon ideal of a complete intersection in its closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiColon {
    pub q: u64,
    /// `f^(q-1)`.
    pub f_power: Polynomial,
    /// `f_1^q, ..., f_t^q`.
    pub bracket: Vec<Polynomial>,
}

impl CiColon {
    pub fn generators(&self) -> Vec<Polynomial> {
        std::iter::once(self.f_power.clone()).chain(self.bracket.iter().cloned()).collect()
    }
}

/// `e` with `p^e = q`, or an error when `q` is not a positive power of `p`.
pub fn exponent_of(p: Prime, q: u64) -> Result<u32> {
    let mut e = 0;
    let mut v = 1u64;
    while v < q {
        v = v.saturating_mul(p.get() as u64);
        e += 1;
    }
    if v != q || e == 0 {
        return Err(Error::invalid(format!("{q} is not a positive power of {p}")));
    }
    Ok(e)
}

/// The ideal class tag of the text grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealClass {
    Monomial,
    Ci,
}

impl std::str::FromStr for IdealClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "monomial" => Ok(IdealClass::Monomial),
            "ci" => Ok(IdealClass::Ci),
            other => Err(Error::Parse(format!("unknown ideal class {other:?}"))),
        }
    }
}

/// An ideal of one of the supported classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ideal {
    Monomial(MonomialIdeal),
    Ci(CiIdeal),
}

impl Ideal {
    pub fn ring(&self) -> &Arc<Ring> {
        match self {
            Ideal::Monomial(i) => i.ring(),
            Ideal::Ci(i) => i.ring(),
        }
    }

    pub fn class(&self) -> IdealClass {
        match self {
            Ideal::Monomial(_) => IdealClass::Monomial,
            Ideal::Ci(_) => IdealClass::Ci,
        }
    }

    pub fn as_monomial(&self) -> Option<&MonomialIdeal> {
        match self {
            Ideal::Monomial(i) => Some(i),
            Ideal::Ci(_) => None,
        }
    }

    pub fn require_monomial(&self, what: &str) -> Result<&MonomialIdeal> {
        match self {
            Ideal::Monomial(i) => Ok(i),
            Ideal::Ci(_) => Err(Error::UnsupportedClass(format!("{what} needs a monomial ideal"))),
        }
    }

    /// A complete-intersection view: CI ideals as they are, monomial ideals
    /// when their generators are pairwise coprime.
    pub fn as_complete_intersection(&self) -> Result<CiIdeal> {
        match self {
            Ideal::Ci(i) => Ok(i.clone()),
            Ideal::Monomial(i) if i.is_complete_intersection() && !i.is_zero() => {
                CiIdeal::new(i.ring(), i.generator_polynomials())
            }
            Ideal::Monomial(_) => Err(Error::UnsupportedClass(
                "monomial ideal is not a complete intersection".into(),
            )),
        }
    }

    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        Ok(match self {
            Ideal::Monomial(i) => Ideal::Monomial(i.bracket_power(q)?),
            Ideal::Ci(i) => Ideal::Ci(i.bracket_power(q)?),
        })
    }

    /// Generators of `(I^[q] : I)`: the exact monomial colon, or the closed
    /// form for a complete intersection.
    pub fn frobenius_colon(&self, q: u64) -> Result<Vec<Polynomial>> {
        match self {
            Ideal::Monomial(i) => Ok(i.bracket_power(q)?.colon(i)?.generator_polynomials()),
            Ideal::Ci(i) => Ok(i.colon(q)?.generators()),
        }
    }

    pub fn generator_polynomials(&self) -> Vec<Polynomial> {
        match self {
            Ideal::Monomial(i) => i.generator_polynomials(),
            Ideal::Ci(i) => i.gens().to_vec(),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Monomial(i) => write!(f, "{i}"),
            Ideal::Ci(i) => write!(f, "{i}"),
        }
    }
}

/// Classify a list of generators. Without an explicit class, all-monomial
/// input becomes a monomial ideal and anything else a complete intersection
/// (with a warning that regularity is asserted, not checked).
pub fn classify(ring: &Arc<Ring>, gens: Vec<Polynomial>, class: Option<IdealClass>) -> Result<(Ideal, Vec<String>)> {
    let gens: Vec<Polynomial> = gens.into_iter().filter(|f| !f.is_zero()).collect();
    let all_monomial = gens.iter().all(|f| f.as_monomial().is_some());
    let mut warnings = Vec::new();
    let ideal = match class {
        Some(IdealClass::Monomial) => Ideal::Monomial(MonomialIdeal::from_polynomials(ring, &gens)?),
        Some(IdealClass::Ci) => {
            let ci = CiIdeal::new(ring, gens)?;
            if ci.regularity() == Regularity::Asserted {
                warnings.push("regular-sequence hypothesis is asserted, not verified".to_string());
            }
            Ideal::Ci(ci)
        }
        None if all_monomial => Ideal::Monomial(MonomialIdeal::from_polynomials(ring, &gens)?),
        None => {
            warnings.push(
                "non-monomial generators: treated as a complete intersection; \
                 the regular-sequence hypothesis is asserted, not verified"
                    .to_string(),
            );
            Ideal::Ci(CiIdeal::new(ring, gens)?)
        }
    };
    Ok((ideal, warnings))
}

/// A parsed `char <p>; vars <...>; ideal <...>; [class ...]` statement.
#[derive(Debug, Clone)]
pub struct IdealInput {
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
    pub warnings: Vec<String>,
}

impl IdealInput {
    /// Assemble from the separate pieces (as the CLI flags provide them).
    pub fn from_parts(p: u32, vars: &str, ideal: &str, class: Option<IdealClass>) -> Result<Self> {
        let names: Vec<String> = vars
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        let ring = Ring::new(Prime::new(p)?, names)?;
        let gens = split_generators(ideal)
            .map(|g| Polynomial::parse(&ring, g))
            .collect::<Result<Vec<_>>>()?;
        let (ideal, warnings) = classify(&ring, gens, class)?;
        Ok(IdealInput { ring, ideal, warnings })
    }

    /// Parse the statement grammar, e.g.
    /// `char 2; vars x,y; ideal x^4, x^2*y^2, y^4; class monomial`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = None;
        let mut vars = None;
        let mut ideal = None;
        let mut class = None;
        for stmt in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt, ""));
            let rest = rest.trim();
            match key {
                "char" => {
                    p = Some(rest.parse::<u32>().map_err(|_| Error::Parse(format!("bad characteristic {rest:?}")))?)
                }
                "vars" => vars = Some(rest.to_string()),
                "ideal" => ideal = Some(rest.to_string()),
                "class" => class = Some(rest.parse::<IdealClass>()?),
                other => return Err(Error::Parse(format!("unknown statement {other:?}"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing `char` statement".into()))?;
        let vars = vars.ok_or_else(|| Error::Parse("missing `vars` statement".into()))?;
        let ideal = ideal.unwrap_or_default();
        Self::from_parts(p, &vars, &ideal, class)
    }
}

fn split_generators(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "0")
}
