//! Frobenius splitting and graded summands via colon ideals.
//!
//! `R(-j)` is a graded summand of `F^e_*R` iff some `s` of degree `qj`
//! has `s·(I^[q] : I) ⊄ m^[q]`. Monomial `s` suffice: if `s·c ∉ m^[q]`,
//! pick a term `σγ` of `s·c` outside `m^[q]` with `σ` a term of `s` and `γ`
//! one of `c`. Then `σ·c` contains `σγ` with the same coefficient `c_γ`
//! (multiplying by one monomial never merges terms), so `σ` works as well.
//! A witness `σ` also has every exponent below `q`, so the candidates are the
//! degree-`qj` monomials with exponents capped at `q - 1`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::combinat::count_monomials;
use crate::error::{Error, Result};
use crate::ideal::{exponent_of, Ideal, MonomialIdeal};
use crate::json::BigCount;
use crate::limits::Limits;
use crate::par;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

/// One generator of `(I^[q] : I)`, kept modulo `m^[q]`.
#[derive(Debug, Clone)]
pub struct ColonGenerator {
    pub label: String,
    /// The generator reduced modulo `m^[q]` (only surviving terms).
    pub reduced: Polynomial,
}

/// Generators of `(I^[q] : I)`: the exact monomial colon, or
/// `f^(q-1), f_1^q, ..., f_t^q` for a complete intersection.
pub fn colon_generators(ideal: &Ideal, q: u64) -> Result<Vec<ColonGenerator>> {
    match ideal {
        Ideal::Monomial(i) => {
            let colon = i.bracket_power(q)?.colon(i)?;
            Ok(colon
                .generator_polynomials()
                .into_iter()
                .map(|g| ColonGenerator { label: g.to_string(), reduced: g.truncate_below(q) })
                .collect())
        }
        Ideal::Ci(ci) => {
            let f = ci.product()?;
            let mut out = vec![ColonGenerator {
                label: format!("({f})^{}", q - 1),
                reduced: f.pow_below(q - 1, q)?,
            }];
            for (k, fi) in ci.gens().iter().enumerate() {
                // every term of f_i^q has an exponent >= q
                out.push(ColonGenerator {
                    label: format!("f{}^{q}", k + 1),
                    reduced: fi.pow_below(q, q)?,
                });
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The multiplier `s`.
    pub s: String,
    pub s_exponents: Vec<u32>,
    pub generator_index: usize,
    pub generator: String,
    /// A term `γ` of the generator with `s·γ` outside `m^[q]`.
    pub term: String,
    pub term_exponents: Vec<u32>,
    pub term_coefficient: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    /// Degree of the candidate multipliers, `q·j`.
    pub degree: u64,
    /// Per-variable exponent cap, `q - 1`.
    pub cap: u64,
    pub candidates: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub verdict: bool,
    pub e: u32,
    pub q: u64,
    pub j: u64,
    pub witness: Option<Witness>,
    pub searched: SearchSpace,
}

fn q_for(ideal: &Ideal, e: u32, limits: &Limits) -> Result<u64> {
    if e == 0 {
        return Err(Error::invalid("the Frobenius exponent e must be positive"));
    }
    let q = ideal.ring().prime().power(e)?;
    limits.check_q(q)?;
    Ok(q)
}

/// Does `R(-j)` split off `F^e_*R` as a graded summand?
pub fn graded_summand_test(ideal: &Ideal, j: u64, e: u32, limits: &Limits) -> Result<SplitCertificate> {
    let q = q_for(ideal, e, limits)?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let degree = q
        .checked_mul(j)
        .ok_or_else(|| Error::ExponentOverflow(format!("{q} * {j}")))?;
    let searched = SearchSpace {
        degree,
        cap: q - 1,
        candidates: count_monomials(n, degree, Some(q - 1)).into(),
    };
    let gens = colon_generators(ideal, q)?;
    // only terms already outside m^[q] can survive multiplication
    let terms: Vec<(usize, &Monomial, u32)> = gens
        .iter()
        .enumerate()
        .flat_map(|(k, g)| g.reduced.terms().rev().map(move |(m, c)| (k, m, c)))
        .collect();
    let candidates = if terms.is_empty() || degree > n as u64 * (q - 1) {
        Vec::new()
    } else {
        monomials_of_degree(n, degree, Some((q - 1) as u32), limits)?
    };
    let hit = par::find_first(&candidates, |s| {
        terms
            .iter()
            .find(|(_, g, _)| s.exps().iter().zip(g.exps()).all(|(&a, &b)| (a as u64) + (b as u64) < q))
            .copied()
    });
    let witness = hit.map(|(idx, (k, gamma, c))| {
        let s = &candidates[idx];
        Witness {
            s: s.to_string_in(ring),
            s_exponents: s.exps().to_vec(),
            generator_index: k,
            generator: gens[k].label.clone(),
            term: gamma.to_string_in(ring),
            term_exponents: gamma.exps().to_vec(),
            term_coefficient: c,
        }
    });
    let cert = SplitCertificate { verdict: witness.is_some(), e, q, j, witness, searched };
    if cert.verdict && !cert.verify_witness(ideal)? {
        return Err(Error::Verification("splitting witness failed re-verification".into()));
    }
    Ok(cert)
}

/// Fedder-type test: `(I^[q] : I) ⊄ m^[q]`.
pub fn is_f_split(ideal: &Ideal, e: u32, limits: &Limits) -> Result<SplitCertificate> {
    graded_summand_test(ideal, 0, e, limits)
}

/// Colon generators with `f^(q-1)` expanded in full when that is cheap,
/// as an independent route for re-verification.
fn full_colon_generators(ideal: &Ideal, q: u64) -> Result<Vec<Polynomial>> {
    match ideal {
        Ideal::Ci(ci) => {
            let n = ci.ring().nvars();
            let size = count_monomials(n, ci.total_degree() * (q - 1), None);
            if size <= num_bigint::BigUint::from(20_000u32) {
                return ideal.frobenius_colon(q);
            }
            Ok(colon_generators(ideal, q)?.into_iter().map(|g| g.reduced).collect())
        }
        Ideal::Monomial(_) => ideal.frobenius_colon(q),
    }
}

impl SplitCertificate {
    /// Re-check a positive witness by multiplying `s` into the colon
    /// generator and testing membership in `m^[q]`.
    pub fn verify_witness(&self, ideal: &Ideal) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(!self.verdict);
        };
        let s = Monomial::new(w.s_exponents.clone())?;
        let gamma = Monomial::new(w.term_exponents.clone())?;
        if s.nvars() != ideal.ring().nvars() || s.degree() != self.q * self.j {
            return Ok(false);
        }
        let gens = full_colon_generators(ideal, self.q)?;
        let Some(c) = gens.get(w.generator_index) else {
            return Ok(false);
        };
        let product = c.mul_monomial(&s)?;
        let sg = s.mul(&gamma)?;
        Ok(!product.in_bracket_max(self.q)
            && sg.all_below(self.q)
            && c.coefficient(&gamma) == w.term_coefficient
            && product.coefficient(&sg) != 0)
    }

    /// Full re-verification: positive verdicts through the witness,
    /// negative ones by repeating the exhaustive search.
    pub fn reverify(&self, ideal: &Ideal, limits: &Limits) -> Result<bool> {
        if self.verdict {
            self.verify_witness(ideal)
        } else {
            let again = graded_summand_test(ideal, self.j, self.e, limits)?;
            Ok(!again.verdict && again.searched == self.searched)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSummandCertificate {
    pub verdict: bool,
    pub e: u32,
    pub q: u64,
    /// Generators of `(I : m^[q])`, i.e. of the annihilator of `m^[q]` in `R`.
    pub annihilator: Vec<String>,
    pub witness: Option<String>,
    pub witness_exponents: Option<Vec<u32>>,
}

/// Is the residue field a direct summand of `F^e_*R`? True iff
/// `(0 :_R m^[q]) ⊄ m^[q]R`, i.e. `(I : m^[q]) ⊄ I + m^[q]`.
pub fn k_summand_test(ideal: &MonomialIdeal, e: u32, limits: &Limits) -> Result<KSummandCertificate> {
    if !ideal.is_artinian() || ideal.is_unit() {
        return Err(Error::NotArtinian(format!("{ideal} does not define an artinian quotient")));
    }
    let ring = ideal.ring();
    if e == 0 {
        return Err(Error::invalid("the Frobenius exponent e must be positive"));
    }
    let q = ring.prime().power(e)?;
    limits.check_q(q)?;
    let ann = ideal.colon(&MonomialIdeal::bracket_maximal(ring, q)?)?;
    let witness = ann.gens().iter().find(|g| g.all_below(q) && !ideal.contains(g)).cloned();
    let cert = KSummandCertificate {
        verdict: witness.is_some(),
        e,
        q,
        annihilator: ann.gens().iter().map(|g| g.to_string_in(ring)).collect(),
        witness: witness.as_ref().map(|w| w.to_string_in(ring)),
        witness_exponents: witness.map(|w| w.exps().to_vec()),
    };
    if !cert.reverify(ideal)? {
        return Err(Error::Verification("residue-field summand certificate failed".into()));
    }
    Ok(cert)
}

impl KSummandCertificate {
    /// A witness `σ` must satisfy `σ·x_i^q ∈ I` for all `i` and `σ ∉ I + m^[q]`.
    pub fn reverify(&self, ideal: &MonomialIdeal) -> Result<bool> {
        let Some(exps) = &self.witness_exponents else {
            return Ok(!self.verdict);
        };
        let sigma = Monomial::new(exps.clone())?;
        let n = ideal.nvars();
        for i in 0..n {
            if !ideal.contains(&sigma.mul(&Monomial::var(n, i).pow(self.q)?)?) {
                return Ok(false);
            }
        }
        Ok(self.verdict && sigma.all_below(self.q) && !ideal.contains(&sigma))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSpectrum {
    pub e: u32,
    pub q: u64,
    pub jmax: u64,
    /// `n` for `Proj S` with `S` in `n + 1` variables.
    pub n: u64,
    /// `d = Σ deg f_i` when the ideal is a complete intersection.
    pub d: Option<u64>,
    /// `[0, n - d]` when `d <= n`.
    pub band: Option<[u64; 2]>,
    /// Whether the band was asserted against the computed entries.
    pub asserted: bool,
    pub entries: BTreeMap<u64, SplitCertificate>,
    pub warnings: Vec<String>,
}

/// Graded summand tests for `j = 0..=jmax`. For an F-split complete
/// intersection with `d <= n` and `q > n - d`, the entries must be true
/// exactly on `0..=n-d`; a mismatch is a verification error.
pub fn twist_spectrum(ideal: &Ideal, e: u32, jmax: u64, limits: &Limits) -> Result<TwistSpectrum> {
    let q = q_for(ideal, e, limits)?;
    let n = ideal.ring().nvars() as u64 - 1;
    let js: Vec<u64> = (0..=jmax).collect();
    let mut entries = BTreeMap::new();
    for &j in &js {
        entries.insert(j, graded_summand_test(ideal, j, e, limits)?);
    }
    let mut warnings = Vec::new();
    let d = match ideal.as_complete_intersection() {
        Ok(ci) => Some(ci.total_degree()),
        Err(_) => {
            warnings.push("not a complete intersection: no band is predicted".into());
            None
        }
    };
    let band = d.filter(|&d| d <= n).map(|d| [0, n - d]);
    let split = entries[&0].verdict;
    if d.is_some_and(|d| d > n) {
        warnings.push("degree exceeds n: only j = 0 is predicted, values reported without assertion".into());
    }
    if !split {
        warnings.push("not F-split at this e: band not asserted".into());
    }
    if let Some([_, top]) = band {
        if q <= top {
            warnings.push(format!("q = {q} <= n - d = {top}: band not asserted"));
        }
    }
    let asserted = split && band.is_some_and(|[_, top]| q > top);
    if asserted {
        let top = band.unwrap()[1];
        for (&j, cert) in &entries {
            if cert.verdict != (j <= top) {
                return Err(Error::Verification(format!(
                    "graded summand verdict {} at j = {j} contradicts the band 0..={top}",
                    cert.verdict
                )));
            }
        }
        if jmax < top {
            warnings.push(format!("jmax = {jmax} stops inside the band 0..={top}"));
        }
    }
    Ok(TwistSpectrum { e, q, jmax, n, d, band, asserted, entries, warnings })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFactor {
    pub j: u64,
    pub s: String,
    pub s_exponents: Vec<u32>,
    /// `s_j · f^(q-1) ∉ m^[q]`, by explicit multiplication.
    pub verified: bool,
    /// Verdict of the independent summand search at this `j`.
    pub summand_test: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChain {
    pub e: u32,
    pub q: u64,
    pub n: u64,
    pub d: u64,
    /// The term of `f^(q-1)` with every exponent below `q`.
    pub gamma: String,
    pub g: String,
    pub g_exponents: Vec<u32>,
    pub deg_g: u64,
    /// `(n+1)(q-1) - d(q-1)`.
    pub expected_deg_g: u64,
    pub factors: Vec<ChainFactor>,
    pub warnings: Vec<String>,
}

/// The first `jq` worth of exponents of `g`, taking variables in order.
fn greedy_factor(g: &Monomial, degree: u64) -> Monomial {
    let mut left = degree;
    let exps = g
        .exps()
        .iter()
        .map(|&a| {
            let take = left.min(a as u64);
            left -= take;
            take as u32
        })
        .collect();
    Monomial::new(exps).expect("bounded by g")
}

/// The witness chain of the splitting argument: a surviving term `γ` of
/// `f^(q-1)`, the cofactor `g = (x_0···x_n)^(q-1) / γ`, and monomial
/// factors `s_j | g` of degree `jq` for `0 <= j <= n - d`.
pub fn witness_from_proof(ideal: &Ideal, e: u32, limits: &Limits) -> Result<WitnessChain> {
    let ci = ideal.as_complete_intersection()?;
    let q = q_for(ideal, e, limits)?;
    exponent_of(ci.ring().prime(), q)?;
    let ring = ci.ring();
    let nv = ring.nvars();
    let n = nv as u64 - 1;
    let d = ci.total_degree();
    let fq = ci.product()?.pow_below(q - 1, q)?;
    let gamma = fq.term_outside_bracket_max(q).cloned().ok_or(Error::NotFSplit { q })?;
    let top = Monomial::new(vec![(q - 1) as u32; nv])?;
    let g = gamma.quotient_of(&top).expect("gamma has exponents below q");
    let expected_deg_g = ((n + 1) * (q - 1)).saturating_sub(d * (q - 1));
    let mut warnings = Vec::new();
    let mut factors = Vec::new();
    if d <= n {
        for j in 0..=n - d {
            if j * q > g.degree() {
                warnings.push(format!("deg g = {} < {}: no factor for j = {j}", g.degree(), j * q));
                continue;
            }
            let s = greedy_factor(&g, j * q);
            let verified = !fq.mul_monomial(&s)?.in_bracket_max(q);
            let summand_test = graded_summand_test(ideal, j, e, limits)?.verdict;
            if !(verified && summand_test) {
                return Err(Error::Verification(format!("witness factor for j = {j} does not re-verify")));
            }
            factors.push(ChainFactor {
                j,
                s: s.to_string_in(ring),
                s_exponents: s.exps().to_vec(),
                verified,
                summand_test,
            });
        }
    } else {
        warnings.push("d > n: the chain has no factors beyond s_0 = 1".into());
        let verified = !fq.in_bracket_max(q);
        factors.push(ChainFactor {
            j: 0,
            s: "1".into(),
            s_exponents: vec![0; nv],
            verified,
            summand_test: is_f_split(ideal, e, limits)?.verdict,
        });
    }
    if g.degree() != expected_deg_g {
        return Err(Error::Verification(format!("deg g = {} but expected {expected_deg_g}", g.degree())));
    }
    Ok(WitnessChain {
        e,
        q,
        n,
        d,
        gamma: gamma.to_string_in(ring),
        g: g.to_string_in(ring),
        g_exponents: g.exps().to_vec(),
        deg_g: g.degree(),
        expected_deg_g,
        factors,
        warnings,
    })
}
