//! Bound reports for the Frobenius level, the generation exponent, and
//! the exponent after which `F^e_*R` is semisimple for artinian `R`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fedder::{is_f_split, SplitCertificate};
use crate::ideal::Ideal;
use crate::koszul::codepth;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UpperBound {
    Known(u64),
    Unknown(String),
}

impl UpperBound {
    pub fn value(&self) -> Option<u64> {
        match self {
            UpperBound::Known(v) => Some(*v),
            UpperBound::Unknown(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub bound: String,
    pub reason: String,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodepthEvidence {
    pub value: usize,
    /// `generators` for a complete intersection in `m^2`, `koszul` otherwise.
    pub method: String,
    /// Koszul cross-check for monomial complete intersections.
    pub koszul: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificates {
    /// Splitting tests for `e = 1..=e_max`.
    pub splitting: Vec<SplitCertificate>,
    pub loewy_length: Option<u64>,
    pub codepth: Option<CodepthEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower: u64,
    pub upper: UpperBound,
    pub exact: Option<u64>,
    pub p: u32,
    pub e_max: u32,
    pub certificates: LevelCertificates,
    pub provenance: Vec<Provenance>,
}

/// Codepth of a complete intersection in `m^2` (its number of generators),
/// cross-checked against Koszul homology when the generators are monomials.
fn ci_codepth(ideal: &Ideal, limits: &Limits) -> Result<Option<CodepthEvidence>> {
    let Ok(ci) = ideal.as_complete_intersection() else {
        return Ok(None);
    };
    if !ci.in_max_squared() {
        return Ok(None);
    }
    let t = ci.gens().len();
    let koszul = match ci.to_monomial_ideal() {
        Some(m) => Some(codepth(&m, limits)?.codepth),
        None => None,
    };
    if koszul.is_some_and(|k| k != t) {
        return Err(Error::Verification(format!("complete intersection of {t} generators has codepth {koszul:?}")));
    }
    Ok(Some(CodepthEvidence { value: t, method: "generators".into(), koszul }))
}

/// Lower and upper bounds on the Frobenius level of `R = S/I`.
pub fn f_level_bounds(ideal: &Ideal, e_max: u32, limits: &Limits) -> Result<BoundReport> {
    if e_max == 0 {
        return Err(Error::invalid("e_max must be positive"));
    }
    let p = ideal.ring().prime().get();
    let splitting = (1..=e_max).map(|e| is_f_split(ideal, e, limits)).collect::<Result<Vec<_>>>()?;
    let split = splitting[0].verdict;
    if !split && splitting.iter().any(|c| c.verdict) {
        return Err(Error::Verification("splitting at a higher e without splitting at e = 1".into()));
    }
    let mut provenance = Vec::new();
    let lower = if split {
        provenance.push(Provenance {
            bound: "exact = 1".into(),
            reason: "level one is equivalent to F-splitting".into(),
            certificate: "certificates.splitting[0]".into(),
        });
        1
    } else {
        provenance.push(Provenance {
            bound: "lower = 2".into(),
            reason: format!("not F-split for e = 1..={e_max}; e = 1 is decisive since splitting at any e gives splitting at e = 1"),
            certificate: "certificates.splitting".into(),
        });
        2
    };

    let mut candidates: Vec<u64> = Vec::new();
    let loewy_length = match ideal {
        Ideal::Monomial(m) if m.is_artinian() && !m.is_unit() => Some(m.loewy_length(limits)?),
        _ => None,
    };
    if let Some(ll) = loewy_length {
        candidates.push(ll);
        provenance.push(Provenance {
            bound: format!("upper <= {ll}"),
            reason: "artinian: the level is at most the Loewy length".into(),
            certificate: "certificates.loewy_length".into(),
        });
    }
    let codepth_evidence = ci_codepth(ideal, limits)?;
    if let Some(c) = &codepth_evidence {
        let bound = (p as u64)
            .checked_pow(c.value as u32)
            .ok_or_else(|| Error::ExponentOverflow(format!("{p}^{}", c.value)))?;
        candidates.push(bound);
        provenance.push(Provenance {
            bound: format!("upper <= {bound}"),
            reason: format!("complete intersection: the level is at most p^codepth = {p}^{}", c.value),
            certificate: "certificates.codepth".into(),
        });
    }
    if split {
        candidates.push(1);
    }
    let upper = match candidates.iter().min() {
        Some(&u) => UpperBound::Known(u),
        None => UpperBound::Unknown("unknown (finite, but no effective bound for this class)".into()),
    };
    if upper.value().is_some_and(|u| u < lower) {
        return Err(Error::Verification(format!("upper bound {upper:?} below lower bound {lower}")));
    }
    let exact = if split { Some(1) } else { upper.value().filter(|&u| u == lower) };
    Ok(BoundReport {
        lower,
        upper,
        exact,
        p,
        e_max,
        certificates: LevelCertificates { splitting, loewy_length, codepth: codepth_evidence },
        provenance,
    })
}

impl BoundReport {
    /// Recompute each certificate through its own operation.
    pub fn reverify(&self, ideal: &Ideal, limits: &Limits) -> Result<bool> {
        for c in &self.certificates.splitting {
            if !c.reverify(ideal, limits)? {
                return Ok(false);
            }
        }
        if let Some(ll) = self.certificates.loewy_length {
            if ideal.require_monomial("Loewy length")?.loewy_length(limits)? != ll {
                return Ok(false);
            }
        }
        if let Some(c) = &self.certificates.codepth {
            if ci_codepth(ideal, limits)?.as_ref() != Some(c) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub p: u32,
    pub codepth: usize,
    pub codepth_method: String,
    /// Least `e >= 1` with `p^e > codepth`.
    pub e: u32,
    pub q: u64,
}

/// Codepth of `S/I`: Koszul homology for monomial ideals, the number of
/// generators for a complete intersection in `m^2`.
pub fn codepth_of(ideal: &Ideal, limits: &Limits) -> Result<(usize, String)> {
    match ideal {
        Ideal::Monomial(m) => Ok((codepth(m, limits)?.codepth, "koszul".into())),
        Ideal::Ci(ci) => {
            if !ci.in_max_squared() {
                return Err(Error::NotInMaxSquared);
            }
            Ok((ci.gens().len(), "generators".into()))
        }
    }
}

pub fn generation_exponent_for(p: u32, codepth: usize) -> (u32, u64) {
    let mut e = 1u32;
    let mut q = p as u64;
    while q <= codepth as u64 {
        e += 1;
        q *= p as u64;
    }
    (e, q)
}

pub fn generation_exponent(ideal: &Ideal, limits: &Limits) -> Result<GenerationReport> {
    let p = ideal.ring().prime().get();
    let (codepth, codepth_method) = codepth_of(ideal, limits)?;
    let (e, q) = generation_exponent_for(p, codepth);
    Ok(GenerationReport { p, codepth, codepth_method, e, q })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleReport {
    pub p: u32,
    /// Least `e >= 1` with `m^[p^e] ⊆ I`.
    pub e: u32,
    pub q: u64,
    /// Smallest pure-power exponent per variable.
    pub pure_powers: Vec<u32>,
    pub loewy_length: u64,
    /// `⌈log_p ℓℓ(R)⌉`, for comparison.
    pub log_loewy: u32,
}

fn ceil_log(p: u64, v: u64) -> u32 {
    let mut e = 0;
    let mut q = 1u64;
    while q < v {
        q = q.saturating_mul(p);
        e += 1;
    }
    e
}

/// After this exponent the twisted action of `m` on `F^e_*R` is zero.
pub fn semisimple_pushforward_exponent(ideal: &Ideal, limits: &Limits) -> Result<SemisimpleReport> {
    let m = ideal.require_monomial("the semisimple exponent")?;
    if !m.is_artinian() || m.is_unit() {
        return Err(Error::NotArtinian(format!("{m} does not define an artinian quotient")));
    }
    let p = m.ring().prime().get();
    let pure_powers: Vec<u32> = m.pure_powers().into_iter().map(|a| a.expect("artinian")).collect();
    let top = pure_powers.iter().copied().max().unwrap_or(1) as u64;
    let e = ceil_log(p as u64, top).max(1);
    let q = (p as u64).pow(e);
    let loewy_length = m.loewy_length(limits)?;
    Ok(SemisimpleReport { p, e, q, pure_powers, loewy_length, log_loewy: ceil_log(p as u64, loewy_length) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::IdealInput;

    fn ideal(text: &str) -> Ideal {
        IdealInput::parse(text).unwrap().ideal
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn level_reports() {
        let r = f_level_bounds(&ideal("char 3; vars x,y; ideal x*y"), 2, &l()).unwrap();
        assert_eq!((r.lower, r.exact), (1, Some(1)));

        let i = ideal("char 2; vars x,y; ideal x^4, x^2*y^2, y^4");
        let r = f_level_bounds(&i, 4, &l()).unwrap();
        assert_eq!((r.lower, r.upper.clone(), r.exact), (2, UpperBound::Known(5), None));
        assert!(r.reverify(&i, &l()).unwrap());

        let i = ideal("char 5; vars x,y,z; ideal x^3+y^3+z^3");
        let r = f_level_bounds(&i, 2, &l()).unwrap();
        assert_eq!((r.lower, r.upper.clone()), (2, UpperBound::Known(5)));
        assert_eq!(serde_json::to_value(&r).unwrap()["upper"], 5);

        let r = f_level_bounds(&ideal("char 2; vars x,y,z; ideal x^2*y, x*z^2"), 2, &l()).unwrap();
        assert_eq!(r.upper.value(), None);
        assert_eq!(serde_json::to_value(&r).unwrap()["upper"].as_str().map(|s| s.starts_with("unknown")), Some(true));
    }

    #[test]
    fn generation_exponents() {
        assert_eq!(generation_exponent_for(2, 3), (2, 4));
        assert_eq!(generation_exponent_for(5, 0), (1, 5));
        let g = generation_exponent(&ideal("char 2; vars x,y; ideal x^2, y^3"), &l()).unwrap();
        assert_eq!((g.codepth, g.e), (2, 2));
        let g = generation_exponent(&ideal("char 3; vars x,y; ideal 0"), &l()).unwrap();
        assert_eq!(g.e, 1);
    }

    #[test]
    fn semisimple_exponents() {
        let s = semisimple_pushforward_exponent(&ideal("char 2; vars x,y; ideal x^2, x*y, y^2"), &l()).unwrap();
        assert_eq!(s.e, 1);
        let s = semisimple_pushforward_exponent(&ideal("char 2; vars x,y; ideal x^4, x^2*y^2, y^4"), &l()).unwrap();
        assert_eq!((s.e, s.loewy_length, s.log_loewy), (2, 5, 3));
    }
}
