//! Conic modules over the Veronese subring `R = k[x,y]^(ℓ)`.
//!
//! Grading convention: `(G_j)_k = S_{ℓk + j}` for `0 <= j < ℓ`, so
//! `G_0 = R` with `R_k = S_{ℓk}` and `dim (G_j)_k = ℓk + j + 1`.
//!
//! Monomials `x^a y^b` of `F^e_*R` split by `(a mod q, b mod q) = (α, β)`;
//! the class of `(α, β)` is `{x^α y^β t^q}` with `t` ranging over the
//! monomials of degree `≡ c (mod ℓ)` for the `c` solving
//! `qc + α + β ≡ 0 (mod ℓ)`, and `r ∘ x^α y^β t^q = x^α y^β (rt)^q`.
//! Each class is therefore a sum of `G_c`'s, found from its Hilbert series
//! in the `t`-degree.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::{checked_q, FracDegree};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::monomials_of_degree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandModule {
    pub ell: u64,
    pub j: u64,
    pub convention: String,
    /// `dim (G_j)_k` for `k = 0..=kmax`.
    pub hilbert: Vec<u64>,
}

/// `G_j`: the span of the monomials of `k[x,y]` of degree `≡ j (mod ℓ)`.
pub fn strand_module(ell: u64, j: u64, kmax: u64, limits: &Limits) -> Result<StrandModule> {
    if ell == 0 || j >= ell {
        return Err(Error::invalid(format!("strand class j = {j} must lie in 0..{ell}")));
    }
    let hilbert = (0..=kmax)
        .map(|k| Ok(monomials_of_degree(2, ell * k + j, None, limits)?.len() as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok(StrandModule { ell, j, convention: format!("(G_{j})_k = S_({ell}k+{j})"), hilbert })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSolve {
    pub alpha: u64,
    pub beta: u64,
    /// `c` mapped to the multiplicity of `G_c` in this class.
    pub summands: BTreeMap<u64, u64>,
    /// Degree of `x^α y^β` in `F^e_*R`.
    pub offset: FracDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicDecomposition {
    pub ell: u64,
    pub p: u32,
    pub e: u32,
    pub q: u64,
    /// `R`-degrees checked: `0..=bound`.
    pub bound: u64,
    /// `j` mapped to the multiplicity of `G_j` in `F^e_*R`.
    pub multiplicities: BTreeMap<u64, u64>,
    pub classes: Vec<ClassSolve>,
    /// `Σ_j mult(j)·HS(G_j)`, shifted per class, equals `HS(F^e_*R)`.
    pub hilbert_check: bool,
    pub has_r_summand: bool,
    pub has_nonfree_summand: bool,
}

/// Decompose `F^e_*` of the `ℓ`-th Veronese subring of `F_p[x,y]` into
/// conic modules, checking Hilbert series through `R`-degree `bound`.
pub fn veronese_decompose(ell: u64, p: u32, e: u32, bound: u64, limits: &Limits) -> Result<ConicDecomposition> {
    if ell == 0 {
        return Err(Error::invalid("Veronese index must be positive"));
    }
    let q = checked_q(p, e, limits)?;
    let top = bound * ell * q;
    limits.check_monomials("Veronese pushforward basis", (top as u128 + 1) * (top as u128 + 2) / 2)?;

    // t-degree counts per residue class, and the global fractional series
    let mut counts: BTreeMap<(u64, u64), BTreeMap<u64, u64>> = BTreeMap::new();
    let mut series: BTreeMap<u64, u64> = BTreeMap::new();
    for s in (0..=top).step_by(ell as usize) {
        for a in 0..=s {
            let b = s - a;
            let (al, be) = (a % q, b % q);
            *counts.entry((al, be)).or_default().entry((a - al) / q + (b - be) / q).or_default() += 1;
            *series.entry(s / ell).or_default() += 1;
        }
    }

    let mut classes = Vec::new();
    let mut predicted: BTreeMap<u64, u64> = BTreeMap::new();
    for (&(al, be), hs) in &counts {
        let dmax = (top - al - be) / q;
        let mut residual: Vec<i128> = (0..=dmax).map(|d| *hs.get(&d).unwrap_or(&0) as i128).collect();
        let mut summands = BTreeMap::new();
        while let Some(d) = residual.iter().position(|&v| v != 0) {
            let v = residual[d];
            if d as u64 >= ell || v < 0 || v % (d as i128 + 1) != 0 {
                return Err(Error::Verification(format!(
                    "class ({al}, {be}): no conic solve at t-degree {d}, residual {v}"
                )));
            }
            let mult = v / (d as i128 + 1);
            summands.insert(d as u64, mult as u64);
            for dd in (d..=dmax as usize).step_by(ell as usize) {
                residual[dd] -= mult * (dd as i128 + 1);
            }
        }
        for (&c, &mult) in &summands {
            for dd in (c..=dmax).step_by(ell as usize) {
                let s = al + be + q * dd;
                debug_assert_eq!(s % ell, 0);
                *predicted.entry(s / ell).or_default() += mult * (dd + 1);
            }
        }
        classes.push(ClassSolve {
            alpha: al,
            beta: be,
            summands,
            offset: FracDegree::new((al + be) as i64, ell * q),
        });
    }
    let mut multiplicities: BTreeMap<u64, u64> = (0..ell).map(|j| (j, 0)).collect();
    for c in &classes {
        for (&j, &m) in &c.summands {
            *multiplicities.get_mut(&j).expect("j < ell") += m;
        }
    }
    let hilbert_check = predicted == series;
    if !hilbert_check {
        return Err(Error::Verification("conic Hilbert series do not add up to F_*R".into()));
    }
    Ok(ConicDecomposition {
        ell,
        p,
        e,
        q,
        bound,
        has_r_summand: multiplicities[&0] >= 1,
        has_nonfree_summand: multiplicities.iter().any(|(&j, &m)| j != 0 && m >= 1),
        multiplicities,
        classes,
        hilbert_check,
    })
}
