//! The Frobenius filtration of `R' = S/(f_1^p, ..., f_c^p)` for a monomial
//! regular sequence: `R'_k` is generated by the products `f^a` with
//! `a ≥ a_k` in lexicographic order on `{0..p-1}^c`, and each subquotient
//! should look like `R(-deg f^(a_k))`.

use serde::{Deserialize, Serialize};

use super::FracDegree;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subquotient {
    pub a: Vec<u32>,
    pub generator: String,
    /// `deg f^a` in `S`.
    pub shift: u64,
    /// The same shift on the `(1/p)`-scale of `F_*R`.
    pub rescaled_shift: FracDegree,
    /// `dim R'_k / R'_(k+1)` through the bound.
    pub dimension: u64,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub p: u32,
    pub c: usize,
    pub steps: usize,
    pub expected_steps: u64,
    /// `S`-degrees compared: `0..=bound`.
    pub bound: u64,
    pub dim_r: Option<u64>,
    pub subquotients: Vec<Subquotient>,
    pub passed: bool,
    pub note: String,
}

/// Exponent vectors `{0..p-1}^c` in lexicographic order.
fn lex_exponents(p: u32, c: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn product(fs: &[Monomial], a: &[u32]) -> Result<Monomial> {
    fs.iter()
        .zip(a)
        .try_fold(Monomial::one(fs[0].nvars()), |acc, (f, &k)| acc.mul(&f.pow(k as u64)?))
}

/// Check the filtration for `I = (f_1, ..., f_c)` with monomial `f_i` of
/// pairwise disjoint support in `m^2`, comparing Hilbert functions in
/// `S`-degrees up to the bound (default `p·Σ deg f_i + #vars`).
pub fn ci_filtration_check(ideal: &MonomialIdeal, limits: &Limits) -> Result<FiltrationReport> {
    let ring = ideal.ring();
    let p = ring.prime().get();
    let fs = ideal.gens().to_vec();
    if fs.is_empty() || !ideal.is_complete_intersection() {
        return Err(Error::UnsupportedClass("filtration needs monomials with disjoint supports".into()));
    }
    if !ideal.in_max_squared() {
        return Err(Error::NotInMaxSquared);
    }
    let c = fs.len();
    let total_degree: u64 = fs.iter().map(Monomial::degree).sum();
    let bound = limits
        .degree_bound
        .map_or(p as u64 * total_degree + ring.nvars() as u64, u64::from);
    let expected_steps = (p as u64).checked_pow(c as u32).unwrap_or(u64::MAX);
    limits.check_monomials("filtration steps", expected_steps as u128)?;

    let bracket = ideal.bracket_power(p as u64)?;
    let exps = lex_exponents(p, c);
    let gens: Vec<Monomial> = exps.iter().map(|a| product(&fs, a)).collect::<Result<_>>()?;
    // K_k = (f^a : a >= a_k) + (f_i^p); K_(p^c) = (f_i^p)
    let chain: Vec<MonomialIdeal> = (0..=gens.len())
        .map(|k| bracket.sum(&MonomialIdeal::new(ring, gens[k..].to_vec())))
        .collect::<Result<_>>()?;
    let hf = |i: &MonomialIdeal| -> Result<Vec<u64>> {
        (0..=bound).map(|t| Ok(i.hilbert_function(t, limits)? as u64)).collect()
    };
    let hf_r = hf(ideal)?;
    let chain_hf: Vec<Vec<u64>> = chain.iter().map(&hf).collect::<Result<_>>()?;
    let mut subquotients = Vec::new();
    for (k, a) in exps.iter().enumerate() {
        let shift = gens[k].degree();
        let mut matches = true;
        let mut dimension = 0u64;
        for t in 0..=bound as usize {
            let got = chain_hf[k + 1][t] as i64 - chain_hf[k][t] as i64;
            let want = if t as u64 >= shift { hf_r[t - shift as usize] as i64 } else { 0 };
            matches &= got == want;
            dimension += got.max(0) as u64;
        }
        subquotients.push(Subquotient {
            a: a.clone(),
            generator: gens[k].to_string_in(ring),
            shift,
            rescaled_shift: FracDegree::new(shift as i64, p as u64),
            dimension,
            matches,
        });
    }
    let dim_r = ideal.is_artinian().then(|| hf_r.iter().sum());
    let steps = subquotients.len();
    let passed = steps as u64 == expected_steps && subquotients.iter().all(|s| s.matches);
    Ok(FiltrationReport {
        p,
        c,
        steps,
        expected_steps,
        bound,
        dim_r,
        subquotients,
        passed,
        note: "equal Hilbert series is necessary, not sufficient, for the subquotients to be shifted copies of R"
            .into(),
    })
}
