//! `F^e_* O(l)` on `P^n` split as a sum of line bundles `O(-i)`: the
//! multiplicity `α(i, l)` counts monomials of degree `l + ip` in `n + 1`
//! variables with every exponent at most `p - 1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use super::checked_q;
use crate::combinat::count_monomials;
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::json::BigCount;
use crate::limits::Limits;
use crate::poly::monomials_of_degree;

fn target_degree(p: u32, i: i64, l: i64) -> Option<u64> {
    let d = l + i * p as i64;
    u64::try_from(d).ok()
}

/// `α(i, l)` by inclusion–exclusion:
/// `Σ_k (-1)^k C(n+1, k) C(D - kp + n, n)` with `D = l + ip`.
pub fn alpha(n: u64, p: u32, i: i64, l: i64) -> BigUint {
    match target_degree(p, i, l) {
        Some(d) => count_monomials(n as usize + 1, d, Some(p as u64 - 1)),
        None => BigUint::zero(),
    }
}

/// `α(i, l)` by listing the monomials.
pub fn alpha_enumerate(n: u64, p: u32, i: i64, l: i64, limits: &Limits) -> Result<u64> {
    match target_degree(p, i, l) {
        Some(d) => Ok(monomials_of_degree(n as usize + 1, d, Some(p - 1), limits)?.len() as u64),
        None => Ok(0),
    }
}

/// All nonzero `α(i, l)` for fixed `l`, by increasing `i`.
pub fn alpha_table(n: u64, p: u32, l: i64) -> Vec<(i64, BigUint)> {
    let pp = p as i64;
    let top = (n as i64 + 1) * (pp - 1);
    // l + ip must lie in [0, top]
    let lo = (-l).div_euclid(pp) + i64::from((-l).rem_euclid(pp) != 0);
    let hi = (top - l).div_euclid(pp);
    (lo..=hi)
        .map(|i| (i, alpha(n, p, i, l)))
        .filter(|(_, a)| !a.is_zero())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PnPushforward {
    pub n: u64,
    pub p: u32,
    pub e: u32,
    pub l: i64,
    /// Twist `t` of `O(t)` mapped to its multiplicity.
    pub twists: BTreeMap<i64, BigCount>,
    pub total: BigCount,
    /// `p^(en)`, the rank of `F^e_*` of a line bundle.
    pub expected_total: BigCount,
    /// Every twist `0, -1, ..., -n` occurs.
    pub generates: bool,
    pub expected_generates: bool,
}

/// Iterate the `e = 1` splitting `e` times, starting from `O(l)`.
pub fn pn_pushforward(n: u64, p: u32, e: u32, l: i64, limits: &Limits) -> Result<PnPushforward> {
    if n == 0 {
        return Err(Error::invalid("projective dimension n must be at least 1"));
    }
    Prime::new(p)?;
    let q = checked_q(p, e, limits)?;
    let mut current: BTreeMap<i64, BigUint> = BTreeMap::from([(l, BigUint::one())]);
    for _ in 0..e {
        let mut next: BTreeMap<i64, BigUint> = BTreeMap::new();
        for (&t, mult) in &current {
            for (i, a) in alpha_table(n, p, t) {
                *next.entry(-i).or_default() += mult * a;
            }
        }
        current = next;
    }
    let total: BigUint = current.values().sum();
    let expected_total = BigUint::from(p).pow((e as u64 * n) as u32);
    if total != expected_total {
        return Err(Error::Verification(format!("rank {total} differs from p^(en) = {expected_total}")));
    }
    let generates = (0..=n as i64).all(|i| current.get(&-i).is_some_and(|m| !m.is_zero()));
    Ok(PnPushforward {
        n,
        p,
        e,
        l,
        twists: current.into_iter().map(|(t, m)| (t, m.into())).collect(),
        total: total.into(),
        expected_total: expected_total.into(),
        generates,
        expected_generates: q > n,
    })
}
