//! Exact counting helpers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `C(n, k)` as an exact big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of monomials of total degree `d` in `nvars` variables, optionally
/// with every exponent at most `cap`. Inclusion-exclusion over the variables
/// that exceed the cap.
pub fn count_monomials(nvars: usize, d: u64, cap: Option<u64>) -> BigUint {
    if nvars == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let n = nvars as u64;
    let Some(cap) = cap else {
        return binomial(d + n - 1, n - 1);
    };
    let step = cap + 1;
    let mut total = BigInt::zero();
    for k in 0..=n {
        let Some(rest) = k.checked_mul(step).and_then(|s| d.checked_sub(s)) else {
            break;
        };
        let term = BigInt::from(binomial(n, k)) * BigInt::from(binomial(rest + n - 1, n - 1));
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_biguint().unwrap_or_default()
}
