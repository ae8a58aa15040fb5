//! Strands of the linear resolution of `m^j` in `k[x,y]` along the
//! `ℓ`-th Veronese subring.
//!
//! Restricting `0 -> S(-j-1)^{b_2} -> S(-j)^{b_1} -> m^j -> 0` to the
//! internal degrees `ℓk + j` gives, in Veronese degree `k`,
//! `0 -> (G_{ℓ-1})_{k-1}^{b_2} -> R_k^{b_1} -> (G_j)_k -> 0`.

use serde::{Deserialize, Serialize};

use super::resolution::brute_betti;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::poly::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandDegree {
    /// Veronese degree `k`; the internal `S`-degree is `ℓk + j`.
    pub k: u64,
    pub dims: [usize; 3],
    pub rank_alpha: usize,
    pub rank_beta: usize,
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandReport {
    pub ell: u64,
    pub j: u64,
    pub b1: u64,
    pub b2: u64,
    /// Veronese degrees checked: `0..=kmax`.
    pub kmax: u64,
    pub degrees: Vec<StrandDegree>,
    pub exact: bool,
}

/// Verify exactness of the strand sequence for `G_j`, `1 <= j <= ℓ-1`,
/// in Veronese degrees `0..=kmax`, over `F_p`.
pub fn strand_check(ell: u64, j: u64, kmax: u64, p: u32, limits: &Limits) -> Result<StrandReport> {
    if ell < 2 || j == 0 || j >= ell {
        return Err(Error::invalid(format!("strand class j = {j} must lie in 1..{ell}")));
    }
    let ring = Ring::with_names(p, &["x", "y"])?;
    let mj = MonomialIdeal::maximal_power(&ring, j, limits)?;
    let top = ell * kmax + j;
    let res = brute_betti(&mj, top, limits)?;
    if res.maps.len() != 2 {
        return Err(Error::Verification(format!("m^{j} resolution has length {}", res.maps.len())));
    }
    let (beta, alpha) = (&res.maps[0], &res.maps[1]);
    if beta.source.iter().any(|&a| a != j) || alpha.source.iter().any(|&a| a != j + 1) {
        return Err(Error::Verification(format!("resolution of m^{j} is not linear")));
    }
    let prime = ring.prime();
    let mut degrees = Vec::new();
    for k in 0..=kmax {
        let t = ell * k + j;
        // beta lands in S; its image in degree t is (m^j)_t = S_t since t >= j
        let b = beta.matrix(t, limits)?;
        let a = alpha.matrix(t, limits)?;
        let dims = [a.cols(), b.cols(), b.rows()];
        let rank_alpha = a.rank(prime);
        let rank_beta = b.rank(prime);
        let composite_zero = b.mul(&a, prime).is_zero();
        let exact = composite_zero
            && rank_alpha == dims[0]
            && rank_beta == dims[2]
            && rank_alpha == dims[1] - rank_beta;
        degrees.push(StrandDegree { k, dims, rank_alpha, rank_beta, composite_zero, exact });
    }
    let exact = degrees.iter().all(|d| d.exact);
    Ok(StrandReport {
        ell,
        j,
        b1: res.betti.total(1),
        b2: res.betti.total(2),
        kmax,
        degrees,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_strands_are_exact() {
        let l = Limits::default();
        for (ell, j) in [(2, 1), (3, 1), (3, 2)] {
            let r = strand_check(ell, j, 4, 2, &l).unwrap();
            assert!(r.exact, "ell={ell} j={j}");
            assert_eq!(r.b1, j + 1);
            assert_eq!(r.b2, j);
            for d in &r.degrees {
                // G_{ℓ-1} in degree k-1, R in degree k, G_j in degree k
                let g = |c: u64, k: i64| if k < 0 { 0 } else { (ell as i64 * k + c as i64 + 1) as usize };
                let k = d.k as i64;
                assert_eq!(d.dims, [r.b2 as usize * g(ell - 1, k - 1), r.b1 as usize * g(0, k), g(j, k)]);
                assert_eq!(d.dims[0] + d.dims[2], d.dims[1]);
            }
        }
        assert!(strand_check(2, 0, 3, 2, &l).is_err());
    }
}
