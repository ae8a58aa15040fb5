//! Linear resolutions of powers of the maximal ideal: the closed-form Betti
//! numbers and a degreewise minimal free resolution used as their oracle.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::linalg::{EchelonSpan, Matrix};
use crate::par;
use crate::poly::{monomials_of_degree, Monomial, Polynomial, Ring};

/// `b_i(j)` for `m^j` in `d` variables: `b_0 = 1`, and for `1 <= i <= d`
/// `(j+d-1)! / ((j-1)! (d-i)! (i-1)! (j+i-1))`, here as
/// `C(j+d-1, d-i) * C(j+i-2, i-1)`.
pub fn betti_power_formula(d: u64, j: u64, i: u64) -> BigUint {
    assert!(d >= 1 && j >= 1, "betti_power_formula needs d >= 1 and j >= 1");
    match i {
        0 => BigUint::from(1u32),
        i if i > d => BigUint::from(0u32),
        i => binomial(j + d - 1, d - i) * binomial(j + i - 2, i - 1),
    }
}

/// Graded Betti numbers: `rows[i]` maps a shift `a` to the rank of
/// `S(-a)` in homological degree `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub rows: Vec<BTreeMap<u64, u64>>,
}

impl BettiTable {
    pub fn get(&self, i: usize, shift: u64) -> u64 {
        self.rows.get(i).and_then(|r| r.get(&shift)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.rows.get(i).map_or(0, |r| r.values().sum())
    }

    pub fn length(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }
}

/// A graded map `⊕ S(-b_g) -> ⊕ S(-a_k)`; `columns[g][k]` is the `k`-th
/// component of the image of the `g`-th basis vector.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub ring: Arc<Ring>,
    pub source: Vec<u64>,
    pub target: Vec<u64>,
    pub columns: Vec<Vec<Polynomial>>,
}

/// Basis of `(⊕ S(-a_k))_t`: pairs (summand, monomial of degree `t - a_k`).
fn free_basis(nvars: usize, shifts: &[u64], t: u64, limits: &Limits) -> Result<Vec<(usize, Monomial)>> {
    let mut out = Vec::new();
    for (k, &a) in shifts.iter().enumerate() {
        if t >= a {
            for m in monomials_of_degree(nvars, t - a, None, limits)? {
                out.push((k, m));
            }
        }
    }
    Ok(out)
}

fn index_of(basis: &[(usize, Monomial)]) -> HashMap<&(usize, Monomial), usize> {
    basis.iter().enumerate().map(|(i, b)| (b, i)).collect()
}

impl GradedMap {
    /// The matrix of the map in internal degree `t`, in the bases of
    /// [`free_basis`].
    pub fn matrix(&self, t: u64, limits: &Limits) -> Result<Matrix> {
        let n = self.ring.nvars();
        let p = self.ring.prime();
        let src = free_basis(n, &self.source, t, limits)?;
        let tgt = free_basis(n, &self.target, t, limits)?;
        let index = index_of(&tgt);
        let mut mat = Matrix::zeros(tgt.len(), src.len());
        for (col, (g, m)) in src.iter().enumerate() {
            for (k, comp) in self.columns[*g].iter().enumerate() {
                for (mono, c) in comp.terms() {
                    let row = index[&(k, mono.mul(m)?)];
                    mat.set(row, col, p.add(mat.get(row, col), c));
                }
            }
        }
        Ok(mat)
    }
}

/// A minimal graded free resolution of `S/I`, complete through internal
/// degree `bound`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub bound: u64,
    pub betti: BettiTable,
    /// `maps[i-1]`: `F_i -> F_{i-1}`.
    pub maps: Vec<GradedMap>,
}

/// Degreewise minimal free resolution of `S/I` through degree `bound`:
/// at each step the new generators in degree `t` are a complement of
/// `m·N_{t-1}` in `N_t`, and the next `N` is the kernel of the map they
/// define.
pub fn brute_betti(ideal: &MonomialIdeal, bound: u64, limits: &Limits) -> Result<Resolution> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    let p = ring.prime();
    let degrees: Vec<u64> = (0..=bound).collect();

    let mut target: Vec<u64> = vec![0];
    // kernel[t]: basis of N_t in the coordinates of free_basis(target, t)
    let mut kernel: Vec<Vec<Vec<u32>>> = par::try_map(&degrees, |&t| {
        let basis = free_basis(n, &target, t, limits)?;
        Ok::<_, Error>(
            basis
                .iter()
                .enumerate()
                .filter(|(_, (_, m))| ideal.contains(m))
                .map(|(i, _)| {
                    let mut v = vec![0u32; basis.len()];
                    v[i] = 1;
                    v
                })
                .collect(),
        )
    })?;
    let mut betti = BettiTable { rows: vec![BTreeMap::from([(0, 1)])] };
    let mut maps = Vec::new();

    loop {
        let bases = par::try_map(&degrees, |&t| free_basis(n, &target, t, limits))?;
        // minimal generators per degree
        let fresh = par::map(&degrees, |&t| {
            let t = t as usize;
            let mut span = EchelonSpan::new(bases[t].len(), p);
            if t > 0 {
                let index = index_of(&bases[t]);
                for w in &kernel[t - 1] {
                    for v in 0..n {
                        let mut u = vec![0u32; bases[t].len()];
                        for (c, (k, m)) in w.iter().zip(&bases[t - 1]) {
                            if *c != 0 {
                                let xm = m.mul(&Monomial::var(n, v)).expect("bounded degree");
                                u[index[&(*k, xm)]] = *c;
                            }
                        }
                        span.insert(&u);
                    }
                }
            }
            kernel[t].iter().filter(|v| span.insert(v)).cloned().collect::<Vec<_>>()
        });
        let mut source = Vec::new();
        let mut columns = Vec::new();
        for (t, gens) in fresh.iter().enumerate() {
            for v in gens {
                source.push(t as u64);
                let mut comps = vec![Polynomial::zero(&ring); target.len()];
                for (c, (k, m)) in v.iter().zip(&bases[t]) {
                    if *c != 0 {
                        comps[*k] = comps[*k].add(&Polynomial::term(&ring, m.clone(), *c as u64))?;
                    }
                }
                columns.push(comps);
            }
        }
        if source.is_empty() {
            break;
        }
        if betti.rows.len() > n + 1 {
            return Err(Error::Verification("resolution longer than the number of variables".into()));
        }
        let mut row = BTreeMap::new();
        for &a in &source {
            *row.entry(a).or_insert(0) += 1;
        }
        betti.rows.push(row);
        let map = GradedMap { ring: ring.clone(), source: source.clone(), target: target.clone(), columns };
        kernel = par::try_map(&degrees, |&t| Ok::<_, Error>(map.matrix(t, limits)?.nullspace(p)))?;
        maps.push(map);
        target = source;
    }
    Ok(Resolution { bound, betti, maps })
}

/// `Σ_i (-1)^i Σ_a b_i(a) dim S_{t-a}` for each `t <= upto`, compared
/// with the Hilbert function of `S/I`. Returns the first failing degree.
pub fn hilbert_identity(ideal: &MonomialIdeal, betti: &BettiTable, upto: u64, limits: &Limits) -> Result<Option<u64>> {
    let n = ideal.nvars() as u64;
    for t in 0..=upto {
        let mut sum: i128 = 0;
        for (i, row) in betti.rows.iter().enumerate() {
            for (&a, &b) in row {
                if t >= a {
                    let dim: u128 = binomial(t - a + n - 1, n - 1).try_into().unwrap_or(u128::MAX);
                    let term = b as i128 * dim as i128;
                    sum += if i % 2 == 0 { term } else { -term };
                }
            }
        }
        if sum != ideal.hilbert_function(t, limits)? as i128 {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
    }

    #[test]
    fn formula_matches_factorial_form() {
        for d in 1..=5u64 {
            for j in 1..=6u64 {
                for i in 1..=d {
                    let num = factorial(j + d - 1);
                    let den = factorial(j - 1) * factorial(d - i) * factorial(i - 1) * (j + i - 1);
                    assert_eq!(&num % &den, BigUint::from(0u32));
                    assert_eq!(betti_power_formula(d, j, i), num / den);
                }
                assert_eq!(betti_power_formula(d, j, d + 1), BigUint::from(0u32));
            }
        }
        assert_eq!(betti_power_formula(2, 2, 1), BigUint::from(3u32));
        assert_eq!(betti_power_formula(2, 2, 2), BigUint::from(2u32));
        assert_eq!(betti_power_formula(1, 7, 1), BigUint::from(1u32));
    }

    #[test]
    fn resolution_of_small_ideals() {
        let l = Limits::default();
        let r = Ring::with_names(2, &["x", "y"]).unwrap();
        let res = brute_betti(&MonomialIdeal::parse(&r, "x").unwrap(), 4, &l).unwrap();
        assert_eq!(res.betti.length(), 1);
        assert_eq!(res.betti.get(1, 1), 1);

        let m2 = MonomialIdeal::parse(&r, "x^2, x*y, y^2").unwrap();
        let res = brute_betti(&m2, 5, &l).unwrap();
        assert_eq!(res.betti.get(1, 2), 3);
        assert_eq!(res.betti.get(2, 3), 2);
        assert_eq!(res.betti.length(), 2);
        assert_eq!(hilbert_identity(&m2, &res.betti, 12, &l).unwrap(), None);
    }

    #[test]
    fn consecutive_maps_compose_to_zero() {
        let l = Limits::default();
        let r = Ring::with_names(3, &["x", "y", "z"]).unwrap();
        let i = MonomialIdeal::parse(&r, "x^2, y*z, x*y^2").unwrap();
        let res = brute_betti(&i, 7, &l).unwrap();
        let p = r.prime();
        for w in res.maps.windows(2) {
            for t in 0..=7 {
                assert!(w[0].matrix(t, &l).unwrap().mul(&w[1].matrix(t, &l).unwrap(), p).is_zero());
            }
        }
        assert_eq!(hilbert_identity(&i, &res.betti, 7, &l).unwrap(), None);
    }
}
