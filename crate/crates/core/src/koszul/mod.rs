//! Koszul complex on the variables over `R = S/I` for monomial `I`, its
//! graded homology, and the codepth/depth read off from it.

mod resolution;
mod strand;

pub use resolution::{betti_power_formula, brute_betti, hilbert_identity, BettiTable, GradedMap, Resolution};
pub use strand::{strand_check, StrandDegree, StrandReport};

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::ideal::{MonomialIdeal, QuotientStaircase};
use crate::limits::Limits;
use crate::linalg::Matrix;
use crate::par;
use crate::poly::Monomial;

/// Subsets of `{0..n}` of size `i`, as bitmasks in increasing order.
fn subsets(n: usize, i: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == i).collect()
}

/// `K(x_0, ..., x_n; R)`, truncated to internal degrees `<= bound`.
#[derive(Debug, Clone)]
pub struct KoszulComplex {
    ideal: MonomialIdeal,
    staircase: QuotientStaircase,
    bound: u64,
}

impl KoszulComplex {
    pub fn new(ideal: &MonomialIdeal, bound: u64, limits: &Limits) -> Result<Self> {
        if ideal.nvars() > 20 {
            return Err(Error::guard("koszul exterior rank", ideal.nvars() as u128, 20));
        }
        let staircase = ideal.staircase(bound, limits)?;
        Ok(KoszulComplex { ideal: ideal.clone(), staircase, bound })
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn prime(&self) -> Prime {
        self.ideal.ring().prime()
    }

    /// Basis of `(K_i)_d`: pairs `(T, m)` with `|T| = i` and `m` a standard
    /// monomial of degree `d - i`.
    pub fn basis(&self, i: usize, d: u64) -> Vec<(u32, Monomial)> {
        if i > self.nvars() || (i as u64) > d {
            return Vec::new();
        }
        let ms = self.staircase.degree(d - i as u64);
        subsets(self.nvars(), i)
            .into_iter()
            .flat_map(|t| ms.iter().map(move |m| (t, m.clone())))
            .collect()
    }

    /// Matrix of `(K_i)_d -> (K_{i-1})_d`, `1 <= i <= n+1`.
    pub fn differential(&self, i: usize, d: u64) -> Matrix {
        let source = self.basis(i, d);
        let target = self.basis(i - 1, d);
        let index: HashMap<&(u32, Monomial), usize> = target.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let p = self.prime();
        let n = self.nvars();
        let mut mat = Matrix::zeros(target.len(), source.len());
        for (col, (t, m)) in source.iter().enumerate() {
            let mut k = 0;
            for v in 0..n {
                if t & (1 << v) == 0 {
                    continue;
                }
                let xm = m.mul(&Monomial::var(n, v)).expect("degree within staircase bound");
                if !self.ideal.contains(&xm) {
                    let row = index[&(t & !(1 << v), xm)];
                    let sign = if k % 2 == 0 { 1 } else { p.neg(1) };
                    mat.set(row, col, sign);
                }
                k += 1;
            }
        }
        mat
    }

    /// `d_{i-1} d_i = 0` in every degree through the bound.
    pub fn check_d_squared(&self) -> bool {
        let p = self.prime();
        let degrees: Vec<u64> = (0..=self.bound).collect();
        par::map(&degrees, |&d| {
            (2..=self.nvars()).all(|i| self.differential(i - 1, d).mul(&self.differential(i, d), p).is_zero())
        })
        .into_iter()
        .all(|ok| ok)
    }

    /// Ranks of `H_i(K^R)_d` for `0 <= i <= n+1`, `0 <= d <= bound`.
    pub fn homology(&self) -> GradedHomologyTable {
        let n = self.nvars();
        let p = self.prime();
        let degrees: Vec<u64> = (0..=self.bound).collect();
        let columns = par::map(&degrees, |&d| {
            let dims: Vec<usize> = (0..=n).map(|i| self.basis(i, d).len()).collect();
            // ranks[i] = rank of d_i, with d_0 = d_{n+2} = 0
            let mut ranks = vec![0usize; n + 2];
            for i in 1..=n {
                ranks[i] = self.differential(i, d).rank(p);
            }
            (0..=n).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect::<Vec<_>>()
        });
        let ranks = (0..=n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        GradedHomologyTable { bound: self.bound, ranks }
    }
}

/// `rank H_i(K^R)_d`, stored as `ranks[i][d]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedHomologyTable {
    pub bound: u64,
    pub ranks: Vec<Vec<usize>>,
}

impl GradedHomologyTable {
    pub fn get(&self, i: usize, d: u64) -> usize {
        self.ranks.get(i).and_then(|r| r.get(d as usize)).copied().unwrap_or(0)
    }

    /// Total rank of `H_i` over the computed degrees.
    pub fn total(&self, i: usize) -> usize {
        self.ranks.get(i).map_or(0, |r| r.iter().sum())
    }

    /// Largest `i` with `H_i` nonzero somewhere.
    pub fn top_nonzero(&self) -> Option<usize> {
        (0..self.ranks.len()).rev().find(|&i| self.total(i) > 0)
    }

    /// Whether all homology vanishes in internal degree `d`.
    pub fn degree_vanishes(&self, d: u64) -> bool {
        (0..self.ranks.len()).all(|i| self.get(i, d) == 0)
    }
}

pub fn koszul_homology(ideal: &MonomialIdeal, bound: u64, limits: &Limits) -> Result<GradedHomologyTable> {
    Ok(KoszulComplex::new(ideal, bound, limits)?.homology())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodepthReport {
    pub codepth: usize,
    pub depth: usize,
    pub nvars: usize,
    /// Truncation degree used.
    pub bound: u64,
    /// Degree of the lcm of the generators; homology vanishes above it.
    pub lcm_degree: u64,
    pub table: GradedHomologyTable,
}

/// Truncation degree: `deg lcm(I) + max(#vars, 2)`, unless overridden.
pub fn default_bound(ideal: &MonomialIdeal) -> u64 {
    ideal.lcm_degree() + ideal.nvars().max(2) as u64
}

/// Codepth of `S/I` as the top nonvanishing Koszul homology. The two top
/// computed degrees must vanish, else the bound is reported as insufficient.
pub fn codepth(ideal: &MonomialIdeal, limits: &Limits) -> Result<CodepthReport> {
    if ideal.is_unit() {
        return Err(Error::invalid("the quotient by the unit ideal is the zero ring"));
    }
    if !ideal.in_max_squared() {
        return Err(Error::NotInMaxSquared);
    }
    let bound = limits.degree_bound.map_or_else(|| default_bound(ideal), u64::from);
    if bound < 1 {
        return Err(Error::invalid("degree bound must be at least 1"));
    }
    let table = koszul_homology(ideal, bound, limits)?;
    if !(table.degree_vanishes(bound) && table.degree_vanishes(bound - 1)) {
        return Err(Error::Verification(format!(
            "degree bound {bound} insufficient: homology in the top two degrees"
        )));
    }
    let codepth = table.top_nonzero().unwrap_or(0);
    Ok(CodepthReport {
        codepth,
        depth: ideal.nvars() - codepth,
        nvars: ideal.nvars(),
        bound,
        lcm_degree: ideal.lcm_degree(),
        table,
    })
}

pub fn depth_from_codepth(ideal: &MonomialIdeal, limits: &Limits) -> Result<usize> {
    Ok(codepth(ideal, limits)?.depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn ideal(p: u32, vars: &[&str], gens: &str) -> MonomialIdeal {
        MonomialIdeal::parse(&Ring::with_names(p, vars).unwrap(), gens).unwrap()
    }

    fn cp(i: &MonomialIdeal) -> usize {
        codepth(i, &Limits::default()).unwrap().codepth
    }

    #[test]
    fn polynomial_ring_resolves_the_residue_field() {
        let i = ideal(3, &["x", "y", "z"], "");
        let t = koszul_homology(&i, 5, &Limits::default()).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.total(0), 1);
        assert!((1..=3).all(|k| t.total(k) == 0));
        assert_eq!(cp(&i), 0);
        assert_eq!(depth_from_codepth(&i, &Limits::default()).unwrap(), 3);
    }

    #[test]
    fn small_codepths() {
        assert_eq!(cp(&ideal(2, &["x", "y"], "x*y")), 1);
        assert_eq!(cp(&ideal(2, &["x", "y"], "x^2, y^3")), 2);
        let m2 = ideal(2, &["x", "y"], "x^2, x*y, y^2");
        let t = koszul_homology(&m2, 5, &Limits::default()).unwrap();
        assert!(t.total(2) > 0);
        assert_eq!(depth_from_codepth(&m2, &Limits::default()).unwrap(), 0);
        assert_eq!(depth_from_codepth(&ideal(2, &["x", "y"], "x*y"), &Limits::default()).unwrap(), 1);
        assert_eq!(cp(&ideal(5, &["x"], "x^3")), 1);
    }

    #[test]
    fn hypersurface_homology_in_low_degrees() {
        // H_1 of k[x,y]/(xy) sits in degree 2 (the relation), H_2 vanishes
        let t = koszul_homology(&ideal(2, &["x", "y"], "x*y"), 6, &Limits::default()).unwrap();
        assert_eq!(t.ranks[1], vec![0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(t.total(2), 0);
    }

    #[test]
    fn differential_squares_to_zero() {
        let l = Limits::default();
        for g in ["x^2, x*y*z", "x^3, y^2, x*z", "", "x*y*z"] {
            let c = KoszulComplex::new(&ideal(3, &["x", "y", "z"], g), 6, &l).unwrap();
            assert!(c.check_d_squared());
        }
    }

    #[test]
    fn rejects_linear_generators() {
        let i = ideal(2, &["x", "y"], "x, y^2");
        assert!(matches!(codepth(&i, &Limits::default()), Err(Error::NotInMaxSquared)));
    }

    #[test]
    fn insufficient_override_is_flagged() {
        let i = ideal(2, &["x", "y"], "x^3, y^3");
        let l = Limits { degree_bound: Some(4), ..Limits::default() };
        assert!(matches!(codepth(&i, &l), Err(Error::Verification(_))));
    }
}
