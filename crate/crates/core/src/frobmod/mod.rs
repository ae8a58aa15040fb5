//! `F^e_*R` as an explicit `(1/q)Z`-graded module: cyclic decompositions
//! for artinian monomial quotients, pushforwards of line bundles on
//! projective space, conic decompositions of Veronese subrings of `k[x,y]`,
//! and the Frobenius filtration of a monomial complete intersection.

mod filtration;
mod projective;
mod veronese;

pub use filtration::{ci_filtration_check, FiltrationReport, Subquotient};
pub use projective::{alpha, alpha_enumerate, alpha_table, pn_pushforward, PnPushforward};
pub use veronese::{strand_module, veronese_decompose, ClassSolve, ConicDecomposition, StrandModule};

use serde::{Deserialize, Serialize};
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::{exponent_of, MonomialIdeal};
use crate::limits::Limits;
use crate::par;
use crate::poly::Monomial;

/// An exact fractional degree `num / den`; `den` is kept as given (a power
/// of `p`), not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FracDegree {
    pub num: i64,
    pub den: u64,
}

impl FracDegree {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        FracDegree { num, den }
    }

    /// Equality as rational numbers.
    pub fn same_value(&self, other: &FracDegree) -> bool {
        self.num as i128 * other.den as i128 == other.num as i128 * self.den as i128
    }

    pub fn add(&self, other: &FracDegree) -> FracDegree {
        if self.den == other.den {
            FracDegree::new(self.num + other.num, self.den)
        } else {
            FracDegree::new(
                self.num * other.den as i64 + other.num * self.den as i64,
                self.den * other.den,
            )
        }
    }
}

impl fmt::Display for FracDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `F^e_*R` for an artinian monomial quotient `R = S/I`: the standard
/// monomials of `R`, with `r ∘ s = r^q s` and `deg s = deg_S(s) / q`.
#[derive(Debug, Clone)]
pub struct FrobeniusModule {
    ideal: MonomialIdeal,
    e: u32,
    q: u64,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Build `F^e_*R`. A non-artinian ideal needs a degree bound `b`, and is
/// then replaced by `I + m^(b+1)`.
pub fn pushforward_module(ideal: &MonomialIdeal, e: u32, bound: Option<u64>, limits: &Limits) -> Result<FrobeniusModule> {
    let ring = ideal.ring();
    if e == 0 {
        return Err(Error::invalid("the Frobenius exponent e must be positive"));
    }
    let q = ring.prime().power(e)?;
    limits.check_q(q)?;
    let ideal = match (ideal.is_artinian(), bound) {
        (true, _) => ideal.clone(),
        (false, Some(b)) => ideal.sum(&MonomialIdeal::maximal_power(ring, b + 1, limits)?)?,
        (false, None) => {
            return Err(Error::NotArtinian(format!("{ideal} needs a degree bound to be truncated")));
        }
    };
    if ideal.is_unit() {
        return Err(Error::invalid("the quotient by the unit ideal is the zero ring"));
    }
    let top = ideal.loewy_length(limits)?;
    let basis = ideal.staircase(top, limits)?.basis();
    let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(FrobeniusModule { ideal, e, q, basis, index })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicPiece {
    pub generator: String,
    pub generator_degree: FracDegree,
    pub basis: Vec<String>,
    /// Generators of `ann(g) = {r : r^q g ∈ I}`.
    pub annihilator: Vec<String>,
    /// Hilbert function of `S/ann(g)`.
    pub hilbert: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub annihilator: Vec<String>,
    pub hilbert: Vec<usize>,
    pub multiplicity: usize,
    pub generator_degrees: Vec<FracDegree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicDecomposition {
    pub e: u32,
    pub q: u64,
    pub dimension: usize,
    pub pieces: Vec<CyclicPiece>,
    /// Pieces have pairwise disjoint bases covering the module.
    pub direct: bool,
    pub classes: Vec<IsoClass>,
}

impl FrobeniusModule {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> FracDegree {
        FracDegree::new(self.basis[i].degree() as i64, self.q)
    }

    /// `r ∘ basis[i]`, as a basis index, or `None` when it is zero in `R`.
    pub fn act(&self, r: &Monomial, i: usize) -> Result<Option<usize>> {
        let m = r.pow(self.q)?.mul(&self.basis[i])?;
        Ok(self.index.get(&m).copied())
    }

    /// Action tables of the variables: `table[v][i] = x_v ∘ basis[i]`.
    pub fn action_tables(&self) -> Result<Vec<Vec<Option<usize>>>> {
        let n = self.ideal.nvars();
        let idx: Vec<usize> = (0..self.basis.len()).collect();
        (0..n)
            .map(|v| {
                let x = Monomial::var(n, v);
                par::try_map(&idx, |&i| self.act(&x, i))
            })
            .collect()
    }

    /// Greedy decomposition into cyclic pieces, taking at each step the
    /// first uncovered basis element in listing order.
    pub fn cyclic_decompose(&self) -> Result<CyclicDecomposition> {
        let ring = self.ideal.ring();
        let n = self.ideal.nvars();
        let tables = self.action_tables()?;
        let mut covered = vec![false; self.basis.len()];
        let mut direct = true;
        let mut pieces = Vec::new();
        let mut shapes: Vec<(Vec<usize>, FracDegree)> = Vec::new();
        while let Some(g) = covered.iter().position(|c| !c) {
            // BFS over multipliers r, tracking r^q g
            let mut seen: HashMap<usize, Monomial> = HashMap::from([(g, Monomial::one(n))]);
            let mut queue = VecDeque::from([g]);
            let mut alive: Vec<Monomial> = vec![Monomial::one(n)];
            while let Some(i) = queue.pop_front() {
                for v in 0..n {
                    if let Some(k) = tables[v][i] {
                        let r = seen[&i].mul(&Monomial::var(n, v))?;
                        if let Entry::Vacant(slot) = seen.entry(k) {
                            alive.push(r.clone());
                            slot.insert(r);
                            queue.push_back(k);
                        }
                    }
                }
            }
            let mut members: Vec<usize> = seen.keys().copied().collect();
            members.sort_unstable();
            for &k in &members {
                if covered[k] {
                    direct = false;
                }
                covered[k] = true;
            }
            // annihilator: minimal monomials outside the alive order ideal
            let alive_set: HashSet<Monomial> = alive.iter().cloned().collect();
            let mut cands = Vec::new();
            for a in &alive {
                for v in 0..n {
                    let m = a.mul(&Monomial::var(n, v))?;
                    if !alive_set.contains(&m) {
                        cands.push(m);
                    }
                }
            }
            let ann = MonomialIdeal::new(ring, cands);
            let top = alive.iter().map(Monomial::degree).max().unwrap_or(0) as usize;
            let mut hilbert = vec![0usize; top + 1];
            for a in &alive {
                hilbert[a.degree() as usize] += 1;
            }
            let degree = self.degree(g);
            pieces.push(CyclicPiece {
                generator: self.basis[g].to_string_in(ring),
                generator_degree: degree,
                basis: members.iter().map(|&k| self.basis[k].to_string_in(ring)).collect(),
                annihilator: ann.gens().iter().map(|m| m.to_string_in(ring)).collect(),
                hilbert: hilbert.clone(),
            });
            shapes.push((hilbert, degree));
        }
        let dimension_sum: usize = pieces.iter().map(|p| p.basis.len()).sum();
        direct &= dimension_sum == self.basis.len();
        let mut classes: Vec<IsoClass> = Vec::new();
        for (piece, (hilbert, degree)) in pieces.iter().zip(&shapes) {
            match classes
                .iter_mut()
                .find(|c| c.annihilator == piece.annihilator && &c.hilbert == hilbert)
            {
                Some(c) => {
                    c.multiplicity += 1;
                    c.generator_degrees.push(*degree);
                }
                None => classes.push(IsoClass {
                    annihilator: piece.annihilator.clone(),
                    hilbert: hilbert.clone(),
                    multiplicity: 1,
                    generator_degrees: vec![*degree],
                }),
            }
        }
        Ok(CyclicDecomposition { e: self.e, q: self.q, dimension: self.basis.len(), pieces, direct, classes })
    }
}

/// `F^e_*R` for artinian monomial `R`, decomposed.
pub fn cyclic_decompose(ideal: &MonomialIdeal, e: u32, limits: &Limits) -> Result<CyclicDecomposition> {
    pushforward_module(ideal, e, None, limits)?.cyclic_decompose()
}

/// `p^e` from a Frobenius exponent, with the `q` guard applied.
pub(crate) fn checked_q(p: u32, e: u32, limits: &Limits) -> Result<u64> {
    let prime = crate::field::Prime::new(p)?;
    if e == 0 {
        return Err(Error::invalid("the Frobenius exponent e must be positive"));
    }
    let q = prime.power(e)?;
    limits.check_q(q)?;
    exponent_of(prime, q)?;
    Ok(q)
}

/// Multiplicities of the isomorphism classes, keyed for display.
pub fn class_summary(d: &CyclicDecomposition) -> BTreeMap<String, usize> {
    d.classes
        .iter()
        .map(|c| (format!("S/({})", c.annihilator.join(", ")), c.multiplicity))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn mono(p: u32, vars: &[&str], g: &str) -> MonomialIdeal {
        MonomialIdeal::parse(&Ring::with_names(p, vars).unwrap(), g).unwrap()
    }

    #[test]
    fn truncated_line() {
        let i = mono(2, &["x"], "x^2");
        let m = pushforward_module(&i, 1, None, &Limits::default()).unwrap();
        assert_eq!(m.dimension(), 2);
        let x = Monomial::var(1, 0);
        assert_eq!(m.act(&x, 0).unwrap(), None);
        assert_eq!(m.act(&x, 1).unwrap(), None);
    }

    #[test]
    fn twelve_dimensional_example() {
        let i = mono(2, &["x", "y"], "x^4, x^2*y^2, y^4");
        let m = pushforward_module(&i, 1, None, &Limits::default()).unwrap();
        assert_eq!(m.dimension(), 12);
        let x = Monomial::new(vec![1, 0]).unwrap();
        let xi = m.basis().iter().position(|b| b == &x).unwrap();
        let x3 = Monomial::new(vec![3, 0]).unwrap();
        assert_eq!(m.act(&x, xi).unwrap().map(|k| &m.basis()[k]), Some(&x3));

        let d = m.cyclic_decompose().unwrap();
        assert!(d.direct);
        let gens: Vec<&str> = d.pieces.iter().map(|p| p.generator.as_str()).collect();
        assert_eq!(gens, ["1", "x", "y", "x*y"]);
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].multiplicity, 4);
        assert_eq!(d.classes[0].annihilator, ["x^2", "x*y", "y^2"]);
        assert_eq!(d.classes[0].hilbert, [1, 2]);
        assert_eq!(d.pieces[1].basis, ["x", "x^3", "x*y^2"]);
    }

    #[test]
    fn killed_action_gives_one_dimensional_pieces() {
        let i = mono(2, &["x", "y"], "x^2, x*y, y^2");
        let d = cyclic_decompose(&i, 1, &Limits::default()).unwrap();
        assert!(d.direct);
        assert_eq!(d.pieces.len(), 3);
        assert!(d.pieces.iter().all(|p| p.basis.len() == 1));
    }

    #[test]
    fn truncation_needs_a_bound() {
        let i = mono(3, &["x", "y"], "x*y");
        assert!(pushforward_module(&i, 1, None, &Limits::default()).is_err());
        let m = pushforward_module(&i, 1, Some(3), &Limits::default()).unwrap();
        assert_eq!(m.dimension(), 7);
    }

    #[test]
    fn fractional_degrees() {
        assert!(FracDegree::new(2, 4).same_value(&FracDegree::new(1, 2)));
        assert_eq!(FracDegree::new(1, 3).add(&FracDegree::new(1, 3)), FracDegree::new(2, 3));
        assert_eq!(serde_json::to_string(&FracDegree::new(3, 2)).unwrap(), r#"{"num":3,"den":2}"#);
    }
}
