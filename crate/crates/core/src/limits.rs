use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource guards shared by the enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest number of monomials any single enumeration may produce.
    pub max_monomials: u64,
    /// Largest `q = p^e` accepted by the witness searches.
    pub max_q: u64,
    /// Optional override of the truncation degree used by Koszul homology.
    pub degree_bound: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_monomials: 10_000_000, max_q: 1 << 16, degree_bound: None }
    }
}

impl Limits {
    pub fn check_monomials(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_monomials as u128 {
            return Err(Error::guard(what, needed, self.max_monomials as u128));
        }
        Ok(())
    }

    pub fn check_q(&self, q: u64) -> Result<()> {
        if q > self.max_q {
            return Err(Error::guard("q = p^e", q as u128, self.max_q as u128));
        }
        Ok(())
    }
}
