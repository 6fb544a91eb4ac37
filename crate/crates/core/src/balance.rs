//! The balance parameter `p` of a p-separator, kept as an exact rational.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BalanceError {
    #[error("balance {0} is outside [2/3, 1)")]
    OutOfRange(String),
    #[error("cannot parse balance {0:?}; expected <num>/<den>")]
    Parse(String),
}

/// A rational `p` with `2/3 <= p < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Balance(Ratio<u64>);

impl Balance {
    pub fn new(num: u64, den: u64) -> Result<Self, BalanceError> {
        if den == 0 {
            return Err(BalanceError::Parse(format!("{num}/{den}")));
        }
        let r = Ratio::new(num, den);
        // 2/3 <= num/den < 1
        if 3 * (*r.numer() as u128) < 2 * (*r.denom() as u128) || r.numer() >= r.denom() {
            return Err(BalanceError::OutOfRange(r.to_string()));
        }
        Ok(Balance(r))
    }

    pub fn two_thirds() -> Self {
        Balance(Ratio::new(2, 3))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    /// `part <= p * whole`.
    #[inline]
    pub fn caps(&self, part: usize, whole: usize) -> bool {
        part as u128 * self.denom() as u128 <= whole as u128 * self.numer() as u128
    }

    /// `(1 - p) * whole <= part`.
    #[inline]
    pub fn floor_met(&self, part: usize, whole: usize) -> bool {
        (self.denom() - self.numer()) as u128 * whole as u128 <= part as u128 * self.denom() as u128
    }
}

impl Default for Balance {
    fn default() -> Self {
        Self::two_thirds()
    }
}

impl fmt::Display for Balance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Balance {
    type Err = BalanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| BalanceError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => Balance::new(parse(n)?, parse(d)?),
            None => Err(BalanceError::Parse(s.to_string())),
        }
    }
}
