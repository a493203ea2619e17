use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncated expansion at `n → ∞`: exact for every exponent `≥ floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    floor: i64,
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentSeries {
    pub fn new(floor: i64) -> Self {
        LaurentSeries { floor, terms: BTreeMap::new() }
    }

    /// A series with no truncation, for values known exactly.
    pub fn exact() -> Self {
        LaurentSeries::new(i64::MIN)
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == i64::MIN
    }

    /// Adds `c · n^e`; exponents below the floor are dropped.
    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if e < self.floor || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Non-zero terms, highest exponent first.
    pub fn terms(&self) -> Vec<(i64, BigRational)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c.clone())).collect()
    }

    pub fn leading(&self) -> Option<(i64, BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    /// Raises the floor, discarding terms below it.
    pub fn truncate(&self, floor: i64) -> LaurentSeries {
        let floor = floor.max(self.floor);
        LaurentSeries { floor, terms: self.terms.range(floor..).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Multiplies by `n^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        let floor = if self.is_exact() { self.floor } else { self.floor + k };
        LaurentSeries { floor, terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Sum, valid down to the larger of the two floors.
    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let mut out = LaurentSeries::new(self.floor.max(other.floor));
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson { floor: self.floor, terms: self.terms().into_iter().map(|(e, c)| (e, c.to_string())).collect() }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let mut out = LaurentSeries::new(j.floor);
        for (e, c) in &j.terms {
            let c = BigRational::from_str(c).map_err(|_| Error::Invalid(format!("bad coefficient {c:?}")))?;
            if *e < j.floor {
                return Err(Error::Invalid(format!("exponent {e} below floor {}", j.floor)));
            }
            out.add_term(*e, c);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub floor: i64,
    pub terms: Vec<(i64, String)>,
}

fn write_term(f: &mut fmt::Formatter<'_>, e: i64, c: &BigRational) -> fmt::Result {
    let num = c.numer();
    let den = c.denom();
    let int = den.is_one();
    match e {
        0 => write!(f, "{c}"),
        e if e > 0 => {
            let pow = if e == 1 { "n".to_string() } else { format!("n^{e}") };
            if c.is_one() {
                write!(f, "{pow}")
            } else if int {
                write!(f, "{num}{pow}")
            } else {
                write!(f, "({c}){pow}")
            }
        }
        e => {
            let pow = if e == -1 { "n".to_string() } else { format!("n^{}", -e) };
            if int {
                write!(f, "{num}/{pow}")
            } else {
                write!(f, "{num}/({den}{pow})")
            }
        }
    }
}

/// Renders as e.g. `9/n^3 + 81/n^5 + 369/n^7 + O(n^-8)`.
impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                write_term(f, e, &c)?;
            } else if c.is_negative() {
                write!(f, " - ")?;
                write_term(f, e, &-c)?;
            } else {
                write!(f, " + ")?;
                write_term(f, e, &c)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if self.is_exact() {
            return Ok(());
        }
        write!(f, " + O(n^{})", self.floor - 1)
    }
}
