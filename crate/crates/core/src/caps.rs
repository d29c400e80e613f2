//! Enumeration caps for the concrete families.
//!
//! Every family knows its size in closed form before enumerating, so a
//! request above the cap fails up front instead of truncating.

use crate::error::{Error, Result};

/// Environment variable overriding [`Caps::DEFAULT_MAX_ELEMENTS`].
pub const MAX_SIZE_ENV: &str = "CONSTELLA_MAX_SIZE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_elements: usize,
}

impl Caps {
    /// Large enough for T_5, PT_4, Rel_3 and P_3.
    pub const DEFAULT_MAX_ELEMENTS: usize = 4096;

    pub fn new(max_elements: usize) -> Self {
        Caps { max_elements }
    }

    /// Default caps, overridden by `CONSTELLA_MAX_SIZE` when it parses.
    pub fn from_env() -> Self {
        let max_elements = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_ELEMENTS);
        Caps { max_elements }
    }

    pub(crate) fn admit(&self, family: &'static str, n: usize, size: u128) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if size > self.max_elements as u128 {
            return Err(Error::TooLarge {
                family,
                n,
                size,
                cap: self.max_elements,
            });
        }
        Ok(())
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::from_env()
    }
}

/// `base^exp` without overflow for the sizes we care about.
pub(crate) fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Bell numbers by the triangle recurrence.
pub(crate) fn bell(m: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last.saturating_add(*v));
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let got: Vec<u128> = (0..7).map(bell).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn admit_rejects_above_cap() {
        let caps = Caps::new(10);
        assert!(caps.admit("T", 2, 4).is_ok());
        assert!(matches!(
            caps.admit("T", 3, 27),
            Err(Error::TooLarge { size: 27, cap: 10, .. })
        ));
        assert_eq!(caps.admit("T", 0, 1), Err(Error::EmptyGroundSet));
    }
}
