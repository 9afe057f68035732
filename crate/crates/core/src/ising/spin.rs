use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary configuration `x ∈ {0,1}^n`.
///
/// `x_i = 1` selects vertex `i`; the matching spin is `s_i = 1 - 2 x_i`, so a
/// selected vertex is spin `-1` (the `|1⟩` state of qubit `i`). Bitstrings are
/// written with `x_0` as the leftmost character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SpinConfig {
    bits: Vec<bool>,
}

impl SpinConfig {
    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Configuration whose bit `j` is bit `j` of `index`.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self {
            bits: (0..n).map(|j| (index >> j) & 1 == 1).collect(),
        }
    }

    pub fn from_spins(spins: &[i8]) -> Result<Self> {
        spins
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::param("spin", format!("{other} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.bits[i] = !self.bits[i];
    }

    /// `s_i = 1 - 2 x_i`.
    pub fn spin(&self, i: usize) -> i8 {
        if self.bits[i] {
            -1
        } else {
            1
        }
    }

    pub fn spins(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.spin(i)).collect()
    }

    /// Statevector index: bit `j` of the result is `x_j`. Requires `n <= 64`.
    pub fn index(&self) -> usize {
        debug_assert!(self.bits.len() <= usize::BITS as usize);
        self.bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | ((b as usize) << j))
    }

    /// Number of selected vertices.
    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn hamming_distance(&self, other: &SpinConfig) -> usize {
        debug_assert_eq!(self.len(), other.len());
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                got: self.len(),
            })
        }
    }
}

impl fmt::Display for SpinConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SpinConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::param(
                    "bitstring",
                    format!("unexpected character {other:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl From<SpinConfig> for String {
    fn from(c: SpinConfig) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for SpinConfig {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn string_order_is_x0_first() {
        let c: SpinConfig = "011".parse().unwrap();
        assert!(!c.get(0));
        assert!(c.get(2));
        assert_eq!(c.index(), 0b110);
        assert_eq!(SpinConfig::from_index(6, 3), c);
        assert_eq!(c.spins(), vec![1, -1, -1]);
        assert_eq!(c.to_string(), "011");
    }

    #[test]
    fn rejects_garbage() {
        assert!("01x".parse::<SpinConfig>().is_err());
        assert!(SpinConfig::from_spins(&[1, 0]).is_err());
    }

    proptest! {
        #[test]
        fn bit_spin_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..40)) {
            let c = SpinConfig::from_bits(bits);
            prop_assert_eq!(SpinConfig::from_spins(&c.spins()).unwrap(), c.clone());
            prop_assert_eq!(c.to_string().parse::<SpinConfig>().unwrap(), c.clone());
            prop_assert_eq!(SpinConfig::from_index(c.index(), c.len()), c);
        }
    }
}
