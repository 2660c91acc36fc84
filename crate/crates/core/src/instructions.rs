use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One instruction bit per vertex; `x[t - 1]` is the bit sent at time `t`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InstructionString(Vec<bool>);

impl InstructionString {
    pub fn new(bits: Vec<bool>) -> Self {
        InstructionString(bits)
    }

    /// The `index`-th string of length `len` in lexicographic order.
    pub fn from_index(len: usize, index: u64) -> Self {
        InstructionString((0..len).map(|i| index >> (len - 1 - i) & 1 == 1).collect())
    }

    /// All `2^len` strings of length `len`, lexicographically.
    pub fn all(len: usize) -> impl Iterator<Item = InstructionString> {
        assert!(len < 64, "cannot enumerate strings of length {len}");
        (0..1u64 << len).map(move |i| InstructionString::from_index(len, i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Bit sent at time `t` (1-based).
    pub fn bit(&self, t: usize) -> bool {
        self.0[t - 1]
    }

    /// `l`: number of zeros.
    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&b| !b).count()
    }

    /// `m`: number of ones.
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn flipped(&self) -> Self {
        InstructionString(self.0.iter().map(|b| !b).collect())
    }

    pub fn prefix(&self, k: usize) -> Self {
        InstructionString(self.0[..k].to_vec())
    }
}

impl fmt::Display for InstructionString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for InstructionString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x\"{self}\"")
    }
}

impl FromStr for InstructionString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("instruction bit must be 0 or 1, got {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(InstructionString)
    }
}

impl Serialize for InstructionString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for InstructionString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
