use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A vertex of the infinite dyadic tree: a bit string whose first bit is 0.
///
/// The height is the string length minus one, so the root `"0"` has height 0.
/// The derived ordering is lexicographic on the bit string, which is also the
/// order of the textual form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    bits: Vec<bool>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex { bits: vec![false] }
    }

    pub fn new(bits: Vec<bool>) -> Result<Self> {
        match bits.first() {
            Some(false) => Ok(Vertex { bits }),
            _ => Err(Error::InvalidVertex(render_bits(&bits))),
        }
    }

    /// Vertex encoding the dyadic value `j · 2^{-k}` at height `k`.
    pub fn from_code(k: usize, j: &BigInt) -> Result<Self> {
        if j < &BigInt::zero() || j >= &(BigInt::one() << k) {
            return Err(Error::InvalidCode { k, j: j.to_string() });
        }
        let mut bits = vec![false; k + 1];
        for (i, bit) in bits.iter_mut().enumerate().skip(1) {
            *bit = j.bit((k - i) as u64);
        }
        Ok(Vertex { bits })
    }

    pub fn height(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_root(&self) -> bool {
        self.bits.len() == 1
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.is_root() {
            None
        } else {
            Some(Vertex { bits: self.bits[..self.bits.len() - 1].to_vec() })
        }
    }

    pub fn child(&self, bit: bool) -> Vertex {
        let mut bits = Vec::with_capacity(self.bits.len() + 1);
        bits.extend_from_slice(&self.bits);
        bits.push(bit);
        Vertex { bits }
    }

    pub fn last_bit(&self) -> bool {
        *self.bits.last().expect("nonempty")
    }

    /// Prefix of length `height + 1`.
    pub fn ancestor_at(&self, height: usize) -> Vertex {
        assert!(height <= self.height(), "ancestor height above vertex");
        Vertex { bits: self.bits[..=height].to_vec() }
    }

    /// Ancestor-or-self test.
    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// Strict ancestor test.
    pub fn is_ancestor_of(&self, other: &Vertex) -> bool {
        self.bits.len() < other.bits.len() && self.is_prefix_of(other)
    }

    /// Appends zeros until the vertex reaches `height`.
    pub fn zero_fill(&self, height: usize) -> Vertex {
        let mut bits = self.bits.clone();
        bits.resize(height.max(self.height()) + 1, false);
        Vertex { bits }
    }

    /// The integer `j` with value `j · 2^{-h}`.
    pub fn index(&self) -> BigInt {
        let mut j = BigInt::zero();
        for &b in &self.bits[1..] {
            j <<= 1;
            if b {
                j += 1;
            }
        }
        j
    }

    /// `Σ a_i 2^{-i}` over the bits.
    pub fn value(&self) -> BigRational {
        BigRational::new(self.index(), BigInt::one() << self.height())
    }

    /// Integer index for heights that fit a machine word.
    pub fn index_u64(&self) -> Option<u64> {
        if self.height() >= 64 {
            return None;
        }
        self.index().to_u64()
    }
}

fn render_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_bits(&self.bits))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidVertex(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Vertex::new(bits).map_err(|_| Error::InvalidVertex(s.to_string()))
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn heights_and_parents() {
        assert_eq!(v("0").height(), 0);
        assert_eq!(v("0110").height(), 3);
        assert_eq!(v("0110").parent(), Some(v("011")));
        assert_eq!(v("0").parent(), None);
        assert_eq!(v("01").child(true), v("011"));
    }

    #[test]
    fn rejects_bad_strings() {
        assert!("".parse::<Vertex>().is_err());
        assert!("1".parse::<Vertex>().is_err());
        assert!("012".parse::<Vertex>().is_err());
    }

    #[test]
    fn values_are_binary_expansions() {
        assert_eq!(v("0").value(), rat(0, 1));
        assert_eq!(v("01").value(), rat(1, 2));
        assert_eq!(v("011").value(), rat(3, 4));
        assert_eq!(v("0110").value(), rat(3, 4));
        assert_eq!(v("0101").index(), BigInt::from(5));
    }

    #[test]
    fn from_code_matches_expansion() {
        assert_eq!(Vertex::from_code(0, &BigInt::from(0)).unwrap(), v("0"));
        assert_eq!(Vertex::from_code(1, &BigInt::from(1)).unwrap(), v("01"));
        assert_eq!(Vertex::from_code(2, &BigInt::from(3)).unwrap(), v("011"));
        assert!(Vertex::from_code(2, &BigInt::from(4)).is_err());
    }

    #[test]
    fn ordering_matches_text() {
        let mut vs = [v("01"), v("000"), v("0"), v("00"), v("011")];
        vs.sort();
        let text: Vec<_> = vs.iter().map(|x| x.to_string()).collect();
        let mut sorted = text.clone();
        sorted.sort();
        assert_eq!(text, sorted);
    }

    #[test]
    fn prefix_relations() {
        assert!(v("0").is_ancestor_of(&v("01")));
        assert!(!v("01").is_ancestor_of(&v("01")));
        assert!(v("01").is_prefix_of(&v("01")));
        assert!(!v("00").is_prefix_of(&v("01")));
        assert_eq!(v("01").zero_fill(3), v("0100"));
    }
}
