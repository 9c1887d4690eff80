use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_q` for `q` in {2, 3, 5}. Elements are `u8` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteField {
    q: u8,
}

impl FiniteField {
    pub const SUPPORTED: [u32; 3] = [2, 3, 5];

    pub fn new(q: u32) -> Result<Self> {
        if !Self::SUPPORTED.contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        Ok(Self { q: q as u8 })
    }

    pub fn order(&self) -> u32 {
        u32::from(self.q)
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        (self.q - a) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        (a * b) % self.q
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.q), "zero has no inverse");
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("prime field")
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}
