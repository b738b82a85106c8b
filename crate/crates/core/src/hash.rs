//! Polynomial (Rabin-Karp) string hashing over a prime field.
//!
//! `h(s) = sum s[i] * r^i mod p`. Letters hash to themselves, and the hash of a
//! concatenation is `h(s1) + h(s2) * r^|s1|`, so a node can be rehashed from
//! its two children in constant time given a table of powers of `r`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone)]
pub struct HashContext {
    modulus: u64,
    point: u64,
    powers: Vec<u64>,
}

impl HashContext {
    /// Context for strings up to `max_len` letters, with `p = 2^61 - 1` and
    /// the evaluation point drawn uniformly from `[0, p)` using `seed`.
    pub fn new(max_len: usize, seed: u64) -> Self {
        let point = ChaCha8Rng::seed_from_u64(seed).random_range(0..MERSENNE_61);
        Self::build(MERSENNE_61, point, max_len)
    }

    /// Context with explicit parameters. `modulus` is assumed to be prime.
    pub fn with_params(modulus: u64, point: u64, max_len: usize) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidHashParams("modulus must be at least 2"));
        }
        if modulus > MERSENNE_61 {
            return Err(Error::InvalidHashParams("modulus must not exceed 2^61 - 1"));
        }
        if point >= modulus {
            return Err(Error::InvalidHashParams(
                "evaluation point must be below the modulus",
            ));
        }
        Ok(Self::build(modulus, point, max_len))
    }

    fn build(modulus: u64, point: u64, max_len: usize) -> Self {
        let mut ctx = Self {
            modulus,
            point,
            powers: Vec::with_capacity(max_len + 1),
        };
        let mut acc = 1 % modulus;
        for _ in 0..=max_len {
            ctx.powers.push(acc);
            acc = ctx.mul(acc, point);
        }
        ctx
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn point(&self) -> u64 {
        self.point
    }

    /// Longest string length the power table covers.
    #[inline]
    pub fn max_len(&self) -> usize {
        self.powers.len() - 1
    }

    /// `r^e mod p` for `e <= max_len`.
    #[inline]
    pub fn power(&self, e: usize) -> u64 {
        self.powers[e]
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = a as u128 * b as u128;
        if self.modulus == MERSENNE_61 {
            // a, b < p keeps the folded sum below 2p.
            let folded = (prod as u64 & MERSENNE_61) + (prod >> 61) as u64;
            if folded >= MERSENNE_61 {
                folded - MERSENNE_61
            } else {
                folded
            }
        } else {
            (prod % self.modulus as u128) as u64
        }
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let sum = a + b;
        if sum >= self.modulus {
            sum - self.modulus
        } else {
            sum
        }
    }

    /// Hash of `s1 s2` from `h(s1)`, `h(s2)` and `|s1|`.
    #[inline]
    pub fn combine(&self, h1: u64, h2: u64, len1: usize) -> u64 {
        self.add(h1, self.mul(h2, self.powers[len1]))
    }

    /// Checks that a letter lies in the field.
    #[inline]
    pub fn check_letter(&self, letter: u64) -> Result<()> {
        if letter < self.modulus {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                modulus: self.modulus,
            })
        }
    }

    /// Direct evaluation of the hash polynomial (Horner's rule, highest term first).
    pub fn hash_string(&self, s: &[u64]) -> Result<u64> {
        let mut acc = 0;
        for &x in s.iter().rev() {
            self.check_letter(x)?;
            acc = self.add(self.mul(acc, self.point), x);
        }
        Ok(acc)
    }
}
