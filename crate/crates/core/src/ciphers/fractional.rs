//! Multiplication by a key `k` modulo a prime alphabet length: `y = x k mod |A|`.
//!
//! Decryption finds the unique `t ∈ [0, k)` with `k | y + t|A|`, namely
//! `t ≡ -y |A|^{-1} (mod k)`, and returns `(y + t|A|) / k`. The shortcut
//! `t = (k - y mod k) mod k` agrees with it exactly when `|A| ≡ 1 (mod k)`.

use rand::Rng;

use super::{field, ideal_field, record_fields};
use crate::arith::{gcd, inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionalKey {
    modulus: u64,
    k: u64,
}

const HEAD: &str = "frac-ideal v1";

impl FractionalKey {
    /// `modulus = |A|` prime, `2 <= k < |A|`.
    pub fn new(modulus: u64, k: u64) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(format!("alphabet length {modulus}")));
        }
        if k < 2 || k >= modulus {
            return Err(Error::param("k", format!("need 2 <= k < {modulus}, got {k}")));
        }
        debug_assert_eq!(gcd(k, modulus), 1);
        Ok(FractionalKey { modulus, k })
    }

    pub fn random<R: Rng>(rng: &mut R, modulus: u64) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::param("alpha", "need |A| >= 3 for a key 2 <= k < |A|"));
        }
        Self::new(modulus, rng.gen_range(2..modulus))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `x ∈ [2, |A|]`.
    pub fn encrypt(&self, x: u64) -> Result<u64> {
        if x < 2 || x > self.modulus {
            return Err(Error::OutOfRange {
                value: x.to_string(),
                range: format!("[2, {}]", self.modulus),
            });
        }
        Ok(((x as u128 * self.k as u128) % self.modulus as u128) as u64)
    }

    pub fn decrypt(&self, y: u64) -> Result<u64> {
        self.check_cipher(y)?;
        let (m, k) = (self.modulus, self.k);
        let m_inv = inv_mod(m % k, k).expect("|A| is prime and k < |A|");
        let t = mul_mod((k - y % k) % k, m_inv, k);
        Ok(self.finish(y, t).expect("t solves the congruence"))
    }

    /// The shortcut `x = (y + (k - d)|A|) / k`, `d = y mod k`, with `k - d` read modulo
    /// `k`. `None` when the division is not exact.
    pub fn decrypt_shortcut(&self, y: u64) -> Result<Option<u64>> {
        self.check_cipher(y)?;
        let k = self.k;
        Ok(self.finish(y, (k - y % k) % k))
    }

    fn finish(&self, y: u64, t: u64) -> Option<u64> {
        let num = y as u128 + t as u128 * self.modulus as u128;
        if !num.is_multiple_of(self.k as u128) {
            return None;
        }
        let x = (num / self.k as u128) as u64;
        Some(if x == 0 { self.modulus } else { x })
    }

    fn check_cipher(&self, y: u64) -> Result<()> {
        if y >= self.modulus {
            return Err(Error::OutOfRange {
                value: y.to_string(),
                range: format!("[0, {})", self.modulus),
            });
        }
        Ok(())
    }

    pub fn encrypt_all(&self, xs: &[u64], exec: Execution) -> Result<Vec<u64>> {
        exec.try_map(xs, |&x| self.encrypt(x))
    }

    pub fn decrypt_all(&self, ys: &[u64], exec: Execution) -> Result<Vec<u64>> {
        exec.try_map(ys, |&y| self.decrypt(y))
    }

    pub fn to_key_file(&self) -> String {
        format!("{HEAD} A={} K=({})\n", self.modulus, self.k)
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = record_fields(text.lines().next().unwrap_or(""), HEAD)?;
        Self::new(field(&f, "A")?, ideal_field(&f, "K")?)
    }
}
