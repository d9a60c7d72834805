//! Exponent cipher: `d_i = a_i X^{m_i} (mod p)` with a secret primitive root `X` and
//! public multipliers `a_i`, decrypted by a discrete logarithm.

use rand::Rng;

use super::{field, list_field, record_fields};
use crate::arith::{discrete_log, inv_mod, is_prime, is_primitive_root, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidCipherKey {
    p: u64,
    x: u64,
    /// Cycled when the message is longer.
    a: Vec<u64>,
}

const HEAD: &str = "monoid-cipher v1";

impl MonoidCipherKey {
    pub fn new(p: u64, x: u64, a: Vec<u64>) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::NotPrime(format!("alphabet length {p} (need an odd prime)")));
        }
        if !(2..p).contains(&x) || !is_primitive_root(x, p) {
            return Err(Error::param("X", format!("{x} is not a primitive root mod {p}")));
        }
        if a.is_empty() {
            return Err(Error::param("A", "need at least one multiplier"));
        }
        if let Some(bad) = a.iter().find(|&&ai| ai == 0 || ai >= p) {
            return Err(Error::param("A", format!("{bad} outside [1, {}]", p - 1)));
        }
        Ok(MonoidCipherKey { p, x, a })
    }

    /// Samples `X` from `[2, p - 1]` until it is a primitive root, and `len` multipliers.
    pub fn generate<R: Rng>(rng: &mut R, p: u64, len: usize) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::NotPrime(format!("alphabet length {p} (need an odd prime)")));
        }
        let x = loop {
            let c = rng.gen_range(2..p);
            if is_primitive_root(c, p) {
                break c;
            }
        };
        Self::new(p, x, (0..len.max(1)).map(|_| rng.gen_range(1..p)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.a
    }

    fn a_at(&self, i: usize) -> u64 {
        self.a[i % self.a.len()]
    }

    /// Messages are exponents in `[0, p - 2]`.
    pub fn encrypt(&self, messages: &[u64]) -> Result<Vec<u64>> {
        self.encrypt_with(messages, Execution::Sequential)
    }

    pub fn encrypt_with(&self, messages: &[u64], exec: Execution) -> Result<Vec<u64>> {
        let idx: Vec<usize> = (0..messages.len()).collect();
        exec.try_map(&idx, |&i| {
            let m = messages[i];
            if m > self.p - 2 {
                return Err(Error::OutOfRange {
                    value: m.to_string(),
                    range: format!("[0, {}]", self.p - 2),
                });
            }
            Ok(mul_mod(self.a_at(i), pow_mod(self.x, m, self.p), self.p))
        })
    }

    pub fn decrypt(&self, cipher: &[u64]) -> Result<Vec<u64>> {
        self.decrypt_with(cipher, Execution::Sequential)
    }

    pub fn decrypt_with(&self, cipher: &[u64], exec: Execution) -> Result<Vec<u64>> {
        let idx: Vec<usize> = (0..cipher.len()).collect();
        exec.try_map(&idx, |&i| {
            let d = cipher[i];
            if d >= self.p {
                return Err(Error::Ciphertext(format!("{d} is not below {}", self.p)));
            }
            let a_inv = inv_mod(self.a_at(i), self.p).expect("a_i is a unit");
            let target = mul_mod(d, a_inv, self.p);
            discrete_log(self.x, target, self.p).ok_or(Error::NoLog {
                target,
                base: self.x,
                modulus: self.p,
            })
        })
    }

    pub fn to_key_file(&self) -> String {
        let a: Vec<String> = self.a.iter().map(u64::to_string).collect();
        format!("{HEAD} P={} X={} A={}\n", self.p, self.x, a.join(","))
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = record_fields(text.lines().next().unwrap_or(""), HEAD)?;
        Self::new(field(&f, "P")?, field(&f, "X")?, list_field(&f, "A")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_example() {
        let key = MonoidCipherKey::new(29, 2, vec![3]).unwrap();
        assert_eq!(key.encrypt(&[7]).unwrap(), vec![7]);
        assert_eq!(key.decrypt(&[7]).unwrap(), vec![7]);
        assert_eq!(key.encrypt(&[0]).unwrap(), vec![3]);
        assert_eq!(key.decrypt(&[3]).unwrap(), vec![0]);
    }

    #[test]
    fn validation() {
        assert_eq!(MonoidCipherKey::new(28, 3, vec![1]).unwrap_err().code(), "not-prime");
        // 4 has order 14 mod 29.
        assert_eq!(MonoidCipherKey::new(29, 4, vec![1]).unwrap_err().code(), "invalid-parameter");
        assert!(MonoidCipherKey::new(29, 2, vec![0]).is_err());
        assert!(MonoidCipherKey::new(29, 2, vec![]).is_err());
        let key = MonoidCipherKey::new(29, 2, vec![3, 5]).unwrap();
        assert_eq!(key.encrypt(&[28]).unwrap_err().code(), "out-of-range");
        assert_eq!(key.decrypt(&[0]).unwrap_err().code(), "no-log");
    }

    #[test]
    fn random_keys_round_trip_full_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [3u64, 5, 7, 29, 31, 101, 1009] {
            for _ in 0..20 {
                let key = MonoidCipherKey::generate(&mut rng, p, 3).unwrap();
                let m: Vec<u64> = (0..=p - 2).collect();
                let d = key.encrypt_with(&m, Execution::Parallel).unwrap();
                assert_eq!(key.decrypt(&d).unwrap(), m);
                assert_eq!(MonoidCipherKey::from_key_file(&key.to_key_file()).unwrap(), key);
            }
        }
    }
}
