//! Zone cipher: a secret sub-alphabet length `q` cuts the public alphabet `1..=p` into
//! `⌈p/q⌉` zones of `q` letters. Each value travels as its zone label plus its position
//! inside the zone multiplied by `k` modulo `q`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{field, list_field, record_fields};
use crate::arith::{gcd, inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZoneKey {
    p: u64,
    q: u64,
    k: u64,
    /// `labels[t]` is sent for zone `t`.
    labels: Vec<u64>,
}

const HEAD: &str = "zone v1";

impl ZoneKey {
    /// `p`, `q` prime with `q < p`, `gcd(k, q) = 1`; zone labels in clear.
    pub fn new(p: u64, q: u64, k: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(format!("alphabet length p = {p}")));
        }
        if !is_prime(q) || q >= p {
            return Err(Error::param("q", format!("need a prime q < {p}, got {q}")));
        }
        if gcd(k, q) != 1 {
            return Err(Error::param("k", format!("gcd({k}, {q}) must be 1")));
        }
        let zones = p.div_ceil(q);
        Ok(ZoneKey {
            p,
            q,
            k,
            labels: (0..zones).collect(),
        })
    }

    /// Replaces the clear zone index by a seeded permutation of labels.
    pub fn with_label_seed(mut self, seed: u64) -> Self {
        self.labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        self
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        if sorted != (0..self.zones()).collect::<Vec<_>>() {
            return Err(Error::param(
                "labels",
                format!("must be a permutation of 0..{}", self.zones()),
            ));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Random prime `q < p` and key `k ∈ [1, q)`, `k >= 2` whenever `q > 2`.
    pub fn random<R: Rng>(rng: &mut R, p: u64) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::NotPrime(format!("alphabet length p = {p} (need an odd prime)")));
        }
        let q = loop {
            let c = rng.gen_range(2..p);
            if is_prime(c) {
                break c;
            }
        };
        let k = if q == 2 { 1 } else { rng.gen_range(2..q) };
        Self::new(p, q, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn zones(&self) -> u64 {
        self.labels.len() as u64
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// One `(zone label, d)` pair per value `v ∈ [1, p]`.
    pub fn encrypt(&self, values: &[u64]) -> Result<Vec<(u64, u64)>> {
        values.iter().map(|&v| self.encrypt_one(v)).collect()
    }

    fn encrypt_one(&self, v: u64) -> Result<(u64, u64)> {
        if v == 0 || v > self.p {
            return Err(Error::OutOfRange {
                value: v.to_string(),
                range: format!("[1, {}]", self.p),
            });
        }
        let t = v.div_ceil(self.q) - 1;
        let r = v - t * self.q;
        Ok((self.labels[t as usize], mul_mod(r, self.k, self.q)))
    }

    pub fn decrypt(&self, pairs: &[(u64, u64)]) -> Result<Vec<u64>> {
        let k_inv = inv_mod(self.k % self.q, self.q).expect("k is coprime to q");
        pairs
            .iter()
            .map(|&(z, d)| {
                let t = self
                    .labels
                    .iter()
                    .position(|&l| l == z)
                    .ok_or_else(|| Error::Ciphertext(format!("unknown zone label {z}")))?
                    as u64;
                if d >= self.q {
                    return Err(Error::Ciphertext(format!("d = {d} is not below q")));
                }
                let r = match mul_mod(d, k_inv, self.q) {
                    0 => self.q,
                    r => r,
                };
                let v = t * self.q + r;
                if v > self.p {
                    return Err(Error::Ciphertext(format!("({z}, {d}) decodes past p = {}", self.p)));
                }
                Ok(v)
            })
            .collect()
    }

    /// `z:d z:d ...`
    pub fn format_pairs(pairs: &[(u64, u64)]) -> String {
        pairs
            .iter()
            .map(|(z, d)| format!("{z}:{d}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>> {
        text.split_whitespace()
            .map(|tok| {
                let bad = || Error::Ciphertext(format!("expected z:d, got `{tok}`"));
                let (z, d) = tok.split_once(':').ok_or_else(bad)?;
                Ok((z.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?))
            })
            .collect()
    }

    pub fn to_key_file(&self) -> String {
        let labels: Vec<String> = self.labels.iter().map(u64::to_string).collect();
        format!(
            "{HEAD} P={} Q={} K={} LABELS={}\n",
            self.p,
            self.q,
            self.k,
            labels.join(",")
        )
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = record_fields(text.lines().next().unwrap_or(""), HEAD)?;
        Self::new(field(&f, "P")?, field(&f, "Q")?, field(&f, "K")?)?
            .with_labels(list_field(&f, "LABELS")?)
    }
}
