//! Principal ideals `(n)` of the integers, identified by their nonnegative generator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{big_inv_mod, is_prime_big};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrincipalIdeal {
    generator: BigUint,
}

/// Index of an ideal in the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Norm {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::Finite(n) => write!(f, "{n}"),
            Norm::Infinite => f.write_str("inf"),
        }
    }
}

impl PrincipalIdeal {
    pub fn new(generator: impl Into<BigUint>) -> Self {
        PrincipalIdeal {
            generator: generator.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0u8)
    }

    pub fn unit() -> Self {
        Self::new(1u8)
    }

    pub fn generator(&self) -> &BigUint {
        &self.generator
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.generator * &other.generator)
    }

    /// `(a) mod (m)`: the ideal generated by the least nonnegative residue.
    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        if modulus.generator.is_zero() {
            return Err(Error::param("modulus", "(0) is not a valid modulus"));
        }
        Ok(Self::new(&self.generator % &modulus.generator))
    }

    pub fn is_prime(&self) -> bool {
        is_prime_big(&self.generator)
    }

    /// `((p - 1)(q - 1))` for distinct primes `p`, `q`.
    pub fn totient(p: &Self, q: &Self) -> Result<Self> {
        for (name, x) in [("P", p), ("Q", q)] {
            if !x.is_prime() {
                return Err(Error::param(name, format!("{x} is not a prime ideal")));
            }
        }
        if p == q {
            return Err(Error::param("Q", format!("must differ from P = {p}")));
        }
        let one = BigUint::one();
        Ok(Self::new((&p.generator - &one) * (&q.generator - &one)))
    }

    /// `D` with `E D ≡ 1 (mod Φ)`, generator in `[1, φ)`.
    pub fn inverse(&self, modulus: &Self) -> Result<Self> {
        let (e, m) = (&self.generator, &modulus.generator);
        let g = e.gcd(m);
        if !g.is_one() {
            return Err(Error::NotCoprime {
                a: e.to_string(),
                b: m.to_string(),
                gcd: g.to_string(),
            });
        }
        let d = big_inv_mod(e, m).expect("coprime inputs have an inverse");
        // Modulo (1) every residue is 0; (1) is the only generator in [1, 1].
        let d = if m.is_one() { BigUint::one() } else { d };
        debug_assert!(m.is_one() || (e * &d % m).is_one());
        Ok(Self::new(d))
    }

    /// `self ⊇ other`, i.e. the generator of `self` divides that of `other`.
    pub fn contains(&self, other: &Self) -> bool {
        if self.generator.is_zero() {
            other.generator.is_zero()
        } else {
            (&other.generator % &self.generator).is_zero()
        }
    }

    pub fn norm(&self) -> Norm {
        if self.generator.is_zero() {
            Norm::Infinite
        } else {
            Norm::Finite(self.generator.clone())
        }
    }
}

impl From<u64> for PrincipalIdeal {
    fn from(n: u64) -> Self {
        Self::new(n)
    }
}

impl fmt::Display for PrincipalIdeal {
    /// `(15)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

impl fmt::Debug for PrincipalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PrincipalIdeal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        inner
            .trim()
            .parse::<BigUint>()
            .map(Self::new)
            .map_err(|_| Error::parse(format!("expected an ideal like (15), got `{s}`")))
    }
}
