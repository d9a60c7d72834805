//! Ideal-valued Diffie-Hellman: `(A) ≡ (g)(a)`, `(s) ≡ (B)(a) ≡ (A)(b)` modulo `(p)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use super::{ideal_field, record_fields};
use crate::error::{Error, Result};
use crate::ideals::PrincipalIdeal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhParams {
    pub p: PrincipalIdeal,
    pub g: PrincipalIdeal,
}

/// Everything both parties compute in one exchange.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DhExchange {
    pub a_public: PrincipalIdeal,
    pub b_public: PrincipalIdeal,
    pub shared_f: PrincipalIdeal,
    pub shared_s: PrincipalIdeal,
}

const HEAD: &str = "dh-ideal v1";

impl DhParams {
    /// `p` prime, `g > p` (comparison of norms), and `g ≢ 0 (mod p)` so the exchange
    /// does not collapse to `(0)`.
    pub fn new(p: PrincipalIdeal, g: PrincipalIdeal) -> Result<Self> {
        if !p.is_prime() {
            return Err(Error::param("p", format!("{p} is not a prime ideal")));
        }
        if g.generator() <= p.generator() {
            return Err(Error::param("g", format!("norm of {g} must exceed norm of {p}")));
        }
        if g.rem(&p)?.generator().is_zero() {
            return Err(Error::param("g", format!("{g} lies in {p}; every secret would be (0)")));
        }
        Ok(DhParams { p, g })
    }

    /// The message a party with secret `(a)` sends: `(g)(a) mod (p)`.
    pub fn public(&self, secret: &PrincipalIdeal) -> Result<PrincipalIdeal> {
        check_secret(secret)?;
        self.g.mul(secret).rem(&self.p)
    }

    /// `(other)(secret) mod (p)`.
    pub fn shared(&self, other: &PrincipalIdeal, secret: &PrincipalIdeal) -> Result<PrincipalIdeal> {
        check_secret(secret)?;
        other.mul(secret).rem(&self.p)
    }

    pub fn exchange(&self, a: &PrincipalIdeal, b: &PrincipalIdeal) -> Result<DhExchange> {
        let a_public = self.public(a)?;
        let b_public = self.public(b)?;
        Ok(DhExchange {
            shared_f: self.shared(&b_public, a)?,
            shared_s: self.shared(&a_public, b)?,
            a_public,
            b_public,
        })
    }

    /// Secret in `[1, 2^32]`.
    pub fn random_secret<R: Rng>(rng: &mut R) -> PrincipalIdeal {
        PrincipalIdeal::from(rng.gen_range(1..=1u64 << 32))
    }

    /// Random prime `p` below `max_p` and `g` in `(p, 2p^2)` outside `(p)`.
    pub fn random<R: Rng>(rng: &mut R, max_p: u64) -> Result<Self> {
        if max_p < 2 {
            return Err(Error::param("max_p", "need at least 2"));
        }
        let p = loop {
            let c = rng.gen_range(2..=max_p);
            if crate::arith::is_prime(c) {
                break c;
            }
        };
        let g = loop {
            let c = rng.gen_range(p + 1..2 * p * p + 2);
            if c % p != 0 {
                break c;
            }
        };
        Self::new(p.into(), g.into())
    }

    pub fn to_key_file(&self) -> String {
        format!("{HEAD} P={} G={}\n", self.p, self.g)
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let f = record_fields(text.lines().next().unwrap_or(""), HEAD)?;
        Self::new(
            PrincipalIdeal::new(ideal_field::<BigUint>(&f, "P")?),
            PrincipalIdeal::new(ideal_field::<BigUint>(&f, "G")?),
        )
    }
}

fn check_secret(s: &PrincipalIdeal) -> Result<()> {
    if s.generator() < &BigUint::one() {
        return Err(Error::param("secret", "must be at least 1"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_exchange() {
        let params = DhParams::new(7.into(), 10.into()).unwrap();
        let x = params.exchange(&3.into(), &4.into()).unwrap();
        assert_eq!(x.a_public, 2.into());
        assert_eq!(x.b_public, 5.into());
        assert_eq!(x.shared_f, 1.into());
        assert_eq!(x.shared_s, 1.into());
        let one = params.exchange(&1.into(), &1.into()).unwrap();
        assert_eq!(one.shared_f, 3.into());
    }

    #[test]
    fn parameter_rules() {
        assert!(DhParams::new(8.into(), 11.into()).is_err());
        assert!(DhParams::new(7.into(), 5.into()).is_err());
        assert!(DhParams::new(7.into(), 14.into()).is_err());
        let params = DhParams::new(7.into(), 10.into()).unwrap();
        assert!(params.public(&0.into()).is_err());
        assert_eq!(DhParams::from_key_file(&params.to_key_file()).unwrap(), params);
    }

    #[test]
    fn random_exchanges_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let params = DhParams::random(&mut rng, 10_000).unwrap();
            let (a, b) = (DhParams::random_secret(&mut rng), DhParams::random_secret(&mut rng));
            let x = params.exchange(&a, &b).unwrap();
            assert_eq!(x.shared_f, x.shared_s);
        }
    }
}
