//! Ideal-valued "RSA": `C ≡ M E (mod Φ(N))`, `M ≡ C D (mod Φ(N))`.
//!
//! The scheme is multiplicative, not exponential, so anyone holding `Φ(N)` and `E` can
//! recover `D`. Encryption itself needs `Φ(N)`, which is why the key file carries it.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::{ideal_field, record_fields};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::ideals::PrincipalIdeal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaIdealKey {
    pub n: PrincipalIdeal,
    pub e: PrincipalIdeal,
    pub d: PrincipalIdeal,
    pub phi: PrincipalIdeal,
}

const HEAD: &str = "rsa-ideal v1";

impl RsaIdealKey {
    /// Requires distinct primes `p`, `q` and `1 < e < φ` with `gcd(e, φ) = 1`.
    pub fn generate(p: &PrincipalIdeal, q: &PrincipalIdeal, e: &PrincipalIdeal) -> Result<Self> {
        let phi = PrincipalIdeal::totient(p, q)?;
        let (eg, pg) = (e.generator(), phi.generator());
        if eg <= &BigUint::one() || eg >= pg {
            return Err(Error::param("E", format!("need 1 < e < {pg}, got {eg}")));
        }
        let g = eg.gcd(pg);
        if !g.is_one() {
            return Err(Error::param("E", format!("gcd({eg}, {pg}) = {g}")));
        }
        let d = e.inverse(&phi)?;
        Ok(RsaIdealKey {
            n: p.mul(q),
            e: e.clone(),
            d,
            phi,
        })
    }

    /// Distinct random primes in `[2, max_prime]` and a random valid `e`.
    pub fn random<R: Rng>(rng: &mut R, max_prime: u64) -> Result<Self> {
        if max_prime < 5 {
            return Err(Error::param("max_prime", "need at least 5 to leave room for e"));
        }
        loop {
            let p = random_prime(rng, max_prime);
            let q = random_prime(rng, max_prime);
            let phi = (p - 1) * (q - 1);
            if p == q || phi < 3 {
                continue;
            }
            let e = loop {
                let e = rng.gen_range(2..phi);
                if e.gcd(&phi) == 1 {
                    break e;
                }
            };
            return Self::generate(&p.into(), &q.into(), &e.into());
        }
    }

    fn check_range(&self, values: &[BigUint], what: &str) -> Result<()> {
        let phi = self.phi.generator();
        match values.iter().find(|v| *v >= phi) {
            Some(v) => Err(Error::OutOfRange {
                value: v.to_string(),
                range: format!("{what} values in [0, {phi})"),
            }),
            None => Ok(()),
        }
    }

    pub fn encrypt(&self, message: &[BigUint]) -> Result<Vec<BigUint>> {
        self.encrypt_with(message, Execution::default())
    }

    pub fn encrypt_with(&self, message: &[BigUint], exec: Execution) -> Result<Vec<BigUint>> {
        self.check_range(message, "message")?;
        let (e, phi) = (self.e.generator(), self.phi.generator());
        Ok(exec.map(message, |m| m * e % phi))
    }

    pub fn decrypt(&self, cipher: &[BigUint]) -> Result<Vec<BigUint>> {
        self.decrypt_with(cipher, Execution::default())
    }

    pub fn decrypt_with(&self, cipher: &[BigUint], exec: Execution) -> Result<Vec<BigUint>> {
        self.check_range(cipher, "ciphertext")?;
        let (d, phi) = (self.d.generator(), self.phi.generator());
        Ok(exec.map(cipher, |c| c * d % phi))
    }

    /// `N=(33) E=(3) D=(7)`.
    pub fn summary(&self) -> String {
        format!("N={} E={} D={}", self.n, self.e, self.d)
    }

    /// Two lines: the public pair, then the private half.
    pub fn to_key_file(&self) -> String {
        format!(
            "{HEAD} N={} E={}\nprivate D={} PHI={}\n",
            self.n, self.e, self.d, self.phi
        )
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let public = record_fields(lines.next().unwrap_or(""), HEAD)?;
        let private = record_fields(lines.next().unwrap_or(""), "private")?;
        let key = RsaIdealKey {
            n: PrincipalIdeal::new(ideal_field::<BigUint>(&public, "N")?),
            e: PrincipalIdeal::new(ideal_field::<BigUint>(&public, "E")?),
            d: PrincipalIdeal::new(ideal_field::<BigUint>(&private, "D")?),
            phi: PrincipalIdeal::new(ideal_field::<BigUint>(&private, "PHI")?),
        };
        let ed = key.e.generator() * key.d.generator() % key.phi.generator();
        if !ed.is_one() {
            return Err(Error::param("D", "E D is not 1 modulo PHI"));
        }
        Ok(key)
    }
}

fn random_prime<R: Rng>(rng: &mut R, max: u64) -> u64 {
    loop {
        let c = rng.gen_range(2..=max);
        if is_prime(c) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn keygen_examples() {
        let k = RsaIdealKey::generate(&3.into(), &11.into(), &3.into()).unwrap();
        assert_eq!(k.summary(), "N=(33) E=(3) D=(7)");
        assert_eq!(k.phi, 20.into());
        assert_eq!(
            RsaIdealKey::generate(&2.into(), &2.into(), &3.into()).unwrap_err().code(),
            "invalid-parameter"
        );
        let err = RsaIdealKey::generate(&3.into(), &11.into(), &5.into()).unwrap_err();
        assert_eq!(err, Error::param("E", "gcd(5, 20) = 5"));
        assert!(RsaIdealKey::generate(&3.into(), &11.into(), &21.into()).is_err());
    }

    #[test]
    fn encrypt_examples() {
        let k = RsaIdealKey::generate(&3.into(), &11.into(), &3.into()).unwrap();
        assert_eq!(k.encrypt(&big(&[2])).unwrap(), big(&[6]));
        assert_eq!(k.decrypt(&big(&[6])).unwrap(), big(&[2]));
        assert_eq!(k.encrypt(&big(&[0])).unwrap(), big(&[0]));
        assert_eq!(k.encrypt(&big(&[20])).unwrap_err().code(), "out-of-range");
    }

    #[test]
    fn lifted_text_round_trips() {
        use crate::alphabet::{Alphabet, Picker};
        let k = RsaIdealKey::generate(&61.into(), &53.into(), &17.into()).unwrap();
        let a = Alphabet::latin();
        let mut picker = Picker::fixed(vec![0, 0, 1, 2, 1, 2]);
        let m = a.encode("ABACAB", &mut picker).unwrap();
        let back = k.decrypt(&k.encrypt(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(a.decode(&back), "ABACAB");
    }

    #[test]
    fn key_file_round_trip() {
        let k = RsaIdealKey::generate(&3.into(), &11.into(), &3.into()).unwrap();
        assert_eq!(k.to_key_file(), "rsa-ideal v1 N=(33) E=(3)\nprivate D=(7) PHI=(20)\n");
        assert_eq!(RsaIdealKey::from_key_file(&k.to_key_file()).unwrap(), k);
        assert!(RsaIdealKey::from_key_file("rsa-ideal v1 N=(33) E=(3)\nprivate D=(8) PHI=(20)\n").is_err());
    }

    #[test]
    fn random_keys_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let k = RsaIdealKey::random(&mut rng, 500).unwrap();
            let (e, d, phi) = (
                k.e.generator().to_u64().unwrap(),
                k.d.generator().to_u64().unwrap(),
                k.phi.generator().to_u64().unwrap(),
            );
            assert_eq!(e * d % phi, 1);
            assert!(1 < e && e < phi);
        }
    }
}
