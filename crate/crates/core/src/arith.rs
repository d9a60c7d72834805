//! Machine-word and big-integer number theory shared by the rings, ideals and ciphers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (d, s) = split_pow2(n - 1);
    MR_BASES.iter().all(|&a| mr_round(n, a, d, s))
}

fn split_pow2(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn mr_round(n: u64, a: u64, d: u64, s: u32) -> bool {
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Primality for arbitrary-precision generators. Exact below 2^64; above that a
/// Miller-Rabin test with the first twenty prime bases.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let bases: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    for &p in &bases {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u8), n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Whether `g` generates the multiplicative group modulo the prime `p`.
pub fn is_primitive_root(g: u64, p: u64) -> bool {
    if p == 2 {
        return g % 2 == 1;
    }
    let g = g % p;
    if g == 0 {
        return false;
    }
    factorize(p - 1)
        .iter()
        .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
}

pub fn big_inv_mod(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let e = a.extended_gcd(&m_int);
    if !e.gcd.is_one() {
        return if m.is_one() { Some(BigUint::zero()) } else { None };
    }
    e.x.mod_floor(&m_int).to_biguint()
}

/// Least `x` in `[0, p - 1)` with `base^x ≡ target (mod p)`, by baby-step giant-step.
pub fn discrete_log(base: u64, target: u64, p: u64) -> Option<u64> {
    let (base, target) = (base % p, target % p);
    let n = p - 1;
    let m = (n as f64).sqrt().ceil() as u64;
    let mut baby = std::collections::HashMap::with_capacity(m as usize);
    let mut cur = 1 % p;
    for j in 0..m {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, base, p);
    }
    let giant = inv_mod(pow_mod(base, m, p), p)?;
    let mut gamma = target;
    for i in 0..=m {
        if let Some(&j) = baby.get(&gamma) {
            let x = i * m + j;
            if x < n.max(1) {
                return Some(x);
            }
        }
        gamma = mul_mod(gamma, giant, p);
    }
    None
}

/// Least `x` in `[0, p - 1)` with `base^x ≡ target (mod p)`, by trying every exponent.
pub fn discrete_log_exhaustive(base: u64, target: u64, p: u64) -> Option<u64> {
    let target = target % p;
    let mut cur = 1 % p;
    for x in 0..(p - 1).max(1) {
        if cur == target {
            return Some(x);
        }
        cur = mul_mod(cur, base, p);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &prime) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), prime, "n = {n}");
            assert_eq!(is_prime_big(&BigUint::from(n)), prime, "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn big_primality_beyond_u64() {
        let m127 = (BigUint::one() << 127) - 1u32;
        assert!(is_prime_big(&m127));
        assert!(!is_prime_big(&(&m127 * 3u32)));
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 20), Some(7));
        assert_eq!(inv_mod(4, 20), None);
        assert_eq!(inv_mod(5, 6), Some(5));
        assert_eq!(big_inv_mod(&BigUint::from(3u8), &BigUint::from(20u8)), Some(BigUint::from(7u8)));
    }

    #[test]
    fn discrete_logs_agree() {
        for p in [2u64, 3, 5, 7, 11, 13, 29, 101] {
            for base in 1..p {
                for target in 0..p {
                    assert_eq!(
                        discrete_log(base, target, p),
                        discrete_log_exhaustive(base, target, p),
                        "log_{base} {target} mod {p}"
                    );
                }
            }
        }
        assert_eq!(discrete_log(2, 12, 29), Some(7));
    }

    #[test]
    fn factorisation_and_roots() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert!(is_primitive_root(2, 29));
        assert!(!is_primitive_root(4, 29));
        assert!(is_primitive_root(3, 7));
    }
}
