//! Coefficient rings: the integers, residue rings `Z/n`, prime fields `F_p` and
//! extension fields `F_p[t]/(m(t))` with an explicitly stored irreducible modulus.
//!
//! A [`RingDescriptor`] is a cheap, shareable handle. Finite-ring elements are stored
//! as a canonical code in `0..order`: the residue itself for `Z/n` and `F_p`, and the
//! base-`p` packing `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of the coefficient vector
//! for extension fields.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, inv_mod, mul_mod};
use crate::error::{Error, Result};

/// Largest finite ring we are willing to list element by element.
pub const ENUMERATION_CEILING: u64 = 1 << 22;
/// Largest number of candidate divisors tried when certifying an extension modulus.
const MODULUS_CHECK_CEILING: u64 = 1 << 24;
/// Largest extension degree supported by the packed representation.
const MAX_EXT_DEGREE: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Value {
    Int(BigInt),
    Fin(u64),
}

impl Value {
    pub(crate) fn code(&self) -> u64 {
        match self {
            Value::Fin(c) => *c,
            Value::Int(_) => unreachable!("code() on an integer value"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    /// `modulus` is monic, little-endian, of length `degree + 1`.
    ExtensionField { p: u64, modulus: Vec<u64> },
}

#[derive(Debug)]
struct Inner {
    kind: RingKind,
    /// Product of the distinct primes dividing `n` (for `Z/n`); `x` is nilpotent iff `rad | x`.
    radical: u64,
    /// Largest prime exponent of `n`; every nilpotent satisfies `x^bound = 0`.
    nil_bound: u32,
    default_modulus: bool,
}

#[derive(Clone)]
pub struct RingDescriptor {
    inner: Arc<Inner>,
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.kind == other.inner.kind
    }
}
impl Eq for RingDescriptor {}

impl Hash for RingDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.kind.hash(state)
    }
}

impl fmt::Debug for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl RingDescriptor {
    fn from_kind(kind: RingKind) -> Self {
        let (radical, nil_bound) = match &kind {
            RingKind::IntegersMod(n) => {
                let f = arith::factorize(*n);
                (
                    f.iter().map(|(p, _)| p).product(),
                    f.iter().map(|&(_, e)| e).max().unwrap_or(1),
                )
            }
            _ => (0, 1),
        };
        let default_modulus = match &kind {
            RingKind::ExtensionField { p, modulus } => {
                default_modulus(*p, modulus.len() - 1).as_deref() == Some(modulus.as_slice())
            }
            _ => false,
        };
        RingDescriptor {
            inner: Arc::new(Inner {
                kind,
                radical,
                nil_bound,
                default_modulus,
            }),
        }
    }

    pub fn integers() -> Self {
        Self::from_kind(RingKind::Integers)
    }

    pub fn integers_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(Self::from_kind(RingKind::IntegersMod(n)))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidRing(format!("F{p}: {p} is not prime")));
        }
        Ok(Self::from_kind(RingKind::PrimeField(p)))
    }

    /// `F_p[t]/(modulus)`; `modulus` is little-endian and must be monic and irreducible.
    pub fn extension_field(p: u64, modulus: &[u64]) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        let k = modulus.len().saturating_sub(1);
        if k == 0 || modulus[k] != 1 {
            return Err(Error::InvalidRing("modulus must be monic of degree >= 1".into()));
        }
        if k > MAX_EXT_DEGREE || (p as u128).pow(k as u32) > u64::MAX as u128 {
            return Err(Error::InvalidRing(format!("F({p}^{k}) is too large")));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidRing(format!("modulus coefficient {c} not reduced mod {p}")));
        }
        if !fp_is_irreducible(p, modulus)? {
            return Err(Error::InvalidRing(format!(
                "{} is reducible over F{p}",
                fmt_fp_poly(modulus, 't')
            )));
        }
        Ok(Self::from_kind(RingKind::ExtensionField {
            p,
            modulus: modulus.to_vec(),
        }))
    }

    /// The field with `q` elements: a prime field, or an extension with the
    /// lexicographically smallest monic irreducible modulus.
    pub fn galois_field(q: u64) -> Result<Self> {
        let (p, k) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidRing(format!("no field with {q} elements")))?;
        if k == 1 {
            return Self::prime_field(p);
        }
        let modulus = default_modulus(p, k as usize)
            .ok_or_else(|| Error::CeilingExceeded(format!("modulus search for F{q}")))?;
        Self::extension_field(p, &modulus)
    }

    pub fn kind(&self) -> &RingKind {
        &self.inner.kind
    }

    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            RingKind::Integers => None,
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => Some(*n),
            RingKind::ExtensionField { p, modulus } => Some(p.pow(modulus.len() as u32 - 1)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Characteristic; 0 for the integers.
    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            RingKind::Integers => 0,
            RingKind::IntegersMod(n) | RingKind::PrimeField(n) => *n,
            RingKind::ExtensionField { p, .. } => *p,
        }
    }

    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Integers => false,
            RingKind::IntegersMod(n) => arith::is_prime(*n),
            RingKind::PrimeField(_) | RingKind::ExtensionField { .. } => true,
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self.kind(), RingKind::Integers) || self.is_field()
    }

    /// Degree over the prime field (1 for everything but extension fields).
    pub fn extension_degree(&self) -> usize {
        match self.kind() {
            RingKind::ExtensionField { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Exponent `m` such that every nilpotent `x` has `x^m = 0`.
    pub fn nilpotency_bound(&self) -> u32 {
        self.inner.nil_bound
    }

    pub fn has_default_modulus(&self) -> bool {
        self.inner.default_modulus
    }

    pub fn element(&self, n: i64) -> RingElement {
        self.wrap(self.value_of_bigint(&BigInt::from(n)))
    }

    pub fn int(&self, n: &BigInt) -> RingElement {
        self.wrap(self.value_of_bigint(n))
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(self.zero_v())
    }

    pub fn one(&self) -> RingElement {
        self.wrap(self.one_v())
    }

    /// The class of `t` in an extension field.
    pub fn generator(&self) -> Option<RingElement> {
        match self.kind() {
            RingKind::ExtensionField { p, modulus } if modulus.len() > 2 => {
                Some(self.wrap(Value::Fin(*p)))
            }
            RingKind::ExtensionField { p, modulus } => {
                // degree one: t = -m_0
                Some(self.wrap(Value::Fin((p - modulus[0]) % p)))
            }
            _ => None,
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        Ok(self.wrap(self.parse_v(s)?))
    }

    /// Every element, in code order. Finite rings only.
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        Ok(self
            .element_values()?
            .into_iter()
            .map(|v| self.wrap(v))
            .collect())
    }

    /// Prime elements: nonzero nonunits generating a prime ideal.
    pub fn is_prime_element(&self, x: &RingElement) -> Result<bool> {
        self.check(x)?;
        Ok(match (self.kind(), &x.value) {
            (RingKind::Integers, Value::Int(v)) => v
                .abs()
                .to_u64()
                .map(arith::is_prime)
                .unwrap_or_else(|| arith::is_prime_big(&v.abs().to_biguint().unwrap())),
            (RingKind::IntegersMod(n), Value::Fin(v)) => {
                *v != 0 && arith::is_prime(arith::gcd(*v, *n)) && arith::gcd(*v, *n) != 1
            }
            _ => false,
        })
    }

    pub(crate) fn wrap(&self, value: Value) -> RingElement {
        RingElement {
            ring: self.clone(),
            value,
        }
    }

    pub(crate) fn check(&self, x: &RingElement) -> Result<()> {
        if &x.ring != self {
            return Err(Error::RingMismatch {
                left: self.to_string(),
                right: x.ring.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &RingDescriptor) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }

    // ---- raw value arithmetic -------------------------------------------------

    pub(crate) fn zero_v(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::zero()),
            _ => Value::Fin(0),
        }
    }

    pub(crate) fn one_v(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::one()),
            _ => Value::Fin(1),
        }
    }

    pub(crate) fn is_zero_v(&self, a: &Value) -> bool {
        match a {
            Value::Int(x) => x.is_zero(),
            Value::Fin(c) => *c == 0,
        }
    }

    pub(crate) fn is_one_v(&self, a: &Value) -> bool {
        match a {
            Value::Int(x) => x.is_one(),
            Value::Fin(c) => *c == 1,
        }
    }

    pub(crate) fn value_of_bigint(&self, n: &BigInt) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(n.clone()),
            _ => {
                let c = self.characteristic();
                Value::Fin(n.mod_floor(&BigInt::from(c)).to_u64().unwrap())
            }
        }
    }

    pub(crate) fn add_v(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Value::Fin(x), Value::Fin(y)) => {
                Value::Fin(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (RingKind::ExtensionField { p, modulus }, Value::Fin(x), Value::Fin(y)) => {
                if *p == 2 {
                    return Value::Fin(x ^ y);
                }
                let k = modulus.len() - 1;
                let (mut x, mut y) = (*x, *y);
                let (mut out, mut place) = (0u64, 1u64);
                for i in 0..k {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    if i + 1 < k {
                        place *= p;
                    }
                }
                Value::Fin(out)
            }
            _ => unreachable!("value does not belong to {self}"),
        }
    }

    pub(crate) fn neg_v(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Value::Fin(x)) => {
                Value::Fin((n - x) % n)
            }
            (RingKind::ExtensionField { p, modulus }, Value::Fin(x)) => {
                if *p == 2 {
                    return Value::Fin(*x);
                }
                let mut d = unpack(*x, *p, modulus.len() - 1);
                for c in d.iter_mut() {
                    *c = (p - *c) % p;
                }
                Value::Fin(pack(&d, *p))
            }
            _ => unreachable!("value does not belong to {self}"),
        }
    }

    pub(crate) fn sub_v(&self, a: &Value, b: &Value) -> Value {
        self.add_v(a, &self.neg_v(b))
    }

    pub(crate) fn mul_v(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Value::Fin(x), Value::Fin(y)) => {
                Value::Fin(mul_mod(*x, *y, *n))
            }
            (RingKind::ExtensionField { p, modulus }, Value::Fin(x), Value::Fin(y)) => {
                Value::Fin(ext_mul(*x, *y, *p, modulus))
            }
            _ => unreachable!("value does not belong to {self}"),
        }
    }

    pub(crate) fn pow_v(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one_v();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_v(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_v(&base, &base);
            }
        }
        acc
    }

    pub(crate) fn inv_v(&self, a: &Value) -> Option<Value> {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => {
                (x.is_one() || (-x).is_one()).then(|| Value::Int(x.clone()))
            }
            (RingKind::IntegersMod(n) | RingKind::PrimeField(n), Value::Fin(x)) => {
                inv_mod(*x, *n).map(Value::Fin)
            }
            (RingKind::ExtensionField { .. }, Value::Fin(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(self.pow_v(a, self.order().unwrap() - 2))
                }
            }
            _ => unreachable!("value does not belong to {self}"),
        }
    }

    pub(crate) fn is_unit_v(&self, a: &Value) -> bool {
        match (self.kind(), a) {
            (RingKind::IntegersMod(n), Value::Fin(x)) => arith::gcd(*x, *n) == 1,
            (RingKind::PrimeField(_) | RingKind::ExtensionField { .. }, Value::Fin(x)) => *x != 0,
            _ => self.inv_v(a).is_some(),
        }
    }

    pub(crate) fn is_nilpotent_v(&self, a: &Value) -> bool {
        match (self.kind(), a) {
            (RingKind::IntegersMod(_), Value::Fin(x)) => x % self.inner.radical == 0,
            _ => self.is_zero_v(a),
        }
    }

    /// Some `c` with `b * c = a`, preferring the smallest code in finite rings.
    pub(crate) fn div_exact_v(&self, a: &Value, b: &Value) -> Option<Value> {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => {
                if y.is_zero() {
                    return x.is_zero().then(|| Value::Int(BigInt::zero()));
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Value::Int(q))
            }
            _ => {
                if let Some(inv) = self.inv_v(b) {
                    return Some(self.mul_v(a, &inv));
                }
                let n = self.order().unwrap();
                if n > ENUMERATION_CEILING {
                    return None;
                }
                (0..n)
                    .map(Value::Fin)
                    .find(|c| &self.mul_v(b, c) == a)
            }
        }
    }

    pub(crate) fn element_values(&self) -> Result<Vec<Value>> {
        match self.order() {
            None => Err(Error::InfiniteRing(self.to_string())),
            Some(n) if n > ENUMERATION_CEILING => Err(Error::CeilingExceeded(format!(
                "{self} has {n} elements"
            ))),
            Some(n) => Ok((0..n).map(Value::Fin).collect()),
        }
    }

    pub(crate) fn fmt_v(&self, a: &Value) -> String {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => x.to_string(),
            (RingKind::ExtensionField { p, modulus }, Value::Fin(x)) => {
                fmt_fp_poly(&unpack(*x, *p, modulus.len() - 1), 't')
            }
            (_, Value::Fin(x)) => x.to_string(),
            (_, Value::Int(x)) => x.to_string(),
        }
    }

    pub(crate) fn parse_v(&self, s: &str) -> Result<Value> {
        let s = s.trim();
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(self.value_of_bigint(&n));
        }
        match self.kind() {
            RingKind::ExtensionField { p, modulus } => {
                let coeffs = parse_fp_poly(s, *p, 't')?;
                let reduced = fp_rem(&coeffs, modulus, *p);
                let mut d = vec![0; modulus.len() - 1];
                d[..reduced.len()].copy_from_slice(&reduced);
                Ok(Value::Fin(pack(&d, *p)))
            }
            _ => Err(Error::parse(format!("`{s}` is not an element of {self}"))),
        }
    }

    /// Coefficient vector of an extension-field element over its prime field.
    pub(crate) fn ext_coeffs(&self, a: &Value) -> Vec<u64> {
        match (self.kind(), a) {
            (RingKind::ExtensionField { p, modulus }, Value::Fin(x)) => {
                unpack(*x, *p, modulus.len() - 1)
            }
            (_, Value::Fin(x)) => vec![*x],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for RingDescriptor {
    /// `Z`, `Z/12`, `F5`, `F(4)=F2[t]/(t^2+t+1)`. The alternate form `{:#}` abbreviates
    /// extension fields with the default modulus to `F4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::IntegersMod(n) => write!(f, "Z/{n}"),
            RingKind::PrimeField(p) => write!(f, "F{p}"),
            RingKind::ExtensionField { p, modulus } => {
                let q = self.order().unwrap();
                if f.alternate() && self.has_default_modulus() {
                    write!(f, "F{q}")
                } else {
                    write!(f, "F({q})=F{p}[t]/({})", fmt_fp_poly(modulus, 't'))
                }
            }
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Self::integers());
        }
        if let Some(n) = s.strip_prefix("Z/") {
            let n = n.parse().map_err(|_| Error::parse(format!("bad modulus in `{s}`")))?;
            return Self::integers_mod(n);
        }
        if let Some(rest) = s.strip_prefix("F(") {
            // F(q)=Fp[t]/(poly)
            let (q, rest) = rest
                .split_once(")=F")
                .ok_or_else(|| Error::parse(format!("bad field `{s}`")))?;
            let (p, rest) = rest
                .split_once("[t]/(")
                .ok_or_else(|| Error::parse(format!("bad field `{s}`")))?;
            let poly = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(format!("bad field `{s}`")))?;
            let q: u64 = q.parse().map_err(|_| Error::parse(format!("bad order in `{s}`")))?;
            let p: u64 = p.parse().map_err(|_| Error::parse(format!("bad prime in `{s}`")))?;
            let modulus = parse_fp_poly(poly, p, 't')?;
            let ring = Self::extension_field(p, &modulus)?;
            if ring.order() != Some(q) {
                return Err(Error::parse(format!(
                    "`{s}`: modulus gives {} elements, not {q}",
                    ring.order().unwrap()
                )));
            }
            return Ok(ring);
        }
        if let Some(q) = s.strip_prefix('F') {
            let q: u64 = q.parse().map_err(|_| Error::parse(format!("bad field `{s}`")))?;
            return Self::galois_field(q);
        }
        Err(Error::parse(format!("unknown ring `{s}`")))
    }
}

/// An element of a [`RingDescriptor`] in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingDescriptor,
    pub(crate) value: Value,
}

impl RingElement {
    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.check(other)?;
        Ok(self.ring.wrap(self.ring.add_v(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ring.check(other)?;
        Ok(self.ring.wrap(self.ring.sub_v(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.check(other)?;
        Ok(self.ring.wrap(self.ring.mul_v(&self.value, &other.value)))
    }

    pub fn neg(&self) -> Self {
        self.ring.wrap(self.ring.neg_v(&self.value))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.ring.wrap(self.ring.pow_v(&self.value, e))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero_v(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one_v(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit_v(&self.value)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.ring
            .inv_v(&self.value)
            .map(|v| self.ring.wrap(v))
            .ok_or_else(|| Error::NotUnit(format!("{self:?}")))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.ring.is_nilpotent_v(&self.value)
    }

    /// Integer value for `Z`, the residue for `Z/n` and `F_p`, `None` for extension fields.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match (&self.value, self.ring.kind()) {
            (Value::Int(x), _) => Some(x.clone()),
            (_, RingKind::ExtensionField { .. }) => None,
            (Value::Fin(c), _) => Some(BigInt::from(*c)),
        }
    }

    /// Coordinates over the prime field (a single entry outside extension fields).
    pub fn coefficients(&self) -> Vec<u64> {
        self.ring.ext_coeffs(&self.value)
    }

    /// Image under the stored embedding of this ring into `target`.
    pub fn embed_into(&self, target: &RingDescriptor) -> Result<Self> {
        Embedding::new(&self.ring, target)?.apply(self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.fmt_v(&self.value))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}:{}", self.ring, self)
    }
}

#[derive(Debug, Clone)]
enum EmbedMap {
    Identity,
    /// Prime field into an extension of it: residues become constants.
    Constant,
    /// Extension field into a larger one: `t` goes to a root of the source modulus.
    Generator {
        image: u64,
        preimage: Arc<HashMap<u64, u64>>,
    },
}

/// A ring homomorphism from a subfield (or the ring itself) into a larger ring.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: RingDescriptor,
    target: RingDescriptor,
    map: EmbedMap,
}

impl Embedding {
    pub fn new(source: &RingDescriptor, target: &RingDescriptor) -> Result<Self> {
        let none = || Error::NoEmbedding {
            from: source.to_string(),
            to: target.to_string(),
        };
        let map = match (source.kind(), target.kind()) {
            _ if source == target => EmbedMap::Identity,
            (RingKind::PrimeField(p), RingKind::ExtensionField { p: q, .. }) if p == q => {
                EmbedMap::Constant
            }
            (
                RingKind::ExtensionField { p, modulus: src },
                RingKind::ExtensionField { p: q, modulus: dst },
            ) if p == q && (dst.len() - 1) % (src.len() - 1) == 0 => {
                let order = target.order().unwrap();
                if order > ENUMERATION_CEILING || source.order().unwrap() > ENUMERATION_CEILING {
                    return Err(Error::CeilingExceeded(format!(
                        "embedding search {source} -> {target}"
                    )));
                }
                let image = (0..order)
                    .find(|&r| is_root_in(target, src, r))
                    .ok_or_else(none)?;
                let mut preimage = HashMap::new();
                for x in 0..source.order().unwrap() {
                    preimage.insert(eval_packed_at(target, *p, src.len() - 1, x, image), x);
                }
                EmbedMap::Generator {
                    image,
                    preimage: Arc::new(preimage),
                }
            }
            _ => return Err(none()),
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn source(&self) -> &RingDescriptor {
        &self.source
    }

    pub fn target(&self) -> &RingDescriptor {
        &self.target
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        self.source.check(x)?;
        Ok(self.target.wrap(self.apply_v(&x.value)))
    }

    /// The source element mapping to `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &RingElement) -> Option<RingElement> {
        if self.target.check(y).is_err() {
            return None;
        }
        self.preimage_v(&y.value).map(|v| self.source.wrap(v))
    }

    pub fn contains(&self, y: &RingElement) -> bool {
        self.preimage(y).is_some()
    }

    pub(crate) fn apply_v(&self, v: &Value) -> Value {
        match &self.map {
            EmbedMap::Identity | EmbedMap::Constant => v.clone(),
            EmbedMap::Generator { image, .. } => {
                let p = self.source.characteristic();
                let k = self.source.extension_degree();
                Value::Fin(eval_packed_at(&self.target, p, k, v.code(), *image))
            }
        }
    }

    pub(crate) fn preimage_v(&self, v: &Value) -> Option<Value> {
        match &self.map {
            EmbedMap::Identity => Some(v.clone()),
            EmbedMap::Constant => (v.code() < self.source.characteristic()).then(|| v.clone()),
            EmbedMap::Generator { preimage, .. } => preimage.get(&v.code()).map(|&c| Value::Fin(c)),
        }
    }

    pub(crate) fn contains_v(&self, v: &Value) -> bool {
        self.preimage_v(v).is_some()
    }

    /// Image of every source element, in source code order. Finite sources only.
    pub(crate) fn image_values(&self) -> Result<Vec<Value>> {
        Ok(self
            .source
            .element_values()?
            .iter()
            .map(|v| self.apply_v(v))
            .collect())
    }
}

// ---- packed F_p[t] helpers ----------------------------------------------------

fn unpack(mut code: u64, p: u64, k: usize) -> Vec<u64> {
    let mut d = vec![0; k];
    for c in d.iter_mut() {
        *c = code % p;
        code /= p;
    }
    d
}

fn pack(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn ext_mul(x: u64, y: u64, p: u64, modulus: &[u64]) -> u64 {
    let k = modulus.len() - 1;
    let mut a = [0u64; MAX_EXT_DEGREE + 1];
    let mut b = [0u64; MAX_EXT_DEGREE + 1];
    let (mut x, mut y) = (x, y);
    for i in 0..k {
        a[i] = x % p;
        b[i] = y % p;
        x /= p;
        y /= p;
    }
    let mut prod = [0u64; 2 * MAX_EXT_DEGREE + 2];
    for i in 0..k {
        if a[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for d in (k..2 * k - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        let neg = p - c;
        for i in 0..k {
            prod[d - k + i] = (prod[d - k + i] + neg * modulus[i]) % p;
        }
        prod[d] = 0;
    }
    pack(&prod[..k], p)
}

/// Evaluate the F_p-polynomial packed in `code` (degree < `k`) at the target element `at`.
fn eval_packed_at(target: &RingDescriptor, p: u64, k: usize, code: u64, at: u64) -> u64 {
    let digits = unpack(code, p, k);
    let at = Value::Fin(at);
    let mut acc = target.zero_v();
    for &c in digits.iter().rev() {
        acc = target.add_v(&target.mul_v(&acc, &at), &Value::Fin(c));
    }
    acc.code()
}

fn is_root_in(target: &RingDescriptor, poly: &[u64], r: u64) -> bool {
    let r = Value::Fin(r);
    let mut acc = target.zero_v();
    for &c in poly.iter().rev() {
        acc = target.add_v(&target.mul_v(&acc, &r), &Value::Fin(c));
    }
    target.is_zero_v(&acc)
}

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic `m` over F_p.
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

/// Brute-force irreducibility: no monic divisor of degree `1..=deg/2`.
fn fp_is_irreducible(p: u64, m: &[u64]) -> Result<bool> {
    let k = m.len() - 1;
    let mut tried = 0u64;
    for d in 1..=k / 2 {
        let count = p.checked_pow(d as u32).unwrap_or(u64::MAX);
        tried = tried.saturating_add(count);
        if tried > MODULUS_CHECK_CEILING {
            return Err(Error::CeilingExceeded(format!(
                "irreducibility check of a degree-{k} modulus over F{p}"
            )));
        }
        for code in 0..count {
            let mut cand = unpack(code, p, d);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically smallest (by packed lower coefficients) monic irreducible of degree `k`.
fn default_modulus(p: u64, k: usize) -> Option<Vec<u64>> {
    let count = p.checked_pow(k as u32)?;
    (0..count).find_map(|code| {
        let mut m = unpack(code, p, k);
        m.push(1);
        match fp_is_irreducible(p, &m) {
            Ok(true) => Some(m),
            _ => None,
        }
    })
}

fn fmt_fp_poly(coeffs: &[u64], var: char) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, c) => format!("{c}{var}"),
            (i, 1) => format!("{var}^{i}"),
            (i, c) => format!("{c}{var}^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parse `2t^2+t+1`, `t-1`, `3` into little-endian coefficients mod `p`.
fn parse_fp_poly(s: &str, p: u64, var: char) -> Result<Vec<u64>> {
    let bad = || Error::parse(format!("bad polynomial `{s}` in {var}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with('-') || rest.starts_with('+') {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, degree) = match term.find(var) {
            None => (term.parse::<u64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c = if pos == 0 {
                    1
                } else {
                    term[..pos].trim_end_matches('*').parse::<u64>().map_err(|_| bad())?
                };
                let tail = &term[pos + var.len_utf8()..];
                let d = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (c, d)
            }
        };
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        let c = coef % p;
        coeffs[degree] = if negative {
            (coeffs[degree] + p - c) % p
        } else {
            (coeffs[degree] + c) % p
        };
    }
    Ok(coeffs)
}
