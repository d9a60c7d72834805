//! Monoid domains `B[M]` over numerical monoids `M ⊆ N_0`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poly::{exact_div_raw, mul_raw, SEARCH_CEILING};
use crate::rings::{RingDescriptor, RingElement, Value};

/// Largest generator accepted; the Apéry table has one entry per residue of the smallest.
pub const MAX_GENERATOR: u64 = 1 << 20;

/// A finitely generated submonoid of `(N_0, +)`.
#[derive(Clone)]
pub struct NumericalMonoid {
    inner: Arc<MonoidInner>,
}

struct MonoidInner {
    generators: Vec<u64>,
    gcd: u64,
    /// `apery[r]` is the least member (divided by `gcd`) congruent to `r` modulo the
    /// smallest reduced generator.
    apery: Vec<u64>,
}

impl PartialEq for NumericalMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.inner.generators == other.inner.generators
    }
}

impl Eq for NumericalMonoid {}

impl NumericalMonoid {
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || gens[0] == 0 {
            return Err(Error::param("generators", "need at least one positive generator"));
        }
        if *gens.last().unwrap() > MAX_GENERATOR {
            return Err(Error::CeilingExceeded(format!(
                "generators must be at most {MAX_GENERATOR}"
            )));
        }
        let gcd = gens.iter().fold(0, |g, &x| g.gcd(&x));
        let reduced: Vec<u64> = gens.iter().map(|g| g / gcd).collect();
        let a = reduced[0] as usize;
        let mut apery = vec![u64::MAX; a];
        apery[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
        while let Some(Reverse((d, r))) = heap.pop() {
            if d > apery[r] {
                continue;
            }
            for &g in &reduced[1..] {
                let (nd, nr) = (d + g, (r + g as usize) % a);
                if nd < apery[nr] {
                    apery[nr] = nd;
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(NumericalMonoid {
            inner: Arc::new(MonoidInner {
                generators: gens,
                gcd,
                apery,
            }),
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.inner.generators
    }

    /// Membership; negative inputs are rejected.
    pub fn contains(&self, m: i64) -> Result<bool> {
        u64::try_from(m)
            .map(|m| self.is_member(m))
            .map_err(|_| Error::OutOfRange {
                value: m.to_string(),
                range: "[0, inf)".into(),
            })
    }

    pub fn is_member(&self, m: u64) -> bool {
        if !m.is_multiple_of(self.inner.gcd) {
            return false;
        }
        let m = m / self.inner.gcd;
        let a = self.inner.apery.len() as u64;
        m >= self.inner.apery[(m % a) as usize]
    }

    /// Nonzero members that are not a sum of two nonzero members.
    pub fn is_atom(&self, m: u64) -> bool {
        m > 0
            && self.is_member(m)
            && !self
                .generators()
                .iter()
                .any(|&g| g < m && self.is_member(m - g))
    }

    /// Whether `m ∈ base + M`.
    pub fn in_translate(&self, base: u64, m: u64) -> bool {
        m >= base && self.is_member(m - base)
    }

    /// Members in `[0, bound]`, ascending.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&m| self.is_member(m)).collect()
    }
}

impl fmt::Display for NumericalMonoid {
    /// `M<2,3>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(u64::to_string).collect();
        write!(f, "M<{}>", gens.join(","))
    }
}

impl fmt::Debug for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for NumericalMonoid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("M<")
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| Error::parse(format!("expected M<g1,g2,...>, got `{s}`")))?;
        let gens = inner
            .split(',')
            .map(|g| {
                g.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(format!("bad generator `{g}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&gens)
    }
}

/// `sum a_m X^m` with every exponent in `M` and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidDomainElement {
    ring: RingDescriptor,
    monoid: NumericalMonoid,
    terms: BTreeMap<u64, Value>,
}

/// An element built by [`MonoidDomainElement::prime_chain_irreducible`] with its verified hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedIrreducible {
    pub element: MonoidDomainElement,
    pub certificate: Vec<String>,
}

impl MonoidDomainElement {
    pub(crate) fn from_terms(
        ring: &RingDescriptor,
        monoid: &NumericalMonoid,
        terms: impl IntoIterator<Item = (u64, Value)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<u64, Value> = BTreeMap::new();
        for (m, c) in terms {
            if !monoid.is_member(m) {
                return Err(Error::NotMember(format!("exponent {m} is not in {monoid}")));
            }
            let entry = map.entry(m).or_insert_with(|| ring.zero_v());
            *entry = ring.add_v(entry, &c);
        }
        map.retain(|_, c| !ring.is_zero_v(c));
        Ok(MonoidDomainElement {
            ring: ring.clone(),
            monoid: monoid.clone(),
            terms: map,
        })
    }

    pub fn new(
        ring: &RingDescriptor,
        monoid: &NumericalMonoid,
        terms: &[(u64, RingElement)],
    ) -> Result<Self> {
        for (_, c) in terms {
            ring.check(c)?;
        }
        Self::from_terms(ring, monoid, terms.iter().map(|(m, c)| (*m, c.value.clone())))
    }

    pub fn from_ints(
        ring: &RingDescriptor,
        monoid: &NumericalMonoid,
        terms: &[(u64, i64)],
    ) -> Result<Self> {
        Self::from_terms(ring, monoid, terms.iter().map(|&(m, c)| (m, ring.element(c).value)))
    }

    pub fn zero(ring: &RingDescriptor, monoid: &NumericalMonoid) -> Self {
        Self::from_terms(ring, monoid, []).unwrap()
    }

    pub fn one(ring: &RingDescriptor, monoid: &NumericalMonoid) -> Self {
        Self::from_terms(ring, monoid, [(0, ring.one_v())]).unwrap()
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    pub fn terms(&self) -> Vec<(u64, RingElement)> {
        self.terms
            .iter()
            .map(|(m, c)| (*m, self.ring.wrap(c.clone())))
            .collect()
    }

    pub fn coeff(&self, m: u64) -> RingElement {
        self.ring
            .wrap(self.terms.get(&m).cloned().unwrap_or_else(|| self.ring.zero_v()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_exponent(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.monoid != other.monoid {
            return Err(Error::RingMismatch {
                left: self.monoid.to_string(),
                right: other.monoid.to_string(),
            });
        }
        Ok(())
    }

    fn with_terms(&self, terms: impl IntoIterator<Item = (u64, Value)>) -> Self {
        Self::from_terms(&self.ring, &self.monoid, terms).expect("exponents stay in the monoid")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_terms(
            self.terms
                .iter()
                .chain(&other.terms)
                .map(|(m, c)| (*m, c.clone())),
        ))
    }

    pub fn neg(&self) -> Self {
        self.with_terms(self.terms.iter().map(|(m, c)| (*m, self.ring.neg_v(c))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ring = &self.ring;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a + b, ring.mul_v(x, y)));
            }
        }
        Ok(self.with_terms(terms))
    }

    /// A term `a X^0` with `a` a unit, every other coefficient nilpotent.
    pub fn is_unit(&self) -> bool {
        self.terms
            .get(&0)
            .is_some_and(|a| self.ring.is_unit_v(a))
            && self
                .terms
                .iter()
                .filter(|(m, _)| **m != 0)
                .all(|(_, c)| self.ring.is_nilpotent_v(c))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.terms.values().all(|c| self.ring.is_nilpotent_v(c))
    }

    /// Dense coefficient vector indexed by exponent.
    fn dense(&self) -> Vec<Value> {
        let mut v = vec![self.ring.zero_v(); self.max_exponent().map_or(0, |m| m as usize + 1)];
        for (m, c) in &self.terms {
            v[*m as usize] = c.clone();
        }
        v
    }

    /// `p_{r-1} X^{m_r} - ... - p_2 X^{m_3} - p_1 X^{m_2} - X^{m_1}`, after checking that
    /// `m_1` is an atom of `M`, no other `m_i` lies in `m_1 + M`, and every `p_i` is prime.
    pub fn prime_chain_irreducible(
        ring: &RingDescriptor,
        monoid: &NumericalMonoid,
        primes: &[RingElement],
        exponents: &[u64],
    ) -> Result<CertifiedIrreducible> {
        if ring.is_field() {
            return Err(Error::UnsupportedRing(format!(
                "{ring} is a field and has no prime elements"
            )));
        }
        let fail = |msg: String| Err(Error::Precondition(msg));
        let r = exponents.len();
        if r < 2 || primes.len() != r - 1 {
            return fail(format!(
                "need r >= 2 exponents and r - 1 primes, got {} and {}",
                r,
                primes.len()
            ));
        }
        let mut certificate = Vec::new();
        for &m in exponents {
            if !monoid.is_member(m) {
                return fail(format!("m = {m} is not in {monoid}"));
            }
        }
        for (i, m) in exponents.iter().enumerate() {
            if exponents[..i].contains(m) {
                return fail(format!("exponent {m} repeated"));
            }
        }
        let m1 = exponents[0];
        if !monoid.is_atom(m1) {
            let split = monoid
                .generators()
                .iter()
                .find(|&&g| g < m1 && monoid.is_member(m1 - g))
                .map(|g| format!(": {m1} = {g} + {}", m1 - g))
                .unwrap_or_default();
            return fail(format!("m1 = {m1} is not an atom of {monoid}{split}"));
        }
        certificate.push(format!("m1 = {m1} is an atom of {monoid}"));
        for (i, &m) in exponents.iter().enumerate().skip(1) {
            if monoid.in_translate(m1, m) {
                return fail(format!(
                    "m{} = {m} lies in {m1} + {monoid} ({m} - {m1} = {} is in M)",
                    i + 1,
                    m - m1
                ));
            }
            certificate.push(format!("m{} = {m} is not in {m1} + {monoid}", i + 1));
        }
        for (i, p) in primes.iter().enumerate() {
            ring.check(p)?;
            if !ring.is_prime_element(p)? {
                return fail(format!("p{} = {p} is not a prime element of {ring}", i + 1));
            }
            certificate.push(format!("p{} = {p} is prime in {ring}", i + 1));
        }
        let mut terms = vec![(m1, ring.neg_v(&ring.one_v()))];
        for i in 1..r {
            let c = &primes[i - 1].value;
            let c = if i == r - 1 { c.clone() } else { ring.neg_v(c) };
            terms.push((exponents[i], c));
        }
        Ok(CertifiedIrreducible {
            element: Self::from_terms(ring, monoid, terms)?,
            certificate,
        })
    }

    pub fn irreducible_oracle(&self, exponent_bound: u64, coeff_bound: u64) -> Result<bool> {
        self.irreducible_oracle_with(exponent_bound, coeff_bound, Execution::default())
    }

    /// Searches for `f = g h`, both nonunits, with every exponent at most
    /// `exponent_bound` and coefficients from `[-coeff_bound, coeff_bound]` (all of `B`
    /// when `B` is finite). Returns `true` when no such pair exists.
    pub fn irreducible_oracle_with(
        &self,
        exponent_bound: u64,
        coeff_bound: u64,
        exec: Execution,
    ) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_unit() {
            return Err(Error::UnitInput);
        }
        let values = self.coefficient_box(coeff_bound)?;
        if self.ring.is_domain() {
            self.domain_search(&values, exponent_bound, exec).map(|f| f.is_none())
        } else {
            self.pair_search(&values, exponent_bound, exec).map(|f| f.is_none())
        }
    }

    fn coefficient_box(&self, coeff_bound: u64) -> Result<Vec<Value>> {
        if self.ring.is_finite() {
            return self.ring.element_values();
        }
        let c = i64::try_from(coeff_bound).map_err(|_| Error::param("coeff_bound", "too large"))?;
        Ok((-c..=c).map(|x| self.ring.element(x).value).collect())
    }

    fn candidate(&self, values: &[Value], support: &[u64], mut idx: u64) -> Self {
        let q = values.len() as u64;
        let mut terms = Vec::with_capacity(support.len());
        for &m in support {
            terms.push((m, values[(idx % q) as usize].clone()));
            idx /= q;
        }
        self.with_terms(terms)
    }

    fn count(values: &[Value], support: &[u64]) -> Result<u64> {
        (values.len() as u64)
            .checked_pow(support.len() as u32)
            .filter(|&c| c <= SEARCH_CEILING)
            .ok_or_else(|| {
                Error::CeilingExceeded(format!(
                    "{}^{} candidate factors",
                    values.len(),
                    support.len()
                ))
            })
    }

    /// Over a domain degrees add, so the factor of smaller degree has degree at most
    /// `deg f / 2`; enumerate it and recover the cofactor by exact division in `B[X]`.
    fn domain_search(
        &self,
        values: &[Value],
        exponent_bound: u64,
        exec: Execution,
    ) -> Result<Option<(Self, Self)>> {
        let ring = &self.ring;
        let deg = self.max_exponent().unwrap();
        let support = self.monoid.members_up_to(exponent_bound.min(deg / 2));
        let count = Self::count(values, &support)?;
        let dense = self.dense();
        let (lead, trail) = (
            self.terms.values().next_back().unwrap(),
            self.terms.values().next().unwrap(),
        );
        let in_box = |c: &Value| values.contains(c);
        Ok(exec.find_first(count, |idx| {
            let g = self.candidate(values, &support, idx);
            if g.is_zero() || g.is_unit() {
                return None;
            }
            let (gl, gt) = (
                g.terms.values().next_back().unwrap(),
                g.terms.values().next().unwrap(),
            );
            ring.div_exact_v(lead, gl)?;
            ring.div_exact_v(trail, gt)?;
            let hq = exact_div_raw(ring, &dense, &g.dense())?;
            if hq.len() as u64 > exponent_bound + 1 {
                return None;
            }
            let h = Self::from_terms(
                ring,
                &self.monoid,
                hq.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !ring.is_zero_v(c))
                    .map(|(m, c)| (m as u64, c)),
            )
            .ok()?;
            if h.is_unit() || !h.terms.values().all(in_box) {
                return None;
            }
            debug_assert_eq!(mul_raw(ring, &g.dense(), &h.dense()), dense);
            Some((g, h))
        }))
    }

    /// Non-domains: degrees need not add, so both factors are enumerated.
    fn pair_search(
        &self,
        values: &[Value],
        exponent_bound: u64,
        exec: Execution,
    ) -> Result<Option<(Self, Self)>> {
        let support = self.monoid.members_up_to(exponent_bound);
        let single = Self::count(values, &support)?;
        let total = single
            .checked_mul(single)
            .filter(|&c| c <= SEARCH_CEILING)
            .ok_or_else(|| Error::CeilingExceeded(format!("{single}^2 candidate pairs")))?;
        Ok(exec.find_first(total, |idx| {
            let g = self.candidate(values, &support, idx % single);
            let h = self.candidate(values, &support, idx / single);
            (!g.is_unit() && !h.is_unit() && &g.mul(&h).ok()? == self).then_some((g, h))
        }))
    }
}

impl fmt::Display for MonoidDomainElement {
    /// `F5:M<2,3>:{2:1,3:4}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}:{}:{{", self.ring, self.monoid)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}:{}", self.ring.fmt_v(c))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for MonoidDomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for MonoidDomainElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("expected ring:M<...>:{{m:c,...}}, got `{s}`"));
        let (ring, rest) = s.split_once(":M<").ok_or_else(bad)?;
        let (gens, body) = rest.split_once(">:").ok_or_else(bad)?;
        let ring: RingDescriptor = ring.parse()?;
        let monoid: NumericalMonoid = format!("M<{gens}>").parse()?;
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut terms = Vec::new();
        for pair in body.split(',').filter(|p| !p.trim().is_empty()) {
            let (m, c) = pair.split_once(':').ok_or_else(bad)?;
            let m = m
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(format!("bad exponent `{m}`")))?;
            terms.push((m, ring.parse_v(c)?));
        }
        Self::from_terms(&ring, &monoid, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> NumericalMonoid {
        s.parse().unwrap()
    }

    fn e(s: &str) -> MonoidDomainElement {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        let m23 = m("M<2,3>");
        assert!(!m23.contains(1).unwrap());
        assert!(m23.contains(7).unwrap());
        assert!(m23.contains(0).unwrap());
        assert_eq!(m23.contains(-1).unwrap_err().code(), "out-of-range");
        assert!(m("M<4,6>").is_member(10) && !m("M<4,6>").is_member(14 - 12 + 1));
        assert_eq!(m("M<3,5>").members_up_to(9), vec![0, 3, 5, 6, 8, 9]);
        assert!(m23.is_atom(2) && m23.is_atom(3) && !m23.is_atom(4) && !m23.is_atom(0));
        assert!("M<0,2>".parse::<NumericalMonoid>().is_err());
        assert_eq!(m("M<3,2,3>").to_string(), "M<2,3>");
    }

    #[test]
    fn membership_matches_coin_dp() {
        for gens in [vec![2, 3], vec![3, 5], vec![4, 6, 9], vec![5, 7, 11], vec![6, 10, 15]] {
            let mon = NumericalMonoid::new(&gens).unwrap();
            let mut reach = [false; 200];
            reach[0] = true;
            for i in 1..200 {
                reach[i] = gens.iter().any(|&g| i >= g as usize && reach[i - g as usize]);
            }
            for (i, &r) in reach.iter().enumerate() {
                assert_eq!(mon.is_member(i as u64), r, "{mon} {i}");
            }
        }
    }

    #[test]
    fn unit_and_nilpotent_examples() {
        assert!(e("F5:M<2,3>:{0:1}").is_unit());
        assert!(!e("F5:M<2,3>:{2:1}").is_unit());
        assert!(e("F7:M<2,3>:{0:2,3:0}").is_unit());
        assert_eq!(e("F7:M<2,3>:{0:2,3:0}").to_string(), "F7:M<2,3>:{0:2}");
        assert!(e("F5:M<2,3>:{}").is_nilpotent());
        assert!(!e("F3:M<2,3>:{2:1}").is_nilpotent());
        assert!(e("Z/4:M<2,3>:{0:2,2:2}").is_nilpotent());
        assert!(e("Z/4:M<2,3>:{0:1,2:2}").is_unit());
        assert_eq!("F5:M<2,3>:{1:1}".parse::<MonoidDomainElement>().unwrap_err().code(), "not-member");
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(e("Z:M<2,3>:{2:1}").mul(&e("Z:M<2,3>:{3:1}")).unwrap(), e("Z:M<2,3>:{5:1}"));
        assert_eq!(
            e("F5:M<2,3>:{0:1,2:1}").mul(&e("F5:M<2,3>:{0:1,2:-1}")).unwrap(),
            e("F5:M<2,3>:{0:1,4:4}")
        );
        let s = e("F5:M<2,3>:{2:1,3:1}");
        assert_eq!(s.mul(&s).unwrap(), e("F5:M<2,3>:{4:1,5:2,6:1}"));
        assert_eq!(
            e("F5:M<2,3>:{2:1}").mul(&e("F5:M<3,5>:{3:1}")).unwrap_err().code(),
            "ring-mismatch"
        );
    }

    #[test]
    fn prime_chain_irreducible_examples() {
        let z = RingDescriptor::integers();
        let m23 = m("M<2,3>");
        let built = MonoidDomainElement::prime_chain_irreducible(&z, &m23, &[z.element(2)], &[2, 3]).unwrap();
        assert_eq!(built.element, e("Z:M<2,3>:{2:-1,3:2}"));
        assert_eq!(built.certificate.len(), 3);
        let err = MonoidDomainElement::prime_chain_irreducible(&z, &m23, &[z.element(2)], &[4, 3]).unwrap_err();
        assert!(err.to_string().contains("not an atom"), "{err}");
        let err = MonoidDomainElement::prime_chain_irreducible(&z, &m23, &[z.element(2)], &[2, 5]).unwrap_err();
        assert!(err.to_string().contains("lies in 2 + M<2,3>"), "{err}");
        let err = MonoidDomainElement::prime_chain_irreducible(&z, &m23, &[z.element(4)], &[2, 3]).unwrap_err();
        assert!(err.to_string().contains("not a prime"), "{err}");
        let f5 = RingDescriptor::prime_field(5).unwrap();
        assert_eq!(
            MonoidDomainElement::prime_chain_irreducible(&f5, &m23, &[f5.element(2)], &[2, 3]).unwrap_err().code(),
            "unsupported-ring"
        );
        let three = MonoidDomainElement::prime_chain_irreducible(
            &z, &m23, &[z.element(3), z.element(5)], &[3, 2, 4],
        ).unwrap();
        assert_eq!(three.element, e("Z:M<2,3>:{2:-3,3:-1,4:5}"));
    }

    #[test]
    fn oracle_examples() {
        assert!(e("Z:M<2,3>:{2:-1,3:2}").irreducible_oracle(6, 4).unwrap());
        assert!(!e("F2:M<2,3>:{4:1}").irreducible_oracle(4, 1).unwrap());
        assert!(e("F2:M<2,3>:{3:1}").irreducible_oracle(6, 1).unwrap());
        assert_eq!(e("Z:M<2,3>:{0:-1}").irreducible_oracle(6, 4).unwrap_err(), Error::UnitInput);
        assert!(!e("Z:M<2,3>:{2:2,3:2}").irreducible_oracle(6, 4).unwrap());
        assert!(e("Z/4:M<2,3>:{2:1}").irreducible_oracle(2, 0).unwrap());
        // (X^2 - 2)(X^2 + 2) and (X^2 + X^3)(X^3 - 2)
        assert!(!e("Z:M<2,3>:{0:-4,4:1}").irreducible_oracle(4, 2).unwrap());
        assert!(!e("Z:M<2,3>:{2:-2,3:-2,5:1,6:1}").irreducible_oracle(6, 2).unwrap());
        // (3X^3 + 4)(3 + 4X^3) = X^3 over Z/6 via the idempotents 3 and 4.
        assert!(!e("Z/6:M<2,3>:{3:1}").irreducible_oracle(3, 0).unwrap());
    }

    #[test]
    fn domain_search_agrees_with_pair_search() {
        let mon = m("M<2,3>");
        let f3 = RingDescriptor::prime_field(3).unwrap();
        let vals = f3.element_values().unwrap();
        let support = mon.members_up_to(4);
        for idx in 1..(3u64.pow(support.len() as u32)) {
            let f = MonoidDomainElement::zero(&f3, &mon).candidate(&vals, &support, idx);
            if f.is_unit() {
                continue;
            }
            let fast = f.domain_search(&vals, 4, Execution::Sequential).unwrap();
            let slow = f.pair_search(&vals, 4, Execution::Sequential).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "{f}");
        }
    }

    fn arb(ring: RingDescriptor) -> impl Strategy<Value = MonoidDomainElement> {
        proptest::collection::vec((0u64..12, -9i64..9), 0..5).prop_filter_map("members", move |t| {
            MonoidDomainElement::from_ints(&ring, &"M<2,3>".parse().unwrap(), &t).ok()
        })
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_associative(
            f in arb(RingDescriptor::integers()),
            g in arb(RingDescriptor::integers()),
            h in arb(RingDescriptor::integers()),
        ) {
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            match (f.max_exponent(), g.max_exponent()) {
                (Some(a), Some(b)) => prop_assert_eq!(f.mul(&g).unwrap().max_exponent(), Some(a + b)),
                _ => prop_assert!(f.mul(&g).unwrap().is_zero()),
            }
        }

        #[test]
        fn units_over_domains_are_unit_constants(f in arb(RingDescriptor::prime_field(7).unwrap())) {
            let constant_unit = f.max_exponent() == Some(0);
            prop_assert_eq!(f.is_unit(), constant_unit);
        }

        #[test]
        fn monomials_close(a in 0u64..40, b in 0u64..40) {
            let mon: NumericalMonoid = "M<2,3>".parse().unwrap();
            prop_assume!(mon.is_member(a) && mon.is_member(b));
            let z = RingDescriptor::integers();
            let x = MonoidDomainElement::from_ints(&z, &mon, &[(a, 1)]).unwrap();
            let y = MonoidDomainElement::from_ints(&z, &mon, &[(b, 1)]).unwrap();
            prop_assert_eq!(x.mul(&y).unwrap(), MonoidDomainElement::from_ints(&z, &mon, &[(a + b, 1)]).unwrap());
        }
    }
}
