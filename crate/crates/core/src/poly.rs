//! Dense univariate polynomials over any [`RingDescriptor`].
//!
//! Irreducibility and factorisation are brute force: trial division by every monic
//! polynomial of degree at most half the input's. That caps them at small fields and
//! degrees (see [`SEARCH_CEILING`]) but keeps them obviously correct, which is what the
//! composite and monoid oracles need.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::rings::{RingDescriptor, RingElement, Value};

/// Maximum number of candidate divisors (or inverse prefixes) a single search may visit.
pub const SEARCH_CEILING: u64 = 1 << 26;
/// Largest degree bound accepted by [`Polynomial::inverse_search`].
pub const INVERSE_SEARCH_MAX_DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingDescriptor,
    /// Little-endian, no trailing zeros.
    coeffs: Vec<Value>,
}

/// `unit * prod(factor^multiplicity)`, factors monic and in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: RingElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Polynomial {
        let ring = self.unit.ring();
        let mut acc = Polynomial::constant(&self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f).expect("factors share the ring");
            }
        }
        debug_assert_eq!(acc.ring(), ring);
        acc
    }
}

impl fmt::Display for Factorization {
    /// `1 * F2:[1,1]^2 * F2:[1,1,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, m) in &self.factors {
            write!(f, " * {p}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub(crate) fn from_values(ring: &RingDescriptor, mut coeffs: Vec<Value>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero_v(c)) {
            coeffs.pop();
        }
        Polynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn new(ring: &RingDescriptor, coeffs: &[RingElement]) -> Result<Self> {
        for c in coeffs {
            ring.check(c)?;
        }
        Ok(Self::from_values(
            ring,
            coeffs.iter().map(|c| c.value.clone()).collect(),
        ))
    }

    pub fn from_ints(ring: &RingDescriptor, coeffs: &[i64]) -> Self {
        Self::from_values(ring, coeffs.iter().map(|&c| ring.element(c).value).collect())
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        Self::from_values(ring, Vec::new())
    }

    pub fn one(ring: &RingDescriptor) -> Self {
        Self::from_values(ring, vec![ring.one_v()])
    }

    pub fn x(ring: &RingDescriptor) -> Self {
        Self::from_values(ring, vec![ring.zero_v(), ring.one_v()])
    }

    pub fn constant(c: &RingElement) -> Self {
        Self::from_values(c.ring(), vec![c.value.clone()])
    }

    /// `c * X^degree`.
    pub fn monomial(c: &RingElement, degree: usize) -> Self {
        let ring = c.ring();
        let mut coeffs = vec![ring.zero_v(); degree];
        coeffs.push(c.value.clone());
        Self::from_values(ring, coeffs)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.ring
            .wrap(self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero_v()))
    }

    pub fn coeffs(&self) -> Vec<RingElement> {
        self.coeffs.iter().map(|c| self.ring.wrap(c.clone())).collect()
    }

    pub(crate) fn values(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<RingElement> {
        self.coeffs.last().map(|c| self.ring.wrap(c.clone()))
    }

    pub fn constant_term(&self) -> RingElement {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.ring.is_one_v(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(Self::from_values(&self.ring, add_raw(&self.ring, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_values(
            &self.ring,
            self.coeffs.iter().map(|c| self.ring.neg_v(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        Ok(Self::from_values(&self.ring, mul_raw(&self.ring, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &RingElement) -> Result<Self> {
        self.ring.check(c)?;
        Ok(Self::from_values(
            &self.ring,
            self.coeffs.iter().map(|a| self.ring.mul_v(a, &c.value)).collect(),
        ))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = Self::from_values(&self.ring, mul_raw(&self.ring, &acc.coeffs, &self.coeffs));
        }
        acc
    }

    pub fn eval(&self, x: &RingElement) -> Result<RingElement> {
        self.ring.check(x)?;
        let mut acc = self.ring.zero_v();
        for c in self.coeffs.iter().rev() {
            acc = self.ring.add_v(&self.ring.mul_v(&acc, &x.value), c);
        }
        Ok(self.ring.wrap(acc))
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.ring.check_same(&divisor.ring)?;
        let lead = divisor.coeffs.last().ok_or(Error::ZeroInput)?;
        let inv = self
            .ring
            .inv_v(lead)
            .ok_or_else(|| Error::NotUnit(format!("leading coefficient of {divisor}")))?;
        let (q, r) = div_rem_raw(&self.ring, &self.coeffs, &divisor.coeffs, &inv);
        Ok((Self::from_values(&self.ring, q), Self::from_values(&self.ring, r)))
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    /// Leading coefficients are divided exactly, so this also works over the integers.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        self.ring.check_same(&divisor.ring)?;
        if divisor.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(exact_div_raw(&self.ring, &self.coeffs, &divisor.coeffs)
            .map(|q| Self::from_values(&self.ring, q)))
    }

    /// Units of `R[X]`: the constant term is a unit and every other coefficient is nilpotent.
    pub fn is_unit(&self) -> bool {
        match self.coeffs.split_first() {
            None => false,
            Some((a0, rest)) => {
                self.ring.is_unit_v(a0) && rest.iter().all(|c| self.ring.is_nilpotent_v(c))
            }
        }
    }

    /// Nilpotents of `R[X]`: every coefficient is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_nilpotent_v(c))
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        self.is_irreducible_with(Execution::default())
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`. Finite fields only.
    pub fn is_irreducible_with(&self, exec: Execution) -> Result<bool> {
        let elems = self.finite_field_elements()?;
        let deg = self.degree().ok_or(Error::ZeroInput)?;
        if deg == 0 {
            return Err(Error::Precondition(
                "irreducibility needs degree >= 1".into(),
            ));
        }
        for d in 1..=deg / 2 {
            let count = candidate_count(elems.len() as u64, d)?;
            if exec.any(count, |i| {
                rem_is_zero(&self.ring, &self.coeffs, &monic_candidate(&elems, d, i))
            }) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn factor(&self) -> Result<Factorization> {
        self.factor_with(Execution::default())
    }

    /// Complete factorisation over a finite field by repeated smallest-divisor search.
    pub fn factor_with(&self, exec: Execution) -> Result<Factorization> {
        let elems = self.finite_field_elements()?;
        let lead = self.leading().ok_or(Error::ZeroInput)?;
        let mut rest = self.scale(&lead.inverse()?)?;
        let mut factors: Vec<(Polynomial, u32)> = Vec::new();
        while rest.degree().unwrap_or(0) >= 1 {
            let deg = rest.degree().unwrap();
            let mut divisor = None;
            for d in 1..=deg / 2 {
                let count = candidate_count(elems.len() as u64, d)?;
                let hit = exec.find_first(count, |i| {
                    let cand = monic_candidate(&elems, d, i);
                    rem_is_zero(&self.ring, &rest.coeffs, &cand).then_some(cand)
                });
                if let Some(c) = hit {
                    divisor = Some(Self::from_values(&self.ring, c));
                    break;
                }
            }
            let divisor = divisor.unwrap_or_else(|| rest.clone());
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&divisor)?;
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            factors.push((divisor, mult));
        }
        factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Ok(Factorization { unit: lead, factors })
    }

    pub fn inverse_search(&self, degree_bound: usize) -> Result<Option<Polynomial>> {
        self.inverse_search_with(degree_bound, Execution::default())
    }

    /// Exhaustive search for `g` with `self * g = 1` and `deg g <= degree_bound`.
    ///
    /// Coefficients of `g` are assigned from the bottom up; a branch is abandoned as soon
    /// as the product coefficient it fixes is wrong, so the search visits exactly the
    /// prefixes that can still extend to an inverse.
    pub fn inverse_search_with(
        &self,
        degree_bound: usize,
        exec: Execution,
    ) -> Result<Option<Polynomial>> {
        if degree_bound > INVERSE_SEARCH_MAX_DEGREE {
            return Err(Error::Precondition(format!(
                "degree bound {degree_bound} exceeds {INVERSE_SEARCH_MAX_DEGREE}"
            )));
        }
        let elems = self.ring.element_values()?;
        if self.is_zero() {
            return Ok(None);
        }
        let found = exec.find_first(elems.len() as u64, |i| {
            let mut g = vec![elems[i as usize].clone()];
            if !self.product_coeff_matches(&g, 0) {
                return None;
            }
            self.extend_inverse(&elems, &mut g, degree_bound).then_some(g)
        });
        Ok(found.map(|g| Self::from_values(&self.ring, g)))
    }

    fn product_coeff_matches(&self, g: &[Value], k: usize) -> bool {
        let ring = &self.ring;
        let mut acc = ring.zero_v();
        for (j, fj) in self.coeffs.iter().enumerate().take(k + 1) {
            if let Some(gk) = g.get(k - j) {
                acc = ring.add_v(&acc, &ring.mul_v(fj, gk));
            }
        }
        if k == 0 {
            ring.is_one_v(&acc)
        } else {
            ring.is_zero_v(&acc)
        }
    }

    fn extend_inverse(&self, elems: &[Value], g: &mut Vec<Value>, bound: usize) -> bool {
        if g.len() > bound {
            let top = self.coeffs.len() - 1 + bound;
            return (bound + 1..=top).all(|k| self.product_coeff_matches(g, k));
        }
        let k = g.len();
        for e in elems {
            g.push(e.clone());
            if self.product_coeff_matches(g, k) && self.extend_inverse(elems, g, bound) {
                return true;
            }
            g.pop();
        }
        false
    }

    fn finite_field_elements(&self) -> Result<Vec<Value>> {
        if !self.ring.is_field() {
            return Err(Error::UnsupportedRing(format!(
                "{} is not a finite field",
                self.ring
            )));
        }
        self.ring.element_values()
    }
}

/// Order used for factor lists: degree, then coefficients from the constant term up.
pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

fn candidate_count(q: u64, d: usize) -> Result<u64> {
    q.checked_pow(d as u32)
        .filter(|&c| c <= SEARCH_CEILING)
        .ok_or_else(|| Error::CeilingExceeded(format!("{q}^{d} candidate divisors")))
}

/// The `index`-th monic polynomial of degree `d`; `index` read in base `|elems|`,
/// constant coefficient least significant.
pub(crate) fn monic_candidate(elems: &[Value], d: usize, mut index: u64) -> Vec<Value> {
    let q = elems.len() as u64;
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(elems[(index % q) as usize].clone());
        index /= q;
    }
    c.push(elems[1].clone());
    c
}

pub(crate) fn add_raw(ring: &RingDescriptor, a: &[Value], b: &[Value]) -> Vec<Value> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = ring.add_v(o, s);
    }
    out
}

pub(crate) fn mul_raw(ring: &RingDescriptor, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero_v(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero_v(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add_v(&out[i + j], &ring.mul_v(x, y));
        }
    }
    out
}

fn trim(ring: &RingDescriptor, mut v: Vec<Value>) -> Vec<Value> {
    while v.last().is_some_and(|c| ring.is_zero_v(c)) {
        v.pop();
    }
    v
}

pub(crate) fn div_rem_raw(
    ring: &RingDescriptor,
    a: &[Value],
    d: &[Value],
    lead_inv: &Value,
) -> (Vec<Value>, Vec<Value>) {
    let mut r = trim(ring, a.to_vec());
    let dd = d.len() - 1;
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![ring.zero_v(); r.len() - dd];
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let c = ring.mul_v(r.last().unwrap(), lead_inv);
        for (i, di) in d.iter().enumerate() {
            r[shift + i] = ring.sub_v(&r[shift + i], &ring.mul_v(&c, di));
        }
        q[shift] = c;
        r = trim(ring, r);
    }
    (q, r)
}

fn rem_is_zero(ring: &RingDescriptor, a: &[Value], monic: &[Value]) -> bool {
    div_rem_raw(ring, a, monic, &ring.one_v()).1.is_empty()
}

/// Quotient when `d` divides `a` exactly, dividing leading coefficients exactly at each step.
pub(crate) fn exact_div_raw(ring: &RingDescriptor, a: &[Value], d: &[Value]) -> Option<Vec<Value>> {
    let mut r = trim(ring, a.to_vec());
    let d = trim(ring, d.to_vec());
    let dd = d.len().checked_sub(1)?;
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() <= dd {
        return None;
    }
    let mut q = vec![ring.zero_v(); r.len() - dd];
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let c = ring.div_exact_v(r.last().unwrap(), d.last().unwrap())?;
        for (i, di) in d.iter().enumerate() {
            r[shift + i] = ring.sub_v(&r[shift + i], &ring.mul_v(&c, di));
        }
        // Over non-domains the leading term may survive a subtraction; bail out.
        if r.len() - 1 == shift + dd && !ring.is_zero_v(&r[shift + dd]) {
            return None;
        }
        q[shift] = c;
        r = trim(ring, r);
    }
    r.is_empty().then_some(q)
}

impl fmt::Display for Polynomial {
    /// `F5:[1,0,2]` for `1 + 2X^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}:[", self.ring)?;
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.ring.fmt_v(c))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse the bracketed coefficient list of `ring:[c0,c1,...]` after the ring prefix.
pub(crate) fn parse_coeff_list(ring: &RingDescriptor, body: &str) -> Result<Vec<Value>> {
    let inner = body
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("expected [c0,c1,...], got `{body}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|c| ring.parse_v(c)).collect()
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ring, body) = s
            .split_once(":[")
            .ok_or_else(|| Error::parse(format!("expected ring:[c0,...], got `{s}`")))?;
        let ring: RingDescriptor = ring.parse()?;
        let coeffs = parse_coeff_list(&ring, &format!("[{body}"))?;
        Ok(Self::from_values(&ring, coeffs))
    }
}
