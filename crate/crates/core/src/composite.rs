//! Polynomial composites `T_n = A_0 + A_1 X + ... + A_{n-1} X^{n-1} + X^n B[X]`.
//!
//! A [`TowerDescriptor`] fixes the chain `A_0 ⊂ ... ⊂ A_{n-1} ⊂ B`; `n = 1` gives the
//! classic `T = A + X B[X]`. Elements are polynomials over `B` whose low coefficients
//! are checked against their levels when constructed.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poly::{canonical_cmp, Polynomial};
use crate::rings::{Embedding, RingDescriptor, RingElement, Value};

/// Largest `|B|` accepted by the exhaustive searches.
pub const ORACLE_MAX_FIELD: u64 = 9;
/// Largest degree accepted by the exhaustive searches.
pub const ORACLE_MAX_DEGREE: usize = 4;

#[derive(Clone)]
pub struct TowerDescriptor {
    inner: Arc<TowerInner>,
}

struct TowerInner {
    levels: Vec<RingDescriptor>,
    top: RingDescriptor,
    into_top: Vec<Embedding>,
    fields_mode: bool,
}

impl PartialEq for TowerDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.inner.levels == other.inner.levels && self.inner.top == other.inner.top
    }
}

impl Eq for TowerDescriptor {}

impl TowerDescriptor {
    /// `levels = [A_0, ..., A_{n-1}]`, each embedding into the next and into `top`.
    pub fn new(levels: Vec<RingDescriptor>, top: RingDescriptor) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidTower("need at least one level below B".into()));
        }
        let chain: Vec<&RingDescriptor> = levels.iter().chain(std::iter::once(&top)).collect();
        for w in chain.windows(2) {
            Embedding::new(w[0], w[1])
                .map_err(|_| Error::InvalidTower(format!("{} does not embed in {}", w[0], w[1])))?;
        }
        let into_top = levels
            .iter()
            .map(|l| Embedding::new(l, &top))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidTower(e.to_string()))?;
        let fields_mode = top.is_field() && levels.iter().all(|l| l.is_field());
        Ok(TowerDescriptor {
            inner: Arc::new(TowerInner {
                levels,
                top,
                into_top,
                fields_mode,
            }),
        })
    }

    /// `T = A + X B[X]`.
    pub fn simple(a: RingDescriptor, b: RingDescriptor) -> Result<Self> {
        Self::new(vec![a], b)
    }

    pub fn n(&self) -> usize {
        self.inner.levels.len()
    }

    pub fn levels(&self) -> &[RingDescriptor] {
        &self.inner.levels
    }

    pub fn top(&self) -> &RingDescriptor {
        &self.inner.top
    }

    pub fn fields_mode(&self) -> bool {
        self.inner.fields_mode
    }

    fn admits(&self, i: usize, v: &Value) -> bool {
        self.inner
            .into_top
            .get(i)
            .is_none_or(|e| e.contains_v(v))
    }

    /// Whether `f` (over `B`) has every low coefficient in its level.
    pub fn contains(&self, f: &Polynomial) -> bool {
        f.ring() == self.top()
            && f.values()
                .iter()
                .enumerate()
                .all(|(i, c)| self.admits(i, c))
    }

    pub fn element(&self, f: Polynomial) -> Result<CompositeElement> {
        CompositeElement::new(self, f)
    }

    pub fn parse_element(&self, body: &str) -> Result<CompositeElement> {
        let coeffs = crate::poly::parse_coeff_list(self.top(), body)?;
        self.element(Polynomial::from_values(self.top(), coeffs))
    }

    /// Coefficient choices for `X^i`, as values of `B`.
    fn choices(&self) -> Result<Vec<Vec<Value>>> {
        let mut out = Vec::with_capacity(self.n() + 1);
        for e in &self.inner.into_top {
            out.push(e.image_values()?);
        }
        out.push(self.top().element_values()?);
        Ok(out)
    }

    fn require_fields(&self) -> Result<()> {
        if self.fields_mode() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing(format!("{self} is not a tower of fields")))
        }
    }
}

impl fmt::Display for TowerDescriptor {
    /// `F2<F4`, `F2<F2<F4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.levels() {
            write!(f, "{l:#}<")?;
        }
        write!(f, "{:#}", self.top())
    }
}

impl fmt::Debug for TowerDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for TowerDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rings = s
            .split('<')
            .map(|r| r.trim().parse::<RingDescriptor>())
            .collect::<Result<Vec<_>>>()?;
        if rings.len() < 2 {
            return Err(Error::InvalidTower(format!("`{s}` needs at least A<B")));
        }
        let top = rings.pop().unwrap();
        Self::new(rings, top)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CompositeElement {
    tower: TowerDescriptor,
    poly: Polynomial,
}

/// A descending chain `f_0, f_1 | f_0, f_2 | f_1, ...` of proper divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorChain {
    pub links: Vec<CompositeElement>,
    /// The last link has no proper divisor, so the chain cannot be extended.
    pub terminated: bool,
}

impl CompositeElement {
    pub fn new(tower: &TowerDescriptor, poly: Polynomial) -> Result<Self> {
        tower.top().check_same(poly.ring())?;
        if let Some((i, c)) = poly
            .values()
            .iter()
            .enumerate()
            .find(|(i, c)| !tower.admits(*i, c))
        {
            return Err(Error::NotMember(format!(
                "coefficient {} of X^{i} is not in {:#}",
                tower.top().fmt_v(c),
                tower.levels()[i]
            )));
        }
        Ok(CompositeElement {
            tower: tower.clone(),
            poly,
        })
    }

    fn wrap(&self, poly: Polynomial) -> Self {
        CompositeElement {
            tower: self.tower.clone(),
            poly,
        }
    }

    pub fn tower(&self) -> &TowerDescriptor {
        &self.tower
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check_tower(&self, other: &Self) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.tower.to_string(),
                right: other.tower.to_string(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.wrap(self.poly.add(&other.poly)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.wrap(self.poly.sub(&other.poly)?))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.poly.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.wrap(self.poly.mul(&other.poly)?))
    }

    /// Constant term is a unit of `A_0` and every other coefficient is nilpotent.
    pub fn is_unit(&self) -> bool {
        let Some(a0) = self.quotient_eval().ok() else {
            return false;
        };
        if self.tower.fields_mode() {
            return self.degree() == Some(0);
        }
        a0.is_unit() && self.poly.coeffs()[1..].iter().all(|c| c.is_nilpotent())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.poly.is_nilpotent()
    }

    /// `f(0)` as an element of `A_0`: the quotient map `T_n -> T_n/(X) = A_0`.
    pub fn quotient_eval(&self) -> Result<RingElement> {
        let c = self.poly.constant_term();
        self.tower.inner.into_top[0]
            .preimage(&c)
            .ok_or_else(|| Error::NotMember(format!("{c} is not in {:#}", self.tower.levels()[0])))
    }

    fn require_nonzero_nonunit(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroInput)
        } else if self.is_unit() {
            Err(Error::UnitInput)
        } else {
            Ok(())
        }
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        self.is_irreducible_with(Execution::default())
    }

    /// For `T = A + X B[X]` this is irreducibility in `B[X]`. For `n >= 2` a factorisation
    /// in `B[X]` need not be realisable inside `T_n`, so each split of the `B[X]` factors
    /// is tried against every rescaling by a unit of `B`.
    pub fn is_irreducible_with(&self, exec: Execution) -> Result<bool> {
        self.tower.require_fields()?;
        self.require_nonzero_nonunit()?;
        if self.tower.n() == 1 {
            return self.poly.is_irreducible_with(exec);
        }
        Ok(self.lift_factor(exec)?.is_none())
    }

    /// A factorisation `f = g h` in `T_n` with both factors nonunits, built from the
    /// factorisation of `f` in `B[X]`.
    fn lift_factor(&self, exec: Execution) -> Result<Option<(Self, Self)>> {
        let fx = self.poly.factor_with(exec)?;
        let ring = self.tower.top();
        let scalars: Vec<RingElement> = ring
            .elements()?
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        let radix: Vec<u64> = fx.factors.iter().map(|(_, m)| *m as u64 + 1).collect();
        let total: u64 = radix.iter().product();
        let deg = self.degree().unwrap();
        for code in 0..total {
            let mut g = Polynomial::one(ring);
            let mut rest = code;
            for ((p, _), r) in fx.factors.iter().zip(&radix) {
                g = g.mul(&p.pow((rest % r) as u32))?;
                rest /= r;
            }
            let dg = g.degree().unwrap();
            if dg == 0 || dg == deg {
                continue;
            }
            let h = self.poly.div_rem(&g)?.0;
            for s in &scalars {
                let gs = g.scale(s)?;
                let hs = h.scale(&s.inverse()?)?;
                if self.tower.contains(&gs) && self.tower.contains(&hs) {
                    return Ok(Some((self.wrap(gs), self.wrap(hs))));
                }
            }
        }
        Ok(None)
    }

    fn check_oracle_size(&self) -> Result<()> {
        self.tower.require_fields()?;
        let q = self.tower.top().order().unwrap_or(u64::MAX);
        let d = self.degree().unwrap_or(0);
        if q > ORACLE_MAX_FIELD || d > ORACLE_MAX_DEGREE {
            return Err(Error::CeilingExceeded(format!(
                "exhaustive search needs |B| <= {ORACLE_MAX_FIELD} and degree <= {ORACLE_MAX_DEGREE}, got |B| = {q}, degree {d}"
            )));
        }
        Ok(())
    }

    /// First `g` of exact degree `d` (enumeration order) with `f = g h`, `h` in `T_n`.
    fn divisor_of_degree(&self, choices: &[Vec<Value>], d: usize, exec: Execution) -> Option<Self> {
        let ring = self.tower.top();
        let pick = |i: usize| &choices[i.min(choices.len() - 1)];
        let lead: Vec<&Value> = pick(d).iter().filter(|v| !ring.is_zero_v(v)).collect();
        let count = (0..d).map(|i| pick(i).len() as u64).product::<u64>() * lead.len() as u64;
        exec.find_first(count, |mut idx| {
            let mut g = Vec::with_capacity(d + 1);
            for i in 0..d {
                let c = pick(i);
                g.push(c[(idx % c.len() as u64) as usize].clone());
                idx /= c.len() as u64;
            }
            g.push(lead[idx as usize].clone());
            let g = Polynomial::from_values(ring, g);
            let (h, r) = self.poly.div_rem(&g).ok()?;
            (r.is_zero() && self.tower.contains(&h) && g.mul(&h).ok()? == self.poly)
                .then(|| self.wrap(g))
        })
    }

    pub fn factor_search_oracle(&self) -> Result<bool> {
        self.factor_search_oracle_with(Execution::default())
    }

    /// Exhaustive search for `f = g h` with `g, h` nonunits of `T_n`. Every candidate `g`
    /// of degree `1..deg f` is enumerated coefficient by coefficient; `h` is the quotient.
    pub fn factor_search_oracle_with(&self, exec: Execution) -> Result<bool> {
        self.require_nonzero_nonunit()?;
        self.check_oracle_size()?;
        let choices = self.tower.choices()?;
        let deg = self.degree().unwrap();
        Ok((1..deg).any(|d| self.divisor_of_degree(&choices, d, exec).is_some()))
    }

    pub fn atomize(&self) -> Result<Vec<Self>> {
        self.atomize_with(Execution::default())
    }

    /// Factorisation into atoms: atoms with zero constant term first, then atoms
    /// with a nonzero constant term.
    pub fn atomize_with(&self, exec: Execution) -> Result<Vec<Self>> {
        self.tower.require_fields()?;
        self.require_nonzero_nonunit()?;
        if self.tower.n() == 1 {
            return self.atomize_simple(exec);
        }
        let mut atoms = Vec::new();
        self.atomize_rec(exec, &mut atoms)?;
        atoms.sort_by_key(|a| !a.poly.constant_term().is_zero());
        Ok(atoms)
    }

    fn atomize_rec(&self, exec: Execution, out: &mut Vec<Self>) -> Result<()> {
        match self.lift_factor(exec)? {
            None => out.push(self.clone()),
            Some((g, h)) => {
                g.atomize_rec(exec, out)?;
                h.atomize_rec(exec, out)?;
            }
        }
        Ok(())
    }

    /// `f = c X^r F` with `F(0) = 1`: the monomial splits into `r` linear atoms, and
    /// `F`'s irreducible factors are normalised to constant term 1.
    fn atomize_simple(&self, exec: Execution) -> Result<Vec<Self>> {
        let ring = self.tower.top();
        let r = self.poly.values().iter().take_while(|c| ring.is_zero_v(c)).count();
        let rest = Polynomial::from_values(ring, self.poly.values()[r..].to_vec());
        let c = rest.constant_term();

        let mut tail = Vec::new();
        if rest.degree().unwrap() > 0 {
            for (p, m) in rest.factor_with(exec)?.factors {
                let q = p.scale(&p.constant_term().inverse()?)?;
                tail.extend(std::iter::repeat_n(q, m as usize));
            }
        }
        tail.sort_by(canonical_cmp);

        let x = Polynomial::x(ring);
        let mut atoms = Vec::new();
        match r {
            0 => tail[0] = tail[0].scale(&c)?,
            1 => atoms.push(x.scale(&c)?),
            _ => {
                let g = match ring.generator() {
                    Some(t) if ring != &self.tower.levels()[0] => t,
                    _ => ring.one(),
                };
                atoms.push(x.scale(&g)?);
                atoms.extend(std::iter::repeat_n(x.clone(), r - 2));
                atoms.push(x.scale(&c.mul(&g.inverse()?)?)?);
            }
        }
        atoms.extend(tail);
        atoms
            .into_iter()
            .map(|p| CompositeElement::new(&self.tower, p))
            .collect()
    }

    pub fn divisor_chain(&self, max_steps: usize) -> Result<DivisorChain> {
        self.divisor_chain_with(max_steps, Execution::default())
    }

    /// Repeatedly replaces the current link by its highest-degree proper divisor
    /// (first in enumeration order) until none exists or `max_steps` links are held.
    pub fn divisor_chain_with(&self, max_steps: usize, exec: Execution) -> Result<DivisorChain> {
        self.require_nonzero_nonunit()?;
        self.check_oracle_size()?;
        if max_steps == 0 {
            return Err(Error::Precondition("max_steps must be at least 1".into()));
        }
        let choices = self.tower.choices()?;
        let mut links = vec![self.clone()];
        loop {
            let cur = links.last().unwrap();
            let deg = cur.degree().unwrap();
            let next = (1..deg)
                .rev()
                .find_map(|d| cur.divisor_of_degree(&choices, d, exec));
            match next {
                None => return Ok(DivisorChain { links, terminated: true }),
                Some(_) if links.len() >= max_steps => {
                    return Ok(DivisorChain { links, terminated: false })
                }
                Some(g) => links.push(g),
            }
        }
    }
}

impl fmt::Display for CompositeElement {
    /// `F2<F4:[1,t]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.poly.to_string();
        let body = &poly[poly.find(":[").unwrap()..];
        write!(f, "{}{}", self.tower, body)
    }
}

impl fmt::Debug for CompositeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CompositeElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tower, body) = s
            .split_once(":[")
            .ok_or_else(|| Error::parse(format!("expected tower:[c0,...], got `{s}`")))?;
        let tower: TowerDescriptor = tower.parse()?;
        tower.parse_element(&format!("[{body}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(s: &str) -> CompositeElement {
        s.parse().unwrap()
    }

    fn tower(s: &str) -> TowerDescriptor {
        s.parse().unwrap()
    }

    fn product(atoms: &[CompositeElement]) -> CompositeElement {
        atoms[1..].iter().fold(atoms[0].clone(), |acc, a| acc.mul(a).unwrap())
    }

    #[test]
    fn membership_examples() {
        let t = tower("F2<F4");
        let b = t.top().clone();
        assert!(t.contains(&"F4:[1,t]".parse().unwrap()));
        assert!(!t.contains(&"F4:[t]".parse().unwrap()));
        assert!(!tower("F2<F2<F4").contains(&"F4:[1,t]".parse().unwrap()));
        assert!(!t.contains(&Polynomial::one(&"F5".parse().unwrap())));
        assert_eq!(c("F2<F4:[0,t]").to_string(), "F2<F4:[0,t]");
        assert_eq!("F2<F4:[t]".parse::<CompositeElement>().unwrap_err().code(), "not-member");
        assert!(t.element(Polynomial::x(&b)).is_ok());
        assert_eq!("F4<F2".parse::<TowerDescriptor>().unwrap_err().code(), "invalid-tower");
    }

    #[test]
    fn unit_examples() {
        assert!(c("F2<F4:[1]").is_unit());
        assert!(!c("F2<F4:[0,1]").is_unit());
        assert!(c("Z/4<Z/4:[1,2]").is_unit());
        assert!(!c("Z/6<Z/6:[1,2]").is_unit());
        assert!(c("Z/4<Z/4:[2,2]").is_nilpotent());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(c("F2<F4:[0,t]").is_irreducible().unwrap());
        assert!(!c("F2<F4:[0,0,1]").is_irreducible().unwrap());
        assert!(c("F2<F4:[1,t]").is_irreducible().unwrap());
        assert_eq!(c("F2<F4:[1]").is_irreducible().unwrap_err(), Error::UnitInput);
        assert_eq!(c("F2<F4:[0]").is_irreducible().unwrap_err(), Error::ZeroInput);
        assert_eq!(
            c("Z/4<Z/4:[0,1]").is_irreducible().unwrap_err().code(),
            "unsupported-ring"
        );
    }

    #[test]
    fn oracle_examples() {
        assert!(c("F2<F4:[0,0,1]").factor_search_oracle().unwrap());
        assert!(!c("F2<F4:[0,t]").factor_search_oracle().unwrap());
        assert_eq!(c("F2<F4:[1]").factor_search_oracle().unwrap_err(), Error::UnitInput);
        assert_eq!(
            c("F2<F16:[0,1]").factor_search_oracle().unwrap_err().code(),
            "ceiling-exceeded"
        );
    }

    #[test]
    fn higher_tower_irreducible_despite_b_factorisation() {
        // t X^2 = (aX)(bX) in B[X], but the X coefficient must come from F2.
        let f = c("F2<F2<F4:[0,0,t]");
        assert!(!f.poly().is_irreducible().unwrap());
        assert!(f.is_irreducible().unwrap());
        assert!(!f.factor_search_oracle().unwrap());
        assert_eq!(f.atomize().unwrap(), vec![f.clone()]);
    }

    #[test]
    fn atomize_examples() {
        let s = |v: Vec<CompositeElement>| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
        assert_eq!(s(c("F2<F4:[0,0,1]").atomize().unwrap()), ["F2<F4:[0,t]", "F2<F4:[0,t+1]"]);
        assert_eq!(s(c("F2<F4:[0,t]").atomize().unwrap()), ["F2<F4:[0,t]"]);
        assert_eq!(s(c("F2<F4:[0,1,1]").atomize().unwrap()), ["F2<F4:[0,1]", "F2<F4:[1,1]"]);
        assert_eq!(c("F2<F4:[1]").atomize().unwrap_err(), Error::UnitInput);
    }

    #[test]
    fn quotient_eval_is_a_surjective_homomorphism() {
        assert_eq!(c("F2<F4:[1,t]").quotient_eval().unwrap().to_string(), "1");
        assert!(c("F2<F4:[0]").quotient_eval().unwrap().is_zero());
        let t = tower("F3<F9");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = t.top().element_values().unwrap();
        let a = t.choices().unwrap()[0].clone();
        let random = |rng: &mut ChaCha8Rng| {
            let mut v = vec![a[rng.gen_range(0..a.len())].clone()];
            v.extend((0..3).map(|_| b[rng.gen_range(0..b.len())].clone()));
            t.element(Polynomial::from_values(t.top(), v)).unwrap()
        };
        for _ in 0..500 {
            let (f, g) = (random(&mut rng), random(&mut rng));
            let (ef, eg) = (f.quotient_eval().unwrap(), g.quotient_eval().unwrap());
            assert_eq!(f.add(&g).unwrap().quotient_eval().unwrap(), ef.add(&eg).unwrap());
            assert_eq!(f.mul(&g).unwrap().quotient_eval().unwrap(), ef.mul(&eg).unwrap());
        }
        let hit: std::collections::HashSet<_> = t.levels()[0]
            .elements()
            .unwrap()
            .into_iter()
            .map(|x| {
                let p = Polynomial::constant(&x.embed_into(t.top()).unwrap());
                t.element(p).unwrap().quotient_eval().unwrap()
            })
            .collect();
        assert_eq!(hit.len(), 3);
    }

    #[test]
    fn divisor_chain_examples() {
        let chain = c("F2<F4:[0,0,0,1]").divisor_chain(10).unwrap();
        assert!(chain.terminated);
        assert_eq!(chain.links.len(), 3);
        assert_eq!(chain.links[2].degree(), Some(1));
        assert!(chain.links[2].poly().constant_term().is_zero());

        let chain = c("F2<F4:[1,1]").divisor_chain(10).unwrap();
        assert!(chain.terminated && chain.links.len() == 1);

        let cut = c("F2<F4:[0,0,0,1]").divisor_chain(2).unwrap();
        assert!(!cut.terminated && cut.links.len() == 2);
        assert_eq!(c("F2<F4:[1]").divisor_chain(3).unwrap_err(), Error::UnitInput);
    }

    fn all_elements(t: &TowerDescriptor, max_deg: usize) -> Vec<CompositeElement> {
        let choices = t.choices().unwrap();
        let mut out = Vec::new();
        let mut stack = vec![Vec::<Value>::new()];
        while let Some(prefix) = stack.pop() {
            let f = Polynomial::from_values(t.top(), prefix.clone());
            if (f.degree() == Some(prefix.len().saturating_sub(1)) || prefix.is_empty())
                && !prefix.is_empty() {
                    out.push(t.element(f).unwrap());
                }
            if prefix.len() <= max_deg {
                for v in &choices[prefix.len().min(choices.len() - 1)] {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    stack.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn theorem_matches_oracle_on_every_small_tower() {
        for name in ["F2<F4", "F2<F2<F4", "F3<F9", "F2<F2", "F3<F3<F9"] {
            let t = tower(name);
            for f in all_elements(&t, 3) {
                if f.is_unit() {
                    continue;
                }
                assert_eq!(
                    f.is_irreducible().unwrap(),
                    !f.factor_search_oracle().unwrap(),
                    "{f}"
                );
            }
        }
    }

    #[test]
    fn atoms_reassemble_and_are_irreducible() {
        for name in ["F2<F4", "F2<F2<F4", "F3<F9"] {
            let t = tower(name);
            for f in all_elements(&t, 3) {
                if f.is_unit() {
                    continue;
                }
                let atoms = f.atomize().unwrap();
                assert_eq!(product(&atoms), f, "{f}");
                for a in &atoms {
                    assert!(a.is_irreducible().unwrap(), "{a} from {f}");
                }
            }
        }
    }

    #[test]
    fn strategies_agree_on_search() {
        let f = c("F3<F9:[1,0,t,1]");
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(
                f.divisor_chain_with(5, exec).unwrap(),
                f.divisor_chain_with(5, Execution::Sequential).unwrap()
            );
        }
    }
}
