//! Letter ciphers closed under two operations, and polynomials whose coefficients are
//! letter ciphers.
//!
//! * `S + T` is composition: encrypt with `S`, then encrypt every output letter with `T`.
//! * `S * T` is concatenation: the outputs of `S` and `T` on the same letter, side by side.
//!
//! A [`CipherPolynomial`] multiplies like an ordinary polynomial with those two
//! operations; the coefficient of `X^i` encrypts every letter at a position `≡ i`
//! modulo the number of coefficients.

use std::fmt;

use rand::Rng;

use super::{field, record_fields};
use crate::arith::{gcd, inv_mod};
use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CipherSystem {
    /// `x ↦ a x + b (mod s)`, `gcd(a, s) = 1`.
    Affine { a: u64, b: u64, s: u64 },
    Sum(Box<CipherSystem>, Box<CipherSystem>),
    Product(Box<CipherSystem>, Box<CipherSystem>),
}

impl CipherSystem {
    pub fn affine(a: u64, b: u64, s: u64) -> Result<Self> {
        if s < 2 {
            return Err(Error::param("s", format!("alphabet size must be at least 2, got {s}")));
        }
        let (a, b) = (a % s, b % s);
        if gcd(a, s) != 1 {
            return Err(Error::NotCoprime {
                a: a.to_string(),
                b: s.to_string(),
                gcd: gcd(a, s).to_string(),
            });
        }
        Ok(CipherSystem::Affine { a, b, s })
    }

    pub fn identity(s: u64) -> Result<Self> {
        Self::affine(1, 0, s)
    }

    /// Composition `self + other`; `other` must read the letters `self` writes.
    pub fn sum(&self, other: &CipherSystem) -> Result<Self> {
        if self.output_size() != other.input_size() {
            return Err(Error::AlphabetMismatch(format!(
                "{self} writes {} letters, {other} reads {}",
                self.output_size(),
                other.input_size()
            )));
        }
        Ok(CipherSystem::Sum(Box::new(self.clone()), Box::new(other.clone())))
    }

    /// Concatenation `self * other`; both sides must share input and output alphabets.
    pub fn product(&self, other: &CipherSystem) -> Result<Self> {
        if self.input_size() != other.input_size() || self.output_size() != other.output_size() {
            return Err(Error::AlphabetMismatch(format!(
                "{self} and {other} act on different alphabets"
            )));
        }
        Ok(CipherSystem::Product(Box::new(self.clone()), Box::new(other.clone())))
    }

    pub fn input_size(&self) -> u64 {
        match self {
            CipherSystem::Affine { s, .. } => *s,
            CipherSystem::Sum(l, _) | CipherSystem::Product(l, _) => l.input_size(),
        }
    }

    pub fn output_size(&self) -> u64 {
        match self {
            CipherSystem::Affine { s, .. } => *s,
            CipherSystem::Sum(_, r) | CipherSystem::Product(r, _) => r.output_size(),
        }
    }

    /// Output letters per input letter.
    pub fn arity(&self) -> usize {
        match self {
            CipherSystem::Affine { .. } => 1,
            CipherSystem::Sum(l, r) => l.arity() * r.arity(),
            CipherSystem::Product(l, r) => l.arity() + r.arity(),
        }
    }

    pub fn encrypt(&self, x: u64) -> Result<Vec<u64>> {
        if x >= self.input_size() {
            return Err(Error::OutOfRange {
                value: x.to_string(),
                range: format!("[0, {})", self.input_size()),
            });
        }
        let mut out = Vec::with_capacity(self.arity());
        self.encrypt_into(x, &mut out);
        Ok(out)
    }

    fn encrypt_into(&self, x: u64, out: &mut Vec<u64>) {
        match self {
            CipherSystem::Affine { a, b, s } => out.push(((*a as u128 * x as u128 + *b as u128) % *s as u128) as u64),
            CipherSystem::Sum(l, r) => {
                let mut mid = Vec::with_capacity(l.arity());
                l.encrypt_into(x, &mut mid);
                for y in mid {
                    r.encrypt_into(y, out);
                }
            }
            CipherSystem::Product(l, r) => {
                l.encrypt_into(x, out);
                r.encrypt_into(x, out);
            }
        }
    }

    /// Inverts [`encrypt`](Self::encrypt); `letters` must have exactly `arity()` entries.
    pub fn decrypt(&self, letters: &[u64]) -> Result<u64> {
        if letters.len() != self.arity() {
            return Err(Error::Ciphertext(format!(
                "{self} expects {} letters, got {}",
                self.arity(),
                letters.len()
            )));
        }
        match self {
            CipherSystem::Affine { a, b, s } => {
                let y = letters[0];
                if y >= *s {
                    return Err(Error::Ciphertext(format!("letter {y} outside [0, {s})")));
                }
                let a_inv = inv_mod(*a, *s).expect("a is coprime to s");
                let shifted = (y + s - b) % s;
                Ok((a_inv as u128 * shifted as u128 % *s as u128) as u64)
            }
            CipherSystem::Sum(l, r) => {
                let mid = letters
                    .chunks(r.arity())
                    .map(|c| r.decrypt(c))
                    .collect::<Result<Vec<_>>>()?;
                l.decrypt(&mid)
            }
            CipherSystem::Product(l, r) => {
                let (lx, rx) = letters.split_at(l.arity());
                let (x, y) = (l.decrypt(lx)?, r.decrypt(rx)?);
                if x != y {
                    return Err(Error::Ciphertext(format!(
                        "halves of {self} disagree: {x} vs {y}"
                    )));
                }
                Ok(x)
            }
        }
    }

    pub fn random_affine<R: Rng>(rng: &mut R, s: u64) -> Self {
        loop {
            let a = rng.gen_range(1..s);
            if gcd(a, s) == 1 {
                return CipherSystem::Affine { a, b: rng.gen_range(0..s), s };
            }
        }
    }

    /// A random tree of sums and products of depth at most `depth`.
    pub fn random_tree<R: Rng>(rng: &mut R, s: u64, depth: u32) -> Self {
        if depth == 0 || rng.gen_bool(0.3) {
            return Self::random_affine(rng, s);
        }
        let l = Box::new(Self::random_tree(rng, s, depth - 1));
        let r = Box::new(Self::random_tree(rng, s, depth - 1));
        if rng.gen_bool(0.5) {
            CipherSystem::Sum(l, r)
        } else {
            CipherSystem::Product(l, r)
        }
    }
}

impl fmt::Display for CipherSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CipherSystem::Affine { a, b, s } => write!(f, "aff({a},{b};{s})"),
            CipherSystem::Sum(l, r) => write!(f, "({l}+{r})"),
            CipherSystem::Product(l, r) => write!(f, "({l}*{r})"),
        }
    }
}

impl std::str::FromStr for CipherSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: compact.as_bytes(), pos: 0 };
        let sys = p.system()?;
        if p.pos != p.s.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(sys)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, what: &str) -> Error {
        Error::parse(format!("cipher system: {what} at byte {}", self.pos))
    }

    fn eat(&mut self, tok: &str) -> Result<()> {
        if self.s[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{tok}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.fail("expected a number"))
    }

    fn system(&mut self) -> Result<CipherSystem> {
        if self.eat("aff(").is_ok() {
            let a = self.number()?;
            self.eat(",")?;
            let b = self.number()?;
            self.eat(";")?;
            let s = self.number()?;
            self.eat(")")?;
            return CipherSystem::affine(a, b, s);
        }
        self.eat("(")?;
        let l = self.system()?;
        let op = *self.s.get(self.pos).ok_or_else(|| self.fail("unexpected end"))?;
        self.pos += 1;
        let r = self.system()?;
        self.eat(")")?;
        match op {
            b'+' => l.sum(&r),
            b'*' => l.product(&r),
            _ => Err(self.fail("expected `+` or `*`")),
        }
    }
}

/// `A_0 + A_1 X + ... + A_d X^d` with letter-cipher coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherPolynomial {
    coeffs: Vec<CipherSystem>,
}

const HEAD: &str = "compcipher v1";

impl CipherPolynomial {
    /// All coefficients must act on one alphabet.
    pub fn new(coeffs: Vec<CipherSystem>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::param("coeffs", "need at least one coefficient"))?;
        let s = first.input_size();
        if let Some(bad) = coeffs.iter().find(|c| c.input_size() != s || c.output_size() != s) {
            return Err(Error::AlphabetMismatch(format!("{bad} does not act on {s} letters")));
        }
        Ok(CipherPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[CipherSystem] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn alphabet_size(&self) -> u64 {
        self.coeffs[0].input_size()
    }

    /// Letters of ciphertext per block of `degree() + 1` plaintext letters.
    pub fn block_arity(&self) -> usize {
        self.coeffs.iter().map(CipherSystem::arity).sum()
    }

    /// The coefficient of `X^m` is `(A_0 B_m) + (A_1 B_{m-1}) + ...`, summed left to right
    /// in ascending index of `A`.
    pub fn mul(&self, other: &CipherPolynomial) -> Result<Self> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(Error::AlphabetMismatch(format!(
                "alphabets of sizes {} and {}",
                self.alphabet_size(),
                other.alphabet_size()
            )));
        }
        let (d, e) = (self.degree(), other.degree());
        let mut coeffs = Vec::with_capacity(d + e + 1);
        for m in 0..=d + e {
            let mut acc: Option<CipherSystem> = None;
            for i in m.saturating_sub(e)..=m.min(d) {
                let term = self.coeffs[i].product(&other.coeffs[m - i])?;
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.sum(&term)?,
                });
            }
            coeffs.push(acc.expect("every index has a term"));
        }
        Self::new(coeffs)
    }

    /// The size relation a key pair is meant to satisfy: `deg f = n - 1`, `deg g = n - k`.
    /// Checked on request only; multiplication works for any degrees.
    pub fn degree_rule_holds(f: &CipherPolynomial, g: &CipherPolynomial, n: usize, k: usize) -> bool {
        n >= 1 && k <= n && f.degree() == n - 1 && g.degree() == n - k
    }

    pub fn encrypt(&self, text: &[u64]) -> Result<Vec<u64>> {
        self.encrypt_with(text, Execution::Sequential)
    }

    /// The letter at position `pos` goes through coefficient `pos mod (degree + 1)`.
    pub fn encrypt_with(&self, text: &[u64], exec: Execution) -> Result<Vec<u64>> {
        let l = self.coeffs.len();
        let idx: Vec<usize> = (0..text.len()).collect();
        let parts = exec.try_map(&idx, |&pos| self.coeffs[pos % l].encrypt(text[pos]))?;
        Ok(parts.concat())
    }

    pub fn decrypt(&self, cipher: &[u64]) -> Result<Vec<u64>> {
        let l = self.coeffs.len();
        let mut out = Vec::new();
        let mut rest = cipher;
        while !rest.is_empty() {
            let c = &self.coeffs[out.len() % l];
            if rest.len() < c.arity() {
                return Err(Error::Ciphertext(format!(
                    "{} trailing letters, coefficient {} needs {}",
                    rest.len(),
                    out.len() % l,
                    c.arity()
                )));
            }
            let (head, tail) = rest.split_at(c.arity());
            out.push(c.decrypt(head)?);
            rest = tail;
        }
        Ok(out)
    }

    pub fn random<R: Rng>(rng: &mut R, s: u64, degree: usize) -> Self {
        Self::new((0..=degree).map(|_| CipherSystem::random_affine(rng, s)).collect()).unwrap()
    }

    /// Header line then one `C<i>=<system>` line per coefficient.
    pub fn to_key_file(&self) -> String {
        let mut out = format!("{HEAD} S={} DEG={}\n", self.alphabet_size(), self.degree());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("C{i}={c}\n"));
        }
        out
    }

    pub fn from_key_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = record_fields(lines.next().unwrap_or(""), HEAD)?;
        let s: u64 = field(&head, "S")?;
        let deg: usize = field(&head, "DEG")?;
        let mut coeffs = Vec::with_capacity(deg + 1);
        for i in 0..=deg {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(format!("missing coefficient C{i}")))?;
            let body = line
                .strip_prefix(&format!("C{i}="))
                .ok_or_else(|| Error::parse(format!("expected C{i}=..., got `{line}`")))?;
            coeffs.push(body.parse()?);
        }
        if lines.next().is_some() {
            return Err(Error::parse("lines after the last coefficient"));
        }
        let poly = Self::new(coeffs)?;
        if poly.alphabet_size() != s {
            return Err(Error::AlphabetMismatch(format!("header says S={s}")));
        }
        Ok(poly)
    }
}

impl fmt::Display for CipherPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
