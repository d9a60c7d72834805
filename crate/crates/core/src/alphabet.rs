//! Letter/value codec with the cyclic "infinite alphabet" lift: a letter with index `i`
//! may be sent as any `i + cycle * k`.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, u64>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::param("alphabet", "must contain at least one symbol"));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i as u64).is_some() {
                return Err(Error::param("alphabet", format!("symbol {c:?} repeated")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `A` to `Z`.
    pub fn latin() -> Self {
        Self::new('A'..='Z').unwrap()
    }

    /// The first `n` of `A..Z` followed by `a..z`, digits and a few marks; `n <= 67`.
    pub fn of_len(n: usize) -> Result<Self> {
        let pool: Vec<char> = ('A'..='Z')
            .chain('a'..='z')
            .chain('0'..='9')
            .chain(" .,?!".chars())
            .collect();
        if n == 0 || n > pool.len() {
            return Err(Error::OutOfRange {
                value: n.to_string(),
                range: format!("[1, {}]", pool.len()),
            });
        }
        Self::new(pool[..n].iter().copied())
    }

    /// One symbol per line; blank lines are skipped and a lone space is written as `\s`.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.is_empty() {
                continue;
            }
            let sym = if line == "\\s" { ' ' } else {
                let mut chars = line.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => c,
                    _ => {
                        return Err(Error::parse(format!(
                            "line {}: expected one symbol, got `{line}`",
                            n + 1
                        )))
                    }
                }
            };
            symbols.push(sym);
        }
        Self::new(symbols)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::parse(format!("{}: {e}", path.display())))?;
        Self::parse_file(&text)
    }

    pub fn to_file(&self) -> String {
        self.symbols
            .iter()
            .map(|&c| if c == ' ' { "\\s\n".to_string() } else { format!("{c}\n") })
            .collect()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn cycle(&self) -> u64 {
        self.symbols.len() as u64
    }

    pub fn is_prime_length(&self) -> bool {
        is_prime(self.cycle())
    }

    pub fn index_of(&self, c: char) -> Result<u64> {
        self.index.get(&c).copied().ok_or(Error::UnknownSymbol(c))
    }

    pub fn symbol(&self, value: u64) -> char {
        self.symbols[(value % self.cycle()) as usize]
    }

    /// Letter indices, no lift.
    pub fn indices(&self, text: &str) -> Result<Vec<u64>> {
        text.chars().map(|c| self.index_of(c)).collect()
    }

    /// `value_i = index(letter_i) + cycle * k_i`, with `k_i` from the picker.
    pub fn encode(&self, text: &str, picker: &mut Picker) -> Result<Vec<BigUint>> {
        let cycle = self.cycle();
        let ceiling = picker.ceiling.unwrap_or(cycle << 16);
        if ceiling < cycle {
            return Err(Error::param(
                "ceiling",
                format!("{ceiling} is below the alphabet length {cycle}"),
            ));
        }
        let max_k = (ceiling - 1) / cycle;
        let mut out = Vec::new();
        for (pos, c) in text.chars().enumerate() {
            let i = self.index_of(c)?;
            let max_k = if i + max_k * cycle < ceiling { max_k } else { max_k - 1 };
            let k = picker.pick(pos, max_k)?;
            out.push(BigUint::from(i) + BigUint::from(cycle) * BigUint::from(k));
        }
        Ok(out)
    }

    pub fn decode(&self, values: &[BigUint]) -> String {
        let cycle = BigUint::from(self.cycle());
        values
            .iter()
            .map(|v| self.symbol((v % &cycle).to_u64().unwrap()))
            .collect()
    }

    pub fn decode_u64(&self, values: &[u64]) -> String {
        values.iter().map(|&v| self.symbol(v)).collect()
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::latin()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.symbols.iter().collect::<String>())
    }
}

/// Chooses the cycle index `k` for each letter.
pub struct Picker {
    kind: PickerKind,
    /// Values stay strictly below this; defaults to `cycle * 2^16`.
    pub ceiling: Option<u64>,
}

enum PickerKind {
    Zero,
    Fixed(Vec<u64>),
    Seeded(ChaCha8Rng),
}

impl Picker {
    /// Always `k = 0`: the plain finite alphabet.
    pub fn zero() -> Self {
        Picker { kind: PickerKind::Zero, ceiling: None }
    }

    /// `k_i = ks[i]`; the list must cover the text.
    pub fn fixed(ks: Vec<u64>) -> Self {
        Picker { kind: PickerKind::Fixed(ks), ceiling: None }
    }

    pub fn seeded(seed: u64) -> Self {
        Picker {
            kind: PickerKind::Seeded(ChaCha8Rng::seed_from_u64(seed)),
            ceiling: None,
        }
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Self {
        self.ceiling = Some(ceiling);
        self
    }

    fn pick(&mut self, pos: usize, max_k: u64) -> Result<u64> {
        let k = match &mut self.kind {
            PickerKind::Zero => 0,
            PickerKind::Fixed(ks) => *ks.get(pos).ok_or_else(|| {
                Error::param("picker", format!("no representative index for letter {pos}"))
            })?,
            PickerKind::Seeded(rng) => rng.gen_range(0..=max_k),
        };
        if k > max_k {
            return Err(Error::OutOfRange {
                value: k.to_string(),
                range: format!("[0, {max_k}] under the value ceiling"),
            });
        }
        Ok(k)
    }
}

#[cfg(test)]
fn all_below(values: &[BigUint], bound: &BigUint) -> bool {
    values.iter().all(|v| v < bound)
}
