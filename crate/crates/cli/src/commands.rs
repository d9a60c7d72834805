use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use polycomp::ciphers::{format_values, parse_values};
use polycomp::keyexchange::{
    replay_composite, replay_dh, run_composite_agreement, run_dh, run_dh_with_secrets, Protocol,
    Transcript,
};
use polycomp::{
    Alphabet, CipherPolynomial, CipherSystem, CompositeElement, DhParams, FractionalKey,
    MonoidCipherKey, MonoidDomainElement, NumericalMonoid, Picker, Polynomial, PrincipalIdeal,
    RingDescriptor, RsaIdealKey, ZoneKey,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::*;

pub enum CliError {
    Domain(polycomp::Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &str {
        match self {
            CliError::Domain(e) => e.code(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<polycomp::Error> for CliError {
    fn from(e: polycomp::Error) -> Self {
        CliError::Domain(e)
    }
}

type Res<T> = Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }

    fn plain(text: impl Into<String>) -> Self {
        let text = text.into();
        let json = json!({ "result": text });
        Output { text, json }
    }

    fn flag(b: bool) -> Self {
        Output::new(b.to_string(), json!({ "result": b }))
    }

    pub fn text_block(&self) -> String {
        if self.text.ends_with('\n') {
            self.text.clone()
        } else {
            format!("{}\n", self.text)
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes a key file when `path` is given; the key text is the output either way.
fn emit_key(path: &Option<std::path::PathBuf>, text: String) -> Res<Output> {
    if let Some(p) = path {
        fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(Output::new(text.clone(), json!({ "key": text })))
}

fn ideal(s: &str) -> Res<PrincipalIdeal> {
    Ok(s.parse()?)
}

fn values_u64(s: &str) -> Res<Vec<u64>> {
    Ok(parse_values(&s.replace(',', " "))?)
}

fn values_big(s: &str) -> Res<Vec<BigUint>> {
    Ok(parse_values(&s.replace(',', " "))?)
}

fn alphabet(path: &Option<std::path::PathBuf>) -> Res<Alphabet> {
    match path {
        Some(p) => Ok(Alphabet::load(p)?),
        None => Ok(Alphabet::latin()),
    }
}

fn values_out(v: &[u64]) -> Output {
    Output::new(format_values(v), json!({ "values": v }))
}

pub fn run(cli: Cli) -> Res<Output> {
    let seed = cli.seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cli.cmd {
        Cmd::Ring { verb } => ring(verb),
        Cmd::Poly { verb } => poly(verb),
        Cmd::Composite { verb } => composite(verb),
        Cmd::Monoid { verb } => monoid(verb),
        Cmd::Ideal { verb } => ideal_cmd(verb),
        Cmd::Rsa { verb } => rsa(verb, seed, &mut rng),
        Cmd::Dh { verb } => dh(verb, &mut rng),
        Cmd::Frac { verb } => frac(verb, &mut rng),
        Cmd::Zone { verb } => zone(verb, &mut rng),
        Cmd::Compcipher { verb } => compcipher(verb, &mut rng),
        Cmd::Monoidcipher { verb } => monoidcipher(verb, &mut rng),
        Cmd::Exchange { verb } => exchange(verb, seed),
    }
}

fn ring(verb: RingVerb) -> Res<Output> {
    match verb {
        RingVerb::Check { ring } => {
            let r: RingDescriptor = ring.parse()?;
            let order = r.order().map_or("inf".to_string(), |o| o.to_string());
            let text = format!(
                "{r} order={order} characteristic={} field={} domain={}",
                r.characteristic(),
                r.is_field(),
                r.is_domain()
            );
            Ok(Output::new(
                text,
                json!({
                    "ring": r.to_string(),
                    "order": r.order(),
                    "characteristic": r.characteristic(),
                    "field": r.is_field(),
                    "domain": r.is_domain(),
                }),
            ))
        }
        RingVerb::Unit { ring, element } => {
            let r: RingDescriptor = ring.parse()?;
            Ok(Output::flag(r.parse_element(&element)?.is_unit()))
        }
        RingVerb::Nilpotent { ring, element } => {
            let r: RingDescriptor = ring.parse()?;
            Ok(Output::flag(r.parse_element(&element)?.is_nilpotent()))
        }
    }
}

fn poly(verb: PolyVerb) -> Res<Output> {
    let p = |s: &str| -> Res<Polynomial> { Ok(s.parse()?) };
    match verb {
        PolyVerb::Irreducible { poly } => Ok(Output::flag(p(&poly)?.is_irreducible()?)),
        PolyVerb::Factor { poly } => {
            let fx = p(&poly)?.factor()?;
            let factors: Vec<Value> = fx
                .factors
                .iter()
                .map(|(f, m)| json!({ "factor": f.to_string(), "multiplicity": m }))
                .collect();
            Ok(Output::new(fx.to_string(), json!({ "unit": fx.unit.to_string(), "factors": factors })))
        }
        PolyVerb::Unit { poly } => Ok(Output::flag(p(&poly)?.is_unit())),
        PolyVerb::Inverse { poly, bound } => match p(&poly)?.inverse_search(bound)? {
            Some(g) => Ok(Output::new(g.to_string(), json!({ "inverse": g.to_string() }))),
            None => Ok(Output::new("none", json!({ "inverse": null }))),
        },
        PolyVerb::Mul { a, b } => Ok(Output::plain(p(&a)?.mul(&p(&b)?)?.to_string())),
    }
}

fn composite(verb: CompositeVerb) -> Res<Output> {
    let c = |s: &str| -> Res<CompositeElement> { Ok(s.parse()?) };
    match verb {
        CompositeVerb::Irreducible { element } => Ok(Output::flag(c(&element)?.is_irreducible()?)),
        CompositeVerb::Oracle { element } => {
            let reducible = c(&element)?.factor_search_oracle()?;
            let word = if reducible { "reducible" } else { "irreducible" };
            Ok(Output::new(word, json!({ "reducible": reducible })))
        }
        CompositeVerb::Atomize { element } => {
            let atoms: Vec<String> = c(&element)?.atomize()?.iter().map(ToString::to_string).collect();
            Ok(Output::new(atoms.join(" * "), json!({ "atoms": atoms })))
        }
        CompositeVerb::Chain { element, max_steps } => {
            let f = c(&element)?;
            let steps = max_steps.unwrap_or(f.degree().unwrap_or(0) + 1);
            let chain = f.divisor_chain(steps)?;
            let links: Vec<String> = chain.links.iter().map(ToString::to_string).collect();
            let end = if chain.terminated { "terminated" } else { "cut off" };
            Ok(Output::new(
                format!("{}\n{end}", links.join("\n")),
                json!({ "links": links, "terminated": chain.terminated }),
            ))
        }
    }
}

fn monoid(verb: MonoidVerb) -> Res<Output> {
    match verb {
        MonoidVerb::Member { monoid, m } => {
            let mon: NumericalMonoid = monoid.parse()?;
            Ok(Output::flag(mon.contains(m)?))
        }
        MonoidVerb::Oracle { element, exp_bound, coeff_bound } => {
            let e: MonoidDomainElement = element.parse()?;
            let irreducible = e.irreducible_oracle(exp_bound, coeff_bound)?;
            let word = if irreducible { "irreducible" } else { "reducible" };
            Ok(Output::new(word, json!({ "irreducible": irreducible })))
        }
        MonoidVerb::Construct { ring, monoid, primes, exponents } => {
            let r: RingDescriptor = ring.parse()?;
            let mon: NumericalMonoid = monoid.parse()?;
            let primes = primes
                .iter()
                .map(|p| r.parse_element(p))
                .collect::<polycomp::Result<Vec<_>>>()?;
            let built = MonoidDomainElement::prime_chain_irreducible(&r, &mon, &primes, &exponents)?;
            let mut text = built.element.to_string();
            for line in &built.certificate {
                text.push('\n');
                text.push_str(line);
            }
            Ok(Output::new(
                text,
                json!({ "element": built.element.to_string(), "certificate": built.certificate }),
            ))
        }
    }
}

fn ideal_cmd(verb: IdealVerb) -> Res<Output> {
    match verb {
        IdealVerb::Mul { a, b } => Ok(Output::plain(ideal(&a)?.mul(&ideal(&b)?).to_string())),
        IdealVerb::Inverse { ideal: i, modulus } => {
            Ok(Output::plain(ideal(&i)?.inverse(&ideal(&modulus)?)?.to_string()))
        }
        IdealVerb::Prime { ideal: i } => Ok(Output::flag(ideal(&i)?.is_prime())),
        IdealVerb::Norm { ideal: i } => Ok(Output::plain(ideal(&i)?.norm().to_string())),
        IdealVerb::Contains { a, b } => Ok(Output::flag(ideal(&a)?.contains(&ideal(&b)?))),
    }
}

fn rsa_key(key_args: &RsaKeyArgs) -> Res<RsaIdealKey> {
    match (&key_args.key, &key_args.p, &key_args.q, &key_args.e) {
        (Some(path), None, None, None) => Ok(RsaIdealKey::from_key_file(&read(path)?)?),
        (None, Some(p), Some(q), Some(e)) => {
            Ok(RsaIdealKey::generate(&ideal(p)?, &ideal(q)?, &ideal(e)?)?)
        }
        _ => Err(usage("give either --key or all of --p, --q, --e")),
    }
}

fn rsa(verb: RsaVerb, seed: u64, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        RsaVerb::Keygen { key_args, max_prime } => {
            let key = match (&key_args.p, &key_args.q, &key_args.e) {
                (Some(p), Some(q), Some(e)) => RsaIdealKey::generate(&ideal(p)?, &ideal(q)?, &ideal(e)?)?,
                (None, None, None) => RsaIdealKey::random(rng, max_prime)?,
                _ => return Err(usage("give all of --p, --q, --e or none of them")),
            };
            if let Some(path) = &key_args.key {
                fs::write(path, key.to_key_file()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            Ok(Output::new(
                key.summary(),
                json!({
                    "N": key.n.to_string(),
                    "E": key.e.to_string(),
                    "D": key.d.to_string(),
                    "PHI": key.phi.to_string(),
                }),
            ))
        }
        RsaVerb::Encrypt { key_args, input } => {
            let key = rsa_key(&key_args)?;
            let m = match (&input.values, &input.text) {
                (Some(v), None) => values_big(v)?,
                (None, Some(t)) => {
                    let phi = u64::try_from(key.phi.generator())
                        .map_err(|_| usage("text mode needs PHI below 2^64"))?;
                    alphabet(&input.alphabet)?.encode(t, &mut Picker::seeded(seed).with_ceiling(phi))?
                }
                _ => return Err(usage("give --values or --text")),
            };
            let c = key.encrypt(&m)?;
            let strs: Vec<String> = c.iter().map(ToString::to_string).collect();
            Ok(Output::new(format_values(&c), json!({ "values": strs })))
        }
        RsaVerb::Decrypt { key_args, values, as_text, alphabet: alpha } => {
            let key = rsa_key(&key_args)?;
            let m = key.decrypt(&values_big(&values)?)?;
            if as_text {
                return Ok(Output::plain(alphabet(&alpha)?.decode(&m)));
            }
            let strs: Vec<String> = m.iter().map(ToString::to_string).collect();
            Ok(Output::new(format_values(&m), json!({ "values": strs })))
        }
    }
}

fn dh_params(key_args: &DhArgs) -> Res<DhParams> {
    match (&key_args.key, &key_args.p, &key_args.g) {
        (Some(path), None, None) => Ok(DhParams::from_key_file(&read(path)?)?),
        (None, Some(p), Some(g)) => Ok(DhParams::new(ideal(p)?, ideal(g)?)?),
        _ => Err(usage("give either --key or both --p and --g")),
    }
}

fn dh(verb: DhVerb, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        DhVerb::Run { params, a, b } => {
            let params = dh_params(&params)?;
            let a = match a {
                Some(a) => ideal(&a)?,
                None => DhParams::random_secret(rng),
            };
            let b = match b {
                Some(b) => ideal(&b)?,
                None => DhParams::random_secret(rng),
            };
            let x = params.exchange(&a, &b)?;
            Ok(Output::new(
                format!("A={} B={} sF={} sS={}", x.a_public, x.b_public, x.shared_f, x.shared_s),
                json!({
                    "A": x.a_public.to_string(),
                    "B": x.b_public.to_string(),
                    "sF": x.shared_f.to_string(),
                    "sS": x.shared_s.to_string(),
                }),
            ))
        }
        DhVerb::Keygen { key, max_p } => {
            let params = DhParams::random(rng, max_p)?;
            emit_key(&key, params.to_key_file())
        }
    }
}

fn frac_key(key_args: &FracArgs) -> Res<FractionalKey> {
    match (&key_args.key, key_args.alpha, &key_args.k) {
        (Some(path), None, None) => Ok(FractionalKey::from_key_file(&read(path)?)?),
        (None, Some(alpha), Some(k)) => {
            let k = u64::try_from(ideal(k)?.generator()).map_err(|_| usage("--k too large"))?;
            Ok(FractionalKey::new(alpha, k)?)
        }
        _ => Err(usage("give either --key or both --alpha and --k")),
    }
}

fn frac(verb: FracVerb, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        FracVerb::Keygen { alpha, key } => emit_key(&key, FractionalKey::random(rng, alpha)?.to_key_file()),
        FracVerb::Encrypt { key_args, x } => {
            let key = frac_key(&key_args)?;
            Ok(values_out(&key.encrypt_all(&x, Default::default())?))
        }
        FracVerb::Decrypt { key_args, y, shortcut } => {
            let key = frac_key(&key_args)?;
            if !shortcut {
                return Ok(values_out(&key.decrypt_all(&y, Default::default())?));
            }
            let xs = y
                .iter()
                .map(|&v| key.decrypt_shortcut(v))
                .collect::<polycomp::Result<Vec<_>>>()?;
            let text: Vec<String> = xs
                .iter()
                .map(|x| x.map_or("none".to_string(), |v| v.to_string()))
                .collect();
            Ok(Output::new(text.join(" "), json!({ "values": xs })))
        }
    }
}

fn zone_key(key_args: &ZoneArgs) -> Res<ZoneKey> {
    let key = match (&key_args.key, key_args.p, key_args.q, key_args.k) {
        (Some(path), None, None, None) => return Ok(ZoneKey::from_key_file(&read(path)?)?),
        (None, Some(p), Some(q), Some(k)) => ZoneKey::new(p, q, k)?,
        _ => return Err(usage("give either --key or all of --p, --q, --k")),
    };
    Ok(match key_args.label_seed {
        Some(s) => key.with_label_seed(s),
        None => key,
    })
}

fn zone(verb: ZoneVerb, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        ZoneVerb::Keygen { p, label_seed, key } => {
            let mut k = ZoneKey::random(rng, p)?;
            if let Some(s) = label_seed {
                k = k.with_label_seed(s);
            }
            emit_key(&key, k.to_key_file())
        }
        ZoneVerb::Encrypt { key_args, values } => {
            let key = zone_key(&key_args)?;
            let pairs = key.encrypt(&values_u64(&values)?)?;
            Ok(Output::new(ZoneKey::format_pairs(&pairs), json!({ "pairs": pairs })))
        }
        ZoneVerb::Decrypt { key_args, pairs } => {
            let key = zone_key(&key_args)?;
            let pairs = ZoneKey::parse_pairs(&pairs.replace(',', " "))?;
            Ok(values_out(&key.decrypt(&pairs)?))
        }
    }
}

fn systems(list: &[String]) -> Res<Vec<CipherSystem>> {
    list.iter().map(|s| Ok(s.parse()?)).collect()
}

fn comp_key(key_args: &CompArgs) -> Res<CipherPolynomial> {
    match (&key_args.key, key_args.coeff.is_empty()) {
        (Some(path), true) => Ok(CipherPolynomial::from_key_file(&read(path)?)?),
        (None, false) => Ok(CipherPolynomial::new(systems(&key_args.coeff)?)?),
        _ => Err(usage("give either --key or one or more --coeff")),
    }
}

fn compcipher(verb: CompVerb, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        CompVerb::Keygen { s, deg_f, deg_g, key } => {
            let f = CipherPolynomial::random(rng, s, deg_f);
            let g = CipherPolynomial::random(rng, s, deg_g);
            emit_key(&key, f.mul(&g)?.to_key_file())
        }
        CompVerb::Mul { f, g, key } => {
            let f = CipherPolynomial::new(systems(&f)?)?;
            let g = CipherPolynomial::new(systems(&g)?)?;
            emit_key(&key, f.mul(&g)?.to_key_file())
        }
        CompVerb::Encrypt { key_args, input } => {
            let key = comp_key(&key_args)?;
            let letters = match (&input.values, &input.text) {
                (Some(v), None) => values_u64(v)?,
                (None, Some(t)) => {
                    let a = alphabet(&input.alphabet)?;
                    if a.cycle() != key.alphabet_size() {
                        return Err(polycomp::Error::AlphabetMismatch(format!(
                            "alphabet has {} symbols, key acts on {}",
                            a.cycle(),
                            key.alphabet_size()
                        ))
                        .into());
                    }
                    a.indices(t)?
                }
                _ => return Err(usage("give --values or --text")),
            };
            Ok(values_out(&key.encrypt(&letters)?))
        }
        CompVerb::Decrypt { key_args, values, as_text, alphabet: alpha } => {
            let key = comp_key(&key_args)?;
            let letters = key.decrypt(&values_u64(&values)?)?;
            if as_text {
                return Ok(Output::plain(alphabet(&alpha)?.decode_u64(&letters)));
            }
            Ok(values_out(&letters))
        }
    }
}

fn monoid_key(key_args: &MonoidCipherArgs) -> Res<MonoidCipherKey> {
    match (&key_args.key, key_args.p, key_args.x, key_args.a.is_empty()) {
        (Some(path), None, None, true) => Ok(MonoidCipherKey::from_key_file(&read(path)?)?),
        (None, Some(p), Some(x), false) => Ok(MonoidCipherKey::new(p, x, key_args.a.clone())?),
        _ => Err(usage("give either --key or all of --p, --x, --a")),
    }
}

fn monoidcipher(verb: MonoidCipherVerb, rng: &mut ChaCha8Rng) -> Res<Output> {
    match verb {
        MonoidCipherVerb::Keygen { p, len, key } => {
            emit_key(&key, MonoidCipherKey::generate(rng, p, len)?.to_key_file())
        }
        MonoidCipherVerb::Encrypt { key_args, values } => {
            let key = monoid_key(&key_args)?;
            Ok(values_out(&key.encrypt(&values_u64(&values)?)?))
        }
        MonoidCipherVerb::Decrypt { key_args, values } => {
            let key = monoid_key(&key_args)?;
            Ok(values_out(&key.decrypt(&values_u64(&values)?)?))
        }
    }
}

fn transcript_out(t: &Transcript, out: &Option<std::path::PathBuf>) -> Res<Output> {
    let text = t.to_string();
    if let Some(p) = out {
        fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(Output::new(text.clone(), json!({ "transcript": text, "agreed": t.agreed() })))
}

fn exchange(verb: ExchangeVerb, seed: u64) -> Res<Output> {
    match verb {
        ExchangeVerb::Dh { params, a, b, seed_f, seed_s, out } => {
            let params = dh_params(&params)?;
            let t = match (a, b) {
                (Some(a), Some(b)) => run_dh_with_secrets(&params, &ideal(&a)?, &ideal(&b)?)?,
                (None, None) => run_dh(&params, seed_f.unwrap_or(seed), seed_s.unwrap_or(seed.wrapping_add(1)))?,
                _ => return Err(usage("give both --a and --b or neither")),
            };
            transcript_out(&t, &out)
        }
        ExchangeVerb::Composite { f, g, out } => {
            let f = CipherPolynomial::new(systems(&f)?)?;
            let g = CipherPolynomial::new(systems(&g)?)?;
            transcript_out(&run_composite_agreement(&f, &g), &out)
        }
        ExchangeVerb::Replay { transcript, seed_f, seed_s } => {
            let text = read(&transcript)?;
            let t = match Transcript::parse(&text)?.protocol {
                Protocol::Dh => replay_dh(&text, seed_f.unwrap_or(seed), seed_s.unwrap_or(seed.wrapping_add(1)))?,
                Protocol::Composite => replay_composite(&text)?,
            };
            Ok(Output::new("replay matches", json!({ "replay": "matches", "agreed": t.agreed() })))
        }
    }
}
