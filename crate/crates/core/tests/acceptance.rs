//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Thresholds and sample sizes are the constants below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use polycomp::arith::{discrete_log, discrete_log_exhaustive, is_prime, is_primitive_root};
use polycomp::keyexchange::{replay_composite, replay_dh, run_composite_agreement, run_dh};
use polycomp::{
    CipherPolynomial, CompositeElement, DhParams, FractionalKey, MonoidCipherKey,
    MonoidDomainElement, NumericalMonoid, Polynomial, RingDescriptor, RingElement, RsaIdealKey,
    TowerDescriptor, ZoneKey,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const C1_LIMIT: Duration = Duration::from_secs(60);
const C1_SAMPLE: usize = 10_000;
const C1_INVERSE_BOUND: usize = 8;
const C2_LIMIT: Duration = Duration::from_secs(300);
const C2_MAX_DEGREE: usize = 3;
const C3_INPUTS_PER_TOWER: usize = 1_000;
const C3_MAX_DEGREE: usize = 4;
const C4_LIMIT: Duration = Duration::from_secs(300);
const C4_MAX_EXPONENT: u64 = 8;
const C4_PRIMES: [i64; 4] = [2, 3, 5, 7];
const C4_ORACLE_EXPONENT: u64 = 12;
const C4_ORACLE_COEFF: u64 = 6;
const C5_KEYS: usize = 1_000;
const C5_DOMAIN_CAP: usize = 10_000;
const C6_MAX_ALPHA: u64 = 100;
const C7_RUNS: usize = 1_000;
const C8_LIMIT: Duration = Duration::from_secs(120);
const C8_MAX_P: u64 = 1009;
const C8_ALL_BASES_MAX_P: u64 = 200;
const C9_MAX_DEGREE: usize = 4;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    match limit {
        Some(l) if took > l => verdict(false, format!("{}; took {took:.1?}, limit {l:?}", v.detail)),
        Some(l) => verdict(v.pass, format!("{}; {took:.1?} of {l:?}", v.detail)),
        None => verdict(v.pass, format!("{}; {took:.1?}", v.detail)),
    }
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Every polynomial with `len` coefficients drawn from `per_slot[i]` (last slot nonzero).
fn odometer(per_slot: &[Vec<RingElement>]) -> Vec<Vec<RingElement>> {
    let mut out = vec![Vec::new()];
    for slot in per_slot {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                slot.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn tower_slots(t: &TowerDescriptor, len: usize) -> Vec<Vec<RingElement>> {
    let top = t.top();
    (0..len)
        .map(|i| {
            let level = &t.levels()[i.min(t.levels().len())..];
            match level.first() {
                Some(r) => r.elements().unwrap().iter().map(|e| e.embed_into(top).unwrap()).collect(),
                None => top.elements().unwrap(),
            }
        })
        .collect()
}

/// All nonzero elements of `t` with degree at most `max_deg`.
fn all_elements(t: &TowerDescriptor, max_deg: usize) -> Vec<CompositeElement> {
    let mut out = Vec::new();
    for len in 1..=max_deg + 1 {
        for coeffs in odometer(&tower_slots(t, len)) {
            if coeffs.last().unwrap().is_zero() {
                continue;
            }
            let f = Polynomial::new(t.top(), &coeffs).unwrap();
            out.push(t.element(f).unwrap());
        }
    }
    out
}

fn random_element(t: &TowerDescriptor, max_deg: usize, rng: &mut ChaCha8Rng) -> CompositeElement {
    let len = rng.gen_range(1..=max_deg + 1);
    let slots = tower_slots(t, len);
    loop {
        let coeffs: Vec<RingElement> = slots.iter().map(|s| s.choose(rng).unwrap().clone()).collect();
        if coeffs.last().unwrap().is_zero() {
            continue;
        }
        return t.element(Polynomial::new(t.top(), &coeffs).unwrap()).unwrap();
    }
}

fn criterion_1() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [4u64, 6, 8, 9, 12] {
        let ring = RingDescriptor::integers_mod(n).unwrap();
        let elems = ring.elements().unwrap();
        let polys: Vec<Vec<RingElement>> = if n <= 6 {
            odometer(&vec![elems.clone(); 4])
        } else {
            (0..C1_SAMPLE)
                .map(|_| (0..4).map(|_| elems.choose(&mut rng).unwrap().clone()).collect())
                .collect()
        };
        for coeffs in polys {
            let f = Polynomial::new(&ring, &coeffs).unwrap();
            let found = f.inverse_search(C1_INVERSE_BOUND).unwrap();
            let verified = found.as_ref().is_some_and(|g| f.mul(g).unwrap() == Polynomial::one(&ring));
            if f.is_unit() != verified || found.is_some() != verified {
                bad.push(f.to_string());
            }
            checked += 1;
        }
    }
    verdict(bad.is_empty(), format!("{checked} polynomials, {} disagreements {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn criterion_2() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for name in ["F2<F4", "F3<F9"] {
        let t: TowerDescriptor = name.parse().unwrap();
        for f in all_elements(&t, C2_MAX_DEGREE) {
            if f.is_unit() {
                continue;
            }
            if f.is_irreducible().unwrap() == f.factor_search_oracle().unwrap() {
                bad.push(f.to_string());
            }
            checked += 1;
        }
    }
    verdict(bad.is_empty(), format!("{checked} nonunits, {} disagreements {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn criterion_3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut inputs, mut atoms_seen) = (0, 0);
    let mut bad = Vec::new();
    for name in ["F2<F4", "F3<F9"] {
        let t: TowerDescriptor = name.parse().unwrap();
        let a0 = polycomp::Embedding::new(&t.levels()[0], t.top()).unwrap();
        let mut done = 0;
        while done < C3_INPUTS_PER_TOWER {
            let f = random_element(&t, C3_MAX_DEGREE, &mut rng);
            if f.is_unit() {
                continue;
            }
            let atoms = f.atomize().unwrap();
            let mut prod = atoms[0].clone();
            for a in &atoms[1..] {
                prod = prod.mul(a).unwrap();
            }
            if prod != f {
                bad.push(format!("{f}: atoms multiply to {prod}"));
            }
            for a in &atoms {
                let p = a.poly();
                let c0 = p.constant_term();
                let linear_monomial = c0.is_zero() && p.degree() == Some(1);
                let unit_shape = !c0.is_zero() && a0.contains(&c0) && p.is_irreducible().unwrap();
                if !(linear_monomial || unit_shape) {
                    bad.push(format!("{f}: atom {a} has neither shape"));
                }
                atoms_seen += 1;
            }
            done += 1;
            inputs += 1;
        }
    }
    verdict(bad.is_empty(), format!("{inputs} inputs, {atoms_seen} atoms, {} failures {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

/// Ordered exponent lists `[m1, m2, ...]` meeting the construction's hypotheses.
fn c4_exponent_lists(m: &NumericalMonoid) -> Vec<Vec<u64>> {
    let members = m.members_up_to(C4_MAX_EXPONENT);
    let mut out = Vec::new();
    for &m1 in members.iter().filter(|&&x| m.is_atom(x)) {
        let others: Vec<u64> = members
            .iter()
            .copied()
            .filter(|&x| x != m1 && !m.in_translate(m1, x))
            .collect();
        let mut stack: Vec<Vec<u64>> = vec![vec![m1]];
        while let Some(seq) = stack.pop() {
            if seq.len() >= 2 {
                out.push(seq.clone());
            }
            for &x in &others {
                if !seq.contains(&x) {
                    let mut s = seq.clone();
                    s.push(x);
                    stack.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

fn criterion_4() -> Verdict {
    let z = RingDescriptor::integers();
    let (mut checked, mut bad) = (0, Vec::new());
    // Positive control: the oracle must find (X^2 + X^3)(X^3 - 2) at these bounds.
    let control: MonoidDomainElement = "Z:M<2,3>:{2:-2,3:-2,5:1,6:1}".parse().unwrap();
    if control.irreducible_oracle(C4_ORACLE_EXPONENT, C4_ORACLE_COEFF).unwrap() {
        return verdict(false, format!("oracle missed the factorisation of {control}"));
    }
    for gens in [[2u64, 3], [3, 5]] {
        let m = NumericalMonoid::new(&gens).unwrap();
        for exps in c4_exponent_lists(&m) {
            let r = exps.len();
            let mut choice = vec![0usize; r - 1];
            loop {
                let primes: Vec<RingElement> = choice.iter().map(|&i| z.element(C4_PRIMES[i])).collect();
                let built = MonoidDomainElement::prime_chain_irreducible(&z, &m, &primes, &exps).unwrap();
                if !built.element.irreducible_oracle(C4_ORACLE_EXPONENT, C4_ORACLE_COEFF).unwrap() {
                    bad.push(format!("{} (exponents {exps:?})", built.element));
                }
                checked += 1;
                let Some(i) = choice.iter().position(|&c| c + 1 < C4_PRIMES.len()) else { break };
                choice[i] += 1;
                choice[..i].iter_mut().for_each(|c| *c = 0);
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} constructions, {} counterexamples {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

/// Whole domain when it has at most `C5_DOMAIN_CAP` values, else that many uniform draws.
fn domain_or_sample(lo: u64, hi_incl: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    if hi_incl - lo < C5_DOMAIN_CAP as u64 {
        (lo..=hi_incl).collect()
    } else {
        (0..C5_DOMAIN_CAP).map(|_| rng.gen_range(lo..=hi_incl)).collect()
    }
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fails: Vec<String> = Vec::new();
    let mut msgs = [0usize; 6];
    let primes = primes_up_to(C5_DOMAIN_CAP as u64);
    let odd_primes: Vec<u64> = primes.iter().copied().filter(|&p| p >= 5).collect();
    for _ in 0..C5_KEYS {
        // multiplicative RSA
        let k = RsaIdealKey::random(&mut rng, 200).unwrap();
        let phi: u64 = k.phi.generator().try_into().unwrap();
        let m: Vec<BigUint> = domain_or_sample(0, phi - 1, &mut rng).into_iter().map(BigUint::from).collect();
        if k.decrypt(&k.encrypt(&m).unwrap()).unwrap() != m {
            fails.push(format!("rsa {}", k.summary()));
        }
        msgs[0] += m.len();

        // ideal Diffie-Hellman: the "message" is a pair of secrets
        let params = DhParams::random(&mut rng, 10_000).unwrap();
        for _ in 0..C5_DOMAIN_CAP {
            let (a, b) = (DhParams::random_secret(&mut rng), DhParams::random_secret(&mut rng));
            let x = params.exchange(&a, &b).unwrap();
            if x.shared_f != x.shared_s {
                fails.push(format!("dh {params:?} a={a} b={b}"));
            }
        }
        msgs[1] += C5_DOMAIN_CAP;

        let alpha = *primes.choose(&mut rng).unwrap();
        if alpha >= 3 {
            let key = FractionalKey::random(&mut rng, alpha).unwrap();
            let xs: Vec<u64> = (2..=alpha).collect();
            let ys = key.encrypt_all(&xs, Default::default()).unwrap();
            if key.decrypt_all(&ys, Default::default()).unwrap() != xs {
                fails.push(format!("frac {key:?}"));
            }
            msgs[2] += xs.len();
        }

        let p = *odd_primes.choose(&mut rng).unwrap();
        let key = ZoneKey::random(&mut rng, p).unwrap().with_label_seed(rng.gen());
        let vs: Vec<u64> = (1..=p).collect();
        if key.decrypt(&key.encrypt(&vs).unwrap()).unwrap() != vs {
            fails.push(format!("zone {key:?}"));
        }
        msgs[3] += vs.len();

        let s = [26u64, 29, 27, 2][rng.gen_range(0..4)];
        let (df, dg) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let fg = CipherPolynomial::random(&mut rng, s, df)
            .mul(&CipherPolynomial::random(&mut rng, s, dg))
            .unwrap();
        let text: Vec<u64> = (0..C5_DOMAIN_CAP / 10).map(|_| rng.gen_range(0..s)).collect();
        let c = fg.encrypt_with(&text, Default::default()).unwrap();
        let expected_len: usize = (0..text.len()).map(|i| fg.coeffs()[i % (fg.degree() + 1)].arity()).sum();
        if c.len() != expected_len {
            fails.push(format!("compcipher arity {fg}"));
        }
        if fg.decrypt(&c).unwrap() != text {
            fails.push(format!("compcipher {fg}"));
        }
        msgs[4] += text.len();

        let p = *primes.iter().filter(|&&p| (3..=1009).contains(&p)).collect::<Vec<_>>().choose(&mut rng).unwrap();
        let key = MonoidCipherKey::generate(&mut rng, *p, 4).unwrap();
        let m: Vec<u64> = (0..=p - 2).collect();
        if key.decrypt(&key.encrypt_with(&m, Default::default()).unwrap()).unwrap() != m {
            fails.push(format!("monoid {key:?}"));
        }
        msgs[5] += m.len();
    }
    verdict(
        fails.is_empty(),
        format!(
            "{C5_KEYS} keys per system; messages rsa {} dh {} frac {} zone {} compcipher {} monoid {}; {} failures {:?}",
            msgs[0], msgs[1], msgs[2], msgs[3], msgs[4], msgs[5],
            fails.len(),
            &fails[..fails.len().min(3)]
        ),
    )
}

fn criterion_6() -> Verdict {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for alpha in primes_up_to(C6_MAX_ALPHA).into_iter().filter(|&p| p >= 3) {
        for k in (2..alpha).filter(|k| alpha % k == 1) {
            let key = FractionalKey::new(alpha, k).unwrap();
            for x in 2..=alpha {
                let y = key.encrypt(x).unwrap();
                if key.decrypt_shortcut(y).unwrap() != Some(key.decrypt(y).unwrap()) {
                    bad.push((alpha, k, x));
                }
            }
            pairs += 1;
        }
    }
    let key = FractionalKey::new(29, 3).unwrap();
    let failing: Vec<String> = (2..=29)
        .filter_map(|x| {
            let y = key.encrypt(x).unwrap();
            let short = key.decrypt_shortcut(y).unwrap();
            (short != Some(x)).then(|| format!("x={x} y={y} shortcut={short:?} general={}", key.decrypt(y).unwrap()))
        })
        .collect();
    println!("    |A|=29 k=3 (29 = 2 mod 3): shortcut fails on {} of 28 values, e.g. {}", failing.len(), failing[0]);
    verdict(
        bad.is_empty() && !failing.is_empty(),
        format!("{pairs} pairs with |A| = 1 mod k agree ({} mismatches); failing pair (29, 3) exhibited", bad.len()),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for i in 0..C7_RUNS {
        let params = DhParams::random(&mut rng, 1 << 30).unwrap();
        let (sf, ss) = (rng.gen(), rng.gen());
        let t = run_dh(&params, sf, ss).unwrap();
        let text = t.to_string();
        if !t.agreed() || run_dh(&params, sf, ss).unwrap().to_string() != text || replay_dh(&text, sf, ss).is_err() {
            bad.push(format!("dh run {i}"));
        }
        let s = [26u64, 29][rng.gen_range(0..2)];
        let (df, dg) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let f = CipherPolynomial::random(&mut rng, s, df);
        let g = CipherPolynomial::random(&mut rng, s, dg);
        let t = run_composite_agreement(&f, &g);
        if !t.agreed() || replay_composite(&t.to_string()).is_err() {
            bad.push(format!("composite run {i}"));
        }
    }
    verdict(bad.is_empty(), format!("{C7_RUNS} dh + {C7_RUNS} composite runs, {} failures {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn criterion_8() -> Verdict {
    let (mut checked, mut bad) = (0u64, Vec::new());
    for p in primes_up_to(C8_MAX_P) {
        let bases: Vec<u64> = if p <= C8_ALL_BASES_MAX_P {
            (1..p).collect()
        } else {
            vec![(2..p).find(|&g| is_primitive_root(g, p)).unwrap_or(1)]
        };
        for base in bases {
            for target in 0..p {
                if discrete_log(base, target, p) != discrete_log_exhaustive(base, target, p) {
                    bad.push((p, base, target));
                }
                checked += 1;
            }
        }
    }
    verdict(bad.is_empty(), format!("{checked} (p, base, target) triples, {} disagreements {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn criterion_9() -> Verdict {
    let t: TowerDescriptor = "F2<F4".parse().unwrap();
    let (mut chains, mut longest) = (0, 0);
    let mut bad = Vec::new();
    for f in all_elements(&t, C9_MAX_DEGREE) {
        if f.is_unit() {
            continue;
        }
        let deg = f.degree().unwrap();
        let chain = f.divisor_chain(deg + 1).unwrap();
        let steps = chain.links.len() - 1;
        let descends = chain.links.windows(2).all(|w| {
            let (hi, lo) = (&w[0], &w[1]);
            let q = hi.poly().exact_div(lo.poly()).unwrap();
            lo.degree() < hi.degree()
                && !lo.is_unit()
                && q.is_some_and(|q| t.contains(&q) && !t.element(q).unwrap().is_unit())
        });
        if !chain.terminated || steps > deg || !descends {
            bad.push(format!("{f}: {steps} steps, terminated {}", chain.terminated));
        }
        longest = longest.max(steps);
        chains += 1;
    }
    verdict(bad.is_empty(), format!("{chains} chains, longest {longest} steps, {} failures {:?}", bad.len(), &bad[..bad.len().min(5)]))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Verdict); 9] = [
        ("unit criterion vs inverse search over Z/n", Some(C1_LIMIT), criterion_1),
        ("composite irreducibility test vs factor search", Some(C2_LIMIT), criterion_2),
        ("atom shapes and exact reassembly", None, criterion_3),
        ("monoid-domain prime-chain elements are irreducible", Some(C4_LIMIT), criterion_4),
        ("cipher round trips", None, criterion_5),
        ("fractional shortcut formula compatibility", None, criterion_6),
        ("key agreement and transcript replay", None, criterion_7),
        ("baby-step giant-step vs exhaustive log", Some(C8_LIMIT), criterion_8),
        ("divisor chains terminate", None, criterion_9),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let v = timed(*limit, *run);
        println!("criterion {n}: {} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
