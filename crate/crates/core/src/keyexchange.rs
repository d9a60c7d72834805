//! Two-party protocol harness over an in-memory, ordered, loss-free channel.
//!
//! Parties are `F` (first) and `S` (second). A [`Transcript`] holds what crossed the
//! channel and a SHA-256 digest of each party's derived secret, never the secret itself.
//! Its line format is stable, so a replay can be compared byte for byte.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::ciphers::{CipherPolynomial, DhParams};
use crate::error::{Error, Result};
use crate::ideals::PrincipalIdeal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    Dh,
    Composite,
}

impl Protocol {
    fn name(self) -> &'static str {
        match self {
            Protocol::Dh => "dh",
            Protocol::Composite => "composite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub from: String,
    pub to: String,
    /// `NAME=value`, public data only.
    pub payload: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Agreed,
    Disagreed,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub protocol: Protocol,
    /// Public parameters, one record.
    pub params: String,
    pub messages: Vec<Message>,
    /// `(party, hex digest)` in party order.
    pub digests: Vec<(String, String)>,
    pub outcome: Outcome,
}

/// One side of the exchange.
struct Party {
    name: &'static str,
    secret: PrincipalIdeal,
    inbox: Vec<PrincipalIdeal>,
}

/// Ordered delivery; every send is logged.
#[derive(Default)]
struct Channel {
    log: Vec<Message>,
}

impl Channel {
    fn send(&mut self, from: &str, to: &mut Party, name: &str, value: PrincipalIdeal) {
        self.log.push(Message {
            from: from.into(),
            to: to.name.into(),
            payload: format!("{name}={value}"),
        });
        to.inbox.push(value);
    }
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Secrets drawn from ChaCha8 streams seeded with `seed_f` and `seed_s`.
pub fn run_dh(params: &DhParams, seed_f: u64, seed_s: u64) -> Result<Transcript> {
    let a = DhParams::random_secret(&mut ChaCha8Rng::seed_from_u64(seed_f));
    let b = DhParams::random_secret(&mut ChaCha8Rng::seed_from_u64(seed_s));
    run_dh_with_secrets(params, &a, &b)
}

pub fn run_dh_with_secrets(params: &DhParams, a: &PrincipalIdeal, b: &PrincipalIdeal) -> Result<Transcript> {
    let mut f = Party { name: "F", secret: a.clone(), inbox: Vec::new() };
    let mut s = Party { name: "S", secret: b.clone(), inbox: Vec::new() };
    let mut chan = Channel::default();

    let a_pub = params.public(&f.secret)?;
    chan.send(f.name, &mut s, "A", a_pub);
    let b_pub = params.public(&s.secret)?;
    chan.send(s.name, &mut f, "B", b_pub);

    let shared_f = params.shared(&f.inbox[0], &f.secret)?;
    let shared_s = params.shared(&s.inbox[0], &s.secret)?;
    let outcome = if shared_f == shared_s { Outcome::Agreed } else { Outcome::Disagreed };
    Ok(Transcript {
        protocol: Protocol::Dh,
        params: format!("P={} G={}", params.p, params.g),
        messages: chan.log,
        digests: vec![
            ("F".into(), digest(&shared_f.to_string())),
            ("S".into(), digest(&shared_s.to_string())),
        ],
        outcome,
    })
}

/// Reruns the exchange recorded in `text` and insists on a byte-identical transcript.
pub fn replay_dh(text: &str, seed_f: u64, seed_s: u64) -> Result<Transcript> {
    let recorded = Transcript::parse(text)?;
    if recorded.protocol != Protocol::Dh {
        return Err(Error::Transcript("not a dh transcript".into()));
    }
    let params = DhParams::from_key_file(&format!("dh-ideal v1 {}", recorded.params))?;
    check_replay(text, run_dh(&params, seed_f, seed_s)?)
}

/// F contributes `f`, S contributes `g`; each multiplies `f g` on its own side (the first
/// party's polynomial always on the left) and publishes a digest of the coefficient list.
/// A failure is recorded in the transcript rather than returned.
pub fn run_composite_agreement(f: &CipherPolynomial, g: &CipherPolynomial) -> Transcript {
    let messages = vec![
        Message { from: "F".into(), to: "S".into(), payload: format!("f={f}") },
        Message { from: "S".into(), to: "F".into(), payload: format!("g={g}") },
    ];
    let params = format!("SF={} SG={}", f.alphabet_size(), g.alphabet_size());
    // Each side works from its own copy of what it holds and what it received.
    let side_f = f.mul(&g.clone());
    let side_s = f.clone().mul(g);
    let (digests, outcome) = match (side_f, side_s) {
        (Ok(x), Ok(y)) => {
            let (dx, dy) = (digest(&x.to_string()), digest(&y.to_string()));
            let outcome = if dx == dy { Outcome::Agreed } else { Outcome::Disagreed };
            (vec![("F".into(), dx), ("S".into(), dy)], outcome)
        }
        (Err(e), _) | (_, Err(e)) => (Vec::new(), Outcome::Failed(format!("{}: {e}", e.code()))),
    };
    Transcript {
        protocol: Protocol::Composite,
        params,
        messages,
        digests,
        outcome,
    }
}

/// Rebuilds both polynomials from the recorded messages and reruns the agreement.
pub fn replay_composite(text: &str) -> Result<Transcript> {
    let recorded = Transcript::parse(text)?;
    if recorded.protocol != Protocol::Composite || recorded.messages.len() != 2 {
        return Err(Error::Transcript("not a composite transcript".into()));
    }
    let poly = |m: &Message, name: &str| -> Result<CipherPolynomial> {
        let body = m
            .payload
            .strip_prefix(&format!("{name}=["))
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Transcript(format!("bad payload `{}`", m.payload)))?;
        let coeffs = body.split(", ").map(str::parse).collect::<Result<Vec<_>>>()?;
        CipherPolynomial::new(coeffs)
    };
    let f = poly(&recorded.messages[0], "f")?;
    let g = poly(&recorded.messages[1], "g")?;
    check_replay(text, run_composite_agreement(&f, &g))
}

fn check_replay(text: &str, rerun: Transcript) -> Result<Transcript> {
    let fresh = rerun.to_string();
    if fresh != text {
        let line = fresh
            .lines()
            .zip(text.lines())
            .position(|(a, b)| a != b)
            .map_or_else(|| "length".to_string(), |i| format!("line {}", i + 1));
        return Err(Error::Transcript(format!("replay differs at {line}")));
    }
    Ok(rerun)
}

impl Transcript {
    pub fn agreed(&self) -> bool {
        self.outcome == Outcome::Agreed
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |l: &str| Error::Transcript(format!("unexpected line `{l}`"));
        let mut lines = text.lines();
        let head = lines.next().unwrap_or("");
        let protocol = match head.strip_prefix("transcript v1 ") {
            Some("dh") => Protocol::Dh,
            Some("composite") => Protocol::Composite,
            _ => return Err(bad(head)),
        };
        let p_line = lines.next().unwrap_or("");
        let params = p_line.strip_prefix("params ").ok_or_else(|| bad(p_line))?.to_string();
        let mut t = Transcript {
            protocol,
            params,
            messages: Vec::new(),
            digests: Vec::new(),
            outcome: Outcome::Disagreed,
        };
        let mut outcome = None;
        for line in lines {
            if outcome.is_some() {
                return Err(bad(line));
            }
            if let Some(rest) = line.strip_prefix("msg ") {
                let (route, payload) = rest.split_once(' ').ok_or_else(|| bad(line))?;
                let (from, to) = route.split_once("->").ok_or_else(|| bad(line))?;
                t.messages.push(Message { from: from.into(), to: to.into(), payload: payload.into() });
            } else if let Some(rest) = line.strip_prefix("digest ") {
                let (party, hash) = rest.split_once(" sha256=").ok_or_else(|| bad(line))?;
                t.digests.push((party.into(), hash.into()));
            } else if let Some(rest) = line.strip_prefix("result ") {
                outcome = Some(match rest {
                    "agreed" => Outcome::Agreed,
                    "disagreed" => Outcome::Disagreed,
                    _ => Outcome::Failed(rest.strip_prefix("failed ").ok_or_else(|| bad(line))?.into()),
                });
            } else {
                return Err(bad(line));
            }
        }
        t.outcome = outcome.ok_or_else(|| Error::Transcript("missing result line".into()))?;
        Ok(t)
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "transcript v1 {}", self.protocol.name())?;
        writeln!(f, "params {}", self.params)?;
        for m in &self.messages {
            writeln!(f, "msg {}->{} {}", m.from, m.to, m.payload)?;
        }
        for (party, hash) in &self.digests {
            writeln!(f, "digest {party} sha256={hash}")?;
        }
        match &self.outcome {
            Outcome::Agreed => writeln!(f, "result agreed"),
            Outcome::Disagreed => writeln!(f, "result disagreed"),
            Outcome::Failed(why) => writeln!(f, "result failed {why}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ciphers::CipherSystem;
    use rand::Rng;

    #[test]
    fn worked_exchange() {
        let params = DhParams::new(7.into(), 10.into()).unwrap();
        let t = run_dh_with_secrets(&params, &3.into(), &4.into()).unwrap();
        assert!(t.agreed());
        let text = t.to_string();
        assert!(text.contains("msg F->S A=(2)\n"));
        assert!(text.contains("msg S->F B=(5)\n"));
        assert_eq!(t.digests[0].1, digest("(1)"));
        assert_eq!(Transcript::parse(&text).unwrap(), t);
    }

    #[test]
    fn seeded_runs_replay() {
        let params = DhParams::new(1009.into(), 5000.into()).unwrap();
        let t1 = run_dh(&params, 1, 2).unwrap().to_string();
        assert_eq!(run_dh(&params, 1, 2).unwrap().to_string(), t1);
        assert!(replay_dh(&t1, 1, 2).is_ok());
        assert_eq!(replay_dh(&t1, 1, 3).unwrap_err().code(), "transcript");
    }

    #[test]
    fn secrets_stay_out_of_the_transcript() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let params = DhParams::random(&mut rng, 1 << 20).unwrap();
            let (a, b) = (DhParams::random_secret(&mut rng), DhParams::random_secret(&mut rng));
            let t = run_dh_with_secrets(&params, &a, &b).unwrap();
            let expected = [
                format!("A={}", params.public(&a).unwrap()),
                format!("B={}", params.public(&b).unwrap()),
            ];
            let payloads: Vec<&str> = t.messages.iter().map(|m| m.payload.as_str()).collect();
            assert_eq!(payloads, expected);
            assert!(t.digests.iter().all(|(_, h)| h.len() == 64));
        }
    }

    #[test]
    fn composite_agreement() {
        let c = |s: &str| s.parse::<CipherSystem>().unwrap();
        let f = CipherPolynomial::new(vec![c("aff(3,1;26)")]).unwrap();
        let g = CipherPolynomial::new(vec![c("aff(5,0;26)")]).unwrap();
        let t = run_composite_agreement(&f, &g);
        assert!(t.agreed());
        assert_eq!(replay_composite(&t.to_string()).unwrap(), t);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (df, dg) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
            let f = CipherPolynomial::random(&mut rng, 26, df);
            let g = CipherPolynomial::random(&mut rng, 26, dg);
            let t = run_composite_agreement(&f, &g);
            assert!(t.agreed());
            assert_eq!(replay_composite(&t.to_string()).unwrap().to_string(), t.to_string());
        }
    }

    #[test]
    fn mismatched_alphabets_fail_inside_the_transcript() {
        let f = CipherPolynomial::new(vec![CipherSystem::identity(26).unwrap()]).unwrap();
        let g = CipherPolynomial::new(vec![CipherSystem::identity(29).unwrap()]).unwrap();
        let t = run_composite_agreement(&f, &g);
        assert!(matches!(&t.outcome, Outcome::Failed(why) if why.starts_with("alphabet-mismatch")));
        let text = t.to_string();
        assert!(text.ends_with("\n") && text.lines().last().unwrap().starts_with("result failed"));
        assert_eq!(Transcript::parse(&text).unwrap(), t);
    }
}
