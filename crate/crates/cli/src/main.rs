mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "polycomp",
    version,
    about = "Polynomial composites, monoid domains and toy ciphers",
    after_help = "Examples:
  $ polycomp rsa keygen --p 3 --q 11 --e 3
  N=(33) E=(3) D=(7)
  $ polycomp frac encrypt --alpha 29 --k 7 --x 5
  6
  $ polycomp poly irreducible F2:[1,1,1]
  true

Exit status is 0 on success, 1 on a domain error (reported as ERR:<code>: <message>)
and 2 on a usage error."
)]
pub struct Cli {
    /// Seed for every random choice (key sampling, representative pickers).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Coefficient rings: Z, Z/n, Fp, Fq.
    #[command(after_help = "Examples:
  $ polycomp ring check F4
  F(4)=F2[t]/(t^2+t+1) order=4 characteristic=2 field=true domain=true
  $ polycomp ring unit Z/12 5
  true
  $ polycomp ring nilpotent Z/12 6
  true")]
    Ring {
        #[command(subcommand)]
        verb: RingVerb,
    },
    /// Polynomials over a coefficient ring, written RING:[c0,c1,...].
    #[command(after_help = "Examples:
  $ polycomp poly irreducible F2:[1,1,1]
  true
  $ polycomp poly factor F2:[1,0,1,0,1]
  1 * F2:[1,1,1]^2
  $ polycomp poly unit Z/4:[1,2]
  true
  $ polycomp poly inverse Z/4:[1,2]
  Z/4:[1,2]")]
    Poly {
        #[command(subcommand)]
        verb: PolyVerb,
    },
    /// Elements of A0 + A1 X + ... + X^n B[X], written TOWER:[c0,c1,...].
    #[command(after_help = "Examples:
  $ polycomp composite irreducible F2<F4:[0,t]
  true
  $ polycomp composite oracle F2<F4:[0,0,1]
  reducible
  $ polycomp composite atomize F2<F4:[0,0,1]
  F2<F4:[0,t] * F2<F4:[0,t+1]
  $ polycomp composite chain F2<F4:[0,0,0,1]
  F2<F4:[0,0,0,1]
  F2<F4:[0,0,1]
  F2<F4:[0,1]
  terminated")]
    Composite {
        #[command(subcommand)]
        verb: CompositeVerb,
    },
    /// Numerical monoids and monoid domains B[M], written RING:M<g1,...>:{m:c,...}.
    #[command(after_help = "Examples:
  $ polycomp monoid member M<2,3> 1
  false
  $ polycomp monoid construct --ring Z --monoid M<2,3> --primes 2 --exponents 2,3
  Z:M<2,3>:{2:-1,3:2}
  m1 = 2 is an atom of M<2,3>
  m2 = 3 is not in 2 + M<2,3>
  p1 = 2 is prime in Z
  $ polycomp monoid oracle Z:M<2,3>:{2:-2,3:-2,5:1,6:1}
  reducible")]
    Monoid {
        #[command(subcommand)]
        verb: MonoidVerb,
    },
    /// Principal ideals (n) of Z.
    #[command(after_help = "Examples:
  $ polycomp ideal mul 3 5
  (15)
  $ polycomp ideal inverse 3 --modulus 20
  (7)
  $ polycomp ideal prime 7
  true")]
    Ideal {
        #[command(subcommand)]
        verb: IdealVerb,
    },
    /// Multiplicative ideal RSA: C = M E mod phi(N).
    #[command(after_help = "Examples:
  $ polycomp rsa keygen --p 3 --q 11 --e 3
  N=(33) E=(3) D=(7)
  $ polycomp rsa encrypt --p 3 --q 11 --e 3 --values 2,0
  6 0
  $ polycomp rsa decrypt --p 3 --q 11 --e 3 --values 6
  2")]
    Rsa {
        #[command(subcommand)]
        verb: RsaVerb,
    },
    /// Ideal Diffie-Hellman modulo a prime ideal (p).
    #[command(after_help = "Examples:
  $ polycomp dh run --p 7 --g 10 --a 3 --b 4
  A=(2) B=(5) sF=(1) sS=(1)")]
    Dh {
        #[command(subcommand)]
        verb: DhVerb,
    },
    /// Multiplication by k modulo a prime alphabet length.
    #[command(after_help = "Examples:
  $ polycomp frac encrypt --alpha 29 --k 7 --x 5
  6
  $ polycomp frac decrypt --alpha 29 --k 7 --y 6
  5
  $ polycomp frac decrypt --alpha 29 --k 3 --y 1 --shortcut
  none")]
    Frac {
        #[command(subcommand)]
        verb: FracVerb,
    },
    /// Zone cipher with a secret sub-alphabet length q.
    #[command(after_help = "Examples:
  $ polycomp zone encrypt --p 29 --q 5 --k 3 --values 7,1
  1:1 0:3
  $ polycomp zone decrypt --p 29 --q 5 --k 3 --pairs 1:1,0:3
  7 1")]
    Zone {
        #[command(subcommand)]
        verb: ZoneVerb,
    },
    /// Ciphers built from affine letter maps by sum (composition) and product (concatenation).
    #[command(after_help = "Examples:
  $ polycomp compcipher encrypt --coeff '(aff(1,1;26)*aff(1,2;26))' --values 0
  1 2
  $ polycomp compcipher mul --f 'aff(3,0;26)' --g 'aff(1,4;26)'
  compcipher v1 S=26 DEG=0
  C0=(aff(3,0;26)*aff(1,4;26))
  $ polycomp compcipher encrypt --coeff 'aff(3,1;26)' --coeff 'aff(5,0;26)' --text HELLO
  22 20 8 3 17
  $ polycomp compcipher decrypt --coeff 'aff(3,1;26)' --coeff 'aff(5,0;26)' --values 22,20,8,3,17 --as-text
  HELLO")]
    Compcipher {
        #[command(subcommand)]
        verb: CompVerb,
    },
    /// Exponent cipher d = a X^m mod p with a secret primitive root X.
    #[command(after_help = "Examples:
  $ polycomp monoidcipher encrypt --p 29 --x 2 --a 3 --values 7,0
  7 3
  $ polycomp monoidcipher decrypt --p 29 --x 2 --a 3 --values 7,3
  7 0")]
    Monoidcipher {
        #[command(subcommand)]
        verb: MonoidCipherVerb,
    },
    /// Two-party exchange simulator with replayable transcripts.
    #[command(after_help = "Examples:
  $ polycomp exchange dh --p 7 --g 10 --a 3 --b 4
  transcript v1 dh
  params P=(7) G=(10)
  msg F->S A=(2)
  msg S->F B=(5)
  digest F sha256=fd0ad9026eee596b7072a762941f60bef57e760a230edd450b3a634825685c2a
  digest S sha256=fd0ad9026eee596b7072a762941f60bef57e760a230edd450b3a634825685c2a
  result agreed")]
    Exchange {
        #[command(subcommand)]
        verb: ExchangeVerb,
    },
}

#[derive(Subcommand)]
pub enum RingVerb {
    /// Print order, characteristic and whether the ring is a field or a domain.
    Check { ring: String },
    Unit { ring: String, element: String },
    Nilpotent { ring: String, element: String },
}

#[derive(Subcommand)]
pub enum PolyVerb {
    /// Trial division over a finite field.
    Irreducible { poly: String },
    Factor { poly: String },
    Unit { poly: String },
    /// Exhaustive search for an inverse of degree at most --bound.
    Inverse {
        poly: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    Mul { a: String, b: String },
}

#[derive(Subcommand)]
pub enum CompositeVerb {
    /// Decide irreducibility from the structure theorem.
    Irreducible { element: String },
    /// Brute-force search for a factorisation into two nonunits.
    Oracle { element: String },
    Atomize { element: String },
    /// Descending chain of highest-degree proper divisors.
    Chain {
        element: String,
        #[arg(long)]
        max_steps: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum MonoidVerb {
    Member { monoid: String, m: i64 },
    /// Bounded search for a factorisation into two nonunits.
    Oracle {
        element: String,
        #[arg(long, default_value_t = 12)]
        exp_bound: u64,
        #[arg(long, default_value_t = 6)]
        coeff_bound: u64,
    },
    /// Build p_{r-1} X^{m_r} - ... - p_1 X^{m_2} - X^{m_1} after checking its hypotheses.
    Construct {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        monoid: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        primes: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u64>,
    },
}

#[derive(Subcommand)]
pub enum IdealVerb {
    Mul { a: String, b: String },
    Inverse {
        ideal: String,
        #[arg(long)]
        modulus: String,
    },
    Prime { ideal: String },
    Norm { ideal: String },
    /// Whether the second ideal is contained in the first.
    Contains { a: String, b: String },
}

#[derive(Args, Clone)]
pub struct RsaKeyArgs {
    /// Key file written by `rsa keygen --key`.
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub e: Option<String>,
}

#[derive(Args, Clone)]
pub struct TextInput {
    /// Comma or space separated values.
    #[arg(long, conflicts_with = "text")]
    pub values: Option<String>,
    /// Letters of the alphabet (Latin A-Z unless --alphabet is given).
    #[arg(long)]
    pub text: Option<String>,
    /// Alphabet file, one symbol per line.
    #[arg(long)]
    pub alphabet: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
pub enum RsaVerb {
    /// Build a key from P, Q, E, or sample one with --seed when any is missing.
    Keygen {
        #[command(flatten)]
        key_args: RsaKeyArgs,
        #[arg(long, default_value_t = 1000)]
        max_prime: u64,
    },
    Encrypt {
        #[command(flatten)]
        key_args: RsaKeyArgs,
        #[command(flatten)]
        input: TextInput,
    },
    Decrypt {
        #[command(flatten)]
        key_args: RsaKeyArgs,
        #[arg(long)]
        values: String,
        /// Decode the result through the alphabet.
        #[arg(long)]
        as_text: bool,
        #[arg(long)]
        alphabet: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum DhVerb {
    /// Run one exchange; missing secrets are drawn from --seed.
    Run {
        #[command(flatten)]
        params: DhArgs,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    Keygen {
        #[arg(long)]
        key: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_p: u64,
    },
}

#[derive(Args, Clone)]
pub struct DhArgs {
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Args, Clone)]
pub struct FracArgs {
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    /// Alphabet length |A| (prime).
    #[arg(long)]
    pub alpha: Option<u64>,
    #[arg(long)]
    pub k: Option<String>,
}

#[derive(Subcommand)]
pub enum FracVerb {
    Keygen {
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        key: Option<std::path::PathBuf>,
    },
    Encrypt {
        #[command(flatten)]
        key_args: FracArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
    Decrypt {
        #[command(flatten)]
        key_args: FracArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<u64>,
        /// Use the (k - d) formula; prints `none` where it does not divide exactly.
        #[arg(long)]
        shortcut: bool,
    },
}

#[derive(Args, Clone)]
pub struct ZoneArgs {
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Permute zone labels with this seed.
    #[arg(long)]
    pub label_seed: Option<u64>,
}

#[derive(Subcommand)]
pub enum ZoneVerb {
    /// Sample q and k for alphabet length p (--seed), labels permuted when --label-seed is set.
    Keygen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        label_seed: Option<u64>,
        #[arg(long)]
        key: Option<std::path::PathBuf>,
    },
    Encrypt {
        #[command(flatten)]
        key_args: ZoneArgs,
        #[arg(long)]
        values: String,
    },
    Decrypt {
        #[command(flatten)]
        key_args: ZoneArgs,
        /// `z:d` pairs separated by commas or spaces.
        #[arg(long)]
        pairs: String,
    },
}

#[derive(Args, Clone)]
pub struct CompArgs {
    /// Key file holding the coefficient systems.
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    /// Coefficient systems in ascending degree, e.g. 'aff(3,1;26)'.
    #[arg(long)]
    pub coeff: Vec<String>,
}

#[derive(Subcommand)]
pub enum CompVerb {
    /// Random affine f and g of the given degrees (--seed); writes f g.
    Keygen {
        #[arg(long, default_value_t = 26)]
        s: u64,
        #[arg(long, default_value_t = 1)]
        deg_f: usize,
        #[arg(long, default_value_t = 1)]
        deg_g: usize,
        #[arg(long)]
        key: Option<std::path::PathBuf>,
    },
    /// Multiply two cipher polynomials given coefficient by coefficient.
    Mul {
        #[arg(long, required = true)]
        f: Vec<String>,
        #[arg(long, required = true)]
        g: Vec<String>,
        #[arg(long)]
        key: Option<std::path::PathBuf>,
    },
    Encrypt {
        #[command(flatten)]
        key_args: CompArgs,
        #[command(flatten)]
        input: TextInput,
    },
    Decrypt {
        #[command(flatten)]
        key_args: CompArgs,
        #[arg(long)]
        values: String,
        #[arg(long)]
        as_text: bool,
        #[arg(long)]
        alphabet: Option<std::path::PathBuf>,
    },
}

#[derive(Args, Clone)]
pub struct MonoidCipherArgs {
    #[arg(long)]
    pub key: Option<std::path::PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<u64>,
}

#[derive(Subcommand)]
pub enum MonoidCipherVerb {
    Keygen {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        len: usize,
        #[arg(long)]
        key: Option<std::path::PathBuf>,
    },
    Encrypt {
        #[command(flatten)]
        key_args: MonoidCipherArgs,
        #[arg(long)]
        values: String,
    },
    Decrypt {
        #[command(flatten)]
        key_args: MonoidCipherArgs,
        #[arg(long)]
        values: String,
    },
}

#[derive(Subcommand)]
pub enum ExchangeVerb {
    /// Print the transcript of one exchange. Secrets come from --a/--b or the party seeds.
    Dh {
        #[command(flatten)]
        params: DhArgs,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Seed of party F (default: --seed).
        #[arg(long)]
        seed_f: Option<u64>,
        /// Seed of party S (default: --seed + 1).
        #[arg(long)]
        seed_s: Option<u64>,
        /// Also write the transcript here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Agree on f g; each polynomial is a list of --f / --g coefficient systems.
    Composite {
        #[arg(long, required = true)]
        f: Vec<String>,
        #[arg(long, required = true)]
        g: Vec<String>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Rerun a saved transcript and require a byte-identical result.
    Replay {
        transcript: std::path::PathBuf,
        #[arg(long)]
        seed_f: Option<u64>,
        #[arg(long)]
        seed_s: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match commands::run(cli) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text_block()),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ERR:{}: {}", e.code(), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
