pub mod alphabet;
pub mod arith;
pub mod ciphers;
pub mod composite;
pub mod error;
pub mod exec;
pub mod ideals;
pub mod keyexchange;
pub mod monoid_domain;
pub mod poly;
pub mod rings;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rings::{Embedding, RingDescriptor, RingElement, RingKind};
pub use poly::{Factorization, Polynomial};
pub use composite::{CompositeElement, DivisorChain, TowerDescriptor};
pub use monoid_domain::{CertifiedIrreducible, MonoidDomainElement, NumericalMonoid};
pub use alphabet::{Alphabet, Picker};
pub use ideals::{Norm, PrincipalIdeal};
pub use ciphers::{CipherPolynomial, CipherSystem, DhParams, FractionalKey, MonoidCipherKey, RsaIdealKey, ZoneKey};
pub use keyexchange::{Outcome, Transcript};
