use num_bigint::BigUint;
use polycomp::keyexchange::{replay_composite, replay_dh, run_composite_agreement, run_dh};
use polycomp::{
    Alphabet, CipherPolynomial, DhParams, FractionalKey, MonoidCipherKey, Picker, Polynomial,
    PrincipalIdeal, RsaIdealKey, Transcript, ZoneKey,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ideal(n: u64) -> PrincipalIdeal {
    n.into()
}

#[test]
fn text_survives_rsa_through_key_file() {
    let key = RsaIdealKey::generate(&ideal(101), &ideal(103), &ideal(7)).unwrap();
    let key = RsaIdealKey::from_key_file(&key.to_key_file()).unwrap();
    let phi = u64::try_from(key.phi.generator()).unwrap();
    let a = Alphabet::latin();
    let m = a.encode("ATTACKATDAWN", &mut Picker::seeded(3).with_ceiling(phi)).unwrap();
    assert!(m.iter().all(|v| *v < BigUint::from(phi)));
    let c = key.encrypt(&m).unwrap();
    assert_eq!(a.decode(&key.decrypt(&c).unwrap()), "ATTACKATDAWN");
}

#[test]
fn key_files_reload_to_equal_behaviour() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let msg: Vec<u64> = (1..=28).collect();

    let f = FractionalKey::random(&mut rng, 29).unwrap();
    let f2 = FractionalKey::from_key_file(&f.to_key_file()).unwrap();
    let xs: Vec<u64> = (2..=29).collect();
    let y = f.encrypt_all(&xs, Default::default()).unwrap();
    assert_eq!(f2.decrypt_all(&y, Default::default()).unwrap(), xs);

    let z = ZoneKey::random(&mut rng, 97).unwrap().with_label_seed(5);
    let z2 = ZoneKey::from_key_file(&z.to_key_file()).unwrap();
    let pairs = z.encrypt(&msg).unwrap();
    assert_eq!(z2.decrypt(&pairs).unwrap(), msg);

    let m = MonoidCipherKey::generate(&mut rng, 101, 3).unwrap();
    let m2 = MonoidCipherKey::from_key_file(&m.to_key_file()).unwrap();
    assert_eq!(m2.decrypt(&m.encrypt(&msg).unwrap()).unwrap(), msg);

    let c = CipherPolynomial::random(&mut rng, 26, 2);
    let c2 = CipherPolynomial::from_key_file(&c.to_key_file()).unwrap();
    let letters: Vec<u64> = msg.iter().map(|v| v % 26).collect();
    assert_eq!(c2.decrypt(&c.encrypt(&letters).unwrap()).unwrap(), letters);
}

#[test]
fn transcripts_survive_text_round_trip() {
    let params = DhParams::new(ideal(1009), ideal(2027)).unwrap();
    let t = run_dh(&params, 1, 2).unwrap();
    assert!(t.agreed());
    let text = t.to_string();
    assert_eq!(Transcript::parse(&text).unwrap().to_string(), text);
    assert_eq!(replay_dh(&text, 1, 2).unwrap().to_string(), text);
    assert!(replay_dh(&text, 1, 3).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = CipherPolynomial::random(&mut rng, 26, 1);
    let g = CipherPolynomial::random(&mut rng, 26, 2);
    let t = run_composite_agreement(&f, &g);
    assert!(t.agreed());
    assert_eq!(replay_composite(&t.to_string()).unwrap().to_string(), t.to_string());
}

#[test]
fn factorization_multiplies_back() {
    let f: Polynomial = "F5:[4,0,1,0,1]".parse().unwrap();
    let fx = f.factor().unwrap();
    let mut prod: Polynomial = format!("F5:[{}]", fx.unit).parse().unwrap();
    for (p, m) in &fx.factors {
        assert!(p.is_irreducible().unwrap());
        for _ in 0..*m {
            prod = prod.mul(p).unwrap();
        }
    }
    assert_eq!(prod, f);
}
