use bnsl_core::scoreio::*;
use bnsl_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng) -> BnslInstance {
    let p = rng.gen_range(1..7);
    let names: Vec<String> = (0..p).map(|i| format!("n{i}_{}", rng.gen_range(0..100))).collect();
    let full = BnslInstance::complete(p, None);
    let mut rows = Vec::new();
    for i in 0..p {
        let mut row = Vec::new();
        for j in full.permitted(i) {
            if j.is_empty() || rng.gen_bool(0.4) {
                row.push((j.clone(), rng.gen_range(-1e4..1e4)));
            }
        }
        rows.push(row);
    }
    BnslInstance::new(names, rows, None).unwrap()
}

#[test]
fn fifty_random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let inst = random_instance(&mut rng);
        let text = write_scores(&inst);
        let back = parse_scores(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(write_scores(&back), text);
    }
}

#[test]
fn assignment_and_point_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inst = BnslInstance::complete(4, None).with_scores(|_, j| -(j.len() as f64));
    let idx = inst.family_index();
    for g in enumerate_acyclic_digraphs(4, None).unwrap().step_by(37) {
        let text = write_assignment(&g, &inst);
        assert_eq!(parse_assignment(&text, &inst).unwrap(), g);
    }
    for _ in 0..20 {
        let x = FamilyVector((0..idx.len()).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0.0..1.0) } else { 0.0 }).collect());
        let back = parse_family_vector(&write_family_vector(&x, &inst, &idx), &inst, &idx).unwrap();
        assert_eq!(back, x);
    }
}

#[test]
fn palim_drops_large_sets() {
    let inst = BnslInstance::complete(4, None).with_scores(|_, _| 1.0);
    let r = parse_scores_with(&write_scores(&inst), ParseOptions { kappa: Some(1) }).unwrap();
    assert_eq!(r.dropped, 4 * 4);
    assert_eq!(r.instance.family_count(), 4 * 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Corrupted input is either rejected or parses to a well-formed instance.
    #[test]
    fn corruption_never_panics(seed in any::<u64>(), pos in any::<prop::sample::Index>(), byte in any::<u8>(), cut in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = write_scores(&random_instance(&mut rng));
        let mut bytes = text.into_bytes();
        let at = pos.index(bytes.len());
        if cut {
            bytes.truncate(at);
        } else {
            bytes[at] = byte;
        }
        let s = String::from_utf8_lossy(&bytes);
        if let Ok(inst) = parse_scores(&s) {
            for i in 0..inst.p() {
                prop_assert!(inst.permitted(i)[0].is_empty());
            }
        }
    }
}
