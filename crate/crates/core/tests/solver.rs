use bnsl_core::model::{enumerate_instance_dags, DEFAULT_ENUM_LIMIT};
use bnsl_core::solver::{solve, BranchRule, NodeSelect, SolveConfig};
use bnsl_core::{is_acyclic, total_score, BnslInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, p: usize, kappa: usize) -> BnslInstance {
    BnslInstance::complete(p, Some(kappa)).with_scores(|_, _| rng.gen_range(-10.0..10.0))
}

fn brute(inst: &BnslInstance) -> f64 {
    enumerate_instance_dags(inst, DEFAULT_ENUM_LIMIT)
        .unwrap()
        .map(|a| total_score(&a, inst).unwrap())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn matches_brute_force_under_every_config() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let configs = [
        SolveConfig::default(),
        SolveConfig::no_cuts(),
        SolveConfig {
            branch: BranchRule::Sum,
            node_select: NodeSelect::DepthFirst,
            ..SolveConfig::default()
        },
        SolveConfig {
            kcluster_cuts: true,
            class4b_cuts: true,
            triple_rows: false,
            ..SolveConfig::default()
        },
        SolveConfig {
            max_rounds: 1,
            ..SolveConfig::default()
        },
    ];
    for t in 0..40 {
        let p = 3 + t % 3;
        let inst = random_instance(&mut rng, p, 2 + t % 2);
        let want = brute(&inst);
        for cfg in &configs {
            let r = solve(&inst, cfg).unwrap();
            assert!(r.optimal);
            assert!(is_acyclic(&r.assignment));
            assert!((r.objective - want).abs() < 1e-6, "case {t}: {} vs {want}", r.objective);
            assert!((total_score(&r.assignment, &inst).unwrap() - r.objective).abs() < 1e-9);
        }
    }
}

#[test]
fn exact_lp_mode_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..5 {
        let inst = random_instance(&mut rng, 4, 2);
        let cfg = SolveConfig {
            exact_lp: true,
            ..SolveConfig::default()
        };
        assert!((solve(&inst, &cfg).unwrap().objective - brute(&inst)).abs() < 1e-6);
    }
}

#[test]
fn traces_are_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let inst = random_instance(&mut rng, 5, 3);
        let r = solve(&inst, &SolveConfig::default()).unwrap();
        for w in r.stats.root_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-7);
        }
        for w in r.stats.bound_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-7);
        }
        for w in r.stats.incumbent_trace.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(r.objective <= r.upper_bound + 1e-9);
    }
}

#[test]
fn time_limit_is_honest() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let inst = random_instance(&mut rng, 5, 3);
    let cfg = SolveConfig {
        time_limit: Some(std::time::Duration::ZERO),
        ..SolveConfig::default()
    };
    let r = solve(&inst, &cfg).unwrap();
    assert!(!r.optimal);
    assert!(r.upper_bound >= brute(&inst) - 1e-6);
    assert!(is_acyclic(&r.assignment));
}
