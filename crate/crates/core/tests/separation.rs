use bnsl_core::separation::*;
use bnsl_core::{encode_digraph, BnslInstance, DigraphAssignment, FamilyVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Convex combination of up to eight random (possibly cyclic) digraphs.
fn random_point(rng: &mut ChaCha8Rng, p: usize) -> FamilyVector {
    let idx = BnslInstance::complete(p, None).family_index();
    let parts = rng.gen_range(1..=8);
    let weights: Vec<f64> = (0..parts).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut x = vec![0.0; idx.len()];
    for w in weights {
        let parents = (0..p)
            .map(|i| (0..p).filter(|&j| j != i && rng.gen_bool(0.35)).collect())
            .collect();
        let g = encode_digraph(&DigraphAssignment::new(parents), &idx).unwrap();
        for (a, b) in x.iter_mut().zip(&g.0) {
            *a += w / total * b;
        }
    }
    FamilyVector(x)
}

fn exhaustive_max(x: &FamilyVector, p: usize) -> f64 {
    let idx = BnslInstance::complete(p, None).family_index();
    (0u32..1 << p)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| subip_objective(x, &idx, &(0..p).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>()))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn exact_search_matches_cluster_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for t in 0..100 {
        let p = 2 + t % 5;
        let x = random_point(&mut rng, p);
        let idx = BnslInstance::complete(p, None).family_index();
        let r = weak_separate_exact(&x, &idx);
        let best = exhaustive_max(&x, p);
        let found = best > -1.0 + EPS_CUT;
        assert_eq!(r.outcome == Outcome::CutsFound, found, "case {t}");
        if found {
            assert!((r.best_w().unwrap() - best).abs() < 1e-9, "case {t}");
        }
        for c in &r.cuts {
            assert!(c.lhs(&x, &idx) > c.rhs() + EPS_CUT - 1e-12);
        }
    }
}

#[test]
fn heuristic_cuts_are_violated() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for t in 0..60 {
        let p = 3 + t % 4;
        let x = random_point(&mut rng, p);
        let idx = BnslInstance::complete(p, None).family_index();
        for c in weak_separate_heuristic(&x, &idx).cuts {
            assert!(subip_objective(&x, &idx, &c.cluster) > -1.0, "case {t}");
        }
    }
}

#[test]
fn kcluster_checks_match_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..40 {
        let p = rng.gen_range(3..6);
        let x = random_point(&mut rng, p);
        let idx = BnslInstance::complete(p, None).family_index();
        let cl: Vec<usize> = (0..p).filter(|_| rng.gen_bool(0.7)).collect();
        if cl.len() < 2 {
            continue;
        }
        let cuts = kcluster_separate(&x, &idx, &cl).unwrap();
        for kappa in 1..cl.len() {
            let mut lhs = 0.0;
            for &i in &cl {
                for k in idx.child_range(i) {
                    if idx.family(k).parents.iter().filter(|v| cl.contains(v)).count() >= kappa {
                        lhs += x.0[k];
                    }
                }
            }
            let violated = lhs > (cl.len() - kappa) as f64 + EPS_CUT;
            assert_eq!(cuts.iter().any(|c| c.kappa == kappa), violated);
        }
    }
}

/// Minimum vertex cover by scanning subsets in order of size.
fn vc_bruteforce(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u32..1 << n)
        .filter(|m| edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
    }
    seen.count_ones() as usize == n
}

fn gadget_agrees(n: usize, edges: Vec<(usize, usize)>) -> usize {
    let vc = vc_bruteforce(n, &edges);
    let g = Graph::new(n, edges).unwrap();
    let mut mismatches = 0;
    for k in 1..=n {
        let (inst, x) = build_vc_gadget(&g, k).unwrap();
        let idx = inst.family_index();
        let r = weak_separate_exact_with(&x, &idx, inst.p(), EPS_CUT);
        assert!(!r.heuristic_only);
        if (r.outcome == Outcome::CutsFound) != (vc <= k) {
            mismatches += 1;
        }
    }
    mismatches
}

#[test]
fn gadget_matches_vertex_cover_on_small_graphs() {
    let mut graphs = 0;
    for n in 2..=5 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for m in 1u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
            if !connected(n, &edges) {
                continue;
            }
            graphs += 1;
            assert_eq!(gadget_agrees(n, edges), 0);
        }
    }
    assert_eq!(graphs, 1 + 4 + 38 + 728);
}

#[test]
fn gadget_matches_vertex_cover_on_random_six_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..50 {
        let edges: Vec<(usize, usize)> = loop {
            let e: Vec<_> = (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            if !e.is_empty() {
                break e;
            }
        };
        assert_eq!(gadget_agrees(6, edges), 0);
    }
}
