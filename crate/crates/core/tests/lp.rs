use bnsl_core::lp::*;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_lp(rng: &mut ChaCha8Rng, n: usize, m: usize) -> LpModel {
    let obj = (0..n).map(|_| rng.gen_range(-5i32..10) as f64).collect();
    let upper = (0..n).map(|_| rng.gen_range(1i32..5) as f64).collect();
    let mut lp = LpModel::new(obj, vec![0.0; n], upper);
    for _ in 0..m {
        let mut coeffs: Vec<(usize, f64)> = Vec::new();
        for j in 0..n {
            if rng.gen_bool(0.7) {
                coeffs.push((j, rng.gen_range(0i32..6) as f64));
            }
        }
        let sense = if rng.gen_bool(0.8) { Sense::Le } else { Sense::Ge };
        let rhs = match sense {
            Sense::Le => rng.gen_range(1i32..12) as f64,
            _ => rng.gen_range(0i32..3) as f64,
        };
        lp.add_row(Row::new(coeffs, sense, rhs));
    }
    lp
}

/// Best vertex of a two-variable LP by intersecting every pair of lines.
fn planar_optimum(lp: &LpModel) -> Option<f64> {
    let mut lines: Vec<(f64, f64, f64)> = vec![
        (1.0, 0.0, lp.lower[0]),
        (1.0, 0.0, lp.upper[0]),
        (0.0, 1.0, lp.lower[1]),
        (0.0, 1.0, lp.upper[1]),
    ];
    for r in &lp.rows {
        let mut a = [0.0; 2];
        for &(j, c) in &r.coeffs {
            a[j] += c;
        }
        lines.push((a[0], a[1], r.rhs));
    }
    let mut best: Option<f64> = None;
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b, e) = lines[i];
            let (c, d, f) = lines[j];
            let det = a * d - b * c;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = [(e * d - b * f) / det, (a * f - e * c) / det];
            let ok = (0..2).all(|k| x[k] >= lp.lower[k] - 1e-9 && x[k] <= lp.upper[k] + 1e-9)
                && lp.rows.iter().all(|r| r.violation(&x) <= 1e-9);
            if ok {
                let v = lp.objective[0] * x[0] + lp.objective[1] * x[1];
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
    }
    best
}

#[test]
fn float_and_exact_agree_on_thirty_lps() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for t in 0..30 {
        let lp = random_lp(&mut rng, 2 + t % 6, 1 + t % 5);
        let f = lp_solve(&lp, None).unwrap();
        let e = lp_solve_with(&lp, None, LpOptions { exact: true }).unwrap();
        assert_eq!(f.status, e.status, "case {t}");
        if f.status == LpStatus::Optimal {
            let exact = e.exact_objective.unwrap().to_f64().unwrap();
            assert!((f.objective - exact).abs() < 1e-6, "case {t}");
            assert!(lp.max_residual(&f.x) < 1e-7);
        }
    }
}

#[test]
fn two_variable_lps_match_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..60 {
        let lp = random_lp(&mut rng, 2, 1 + t % 4);
        let s = lp_solve(&lp, None).unwrap();
        match planar_optimum(&lp) {
            Some(v) => {
                assert_eq!(s.status, LpStatus::Optimal, "case {t}");
                assert!((s.objective - v).abs() < 1e-7, "case {t}: {} vs {v}", s.objective);
            }
            None => assert_eq!(s.status, LpStatus::Infeasible, "case {t}"),
        }
    }
}

#[test]
fn warm_start_matches_cold_start() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let mut lp = random_lp(&mut rng, 6, 3);
        let first = lp_solve(&lp, None).unwrap();
        let extra = random_lp(&mut rng, 6, 2).rows;
        lp.add_rows(extra.into_iter().filter(|r| r.sense == Sense::Le));
        let warm = lp_solve(&lp, first.basis.as_ref()).unwrap();
        let cold = lp_solve(&lp, None).unwrap();
        assert_eq!(warm.status, cold.status);
        if cold.status == LpStatus::Optimal {
            assert!((warm.objective - cold.objective).abs() < 1e-7);
        }
    }
}
