use bnsl_core::model::FamilyIndex;
use bnsl_core::par::Parallelism;
use bnsl_core::{enumerate_acyclic_digraphs, BnslInstance, DigraphAssignment};
use bnsl_polytope::catalog::{kcluster_inequality, CLASS_REPS};
use bnsl_polytope::verify::{has_monotone_coefficients, is_monotone_form, verify_catalog};
use bnsl_polytope::*;
use proptest::prelude::*;

#[test]
fn catalogs_are_certified() {
    for (p, k, n, dim) in [(2, None, 3, 2), (3, None, 17, 9), (4, None, 135, 28), (4, Some(2), 78, 24)] {
        let c = catalog_facets(p, k).unwrap();
        let poly = c.polytope().unwrap();
        assert_eq!(c.len(), n);
        assert_eq!(poly.dim(), dim);
        let reports = verify_catalog(&c, &poly, Parallelism::Parallel);
        for r in &reports {
            assert!(r.valid, "{} invalid", r.label);
            assert_eq!(r.rank.rank, dim, "{}", r.label);
        }
        assert!(check_monotone_form(&c));
        assert!(check_coeff_monotonicity(&c));
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let c = catalog_facets(4, Some(2)).unwrap();
    let poly = c.polytope().unwrap();
    assert_eq!(
        verify_catalog(&c, &poly, Parallelism::Sequential),
        verify_catalog(&c, &poly, Parallelism::Parallel)
    );
}

#[test]
fn capped_tallies() {
    let c = catalog_facets(4, Some(2)).unwrap();
    let counts: Vec<usize> = c.class_counts().into_iter().map(|x| x.1).collect();
    assert_eq!(counts, vec![24, 4, 6, 4, 1, 4, 1, 6, 12, 12, 4]);
    let full = catalog_facets(4, None).unwrap();
    let named: usize = CLASS_REPS.iter().map(|r| r.2).sum();
    assert_eq!(named, 86);
    assert_eq!(full.class_counts().iter().filter(|x| x.0.starts_with('4')).map(|x| x.1).sum::<usize>(), 86);
}

#[test]
fn every_kcluster_row_is_a_facet() {
    for p in 2..=4 {
        let c = catalog_facets(p, None).unwrap();
        let poly = c.polytope().unwrap();
        for m in 0u32..1 << p {
            let cl: Vec<usize> = (0..p).filter(|&v| m >> v & 1 == 1).collect();
            for kappa in 1..cl.len() {
                let q = kcluster_inequality(&c.index, &cl, kappa);
                assert!(c.contains(&q));
                assert!(facet_rank(&q, &poly).is_facet());
            }
        }
    }
}

#[test]
fn double_description_recovers_three_node_list() {
    let poly = FamilyPolytope::full(3).unwrap();
    let v: Vec<Vec<i64>> = poly
        .vertices()
        .iter()
        .map(|x| x.iter().map(|&b| b as i64).collect())
        .collect();
    let hull = dd::hull_facets(&v).unwrap();
    let mut listed: Vec<LinearInequality> = catalog_facets(3, None).unwrap().entries.into_iter().map(|e| e.ineq).collect();
    listed.sort();
    assert_eq!(hull, listed);
}

#[test]
fn double_description_on_two_nodes() {
    let poly = FamilyPolytope::full(2).unwrap();
    let v: Vec<Vec<i64>> = poly.vertices().iter().map(|x| x.iter().map(|&b| b as i64).collect()).collect();
    assert_eq!(dd::hull_facets(&v).unwrap().len(), 3);
}

/// 0/1 vectors with at most one family per child that satisfy every
/// 1-cluster row are exactly the acyclic digraphs.
#[test]
fn cluster_rows_cut_out_acyclic_digraphs() {
    for p in 2..=4 {
        let idx: FamilyIndex = BnslInstance::complete(p, None).family_index();
        let clusters: Vec<LinearInequality> = (0u32..1 << p)
            .filter(|m| m.count_ones() >= 2)
            .map(|m| kcluster_inequality(&idx, &(0..p).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>(), 1))
            .collect();
        let per = 1usize << (p - 1);
        let mut count = 0;
        let mut choice = vec![0usize; p];
        loop {
            let mut x = vec![0u8; idx.len()];
            let mut parents = Vec::new();
            for i in 0..p {
                let r = idx.child_range(i);
                if choice[i] > 0 {
                    let k = r.start + choice[i] - 1;
                    x[k] = 1;
                    parents.push(idx.family(k).parents.clone());
                } else {
                    parents.push(vec![]);
                }
            }
            let inside = clusters.iter().all(|q| q.lhs_01(&x) <= q.rhs);
            assert_eq!(inside, bnsl_core::is_acyclic(&DigraphAssignment::new(parents)));
            count += inside as usize;
            let mut i = 0;
            while i < p {
                choice[i] += 1;
                if choice[i] < per {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == p {
                break;
            }
        }
        assert_eq!(count, enumerate_acyclic_digraphs(p, None).unwrap().count());
    }
}

#[test]
fn export_formats() {
    let c = catalog_facets(3, None).unwrap();
    let text = c.export_text();
    assert_eq!(text.lines().count(), 17);
    assert!(text.contains("k2 {a,b,c}: a<-{b,c} + b<-{a,c} + c<-{a,b} <= 1"));
    let machine = c.export_machine();
    assert_eq!(machine.lines().count(), 18);
    let (label, nums) = machine.lines().last().unwrap().split_once('\t').unwrap();
    assert_eq!(label, "k2 {a,b,c}");
    assert_eq!(nums, "1 0 0 1 0 0 1 0 0 1");
}

#[test]
fn trivial_verification_cases() {
    let poly = FamilyPolytope::full(2).unwrap();
    let bad = LinearInequality { coef: vec![1, 0], rhs: -1 };
    let v = verify_validity(&bad, &poly);
    assert!(!v.valid);
    assert_eq!(v.witness, Some(DigraphAssignment::empty(2)));
    assert!(!is_monotone_form(&LinearInequality::new(vec![1, -1], 1)));
    let idx = BnslInstance::complete(3, None).family_index();
    assert!(!has_monotone_coefficients(&LinearInequality::new(vec![0, 3, 1, 0, 0, 0, 0, 0, 0], 3), &idx));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_closed_under_relabelling(entry in 0usize..135, perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let c = catalog_facets(4, None).unwrap();
        let q = c.entries[entry].ineq.permute(&c.index, &perm).unwrap();
        prop_assert!(c.contains(&q));
    }

    #[test]
    fn scaling_is_canonical(coef in prop::collection::vec(-5i64..6, 9), rhs in -5i64..6, s in 1i64..7) {
        let a = LinearInequality::new(coef.clone(), rhs);
        let b = LinearInequality::new(coef.iter().map(|c| c * s).collect(), rhs * s);
        prop_assert_eq!(a, b);
    }
}
