use bnsl_core::BnslInstance;
use bnsl_polytope::catalog::{catalog_facets, class_representative, kcluster_inequality, restrict_to_index, CAPPED_CLASSES};
use bnsl_polytope::faces::{order_face, sink_face};
use bnsl_polytope::transform::{lift_facet, lift_to, restrict_facet};
use bnsl_polytope::{facet_rank, permutation_orbit, FamilyPolytope, LinearInequality};
use bnsl_core::par::Parallelism;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn cluster_rows_lift_from_their_own_node_set() {
    let big = BnslInstance::complete(4, None).family_index();
    for m in 0u32..16 {
        let c: Vec<usize> = (0..4).filter(|&v| m >> v & 1 == 1).collect();
        if c.len() < 2 {
            continue;
        }
        let small = BnslInstance::complete(c.len(), None).family_index();
        let all: Vec<usize> = (0..c.len()).collect();
        for kappa in 1..c.len() {
            let q = kcluster_inequality(&small, &all, kappa);
            let lifted = lift_facet(&q, &small, &big, &c).unwrap();
            assert_eq!(lifted, kcluster_inequality(&big, &c, kappa));
        }
    }
}

#[test]
fn lifted_three_node_facets_stay_facets() {
    let three = catalog_facets(3, None).unwrap();
    let poly = FamilyPolytope::full(4).unwrap();
    for e in &three.entries {
        match lift_to(&e.ineq, &three.index, poly.index()) {
            Ok(l) => assert!(facet_rank(&l, &poly).is_facet(), "{}", e.label),
            Err(_) => assert!(e.label.starts_with("lb") || e.label.starts_with("mc")),
        }
    }
}

#[test]
fn capped_classes_survive_dropping_triples() {
    let full = FamilyPolytope::full(4).unwrap();
    let capped = BnslInstance::complete(4, Some(2)).family_index();
    for name in CAPPED_CLASSES {
        for q in permutation_orbit(&class_representative(name).unwrap(), full.index()) {
            let mut q = q;
            let mut poly = full.clone();
            for i in 0..4 {
                let rest: Vec<usize> = (0..4).filter(|&v| v != i).collect();
                let (r, smaller) = restrict_facet(&q, &poly, i, &rest).unwrap();
                q = r;
                poly = smaller;
                assert!(facet_rank(&q, &poly).is_facet(), "{name}");
            }
            assert_eq!(poly.dim(), capped.len());
        }
    }
}

#[test]
fn random_eligible_drops_are_facets() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let cat = catalog_facets(4, None).unwrap();
    let poly = cat.polytope().unwrap();
    let mut tried = 0;
    while tried < 25 {
        let e = cat.entries.choose(&mut rng).unwrap();
        let k = rng.gen_range_usize(poly.dim());
        let f = poly.index().family(k).clone();
        if let Ok((q, smaller)) = restrict_facet(&e.ineq, &poly, f.child, &f.parents) {
            assert!(facet_rank(&q, &smaller).is_facet(), "{} minus {k}", e.label);
            tried += 1;
        }
    }
}

trait GenUsize {
    fn gen_range_usize(&mut self, n: usize) -> usize;
}

impl GenUsize for ChaCha8Rng {
    fn gen_range_usize(&mut self, n: usize) -> usize {
        use rand::Rng;
        self.gen_range(0..n)
    }
}

#[test]
fn lift_then_restrict_returns_the_original() {
    let three = catalog_facets(3, None).unwrap();
    let four = FamilyPolytope::full(4).unwrap();
    for e in three.entries.iter().filter(|e| e.label.starts_with('k')) {
        let mut q = lift_to(&e.ineq, &three.index, four.index()).unwrap();
        let mut poly = four.clone();
        // drop every family of a, b, c that mentions d alongside another parent
        for k in (0..four.dim()).rev() {
            let f = four.index().family(k);
            if f.child != 3 && f.parents.contains(&3) && f.parents.len() > 1 {
                let (r, smaller) = restrict_facet(&q, &poly, f.child, &f.parents).unwrap();
                q = r;
                poly = smaller;
            }
        }
        let back = restrict_to_index(&q, poly.index(), &three.index);
        assert_eq!(back, e.ineq);
    }
}

#[test]
fn dominated_modified_convexity() {
    let poly = FamilyPolytope::full(3).unwrap();
    let mut coef = vec![0; 9];
    coef[..3].copy_from_slice(&[1, 1, 1]);
    let mc = LinearInequality::new(coef, 1);
    assert!(restrict_facet(&mc, &poly, 0, &[2]).is_err());
    let smaller = poly.without(0, &[2]).unwrap();
    let q = LinearInequality::new(vec![1, 1, 0, 0, 0, 0, 0, 0], 1);
    assert!(!facet_rank(&q, &smaller).is_facet());
    // the 2-cluster row on three nodes without c's pair
    let two = LinearInequality::new(vec![0, 0, 1, 0, 0, 1, 0, 0, 0], 1);
    let r = facet_rank(&two, &poly);
    assert!(bnsl_polytope::verify_validity(&two, &poly).valid && !r.is_facet());
}

#[test]
fn order_faces() {
    let orders3 = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for o in orders3 {
        let f = order_face(3, &o).unwrap();
        assert_eq!(f.affine_dim(), 4);
        assert_eq!(f.coords.len(), 4);
        assert_eq!(f.tournaments(), 1);
        assert_eq!(f.facets.len(), 6);
        assert!(f.check(Parallelism::Sequential).all_ok());
    }
    for o in [[0, 1, 2, 3], [3, 1, 0, 2], [2, 3, 1, 0]] {
        let f = order_face(4, &o).unwrap();
        assert_eq!(f.affine_dim(), 11);
        assert_eq!(f.tournaments(), 1);
        assert!(f.check(Parallelism::Parallel).all_ok());
    }
    assert!(order_face(3, &[0, 0, 1]).is_err());
}

#[test]
fn sink_faces() {
    for j in 0..3 {
        let f = sink_face(3, j).unwrap();
        assert_eq!(f.affine_dim(), 5);
        let c = f.check(Parallelism::Sequential);
        assert_eq!(c.facets, 7);
        assert!(c.all_ok());
    }
    for j in 0..4 {
        let f = sink_face(4, j).unwrap();
        assert_eq!(f.affine_dim(), 16);
        let c = f.check(Parallelism::Parallel);
        assert_eq!(c.facets, 25);
        assert!(c.all_ok());
    }
}

#[test]
fn sink_face_hull_at_three_nodes() {
    let f = sink_face(3, 2).unwrap();
    let v: Vec<Vec<i64>> = f.vertices.iter().map(|x| x.iter().map(|&b| b as i64).collect()).collect();
    let mut hull = bnsl_polytope::dd::hull_facets(&v).unwrap();
    let mut listed: Vec<LinearInequality> = f.facets.iter().map(|x| x.1.clone()).collect();
    hull.sort();
    listed.sort();
    assert_eq!(hull, listed);
    let o = order_face(3, &[1, 2, 0]).unwrap();
    let v: Vec<Vec<i64>> = o.vertices.iter().map(|x| x.iter().map(|&b| b as i64).collect()).collect();
    let mut listed: Vec<LinearInequality> = o.facets.iter().map(|x| x.1.clone()).collect();
    listed.sort();
    assert_eq!(bnsl_polytope::dd::hull_facets(&v).unwrap(), listed);
}
