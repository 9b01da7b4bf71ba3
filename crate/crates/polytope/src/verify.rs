//! Validity and facet certification by exhaustive enumeration.

use crate::catalog::FacetCatalog;
use crate::ineq::LinearInequality;
use crate::rank::affine_rank;
use crate::space::FamilyPolytope;
use bnsl_core::model::FamilyIndex;
use bnsl_core::par::{self, Parallelism};
use bnsl_core::DigraphAssignment;

#[derive(Clone, Debug, PartialEq)]
pub struct Validity {
    pub valid: bool,
    pub max_lhs: i64,
    /// First enumerated digraph violating the inequality.
    pub witness: Option<DigraphAssignment>,
}

pub fn verify_validity(q: &LinearInequality, poly: &FamilyPolytope) -> Validity {
    let mut max_lhs = i64::MIN;
    let mut witness = None;
    for (x, g) in poly.vertices().iter().zip(poly.dags()) {
        let v = q.lhs_01(x);
        max_lhs = max_lhs.max(v);
        if v > q.rhs && witness.is_none() {
            witness = Some(g.clone());
        }
    }
    Validity {
        valid: witness.is_none(),
        max_lhs,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetRank {
    /// Vertices with `coef . x == rhs`.
    pub tight: usize,
    /// Rank of the tight rows `(x, 1)`.
    pub rank: usize,
    /// Number of coordinates.
    pub dim: usize,
}

impl FacetRank {
    /// A valid inequality defines a facet iff its tight vertices span a
    /// hyperplane, i.e. `dim` affinely independent points.
    pub fn is_facet(&self) -> bool {
        self.rank == self.dim
    }
}

pub fn facet_rank(q: &LinearInequality, poly: &FamilyPolytope) -> FacetRank {
    rank_over(q, poly.vertices(), poly.dim())
}

/// Facet rank over an explicit 0/1 vertex list.
pub fn rank_over(q: &LinearInequality, vertices: &[Vec<u8>], dim: usize) -> FacetRank {
    let tight: Vec<Vec<i64>> = vertices
        .iter()
        .filter(|x| q.lhs_01(x) == q.rhs)
        .map(|x| x.iter().map(|&b| b as i64).collect())
        .collect();
    let rank = affine_rank(tight.iter().map(|v| v.as_slice()), dim + 1);
    FacetRank {
        tight: tight.len(),
        rank,
        dim,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryReport {
    pub label: String,
    pub valid: bool,
    pub rank: FacetRank,
}

impl EntryReport {
    pub fn ok(&self) -> bool {
        self.valid && self.rank.is_facet()
    }
}

/// Certifies every entry; entries are independent and run through `mode`.
pub fn verify_catalog(cat: &FacetCatalog, poly: &FamilyPolytope, mode: Parallelism) -> Vec<EntryReport> {
    par::map(mode, &cat.entries, |e| EntryReport {
        label: e.label.clone(),
        valid: verify_validity(&e.ineq, poly).valid,
        rank: facet_rank(&e.ineq, poly),
    })
}

/// Either a single lower bound or non-negative coefficients with positive
/// right-hand side.
pub fn is_monotone_form(q: &LinearInequality) -> bool {
    q.is_lower_bound() || (q.coef.iter().all(|&c| c >= 0) && q.rhs > 0)
}

pub fn check_monotone_form(cat: &FacetCatalog) -> bool {
    cat.entries.iter().all(|e| is_monotone_form(&e.ineq))
}

/// Coefficients never drop when a parent set grows (same child).
/// Lower bounds are exempt.
pub fn has_monotone_coefficients(q: &LinearInequality, idx: &FamilyIndex) -> bool {
    if q.is_lower_bound() {
        return true;
    }
    let fams = idx.families();
    for (a, fa) in fams.iter().enumerate() {
        for k in idx.child_range(fa.child) {
            let fb = &fams[k];
            let subset = fa.parents.len() < fb.parents.len()
                && fa.parents.iter().all(|v| fb.parents.contains(v));
            if subset && q.coef[a] > q.coef[k] {
                return false;
            }
        }
    }
    true
}

pub fn check_coeff_monotonicity(cat: &FacetCatalog) -> bool {
    cat.entries
        .iter()
        .all(|e| has_monotone_coefficients(&e.ineq, &cat.index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_facets, modified_convexity};

    #[test]
    fn invalid_witness_is_empty_graph() {
        let poly = FamilyPolytope::full(3).unwrap();
        let mut coef = vec![0; 9];
        coef[0] = 1;
        let v = verify_validity(&LinearInequality { coef, rhs: -1 }, &poly);
        assert!(!v.valid);
        assert_eq!(v.witness.unwrap(), DigraphAssignment::empty(3));
    }

    #[test]
    fn modified_convexity_rank_nine() {
        let poly = FamilyPolytope::full(3).unwrap();
        let r = facet_rank(&modified_convexity(poly.index(), 0), &poly);
        assert_eq!(r.rank, 9);
        assert!(r.is_facet());
    }

    #[test]
    fn shape_checks_reject_synthetic_rows() {
        let cat = catalog_facets(3, None).unwrap();
        assert!(check_monotone_form(&cat) && check_coeff_monotonicity(&cat));
        let mixed = LinearInequality::new(vec![1, -1, 0, 0, 0, 0, 0, 0, 0], 1);
        assert!(!is_monotone_form(&mixed));
        // a <- {b} heavier than a <- {b,c}
        let drop = LinearInequality::new(vec![2, 0, 1, 0, 0, 0, 0, 0, 0], 2);
        assert!(!has_monotone_coefficients(&drop, &cat.index));
    }
}
