//! Order faces and sink faces, written in their own coordinates.

use crate::catalog::{catalog_facets, modified_convexity};
use crate::error::{PolyError, Result};
use crate::ineq::{family_label, LinearInequality};
use crate::rank::affine_rank;
use crate::space::FamilyPolytope;
use crate::verify::rank_over;
use bnsl_core::model::{Family, FamilyIndex};
use bnsl_core::par::{self, Parallelism};

/// A face of the full family polytope cut out by clamping some families
/// to zero. Facets and vertices live over the surviving coordinates.
#[derive(Clone, Debug)]
pub struct Face {
    pub p: usize,
    pub names: Vec<String>,
    pub index: FamilyIndex,
    /// Clamped family columns of the full index.
    pub clamped: Vec<usize>,
    /// Surviving full-index columns, in face-coordinate order.
    pub coords: Vec<usize>,
    pub vertices: Vec<Vec<u8>>,
    pub facets: Vec<(String, LinearInequality)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    /// Affine dimension of the vertex set.
    pub dim: usize,
    pub facets: usize,
    pub valid: usize,
    pub facet_defining: usize,
}

impl FaceCheck {
    pub fn all_ok(&self) -> bool {
        self.valid == self.facets && self.facet_defining == self.facets
    }
}

impl Face {
    fn build(poly: &FamilyPolytope, keep: impl Fn(&Family) -> bool) -> Self {
        let idx = poly.index().clone();
        let (coords, clamped): (Vec<usize>, Vec<usize>) =
            (0..idx.len()).partition(|&k| keep(idx.family(k)));
        let vertices = poly
            .vertices()
            .iter()
            .filter(|x| clamped.iter().all(|&k| x[k] == 0))
            .map(|x| coords.iter().map(|&k| x[k]).collect())
            .collect();
        Face {
            p: poly.p(),
            names: poly.names().to_vec(),
            index: idx,
            clamped,
            coords,
            vertices,
            facets: Vec::new(),
        }
    }

    fn coord_of(&self, k: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == k)
    }

    fn push_lower_bound(&mut self, k: usize) {
        let c = self.coord_of(k).expect("free column");
        let label = format!("lb {}", family_label(self.index.family(k), &self.names));
        self.facets
            .push((label, LinearInequality::lower_bound(self.coords.len(), c)));
    }

    /// Restricts a full-index inequality to the face coordinates.
    pub fn restrict(&self, q: &LinearInequality) -> LinearInequality {
        LinearInequality::new(self.coords.iter().map(|&k| q.coef[k]).collect(), q.rhs)
    }

    pub fn affine_dim(&self) -> usize {
        let pts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|x| x.iter().map(|&b| b as i64).collect())
            .collect();
        affine_rank(pts.iter().map(|v| v.as_slice()), self.coords.len() + 1).saturating_sub(1)
    }

    /// Validity and facet rank of every listed facet within the face.
    pub fn check(&self, mode: Parallelism) -> FaceCheck {
        let n = self.coords.len();
        let res = par::map(mode, &self.facets, |(_, q)| {
            let valid = self.vertices.iter().all(|x| q.lhs_01(x) <= q.rhs);
            (valid, rank_over(q, &self.vertices, n).is_facet())
        });
        FaceCheck {
            dim: self.affine_dim(),
            facets: self.facets.len(),
            valid: res.iter().filter(|r| r.0).count(),
            facet_defining: res.iter().filter(|r| r.1).count(),
        }
    }

    /// Vertices with `p(p-1)/2` edges.
    pub fn tournaments(&self) -> usize {
        let full = self.p * self.p.saturating_sub(1) / 2;
        self.vertices
            .iter()
            .filter(|x| {
                x.iter()
                    .zip(&self.coords)
                    .filter(|(&b, _)| b == 1)
                    .map(|(_, &k)| self.index.family(k).parents.len())
                    .sum::<usize>()
                    == full
            })
            .count()
    }
}

/// Families whose parents all precede the child in `order`.
pub fn order_face(p: usize, order: &[usize]) -> Result<Face> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..p).collect::<Vec<_>>() {
        return Err(PolyError::Precondition("order must be a permutation".into()));
    }
    let mut rank = vec![0; p];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let poly = FamilyPolytope::full(p)?;
    let mut face = Face::build(&poly, |f| f.parents.iter().all(|&v| rank[v] < rank[f.child]));
    for c in 0..face.coords.len() {
        face.push_lower_bound(face.coords[c]);
    }
    for &i in order {
        if face.coords.iter().any(|&k| face.index.family(k).child == i) {
            let q = face.restrict(&modified_convexity(&face.index, i));
            face.facets.push((format!("mc {}", face.names[i]), q));
        }
    }
    Ok(face)
}

/// Acyclic digraphs in which `j` has no children.
pub fn sink_face(p: usize, j: usize) -> Result<Face> {
    if !(3..=5).contains(&p) || j >= p {
        return Err(PolyError::Unsupported(format!("sink face of node {j} on {p} nodes")));
    }
    let poly = FamilyPolytope::full(p)?;
    let mut face = Face::build(&poly, |f| f.child == j || !f.parents.contains(&j));
    let others: Vec<usize> = (0..p).filter(|&v| v != j).collect();
    let sub = catalog_facets(p - 1, None)?;
    for e in &sub.entries {
        let mut coef = vec![0; face.coords.len()];
        for (k, f) in sub.index.families().iter().enumerate() {
            let g = Family::new(others[f.child], f.parents.iter().map(|&v| others[v]).collect());
            let full = face.index.position(g.child, &g.parents).expect("complete");
            coef[face.coord_of(full).expect("free column")] = e.ineq.coef[k];
        }
        let label = relabel(&e.label, &others, &face.names, &sub.names);
        face.facets.push((label, LinearInequality::new(coef, e.ineq.rhs)));
    }
    for k in face.index.child_range(j) {
        face.push_lower_bound(k);
    }
    let mc = face.restrict(&modified_convexity(&face.index, j));
    face.facets.push((format!("mc {}", face.names[j]), mc));
    Ok(face)
}

/// Renames single-letter node names after the label's class prefix.
fn relabel(label: &str, others: &[usize], names: &[String], sub: &[String]) -> String {
    let (head, tail) = label.split_once(' ').unwrap_or(("", label));
    let body: String = tail
        .chars()
        .map(|c| match sub.iter().position(|n| *n == c.to_string()) {
            Some(v) => names[others[v]].clone(),
            None => c.to_string(),
        })
        .collect();
    format!("{head} {body}")
}
