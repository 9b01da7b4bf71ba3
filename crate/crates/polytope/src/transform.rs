//! Lifting inequalities to more nodes and dropping families.

use crate::error::{PolyError, Result};
use crate::ineq::LinearInequality;
use crate::space::FamilyPolytope;
use bnsl_core::model::{Family, FamilyIndex};

fn is_complete(idx: &FamilyIndex) -> bool {
    let p = idx.p();
    p == 0 || idx.len() == p * ((1usize << (p - 1)) - 1)
}

/// Modified convexity of some node, i.e. `x_{i<-{}} >= 0` written over
/// the non-empty families.
fn is_empty_family_bound(q: &LinearInequality, idx: &FamilyIndex) -> bool {
    (0..idx.p()).any(|i| {
        let r = idx.child_range(i);
        q.rhs == 1
            && !r.is_empty()
            && q.coef.iter().enumerate().all(|(k, &c)| c == r.contains(&k) as i64)
    })
}

/// Lifts `q` over `from` to the node set of `to`, node `v` of `from`
/// becoming `embed[v]`. Each coefficient of i <- J spreads to every
/// i <- J' whose trace on the embedded nodes is J; families of new
/// children get zero.
pub fn lift_facet(
    q: &LinearInequality,
    from: &FamilyIndex,
    to: &FamilyIndex,
    embed: &[usize],
) -> Result<LinearInequality> {
    if q.is_lower_bound() {
        return Err(PolyError::Precondition("lower bounds do not lift".into()));
    }
    if is_empty_family_bound(q, from) {
        return Err(PolyError::Precondition(
            "modified convexity bounds the empty family and does not lift".into(),
        ));
    }
    if !is_complete(from) || !is_complete(to) {
        return Err(PolyError::Precondition("lifting needs every parent set permitted".into()));
    }
    if embed.len() != from.p() || embed.iter().any(|&v| v >= to.p()) {
        return Err(PolyError::Precondition("bad embedding".into()));
    }
    let mut back = vec![None; to.p()];
    for (v, &w) in embed.iter().enumerate() {
        back[w] = Some(v);
    }
    let mut coef = vec![0; to.len()];
    for (k, f) in to.families().iter().enumerate() {
        let Some(i) = back[f.child] else { continue };
        let j: Vec<usize> = f.parents.iter().filter_map(|&w| back[w]).collect();
        if j.is_empty() {
            continue;
        }
        let g = Family::new(i, j);
        coef[k] = q.coef[from.position(g.child, &g.parents).expect("complete index")];
    }
    Ok(LinearInequality::new(coef, q.rhs))
}

/// Lifts from the first `from.p()` nodes.
pub fn lift_to(q: &LinearInequality, from: &FamilyIndex, to: &FamilyIndex) -> Result<LinearInequality> {
    let embed: Vec<usize> = (0..from.p()).collect();
    lift_facet(q, from, to, &embed)
}

/// Deletes the coordinate of `child <- parents` without any check.
pub fn drop_family(
    q: &LinearInequality,
    poly: &FamilyPolytope,
    child: usize,
    parents: &[usize],
) -> Result<(LinearInequality, FamilyPolytope)> {
    let smaller = poly.without(child, parents)?;
    let gone = poly.index().position(child, parents).expect("checked by without");
    let coef = q
        .coef
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != gone)
        .map(|(_, &c)| c)
        .collect();
    Ok((LinearInequality::new(coef, q.rhs), smaller))
}

/// Drops `child <- parents`, which must have a smaller non-empty permitted
/// parent set with the same coefficient. The caller certifies the result
/// with `facet_rank` on the returned polytope.
pub fn restrict_facet(
    q: &LinearInequality,
    poly: &FamilyPolytope,
    child: usize,
    parents: &[usize],
) -> Result<(LinearInequality, FamilyPolytope)> {
    let idx = poly.index();
    let k = idx
        .position(child, parents)
        .ok_or_else(|| PolyError::Precondition("family not in the index".into()))?;
    let eligible = idx.child_range(child).any(|t| {
        let j = &idx.family(t).parents;
        t != k && j.len() < parents.len() && j.iter().all(|v| parents.contains(v)) && q.coef[t] == q.coef[k]
    });
    if !eligible {
        return Err(PolyError::Precondition(
            "no smaller parent set carries the same coefficient; drop unsupported".into(),
        ));
    }
    drop_family(q, poly, child, parents)
}
