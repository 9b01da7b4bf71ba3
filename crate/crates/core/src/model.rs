//! Instances, families, digraph encodings and cluster left-hand sides.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

pub type ParentSet = Vec<usize>;

pub const INTEGRALITY_TOL: f64 = 1e-6;
pub const DEFAULT_ENUM_LIMIT: usize = 6;

/// Order on parent sets: by size, then lexicographically.
pub fn cmp_sets(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn set_mask(s: &[usize]) -> u64 {
    s.iter().fold(0u64, |m, &j| m | (1u64 << j))
}

pub fn mask_set(mut m: u64) -> ParentSet {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        out.push(j);
        m &= m - 1;
    }
    out
}

/// Default display names: `a`, `b`, ... for up to 26 nodes, `v0`, `v1`, ... beyond.
pub fn default_names(p: usize) -> Vec<String> {
    (0..p)
        .map(|i| {
            if p <= 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("v{i}")
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    pub child: usize,
    pub parents: ParentSet,
}

impl Family {
    pub fn new(child: usize, mut parents: ParentSet) -> Self {
        parents.sort_unstable();
        parents.dedup();
        Family { child, parents }
    }

    pub fn render(&self, names: &[String]) -> String {
        format!("{} <- {}", names[self.child], render_set(&self.parents, names))
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.child
            .cmp(&other.child)
            .then_with(|| cmp_sets(&self.parents, &other.parents))
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn render_set(s: &[usize], names: &[String]) -> String {
    let inner: Vec<&str> = s.iter().map(|&j| names[j].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A BNSL instance: nodes, permitted parent sets with their local scores,
/// and an optional cap on parent-set size.
#[derive(Clone, Debug, PartialEq)]
pub struct BnslInstance {
    names: Vec<String>,
    permitted: Vec<Vec<ParentSet>>,
    scores: Vec<Vec<f64>>,
    kappa: Option<usize>,
}

impl BnslInstance {
    /// Builds an instance from per-node `(parent set, score)` rows.
    /// Rows are stored in canonical set order; the empty set comes first.
    pub fn new(
        names: Vec<String>,
        rows: Vec<Vec<(ParentSet, f64)>>,
        kappa: Option<usize>,
    ) -> Result<Self> {
        let p = names.len();
        if rows.len() != p {
            return Err(Error::Instance(format!(
                "{} nodes but {} score blocks",
                p,
                rows.len()
            )));
        }
        if kappa == Some(0) {
            return Err(Error::Instance("kappa must be positive".into()));
        }
        let mut permitted = Vec::with_capacity(p);
        let mut scores = Vec::with_capacity(p);
        for (i, mut block) in rows.into_iter().enumerate() {
            for (set, score) in block.iter_mut() {
                let before = set.len();
                set.sort_unstable();
                set.dedup();
                if set.len() != before {
                    return Err(Error::Instance(format!(
                        "repeated parent in a set of node {}",
                        names[i]
                    )));
                }
                if set.iter().any(|&j| j >= p) {
                    return Err(Error::Instance(format!(
                        "parent index out of range for node {}",
                        names[i]
                    )));
                }
                if set.contains(&i) {
                    return Err(Error::Instance(format!(
                        "node {} listed as its own parent",
                        names[i]
                    )));
                }
                if let Some(k) = kappa {
                    if set.len() > k {
                        return Err(Error::Instance(format!(
                            "parent set of node {} exceeds kappa {k}",
                            names[i]
                        )));
                    }
                }
                if !score.is_finite() {
                    return Err(Error::Instance(format!(
                        "non-finite score for node {}",
                        names[i]
                    )));
                }
            }
            block.sort_by(|a, b| cmp_sets(&a.0, &b.0));
            for w in block.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Instance(format!(
                        "duplicate family {}",
                        Family::new(i, w[0].0.clone()).render(&names)
                    )));
                }
            }
            if block.first().map(|r| !r.0.is_empty()).unwrap_or(true) {
                return Err(Error::Instance(format!(
                    "missing empty parent set for node {}",
                    names[i]
                )));
            }
            let (sets, sc): (Vec<_>, Vec<_>) = block.into_iter().unzip();
            permitted.push(sets);
            scores.push(sc);
        }
        Ok(BnslInstance {
            names,
            permitted,
            scores,
            kappa,
        })
    }

    /// Every parent set (up to `kappa`) permitted for every node, all scores zero.
    pub fn complete(p: usize, kappa: Option<usize>) -> Self {
        let rows = (0..p)
            .map(|i| {
                all_parent_sets(p, i, kappa)
                    .into_iter()
                    .map(|s| (s, 0.0))
                    .collect()
            })
            .collect();
        BnslInstance::new(default_names(p), rows, kappa).expect("complete instance is valid")
    }

    /// Same permitted sets, scores given by `f(child, parents)`.
    pub fn with_scores(&self, mut f: impl FnMut(usize, &[usize]) -> f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.p() {
            for (k, s) in self.permitted[i].iter().enumerate() {
                out.scores[i][k] = f(i, s);
            }
        }
        out
    }

    pub fn p(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn kappa(&self) -> Option<usize> {
        self.kappa
    }

    /// Permitted parent sets of node `i`, empty set first.
    pub fn permitted(&self, i: usize) -> &[ParentSet] {
        &self.permitted[i]
    }

    pub fn scores(&self, i: usize) -> &[f64] {
        &self.scores[i]
    }

    pub fn position(&self, i: usize, parents: &[usize]) -> Option<usize> {
        self.permitted[i]
            .binary_search_by(|s| cmp_sets(s, parents))
            .ok()
    }

    pub fn score(&self, i: usize, parents: &[usize]) -> Option<f64> {
        self.position(i, parents).map(|k| self.scores[i][k])
    }

    pub fn family_count(&self) -> usize {
        self.permitted.iter().map(|s| s.len()).sum()
    }

    pub fn is_permitted(&self, i: usize, parents: &[usize]) -> bool {
        self.position(i, parents).is_some()
    }

    /// True if every subset of a permitted set is permitted.
    pub fn is_downward_closed(&self) -> bool {
        (0..self.p()).all(|i| {
            self.permitted[i].iter().all(|s| {
                (0..s.len()).all(|drop| {
                    let mut t = s.clone();
                    t.remove(drop);
                    self.is_permitted(i, &t)
                })
            })
        })
    }

    pub fn family_index(&self) -> FamilyIndex {
        let fams = (0..self.p())
            .flat_map(|i| {
                self.permitted[i]
                    .iter()
                    .filter(|s| !s.is_empty())
                    .map(move |s| Family {
                        child: i,
                        parents: s.clone(),
                    })
            })
            .collect();
        FamilyIndex::from_families(self.p(), fams)
    }
}

/// All subsets of `V \ {i}` up to `kappa` elements, in canonical order.
pub fn all_parent_sets(p: usize, i: usize, kappa: Option<usize>) -> Vec<ParentSet> {
    let others: Vec<usize> = (0..p).filter(|&j| j != i).collect();
    let cap = kappa.unwrap_or(p);
    let mut out = Vec::new();
    for m in 0u64..(1u64 << others.len()) {
        if m.count_ones() as usize <= cap {
            out.push(mask_set(m).into_iter().map(|b| others[b]).collect());
        }
    }
    out.sort_by(|a: &ParentSet, b| cmp_sets(a, b));
    out
}

/// Column index over the non-empty families.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyIndex {
    p: usize,
    families: Vec<Family>,
    lookup: HashMap<Family, usize>,
    ranges: Vec<Range<usize>>,
}

impl FamilyIndex {
    /// Builds an index from non-empty families; sorts them canonically.
    pub fn from_families(p: usize, mut families: Vec<Family>) -> Self {
        families.retain(|f| !f.parents.is_empty());
        families.sort();
        families.dedup();
        let lookup = families
            .iter()
            .enumerate()
            .map(|(k, f)| (f.clone(), k))
            .collect();
        let mut ranges = vec![0..0; p];
        let mut start = 0;
        for (i, r) in ranges.iter_mut().enumerate() {
            let end = start + families[start..].iter().take_while(|f| f.child == i).count();
            *r = start..end;
            start = end;
        }
        FamilyIndex {
            p,
            families,
            lookup,
            ranges,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn family(&self, k: usize) -> &Family {
        &self.families[k]
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn position(&self, child: usize, parents: &[usize]) -> Option<usize> {
        self.lookup
            .get(&Family {
                child,
                parents: parents.to_vec(),
            })
            .copied()
    }

    pub fn child_range(&self, i: usize) -> Range<usize> {
        self.ranges[i].clone()
    }
}

/// One parent set per node; cyclic assignments are representable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigraphAssignment {
    parents: Vec<ParentSet>,
}

impl DigraphAssignment {
    pub fn new(mut parents: Vec<ParentSet>) -> Self {
        for s in parents.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        DigraphAssignment { parents }
    }

    pub fn empty(p: usize) -> Self {
        DigraphAssignment {
            parents: vec![Vec::new(); p],
        }
    }

    pub fn p(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn all_parents(&self) -> &[ParentSet] {
        &self.parents
    }

    pub fn set_parents(&mut self, i: usize, mut s: ParentSet) {
        s.sort_unstable();
        s.dedup();
        self.parents[i] = s;
    }

    /// Edges as `(parent, child)` pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (j, i)))
            .collect()
    }

    pub fn check_permitted(&self, inst: &BnslInstance) -> Result<()> {
        if self.p() != inst.p() {
            return Err(Error::Instance(format!(
                "assignment has {} nodes, instance {}",
                self.p(),
                inst.p()
            )));
        }
        for i in 0..self.p() {
            if !inst.is_permitted(i, &self.parents[i]) {
                return Err(Error::UnknownFamily(
                    Family::new(i, self.parents[i].clone()).render(inst.names()),
                ));
            }
        }
        Ok(())
    }

    pub fn render(&self, names: &[String]) -> String {
        (0..self.p())
            .map(|i| format!("{} <- {}", names[i], render_set(&self.parents[i], names)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for DigraphAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.p())))
    }
}

/// Dense point over a [`FamilyIndex`].
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyVector(pub Vec<f64>);

impl FamilyVector {
    pub fn zeros(len: usize) -> Self {
        FamilyVector(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn is_integral(&self, tol: f64) -> bool {
        self.0.iter().all(|v| v.abs() <= tol || (v - 1.0).abs() <= tol)
    }

    /// Mass on the non-empty parent sets of each child.
    pub fn child_mass(&self, idx: &FamilyIndex) -> Vec<f64> {
        (0..idx.p())
            .map(|i| idx.child_range(i).map(|k| self.0[k]).sum())
            .collect()
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

pub fn encode_digraph(a: &DigraphAssignment, idx: &FamilyIndex) -> Result<FamilyVector> {
    let mut x = FamilyVector::zeros(idx.len());
    for i in 0..a.p() {
        let s = a.parents(i);
        if s.is_empty() {
            continue;
        }
        let k = idx.position(i, s).ok_or_else(|| {
            Error::UnknownFamily(Family::new(i, s.to_vec()).render(&default_names(a.p())))
        })?;
        x.0[k] = 1.0;
    }
    Ok(x)
}

pub fn decode_digraph(x: &FamilyVector, idx: &FamilyIndex) -> Result<DigraphAssignment> {
    if x.len() != idx.len() {
        return Err(Error::Decode(format!(
            "vector length {} but index has {} families",
            x.len(),
            idx.len()
        )));
    }
    let mut a = DigraphAssignment::empty(idx.p());
    let mut seen = vec![false; idx.p()];
    for (k, &v) in x.0.iter().enumerate() {
        if v.abs() <= INTEGRALITY_TOL {
            continue;
        }
        if (v - 1.0).abs() > INTEGRALITY_TOL {
            return Err(Error::Decode(format!("component {k} is fractional ({v})")));
        }
        let f = idx.family(k);
        if seen[f.child] {
            return Err(Error::Decode(format!(
                "node {} has two parent sets",
                f.child
            )));
        }
        seen[f.child] = true;
        a.parents[f.child] = f.parents.clone();
    }
    Ok(a)
}

/// Depth-first search with white/grey/black marking along parent edges.
pub fn is_acyclic(a: &DigraphAssignment) -> bool {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let p = a.p();
    let mut colour = vec![WHITE; p];
    for root in 0..p {
        if colour[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        colour[root] = GREY;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&u) = a.parents[v].get(*next) {
                *next += 1;
                match colour[u] {
                    GREY => return false,
                    WHITE => {
                        colour[u] = GREY;
                        stack.push((u, 0));
                    }
                    _ => {}
                }
            } else {
                colour[v] = BLACK;
                stack.pop();
            }
        }
    }
    true
}

pub fn total_score(a: &DigraphAssignment, inst: &BnslInstance) -> Result<f64> {
    if a.p() != inst.p() {
        return Err(Error::Instance("node count mismatch".into()));
    }
    let mut sum = 0.0;
    for i in 0..a.p() {
        sum += inst.score(i, a.parents(i)).ok_or_else(|| {
            Error::UnknownFamily(Family::new(i, a.parents(i).to_vec()).render(inst.names()))
        })?;
    }
    Ok(sum)
}

/// Streams every acyclic digraph over `p` nodes exactly once.
pub fn enumerate_acyclic_digraphs(p: usize, kappa: Option<usize>) -> Result<DagIter> {
    enumerate_acyclic_digraphs_with_limit(p, kappa, DEFAULT_ENUM_LIMIT)
}

pub fn enumerate_acyclic_digraphs_with_limit(
    p: usize,
    kappa: Option<usize>,
    limit: usize,
) -> Result<DagIter> {
    if p > limit || p > 63 {
        return Err(Error::EnumerationLimit { p, limit });
    }
    let cands = (0..p)
        .map(|i| {
            all_parent_sets(p, i, kappa)
                .iter()
                .map(|s| set_mask(s))
                .collect()
        })
        .collect();
    Ok(DagIter::new(cands))
}

/// Streams every acyclic digraph built from the instance's permitted sets.
pub fn enumerate_instance_dags(inst: &BnslInstance, limit: usize) -> Result<DagIter> {
    if inst.p() > limit || inst.p() > 63 {
        return Err(Error::EnumerationLimit {
            p: inst.p(),
            limit,
        });
    }
    let cands = (0..inst.p())
        .map(|i| inst.permitted(i).iter().map(|s| set_mask(s)).collect())
        .collect();
    Ok(DagIter::new(cands))
}

/// Depth-first assignment of parent sets node by node, pruning as soon as
/// the assigned prefix closes a cycle. Order is lexicographic in the
/// per-node candidate positions.
pub struct DagIter {
    cands: Vec<Vec<u64>>,
    choice: Vec<usize>,
    chosen: Vec<u64>,
    level: usize,
    done: bool,
}

impl DagIter {
    fn new(cands: Vec<Vec<u64>>) -> Self {
        let p = cands.len();
        DagIter {
            cands,
            choice: vec![0; p],
            chosen: vec![0; p],
            level: 0,
            done: false,
        }
    }

    fn closes_cycle(&self, k: usize, m: u64) -> bool {
        let into_k = m & ((1u64 << k) - 1);
        if into_k == 0 {
            return false;
        }
        let mut reach = 0u64;
        let mut frontier = 1u64 << k;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            for c in 0..k {
                if self.chosen[c] >> u & 1 == 1 && reach >> c & 1 == 0 {
                    reach |= 1 << c;
                    frontier |= 1 << c;
                }
            }
        }
        reach & into_k != 0
    }
}

impl Iterator for DagIter {
    type Item = DigraphAssignment;

    fn next(&mut self) -> Option<DigraphAssignment> {
        let p = self.cands.len();
        if self.done {
            return None;
        }
        if p == 0 {
            self.done = true;
            return Some(DigraphAssignment::empty(0));
        }
        loop {
            let k = self.level;
            if self.choice[k] >= self.cands[k].len() {
                if k == 0 {
                    self.done = true;
                    return None;
                }
                self.choice[k] = 0;
                self.level -= 1;
                self.choice[self.level] += 1;
                continue;
            }
            let m = self.cands[k][self.choice[k]];
            if self.closes_cycle(k, m) {
                self.choice[k] += 1;
                continue;
            }
            self.chosen[k] = m;
            if k + 1 == p {
                self.choice[k] += 1;
                return Some(DigraphAssignment {
                    parents: self.chosen.iter().map(|&m| mask_set(m)).collect(),
                });
            }
            self.level += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterForm {
    /// Mass of parent sets disjoint from C, implicit empty sets included.
    Outside,
    /// Mass of parent sets meeting C.
    Inside,
}

pub fn cluster_lhs(
    x: &FamilyVector,
    idx: &FamilyIndex,
    cluster: &[usize],
    form: ClusterForm,
) -> Result<f64> {
    let mut c = cluster.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() < 2 {
        return Err(Error::ClusterTooSmall);
    }
    let mut inside = 0.0;
    for &i in &c {
        for k in idx.child_range(i) {
            if idx.family(k).parents.iter().any(|j| c.binary_search(j).is_ok()) {
                inside += x.0[k];
            }
        }
    }
    Ok(match form {
        ClusterForm::Inside => inside,
        ClusterForm::Outside => c.len() as f64 - inside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3_left() -> DigraphAssignment {
        DigraphAssignment::new(vec![vec![1], vec![], vec![0, 1], vec![2]])
    }

    fn fig3_right() -> DigraphAssignment {
        DigraphAssignment::new(vec![vec![1], vec![3], vec![0], vec![2]])
    }

    #[test]
    fn dag_counts() {
        assert_eq!(enumerate_acyclic_digraphs(1, None).unwrap().count(), 1);
        assert_eq!(enumerate_acyclic_digraphs(2, None).unwrap().count(), 3);
        assert_eq!(enumerate_acyclic_digraphs(3, None).unwrap().count(), 25);
        assert_eq!(enumerate_acyclic_digraphs(4, None).unwrap().count(), 543);
        assert_eq!(enumerate_acyclic_digraphs(4, Some(2)).unwrap().count(), 443);
        assert!(enumerate_acyclic_digraphs(7, None).is_err());
    }

    #[test]
    fn fig3_acyclicity() {
        assert!(is_acyclic(&fig3_left()));
        assert!(!is_acyclic(&fig3_right()));
        assert!(is_acyclic(&DigraphAssignment::empty(4)));
    }

    #[test]
    fn fig3_caption_cluster_values() {
        let idx = BnslInstance::complete(4, None).family_index();
        let subsets = [
            "ab", "ac", "ad", "bc", "bd", "cd", "abc", "abd", "acd", "bcd", "abcd",
        ];
        let left = [1.0, 1.0, 2.0, 1.0, 2.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0];
        let right = [1.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0];
        for (g, want) in [(fig3_left(), left), (fig3_right(), right)] {
            let x = encode_digraph(&g, &idx).unwrap();
            for (s, w) in subsets.iter().zip(want) {
                let c: Vec<usize> = s.bytes().map(|b| (b - b'a') as usize).collect();
                assert_eq!(cluster_lhs(&x, &idx, &c, ClusterForm::Outside).unwrap(), w, "{s}");
            }
        }
    }

    #[test]
    fn table1_encoding() {
        // nodes i, j, k = 0, 1, 2
        let idx = BnslInstance::complete(3, None).family_index();
        assert_eq!(idx.len(), 9);
        let g = DigraphAssignment::new(vec![vec![1], vec![], vec![0, 1]]);
        let x = encode_digraph(&g, &idx).unwrap();
        let ones: Vec<usize> = (0..9).filter(|&k| x.0[k] == 1.0).collect();
        assert_eq!(
            ones,
            vec![idx.position(0, &[1]).unwrap(), idx.position(2, &[0, 1]).unwrap()]
        );
        assert_eq!(decode_digraph(&x, &idx).unwrap(), g);
        assert_eq!(
            decode_digraph(&FamilyVector::zeros(9), &idx).unwrap(),
            DigraphAssignment::empty(3)
        );
        let mut bad = FamilyVector::zeros(9);
        bad.0[idx.position(0, &[1]).unwrap()] = 1.0;
        bad.0[idx.position(0, &[2]).unwrap()] = 1.0;
        assert!(decode_digraph(&bad, &idx).is_err());
    }

    #[test]
    fn family_order_is_size_then_lex() {
        let idx = BnslInstance::complete(3, None).family_index();
        let a: Vec<_> = idx.child_range(0).map(|k| idx.family(k).parents.clone()).collect();
        assert_eq!(a, vec![vec![1], vec![2], vec![1, 2]]);
    }

    #[test]
    fn instance_validation() {
        let names = default_names(2);
        let missing = BnslInstance::new(
            names.clone(),
            vec![vec![(vec![1], 1.0)], vec![(vec![], 0.0)]],
            None,
        );
        assert!(missing.unwrap_err().to_string().contains("missing empty parent set"));
        let selfp = BnslInstance::new(
            names.clone(),
            vec![vec![(vec![], 0.0), (vec![0], 1.0)], vec![(vec![], 0.0)]],
            None,
        );
        assert!(selfp.is_err());
        let dup = BnslInstance::new(
            names,
            vec![vec![(vec![], 0.0), (vec![], 1.0)], vec![(vec![], 0.0)]],
            None,
        );
        assert!(dup.is_err());
    }
}
