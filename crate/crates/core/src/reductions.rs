//! Instance reductions: parent sets of size at most two, BNSL as an acyclic
//! subgraph problem, and the edge-space projections.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{
    all_parent_sets, render_set, BnslInstance, DigraphAssignment, FamilyIndex, FamilyVector,
    ParentSet,
};

// ---------------------------------------------------------------------------
// parent-set size two

/// Subset node table of a size-two reduction: node `p + t` stands for
/// `subsets[t]` of the original nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct K2Map {
    pub original_p: usize,
    pub subsets: Vec<Vec<usize>>,
    pub empty_penalty: f64,
}

impl K2Map {
    pub fn node_for(&self, s: &[usize]) -> Option<usize> {
        self.subsets
            .iter()
            .position(|t| t.as_slice() == s)
            .map(|t| self.original_p + t)
    }
}

struct K2Builder {
    p: usize,
    subsets: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    queue: Vec<usize>,
}

impl K2Builder {
    /// Node of V' standing for the sorted original set `s`.
    fn node(&mut self, s: &[usize]) -> usize {
        if s.len() == 1 {
            return s[0];
        }
        if let Some(&v) = self.lookup.get(s) {
            return v;
        }
        let v = self.p + self.subsets.len();
        self.subsets.push(s.to_vec());
        self.lookup.insert(s.to_vec(), v);
        self.queue.push(v);
        v
    }

    /// Replacement parent set of size at most two for `j`.
    fn split(&mut self, j: &[usize]) -> ParentSet {
        let mut out = match j.len() {
            0..=2 => j.to_vec(),
            3 => vec![j[0], self.node(&j[1..])],
            n => {
                let h = n.div_ceil(2);
                vec![self.node(&j[..h]), self.node(&j[h..])]
            }
        };
        out.sort_unstable();
        out
    }
}

/// Rewrites an instance so that every parent set has at most two members.
///
/// The penalty on the empty choice of a subset node is
/// `min(-|V|, M|V|, -(Σ_i (max_i - min_i) + 1))` with `M` the smallest score.
/// The last term is what guarantees that no optimum leaves a subset node
/// without its parents whatever the score ranges are.
pub fn reduce_to_k2(inst: &BnslInstance) -> Result<(BnslInstance, K2Map)> {
    let p = inst.p();
    let mut b = K2Builder {
        p,
        subsets: Vec::new(),
        lookup: HashMap::new(),
        queue: Vec::new(),
    };
    let mut rows: Vec<Vec<(ParentSet, f64)>> = Vec::with_capacity(p);
    let mut min_score = f64::INFINITY;
    let mut spread = 0.0;
    for i in 0..p {
        let sc = inst.scores(i);
        let (lo, hi) = sc
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
        min_score = min_score.min(lo);
        spread += hi - lo;
        let mut r = Vec::with_capacity(sc.len());
        for (j, &c) in inst.permitted(i).iter().zip(sc) {
            r.push((b.split(j), c));
        }
        rows.push(r);
    }
    let pf = p as f64;
    let penalty = (-pf).min(min_score * pf).min(-(spread + 1.0));
    let mut extra: Vec<(usize, ParentSet)> = Vec::new();
    while let Some(v) = b.queue.pop() {
        let s = b.subsets[v - p].clone();
        let pair = if s.len() == 2 { s.clone() } else { b.split(&s) };
        extra.push((v, pair));
    }
    extra.sort();
    let mut names = inst.names().to_vec();
    for s in &b.subsets {
        let label: Vec<&str> = s.iter().map(|&j| inst.name(j)).collect();
        names.push(format!("{{{}}}", label.join(",")));
    }
    for (_, pair) in extra {
        rows.push(vec![(vec![], penalty), (pair, 0.0)]);
    }
    let out = BnslInstance::new(names, rows, None)?;
    let f = inst.family_count();
    let bound = if inst.is_downward_closed() {
        p + f
    } else {
        p + inst.kappa().unwrap_or(p).max(1) * f
    };
    if out.p() > bound || out.family_count() > 3 * bound {
        return Err(Error::Reduction(format!(
            "size bound violated: {} nodes, {} families",
            out.p(),
            out.family_count()
        )));
    }
    debug_assert!((0..out.p()).all(|i| out.permitted(i).iter().all(|j| j.len() <= 2)));
    Ok((
        out,
        K2Map {
            original_p: p,
            subsets: b.subsets,
            empty_penalty: penalty,
        },
    ))
}

/// Reads the original parent sets off a solution of the reduced instance.
pub fn lift_k2_solution(sol: &DigraphAssignment, map: &K2Map) -> Result<DigraphAssignment> {
    let p = map.original_p;
    if sol.p() != p + map.subsets.len() {
        return Err(Error::Reduction("assignment does not match the reduced instance".into()));
    }
    for (t, s) in map.subsets.iter().enumerate() {
        if sol.parents(p + t).is_empty() {
            let label: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            return Err(Error::Reduction(format!(
                "subset node {{{}}} has no parents",
                label.join(",")
            )));
        }
    }
    let expand = |v: usize| -> Vec<usize> {
        if v < p {
            vec![v]
        } else {
            map.subsets[v - p].clone()
        }
    };
    let parents = (0..p)
        .map(|i| {
            let mut s: Vec<usize> = sol.parents(i).iter().flat_map(|&v| expand(v)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(DigraphAssignment::new(parents))
}

// ---------------------------------------------------------------------------
// acyclic subgraph problem

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AspTag {
    Plain,
    /// An original node.
    V1,
    /// The gate of one family.
    V2,
    /// A family.
    V3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Plain,
    Blue,
    Black,
    Red,
    Green,
}

/// Arc `tail -> head`, i.e. the edge head←tail.
#[derive(Clone, Debug, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
    pub color: EdgeColor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AspInstance {
    pub labels: Vec<String>,
    pub tags: Vec<AspTag>,
    pub arcs: Vec<Arc>,
}

impl AspInstance {
    pub fn plain(n: usize, arcs: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v, w) in &arcs {
            if u >= n || v >= n || u == v || !w.is_finite() || !seen.insert((u, v)) {
                return Err(Error::Instance(format!("bad arc {u} {v} {w}")));
            }
        }
        Ok(AspInstance {
            labels: (0..n).map(|i| i.to_string()).collect(),
            tags: vec![AspTag::Plain; n],
            arcs: arcs
                .into_iter()
                .map(|(tail, head, weight)| Arc {
                    tail,
                    head,
                    weight,
                    color: EdgeColor::Plain,
                })
                .collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// "n m" header, then one "tail head weight" line per arc.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nums = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for t in body.split_whitespace() {
                nums.push((ln + 1, t));
            }
        }
        let mut it = nums.into_iter();
        let mut next = |what: &str| -> Result<(usize, &str)> {
            it.next().ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unexpected end of input, expected {what}"),
            })
        };
        let int = |(l, t): (usize, &str)| -> Result<usize> {
            t.parse().map_err(|_| Error::Parse {
                line: l,
                msg: format!("expected integer, found '{t}'"),
            })
        };
        let n = int(next("node count")?)?;
        let m = int(next("arc count")?)?;
        let mut arcs = Vec::with_capacity(m);
        for _ in 0..m {
            let u = int(next("tail")?)?;
            let v = int(next("head")?)?;
            let (l, t) = next("weight")?;
            let w: f64 = t.parse().map_err(|_| Error::Parse {
                line: l,
                msg: format!("malformed weight '{t}'"),
            })?;
            arcs.push((u, v, w));
        }
        if let Ok((l, t)) = next("") {
            return Err(Error::Parse {
                line: l,
                msg: format!("trailing token '{t}'"),
            });
        }
        Self::plain(n, arcs)
    }

    pub fn write(&self) -> String {
        let mut s = String::new();
        if self.tags.iter().any(|t| *t != AspTag::Plain) {
            for (v, (l, t)) in self.labels.iter().zip(&self.tags).enumerate() {
                let _ = writeln!(s, "# {v} {t:?} {l}");
            }
        }
        let _ = writeln!(s, "{} {}", self.n(), self.arcs.len());
        for a in &self.arcs {
            let _ = writeln!(s, "{} {} {:?}", a.tail, a.head, a.weight);
        }
        s
    }

    pub fn value(&self, chosen: &[usize]) -> f64 {
        chosen.iter().map(|&e| self.arcs[e].weight).sum()
    }

    pub fn is_acyclic_subset(&self, chosen: &[usize]) -> bool {
        let mut adj = vec![Vec::new(); self.n()];
        for &e in chosen {
            adj[self.arcs[e].tail].push(self.arcs[e].head);
        }
        topo_order(&adj).is_some()
    }
}

fn topo_order(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for a in adj {
        for &v in a {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(u) = stack.pop() {
        out.push(u);
        for &v in &adj[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    (out.len() == n).then_some(out)
}

/// Correspondence between an instance and its acyclic subgraph encoding.
#[derive(Clone, Debug, PartialEq)]
pub struct AspMap {
    pub p: usize,
    /// Per child: (parent set, red arc index) for each permitted set.
    pub red: Vec<Vec<(ParentSet, usize)>>,
    pub shift: Vec<f64>,
    pub big: f64,
    pub mandatory: usize,
}

impl AspMap {
    /// BNSL objective of an optimal-grade arc set.
    pub fn bnsl_value(&self, asp_value: f64) -> f64 {
        asp_value - self.big * self.mandatory as f64 - self.shift.iter().sum::<f64>()
    }
}

/// Encodes an instance as an acyclic subgraph problem.
///
/// Every family `i←J` gets a node `i←J` and a private gate node. Arcs:
/// blue `j -> gate(i←J)` for `j ∈ J`; red `gate(i←J) -> i←J` weighted by the
/// shifted score; black `i←J -> i`; green `i←J -> gate(i←J')` for every
/// other set `J'` of the same child. Two red arcs into one child close the
/// cycle `i←J -> gate(i←J') -> i←J' -> gate(i←J) -> i←J`. Gates are private
/// because a gate shared between children with different parent sets would
/// put a cycle through some acyclic digraphs.
pub fn bnsl_to_asp(inst: &BnslInstance) -> Result<(AspInstance, AspMap)> {
    let p = inst.p();
    let names = inst.names();
    let mut labels: Vec<String> = names.to_vec();
    let mut tags = vec![AspTag::V1; p];
    let mut shift = vec![0.0; p];
    for (i, s) in shift.iter_mut().enumerate() {
        let lo = inst.scores(i).iter().cloned().fold(f64::INFINITY, f64::min);
        if lo <= 0.0 {
            *s = 1.0 - lo;
        }
    }
    let shift_ref = &shift;
    let big = (0..p)
        .flat_map(|i| inst.scores(i).iter().map(move |&c| (c + shift_ref[i]).abs()))
        .sum::<f64>()
        + 1.0;
    // node ids
    let mut fam_node = Vec::with_capacity(p);
    let mut gate_node = Vec::with_capacity(p);
    for i in 0..p {
        let mut f = Vec::new();
        let mut g = Vec::new();
        for j in inst.permitted(i) {
            let fam = format!("{}<-{}", names[i], render_set(j, names));
            g.push(labels.len());
            labels.push(format!("gate[{fam}]"));
            tags.push(AspTag::V2);
            f.push(labels.len());
            labels.push(fam);
            tags.push(AspTag::V3);
        }
        fam_node.push(f);
        gate_node.push(g);
    }
    let mut arcs = Vec::new();
    let mut red = vec![Vec::new(); p];
    let arc = |tail, head, weight, color| Arc {
        tail,
        head,
        weight,
        color,
    };
    for i in 0..p {
        for (t, j) in inst.permitted(i).iter().enumerate() {
            for &u in j {
                arcs.push(arc(u, gate_node[i][t], big, EdgeColor::Blue));
            }
            red[i].push((j.clone(), arcs.len()));
            arcs.push(arc(
                gate_node[i][t],
                fam_node[i][t],
                inst.scores(i)[t] + shift[i],
                EdgeColor::Red,
            ));
            arcs.push(arc(fam_node[i][t], i, big, EdgeColor::Black));
            for t2 in 0..inst.permitted(i).len() {
                if t2 != t {
                    arcs.push(arc(fam_node[i][t], gate_node[i][t2], big, EdgeColor::Green));
                }
            }
        }
    }
    let f = inst.family_count();
    if labels.len() != p + 2 * f {
        return Err(Error::Reduction("node count bound violated".into()));
    }
    let mandatory = arcs.iter().filter(|a| a.color != EdgeColor::Red).count();
    Ok((
        AspInstance { labels, tags, arcs },
        AspMap {
            p,
            red,
            shift,
            big,
            mandatory,
        },
    ))
}

/// Reads an assignment off an arc set: the red arc into each child names its
/// parent set.
pub fn recover_bnsl_solution(chosen: &[usize], map: &AspMap) -> Result<DigraphAssignment> {
    let set: std::collections::HashSet<usize> = chosen.iter().copied().collect();
    let mut parents = Vec::with_capacity(map.p);
    for (i, reds) in map.red.iter().enumerate() {
        let hits: Vec<&ParentSet> = reds
            .iter()
            .filter(|(_, e)| set.contains(e))
            .map(|(j, _)| j)
            .collect();
        if hits.len() != 1 {
            return Err(Error::Reduction(format!(
                "node {i} has {} red arcs, expected exactly one",
                hits.len()
            )));
        }
        parents.push(hits[0].clone());
    }
    Ok(DigraphAssignment::new(parents))
}

/// Scores from edge weights: c(i←J) = Σ_{j∈J} ω(i←j), with c(i←∅) = 0.
pub fn asp_weights_to_bnsl(d: &AspInstance, kappa: Option<usize>) -> Result<BnslInstance> {
    let n = d.n();
    let mut w = vec![0.0; n * n];
    for a in &d.arcs {
        w[a.head * n + a.tail] += a.weight;
    }
    let rows = (0..n)
        .map(|i| {
            all_parent_sets(n, i, kappa)
                .into_iter()
                .map(|j| {
                    let c = j.iter().map(|&u| w[i * n + u]).sum();
                    (j, c)
                })
                .collect()
        })
        .collect();
    BnslInstance::new(d.labels.clone(), rows, kappa)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AspStrategy {
    /// All 2^|A| arc subsets; |A| ≤ 22.
    SubsetScan,
    /// Best linear order by dynamic programming over node subsets; |V| ≤ 20.
    OrderDp,
    /// Depth-first include/exclude over arcs by descending weight.
    ArcBranch,
}

pub const SUBSET_SCAN_LIMIT: usize = 22;
pub const ORDER_DP_LIMIT: usize = 20;

/// Maximum-weight acyclic arc subset.
pub fn asp_brute_force(d: &AspInstance) -> Result<(Vec<usize>, f64)> {
    let s = if d.arcs.len() <= SUBSET_SCAN_LIMIT {
        AspStrategy::SubsetScan
    } else if d.n() <= ORDER_DP_LIMIT {
        AspStrategy::OrderDp
    } else {
        AspStrategy::ArcBranch
    };
    asp_brute_force_with(d, s)
}

pub fn asp_brute_force_with(d: &AspInstance, s: AspStrategy) -> Result<(Vec<usize>, f64)> {
    match s {
        AspStrategy::SubsetScan => subset_scan(d),
        AspStrategy::OrderDp => order_dp(d),
        AspStrategy::ArcBranch => Ok(arc_branch(d)),
    }
}

fn subset_scan(d: &AspInstance) -> Result<(Vec<usize>, f64)> {
    let m = d.arcs.len();
    if m > SUBSET_SCAN_LIMIT {
        return Err(Error::Unsupported(format!("{m} arcs exceed the subset scan limit")));
    }
    let mut best = (Vec::new(), 0.0);
    for mask in 0u32..(1u32 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        let v = d.value(&chosen);
        if v > best.1 && d.is_acyclic_subset(&chosen) {
            best = (chosen, v);
        }
    }
    Ok(best)
}

fn order_dp(d: &AspInstance) -> Result<(Vec<usize>, f64)> {
    let n = d.n();
    if n > ORDER_DP_LIMIT {
        return Err(Error::Unsupported(format!("{n} nodes exceed the ordering limit")));
    }
    // gain[v] = positive weight of arcs into v from each predecessor set, by bits
    let mut into = vec![Vec::new(); n];
    for (e, a) in d.arcs.iter().enumerate() {
        if a.weight > 0.0 {
            into[a.head].push((a.tail, a.weight, e));
        }
    }
    let full = 1usize << n;
    let mut f = vec![f64::NEG_INFINITY; full];
    let mut last = vec![usize::MAX; full];
    f[0] = 0.0;
    for s in 1..full {
        for v in 0..n {
            if s >> v & 1 == 0 {
                continue;
            }
            let prev = s & !(1 << v);
            let g: f64 = into[v]
                .iter()
                .filter(|(u, _, _)| prev >> u & 1 == 1)
                .map(|(_, w, _)| w)
                .sum();
            if f[prev] + g > f[s] {
                f[s] = f[prev] + g;
                last[s] = v;
            }
        }
    }
    let mut s = full - 1;
    let mut chosen = Vec::new();
    while s != 0 {
        let v = last[s];
        let prev = s & !(1 << v);
        chosen.extend(into[v].iter().filter(|(u, _, _)| prev >> u & 1 == 1).map(|x| x.2));
        s = prev;
    }
    chosen.sort_unstable();
    Ok((chosen, f[full - 1]))
}

fn reaches(adj: &[Vec<usize>], from: usize, to: usize) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if !std::mem::replace(&mut seen[u], true) {
            stack.extend(adj[u].iter().copied());
        }
    }
    false
}

fn arc_branch(d: &AspInstance) -> (Vec<usize>, f64) {
    let mut order: Vec<usize> = (0..d.arcs.len()).filter(|&e| d.arcs[e].weight > 0.0).collect();
    order.sort_by(|&a, &b| d.arcs[b].weight.total_cmp(&d.arcs[a].weight).then(a.cmp(&b)));
    let mut suffix = vec![0.0; order.len() + 1];
    for k in (0..order.len()).rev() {
        suffix[k] = suffix[k + 1] + d.arcs[order[k]].weight;
    }
    struct St<'a> {
        d: &'a AspInstance,
        order: Vec<usize>,
        suffix: Vec<f64>,
        adj: Vec<Vec<usize>>,
        cur: Vec<usize>,
        best: (Vec<usize>, f64),
    }
    fn go(s: &mut St, k: usize, val: f64) {
        if val > s.best.1 {
            s.best = (s.cur.clone(), val);
        }
        if k == s.order.len() || val + s.suffix[k] <= s.best.1 {
            return;
        }
        let e = s.order[k];
        let a = &s.d.arcs[e];
        let (t, h, w) = (a.tail, a.head, a.weight);
        if !reaches(&s.adj, h, t) {
            s.adj[t].push(h);
            s.cur.push(e);
            go(s, k + 1, val + w);
            s.cur.pop();
            s.adj[t].pop();
        }
        go(s, k + 1, val);
    }
    let mut st = St {
        d,
        order,
        suffix,
        adj: vec![Vec::new(); d.n()],
        cur: Vec::new(),
        best: (Vec::new(), 0.0),
    };
    go(&mut st, 0, 0.0);
    let (mut c, v) = st.best;
    c.sort_unstable();
    (c, v)
}

// ---------------------------------------------------------------------------
// edge-space projections

/// y_{i←j} stored at `i * p + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeVector {
    pub p: usize,
    pub y: Vec<f64>,
}

impl EdgeVector {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.y[i * self.p + j]
    }
}

/// y_{i←j} = Σ_{J ∋ j} x_{i←J}.
pub fn project_to_edges(x: &FamilyVector, idx: &FamilyIndex) -> EdgeVector {
    let p = idx.p();
    let mut y = vec![0.0; p * p];
    for (k, f) in idx.families().iter().enumerate() {
        for &j in &f.parents {
            y[f.child * p + j] += x.0[k];
        }
    }
    EdgeVector { p, y }
}

/// Σ π_{i←j} y_{i←j} ≤ rhs in edge space, coefficients at `i * p + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeInequality {
    pub p: usize,
    pub coef: Vec<f64>,
    pub rhs: f64,
}

/// Σ π_k x_k ≤ rhs over the family index.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyInequality {
    pub coef: Vec<f64>,
    pub rhs: f64,
}

impl FamilyInequality {
    pub fn lhs(&self, x: &FamilyVector) -> f64 {
        x.dot(&self.coef)
    }
}

/// π'_{i←J} = Σ_{j∈J} π_{i←j}.
pub fn project_inequality(pi: &EdgeInequality, idx: &FamilyIndex) -> FamilyInequality {
    let coef = idx
        .families()
        .iter()
        .map(|f| f.parents.iter().map(|&j| pi.coef[f.child * pi.p + j]).sum())
        .collect();
    FamilyInequality { coef, rhs: pi.rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_names;

    #[test]
    fn seven_parents() {
        // i = 0 may take {1..7}
        let mut rows = vec![vec![(vec![], 0.0), ((1..8).collect::<Vec<_>>(), 9.0)]];
        rows.extend((1..8).map(|_| vec![(vec![], 0.0)]));
        let inst = BnslInstance::new(default_names(8), rows, None).unwrap();
        let (red, map) = reduce_to_k2(&inst).unwrap();
        let a = red.node_by_name("{b,c,d,e}").unwrap();
        let b = red.node_by_name("{f,g,h}").unwrap();
        assert_eq!(red.permitted(0)[1], vec![a, b]);
        let gh = map.node_for(&[6, 7]).unwrap();
        assert_eq!(red.permitted(b)[1], vec![5, gh]);
        let mut parents = vec![vec![a, b]];
        parents.extend((1..8).map(|_| vec![]));
        for t in 0..map.subsets.len() {
            parents.push(red.permitted(8 + t)[1].clone());
        }
        let lifted = lift_k2_solution(&DigraphAssignment::new(parents), &map).unwrap();
        assert_eq!(lifted.parents(0), (1..8).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn small_sets_copied() {
        let inst = BnslInstance::complete(3, Some(2)).with_scores(|i, j| (i + j.len()) as f64);
        let (red, map) = reduce_to_k2(&inst).unwrap();
        assert!(map.subsets.is_empty());
        for i in 0..3 {
            assert_eq!(red.permitted(i), inst.permitted(i));
            assert_eq!(red.scores(i), inst.scores(i));
        }
    }

    #[test]
    fn two_cycle_asp() {
        let d = AspInstance::plain(2, vec![(0, 1, 3.0), (1, 0, 5.0)]).unwrap();
        for s in [AspStrategy::SubsetScan, AspStrategy::OrderDp, AspStrategy::ArcBranch] {
            let (c, v) = asp_brute_force_with(&d, s).unwrap();
            assert_eq!((c, v), (vec![1], 5.0));
        }
    }

    #[test]
    fn one_cluster_projection() {
        let idx = BnslInstance::complete(3, None).family_index();
        let mut coef = vec![0.0; 9];
        coef[1] = 1.0; // a←b
        coef[3] = 1.0; // b←a
        let q = project_inequality(&EdgeInequality { p: 3, coef, rhs: 1.0 }, &idx);
        let on: Vec<String> = (0..idx.len())
            .filter(|&k| q.coef[k] != 0.0)
            .map(|k| idx.family(k).render(&default_names(3)))
            .collect();
        assert_eq!(on, ["a <- {b}", "a <- {b,c}", "b <- {a}", "b <- {a,c}"]);
    }

    #[test]
    fn asp_text_round_trip() {
        let d = AspInstance::plain(3, vec![(0, 1, 1.5), (2, 0, -2.0)]).unwrap();
        assert_eq!(AspInstance::parse(&d.write()).unwrap(), d);
        assert!(AspInstance::parse("2 1\n0 0 1\n").is_err());
    }
}
