//! Cluster-cut separation: exact search over clusters, the rounding-up
//! digraph cycle heuristic, k-cluster level checks and the vertex-cover
//! gadget.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::lp::{Row, Sense};
use crate::model::{BnslInstance, FamilyIndex, FamilyVector};

pub const EPS_CUT: f64 = 1e-6;
pub const DEFAULT_EXACT_LIMIT: usize = 24;
pub const MAX_CUTS: usize = 20;
pub const MAX_CYCLES: usize = 10_000;
const MASS_EPS: f64 = 1e-12;

/// A κ-cluster cut: at most `|C| - κ` nodes of C may have κ or more parents in C.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterCut {
    pub cluster: Vec<usize>,
    pub kappa: usize,
    pub violation: f64,
}

impl ClusterCut {
    pub fn rhs(&self) -> f64 {
        (self.cluster.len() - self.kappa) as f64
    }

    /// Coefficients over the family index; all coefficients are one.
    pub fn coefficients(&self, idx: &FamilyIndex) -> Vec<usize> {
        let mut out = Vec::new();
        for &i in &self.cluster {
            for k in idx.child_range(i) {
                let hits = idx
                    .family(k)
                    .parents
                    .iter()
                    .filter(|j| self.cluster.binary_search(j).is_ok())
                    .count();
                if hits >= self.kappa {
                    out.push(k);
                }
            }
        }
        out
    }

    pub fn to_row(&self, idx: &FamilyIndex) -> Row {
        Row::new(
            self.coefficients(idx).into_iter().map(|k| (k, 1.0)).collect(),
            Sense::Le,
            self.rhs(),
        )
    }

    pub fn lhs(&self, x: &FamilyVector, idx: &FamilyIndex) -> f64 {
        self.coefficients(idx).into_iter().map(|k| x.0[k]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    CutsFound,
    ProvenNone,
    HeuristicGaveUp,
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub outcome: Outcome,
    pub cuts: Vec<ClusterCut>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// Set when the exact search was skipped because of the node limit.
    pub heuristic_only: bool,
}

impl SeparationReport {
    pub fn best_w(&self) -> Option<f64> {
        self.cuts.first().map(|c| c.violation - 1.0)
    }
}

/// w(C) = Σ_{i∈C} Σ_{J∩C≠∅} x_{i←J} − |C|.
pub fn subip_objective(x: &FamilyVector, idx: &FamilyIndex, cluster: &[usize]) -> f64 {
    let c: BTreeSet<usize> = cluster.iter().copied().collect();
    let mut w = -(c.len() as f64);
    for &i in &c {
        for k in idx.child_range(i) {
            if idx.family(k).parents.iter().any(|j| c.contains(j)) {
                w += x.0[k];
            }
        }
    }
    w
}

/// Nodes with positive mass and their families as masks over those nodes.
struct MassTable {
    nodes: Vec<usize>,
    fams: Vec<Vec<(u64, f64)>>,
}

impl MassTable {
    /// Candidates sorted by descending non-empty mass, ties by index.
    fn build(x: &FamilyVector, idx: &FamilyIndex) -> Self {
        let mass = x.child_mass(idx);
        let mut nodes: Vec<usize> = (0..idx.p()).filter(|&i| mass[i] > MASS_EPS).collect();
        nodes.sort_by(|&a, &b| mass[b].total_cmp(&mass[a]).then(a.cmp(&b)));
        let mut local = vec![usize::MAX; idx.p()];
        for (l, &i) in nodes.iter().enumerate() {
            local[i] = l;
        }
        let fams = nodes
            .iter()
            .map(|&i| {
                idx.child_range(i)
                    .filter(|&k| x.0[k] > MASS_EPS)
                    .filter_map(|k| {
                        let m = idx.family(k).parents.iter().fold(0u64, |m, &j| {
                            if local[j] < 64 {
                                m | 1u64 << local[j]
                            } else {
                                m
                            }
                        });
                        (m != 0).then_some((m, x.0[k]))
                    })
                    .collect()
            })
            .collect();
        MassTable { nodes, fams }
    }

    fn sigma(&self, l: usize, s: u64) -> f64 {
        self.fams[l].iter().filter(|(m, _)| m & s != 0).map(|(_, v)| v).sum()
    }
}

/// Keeps the best `cap` clusters by w.
struct TopK {
    cap: usize,
    items: Vec<(f64, u64)>,
}

impl TopK {
    fn threshold(&self, floor: f64) -> f64 {
        if self.items.len() < self.cap {
            floor
        } else {
            self.items.last().map(|x| x.0).unwrap_or(floor).max(floor)
        }
    }

    fn push(&mut self, w: f64, set: u64) {
        let pos = self
            .items
            .iter()
            .position(|&(v, s)| w > v || (w == v && set < s))
            .unwrap_or(self.items.len());
        self.items.insert(pos, (w, set));
        self.items.truncate(self.cap);
    }
}

struct Dfs<'a> {
    t: &'a MassTable,
    top: TopK,
    floor: f64,
    explored: u64,
}

impl Dfs<'_> {
    fn bound(&self, inn: u64, und: u64) -> f64 {
        let all = inn | und;
        let mut ub = -(inn.count_ones() as f64);
        for l in 0..self.t.nodes.len() {
            let bit = 1u64 << l;
            if inn & bit != 0 {
                ub += self.t.sigma(l, all);
            } else if und & bit != 0 {
                ub += (self.t.sigma(l, all) - 1.0).max(0.0);
            }
        }
        ub
    }

    fn search(&mut self, pos: usize, inn: u64) {
        self.explored += 1;
        let k = self.t.nodes.len();
        let und = if pos >= k { 0 } else { ((1u64 << (k - pos)) - 1) << pos };
        let ub = self.bound(inn, und);
        if ub <= self.top.threshold(self.floor) {
            return;
        }
        if pos == k {
            if inn.count_ones() >= 2 {
                self.top.push(ub, inn);
            }
            return;
        }
        self.search(pos + 1, inn | 1u64 << pos);
        self.search(pos + 1, inn);
    }
}

fn unmask(t: &MassTable, mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(t.nodes[m.trailing_zeros() as usize]);
        m &= m - 1;
    }
    out.sort_unstable();
    out
}

pub fn weak_separate_exact(x: &FamilyVector, idx: &FamilyIndex) -> SeparationReport {
    weak_separate_exact_with(x, idx, DEFAULT_EXACT_LIMIT, EPS_CUT)
}

/// Depth-first search over cluster membership maximising w(C).
pub fn weak_separate_exact_with(
    x: &FamilyVector,
    idx: &FamilyIndex,
    limit: usize,
    eps: f64,
) -> SeparationReport {
    let start = Instant::now();
    let table = MassTable::build(x, idx);
    if table.nodes.len() > limit.min(63) {
        let mut r = weak_separate_heuristic_with(x, idx, eps);
        r.heuristic_only = true;
        return r;
    }
    let mut dfs = Dfs {
        t: &table,
        top: TopK {
            cap: MAX_CUTS,
            items: Vec::new(),
        },
        floor: -1.0 + eps,
        explored: 0,
    };
    dfs.search(0, 0);
    let cuts: Vec<ClusterCut> = dfs
        .top
        .items
        .iter()
        .map(|&(_, m)| {
            let cluster = unmask(&table, m);
            let w = subip_objective(x, idx, &cluster);
            ClusterCut {
                cluster,
                kappa: 1,
                violation: w + 1.0,
            }
        })
        .collect();
    SeparationReport {
        outcome: if cuts.is_empty() {
            Outcome::ProvenNone
        } else {
            Outcome::CutsFound
        },
        cuts,
        nodes_explored: dfs.explored,
        elapsed: start.elapsed(),
        heuristic_only: false,
    }
}

pub fn weak_separate_heuristic(x: &FamilyVector, idx: &FamilyIndex) -> SeparationReport {
    weak_separate_heuristic_with(x, idx, EPS_CUT)
}

/// Tests the node set of every elementary cycle of the rounding-up digraph.
pub fn weak_separate_heuristic_with(
    x: &FamilyVector,
    idx: &FamilyIndex,
    eps: f64,
) -> SeparationReport {
    let start = Instant::now();
    let p = idx.p();
    // succ[j] holds children i with an edge j -> i in the rounding-up digraph
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); p];
    for (k, f) in idx.families().iter().enumerate() {
        if x.0[k] > MASS_EPS {
            for &j in &f.parents {
                succ[j].insert(f.child);
            }
        }
    }
    let adj: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();
    let cycles = elementary_cycles(&adj, MAX_CYCLES);
    let mut seen = HashSet::new();
    let mut cuts = Vec::new();
    for mut c in cycles {
        c.sort_unstable();
        if c.len() < 2 || !seen.insert(c.clone()) {
            continue;
        }
        let w = subip_objective(x, idx, &c);
        if w > -1.0 + eps {
            cuts.push(ClusterCut {
                cluster: c,
                kappa: 1,
                violation: w + 1.0,
            });
        }
    }
    cuts.sort_by(|a, b| {
        b.violation
            .total_cmp(&a.violation)
            .then_with(|| a.cluster.cmp(&b.cluster))
    });
    cuts.truncate(MAX_CUTS);
    SeparationReport {
        outcome: if cuts.is_empty() {
            Outcome::HeuristicGaveUp
        } else {
            Outcome::CutsFound
        },
        cuts,
        nodes_explored: seen.len() as u64,
        elapsed: start.elapsed(),
        heuristic_only: true,
    }
}

/// Johnson's elementary-circuit enumeration, stopping after `cap` cycles.
pub fn elementary_cycles(adj: &[Vec<usize>], cap: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    for s in 0..n {
        if out.len() >= cap {
            break;
        }
        // strongly connected component of s within nodes >= s
        let comp = scc_containing(adj, s);
        if comp.len() < 2 {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|v| comp.contains(&v)).collect();
        let mut blocked = vec![false; n];
        let mut bmap: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut stack = Vec::new();
        circuit(
            adj, s, s, &inside, &mut blocked, &mut bmap, &mut stack, &mut out, cap,
        );
    }
    out.truncate(cap);
    out
}

#[allow(clippy::too_many_arguments)]
fn circuit(
    adj: &[Vec<usize>],
    v: usize,
    s: usize,
    inside: &[bool],
    blocked: &mut [bool],
    bmap: &mut [BTreeSet<usize>],
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> bool {
    let mut found = false;
    stack.push(v);
    blocked[v] = true;
    for &w in &adj[v] {
        if out.len() >= cap {
            break;
        }
        if !inside[w] {
            continue;
        }
        if w == s {
            out.push(stack.clone());
            found = true;
        } else if !blocked[w] && circuit(adj, w, s, inside, blocked, bmap, stack, out, cap) {
            found = true;
        }
    }
    if found {
        unblock(v, blocked, bmap);
    } else {
        for &w in &adj[v] {
            if inside[w] {
                bmap[w].insert(v);
            }
        }
    }
    stack.pop();
    found
}

fn unblock(v: usize, blocked: &mut [bool], bmap: &mut [BTreeSet<usize>]) {
    let mut work = vec![v];
    while let Some(u) = work.pop() {
        if !blocked[u] {
            continue;
        }
        blocked[u] = false;
        let next: Vec<usize> = std::mem::take(&mut bmap[u]).into_iter().collect();
        work.extend(next);
    }
}

/// Nodes >= s that reach s and are reachable from s using only nodes >= s.
fn scc_containing(adj: &[Vec<usize>], s: usize) -> BTreeSet<usize> {
    let n = adj.len();
    let mut fwd = vec![false; n];
    let mut work = vec![s];
    fwd[s] = true;
    while let Some(v) = work.pop() {
        for &w in &adj[v] {
            if w >= s && !fwd[w] {
                fwd[w] = true;
                work.push(w);
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (v, ws) in adj.iter().enumerate() {
        for &w in ws {
            radj[w].push(v);
        }
    }
    let mut bwd = vec![false; n];
    work.push(s);
    bwd[s] = true;
    while let Some(v) = work.pop() {
        for &w in &radj[v] {
            if w >= s && !bwd[w] {
                bwd[w] = true;
                work.push(w);
            }
        }
    }
    (s..n).filter(|&v| fwd[v] && bwd[v]).collect()
}

/// Violated κ-cluster levels on a given cluster.
pub fn kcluster_separate(x: &FamilyVector, idx: &FamilyIndex, cluster: &[usize]) -> Result<Vec<ClusterCut>> {
    kcluster_separate_with(x, idx, cluster, EPS_CUT)
}

pub fn kcluster_separate_with(
    x: &FamilyVector,
    idx: &FamilyIndex,
    cluster: &[usize],
    eps: f64,
) -> Result<Vec<ClusterCut>> {
    let mut c = cluster.to_vec();
    c.sort_unstable();
    c.dedup();
    if c.len() < 2 {
        return Err(Error::ClusterTooSmall);
    }
    // lhs_by_hits[h] = mass of families with exactly h parents in C
    let mut by_hits = vec![0.0; c.len()];
    for &i in &c {
        for k in idx.child_range(i) {
            let h = idx
                .family(k)
                .parents
                .iter()
                .filter(|j| c.binary_search(j).is_ok())
                .count();
            by_hits[h] += x.0[k];
        }
    }
    let mut out = Vec::new();
    for kappa in 1..c.len() {
        let lhs: f64 = by_hits[kappa..].iter().sum();
        let rhs = (c.len() - kappa) as f64;
        if lhs > rhs + eps {
            out.push(ClusterCut {
                cluster: c.clone(),
                kappa,
                violation: lhs - rhs,
            });
        }
    }
    Ok(out)
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::Instance(format!("bad edge {u} {v}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::Instance(format!("repeated edge {u} {v}")));
            }
            norm.push(e);
        }
        Ok(Graph { n, edges: norm })
    }

    /// Parses "u v" lines; '#' starts a comment. Vertex count is one more
    /// than the largest label unless a leading "n <count>" line is given.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 0;
        let mut declared = None;
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let bad = |m: &str| Error::Parse {
                line: ln + 1,
                msg: m.to_string(),
            };
            if toks[0] == "n" && toks.len() == 2 {
                declared = Some(toks[1].parse::<usize>().map_err(|_| bad("bad vertex count"))?);
                continue;
            }
            if toks.len() != 2 {
                return Err(bad("expected 'u v'"));
            }
            let u: usize = toks[0].parse().map_err(|_| bad("bad vertex"))?;
            let v: usize = toks[1].parse().map_err(|_| bad("bad vertex"))?;
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        Graph::new(declared.unwrap_or(n).max(n), edges)
    }

    /// Size of a minimum vertex cover by subset scan (n ≤ 20).
    pub fn min_vertex_cover(&self) -> usize {
        assert!(self.n <= 20, "vertex cover scan limited to 20 vertices");
        (0u32..1 << self.n)
            .filter(|&m| {
                self.edges
                    .iter()
                    .all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0)
    }
}

/// Hardness gadget: nodes `v*` for vertices and `m` extra nodes `s*`; every
/// extra node may take the endpoints of any edge as parents, every vertex
/// node may take any single extra node as parent.
pub fn build_vc_gadget(g: &Graph, k: usize) -> Result<(BnslInstance, FamilyVector)> {
    let m = g.edges.len();
    if m == 0 {
        return Err(Error::Instance("gadget needs at least one edge".into()));
    }
    if k == 0 {
        return Err(Error::Instance("gadget needs k >= 1".into()));
    }
    let n = g.n;
    let mut names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    names.extend((0..m).map(|e| format!("s{e}")));
    let mut rows: Vec<Vec<(Vec<usize>, f64)>> = Vec::with_capacity(n + m);
    for _ in 0..n {
        let mut r = vec![(vec![], 0.0)];
        r.extend((0..m).map(|e| (vec![n + e], 0.0)));
        rows.push(r);
    }
    for _ in 0..m {
        let mut r = vec![(vec![], 0.0)];
        r.extend(g.edges.iter().map(|&(u, v)| (vec![u, v], 0.0)));
        rows.push(r);
    }
    let inst = BnslInstance::new(names, rows, None)?;
    let idx = inst.family_index();
    let mut x = FamilyVector::zeros(idx.len());
    let mf = m as f64;
    let kf = k as f64;
    for s in 0..m {
        for &(u, v) in &g.edges {
            x.0[idx.position(n + s, &[u, v]).expect("edge family")] = 1.0 / mf;
        }
    }
    for v in 0..n {
        for e in 0..m {
            x.0[idx.position(v, &[n + e]).expect("vertex family")] = kf / (mf * (kf + 1.0));
        }
    }
    Ok((inst, x))
}
