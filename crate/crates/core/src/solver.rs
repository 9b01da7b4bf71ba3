//! Branch-and-cut over family variables.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::lp::{lp_solve_with, Basis, LpModel, LpOptions, LpStatus, Row, Sense, VarStatus};
use crate::model::{
    decode_digraph, is_acyclic, total_score, BnslInstance, DigraphAssignment, FamilyIndex,
    FamilyVector, INTEGRALITY_TOL,
};
use crate::separation::{
    elementary_cycles, kcluster_separate_with, weak_separate_exact_with,
    weak_separate_heuristic_with, ClusterCut, Outcome, DEFAULT_EXACT_LIMIT, EPS_CUT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutClass {
    Cluster,
    KCluster,
    Class4B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchRule {
    Variable,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeSelect {
    BestBound,
    DepthFirst,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub cluster_cuts: bool,
    pub kcluster_cuts: bool,
    pub class4b_cuts: bool,
    pub branch: BranchRule,
    pub node_select: NodeSelect,
    pub eps_cut: f64,
    pub int_tol: f64,
    pub time_limit: Option<Duration>,
    pub max_rounds: usize,
    pub exact_limit: usize,
    /// Add the κ=2 cluster row of every node triple up front (p ≤ 30).
    pub triple_rows: bool,
    pub exact_lp: bool,
    /// Keep every added cut in the result for auditing.
    pub record_cuts: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            cluster_cuts: true,
            kcluster_cuts: false,
            class4b_cuts: false,
            branch: BranchRule::Variable,
            node_select: NodeSelect::BestBound,
            eps_cut: EPS_CUT,
            int_tol: INTEGRALITY_TOL,
            time_limit: None,
            max_rounds: 50,
            exact_limit: DEFAULT_EXACT_LIMIT,
            triple_rows: true,
            exact_lp: false,
            record_cuts: false,
        }
    }
}

impl SolveConfig {
    /// Convexity rows only: no separation and no up-front triple rows.
    pub fn no_cuts() -> Self {
        SolveConfig {
            cluster_cuts: false,
            triple_rows: false,
            ..SolveConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 || self.exact_limit == 0 {
            return Err(Error::Instance("solver limits must be positive".into()));
        }
        if !(self.eps_cut > 0.0 && self.int_tol > 0.0) {
            return Err(Error::Instance("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    pub lp_solves: usize,
    pub nodes: usize,
    pub cut_rounds: usize,
    pub cluster_cuts: usize,
    pub kcluster_cuts: usize,
    pub class4b_cuts: usize,
    pub exact_separations: usize,
    pub heuristic_separations: usize,
    /// LP bound after every round at the root.
    pub root_trace: Vec<f64>,
    /// Global upper bound each time it changed.
    pub bound_trace: Vec<f64>,
    /// Incumbent objective each time it improved.
    pub incumbent_trace: Vec<f64>,
}

impl SolveStats {
    pub fn total_cuts(&self) -> usize {
        self.cluster_cuts + self.kcluster_cuts + self.class4b_cuts
    }

    /// Share of the 2^p − p − 1 possible 1-cluster rows that were added.
    pub fn cluster_fraction(&self, p: usize) -> f64 {
        let total = 2f64.powi(p as i32) - p as f64 - 1.0;
        if total <= 0.0 {
            0.0
        } else {
            self.cluster_cuts as f64 / total
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutRecord {
    pub class: CutClass,
    pub row: Row,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub assignment: DigraphAssignment,
    pub objective: f64,
    pub upper_bound: f64,
    pub gap: f64,
    pub optimal: bool,
    pub stats: SolveStats,
    pub cuts: Vec<CutRecord>,
}

/// Open subproblem: column bounds overriding [0,1], local rows, warm basis.
#[derive(Clone, Debug)]
pub struct SearchNode {
    pub fixed: Vec<(usize, f64, f64)>,
    pub rows: Vec<Row>,
    pub basis: Option<Basis>,
    basis_globals: usize,
    pub bound: f64,
    pub depth: usize,
    id: usize,
}

impl SearchNode {
    pub fn root() -> Self {
        SearchNode {
            fixed: Vec::new(),
            rows: Vec::new(),
            basis: None,
            basis_globals: 0,
            bound: f64::INFINITY,
            depth: 0,
            id: 0,
        }
    }

    fn child(&self, id: usize) -> Self {
        SearchNode {
            fixed: self.fixed.clone(),
            rows: self.rows.clone(),
            basis: self.basis.clone(),
            basis_globals: self.basis_globals,
            bound: self.bound,
            depth: self.depth + 1,
            id,
        }
    }

    /// True if `x` satisfies the node's bounds and rows.
    pub fn admits(&self, x: &[f64], tol: f64) -> bool {
        self.fixed
            .iter()
            .all(|&(j, lo, up)| x[j] >= lo - tol && x[j] <= up + tol)
            && self.rows.iter().all(|r| r.violation(x) <= tol)
    }
}

struct Queued(SearchNode, NodeSelect);

impl PartialEq for Queued {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Queued {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.1 {
            NodeSelect::BestBound => self
                .0
                .bound
                .total_cmp(&o.0.bound)
                .then_with(|| o.0.id.cmp(&self.0.id)),
            NodeSelect::DepthFirst => self.0.id.cmp(&o.0.id),
        }
    }
}

/// Branching on a fractional point.
pub fn branch(
    node: &SearchNode,
    x: &FamilyVector,
    idx: &FamilyIndex,
    rule: BranchRule,
    tol: f64,
) -> Result<(SearchNode, SearchNode)> {
    branch_with_ids(node, x, idx, rule, tol, 0, 0)
}

fn frac(v: f64) -> f64 {
    (v - v.floor()).min(v.ceil() - v)
}

fn branch_with_ids(
    node: &SearchNode,
    x: &FamilyVector,
    idx: &FamilyIndex,
    rule: BranchRule,
    tol: f64,
    down_id: usize,
    up_id: usize,
) -> Result<(SearchNode, SearchNode)> {
    if rule == BranchRule::Sum {
        if let Some(cols) = most_fractional_sum(x, idx, tol) {
            let mut down = node.child(down_id);
            for &k in &cols {
                down.fixed.push((k, 0.0, 0.0));
            }
            let mut up = node.child(up_id);
            up.rows
                .push(Row::new(cols.iter().map(|&k| (k, 1.0)).collect(), Sense::Ge, 1.0));
            return Ok((down, up));
        }
    }
    let mut best: Option<(usize, f64)> = None;
    for (k, &v) in x.0.iter().enumerate() {
        let f = frac(v);
        if f > tol && best.map(|(_, b)| f > b + 1e-12).unwrap_or(true) {
            best = Some((k, f));
        }
    }
    let (k, _) = best.ok_or(Error::NotFractional)?;
    Ok(split_on(node, idx, k, down_id, up_id))
}

fn split_on(
    node: &SearchNode,
    idx: &FamilyIndex,
    k: usize,
    down_id: usize,
    up_id: usize,
) -> (SearchNode, SearchNode) {
    let mut down = node.child(down_id);
    down.fixed.push((k, 0.0, 0.0));
    let mut up = node.child(up_id);
    up.fixed.push((k, 1.0, 1.0));
    for s in idx.child_range(idx.family(k).child) {
        if s != k {
            up.fixed.push((s, 0.0, 0.0));
        }
    }
    (down, up)
}

/// Columns of the pair sum y_{i←j} + y_{j←i} closest to one half.
fn most_fractional_sum(x: &FamilyVector, idx: &FamilyIndex, tol: f64) -> Option<Vec<usize>> {
    let p = idx.p();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for i in 0..p {
        for j in i + 1..p {
            let mut cols = Vec::new();
            for k in idx.child_range(i) {
                if idx.family(k).parents.contains(&j) {
                    cols.push(k);
                }
            }
            for k in idx.child_range(j) {
                if idx.family(k).parents.contains(&i) {
                    cols.push(k);
                }
            }
            let s: f64 = cols.iter().map(|&k| x.0[k]).sum();
            if s <= tol || s >= 1.0 - tol {
                continue;
            }
            let f = frac(s);
            if best.as_ref().map(|(b, _)| f > b + 1e-12).unwrap_or(true) {
                best = Some((f, cols));
            }
        }
    }
    best.map(|(_, c)| c)
}

/// The class-4B facet of the four-node polytope as (child, parents, coefficient)
/// over local nodes 0..4, right-hand side 2.
const CLASS_4B: &[(usize, &[usize])] = &[
    (0, &[1]),
    (0, &[1, 2]),
    (0, &[1, 3]),
    (0, &[2, 3]),
    (0, &[1, 2, 3]),
    (1, &[0]),
    (1, &[0, 2]),
    (1, &[0, 3]),
    (1, &[2, 3]),
    (1, &[0, 2, 3]),
    (2, &[0, 3]),
    (2, &[1, 3]),
    (2, &[0, 1, 3]),
    (3, &[0, 2]),
    (3, &[1, 2]),
    (3, &[0, 1, 2]),
];

/// Distinct 4B orbit members as tables of coefficients indexed by
/// `child * 16 + parent mask`.
fn class4b_orbit() -> Vec<[u8; 64]> {
    let mut out: Vec<[u8; 64]> = Vec::new();
    let mut perm = [0usize, 1, 2, 3];
    let mut perms = Vec::new();
    permutations(&mut perm, 0, &mut perms);
    for p in perms {
        let mut t = [0u8; 64];
        for &(c, ps) in CLASS_4B {
            let m = ps.iter().fold(0usize, |m, &j| m | 1 << p[j]);
            t[p[c] * 16 + m] = 1;
        }
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

fn permutations(a: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == a.len() {
        out.push(*a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permutations(a, k + 1, out);
        a.swap(k, i);
    }
}

struct Session<'a> {
    inst: &'a BnslInstance,
    idx: FamilyIndex,
    cfg: &'a SolveConfig,
    cost: Vec<f64>,
    constant: f64,
    base: Vec<Row>,
    globals: Vec<Row>,
    global_keys: HashSet<(Vec<usize>, usize, u8)>,
    records: Vec<CutRecord>,
    stats: SolveStats,
    incumbent: DigraphAssignment,
    incumbent_value: f64,
    start: Instant,
    orbit4b: Vec<[u8; 64]>,
}

enum NodeEnd {
    Pruned,
    Solved,
    Branch(FamilyVector, f64, Option<Basis>),
    TimedOut(f64),
}

impl<'a> Session<'a> {
    fn new(inst: &'a BnslInstance, cfg: &'a SolveConfig) -> Result<Self> {
        let idx = inst.family_index();
        let p = inst.p();
        let mut cost = vec![0.0; idx.len()];
        for (k, f) in idx.families().iter().enumerate() {
            cost[k] = inst.score(f.child, &f.parents).expect("indexed family has a score")
                - inst.scores(f.child)[0];
        }
        let constant: f64 = (0..p).map(|i| inst.scores(i)[0]).sum();
        let mut base = Vec::new();
        for i in 0..p {
            let r = idx.child_range(i);
            if !r.is_empty() {
                base.push(Row::new(r.map(|k| (k, 1.0)).collect(), Sense::Le, 1.0));
            }
        }
        if cfg.triple_rows && p <= 30 {
            for a in 0..p {
                for b in a + 1..p {
                    for c in b + 1..p {
                        let terms: Vec<(usize, f64)> = [(a, [b, c]), (b, [a, c]), (c, [a, b])]
                            .iter()
                            .filter_map(|(i, s)| idx.position(*i, s).map(|k| (k, 1.0)))
                            .collect();
                        if terms.len() >= 2 {
                            base.push(Row::new(terms, Sense::Le, 1.0));
                        }
                    }
                }
            }
        }
        let empty = DigraphAssignment::empty(p);
        let incumbent_value = total_score(&empty, inst)?;
        Ok(Session {
            inst,
            idx,
            cfg,
            cost,
            constant,
            base,
            globals: Vec::new(),
            global_keys: HashSet::new(),
            records: Vec::new(),
            stats: SolveStats::default(),
            incumbent: empty,
            incumbent_value,
            start: Instant::now(),
            orbit4b: if cfg.class4b_cuts { class4b_orbit() } else { Vec::new() },
        })
    }

    fn timed_out(&self) -> bool {
        self.cfg
            .time_limit
            .map(|t| self.start.elapsed() >= t)
            .unwrap_or(false)
    }

    fn node_model(&self, node: &SearchNode) -> LpModel {
        let n = self.idx.len();
        let mut m = LpModel::new(self.cost.clone(), vec![0.0; n], vec![1.0; n]);
        for &(j, lo, up) in &node.fixed {
            m.lower[j] = m.lower[j].max(lo);
            m.upper[j] = m.upper[j].min(up);
        }
        m.add_rows(self.base.iter().cloned());
        m.add_rows(self.globals.iter().cloned());
        m.add_rows(node.rows.iter().cloned());
        m
    }

    /// Maps a stored basis onto the current row layout.
    fn remap_basis(&self, node: &SearchNode) -> Option<Basis> {
        let b = node.basis.as_ref()?;
        let nb = self.base.len();
        let g_old = node.basis_globals;
        let g_now = self.globals.len();
        if b.rows.len() < nb + g_old {
            return None;
        }
        let mut rows: Vec<VarStatus> = b.rows[..nb + g_old].to_vec();
        rows.extend((g_old..g_now).map(|_| VarStatus::Basic));
        rows.extend(b.rows[nb + g_old..].iter().cloned());
        let want = nb + g_now + node.rows.len();
        if rows.len() > want {
            return None;
        }
        rows.extend((rows.len()..want).map(|_| VarStatus::Basic));
        Some(Basis {
            columns: b.columns.clone(),
            rows,
        })
    }

    fn add_cut(&mut self, class: CutClass, key: (Vec<usize>, usize, u8), row: Row) -> bool {
        if !self.global_keys.insert(key) {
            return false;
        }
        match class {
            CutClass::Cluster => self.stats.cluster_cuts += 1,
            CutClass::KCluster => self.stats.kcluster_cuts += 1,
            CutClass::Class4B => self.stats.class4b_cuts += 1,
        }
        if self.cfg.record_cuts {
            self.records.push(CutRecord {
                class,
                row: row.clone(),
            });
        }
        self.globals.push(row);
        true
    }

    fn separate(&mut self, x: &FamilyVector) -> usize {
        let mut added = 0;
        let idx = self.idx.clone();
        let eps = self.cfg.eps_cut;
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        if self.cfg.cluster_cuts {
            self.stats.heuristic_separations += 1;
            let mut rep = weak_separate_heuristic_with(x, &idx, eps);
            if rep.outcome != Outcome::CutsFound {
                self.stats.exact_separations += 1;
                rep = weak_separate_exact_with(x, &idx, self.cfg.exact_limit, eps);
            }
            for c in rep.cuts {
                clusters.push(c.cluster.clone());
                let row = c.to_row(&idx);
                if self.add_cut(CutClass::Cluster, (c.cluster.clone(), 1, 0), row) {
                    added += 1;
                }
            }
        }
        if self.cfg.kcluster_cuts {
            clusters.extend(rounding_up_clusters(x, &idx));
            clusters.sort();
            clusters.dedup();
            for c in clusters.iter().filter(|c| c.len() >= 3) {
                for cut in kcluster_separate_with(x, &idx, c, eps).unwrap_or_default() {
                    if cut.kappa < 2 {
                        continue;
                    }
                    let row = cut.to_row(&idx);
                    if self.add_cut(CutClass::KCluster, (cut.cluster.clone(), cut.kappa, 0), row) {
                        added += 1;
                    }
                }
            }
        }
        if self.cfg.class4b_cuts {
            added += self.separate_4b(x);
        }
        added
    }

    fn separate_4b(&mut self, x: &FamilyVector) -> usize {
        let p = self.idx.p();
        let mut found = Vec::new();
        let nz: Vec<usize> = (0..x.len()).filter(|&k| x.0[k] > 1e-9).collect();
        for a in 0..p {
            for b in a + 1..p {
                for c in b + 1..p {
                    for d in c + 1..p {
                        let s = [a, b, c, d];
                        for (o, t) in self.orbit4b.iter().enumerate() {
                            let lhs: f64 = nz
                                .iter()
                                .map(|&k| x.0[k] * lifted_coef(&self.idx, k, &s, t))
                                .sum();
                            if lhs > 2.0 + self.cfg.eps_cut {
                                found.push((s, o));
                            }
                        }
                    }
                }
            }
        }
        let mut added = 0;
        for (s, o) in found {
            let t = self.orbit4b[o];
            let coeffs: Vec<(usize, f64)> = (0..self.idx.len())
                .filter_map(|k| {
                    let v = lifted_coef(&self.idx, k, &s, &t);
                    (v != 0.0).then_some((k, v))
                })
                .collect();
            let row = Row::new(coeffs, Sense::Le, 2.0);
            if self.add_cut(CutClass::Class4B, (s.to_vec(), o, 4), row) {
                added += 1;
            }
        }
        added
    }

    fn run_node(&mut self, node: &mut SearchNode) -> Result<NodeEnd> {
        let mut warm = self.remap_basis(node);
        let mut rounds = 0;
        loop {
            if self.timed_out() {
                return Ok(NodeEnd::TimedOut(node.bound));
            }
            let model = self.node_model(node);
            let sol = lp_solve_with(&model, warm.as_ref(), LpOptions { exact: self.cfg.exact_lp })?;
            self.stats.lp_solves += 1;
            if sol.status == LpStatus::Infeasible {
                return Ok(NodeEnd::Pruned);
            }
            let bound = sol.objective + self.constant;
            node.bound = node.bound.min(bound);
            if node.id == 0 {
                self.stats.root_trace.push(bound);
            }
            if node.bound <= self.incumbent_value + 1e-9 {
                return Ok(NodeEnd::Pruned);
            }
            let x = FamilyVector(sol.x.iter().map(|v| v.clamp(0.0, 1.0)).collect());
            let integral = x.is_integral(self.cfg.int_tol);
            if integral {
                let a = decode_digraph(&x, &self.idx)?;
                if is_acyclic(&a) {
                    let v = total_score(&a, self.inst)?;
                    if v > self.incumbent_value {
                        self.incumbent_value = v;
                        self.incumbent = a;
                        self.stats.incumbent_trace.push(v);
                    }
                    return Ok(NodeEnd::Solved);
                }
            }
            if rounds >= self.cfg.max_rounds && !integral {
                return Ok(NodeEnd::Branch(x, node.bound, sol.basis));
            }
            let added = self.separate(&x);
            self.stats.cut_rounds += 1;
            rounds += 1;
            if added == 0 {
                return Ok(NodeEnd::Branch(x, node.bound, sol.basis));
            }
            warm = sol.basis.map(|b| Basis {
                columns: b.columns,
                rows: {
                    let mut r = b.rows;
                    // cuts sit between the globals and the local rows
                    let split = self.base.len() + self.globals.len() - added;
                    let tail = r.split_off(split);
                    r.extend((0..added).map(|_| VarStatus::Basic));
                    r.extend(tail);
                    r
                },
            });
        }
    }

    fn solve(mut self) -> Result<SolveResult> {
        let mut queue = BinaryHeap::new();
        let mut next_id = 1;
        queue.push(Queued(SearchNode::root(), self.cfg.node_select));
        let mut timed_out_bound: Option<f64> = None;
        let mut last_upper = f64::INFINITY;
        while let Some(Queued(mut node, _)) = queue.pop() {
            let open_max = queue
                .iter()
                .map(|q| q.0.bound)
                .fold(node.bound, f64::max)
                .max(self.incumbent_value);
            if open_max < last_upper {
                last_upper = open_max;
                self.stats.bound_trace.push(open_max);
            }
            if node.bound <= self.incumbent_value + 1e-9 {
                continue;
            }
            self.stats.nodes += 1;
            match self.run_node(&mut node)? {
                NodeEnd::Pruned | NodeEnd::Solved => {}
                NodeEnd::TimedOut(b) => {
                    let rest = queue.iter().map(|q| q.0.bound).fold(b, f64::max);
                    timed_out_bound = Some(rest.max(self.incumbent_value));
                    break;
                }
                NodeEnd::Branch(x, bound, basis) => {
                    node.bound = bound;
                    node.basis = basis;
                    node.basis_globals = self.globals.len();
                    let (down, up) = self.children(&node, &x, next_id)?;
                    next_id += 2;
                    for child in [down, up].into_iter().flatten() {
                        queue.push(Queued(child, self.cfg.node_select));
                    }
                }
            }
        }
        let (upper, optimal) = match timed_out_bound {
            Some(b) => (b, false),
            None => (self.incumbent_value, true),
        };
        if upper < last_upper {
            self.stats.bound_trace.push(upper);
        }
        Ok(SolveResult {
            assignment: self.incumbent,
            objective: self.incumbent_value,
            upper_bound: upper,
            gap: (upper - self.incumbent_value).max(0.0),
            optimal,
            stats: self.stats,
            cuts: self.records,
        })
    }

    /// Children of a node. An integral cyclic point (possible when cuts are
    /// off) is split on a free family of one of its cycles.
    fn children(
        &self,
        node: &SearchNode,
        x: &FamilyVector,
        id: usize,
    ) -> Result<(Option<SearchNode>, Option<SearchNode>)> {
        if !x.is_integral(self.cfg.int_tol) {
            let (d, u) = branch_with_ids(node, x, &self.idx, self.cfg.branch, self.cfg.int_tol, id, id + 1)?;
            return Ok((Some(d), Some(u)));
        }
        let a = decode_digraph(x, &self.idx)?;
        let fixed_one: HashSet<usize> = node
            .fixed
            .iter()
            .filter(|f| f.1 >= 1.0)
            .map(|f| f.0)
            .collect();
        let mut adj = vec![Vec::new(); a.p()];
        for (j, i) in a.edges() {
            adj[j].push(i);
        }
        for cyc in elementary_cycles(&adj, 1) {
            for &i in &cyc {
                let k = self.idx.position(i, a.parents(i)).expect("edge family");
                if !fixed_one.contains(&k) {
                    let (d, u) = split_on(node, &self.idx, k, id, id + 1);
                    return Ok((Some(d), Some(u)));
                }
            }
        }
        // every family on the cycle is fixed to one: no acyclic completion
        Ok((None, None))
    }
}

/// Lifted coefficient of column `k` for a 4-node table on nodes `s`.
fn lifted_coef(idx: &FamilyIndex, k: usize, s: &[usize; 4], t: &[u8; 64]) -> f64 {
    let f = idx.family(k);
    let Some(ci) = s.iter().position(|&v| v == f.child) else {
        return 0.0;
    };
    let m = f
        .parents
        .iter()
        .filter_map(|j| s.iter().position(|v| v == j))
        .fold(0usize, |m, l| m | 1 << l);
    if m == 0 {
        0.0
    } else {
        t[ci * 16 + m] as f64
    }
}

/// Node sets of the elementary cycles of the rounding-up digraph.
pub fn rounding_up_clusters(x: &FamilyVector, idx: &FamilyIndex) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); idx.p()];
    for (k, f) in idx.families().iter().enumerate() {
        if x.0[k] > 1e-12 {
            for &j in &f.parents {
                if !adj[j].contains(&f.child) {
                    adj[j].push(f.child);
                }
            }
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let mut out: Vec<Vec<usize>> = elementary_cycles(&adj, crate::separation::MAX_CYCLES)
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The cutting-plane loop at a node, exposed for inspection: returns the
/// final LP point, the LP bound after each round and the cuts added.
pub fn cutting_plane_loop(
    inst: &BnslInstance,
    cfg: &SolveConfig,
    node: &SearchNode,
) -> Result<(FamilyVector, Vec<f64>, Vec<ClusterCut>)> {
    let mut cfg = cfg.clone();
    cfg.record_cuts = true;
    let mut s = Session::new(inst, &cfg)?;
    s.incumbent_value = f64::NEG_INFINITY;
    let mut node = node.clone();
    node.id = 0;
    let idx = s.idx.clone();
    let mut trace = Vec::new();
    let mut cuts = Vec::new();
    let mut last_x = FamilyVector::zeros(idx.len());
    for _ in 0..cfg.max_rounds {
        let model = s.node_model(&node);
        let sol = lp_solve_with(&model, None, LpOptions { exact: cfg.exact_lp })?;
        if sol.status == LpStatus::Infeasible {
            break;
        }
        trace.push(sol.objective + s.constant);
        last_x = FamilyVector(sol.x.clone());
        if last_x.is_integral(cfg.int_tol) && is_acyclic(&decode_digraph(&last_x, &idx)?) {
            break;
        }
        let before = s.records.len();
        if s.separate(&last_x) == 0 {
            break;
        }
        for r in &s.records[before..] {
            let cluster = cluster_of_row(&r.row, &idx);
            let kappa = cluster.len() - r.row.rhs as usize;
            cuts.push(ClusterCut {
                violation: r.row.activity(&last_x.0) - r.row.rhs,
                cluster,
                kappa,
            });
        }
    }
    Ok((last_x, trace, cuts))
}

fn cluster_of_row(row: &Row, idx: &FamilyIndex) -> Vec<usize> {
    let mut c: Vec<usize> = row.coeffs.iter().map(|&(k, _)| idx.family(k).child).collect();
    c.sort_unstable();
    c.dedup();
    c
}

pub fn solve(inst: &BnslInstance, cfg: &SolveConfig) -> Result<SolveResult> {
    cfg.validate()?;
    Session::new(inst, cfg)?.solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_names;

    fn two_node() -> BnslInstance {
        BnslInstance::new(
            default_names(2),
            vec![
                vec![(vec![], 0.0), (vec![1], 5.0)],
                vec![(vec![], 0.0), (vec![0], 4.0)],
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn two_node_optimum() {
        let r = solve(&two_node(), &SolveConfig::default()).unwrap();
        assert_eq!(r.objective, 5.0);
        assert_eq!(r.assignment.parents(0), &[1]);
        assert!(r.optimal);
        assert_eq!(r.stats.cluster_cuts, 1);
        let nc = solve(&two_node(), &SolveConfig::no_cuts()).unwrap();
        assert_eq!(nc.objective, 5.0);
    }

    #[test]
    fn negative_scores_give_empty_graph() {
        let inst = BnslInstance::complete(4, None).with_scores(|_, s| -(s.len() as f64));
        let r = solve(&inst, &SolveConfig::default()).unwrap();
        assert_eq!(r.objective, 0.0);
        assert_eq!(r.assignment, DigraphAssignment::empty(4));
    }

    #[test]
    fn branch_children() {
        let idx = BnslInstance::complete(2, None).family_index();
        let x = FamilyVector(vec![0.5, 0.2]);
        let (d, u) = branch(&SearchNode::root(), &x, &idx, BranchRule::Variable, 1e-6).unwrap();
        assert_eq!(d.fixed, vec![(0, 0.0, 0.0)]);
        assert_eq!(u.fixed[0], (0, 1.0, 1.0));
        assert!(!d.admits(&x.0, 1e-9) && !u.admits(&x.0, 1e-9));
        assert!(branch(&SearchNode::root(), &FamilyVector(vec![1.0, 0.0]), &idx, BranchRule::Variable, 1e-6).is_err());
    }

    #[test]
    fn loop_two_cycle() {
        let (_, trace, cuts) =
            cutting_plane_loop(&two_node(), &SolveConfig::default(), &SearchNode::root()).unwrap();
        assert_eq!(trace, vec![9.0, 5.0]);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].cluster, vec![0, 1]);
    }

    #[test]
    fn orbit_of_4b_has_six_members() {
        assert_eq!(class4b_orbit().len(), 6);
    }
}
