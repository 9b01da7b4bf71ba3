use crate::args::*;
use bnsl_core::model::{render_set, DEFAULT_ENUM_LIMIT};
use bnsl_core::par::Parallelism;
use bnsl_core::reductions::{asp_brute_force, bnsl_to_asp, lift_k2_solution, recover_bnsl_solution, reduce_to_k2};
use bnsl_core::scoreio::{
    parse_family_vector, parse_scores_with, write_assignment, write_family_vector, write_scores,
    write_solution, ParseOptions,
};
use bnsl_core::separation::{
    build_vc_gadget, kcluster_separate_with, weak_separate_exact_with, weak_separate_heuristic_with, Graph,
    Outcome, DEFAULT_EXACT_LIMIT, EPS_CUT,
};
use bnsl_core::solver::{solve, BranchRule, NodeSelect, SolveConfig};
use bnsl_core::model::enumerate_acyclic_digraphs_with_limit;
use bnsl_core::{total_score, BnslInstance};
use bnsl_polytope::catalog::catalog_facets;
use bnsl_polytope::faces::{order_face, sink_face};
use bnsl_polytope::verify::verify_catalog;
use bnsl_polytope::{build_extended_model, check_coeff_monotonicity, check_monotone_form, dd, extended};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write;
use std::path::Path;
use std::time::Duration;

/// Exit code 2: bad input of any kind.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub struct Report {
    pub text: String,
    /// 0 on success, 1 when the result is not certified optimal or valid.
    pub code: i32,
}

fn done(text: String) -> Report {
    Report { text, code: 0 }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load(path: &Path, palim: Option<usize>) -> Result<(BnslInstance, usize), InputError> {
    let parsed = parse_scores_with(&read(path)?, ParseOptions { kappa: palim })?;
    Ok((parsed.instance, parsed.dropped))
}

fn node_list(spec: &str, names: &[String]) -> Result<Vec<usize>, InputError> {
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            names
                .iter()
                .position(|n| n == t)
                .ok_or_else(|| InputError(format!("unknown node '{t}'")))
        })
        .collect()
}

pub fn execute(cli: &Cli) -> Result<Report, InputError> {
    let mode = match cli.common.jobs {
        Some(0) => return Err(InputError("--jobs must be positive".into())),
        Some(1) => Parallelism::Sequential,
        Some(n) => {
            bnsl_core::par::configure_threads(n);
            Parallelism::Parallel
        }
        None => Parallelism::Parallel,
    };
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Separate(a) => run_separate(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Polytope(c) => run_polytope(c, cli.common.seed, mode),
        Command::Gadget(a) => run_gadget(a, cli.common.seed),
    }
}

pub fn solve_config(a: &SolveArgs) -> Result<SolveConfig, InputError> {
    let mut cfg = SolveConfig::no_cuts();
    for c in a.cuts.split(',').map(str::trim) {
        match c {
            "cluster" => cfg.cluster_cuts = true,
            "kcluster" => cfg.kcluster_cuts = true,
            "class4b" => cfg.class4b_cuts = true,
            "triples" => cfg.triple_rows = true,
            "none" => {}
            other => return Err(InputError(format!("unknown cut class '{other}'"))),
        }
    }
    cfg.branch = match a.branch {
        Branch::Var => BranchRule::Variable,
        Branch::Sum => BranchRule::Sum,
    };
    cfg.node_select = match a.node {
        NodeOrder::Best => NodeSelect::BestBound,
        NodeOrder::Dfs => NodeSelect::DepthFirst,
    };
    if let Some(t) = a.tol {
        if !(t > 0.0 && t < 0.5) {
            return Err(InputError("--tol must lie in (0, 0.5)".into()));
        }
        cfg.int_tol = t;
        cfg.eps_cut = t;
    }
    if let Some(s) = a.time {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(InputError("--time must be a non-negative number of seconds".into()));
        }
        cfg.time_limit = Some(Duration::from_secs_f64(s));
    }
    cfg.exact_lp = a.exact_rational;
    Ok(cfg)
}

fn run_solve(a: &SolveArgs) -> Result<Report, InputError> {
    let cfg = solve_config(a)?;
    let (inst, dropped) = load(&a.scores, a.palim)?;
    let r = solve(&inst, &cfg)?;
    let mut s = write_solution(&r, &inst);
    writeln!(s, "status {}", if r.optimal { "optimal" } else { "suboptimal" }).unwrap();
    if dropped > 0 {
        writeln!(s, "dropped {dropped}").unwrap();
    }
    Ok(Report {
        text: s,
        code: if r.optimal { 0 } else { 1 },
    })
}

fn run_separate(a: &SeparateArgs) -> Result<Report, InputError> {
    let (inst, _) = load(&a.scores, a.palim)?;
    let idx = inst.family_index();
    let x = parse_family_vector(&read(&a.point)?, &inst, &idx)?;
    let eps = a.tol.unwrap_or(EPS_CUT);
    let rep = match a.method {
        Method::Exact => weak_separate_exact_with(&x, &idx, DEFAULT_EXACT_LIMIT, eps),
        Method::Heuristic => weak_separate_heuristic_with(&x, &idx, eps),
    };
    let mut s = String::new();
    let outcome = match rep.outcome {
        Outcome::CutsFound => "cuts-found",
        Outcome::ProvenNone => "none",
        Outcome::HeuristicGaveUp => "gave-up",
    };
    writeln!(s, "outcome {outcome}").unwrap();
    for c in &rep.cuts {
        writeln!(
            s,
            "cluster {} violation {:?}",
            render_set(&c.cluster, inst.names()),
            c.violation
        )
        .unwrap();
    }
    if let Some(spec) = &a.kcluster {
        let cl = node_list(spec, inst.names())?;
        for c in kcluster_separate_with(&x, &idx, &cl, eps)? {
            writeln!(
                s,
                "kcluster {} kappa {} violation {:?}",
                render_set(&c.cluster, inst.names()),
                c.kappa,
                c.violation
            )
            .unwrap();
        }
    }
    Ok(done(s))
}

fn run_reduce(a: &ReduceArgs) -> Result<Report, InputError> {
    let (inst, _) = load(&a.scores, a.palim)?;
    let mut s = String::new();
    match (a.to, a.solve) {
        (Target::K2, false) => s = write_scores(&reduce_to_k2(&inst)?.0),
        (Target::Asp, false) => s = bnsl_to_asp(&inst)?.0.write(),
        (Target::K2, true) => {
            let (red, map) = reduce_to_k2(&inst)?;
            let r = solve(&red, &SolveConfig::default())?;
            let g = lift_k2_solution(&r.assignment, &map)?;
            s.push_str(&write_assignment(&g, &inst));
            writeln!(s, "objective {:?}", total_score(&g, &inst)?).unwrap();
            writeln!(s, "reduced nodes {}", red.p()).unwrap();
        }
        (Target::Asp, true) => {
            let (d, map) = bnsl_to_asp(&inst)?;
            let (b, v) = asp_brute_force(&d)?;
            let g = recover_bnsl_solution(&b, &map)?;
            s.push_str(&write_assignment(&g, &inst));
            writeln!(s, "objective {:?}", map.bnsl_value(v)).unwrap();
            writeln!(s, "asp nodes {} arcs {}", d.n(), d.arcs.len()).unwrap();
        }
    }
    Ok(done(s))
}

fn run_polytope(c: &PolytopeCommand, seed: u64, mode: Parallelism) -> Result<Report, InputError> {
    let mut s = String::new();
    let mut code = 0;
    match c {
        PolytopeCommand::Enumerate(a) => {
            let it = enumerate_acyclic_digraphs_with_limit(a.p, a.palim, DEFAULT_ENUM_LIMIT)?;
            let names = bnsl_core::model::default_names(a.p);
            let mut n = 0usize;
            for g in it {
                if a.list {
                    writeln!(s, "{}", g.render(&names)).unwrap();
                }
                n += 1;
            }
            writeln!(s, "acyclic digraphs {n}").unwrap();
        }
        PolytopeCommand::Verify(a) => {
            let cat = catalog_facets(a.p, a.palim)?;
            let poly = cat.polytope()?;
            let reports = verify_catalog(&cat, &poly, mode);
            let n = reports.len();
            let valid = reports.iter().filter(|r| r.valid).count();
            let facets = reports.iter().filter(|r| r.rank.is_facet()).count();
            writeln!(s, "{valid}/{n} valid, {facets}/{n} facet-defining").unwrap();
            for r in reports.iter().filter(|r| !r.ok()) {
                writeln!(s, "failed {}: valid {} rank {}/{}", r.label, r.valid, r.rank.rank, r.rank.dim).unwrap();
            }
            let mono = check_monotone_form(&cat);
            let coeff = check_coeff_monotonicity(&cat);
            writeln!(s, "monotone form {}", if mono { "ok" } else { "failed" }).unwrap();
            writeln!(s, "coefficient monotonicity {}", if coeff { "ok" } else { "failed" }).unwrap();
            let mut ok = valid == n && facets == n && mono && coeff;
            if a.audit > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut closed = 0;
                for _ in 0..a.audit {
                    let e = &cat.entries[rng.gen_range(0..n)];
                    let mut perm: Vec<usize> = (0..a.p).collect();
                    perm.shuffle(&mut rng);
                    if e.ineq.permute(&cat.index, &perm).is_some_and(|q| cat.contains(&q)) {
                        closed += 1;
                    }
                }
                writeln!(s, "relabelling audit {closed}/{}", a.audit).unwrap();
                ok &= closed == a.audit;
            }
            if a.hull {
                let pts: Vec<Vec<i64>> = poly
                    .vertices()
                    .iter()
                    .map(|x| x.iter().map(|&b| b as i64).collect())
                    .collect();
                let hull = dd::hull_facets(&pts)?;
                let same = hull.len() == n && hull.iter().all(|q| cat.contains(q));
                writeln!(s, "hull {} facets, {}", hull.len(), if same { "matches catalog" } else { "differs from catalog" })
                    .unwrap();
                ok &= same;
            }
            code = if ok { 0 } else { 1 };
        }
        PolytopeCommand::Catalog(a) => {
            let cat = catalog_facets(a.p, a.palim)?;
            s = if a.machine { cat.export_machine() } else { cat.export_text() };
        }
        PolytopeCommand::Liftproject => {
            let m = build_extended_model(4)?;
            writeln!(
                s,
                "variables {} equations {} inequalities {}",
                m.vars.len(),
                m.equations.len(),
                m.inequality_count()
            )
            .unwrap();
            for f in &m.flags {
                let act = if f.corrected { "corrected" } else { "kept" };
                writeln!(s, "flag {}: {} ({act})", f.label, f.issue).unwrap();
            }
            for (name, q, same) in extended::replay_classes(&m)? {
                writeln!(s, "{name} {}: {}", if same { "matches" } else { "differs" }, q.render(&m.index, &m.names))
                    .unwrap();
                if !same {
                    code = 1;
                }
            }
        }
        PolytopeCommand::Faces(a) => {
            let names = bnsl_core::model::default_names(a.p);
            let face = match a.kind {
                FaceKind::Order => {
                    let order = match &a.order {
                        Some(o) => node_list(o, &names)?,
                        None => (0..a.p).collect(),
                    };
                    order_face(a.p, &order)?
                }
                FaceKind::Sink => {
                    let j = node_list(a.sink.as_deref().unwrap_or("a"), &names)?;
                    if j.len() != 1 {
                        return Err(InputError("--sink takes one node".into()));
                    }
                    sink_face(a.p, j[0])?
                }
            };
            let chk = face.check(mode);
            writeln!(
                s,
                "coordinates {} clamped {} dimension {} vertices {}",
                face.coords.len(),
                face.clamped.len(),
                chk.dim,
                face.vertices.len()
            )
            .unwrap();
            if a.kind == FaceKind::Order {
                writeln!(s, "acyclic tournaments {}", face.tournaments()).unwrap();
            }
            writeln!(
                s,
                "{}/{} valid, {}/{} facet-defining",
                chk.valid, chk.facets, chk.facet_defining, chk.facets
            )
            .unwrap();
            for (label, q) in &face.facets {
                let idx = &face.index;
                let terms: Vec<String> = face
                    .coords
                    .iter()
                    .zip(&q.coef)
                    .filter(|(_, &c)| c != 0)
                    .map(|(&k, &c)| {
                        let f = bnsl_polytope::ineq::family_label(idx.family(k), &face.names);
                        match c {
                            1 => f,
                            -1 => format!("-{f}"),
                            _ => format!("{c}*{f}"),
                        }
                    })
                    .collect();
                writeln!(s, "{label}: {} <= {}", terms.join(" + "), q.rhs).unwrap();
            }
            code = if chk.all_ok() { 0 } else { 1 };
        }
    }
    Ok(Report { text: s, code })
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph, InputError> {
    if n < 2 {
        return Err(InputError("--random-n must be at least 2".into()));
    }
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        if !edges.is_empty() {
            return Ok(Graph::new(n, edges)?);
        }
    }
}

fn run_gadget(a: &GadgetArgs, seed: u64) -> Result<Report, InputError> {
    let g = match &a.graph {
        Some(p) => Graph::parse(&read(p)?)?,
        None => random_graph(a.random_n, &mut ChaCha8Rng::seed_from_u64(seed))?,
    };
    let (inst, x) = build_vc_gadget(&g, a.k)?;
    let idx = inst.family_index();
    let mut s = String::new();
    if !a.separate {
        s.push_str("# instance\n");
        s.push_str(&write_scores(&inst));
        s.push_str("# point\n");
        s.push_str(&write_family_vector(&x, &inst, &idx));
        return Ok(done(s));
    }
    let rep = weak_separate_exact_with(&x, &idx, inst.p().max(DEFAULT_EXACT_LIMIT), EPS_CUT);
    match rep.cuts.first() {
        Some(c) => writeln!(
            s,
            "separating cluster found {} violation {:?}",
            render_set(&c.cluster, inst.names()),
            c.violation
        )
        .unwrap(),
        None => writeln!(s, "no separating cluster").unwrap(),
    }
    writeln!(s, "vertices {} edges {} k {}", g.n, g.edges.len(), a.k).unwrap();
    writeln!(s, "minimum vertex cover {}", g.min_vertex_cover()).unwrap();
    Ok(done(s))
}
