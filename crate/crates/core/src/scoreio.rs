//! Local-score files, solution reports and family-vector files.
//!
//! Score file grammar: a variable count, then per variable a `name r`
//! header followed by `r` rows `score k parent_1 .. parent_k`. A `#` starts a
//! comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{render_set, BnslInstance, DigraphAssignment, FamilyIndex, FamilyVector, ParentSet};
use crate::solver::SolveResult;

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Drop rows whose parent set is larger than this.
    pub kappa: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ParsedScores {
    pub instance: BnslInstance,
    pub dropped: usize,
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            items.extend(body.split_whitespace().map(|t| (n + 1, t)));
        }
        Tokens { items, pos: 0 }
    }

    fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map(|t| t.0)
            .unwrap_or(1)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let t = self.items.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: self.line(),
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn remaining(&self) -> usize {
        self.items.len() - self.pos
    }

    fn count(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, t) = self.next(what)?;
        t.parse::<usize>().map(|v| (line, v)).map_err(|_| Error::Parse {
            line,
            msg: format!("expected {what}, found '{t}'"),
        })
    }

    fn real(&mut self) -> Result<(usize, f64)> {
        let (line, t) = self.next("score")?;
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((line, v)),
            _ => Err(Error::Parse {
                line,
                msg: format!("malformed score '{t}'"),
            }),
        }
    }
}

pub fn parse_scores(text: &str) -> Result<BnslInstance> {
    parse_scores_with(text, ParseOptions::default()).map(|p| p.instance)
}

pub fn parse_scores_with(text: &str, opts: ParseOptions) -> Result<ParsedScores> {
    let mut tok = Tokens::new(text);
    let (_, p) = tok.count("variable count")?;
    // names first so that parents may refer forward
    let mut names = Vec::with_capacity(p.min(tok.remaining()));
    let mut blocks = Vec::with_capacity(p.min(tok.remaining()));
    for _ in 0..p {
        let (line, name) = tok.next("variable name")?;
        if names.iter().any(|n: &String| n == name) {
            return Err(Error::Parse {
                line,
                msg: format!("variable '{name}' declared twice"),
            });
        }
        names.push(name.to_string());
        let (_, r) = tok.count("parent set count")?;
        let mut rows = Vec::with_capacity(r.min(tok.remaining()));
        for _ in 0..r {
            let (line, score) = tok.real()?;
            let (_, k) = tok.count("parent count")?;
            let mut ps = Vec::with_capacity(k.min(tok.remaining()));
            for _ in 0..k {
                ps.push(tok.next("parent name")?.1);
            }
            rows.push((line, score, ps));
        }
        blocks.push(rows);
    }
    if tok.pos < tok.items.len() {
        let (line, t) = tok.items[tok.pos];
        return Err(Error::Parse {
            line,
            msg: format!("trailing token '{t}'"),
        });
    }
    let lookup: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut dropped = 0;
    let mut all = Vec::with_capacity(p);
    for (i, rows) in blocks.into_iter().enumerate() {
        let mut out: Vec<(ParentSet, f64)> = Vec::with_capacity(rows.len());
        let mut seen = std::collections::HashSet::new();
        for (line, score, ps) in rows {
            let mut set = Vec::with_capacity(ps.len());
            for n in ps {
                let j = *lookup.get(n).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("unknown parent '{n}'"),
                })?;
                if j == i {
                    return Err(Error::Parse {
                        line,
                        msg: format!("'{}' listed as its own parent", names[i]),
                    });
                }
                set.push(j);
            }
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parse {
                    line,
                    msg: "repeated parent in one set".into(),
                });
            }
            if !seen.insert(set.clone()) {
                return Err(Error::Parse {
                    line,
                    msg: format!("duplicate family {} <- {}", names[i], render_set(&set, &names)),
                });
            }
            if opts.kappa.map(|k| set.len() > k).unwrap_or(false) {
                dropped += 1;
                continue;
            }
            out.push((set, score));
        }
        all.push(out);
    }
    let instance = BnslInstance::new(names, all, opts.kappa)?;
    Ok(ParsedScores { instance, dropped })
}

fn fmt_real(v: f64) -> String {
    // shortest representation that parses back to the same value
    format!("{v:?}")
}

pub fn write_scores(inst: &BnslInstance) -> String {
    let mut s = String::new();
    let names = inst.names();
    let _ = writeln!(s, "{}", inst.p());
    for i in 0..inst.p() {
        let sets = inst.permitted(i);
        let scores = inst.scores(i);
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
        let _ = writeln!(s, "{} {}", names[i], sets.len());
        for k in order {
            let _ = write!(s, "{} {}", fmt_real(scores[k]), sets[k].len());
            for &j in &sets[k] {
                let _ = write!(s, " {}", names[j]);
            }
            s.push('\n');
        }
    }
    s
}

pub fn write_assignment(a: &DigraphAssignment, inst: &BnslInstance) -> String {
    let mut s = String::new();
    for i in 0..a.p() {
        let score = inst.score(i, a.parents(i)).unwrap_or(f64::NAN);
        let _ = writeln!(
            s,
            "{} <- {} {}",
            inst.name(i),
            render_set(a.parents(i), inst.names()),
            fmt_real(score)
        );
    }
    s
}

pub fn write_solution(r: &SolveResult, inst: &BnslInstance) -> String {
    let mut s = write_assignment(&r.assignment, inst);
    let _ = writeln!(s, "objective {}", fmt_real(r.objective));
    let _ = writeln!(s, "bound {}", fmt_real(r.upper_bound));
    let _ = writeln!(s, "gap {}", fmt_real(r.gap));
    let _ = writeln!(s, "nodes {}", r.stats.nodes);
    let _ = writeln!(
        s,
        "cuts {} cluster {} kcluster {} class4b {}",
        r.stats.total_cuts(),
        r.stats.cluster_cuts,
        r.stats.kcluster_cuts,
        r.stats.class4b_cuts
    );
    s
}

/// Splits "child <- {a,b} rest" into its parts.
fn parse_family_line<'a>(
    line: &'a str,
    n: usize,
    inst: &BnslInstance,
) -> Result<(usize, ParentSet, &'a str)> {
    let err = |msg: String| Error::Parse { line: n, msg };
    let (child, rest) = line
        .split_once("<-")
        .ok_or_else(|| err("expected 'child <- {parents}'".into()))?;
    let child = child.trim();
    let i = inst
        .node_by_name(child)
        .ok_or_else(|| err(format!("unknown node '{child}'")))?;
    let rest = rest.trim_start();
    let body = rest
        .strip_prefix('{')
        .ok_or_else(|| err("expected '{'".into()))?;
    let (inner, tail) = body
        .split_once('}')
        .ok_or_else(|| err("expected '}'".into()))?;
    let mut set = Vec::new();
    for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        set.push(
            inst.node_by_name(t)
                .ok_or_else(|| err(format!("unknown node '{t}'")))?,
        );
    }
    set.sort_unstable();
    Ok((i, set, tail.trim()))
}

/// Reads the node block of a solution report back into an assignment.
pub fn parse_assignment(text: &str, inst: &BnslInstance) -> Result<DigraphAssignment> {
    let mut parents: Vec<Option<ParentSet>> = vec![None; inst.p()];
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() || !line.contains("<-") {
            continue;
        }
        let (i, set, _) = parse_family_line(line, n + 1, inst)?;
        if parents[i].replace(set).is_some() {
            return Err(Error::Parse {
                line: n + 1,
                msg: format!("node '{}' assigned twice", inst.name(i)),
            });
        }
    }
    let all = parents
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("no parents given for '{}'", inst.name(i)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let a = DigraphAssignment::new(all);
    a.check_permitted(inst)?;
    Ok(a)
}

/// Family-vector file: lines "child <- {parents} value"; unlisted families are 0.
pub fn parse_family_vector(text: &str, inst: &BnslInstance, idx: &FamilyIndex) -> Result<FamilyVector> {
    let mut x = FamilyVector::zeros(idx.len());
    let mut seen = vec![false; idx.len()];
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (i, set, tail) = parse_family_line(line, n + 1, inst)?;
        let err = |msg: String| Error::Parse { line: n + 1, msg };
        let v: f64 = tail
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| err(format!("malformed value '{tail}'")))?;
        if set.is_empty() {
            continue;
        }
        let k = idx.position(i, &set).ok_or_else(|| {
            Error::UnknownFamily(format!("{} <- {}", inst.name(i), render_set(&set, inst.names())))
        })?;
        if std::mem::replace(&mut seen[k], true) {
            return Err(err("family listed twice".into()));
        }
        if !(-1e-9..=1.0 + 1e-6).contains(&v) {
            return Err(err(format!("value {v} outside [0,1]")));
        }
        x.0[k] = v.max(0.0);
    }
    Ok(x)
}

pub fn write_family_vector(x: &FamilyVector, inst: &BnslInstance, idx: &FamilyIndex) -> String {
    let mut s = String::new();
    for (k, f) in idx.families().iter().enumerate() {
        if x.0[k] != 0.0 {
            let _ = writeln!(s, "{} {}", f.render(inst.names()), fmt_real(x.0[k]));
        }
    }
    s
}
