//! Extended formulation on four nodes built from one copy of the
//! three-node polytope per distinguished sink, and projection of its
//! non-negative row combinations back to family space.

use crate::catalog::{catalog_facets, class_representative, parse_compact_family, FacetClass};
use crate::error::{PolyError, Result};
use crate::ineq::{family_label, LinearInequality};
use bnsl_core::model::{Family, FamilyIndex};
use bnsl_core::{BnslInstance, DigraphAssignment};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtVar {
    /// Column of the family index.
    Family(usize),
    /// Node chosen as distinguished sink.
    Sink(usize),
    /// Family column under a given sink.
    Copy { sink: usize, family: usize },
}

/// `sum terms <= mult * x_sink`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtRow {
    pub label: String,
    pub sink: usize,
    pub terms: Vec<(usize, i64)>,
    pub mult: i64,
}

/// `sum terms == rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtEquation {
    pub label: String,
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptionFlag {
    pub label: String,
    pub issue: String,
    /// The derived row replaced the printed one.
    pub corrected: bool,
}

#[derive(Clone, Debug)]
pub struct ExtendedModel {
    pub p: usize,
    pub names: Vec<String>,
    pub index: FamilyIndex,
    pub vars: Vec<ExtVar>,
    lookup: HashMap<ExtVar, usize>,
    pub equations: Vec<ExtEquation>,
    pub rows: Vec<ExtRow>,
    /// Variables carrying a `>= 0` row.
    pub lower_bounds: Vec<usize>,
    pub flags: Vec<TranscriptionFlag>,
}

impl ExtendedModel {
    pub fn var(&self, v: ExtVar) -> Option<usize> {
        self.lookup.get(&v).copied()
    }

    pub fn inequality_count(&self) -> usize {
        self.rows.len() + self.lower_bounds.len()
    }

    pub fn row(&self, label: &str) -> Option<&ExtRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Variable for `family` under `sink`; the family of the sink with
    /// every other node as parent is its own column. `None` when the
    /// sink is a parent.
    pub fn resolve(&self, sink: usize, f: &Family) -> Option<usize> {
        resolve(&self.index, &self.lookup, sink, f)
    }

    /// Point of the extended model for digraph `g` with sink `j`.
    pub fn point(&self, g: &DigraphAssignment, j: usize) -> Vec<i64> {
        let chosen = |k: usize| {
            let f = self.index.family(k);
            (g.parents(f.child) == f.parents.as_slice()) as i64
        };
        self.vars
            .iter()
            .map(|v| match *v {
                ExtVar::Family(k) => chosen(k),
                ExtVar::Sink(s) => (s == j) as i64,
                ExtVar::Copy { sink, family } => (sink == j) as i64 * chosen(family),
            })
            .collect()
    }

    pub fn satisfies(&self, x: &[i64]) -> bool {
        let eval = |t: &[(usize, i64)]| t.iter().map(|&(v, c)| c * x[v]).sum::<i64>();
        self.equations.iter().all(|e| eval(&e.terms) == e.rhs)
            && self.rows.iter().all(|r| {
                let s = self.var(ExtVar::Sink(r.sink)).unwrap();
                eval(&r.terms) <= r.mult * x[s]
            })
            && self.lower_bounds.iter().all(|&v| x[v] >= 0)
    }

    pub fn render_row(&self, r: &ExtRow) -> String {
        let terms: Vec<String> = r
            .terms
            .iter()
            .map(|&(v, c)| {
                let name = self.render_var(v);
                if c == 1 { name } else { format!("{c}*{name}") }
            })
            .collect();
        let rhs = if r.mult == 1 { String::new() } else { r.mult.to_string() };
        format!("{}: {} <= {rhs}x_{}", r.label, terms.join(" + "), self.names[r.sink])
    }

    pub fn render_var(&self, v: usize) -> String {
        match self.vars[v] {
            ExtVar::Family(k) => format!("x[{}]", family_label(self.index.family(k), &self.names)),
            ExtVar::Sink(s) => format!("x_{}", self.names[s]),
            ExtVar::Copy { sink, family } => format!(
                "x[{},{}]",
                self.names[sink],
                family_label(self.index.family(family), &self.names)
            ),
        }
    }
}

fn resolve(idx: &FamilyIndex, lookup: &HashMap<ExtVar, usize>, sink: usize, f: &Family) -> Option<usize> {
    if f.parents.contains(&sink) || f.parents.contains(&f.child) || f.parents.is_empty() {
        return None;
    }
    let k = idx.position(f.child, &f.parents)?;
    if f.child == sink && f.parents.len() + 1 == idx.p() {
        return lookup.get(&ExtVar::Family(k)).copied();
    }
    lookup.get(&ExtVar::Copy { sink, family: k }).copied()
}

/// Per-sink rows as printed, `label | terms | multiplier`; terms name the
/// sink implicitly.
pub const PRINTED_ROWS: &str = "\
a-b | b<-c b<-d b<-cd | 1
a-c | c<-b c<-d c<-bd | 1
a-d | d<-b d<-c d<-cd | 1
a-bc | b<-c b<-cd c<-b c<-bd | 1
a-bd | b<-d b<-cd d<-b d<-bd | 1
a-cd | c<-d c<-bd d<-c d<-cd | 1
a-bcd | b<-c b<-d b<-cd c<-b c<-d c<-bd d<-b d<-c d<-cb | 2
a-2-bcd | b<-cd c<-bd d<-bc | 1
a-a | a<-b a<-c a<-d a<-bc a<-bd a<-cd a<-bcd | 1
b-a | a<-c a<-c a<-cd | 1
b-c | c<-a c<-d c<-ad | 1
b-d | d<-a d<-c d<-ac | 1
b-ac | a<-c a<-cd c<-a c<-ad | 1
b-ad | a<-d a<-cd d<-a d<-ac | 1
b-cd | c<-d c<-bd d<-c d<-cd | 1
b-acd | a<-c a<-d a<-cd c<-a c<-d c<-ad d<-a d<-c d<-ac | 2
b-2-acd | a<-cd c<-ad d<-ac | 1
b-b | b<-a b<-c b<-d b<-ac b<-ad b<-cd b<-acd | 1
c-a | a<-b a<-d a<-bd | 1
c-b | b<-a b<-d b<-ad | 1
c-d | d<-a d<-b d<-ab | 1
c-ab | a<-b a<-bd b<-a b<-ad | 1
c-ad | a<-d a<-bd d<-a d<-ab | 1
c-bd | b<-d b<-ad d<-b d<-ab | 1
c-abd | a<-b a<-d a<-bd b<-a b<-d b<-ad d<-a d<-b d<-ab | 2
c-2-abd | a<-bd b<-ad d<-ab | 1
c-c | c<-a c<-b c<-d c<-ab c<-ad c<-bd c<-abd | 1
d-a | a<-b a<-c a<-bc | 1
d-b | b<-a b<-c b<-ac | 1
d-c | c<-a c<-a c<-ab | 1
d-ab | a<-b a<-bc b<-a b<-ac | 1
d-ac | a<-c a<-bc c<-a c<-ab | 1
d-cd | b<-c b<-ac c<-b c<-ab | 1
d-abc | a<-b a<-c a<-bc b<-a b<-c b<-ac c<-a c<-b c<-ab | 2
d-2-abd | a<-bc b<-ac c<-ab | 1
d-d | d<-a d<-b d<-c d<-ab d<-ac d<-bc d<-abc | 1
";

/// Linking equations as printed, `family = sink:family + ...`.
pub const PRINTED_LINKS: &str = "\
a<-b = a:a<-b c:a<-b d:a<-b
a<-c = a:a<-c b:a<-c d:a<-c
a<-d = a:a<-d b:a<-d c:a<-d
b<-a = b:b<-a c:b<-a d:b<-a
b<-c = a:b<-c b:b<-c d:b<-c
b<-d = a:b<-d b:b<-d c:b<-d
c<-a = b:c<-a c:c<-a d:c<-a
c<-b = a:c<-b c:c<-b d:c<-b
c<-d = a:c<-d b:c<-d c:c<-d
d<-a = b:d<-a c:d<-a d:d<-a
d<-b = a:d<-b c:d<-b d:d<-b
d<-c = a:d<-c b:d<-c d:d<-d
a<-bc = a:a<-bc d:a<-bc
a<-bd = a:a<-bd c:a<-bd
a<-cd = a:a<-cd b:a<-cd
b<-ac = b:b<-ac d:b<-ac
b<-ad = b:b<-ad c:b<-ad
b<-cd = b:b<-cd a:b<-cd
c<-ab = c:c<-ab d:c<-ab
c<-ad = b:c<-ad c:c<-ad
c<-bd = a:c<-bd c:c<-bd
d<-ab = c:d<-ab d:d<-ab
d<-ac = b:d<-ac d:d<-ac
d<-bc = a:d<-bc d:d<-bc
";

/// Multipliers that reproduce each extra four-node class.
pub const MULTIPLIERS: [(&str, &str); 9] = [
    ("4B", "a-a a-2-bcd b-b b-2-acd c-c c-ab d-d d-ab"),
    ("4C", "a-a a-2-bcd b-b b-a c-c c-ad d-d d-ac"),
    ("4D", "a-a=2 a-b b-b b-ac b-ad c-c c-abd d-d d-abc"),
    ("4E", "a-a=2 b-b b-2-acd c-c c-2-abd d-d d-2-abc"),
    ("4F", "a-a a-bcd b-b b-acd c-c=2 c-d d-d=2 d-c"),
    ("4G", "a-a a-bcd b-b b-ad b-cd c-c=2 c-d d-d=2 d-bc"),
    ("4H", "a-a=2 b-b b-a c-c c-ad d-d d-ac"),
    ("4I", "a-a=2 a-bcd b-b=2 b-acd c-c=2 c-ad c-bd d-d=2 d-ac d-bc"),
    ("4J", "a-a=2 a-2-bcd b-b b-ac b-ad c-c c-ab c-ad d-d d-ab d-ac"),
];

/// Parses `a-a=2 b-b ...` into labelled multipliers.
pub fn parse_multipliers(text: &str) -> Option<Vec<(String, BigRational)>> {
    text.split_whitespace()
        .map(|t| {
            let (l, v) = t.split_once('=').unwrap_or((t, "1"));
            let v = match v.split_once('/') {
                Some((n, d)) => BigRational::new(n.parse().ok()?, d.parse().ok()?),
                None => BigRational::from_integer(v.parse().ok()?),
            };
            Some((l.to_string(), v))
        })
        .collect()
}

/// Row label for a catalog entry of the sub-polytope on `others`.
fn derived_label(class: &FacetClass, sink: usize, others: &[usize], names: &[String]) -> Option<String> {
    let set = |c: &[usize]| c.iter().map(|&v| names[others[v]].as_str()).collect::<String>();
    match class {
        FacetClass::LowerBound => None,
        FacetClass::ModifiedConvexity(i) => Some(format!("{}-{}", names[sink], names[others[*i]])),
        FacetClass::KCluster { kappa: 1, cluster } => Some(format!("{}-{}", names[sink], set(cluster))),
        FacetClass::KCluster { kappa, cluster } => {
            Some(format!("{}-{kappa}-{}", names[sink], set(cluster)))
        }
        FacetClass::Named(_) => None,
    }
}

/// Builds the model for `p` nodes (three to five). On four nodes the
/// printed rows and linking equations are replayed: a printed item is kept
/// unless it names an undefined variable or is violated by some digraph
/// with its sink, in which case the derived item replaces it and a flag
/// records the difference.
pub fn build_extended_model(p: usize) -> Result<ExtendedModel> {
    if !(3..=5).contains(&p) {
        return Err(PolyError::Unsupported(format!("extended model on {p} nodes")));
    }
    let inst = BnslInstance::complete(p, None);
    let names = inst.names().to_vec();
    let idx = inst.family_index();
    let mut vars = Vec::new();
    for k in 0..idx.len() {
        vars.push(ExtVar::Family(k));
    }
    for j in 0..p {
        vars.push(ExtVar::Sink(j));
    }
    for j in 0..p {
        for (k, f) in idx.families().iter().enumerate() {
            let own_full = f.child == j && f.parents.len() + 1 == p;
            if !f.parents.contains(&j) && !own_full {
                vars.push(ExtVar::Copy { sink: j, family: k });
            }
        }
    }
    let lookup: HashMap<ExtVar, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut equations = vec![ExtEquation {
        label: "sinks".into(),
        terms: (0..p).map(|j| (lookup[&ExtVar::Sink(j)], 1)).collect(),
        rhs: 1,
    }];
    for (k, f) in idx.families().iter().enumerate() {
        if f.parents.len() + 1 == p {
            continue;
        }
        let mut terms = vec![(lookup[&ExtVar::Family(k)], 1)];
        for j in 0..p {
            if let Some(&v) = lookup.get(&ExtVar::Copy { sink: j, family: k }) {
                terms.push((v, -1));
            }
        }
        equations.push(ExtEquation {
            label: format!("link {}", family_label(f, &names)),
            terms,
            rhs: 0,
        });
    }

    let sub = catalog_facets(p - 1, None)?;
    let mut rows = Vec::new();
    for j in 0..p {
        let others: Vec<usize> = (0..p).filter(|&v| v != j).collect();
        for e in &sub.entries {
            let Some(label) = derived_label(&e.class, j, &others, &names) else { continue };
            let mut terms = Vec::new();
            for (k, f) in sub.index.families().iter().enumerate() {
                if e.ineq.coef[k] != 0 {
                    let g = Family::new(others[f.child], f.parents.iter().map(|&v| others[v]).collect());
                    terms.push((resolve(&idx, &lookup, j, &g).expect("defined"), e.ineq.coef[k]));
                }
            }
            terms.sort_unstable();
            rows.push(ExtRow { label, sink: j, terms, mult: e.ineq.rhs });
        }
        let mut terms: Vec<(usize, i64)> = idx
            .child_range(j)
            .map(|k| (resolve(&idx, &lookup, j, idx.family(k)).expect("defined"), 1))
            .collect();
        terms.sort_unstable();
        rows.push(ExtRow {
            label: format!("{}-{}", names[j], names[j]),
            sink: j,
            terms,
            mult: 1,
        });
    }

    let mut lower_bounds: Vec<usize> = Vec::new();
    for (v, var) in vars.iter().enumerate() {
        match *var {
            ExtVar::Copy { .. } => lower_bounds.push(v),
            ExtVar::Family(k) if idx.family(k).parents.len() + 1 == p => lower_bounds.push(v),
            _ => {}
        }
    }

    let mut model = ExtendedModel {
        p,
        names,
        index: idx,
        vars,
        lookup,
        equations,
        rows,
        lower_bounds,
        flags: Vec::new(),
    };
    if p == 4 {
        replay_printed(&mut model)?;
    }
    Ok(model)
}

/// All (digraph, sink) pairs on the model's nodes.
fn sink_points(m: &ExtendedModel) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for g in bnsl_core::enumerate_acyclic_digraphs(m.p, None)? {
        for j in 0..m.p {
            if (0..m.p).all(|i| !g.parents(i).contains(&j)) {
                out.push(m.point(&g, j));
            }
        }
    }
    Ok(out)
}

fn merge(terms: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (v, c) in terms {
        *acc.entry(v).or_default() += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn replay_printed(m: &mut ExtendedModel) -> Result<()> {
    let points = sink_points(m)?;
    let eval = |t: &[(usize, i64)], x: &[i64]| t.iter().map(|&(v, c)| c * x[v]).sum::<i64>();
    let mut flags = Vec::new();
    let mut replaced: Vec<Option<ExtRow>> = vec![None; m.rows.len()];
    for line in PRINTED_ROWS.lines() {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let label = parts[0];
        let mult: i64 = parts[2].parse().expect("printed multiplier");
        let sink = m.names.iter().position(|n| label.starts_with(n.as_str())).expect("sink");
        let mut undefined = Vec::new();
        let mut terms = Vec::new();
        for t in parts[1].split_whitespace() {
            let f = parse_compact_family(t, &m.names).expect("printed family");
            match m.resolve(sink, &f) {
                Some(v) => terms.push((v, 1)),
                None => undefined.push(format!("x[{},{}]", m.names[sink], t)),
            }
        }
        let terms = merge(terms);
        let exact = m.rows.iter().position(|r| r.sink == sink && r.terms == terms && r.mult == mult);
        let at = match (m.rows.iter().position(|r| r.label == label), exact) {
            (_, Some(e)) if m.rows[e].label != label => {
                flags.push(TranscriptionFlag {
                    label: label.into(),
                    issue: format!("printed label; content is row {}", m.rows[e].label),
                    corrected: false,
                });
                e
            }
            (Some(a), _) => a,
            (None, _) => {
                flags.push(TranscriptionFlag {
                    label: label.into(),
                    issue: "no row with this label or content".into(),
                    corrected: false,
                });
                continue;
            }
        };
        let s = m.var(ExtVar::Sink(sink)).unwrap();
        let violated = points.iter().any(|x| eval(&terms, x) > mult * x[s]);
        if !undefined.is_empty() || violated {
            let issue = if undefined.is_empty() {
                "violated by a digraph with this sink".to_string()
            } else {
                format!("undefined {}", undefined.join(", "))
            };
            flags.push(TranscriptionFlag {
                label: m.rows[at].label.clone(),
                issue,
                corrected: true,
            });
        } else {
            if terms != m.rows[at].terms || mult != m.rows[at].mult {
                flags.push(TranscriptionFlag {
                    label: m.rows[at].label.clone(),
                    issue: "valid but differs from the derived row; printed row kept".into(),
                    corrected: false,
                });
            }
            replaced[at] = Some(ExtRow {
                label: m.rows[at].label.clone(),
                sink,
                terms,
                mult,
            });
        }
    }
    for (r, rep) in m.rows.iter_mut().zip(replaced) {
        if let Some(rep) = rep {
            *r = rep;
        }
    }

    for line in PRINTED_LINKS.lines() {
        let (lhs, rhs) = line.split_once('=').expect("printed link");
        let f = parse_compact_family(lhs.trim(), &m.names).expect("printed family");
        let k = m.index.position(f.child, &f.parents).expect("indexed");
        let mut terms = vec![(m.var(ExtVar::Family(k)).unwrap(), 1)];
        let mut undefined = Vec::new();
        for t in rhs.split_whitespace() {
            let (s, fam) = t.split_once(':').expect("sink:family");
            let sink = m.names.iter().position(|n| n == s).expect("sink");
            let g = parse_compact_family(fam, &m.names).expect("family");
            match m.resolve(sink, &g) {
                Some(v) => terms.push((v, -1)),
                None => undefined.push(format!("x[{t}]")),
            }
        }
        let terms = merge(terms);
        let label = format!("link {}", family_label(&f, &m.names));
        let at = m.equations.iter().position(|e| e.label == label).expect("derived link");
        let violated = points.iter().any(|x| eval(&terms, x) != 0);
        if !undefined.is_empty() || violated {
            let issue = if undefined.is_empty() {
                "violated by a digraph with its sink".to_string()
            } else {
                format!("undefined {}", undefined.join(", "))
            };
            flags.push(TranscriptionFlag { label, issue, corrected: true });
        } else if merge(m.equations[at].terms.clone()) != terms {
            flags.push(TranscriptionFlag {
                label,
                issue: "valid but differs from the derived equation".into(),
                corrected: false,
            });
        }
    }
    m.flags = flags;
    Ok(())
}

/// Sums `u_r * row_r`, turns the sink variables into a constant through
/// the sink equation, moves the smallest copy coefficient of each family
/// onto the family column through its linking equation, and drops the
/// non-negative remainders.
pub fn project_with_multipliers(
    m: &ExtendedModel,
    u: &[(String, BigRational)],
) -> Result<LinearInequality> {
    let mut acc: HashMap<usize, BigRational> = HashMap::new();
    let mut t = vec![BigRational::zero(); m.p];
    for (label, w) in u {
        if w.is_negative() {
            return Err(PolyError::NotProjectable(format!("negative multiplier on {label}")));
        }
        let row = m
            .row(label)
            .ok_or_else(|| PolyError::NotProjectable(format!("no row {label}")))?;
        for &(v, c) in &row.terms {
            *acc.entry(v).or_insert_with(BigRational::zero) += w * BigRational::from_integer(c.into());
        }
        t[row.sink] += w * BigRational::from_integer(row.mult.into());
    }
    // x_j >= 0 lets every sink take the largest multiplier
    let rhs = t.iter().cloned().fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    let get = |v: usize| acc.get(&v).cloned().unwrap_or_else(BigRational::zero);
    let mut coef = vec![BigRational::zero(); m.index.len()];
    for (k, f) in m.index.families().iter().enumerate() {
        if f.parents.len() + 1 == m.p {
            coef[k] = get(m.var(ExtVar::Family(k)).unwrap());
            continue;
        }
        let copies: Vec<BigRational> = (0..m.p)
            .filter_map(|j| m.var(ExtVar::Copy { sink: j, family: k }))
            .map(get)
            .collect();
        coef[k] = copies.into_iter().reduce(|a, b| if b < a { b } else { a }).unwrap_or_else(BigRational::zero);
    }
    let l = coef.iter().chain(std::iter::once(&rhs)).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let int = |x: &BigRational| -> Result<i64> {
        (x.numer() * (&l / x.denom())).to_i64().ok_or(PolyError::Overflow("projection"))
    };
    let coef = coef.iter().map(int).collect::<Result<Vec<i64>>>()?;
    Ok(LinearInequality::new(coef, int(&rhs)?))
}

/// Projects the listed multipliers of every class and compares with the
/// class representative.
pub fn replay_classes(m: &ExtendedModel) -> Result<Vec<(&'static str, LinearInequality, bool)>> {
    MULTIPLIERS
        .iter()
        .map(|&(name, text)| {
            let u = parse_multipliers(text).expect("multiplier table parses");
            let q = project_with_multipliers(m, &u)?;
            let rep = class_representative(name).expect("class table parses");
            let same = q == rep;
            Ok((name, q, same))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let m = build_extended_model(4).unwrap();
        assert_eq!(m.vars.len(), 92);
        assert_eq!(m.equations.len(), 25);
        assert_eq!(m.rows.len(), 36);
        assert_eq!(m.inequality_count(), 100);
    }

    #[test]
    fn zero_multipliers() {
        let m = build_extended_model(4).unwrap();
        let q = project_with_multipliers(&m, &[]).unwrap();
        assert!(q.coef.iter().all(|&c| c == 0) && q.rhs == 0);
        let neg = vec![("a-a".to_string(), BigRational::from_integer((-1).into()))];
        assert!(project_with_multipliers(&m, &neg).is_err());
    }
}
