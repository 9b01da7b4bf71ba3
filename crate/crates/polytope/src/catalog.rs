//! Facet lists for the family-variable polytopes on two to four nodes.

use crate::error::{PolyError, Result};
use crate::ineq::{family_label, LinearInequality};
use crate::space::FamilyPolytope;
use bnsl_core::model::{default_names, render_set, Family, FamilyIndex};
use bnsl_core::BnslInstance;
use std::collections::HashSet;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetClass {
    LowerBound,
    ModifiedConvexity(usize),
    KCluster { kappa: usize, cluster: Vec<usize> },
    Named(&'static str),
}

impl FacetClass {
    pub fn tag(&self) -> String {
        match self {
            FacetClass::LowerBound => "lower-bound".into(),
            FacetClass::ModifiedConvexity(_) => "modified-convexity".into(),
            FacetClass::KCluster { kappa, cluster } => format!("kcluster({kappa},{})", cluster.len()),
            FacetClass::Named(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub class: FacetClass,
    pub ineq: LinearInequality,
}

#[derive(Clone, Debug)]
pub struct FacetCatalog {
    pub p: usize,
    pub kappa: Option<usize>,
    pub names: Vec<String>,
    pub index: FamilyIndex,
    pub entries: Vec<CatalogEntry>,
}

impl FacetCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polytope(&self) -> Result<FamilyPolytope> {
        FamilyPolytope::capped(self.p, self.kappa)
    }

    pub fn contains(&self, q: &LinearInequality) -> bool {
        self.entries.iter().any(|e| &e.ineq == q)
    }

    /// Entry counts per class tag, in first-appearance order.
    pub fn class_counts(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for e in &self.entries {
            let t = e.class.tag();
            match out.iter_mut().find(|(s, _)| *s == t) {
                Some(c) => c.1 += 1,
                None => out.push((t, 1)),
            }
        }
        out
    }

    /// One line per inequality, `label: terms <= rhs`.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            writeln!(s, "{}: {}", e.label, e.ineq.render(&self.index, &self.names)).unwrap();
        }
        s
    }

    /// Header line listing the family columns, then `label<TAB>rhs c1 c2 ...`.
    pub fn export_machine(&self) -> String {
        let mut s = String::from("# columns");
        for f in self.index.families() {
            write!(s, " {}", family_label(f, &self.names)).unwrap();
        }
        s.push('\n');
        for e in &self.entries {
            write!(s, "{}\t{}", e.label, e.ineq.rhs).unwrap();
            for c in &e.ineq.coef {
                write!(s, " {c}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

pub fn modified_convexity(idx: &FamilyIndex, i: usize) -> LinearInequality {
    let mut coef = vec![0; idx.len()];
    for k in idx.child_range(i) {
        coef[k] = 1;
    }
    LinearInequality::new(coef, 1)
}

/// Nodes of `cluster` may have at most `|C| - kappa` parent sets with
/// `kappa` or more members inside the cluster.
pub fn kcluster_inequality(idx: &FamilyIndex, cluster: &[usize], kappa: usize) -> LinearInequality {
    let mut coef = vec![0; idx.len()];
    for &i in cluster {
        for k in idx.child_range(i) {
            let inside = idx.family(k).parents.iter().filter(|v| cluster.contains(v)).count();
            if inside >= kappa {
                coef[k] = 1;
            }
        }
    }
    LinearInequality::new(coef, (cluster.len() - kappa) as i64)
}

/// Lower bounds, modified convexity and every non-empty k-cluster row.
/// On two nodes modified convexity is implied by the 1-cluster row and is
/// left out.
pub fn basic_facets(idx: &FamilyIndex, names: &[String]) -> Vec<CatalogEntry> {
    let p = idx.p();
    let mut out = Vec::new();
    for (k, f) in idx.families().iter().enumerate() {
        out.push(CatalogEntry {
            label: format!("lb {}", family_label(f, names)),
            class: FacetClass::LowerBound,
            ineq: LinearInequality::lower_bound(idx.len(), k),
        });
    }
    for i in 0..p {
        if p > 2 && !idx.child_range(i).is_empty() {
            out.push(CatalogEntry {
                label: format!("mc {}", names[i]),
                class: FacetClass::ModifiedConvexity(i),
                ineq: modified_convexity(idx, i),
            });
        }
    }
    for kappa in 1..p {
        for size in kappa + 1..=p {
            for m in 0u64..1 << p {
                if m.count_ones() as usize != size {
                    continue;
                }
                let c: Vec<usize> = (0..p).filter(|&v| m >> v & 1 == 1).collect();
                let q = kcluster_inequality(idx, &c, kappa);
                if q.coef.iter().all(|&a| a == 0) {
                    continue;
                }
                out.push(CatalogEntry {
                    label: format!("k{kappa} {}", render_set(&c, names)),
                    class: FacetClass::KCluster { kappa, cluster: c },
                    ineq: q,
                });
            }
        }
    }
    out
}

/// The nine extra classes on four nodes: name, rhs, orbit size, terms.
/// A term `2a<-cd` is the family a <- {c,d} with coefficient 2.
pub const CLASS_REPS: [(&str, i64, usize, &str); 9] = [
    ("4B", 2, 6, "a<-b a<-bc a<-bd a<-cd a<-bcd b<-a b<-ac b<-ad b<-cd b<-acd c<-ad c<-bd c<-abd d<-ac d<-bc d<-abc"),
    ("4C", 2, 12, "a<-c a<-d a<-bc a<-bd a<-cd a<-bcd b<-cd b<-acd c<-ab c<-bd c<-abd d<-ab d<-bc d<-abc"),
    ("4D", 3, 12, "a<-b a<-c a<-d a<-bc a<-bd 2a<-cd 2a<-bcd b<-a b<-c b<-d b<-ac b<-ad b<-cd b<-acd c<-a c<-ab c<-ad c<-abd d<-a d<-ab d<-ac d<-abc"),
    ("4E", 2, 4, "a<-bc a<-bd a<-cd 2a<-bcd b<-ac b<-ad b<-acd c<-ab c<-ad c<-abd d<-ab d<-ac d<-abc"),
    ("4F", 3, 6, "a<-cd a<-bcd b<-cd b<-acd c<-a c<-b c<-d c<-ab c<-ad c<-bd 2c<-abd d<-a d<-b d<-c d<-ab d<-ac d<-bc 2d<-abc"),
    ("4G", 3, 24, "a<-cd a<-bcd b<-c b<-ac b<-cd b<-acd c<-b c<-d c<-ab c<-ad c<-bd 2c<-abd d<-a d<-b d<-c d<-ab 2d<-ac d<-bc 2d<-abc"),
    ("4H", 2, 12, "a<-c a<-d a<-bc a<-bd a<-cd 2a<-bcd b<-acd c<-ab c<-abd d<-ab d<-abc"),
    ("4I", 4, 6, "a<-c a<-d a<-bc a<-bd a<-cd 2a<-bcd b<-c b<-d b<-ac b<-ad b<-cd 2b<-acd c<-a c<-b c<-d 2c<-ab c<-ad c<-bd 2c<-abd d<-a d<-b d<-c 2d<-ab d<-ac d<-bc 2d<-abc"),
    ("4J", 3, 4, "a<-b a<-c a<-d 2a<-bc 2a<-bd 2a<-cd 2a<-bcd b<-a b<-ac b<-ad b<-cd b<-acd c<-a c<-ab c<-ad c<-bd c<-abd d<-a d<-ab d<-ac d<-bc d<-abc"),
];

/// Classes that survive capping parent sets at two members.
pub const CAPPED_CLASSES: [&str; 4] = ["4B", "4C", "4D", "4J"];

/// Parses a compact family such as `c<-abd` over single-letter names.
pub fn parse_compact_family(s: &str, names: &[String]) -> Option<Family> {
    let (c, ps) = s.split_once("<-")?;
    let node = |t: &str| names.iter().position(|n| n == t);
    let child = node(c)?;
    let parents = ps
        .chars()
        .map(|ch| node(&ch.to_string()))
        .collect::<Option<Vec<_>>>()?;
    Some(Family::new(child, parents))
}

/// Parses space-separated terms with optional integer prefixes.
pub fn parse_terms(text: &str, names: &[String]) -> Option<Vec<(Family, i64)>> {
    text.split_whitespace()
        .map(|t| {
            let digits = t.chars().take_while(|c| c.is_ascii_digit()).count();
            let c = if digits == 0 { 1 } else { t[..digits].parse().ok()? };
            Some((parse_compact_family(&t[digits..], names)?, c))
        })
        .collect()
}

pub fn class_representative(name: &str) -> Option<LinearInequality> {
    let (_, rhs, _, terms) = CLASS_REPS.iter().find(|r| r.0 == name)?;
    let names = default_names(4);
    let idx = BnslInstance::complete(4, None).family_index();
    let mut coef = vec![0; idx.len()];
    for (f, c) in parse_terms(terms, &names)? {
        coef[idx.position(f.child, &f.parents)?] += c;
    }
    Some(LinearInequality::new(coef, *rhs))
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct images of `q` under node relabelling, identity first.
pub fn permutation_orbit(q: &LinearInequality, idx: &FamilyIndex) -> Vec<LinearInequality> {
    let mut perm: Vec<usize> = (0..idx.p()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        if let Some(r) = q.permute(idx, &perm) {
            if seen.insert(r.clone()) {
                out.push(r);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Drops coordinates absent from `to` (both over the same nodes).
pub fn restrict_to_index(q: &LinearInequality, from: &FamilyIndex, to: &FamilyIndex) -> LinearInequality {
    let mut coef = vec![0; to.len()];
    for (k, f) in from.families().iter().enumerate() {
        if let Some(t) = to.position(f.child, &f.parents) {
            coef[t] = q.coef[k];
        }
    }
    LinearInequality::new(coef, q.rhs)
}

/// The facet list for `p` nodes with parent sets capped at `kappa`.
/// Supported: two or three nodes with any cap of at least `p - 1`, four
/// nodes uncapped and four nodes with cap two.
pub fn catalog_facets(p: usize, kappa: Option<usize>) -> Result<FacetCatalog> {
    let cap = kappa.filter(|&k| k < p.saturating_sub(1));
    let supported = matches!((p, cap), (2, _) | (3, None) | (4, None) | (4, Some(2)));
    if !supported || (p == 2 && kappa == Some(0)) {
        return Err(PolyError::Unsupported(format!(
            "no facet list for {p} nodes with cap {kappa:?}"
        )));
    }
    let inst = BnslInstance::complete(p, cap);
    let names = inst.names().to_vec();
    let idx = inst.family_index();
    let mut entries = basic_facets(&idx, &names);
    if p == 4 {
        let full = BnslInstance::complete(4, None).family_index();
        for (name, _, _, _) in CLASS_REPS {
            if cap.is_some() && !CAPPED_CLASSES.contains(&name) {
                continue;
            }
            let rep = class_representative(name).expect("class table parses");
            let mut seen = HashSet::new();
            for q in permutation_orbit(&rep, &full) {
                let q = restrict_to_index(&q, &full, &idx);
                if seen.insert(q.clone()) {
                    entries.push(CatalogEntry {
                        label: format!("{name}#{}", seen.len()),
                        class: FacetClass::Named(name),
                        ineq: q,
                    });
                }
            }
        }
    }
    Ok(FacetCatalog {
        p,
        kappa: cap,
        names,
        index: idx,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(catalog_facets(2, None).unwrap().len(), 3);
        assert_eq!(catalog_facets(3, None).unwrap().len(), 17);
        assert_eq!(catalog_facets(4, None).unwrap().len(), 135);
        assert_eq!(catalog_facets(4, Some(2)).unwrap().len(), 78);
        assert_eq!(catalog_facets(4, Some(3)).unwrap().len(), 135);
        assert!(catalog_facets(4, Some(1)).is_err());
        assert!(catalog_facets(5, None).is_err());
    }

    #[test]
    fn orbit_sizes_match_table() {
        let idx = BnslInstance::complete(4, None).family_index();
        for (name, _, size, _) in CLASS_REPS {
            let rep = class_representative(name).unwrap();
            assert_eq!(permutation_orbit(&rep, &idx).len(), size, "{name}");
        }
        let all = kcluster_inequality(&idx, &[0, 1, 2, 3], 1);
        assert_eq!(permutation_orbit(&all, &idx).len(), 1);
    }

    #[test]
    fn two_node_listing() {
        let c = catalog_facets(2, None).unwrap();
        assert_eq!(
            c.export_text(),
            "lb a<-{b}: -a<-{b} <= 0\nlb b<-{a}: -b<-{a} <= 0\nk1 {a,b}: a<-{b} + b<-{a} <= 1\n"
        );
        assert!(c.export_machine().starts_with("# columns a<-{b} b<-{a}\n"));
    }

    #[test]
    fn permutations_enumerate() {
        let mut v = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
