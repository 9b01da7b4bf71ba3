//! Integer inequalities `coef . x <= rhs` over a family index.

use bnsl_core::model::{Family, FamilyIndex};
use num_integer::Integer;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearInequality {
    pub coef: Vec<i64>,
    pub rhs: i64,
}

impl LinearInequality {
    /// Builds and canonicalizes.
    pub fn new(coef: Vec<i64>, rhs: i64) -> Self {
        let mut q = LinearInequality { coef, rhs };
        q.canonicalize();
        q
    }

    /// `-x_k <= 0`.
    pub fn lower_bound(n: usize, k: usize) -> Self {
        let mut coef = vec![0; n];
        coef[k] = -1;
        LinearInequality { coef, rhs: 0 }
    }

    /// Divides through by the gcd of all entries. Only positive factors are
    /// used, so the direction of the inequality never changes.
    pub fn canonicalize(&mut self) {
        let g = self
            .coef
            .iter()
            .fold(self.rhs.abs(), |g, &c| g.gcd(&c.abs()));
        if g > 1 {
            for c in &mut self.coef {
                *c /= g;
            }
            self.rhs /= g;
        }
    }

    pub fn len(&self) -> usize {
        self.coef.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coef.is_empty()
    }

    pub fn lhs(&self, x: &[i64]) -> i64 {
        self.coef.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn lhs_01(&self, x: &[u8]) -> i64 {
        self.coef
            .iter()
            .zip(x)
            .filter(|(_, &b)| b != 0)
            .map(|(a, _)| *a)
            .sum()
    }

    pub fn is_lower_bound(&self) -> bool {
        self.rhs == 0
            && self.coef.iter().filter(|&&c| c != 0).count() == 1
            && self.coef.iter().any(|&c| c < 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coef.len()).filter(|&k| self.coef[k] != 0).collect()
    }

    /// Relabels nodes by `perm` (old node `v` becomes `perm[v]`).
    pub fn permute(&self, idx: &FamilyIndex, perm: &[usize]) -> Option<Self> {
        let mut coef = vec![0; self.coef.len()];
        for (k, &c) in self.coef.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let f = idx.family(k);
            let parents = f.parents.iter().map(|&v| perm[v]).collect();
            let g = Family::new(perm[f.child], parents);
            coef[idx.position(g.child, &g.parents)?] = c;
        }
        Some(LinearInequality::new(coef, self.rhs))
    }

    /// `a<-{b} + 2*a<-{b,c} <= 2`
    pub fn render(&self, idx: &FamilyIndex, names: &[String]) -> String {
        let mut s = String::new();
        for k in self.support() {
            let c = self.coef[k];
            let term = family_label(idx.family(k), names);
            if s.is_empty() {
                match c {
                    1 => s.push_str(&term),
                    -1 => write!(s, "-{term}").unwrap(),
                    _ => write!(s, "{c}*{term}").unwrap(),
                }
            } else {
                let sign = if c < 0 { '-' } else { '+' };
                match c.abs() {
                    1 => write!(s, " {sign} {term}").unwrap(),
                    a => write!(s, " {sign} {a}*{term}").unwrap(),
                }
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        write!(s, " <= {}", self.rhs).unwrap();
        s
    }
}

/// Compact family label, e.g. `a<-{b,c}`.
pub fn family_label(f: &Family, names: &[String]) -> String {
    let ps: Vec<&str> = f.parents.iter().map(|&j| names[j].as_str()).collect();
    format!("{}<-{{{}}}", names[f.child], ps.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bnsl_core::BnslInstance;

    #[test]
    fn canonical_keeps_direction() {
        let q = LinearInequality::new(vec![-4, 0, 2], 0);
        assert_eq!(q.coef, vec![-2, 0, 1]);
        let lb = LinearInequality::new(vec![0, -3], 0);
        assert!(lb.is_lower_bound());
        assert_eq!(lb.coef, vec![0, -1]);
    }

    #[test]
    fn render_and_permute() {
        let inst = BnslInstance::complete(2, None);
        let idx = inst.family_index();
        let q = LinearInequality::new(vec![1, 0], 1);
        assert_eq!(q.render(&idx, inst.names()), "a<-{b} <= 1");
        let r = q.permute(&idx, &[1, 0]).unwrap();
        assert_eq!(r.coef, vec![0, 1]);
        assert_eq!(LinearInequality::new(vec![2, -1], 3).render(&idx, inst.names()), "2*a<-{b} - b<-{a} <= 3");
    }
}
