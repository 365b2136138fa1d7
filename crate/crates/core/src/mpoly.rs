//! Sparse multivariate polynomials over ℚ with explicit variable universes.
//!
//! Terms are kept sorted in descending graded lexicographic order over the
//! universe; the order is part of the canonical form. Universes are minimal:
//! variables that do not occur are pruned, and binary operations lift both
//! operands into the union universe first.

use crate::rat::{rat_gcd, Rat};
use crate::symbol::{Symbol, VarSet};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

pub type Mono = Vec<u32>;

/// Graded lexicographic comparison (earlier variable = more significant).
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    pub vars: VarSet,
    /// (monomial, coefficient), grlex-descending, no zero coefficients.
    pub terms: Vec<(Mono, Rat)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly {
            vars: VarSet::empty(),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: VarSet::empty(),
            terms: vec![(Vec::new(), c)],
        }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn var(s: Symbol) -> MPoly {
        MPoly {
            vars: VarSet::new(vec![s]),
            terms: vec![(vec![1], Rat::one())],
        }
    }

    pub fn var_pow(s: Symbol, e: u32) -> MPoly {
        if e == 0 {
            return MPoly::one();
        }
        MPoly {
            vars: VarSet::new(vec![s]),
            terms: vec![(vec![e], Rat::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms[0].1.clone());
        }
        None
    }

    /// Rebuild from unsorted (possibly duplicated) terms.
    fn from_map(vars: VarSet, map: HashMap<Mono, Rat>) -> MPoly {
        let mut terms: Vec<(Mono, Rat)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        MPoly { vars, terms }.prune()
    }

    /// Drop variables of degree zero everywhere; canonical universes are minimal.
    fn prune(mut self) -> MPoly {
        if self.terms.is_empty() {
            self.vars = VarSet::empty();
            return self;
        }
        let n = self.vars.len();
        let mut used = vec![false; n];
        for (m, _) in &self.terms {
            for i in 0..n {
                if m[i] > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return self;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars = VarSet(keep.iter().map(|&i| self.vars.0[i]).collect());
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| (keep.iter().map(|&i| m[i]).collect(), c))
            .collect();
        MPoly { vars, terms }
    }

    /// Re-express over `target`, which must contain every used variable.
    pub fn lift(&self, target: &VarSet) -> MPoly {
        if &self.vars == target {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|s| target.position(s).expect("lift target misses a variable"))
            .collect();
        let mut terms: Vec<(Mono, Rat)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm = vec![0u32; target.len()];
                for (i, &e) in m.iter().enumerate() {
                    nm[map[i]] = e;
                }
                (nm, c.clone())
            })
            .collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        MPoly {
            vars: target.clone(),
            terms,
        }
    }

    fn unify(&self, other: &MPoly) -> (MPoly, MPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let u = self.vars.union(&other.vars);
        (self.lift(&u), other.lift(&u))
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (a, b) = self.unify(other);
        let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match grlex(&b.terms[j].0, &a.terms[i].0) {
                Ordering::Less => {
                    terms.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.terms[i].1 + &b.terms[j].1;
                    if !c.is_zero() {
                        terms.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a.terms[i..]);
        terms.extend_from_slice(&b.terms[j..]);
        MPoly {
            vars: a.vars,
            terms,
        }
        .prune()
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (a, b) = self.unify(other);
        let n = a.vars.len();
        if b.terms.len() == 1 {
            return a.mul_term(&b.terms[0].0, &b.terms[0].1);
        }
        if a.terms.len() == 1 {
            return b.mul_term(&a.terms[0].0, &a.terms[0].1);
        }
        let mut map: HashMap<Mono, Rat> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut m = vec![0u32; n];
                for k in 0..n {
                    m[k] = ma[k] + mb[k];
                }
                let c = ca * cb;
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        MPoly::from_map(a.vars, map)
    }

    fn mul_term(&self, m: &Mono, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| {
                let mut nm = tm.clone();
                for (k, &e) in m.iter().enumerate() {
                    nm[k] += e;
                }
                (nm, tc * c)
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, t)| (m.clone(), t * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; returns None when the division is not exact.
    pub fn exact_div(&self, div: &MPoly) -> Option<MPoly> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = div.as_constant() {
            return Some(self.scale(&(Rat::one() / c)));
        }
        let (mut rem, d) = self.unify(div);
        let n = rem.vars.len();
        let (dm, dc) = (&d.terms[0].0, &d.terms[0].1);
        let mut q: Vec<(Mono, Rat)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = &rem.terms[0];
            let mut tm = vec![0u32; n];
            for k in 0..n {
                if rm[k] < dm[k] {
                    return None;
                }
                tm[k] = rm[k] - dm[k];
            }
            let tc = rc / dc;
            let t = MPoly {
                vars: rem.vars.clone(),
                terms: vec![(tm.clone(), tc.clone())],
            };
            rem = rem.sub(&t.mul(&d)).lift(&d.vars);
            q.push((tm, tc));
        }
        q.sort_by(|a, b| grlex(&b.0, &a.0));
        Some(
            MPoly {
                vars: d.vars.clone(),
                terms: q,
            }
            .prune(),
        )
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .first()
            .map(|(m, _)| m.iter().map(|&e| e as u64).sum())
            .unwrap_or(0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        match self.vars.position(s) {
            None => 0,
            Some(i) => self.terms.iter().map(|(m, _)| m[i]).max().unwrap_or(0),
        }
    }

    /// Leading coefficient under grlex (the first stored term).
    pub fn leading_coeff(&self) -> Rat {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// gcd of the rational coefficients, nonnegative.
    pub fn content(&self) -> Rat {
        let mut g = Rat::zero();
        for (_, c) in &self.terms {
            g = rat_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Coefficients of powers of `s`: result[k] is the coefficient of s^k,
    /// an MPoly free of `s`.
    pub fn coeffs_in(&self, s: Symbol) -> Vec<MPoly> {
        let d = self.degree_in(s) as usize;
        let mut out = vec![MPoly::zero(); d + 1];
        let pos = match self.vars.position(s) {
            None => {
                out[0] = self.clone();
                return out;
            }
            Some(p) => p,
        };
        let mut buckets: Vec<Vec<(Mono, Rat)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m[pos] as usize;
            let mut nm = m.clone();
            nm[pos] = 0;
            buckets[k].push((nm, c.clone()));
        }
        for (k, mut terms) in buckets.into_iter().enumerate() {
            terms.sort_by(|a, b| grlex(&b.0, &a.0));
            out[k] = MPoly {
                vars: self.vars.clone(),
                terms,
            }
            .prune();
        }
        out
    }

    /// Substitute `s` by a polynomial.
    pub fn subst(&self, s: Symbol, value: &MPoly) -> MPoly {
        if !self.vars.contains(s) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(s);
        let mut acc = MPoly::zero();
        // Horner from the top
        for c in coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Derivation defined by a map on variables: d(s) = der(s).
    pub fn derive(&self, der: &dyn Fn(Symbol) -> MPoly) -> MPoly {
        let mut acc = MPoly::zero();
        for (i, s) in self.vars.iter().enumerate() {
            let ds = der(s);
            if ds.is_zero() {
                continue;
            }
            // ∂/∂s of the polynomial, times ds
            let mut terms: Vec<(Mono, Rat)> = Vec::new();
            for (m, c) in &self.terms {
                if m[i] == 0 {
                    continue;
                }
                let mut nm = m.clone();
                nm[i] -= 1;
                terms.push((nm, c * Rat::from_integer(m[i].into())));
            }
            if terms.is_empty() {
                continue;
            }
            terms.sort_by(|a, b| grlex(&b.0, &a.0));
            let partial = MPoly {
                vars: self.vars.clone(),
                terms,
            }
            .prune();
            acc = acc.add(&partial.mul(&ds));
        }
        acc
    }

    /// List of variables that actually occur.
    pub fn used_vars(&self) -> Vec<Symbol> {
        self.vars.0.clone()
    }
}

fn fmt_mono(vars: &VarSet, m: &Mono) -> String {
    let mut parts = Vec::new();
    for (i, s) in vars.iter().enumerate() {
        match m[i] {
            0 => {}
            1 => parts.push(s.name()),
            e => parts.push(format!("{}^{}", s.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mono = fmt_mono(&self.vars, m);
            let neg = c.is_negative();
            let ca = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mono.is_empty() {
                out.push_str(&ca.to_string());
            } else if ca.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", ca, mono));
            }
        }
        write!(f, "{}", out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn x() -> MPoly {
        MPoly::var(Symbol::new("x"))
    }
    fn lam() -> MPoly {
        MPoly::var(Symbol::new("lambda"))
    }

    #[test]
    fn arithmetic_and_display() {
        let p = x().mul(&x()).sub(&MPoly::one()); // x^2 - 1
        let q = x().sub(&MPoly::one()); // x - 1
        let r = p.exact_div(&q).unwrap();
        assert_eq!(r, x().add(&MPoly::one()));
        assert_eq!(format!("{}", r), "x + 1");
        assert!(p.exact_div(&x()).is_none());
    }

    #[test]
    fn universes_merge_and_prune() {
        let p = x().add(&lam());
        let q = p.sub(&lam());
        assert_eq!(q, x());
        assert_eq!(q.vars.len(), 1);
    }

    #[test]
    fn coeffs_and_subst() {
        // (lambda + x)^2 = lambda^2 + 2x*lambda + x^2
        let p = lam().add(&x()).pow(2);
        let cs = p.coeffs_in(Symbol::new("lambda"));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], x().scale(&rat_i(2)));
        let at = p.subst(Symbol::new("lambda"), &MPoly::constant(rat(1, 2)));
        assert_eq!(
            at,
            x().add(&MPoly::constant(rat(1, 2))).pow(2)
        );
    }

    #[test]
    fn derive_product_rule() {
        // d(x^3) with dx = 1 is 3x^2
        let d = |s: Symbol| {
            if s == Symbol::new("x") {
                MPoly::one()
            } else {
                MPoly::zero()
            }
        };
        assert_eq!(x().pow(3).derive(&d), x().pow(2).scale(&rat_i(3)));
    }
}
