//! Interned symbols and the global variable order.
//!
//! Every polynomial carries an explicit, closed variable universe. Universes
//! are kept sorted by a fixed precedence so that the union of two universes
//! is well defined and canonical forms are stable across the whole engine.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

/// An interned variable name.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

struct Interner {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        names: Vec::new(),
        index: HashMap::new(),
    })
});

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        {
            let int = INTERNER.read().unwrap();
            if let Some(&i) = int.index.get(name) {
                return Symbol(i);
            }
        }
        let mut int = INTERNER.write().unwrap();
        if let Some(&i) = int.index.get(name) {
            return Symbol(i);
        }
        let i = int.names.len() as u32;
        int.names.push(name.to_string());
        int.index.insert(name.to_string(), i);
        Symbol(i)
    }

    pub fn name(&self) -> String {
        INTERNER.read().unwrap().names[self.0 as usize].clone()
    }

    /// The jet variable u^(k): `u`, `u'`, `u''`, `u'''`, then `u(4)`, ...
    pub fn u_jet(k: usize) -> Symbol {
        match k {
            0 => Symbol::new("u"),
            1 => Symbol::new("u'"),
            2 => Symbol::new("u''"),
            3 => Symbol::new("u'''"),
            _ => Symbol::new(&format!("u({k})")),
        }
    }

    pub fn c(i: usize) -> Symbol {
        Symbol::new(&format!("c{i}"))
    }

    /// Derivative order when this is a jet variable.
    pub fn jet_order(&self) -> Option<usize> {
        let n = self.name();
        if n == "u" {
            return Some(0);
        }
        if let Some(primes) = n.strip_prefix('u') {
            if !primes.is_empty() && primes.chars().all(|c| c == '\'') {
                return Some(primes.len());
            }
            if let Some(inner) = primes.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                return inner.parse().ok();
            }
        }
        None
    }

    pub fn c_index(&self) -> Option<usize> {
        let n = self.name();
        n.strip_prefix('c').and_then(|s| s.parse().ok())
    }

    /// Precedence key: earlier keys come first in every variable universe.
    /// Generators, then the u-jet, then spectral variables, then parameters
    /// and named constants; anything unknown sorts last by name.
    pub fn precedence(&self) -> (u8, u64) {
        let n = self.name();
        let fixed = |class: u8, idx: u64| (class, idx);
        match n.as_str() {
            "x" => return fixed(0, 0),
            "eta" => return fixed(0, 1),
            "w" => return fixed(0, 2),
            "wp" => return fixed(0, 3),
            "wpp" => return fixed(0, 4),
            "lambda" => return fixed(2, 0),
            "mu" => return fixed(2, 1),
            "tau" => return fixed(3, 0),
            "wpt" => return fixed(4, 0),
            "wppt" => return fixed(4, 1),
            "g2" => return fixed(6, 0),
            "g3" => return fixed(6, 1),
            _ => {}
        }
        if let Some(k) = self.jet_order() {
            return (1, k as u64);
        }
        if let Some(i) = self.c_index() {
            return (5, i as u64);
        }
        // stable name-based rank for anything else
        let mut h: u64 = 0;
        for b in n.bytes().take(8) {
            h = (h << 8) | b as u64;
        }
        (7, h)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.precedence()
            .cmp(&other.precedence())
            .then_with(|| self.name().cmp(&other.name()))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A closed, ordered variable universe.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarSet(pub Vec<Symbol>);

impl VarSet {
    pub fn new(mut syms: Vec<Symbol>) -> VarSet {
        syms.sort();
        syms.dedup();
        VarSet(syms)
    }

    pub fn empty() -> VarSet {
        VarSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, s: Symbol) -> Option<usize> {
        self.0.iter().position(|&v| v == s)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.position(s).is_some()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        if self == other {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        VarSet::new(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        assert_eq!(Symbol::new("x"), Symbol::new("x"));
        assert_ne!(Symbol::new("x"), Symbol::new("eta"));
        assert_eq!(Symbol::u_jet(4).name(), "u(4)");
        assert_eq!(Symbol::u_jet(2).jet_order(), Some(2));
        assert_eq!(Symbol::c(3).c_index(), Some(3));
    }

    #[test]
    fn precedence_orders_universes() {
        let v = VarSet::new(vec![
            Symbol::new("g2"),
            Symbol::new("mu"),
            Symbol::new("x"),
            Symbol::u_jet(1),
            Symbol::new("lambda"),
            Symbol::u_jet(0),
        ]);
        let names: Vec<String> = v.iter().map(|s| s.name()).collect();
        assert_eq!(names, vec!["x", "u", "u'", "lambda", "mu", "g2"]);
    }
}
