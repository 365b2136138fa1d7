//! Concrete differential fields: rational, exponential and Weierstrass
//! towers over a field of constant symbols.

use crate::ctx::{DiffCtx, Scalar};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::symbol::Symbol;
use num_traits::One;
use std::fmt;
use std::sync::Arc;

/// Element of a concrete differential field, in canonical form.
pub type FieldElem = Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Generator {
    /// K = C(x), d/dx
    Rational,
    /// K = C(t) with d(t) = rate·t; eta = e^x has rate 1, w = e^(2x) rate 2
    Exponential { sym: Symbol, rate: Rat },
    /// K = C(wp, wpp) with (wpp)² = 4wp³ − g2·wp − g3
    Weierstrass,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldTower {
    pub generator: Generator,
    /// declared constant symbols (zero derivative)
    pub constants: Vec<Symbol>,
    ctx: Arc<DiffCtx>,
}

impl FieldTower {
    pub fn rational(constants: &[Symbol]) -> FieldTower {
        FieldTower {
            generator: Generator::Rational,
            constants: constants.to_vec(),
            ctx: DiffCtx::rational(),
        }
    }

    /// The eta = e^x tower.
    pub fn exponential(constants: &[Symbol]) -> FieldTower {
        let sym = Symbol::new("eta");
        FieldTower {
            generator: Generator::Exponential {
                sym,
                rate: Rat::one(),
            },
            constants: constants.to_vec(),
            ctx: DiffCtx::exponential(sym, Rat::one()),
        }
    }

    /// The w = e^(2x) tower used for displaying Rosen-Morse solutions.
    pub fn exponential_w(constants: &[Symbol]) -> FieldTower {
        let sym = Symbol::new("w");
        let rate = Rat::from_integer(2.into());
        FieldTower {
            generator: Generator::Exponential {
                sym,
                rate: rate.clone(),
            },
            constants: constants.to_vec(),
            ctx: DiffCtx::exponential(sym, rate),
        }
    }

    /// Weierstrass tower with symbolic invariants; g2, g3 are always among
    /// the constants. When `param_pair` is set the constants include a
    /// second, non-differential Weierstrass pair (wpt, wppt) carrying its
    /// own copy of the cubic relation.
    pub fn weierstrass(constants: &[Symbol], param_pair: bool) -> FieldTower {
        let mut cs = constants.to_vec();
        for required in [Symbol::new("g2"), Symbol::new("g3")] {
            if !cs.contains(&required) {
                cs.push(required);
            }
        }
        if param_pair {
            for s in [Symbol::new("wpt"), Symbol::new("wppt")] {
                if !cs.contains(&s) {
                    cs.push(s);
                }
            }
        }
        FieldTower {
            generator: Generator::Weierstrass,
            constants: cs,
            ctx: DiffCtx::weierstrass(param_pair),
        }
    }

    /// Weierstrass tower at numeric invariants g2, g3.
    pub fn weierstrass_numeric(g2: Rat, g3: Rat, constants: &[Symbol], param_pair: bool) -> FieldTower {
        let mut cs = constants.to_vec();
        if param_pair {
            for s in [Symbol::new("wpt"), Symbol::new("wppt")] {
                if !cs.contains(&s) {
                    cs.push(s);
                }
            }
        }
        FieldTower {
            generator: Generator::Weierstrass,
            constants: cs,
            ctx: DiffCtx::weierstrass_with(MPoly::constant(g2), MPoly::constant(g3), param_pair),
        }
    }

    /// Same tower with extra constant symbols declared.
    pub fn with_constants(&self, extra: &[Symbol]) -> FieldTower {
        let mut t = self.clone();
        for s in extra {
            if !t.constants.contains(s) {
                t.constants.push(*s);
            }
        }
        t
    }

    pub fn ctx(&self) -> &Arc<DiffCtx> {
        &self.ctx
    }

    pub fn generator_syms(&self) -> Vec<Symbol> {
        self.ctx.generator_syms()
    }

    /// All symbols an expression over this tower may mention.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v = self.generator_syms();
        v.extend(self.constants.iter().copied());
        v
    }

    pub fn zero(&self) -> FieldElem {
        Scalar::zero(&self.ctx)
    }

    pub fn one(&self) -> FieldElem {
        Scalar::one(&self.ctx)
    }

    pub fn constant(&self, c: Rat) -> FieldElem {
        Scalar::constant(&self.ctx, c)
    }

    pub fn var(&self, s: Symbol) -> Result<FieldElem> {
        if !self.symbols().contains(&s) {
            return Err(Error::UnknownSymbol(s.name()));
        }
        Ok(Scalar::var(&self.ctx, s))
    }

    pub fn elem(&self, val: RatFun) -> FieldElem {
        Scalar::new(self.ctx.clone(), val)
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            Generator::Rational => write!(f, "rational(x)"),
            Generator::Exponential { sym, rate } => write!(f, "exponential({}, rate {})", sym, rate),
            Generator::Weierstrass => write!(f, "weierstrass(wp, wpp)"),
        }
    }
}

/// Derivation on a tower element (alias for the scalar method; the tower's
/// rules are baked into the element's context).
pub fn fe_derive(e: &FieldElem) -> FieldElem {
    e.derive()
}

/// Field inverse; Weierstrass denominators are cleared by conjugation.
pub fn fe_invert(e: &FieldElem) -> Result<FieldElem> {
    e.inv()
}

/// Write `e` over the hinted denominator and return its coordinates: pairs
/// of (generator monomial, coefficient over the constants field). Fails with
/// `BasisMismatch` when e·hint is not polynomial in the generators.
pub fn fe_coordinates(
    e: &FieldElem,
    denominator_hint: &FieldElem,
) -> Result<Vec<(MPoly, RatFun)>> {
    let gens = e.ctx.generator_syms();
    let scaled = e.mul(denominator_hint);
    if gens.iter().any(|g| scaled.val.den.vars.contains(*g)) {
        return Err(Error::BasisMismatch);
    }
    let den = RatFun::from_mpoly(scaled.val.den.clone());
    Ok(split_by_generators(&scaled.val.num, &gens)
        .into_iter()
        .map(|(m, c)| (m, RatFun::from_mpoly(c).div(&den).expect("den nonzero")))
        .collect())
}

/// Split a polynomial into (generator monomial, constant-part coefficient)
/// pairs, grlex-descending in the generator part.
pub fn split_by_generators(p: &MPoly, gens: &[Symbol]) -> Vec<(MPoly, MPoly)> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<Vec<(Symbol, u32)>, MPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        let mut gen_part = Vec::new();
        let mut const_mono = MPoly::constant(c.clone());
        for (i, s) in p.vars.iter().enumerate() {
            if m[i] == 0 {
                continue;
            }
            if gens.contains(&s) {
                gen_part.push((s, m[i]));
            } else {
                const_mono = const_mono.mul(&MPoly::var_pow(s, m[i]));
            }
        }
        let entry = buckets.entry(gen_part).or_insert_with(MPoly::zero);
        *entry = entry.add(&const_mono);
    }
    buckets
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(gp, c)| {
            let mut mono = MPoly::one();
            for (s, e) in gp {
                mono = mono.mul(&MPoly::var_pow(s, e));
            }
            (mono, c)
        })
        .collect()
}

/// Exact Gaussian elimination over the constants field. Returns the unique
/// solution of M·c = rhs, or None when inconsistent, or an error when the
/// system is solvable but underdetermined.
pub fn solve_linear_unique(
    rows: &[Vec<RatFun>],
    rhs: &[RatFun],
    unknowns: usize,
) -> Result<Option<Vec<RatFun>>> {
    let mut aug: Vec<Vec<RatFun>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let m = aug.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let pivot_row = (row..m).find(|&r| !aug[r][col].is_zero());
        let pr = match pivot_row {
            None => continue,
            Some(pr) => pr,
        };
        aug.swap(row, pr);
        let inv = aug[row][col].inv()?;
        for c in col..=unknowns {
            aug[row][c] = aug[row][c].mul(&inv);
        }
        for r in 0..m {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=unknowns {
                    let t = aug[row][c].mul(&f);
                    aug[r][c] = aug[r][c].sub(&t);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == m {
            break;
        }
    }
    // inconsistent?
    for r in row..m {
        if !aug[r][unknowns].is_zero() {
            return Ok(None);
        }
    }
    if pivots.len() < unknowns {
        return Err(Error::DegenerateLevelSystem(unknowns));
    }
    let mut sol = vec![RatFun::zero(); unknowns];
    for (r, c) in pivots {
        sol[c] = aug[r][unknowns].clone();
    }
    Ok(Some(sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn rational_tower_derivative() {
        let t = FieldTower::rational(&[]);
        let x = t.var(Symbol::new("x")).unwrap();
        let inv_x = x.inv().unwrap();
        // d(1/x) = -1/x^2
        let d = fe_derive(&inv_x);
        let expect = x.pow(2).unwrap().inv().unwrap().neg();
        assert_eq!(d, expect);
    }

    #[test]
    fn exponential_tower_derivative() {
        let t = FieldTower::exponential(&[]);
        let eta = t.var(Symbol::new("eta")).unwrap();
        // d(eta^2) = 2 eta^2
        assert_eq!(fe_derive(&eta.pow(2).unwrap()), eta.pow(2).unwrap().scale(&rat_i(2)));
        // ((eta+1)/eta)^(-1) = eta/(eta+1)
        let e = eta.add(&t.one()).div(&eta).unwrap();
        let inv = fe_invert(&e).unwrap();
        assert_eq!(inv, eta.div(&eta.add(&t.one())).unwrap());
    }

    #[test]
    fn weierstrass_derivative_and_inverse() {
        let t = FieldTower::weierstrass(&[], false);
        let wpp = t.var(Symbol::new("wpp")).unwrap();
        let wp = t.var(Symbol::new("wp")).unwrap();
        let g2 = t.var(Symbol::new("g2")).unwrap();
        let g3 = t.var(Symbol::new("g3")).unwrap();
        let d = fe_derive(&wpp);
        assert_eq!(d, wp.pow(2).unwrap().scale(&rat_i(6)).sub(&g2.scale(&rat(1, 2))));
        // wpp^(-1) = wpp/(4wp^3 - g2 wp - g3)
        let inv = fe_invert(&wpp).unwrap();
        let cubic = wp.pow(3).unwrap().scale(&rat_i(4)).sub(&g2.mul(&wp)).sub(&g3);
        assert_eq!(inv, wpp.div(&cubic).unwrap());
        assert!(wpp.mul(&inv).is_one());
    }

    #[test]
    fn coordinates_over_hint() {
        let c1 = Symbol::c(1);
        let t = FieldTower::rational(&[c1]);
        let x = t.var(Symbol::new("x")).unwrap();
        // e = (3 - c1)/x^3 over hint x^3 -> single coordinate 3 - c1
        let e = t
            .constant(rat_i(3))
            .sub(&t.var(c1).unwrap())
            .div(&x.pow(3).unwrap())
            .unwrap();
        let coords = fe_coordinates(&e, &x.pow(3).unwrap()).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(coords[0].0.is_one());
        let expect = RatFun::from_mpoly(
            MPoly::constant(rat_i(3)).sub(&MPoly::var(c1)),
        );
        assert_eq!(coords[0].1, expect);
        // zero has empty coordinates
        let z = fe_coordinates(&t.zero(), &x.pow(3).unwrap()).unwrap();
        assert!(z.is_empty());
        // mismatch: 1/x^4 cannot be written over x^3
        let bad = x.pow(4).unwrap().inv().unwrap();
        assert_eq!(
            fe_coordinates(&bad, &x.pow(3).unwrap()).unwrap_err(),
            Error::BasisMismatch
        );
    }
}
