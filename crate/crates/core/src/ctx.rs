//! Differential contexts and canonical scalars.
//!
//! A `DiffCtx` fixes a derivation on symbols plus a list of quadratic
//! relations σ² = rhs(…). One scalar kernel then serves every coefficient
//! domain in the engine: formal differential polynomials (jet variables
//! advance under the derivation), concrete tower elements (Weierstrass
//! relations), and elements of the curve field (μ² reduced by the curve).
//!
//! Canonical form: numerator reduced to σ-degree ≤ 1 for every relation
//! symbol, denominator free of relation symbols, fraction gcd-normalized.
//! Equality of field elements is structural equality of canonical forms.

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::symbol::Symbol;
use std::fmt;
use std::sync::Arc;

/// How symbols differentiate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Derivation {
    /// jet variables u^(k) map to u^(k+1); everything else is constant
    Formal,
    /// d(x) = 1
    Rational,
    /// d(t) = rate·t for the generator symbol t
    Exponential { sym: Symbol, rate: Rat },
    /// d(wp) = wpp, d(wpp) = 6 wp^2 - g2/2; g2 may be symbolic or numeric
    Weierstrass { g2: MPoly },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffCtx {
    pub derivation: Derivation,
    /// quadratic relations σ² = rhs, rhs free of every relation symbol
    pub relations: Vec<(Symbol, MPoly)>,
}

impl DiffCtx {
    pub fn formal() -> Arc<DiffCtx> {
        Arc::new(DiffCtx {
            derivation: Derivation::Formal,
            relations: Vec::new(),
        })
    }

    pub fn rational() -> Arc<DiffCtx> {
        Arc::new(DiffCtx {
            derivation: Derivation::Rational,
            relations: Vec::new(),
        })
    }

    pub fn exponential(sym: Symbol, rate: Rat) -> Arc<DiffCtx> {
        Arc::new(DiffCtx {
            derivation: Derivation::Exponential { sym, rate },
            relations: Vec::new(),
        })
    }

    /// The cubic relation (wpp)² = 4 wp³ − g2·wp − g3 for a named pair.
    pub fn weierstrass_relation(wp: Symbol, wpp: Symbol, g2: &MPoly, g3: &MPoly) -> (Symbol, MPoly) {
        let p = MPoly::var(wp);
        let rhs = p
            .pow(3)
            .scale(&Rat::from_integer(4.into()))
            .sub(&g2.mul(&p))
            .sub(g3);
        (wpp, rhs)
    }

    pub fn weierstrass(with_param_pair: bool) -> Arc<DiffCtx> {
        Self::weierstrass_with(
            MPoly::var(Symbol::new("g2")),
            MPoly::var(Symbol::new("g3")),
            with_param_pair,
        )
    }

    /// Weierstrass context with explicit invariants (symbolic or numeric).
    pub fn weierstrass_with(g2: MPoly, g3: MPoly, with_param_pair: bool) -> Arc<DiffCtx> {
        let mut relations = vec![DiffCtx::weierstrass_relation(
            Symbol::new("wp"),
            Symbol::new("wpp"),
            &g2,
            &g3,
        )];
        if with_param_pair {
            relations.push(DiffCtx::weierstrass_relation(
                Symbol::new("wpt"),
                Symbol::new("wppt"),
                &g2,
                &g3,
            ));
        }
        Arc::new(DiffCtx {
            derivation: Derivation::Weierstrass { g2 },
            relations,
        })
    }

    /// Extend a context with one more quadratic relation (curve reduction).
    pub fn with_relation(self: &Arc<DiffCtx>, sym: Symbol, rhs: MPoly) -> Arc<DiffCtx> {
        let mut relations = self.relations.clone();
        relations.retain(|(s, _)| *s != sym);
        relations.push((sym, rhs));
        relations.sort_by_key(|(s, _)| *s);
        Arc::new(DiffCtx {
            derivation: self.derivation.clone(),
            relations,
        })
    }

    pub fn derive_sym(&self, s: Symbol) -> MPoly {
        match &self.derivation {
            Derivation::Formal => match s.jet_order() {
                Some(k) => MPoly::var(Symbol::u_jet(k + 1)),
                None => MPoly::zero(),
            },
            Derivation::Rational => {
                if s == Symbol::new("x") {
                    MPoly::one()
                } else {
                    MPoly::zero()
                }
            }
            Derivation::Exponential { sym, rate } => {
                if s == *sym {
                    MPoly::var(s).scale(rate)
                } else {
                    MPoly::zero()
                }
            }
            Derivation::Weierstrass { g2 } => {
                if s == Symbol::new("wp") {
                    MPoly::var(Symbol::new("wpp"))
                } else if s == Symbol::new("wpp") {
                    // differentiate the cubic relation and halve
                    let wp = MPoly::var(Symbol::new("wp"));
                    wp.pow(2)
                        .scale(&Rat::from_integer(6.into()))
                        .sub(&g2.scale(&crate::rat::rat(1, 2)))
                } else {
                    MPoly::zero()
                }
            }
        }
    }

    /// Generator symbols: the transcendence basis carrying the derivation.
    pub fn generator_syms(&self) -> Vec<Symbol> {
        match &self.derivation {
            Derivation::Formal => Vec::new(),
            Derivation::Rational => vec![Symbol::new("x")],
            Derivation::Exponential { sym, .. } => vec![*sym],
            Derivation::Weierstrass { .. } => vec![Symbol::new("wp"), Symbol::new("wpp")],
        }
    }

    /// Reduce every relation power σ^e, e ≥ 2, via σ² = rhs.
    pub fn reduce_mpoly(&self, p: &MPoly) -> MPoly {
        let mut p = p.clone();
        for (sym, rhs) in &self.relations {
            if p.degree_in(*sym) < 2 {
                continue;
            }
            let coeffs = p.coeffs_in(*sym);
            let sv = MPoly::var(*sym);
            let mut acc = MPoly::zero();
            let mut rhs_pow = MPoly::one();
            let mut k = 0usize;
            // coefficient of σ^e contributes rhs^(e/2) σ^(e mod 2)
            for (e, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                while k < e / 2 {
                    rhs_pow = rhs_pow.mul(rhs);
                    k += 1;
                }
                let mut t = c.mul(&rhs_pow);
                if e % 2 == 1 {
                    t = t.mul(&sv);
                }
                acc = acc.add(&t);
            }
            p = acc;
        }
        p
    }

    fn has_relation_syms(&self, p: &MPoly) -> bool {
        self.relations.iter().any(|(s, _)| p.vars.contains(*s))
    }
}

/// An element of the coefficient domain fixed by a context, in canonical form.
#[derive(Clone, PartialEq)]
pub struct Scalar {
    pub ctx: Arc<DiffCtx>,
    pub val: RatFun,
}

impl Scalar {
    pub fn new(ctx: Arc<DiffCtx>, val: RatFun) -> Scalar {
        if ctx.relations.is_empty()
            || (!ctx.has_relation_syms(&val.num) && !ctx.has_relation_syms(&val.den))
        {
            return Scalar { ctx, val };
        }
        let num = ctx.reduce_mpoly(&val.num);
        let mut den = ctx.reduce_mpoly(&val.den);
        let mut num = num;
        // rationalize: clear every relation symbol out of the denominator
        loop {
            let sym = match ctx
                .relations
                .iter()
                .map(|(s, _)| *s)
                .find(|s| den.vars.contains(*s))
            {
                None => break,
                Some(s) => s,
            };
            let rhs = ctx
                .relations
                .iter()
                .find(|(s, _)| *s == sym)
                .map(|(_, r)| r.clone())
                .unwrap();
            let cs = den.coeffs_in(sym);
            let a = cs[0].clone();
            let b = cs.get(1).cloned().unwrap_or_else(MPoly::zero);
            // conjugate a − bσ; new den = a² − b²·rhs
            let conj = a.sub(&b.mul(&MPoly::var(sym)));
            num = ctx.reduce_mpoly(&num.mul(&conj));
            den = ctx.reduce_mpoly(&a.mul(&a).sub(&b.mul(&b).mul(&rhs)));
        }
        let val = RatFun::new(num, den).expect("rationalized denominator is nonzero");
        Scalar { ctx, val }
    }

    pub fn zero(ctx: &Arc<DiffCtx>) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            val: RatFun::zero(),
        }
    }

    pub fn one(ctx: &Arc<DiffCtx>) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            val: RatFun::one(),
        }
    }

    pub fn constant(ctx: &Arc<DiffCtx>, c: Rat) -> Scalar {
        Scalar {
            ctx: ctx.clone(),
            val: RatFun::constant(c),
        }
    }

    pub fn var(ctx: &Arc<DiffCtx>, s: Symbol) -> Scalar {
        Scalar::new(ctx.clone(), RatFun::var(s))
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.val.is_one()
    }

    fn check_ctx(&self, o: &Scalar) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!(
                "{:?} vs {:?}",
                self.ctx.derivation, o.ctx.derivation
            )))
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.check_ctx(o).expect("scalar context mismatch");
        Scalar::new(self.ctx.clone(), self.val.add(&o.val))
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.check_ctx(o).expect("scalar context mismatch");
        Scalar::new(self.ctx.clone(), self.val.sub(&o.val))
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            val: self.val.neg(),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.check_ctx(o).expect("scalar context mismatch");
        Scalar::new(self.ctx.clone(), self.val.mul(&o.val))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        self.check_ctx(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(self.ctx.clone(), self.val.div(&o.val)?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::new(self.ctx.clone(), self.val.inv()?))
    }

    pub fn scale(&self, c: &Rat) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            val: self.val.scale(c),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        Ok(Scalar::new(self.ctx.clone(), self.val.pow(e)?))
    }

    /// The context derivation extended to the fraction field.
    pub fn derive(&self) -> Scalar {
        let ctx = self.ctx.clone();
        let der = |s: Symbol| ctx.derive_sym(s);
        Scalar::new(self.ctx.clone(), self.val.derive(&der))
    }

    /// Substitute a constant symbol by a value, staying in the context.
    pub fn subst(&self, s: Symbol, v: &RatFun) -> Result<Scalar> {
        Ok(Scalar::new(self.ctx.clone(), self.val.subst(s, v)?))
    }

    /// Reinterpret in another context and re-canonicalize.
    pub fn lift_to(&self, ctx: &Arc<DiffCtx>) -> Scalar {
        Scalar::new(ctx.clone(), self.val.clone())
    }

    pub fn is_generator_free(&self) -> bool {
        let gens = self.ctx.generator_syms();
        gens.iter().all(|g| !self.val.contains_var(*g))
    }
}

/// An unreduced fraction for fraction-free verification work: no gcd ever
/// runs; zero tests reduce the single numerator by the context relations.
/// Denominators must stay free of relation symbols, which holds for
/// products and derivatives of canonical scalars.
#[derive(Clone)]
pub struct RawFrac {
    pub num: MPoly,
    pub den: MPoly,
}

impl RawFrac {
    pub fn of(s: &Scalar) -> RawFrac {
        RawFrac {
            num: s.val.num.clone(),
            den: s.val.den.clone(),
        }
    }

    pub fn mul(&self, o: &RawFrac) -> RawFrac {
        RawFrac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    pub fn add(&self, o: &RawFrac) -> RawFrac {
        RawFrac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn sub(&self, o: &RawFrac) -> RawFrac {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RawFrac {
        RawFrac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Quotient rule without normalization.
    pub fn derive(&self, ctx: &DiffCtx) -> RawFrac {
        let der = |s: Symbol| ctx.derive_sym(s);
        let dn = self.num.derive(&der);
        if self.den.is_one() {
            return RawFrac {
                num: dn,
                den: MPoly::one(),
            };
        }
        let dd = self.den.derive(&der);
        RawFrac {
            num: dn.mul(&self.den).sub(&self.num.mul(&dd)),
            den: self.den.mul(&self.den),
        }
    }

    /// Zero test modulo the context relations.
    pub fn is_zero_in(&self, ctx: &DiffCtx) -> bool {
        ctx.reduce_mpoly(&self.num).is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.val)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn weierstrass_reduction_and_inversion() {
        let ctx = DiffCtx::weierstrass(false);
        let wpp = Scalar::var(&ctx, Symbol::new("wpp"));
        let wp = Scalar::var(&ctx, Symbol::new("wp"));
        let g2 = Scalar::var(&ctx, Symbol::new("g2"));
        let g3 = Scalar::var(&ctx, Symbol::new("g3"));
        let cubic = wp
            .pow(3)
            .unwrap()
            .scale(&rat_i(4))
            .sub(&g2.mul(&wp))
            .sub(&g3);
        // (wpp)^2 reduces to the cubic
        assert_eq!(wpp.mul(&wpp), cubic);
        // inversion by conjugation: wpp * wpp^(-1) = 1
        let inv = wpp.inv().unwrap();
        assert!(wpp.mul(&inv).is_one());
        // derivative of wpp
        let dw = wpp.derive();
        let expect = wp.pow(2).unwrap().scale(&rat_i(6)).sub(&g2.scale(&rat(1, 2)));
        assert_eq!(dw, expect);
    }

    #[test]
    fn confluent_reduction() {
        // reducing before or after arithmetic agrees
        let ctx = DiffCtx::weierstrass(false);
        let wpp = Scalar::var(&ctx, Symbol::new("wpp"));
        let a = wpp.mul(&wpp).mul(&wpp); // σ³ → σ·rhs
        let b = wpp.pow(3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn formal_jets_advance() {
        let ctx = DiffCtx::formal();
        let u = Scalar::var(&ctx, Symbol::u_jet(0));
        let du = u.derive();
        assert_eq!(du, Scalar::var(&ctx, Symbol::u_jet(1)));
        // product rule: d(u²) = 2 u u'
        let d2 = u.mul(&u).derive();
        assert_eq!(d2, u.mul(&du).scale(&rat_i(2)));
    }
}
