//! Normalized rational functions: the universal coefficient substrate.
//!
//! Canonical form: gcd(num, den) = 1 and den is integer-primitive with a
//! positive leading coefficient under grlex. Equality of rational functions
//! is structural equality of canonical forms.

use crate::error::{Error, Result};
use crate::gcd::{mpoly_gcd, mpoly_lcm};
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::symbol::{Symbol, VarSet};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = mpoly_gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides num");
        let mut den = den.exact_div(&g).expect("gcd divides den");
        // scale so den is integer-primitive with positive leading coefficient
        let mut c = den.content();
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let inv = Rat::one() / c;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_mpoly(p: MPoly) -> RatFun {
        RatFun {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn zero() -> RatFun {
        RatFun {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::from_mpoly(MPoly::one())
    }

    pub fn constant(c: Rat) -> RatFun {
        RatFun::from_mpoly(MPoly::constant(c))
    }

    pub fn var(s: Symbol) -> RatFun {
        RatFun::from_mpoly(MPoly::var(s))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    /// Build from an already-coprime pair; only the denominator
    /// normalization (integer-primitive, positive leading coefficient) runs.
    fn from_coprime(mut num: MPoly, mut den: MPoly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        let mut c = den.content();
        if den.leading_coeff().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            let inv = Rat::one() / c;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    /// Henrici addition: gcd work is confined to the denominators' common
    /// part instead of the full cross products.
    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun::from_mpoly(self.num.add(&o.num));
        }
        let g0 = mpoly_gcd(&self.den, &o.den);
        if g0.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let den = self.den.mul(&o.den);
            return RatFun::from_coprime(num, den);
        }
        let ad = self.den.exact_div(&g0).expect("gcd divides");
        let bd = o.den.exact_div(&g0).expect("gcd divides");
        let t = self.num.mul(&bd).add(&o.num.mul(&ad));
        let h = mpoly_gcd(&t, &g0);
        let num = t.exact_div(&h).expect("gcd divides");
        let den = ad.mul(&o.den.exact_div(&h).expect("gcd divides"));
        RatFun::from_coprime(num, den)
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Cross-cancelling product: for reduced operands the result is reduced,
    /// so only the two small cross gcds are computed.
    pub fn mul(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        let g1 = mpoly_gcd(&self.num, &o.den);
        let g2 = mpoly_gcd(&o.num, &self.den);
        let num = self
            .num
            .exact_div(&g1)
            .expect("gcd divides")
            .mul(&o.num.exact_div(&g2).expect("gcd divides"));
        let den = self
            .den
            .exact_div(&g2)
            .expect("gcd divides")
            .mul(&o.den.exact_div(&g1).expect("gcd divides"));
        RatFun::from_coprime(num, den)
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = RatFun::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn used_vars(&self) -> VarSet {
        self.num.vars.union(&self.den.vars)
    }

    pub fn contains_var(&self, s: Symbol) -> bool {
        self.num.vars.contains(s) || self.den.vars.contains(s)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.num.degree_in(s).max(self.den.degree_in(s))
    }

    /// Substitute a symbol by a rational function.
    pub fn subst(&self, s: Symbol, v: &RatFun) -> Result<RatFun> {
        if !self.contains_var(s) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, s, v);
        let d = subst_poly(&self.den, s, v);
        n.div(&d)
    }

    /// Quotient-rule derivation induced by a derivation on variables.
    pub fn derive(&self, der: &dyn Fn(Symbol) -> MPoly) -> RatFun {
        let dn = self.num.derive(der);
        if self.den.is_one() {
            return RatFun::from_mpoly(dn);
        }
        let dd = self.den.derive(der);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        RatFun::new(num, den).expect("nonzero den")
    }
}

/// Substitute into a polynomial, producing a rational function.
fn subst_poly(p: &MPoly, s: Symbol, v: &RatFun) -> RatFun {
    if !p.vars.contains(s) {
        return RatFun::from_mpoly(p.clone());
    }
    let coeffs = p.coeffs_in(s);
    let mut acc = RatFun::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(v).add(&RatFun::from_mpoly(c.clone()));
    }
    acc
}

/// Common denominator of a list: lcm of the (normalized) denominators.
pub fn common_den(items: &[RatFun]) -> MPoly {
    let mut l = MPoly::one();
    for it in items {
        l = mpoly_lcm(&l, &it.den);
    }
    l
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let np = if self.num.terms.len() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let dp = if self.den.terms.len() > 1 || self.den.total_degree() > 0 {
            format!("({})", self.den)
        } else {
            format!("{}", self.den)
        };
        write!(f, "{}/{}", np, dp)
    }
}

impl fmt::Debug for RatFun {
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

    #[test]
    fn normalization_examples() {
        // (2x^2, 4x) -> x/2
        let r = RatFun::new(x().pow(2).scale(&rat_i(2)), x().scale(&rat_i(4))).unwrap();
        assert_eq!(r, RatFun::from_mpoly(x().scale(&rat(1, 2))));
        assert_eq!(format!("{}", r), "1/2*x");
        // (x^2-1, x-1) -> x+1
        let r2 = RatFun::new(x().pow(2).sub(&MPoly::one()), x().sub(&MPoly::one())).unwrap();
        assert_eq!(r2, RatFun::from_mpoly(x().add(&MPoly::one())));
        // zero numerator canonicalizes to 0
        let lam = MPoly::var(Symbol::new("lambda"));
        let zero_num = lam.mul(&x().pow(2)).scale(&rat_i(2)).sub(&x().pow(2).mul(&lam).scale(&rat_i(2)));
        let r3 = RatFun::new(zero_num, MPoly::constant(rat_i(7))).unwrap();
        assert!(r3.is_zero());
        assert_eq!(r3, RatFun::zero());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            RatFun::new(x(), MPoly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn field_ops() {
        let a = RatFun::new(x(), x().add(&MPoly::one())).unwrap();
        let b = RatFun::new(MPoly::one(), x()).unwrap();
        let prod = a.mul(&b);
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a);
        assert!(a.add(&a.neg()).is_zero());
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }
}
