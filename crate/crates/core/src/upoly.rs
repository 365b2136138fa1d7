//! Dense univariate polynomials over the rational-function field of the
//! remaining variables. Used wherever a distinguished variable carries the
//! algebraic structure: squarefree parts in λ, residue extraction in the
//! solver, curve polynomials.

use crate::error::{Error, Result};
use crate::rat::{rat_sqrt, Rat};
use crate::ratfun::RatFun;
use crate::symbol::Symbol;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct UPoly {
    pub var: Symbol,
    /// coeffs[k] multiplies var^k; the top coefficient is nonzero.
    pub coeffs: Vec<RatFun>,
}

impl UPoly {
    pub fn new(var: Symbol, mut coeffs: Vec<RatFun>) -> UPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { var, coeffs }
    }

    pub fn zero(var: Symbol) -> UPoly {
        UPoly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(var: Symbol, c: RatFun) -> UPoly {
        UPoly::new(var, vec![c])
    }

    pub fn monomial(var: Symbol, c: RatFun, k: usize) -> UPoly {
        let mut coeffs = vec![RatFun::zero(); k + 1];
        coeffs[k] = c;
        UPoly::new(var, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> RatFun {
        self.coeffs.last().cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Convert a rational function whose denominator is free of `var`.
    pub fn from_ratfun(rf: &RatFun, var: Symbol) -> Result<UPoly> {
        if rf.den.vars.contains(var) {
            return Err(Error::Internal(format!(
                "denominator contains {} when a polynomial was expected",
                var
            )));
        }
        let den = RatFun::from_mpoly(rf.den.clone());
        let coeffs = rf
            .num
            .coeffs_in(var)
            .into_iter()
            .map(|c| RatFun::from_mpoly(c).div(&den).expect("den nonzero"))
            .collect();
        Ok(UPoly::new(var, coeffs))
    }

    pub fn to_ratfun(&self) -> RatFun {
        let v = RatFun::var(self.var);
        let mut acc = RatFun::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&v).add(c);
        }
        acc
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect();
        UPoly::new(self.var, coeffs)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.var);
        }
        let mut coeffs = vec![RatFun::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::new(self.var, coeffs)
    }

    pub fn scale(&self, c: &RatFun) -> UPoly {
        UPoly::new(
            self.var,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::constant(self.var, RatFun::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division over the coefficient field.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.clone();
        let mut q = UPoly::zero(self.var);
        let dlc = d.lc();
        while !r.is_zero() && r.degree() >= d.degree() {
            let k = r.degree() - d.degree();
            let c = r.lc().div(&dlc)?;
            let t = UPoly::monomial(self.var, c, k);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        Ok((q, r))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd over the coefficient field.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &UPoly) -> (UPoly, UPoly, UPoly) {
        let var = self.var;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (
            UPoly::constant(var, RatFun::one()),
            UPoly::zero(var),
        );
        let (mut t0, mut t1) = (
            UPoly::zero(var),
            UPoly::constant(var, RatFun::one()),
        );
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lc = r0.lc();
        let inv = lc.inv().expect("nonzero lc");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of self modulo m (coprime required).
    pub fn inv_mod(&self, m: &UPoly) -> Result<UPoly> {
        let (g, s, _) = self.xgcd(m);
        if g.degree() != 0 || g.is_zero() {
            return Err(Error::Internal("inverse modulo a non-coprime modulus".into()));
        }
        // g is monic constant 1 after normalization
        s.rem(m)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero lc");
        self.scale(&inv)
    }

    /// d/dvar.
    pub fn derivative(&self) -> UPoly {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rat::from_integer((k as i64).into())))
            .collect();
        UPoly::new(self.var, coeffs)
    }

    pub fn eval(&self, v: &RatFun) -> RatFun {
        let mut acc = RatFun::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        acc
    }

    /// Compose with another polynomial: self(inner(var)).
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&UPoly::constant(inner.var, c.clone()));
        }
        acc
    }

    /// Squarefree part p / gcd(p, p'), made monic.
    pub fn squarefree_part(&self) -> Result<UPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return Ok(self.monic());
        }
        let (q, r) = self.divrem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    /// Yun squarefree decomposition: returns [(factor, multiplicity)] with
    /// factors monic, squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        let f = self.monic();
        if f.degree() == 0 {
            return Ok(out);
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.divrem(&a)?.0;
        let mut c = df.divrem(&a)?.0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            if b.degree() == 0 {
                break;
            }
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            b = b.divrem(&a)?.0;
            c = d.divrem(&a)?.0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    /// Exact polynomial square root, if it exists.
    pub fn sqrt(&self) -> Option<UPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() % 2 != 0 {
            return None;
        }
        let lc = self.lc();
        let lc_c = lc.as_constant()?;
        let root_lc = rat_sqrt(&lc_c)?;
        let half = self.degree() / 2;
        let mut q = UPoly::monomial(self.var, RatFun::constant(root_lc), half);
        // Newton-style: fix coefficients from the top down
        for k in (0..half).rev() {
            let cur = q.mul(&q);
            let want = self.coeff(half + k);
            let have = cur.coeff(half + k);
            let delta = want.sub(&have);
            // coefficient of var^(half+k) in (q + d*var^k)^2 changes by 2*lc(q)*d
            let d = delta.div(&q.lc().scale(&Rat::from_integer(2.into()))).ok()?;
            q = q.add(&UPoly::monomial(self.var, d, k));
        }
        if q.mul(&q) == *self {
            Some(q)
        } else {
            None
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn lam() -> Symbol {
        Symbol::new("lambda")
    }

    fn upoly(cs: &[i64]) -> UPoly {
        UPoly::new(
            lam(),
            cs.iter().map(|&c| RatFun::constant(rat_i(c))).collect(),
        )
    }

    #[test]
    fn divrem_and_gcd() {
        // (x^2 - 1) / (x - 1) = (x + 1, 0)
        let p = upoly(&[-1, 0, 1]);
        let d = upoly(&[-1, 1]);
        let (q, r) = p.divrem(&d).unwrap();
        assert_eq!(q, upoly(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&d), d.monic());
    }

    #[test]
    fn xgcd_identity() {
        let a = upoly(&[2, 3, 1]); // (x+1)(x+2)
        let b = upoly(&[3, 4, 1]); // (x+1)(x+3)
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, upoly(&[1, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn squarefree_examples() {
        // lambda^3 -> lambda
        assert_eq!(upoly(&[0, 0, 0, 1]).squarefree_part().unwrap(), upoly(&[0, 1]));
        // lambda(lambda+1)^2(lambda+4)^2 -> lambda(lambda+1)(lambda+4)
        let p = upoly(&[0, 1])
            .mul(&upoly(&[1, 1]).pow(2))
            .mul(&upoly(&[4, 1]).pow(2));
        let sf = p.squarefree_part().unwrap();
        let expect = upoly(&[0, 1]).mul(&upoly(&[1, 1])).mul(&upoly(&[4, 1]));
        assert_eq!(sf, expect);
        // already squarefree stays put
        let q = upoly(&[1, 0, 1]);
        assert_eq!(q.squarefree_part().unwrap(), q);
        // idempotent
        assert_eq!(sf.squarefree_part().unwrap(), sf);
        // zero polynomial is an error
        assert!(UPoly::zero(lam()).squarefree_part().is_err());
    }

    #[test]
    fn yun_decomposition() {
        let p = upoly(&[0, 1]).mul(&upoly(&[1, 1]).pow(2)).mul(&upoly(&[4, 1]).pow(2));
        let dec = p.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (upoly(&[0, 1]), 1));
        assert_eq!(dec[1], (upoly(&[1, 1]).mul(&upoly(&[4, 1])), 2));
    }

    #[test]
    fn sqrt_extraction() {
        let q = upoly(&[1, 1]).mul(&upoly(&[4, 1])); // (x+1)(x+4)
        let sq = q.mul(&q);
        assert_eq!(sq.sqrt().unwrap(), q);
        assert!(upoly(&[0, 1]).sqrt().is_none());
    }
}
