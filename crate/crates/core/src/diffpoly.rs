//! The free differential polynomial ring C{u}: jet variables u, u', u'', …
//! with coefficients in ℚ(c₁, …, cₙ), total derivative, formal
//! antiderivative on total derivatives, and substitution of potentials.

use crate::ctx::{DiffCtx, Scalar};
use crate::error::{Error, Result};
use crate::fields::FieldElem;
use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::ratfun::RatFun;
use crate::symbol::Symbol;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Element of C{u} (possibly with constant symbols c₁, …, λ, μ mixed in).
/// The value is always polynomial: the canonical denominator is 1.
#[derive(Clone, PartialEq)]
pub struct DiffPoly(pub Scalar);

impl DiffPoly {
    pub fn ctx() -> Arc<DiffCtx> {
        DiffCtx::formal()
    }

    pub fn zero() -> DiffPoly {
        DiffPoly(Scalar::zero(&Self::ctx()))
    }

    pub fn one() -> DiffPoly {
        DiffPoly(Scalar::one(&Self::ctx()))
    }

    pub fn constant(c: Rat) -> DiffPoly {
        DiffPoly(Scalar::constant(&Self::ctx(), c))
    }

    pub fn u(k: usize) -> DiffPoly {
        DiffPoly(Scalar::var(&Self::ctx(), Symbol::u_jet(k)))
    }

    pub fn c_sym(i: usize) -> DiffPoly {
        DiffPoly(Scalar::var(&Self::ctx(), Symbol::c(i)))
    }

    pub fn from_scalar(s: Scalar) -> Result<DiffPoly> {
        if !s.val.den.is_one() {
            return Err(Error::Internal(format!(
                "differential polynomial with denominator {}",
                s.val.den
            )));
        }
        Ok(DiffPoly(s))
    }

    pub fn as_mpoly(&self) -> &MPoly {
        &self.0.val.num
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly(self.0.sub(&o.0))
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly(self.0.neg())
    }

    pub fn mul(&self, o: &DiffPoly) -> DiffPoly {
        DiffPoly(self.0.mul(&o.0))
    }

    pub fn scale(&self, c: &Rat) -> DiffPoly {
        DiffPoly(self.0.scale(c))
    }

    /// Highest derivative order appearing, if any jet variable appears.
    pub fn max_jet_order(&self) -> Option<usize> {
        self.as_mpoly()
            .vars
            .iter()
            .filter_map(|s| s.jet_order())
            .max()
    }
}

/// Total derivative: u^(k) advances to u^(k+1) through the product rule.
pub fn dp_derive(p: &DiffPoly) -> DiffPoly {
    DiffPoly(p.0.derive())
}

/// Rank of a jet monomial: exponents read from the highest derivative down.
/// The maximal-rank term strictly decreases during integration, so the loop
/// below terminates.
fn jet_rank(vars: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut v = vars.to_vec();
    v.sort_by(|a, b| b.0.cmp(&a.0));
    v
}

/// Formal antiderivative of a total derivative, normalized with zero
/// u-free constant of integration.
///
/// Strategy: pick the term of highest rank (highest derivative, then highest
/// degree in it); its top derivative must appear linearly, integrate that
/// leading factor by parts, subtract the derivative of the partial answer
/// and repeat until nothing is left.
pub fn dp_integrate(p: &DiffPoly) -> Result<DiffPoly> {
    let mut rem = p.clone();
    let mut acc = DiffPoly::zero();
    loop {
        if rem.is_zero() {
            return Ok(acc);
        }
        let poly = rem.as_mpoly().clone();
        // find the maximal-rank jet monomial
        let mut best: Option<(Vec<(usize, u32)>, MPoly, Rat)> = None;
        for (m, c) in &poly.terms {
            let mut jets: Vec<(usize, u32)> = Vec::new();
            let mut const_part = MPoly::one();
            for (i, s) in poly.vars.iter().enumerate() {
                if m[i] == 0 {
                    continue;
                }
                match s.jet_order() {
                    Some(k) => jets.push((k, m[i])),
                    None => const_part = const_part.mul(&MPoly::var_pow(s, m[i])),
                }
            }
            let rank = jet_rank(&jets);
            let replace = match &best {
                None => true,
                Some((r, _, _)) => rank > *r,
            };
            if replace {
                best = Some((rank, const_part, c.clone()));
            }
        }
        let (rank, const_part, coeff) = best.expect("nonzero polynomial has terms");
        if rank.is_empty() || rank[0].0 == 0 {
            return Err(Error::NotTotalDerivative {
                remainder: format!("{}", rem),
            });
        }
        let (m, e) = rank[0];
        if e >= 2 {
            return Err(Error::NotTotalDerivative {
                remainder: format!("{}", rem),
            });
        }
        // degree of u^(m-1) in the selected monomial
        let d = rank
            .iter()
            .find(|(k, _)| *k == m - 1)
            .map(|(_, e)| *e)
            .unwrap_or(0);
        // candidate: coeff/(d+1) · const_part · (lower jets) · u^(m-1)^(d+1)
        let mut cand = const_part.scale(&(coeff / Rat::from_integer(((d + 1) as i64).into())));
        for (k, ek) in &rank {
            if *k == m {
                continue;
            }
            let ee = if *k == m - 1 { d + 1 } else { *ek };
            cand = cand.mul(&MPoly::var_pow(Symbol::u_jet(*k), ee));
        }
        if d == 0 && !rank.iter().any(|(k, _)| *k == m - 1) {
            cand = cand.mul(&MPoly::var_pow(Symbol::u_jet(m - 1), 1));
        }
        let cand = DiffPoly(Scalar::new(DiffPoly::ctx(), RatFun::from_mpoly(cand)));
        acc = acc.add(&cand);
        rem = rem.sub(&dp_derive(&cand));
    }
}

/// Substitute u ↦ pot (and the listed cᵢ assignments) into a differential
/// polynomial, pushing u^(k) to the k-th derivative of the potential.
pub fn dp_substitute(
    p: &DiffPoly,
    pot: &FieldElem,
    constants: &[(Symbol, FieldElem)],
) -> FieldElem {
    let ctx = pot.ctx.clone();
    let poly = p.as_mpoly();
    let max_jet = p.max_jet_order().unwrap_or(0);
    // derivatives of the potential up to the highest jet
    let mut jets: Vec<FieldElem> = Vec::with_capacity(max_jet + 1);
    jets.push(pot.clone());
    for _ in 0..max_jet {
        let last = jets.last().unwrap().clone();
        jets.push(last.derive());
    }
    let assign: HashMap<Symbol, FieldElem> = constants.iter().cloned().collect();
    // power cache per variable
    let mut powers: HashMap<(usize, u32), FieldElem> = HashMap::new();
    let mut value_of = |i: usize, s: Symbol, e: u32, jets: &[FieldElem]| -> FieldElem {
        if let Some(v) = powers.get(&(i, e)) {
            return v.clone();
        }
        let base = match s.jet_order() {
            Some(k) => jets[k].clone(),
            None => match assign.get(&s) {
                Some(v) => v.clone(),
                None => Scalar::var(&ctx, s),
            },
        };
        let v = base.pow(e as i64).expect("nonnegative power");
        powers.insert((i, e), v.clone());
        v
    };
    let mut acc = Scalar::zero(&ctx);
    for (m, c) in &poly.terms {
        let mut term = Scalar::constant(&ctx, c.clone());
        for (i, s) in poly.vars.iter().enumerate() {
            if m[i] == 0 {
                continue;
            }
            term = term.mul(&value_of(i, s, m[i], &jets));
        }
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;
    use crate::rat::{rat, rat_i};

    #[test]
    fn derive_examples() {
        let u = DiffPoly::u(0);
        let u1 = DiffPoly::u(1);
        let u2 = DiffPoly::u(2);
        let u3 = DiffPoly::u(3);
        // u² → 2uu'
        assert_eq!(dp_derive(&u.mul(&u)), u.mul(&u1).scale(&rat_i(2)));
        // u·u'' → u'u'' + u·u'''
        assert_eq!(dp_derive(&u.mul(&u2)), u1.mul(&u2).add(&u.mul(&u3)));
    }

    #[test]
    fn integrate_examples() {
        let u = DiffPoly::u(0);
        let u1 = DiffPoly::u(1);
        // u' → u
        assert_eq!(dp_integrate(&u1).unwrap(), u);
        // 2uu' → u²
        assert_eq!(
            dp_integrate(&u.mul(&u1).scale(&rat_i(2))).unwrap(),
            u.mul(&u)
        );
        // kdv₁ = -1/4 u''' + 3/2 u u' → -1/4 u'' + 3/4 u²
        let kdv1 = DiffPoly::u(3)
            .scale(&rat(-1, 4))
            .add(&u.mul(&u1).scale(&rat(3, 2)));
        let int = dp_integrate(&kdv1).unwrap();
        let expect = DiffPoly::u(2)
            .scale(&rat(-1, 4))
            .add(&u.mul(&u).scale(&rat(3, 4)));
        assert_eq!(int, expect);
        // a bare u is not a total derivative
        assert!(matches!(
            dp_integrate(&u),
            Err(Error::NotTotalDerivative { .. })
        ));
    }

    #[test]
    fn integrate_derive_roundtrip() {
        let u = DiffPoly::u(0);
        let u1 = DiffPoly::u(1);
        let u2 = DiffPoly::u(2);
        let p = u
            .mul(&u)
            .mul(&u2)
            .add(&u1.mul(&u1).scale(&rat(1, 3)))
            .add(&u.mul(&u1));
        let q = dp_integrate(&dp_derive(&p)).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn substitute_into_tower() {
        let t = FieldTower::rational(&[]);
        let x = t.var(Symbol::new("x")).unwrap();
        // u' at u = 6/x² is -12/x³
        let pot = t.constant(rat_i(6)).div(&x.pow(2).unwrap()).unwrap();
        let got = dp_substitute(&DiffPoly::u(1), &pot, &[]);
        let expect = t.constant(rat_i(-12)).div(&x.pow(3).unwrap()).unwrap();
        assert_eq!(got, expect);
        // u' at u = 2wp is 2wpp
        let wt = FieldTower::weierstrass(&[], false);
        let wp = wt.var(Symbol::new("wp")).unwrap();
        let wpp = wt.var(Symbol::new("wpp")).unwrap();
        let got2 = dp_substitute(&DiffPoly::u(1), &wp.scale(&rat_i(2)), &[]);
        assert_eq!(got2, wpp.scale(&rat_i(2)));
    }
}
