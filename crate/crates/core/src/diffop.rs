//! The noncommutative operator ring R[∂] with the commutation rule
//! ∂a = a∂ + ∂(a), its Euclidean structure, and the differential resultant
//! and subresultant machinery built on Sylvester-type matrices.
//!
//! One operator kernel serves both coefficient modes: formal (differential
//! polynomials in u with λ, μ, cᵢ) and concrete (tower or curve elements).
//! The mode is the scalar context; mixing modes is an error.

use crate::ctx::{DiffCtx, Scalar};
use crate::error::{Error, Result};
use crate::matrix::{det_fraction_free, SymMatrix};
use crate::ratfun::RatFun;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq)]
pub struct DiffOp {
    ctx: Arc<DiffCtx>,
    /// coeffs[i] multiplies ∂^i; the top coefficient is nonzero.
    coeffs: Vec<Scalar>,
}

impl DiffOp {
    pub fn zero(ctx: &Arc<DiffCtx>) -> DiffOp {
        DiffOp {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(ctx: &Arc<DiffCtx>, mut coeffs: Vec<Scalar>) -> DiffOp {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DiffOp {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// The multiplication operator by a scalar.
    pub fn scalar(a: Scalar) -> DiffOp {
        let ctx = a.ctx.clone();
        DiffOp::from_coeffs(&ctx, vec![a])
    }

    /// The bare derivation ∂.
    pub fn partial(ctx: &Arc<DiffCtx>) -> DiffOp {
        DiffOp::from_coeffs(ctx, vec![Scalar::zero(ctx), Scalar::one(ctx)])
    }

    pub fn identity(ctx: &Arc<DiffCtx>) -> DiffOp {
        DiffOp::from_coeffs(ctx, vec![Scalar::one(ctx)])
    }

    pub fn monomial(ctx: &Arc<DiffCtx>, coeff: Scalar, order: usize) -> DiffOp {
        let mut coeffs = vec![Scalar::zero(ctx); order + 1];
        coeffs[order] = coeff;
        DiffOp::from_coeffs(ctx, coeffs)
    }

    pub fn ctx(&self) -> &Arc<DiffCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Operator order; None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    fn check_mode(&self, o: &DiffOp) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ModeMismatch(format!(
                "{:?} vs {:?}",
                self.ctx.derivation, o.ctx.derivation
            )))
        }
    }

    pub fn add(&self, o: &DiffOp) -> Result<DiffOp> {
        self.check_mode(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect();
        Ok(DiffOp::from_coeffs(&self.ctx, coeffs))
    }

    pub fn sub(&self, o: &DiffOp) -> Result<DiffOp> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Left-multiply by ∂: ∂·P = Σ aᵢ∂^(i+1) + Σ ∂(aᵢ)∂^i.
    pub fn apply_partial(&self) -> DiffOp {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(&self.ctx); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = coeffs[i + 1].add(a);
            coeffs[i] = coeffs[i].add(&a.derive());
        }
        DiffOp::from_coeffs(&self.ctx, coeffs)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> DiffOp {
        DiffOp::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|c| c.mul(s)).collect(),
        )
    }
}

/// Product in R[∂]: P·Q = Σᵢ aᵢ·(∂^i Q).
pub fn op_mul(p: &DiffOp, q: &DiffOp) -> Result<DiffOp> {
    p.check_mode(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(DiffOp::zero(&p.ctx));
    }
    let mut shifted = q.clone();
    let mut acc = DiffOp::zero(&p.ctx);
    for (i, a) in p.coeffs.iter().enumerate() {
        if i > 0 {
            shifted = shifted.apply_partial();
        }
        if !a.is_zero() {
            acc = acc.add(&shifted.scalar_mul(a))?;
        }
    }
    Ok(acc)
}

/// Commutator [P, Q] = PQ − QP.
pub fn op_commutator(p: &DiffOp, q: &DiffOp) -> Result<DiffOp> {
    op_mul(p, q)?.sub(&op_mul(q, p)?)
}

/// Right division: p = q·quotient + remainder? No — left Euclidean:
/// p = quotient · q + remainder with ord(remainder) < ord(q).
pub fn op_right_divide(p: &DiffOp, q: &DiffOp) -> Result<(DiffOp, DiffOp)> {
    p.check_mode(q)?;
    if q.is_zero() {
        return Err(Error::DivisionByZeroOperator);
    }
    let dq = q.order().unwrap();
    let mut r = p.clone();
    let mut quot = DiffOp::zero(&p.ctx);
    while let Some(dr) = r.order() {
        if dr < dq {
            break;
        }
        let lc = r.coeff(dr).div(q.leading().unwrap())?;
        let t = DiffOp::monomial(&p.ctx, lc, dr - dq);
        quot = quot.add(&t)?;
        r = r.sub(&op_mul(&t, q)?)?;
    }
    Ok((quot, r))
}

/// Greatest common right divisor by Euclidean descent (field coefficients).
pub fn op_gcrd(p: &DiffOp, q: &DiffOp) -> Result<DiffOp> {
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = op_right_divide(&a, &b)?;
        a = b;
        b = r;
    }
    // monic normalization
    if let Some(lc) = a.leading() {
        let inv = lc.inv()?;
        return Ok(a.scalar_mul(&inv));
    }
    Ok(a)
}

/// The coefficient matrix of Ξ_k(P, Q) = {∂^(m−1−k)P, …, P, ∂^(n−1−k)Q, …, Q}
/// with n = ord P, m = ord Q. Rows are ordered highest shift first, P block
/// then Q block; columns are indexed ∂^(n+m−1−k) … ∂⁰ left to right. The
/// matrix has n+m−2k rows and n+m−k columns.
pub fn sylvester_matrix(p: &DiffOp, q: &DiffOp, k: usize) -> Result<SymMatrix> {
    p.check_mode(q)?;
    let n = p.order().ok_or(Error::DivisionByZeroOperator)?;
    let m = q.order().ok_or(Error::DivisionByZeroOperator)?;
    if k > 0 && (n.min(m) == 0 || k > n.min(m) - 1) {
        return Err(Error::IndexOutOfRange { k, n, m });
    }
    let cols = n + m - k;
    let mut entries: Vec<RatFun> = Vec::with_capacity((n + m - 2 * k) * cols);
    let mut push_rows = |op: &DiffOp, shifts: usize| {
        let mut rows: Vec<DiffOp> = Vec::with_capacity(shifts);
        rows.push(op.clone());
        for _ in 1..shifts {
            let top = rows.last().unwrap().apply_partial();
            rows.push(top);
        }
        for r in rows.into_iter().rev() {
            for c in 0..cols {
                let power = n + m - 1 - k - c;
                entries.push(r.coeff(power).val);
            }
        }
    };
    push_rows(p, m - k);
    push_rows(q, n - k);
    Ok(SymMatrix::new(n + m - 2 * k, cols, entries))
}

/// ∂Res(P, Q) = det S₀(P, Q); vanishes exactly when P and Q share a
/// nontrivial right factor.
pub fn diff_resultant(p: &DiffOp, q: &DiffOp) -> Result<Scalar> {
    let s0 = sylvester_matrix(p, q, 0)?;
    let d = det_fraction_free(&s0)?;
    Ok(Scalar::new(p.ctx.clone(), d))
}

/// The first subresultant pair (det S₁⁰, det S₁¹); the order-one operator
/// is det S₁⁰ + det S₁¹·∂.
pub fn subresultant_l1(p: &DiffOp, q: &DiffOp) -> Result<(Scalar, Scalar)> {
    let n = p.order().ok_or(Error::DivisionByZeroOperator)?;
    let m = q.order().ok_or(Error::DivisionByZeroOperator)?;
    if n.min(m) < 2 {
        return Err(Error::OrderTooLow);
    }
    let s1 = sylvester_matrix(p, q, 1)?;
    // columns run ∂^(n+m-2) … ∂⁰; the ∂^j column has index n+m-2-j
    let col_of = |j: usize| n + m - 2 - j;
    let s10 = s1.remove_cols(&[col_of(1)]);
    let s11 = s1.remove_cols(&[col_of(0)]);
    let d0 = det_fraction_free(&s10)?;
    let d1 = det_fraction_free(&s11)?;
    Ok((
        Scalar::new(p.ctx.clone(), d0),
        Scalar::new(p.ctx.clone(), d1),
    ))
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = match i {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{}", i),
            };
            let cs = format!("{}", c);
            let piece = if d.is_empty() {
                format!("({})", cs)
            } else if c.is_one() {
                d
            } else {
                format!("({})*{}", cs, d)
            };
            parts.push(piece);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldTower;
    use crate::rat::rat_i;
    use crate::symbol::Symbol;

    fn x_tower() -> FieldTower {
        FieldTower::rational(&[])
    }

    #[test]
    fn partial_times_scalar() {
        // ∂ · a = a∂ + ∂(a)
        let t = x_tower();
        let x = t.var(Symbol::new("x")).unwrap();
        let d = DiffOp::partial(t.ctx());
        let a = DiffOp::scalar(x.clone());
        let prod = op_mul(&d, &a).unwrap();
        assert_eq!(prod.coeff(1), x);
        assert_eq!(prod.coeff(0), t.one());
        // identity: P · 1 = P
        let one = DiffOp::identity(t.ctx());
        assert_eq!(op_mul(&prod, &one).unwrap(), prod);
    }

    #[test]
    fn commutator_of_equal_ops_is_zero() {
        let t = x_tower();
        let x = t.var(Symbol::new("x")).unwrap();
        let l = DiffOp::from_coeffs(
            t.ctx(),
            vec![x.clone(), t.zero(), t.constant(rat_i(-1))],
        );
        assert!(op_commutator(&l, &l).unwrap().is_zero());
    }

    #[test]
    fn right_division() {
        let t = x_tower();
        let x = t.var(Symbol::new("x")).unwrap();
        let d = DiffOp::partial(t.ctx());
        let d2 = op_mul(&d, &d).unwrap();
        // ∂² ÷ ∂ = (∂, 0)
        let (q, r) = op_right_divide(&d2, &d).unwrap();
        assert_eq!(q, d);
        assert!(r.is_zero());
        // (∂² + x) ÷ ∂ = (∂, x)
        let p = d2.add(&DiffOp::scalar(x.clone())).unwrap();
        let (q2, r2) = op_right_divide(&p, &d).unwrap();
        assert_eq!(q2, d);
        assert_eq!(r2, DiffOp::scalar(x.clone()));
        // reconstruction
        let back = op_mul(&q2, &d).unwrap().add(&r2).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn resultant_detects_common_factor() {
        let t = x_tower();
        let x = t.var(Symbol::new("x")).unwrap();
        let d = DiffOp::partial(t.ctx());
        // ∂Res(∂ − a, ∂ − a) = 0
        let da = d.sub(&DiffOp::scalar(x.clone())).unwrap();
        assert!(diff_resultant(&da, &da).unwrap().is_zero());
        // ∂Res(∂ − x, ∂ − x − 1) = det [[1, -x], [1, -x-1]] = -1
        let db = d
            .sub(&DiffOp::scalar(x.add(&t.one())))
            .unwrap();
        let r = diff_resultant(&da, &db).unwrap();
        assert_eq!(r, t.constant(rat_i(-1)));
        // S₀(∂, ∂) is 2×2 with determinant 0
        let s = sylvester_matrix(&d, &d, 0).unwrap();
        assert_eq!((s.rows, s.cols), (2, 2));
        assert!(diff_resultant(&d, &d).unwrap().is_zero());
    }
}
