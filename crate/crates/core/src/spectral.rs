//! Everything on and over the spectral curve: KdV level and basic constants,
//! the operator A_{2s+1}, the curve f_s = ∂Res(L_s−λ, A_{2s+1}−μ), arithmetic
//! in K(Γ_s), the factorization L_s−λ = (−∂−φ)(∂−φ), the φ-level solution
//! identities, and specialization at rational curve points.

use crate::ctx::{DiffCtx, RawFrac, Scalar};
use crate::diffop::{
    diff_resultant, op_commutator, op_gcrd, op_mul, subresultant_l1, DiffOp,
};
use crate::diffpoly::{dp_substitute, DiffPoly};
use crate::error::{Error, Result};
use crate::fields::{fe_coordinates, solve_linear_unique, FieldElem, FieldTower};
use crate::hierarchy::HierarchyCache;
use crate::mpoly::MPoly;
use crate::rat::{rat_i, Rat};
use crate::ratfun::{common_den, RatFun};
use crate::symbol::Symbol;
use crate::upoly::UPoly;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

fn lambda() -> Symbol {
    Symbol::new("lambda")
}

fn mu() -> Symbol {
    Symbol::new("mu")
}

/// A potential in a concrete differential field. Constant potentials are
/// rejected at construction.
#[derive(Clone)]
pub struct Potential {
    pub tower: FieldTower,
    pub u: FieldElem,
    pub label: String,
}

impl Potential {
    pub fn new(tower: FieldTower, u: FieldElem, label: &str) -> Result<Potential> {
        if u.derive().is_zero() {
            return Err(Error::Internal(format!(
                "constant potential `{}` rejected",
                label
            )));
        }
        Ok(Potential {
            tower,
            u,
            label: label.to_string(),
        })
    }

    /// L_s = −∂² + u with concrete coefficients.
    pub fn schrodinger(&self) -> DiffOp {
        let ctx = self.tower.ctx();
        DiffOp::from_coeffs(
            ctx,
            vec![
                self.u.clone(),
                Scalar::zero(ctx),
                Scalar::constant(ctx, rat_i(-1)),
            ],
        )
    }
}

/// KdV level and basic constants vector of a potential.
#[derive(Clone)]
pub struct LevelResult {
    pub s: usize,
    /// (c₁ˢ, …, c_sˢ) over the constants field
    pub cbar: Vec<RatFun>,
    /// cached k_l = kdv_l(u) for l = 0..=s
    pub k_values: Vec<FieldElem>,
}

/// Substituted kdv values k_0..=k_n for a potential.
fn k_values(h: &mut HierarchyCache, pot: &Potential, n: usize) -> Result<Vec<FieldElem>> {
    (0..=n)
        .map(|l| Ok(dp_substitute(&h.kdv_n(l)?, &pot.u, &[])))
        .collect()
}

/// Linear system for KdV_n(u, c) = k_n + Σ k_{n−j} c_j = 0 over the constants
/// field; coordinates are taken over the common denominator of the k's.
fn level_system(ks: &[FieldElem], n: usize) -> Result<Option<Vec<RatFun>>> {
    let tower_ctx = &ks[0].ctx;
    let den = common_den(&ks.iter().map(|k| k.val.clone()).collect::<Vec<_>>());
    let den_elem = Scalar::new(tower_ctx.clone(), RatFun::from_mpoly(den));
    // coordinates of each k over the shared denominator, keyed by monomial
    let mut monomials: Vec<MPoly> = Vec::new();
    let mut cols: Vec<Vec<(usize, RatFun)>> = Vec::new();
    for k in ks.iter().take(n + 1) {
        let coords = fe_coordinates(k, &den_elem)?;
        let mut col = Vec::new();
        for (m, c) in coords {
            let idx = match monomials.iter().position(|x| *x == m) {
                Some(i) => i,
                None => {
                    monomials.push(m);
                    monomials.len() - 1
                }
            };
            col.push((idx, c));
        }
        cols.push(col);
    }
    let rows_n = monomials.len();
    let mut matrix = vec![vec![RatFun::zero(); n]; rows_n];
    let mut rhs = vec![RatFun::zero(); rows_n];
    // unknown c_j multiplies k_{n-j}
    for j in 1..=n {
        for (idx, c) in &cols[n - j] {
            matrix[*idx][j - 1] = c.clone();
        }
    }
    for (idx, c) in &cols[n] {
        rhs[*idx] = c.neg();
    }
    solve_linear_unique(&matrix, &rhs, n)
}

/// Find the KdV level: the least n ≤ s_max for which KdV_n(u, c) = 0 admits
/// constants, together with its unique solution.
pub fn kdv_level(h: &mut HierarchyCache, pot: &Potential, s_max: usize) -> Result<LevelResult> {
    let mut ks = k_values(h, pot, 1)?;
    for n in 1..=s_max {
        while ks.len() <= n {
            ks.push(dp_substitute(&h.kdv_n(ks.len())?, &pot.u, &[]));
        }
        match level_system(&ks[..=n], n) {
            Ok(Some(cbar)) => {
                return Ok(LevelResult {
                    s: n,
                    cbar,
                    k_values: ks[..=n].to_vec(),
                })
            }
            Ok(None) => continue,
            Err(Error::DegenerateLevelSystem(_)) => {
                return Err(Error::DegenerateLevelSystem(n))
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::LevelNotFound(s_max))
}

/// Flag of constants: basis of 𝓥_n and the representative of 𝓗_n for n > s.
/// Basis vectors are (0^j, 1, c̄ˢ, 0^(n−s−1−j)); the representative is
/// (c̄ˢ, 0, …, 0). Every returned vector is verified against the linear form
/// Σ k_{n−i} ξ_i.
pub fn flag_spaces(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
    n: usize,
) -> Result<(Vec<Vec<RatFun>>, Vec<RatFun>)> {
    let s = level.s;
    if n <= s {
        return Err(Error::IndexBelowLevel { n, s });
    }
    let ks = k_values(h, pot, n)?;
    let mut basis = Vec::new();
    for j in 0..n - s {
        let mut v = vec![RatFun::zero(); n];
        v[j] = RatFun::one();
        for (i, c) in level.cbar.iter().enumerate() {
            v[j + 1 + i] = c.clone();
        }
        basis.push(v);
    }
    let mut rep = vec![RatFun::zero(); n];
    for (i, c) in level.cbar.iter().enumerate() {
        rep[i] = c.clone();
    }
    // verify: homogeneous form for basis vectors, affine form for the rep
    let eval_form = |xi: &[RatFun], affine: bool| -> FieldElem {
        let ctx = &pot.u.ctx;
        let mut acc = if affine {
            ks[n].clone()
        } else {
            Scalar::zero(ctx)
        };
        for (i, c) in xi.iter().enumerate() {
            let coeff = Scalar::new(ctx.clone(), c.clone());
            acc = acc.add(&ks[n - 1 - i].mul(&coeff));
        }
        acc
    };
    for v in &basis {
        if !eval_form(v, false).is_zero() {
            return Err(Error::Internal(
                "flag basis vector fails the level linear form".into(),
            ));
        }
    }
    if !eval_form(&rep, true).is_zero() {
        return Err(Error::Internal(
            "flag representative fails the affine form".into(),
        ));
    }
    Ok((basis, rep))
}

/// A_{2s+1} = P̂_{2s+1}(u_s, c̄ˢ) with concrete coefficients.
pub fn build_a(h: &mut HierarchyCache, pot: &Potential, level: &LevelResult) -> Result<DiffOp> {
    let phat = h.p_hat(level.s)?;
    let assignments: Vec<(Symbol, FieldElem)> = level
        .cbar
        .iter()
        .enumerate()
        .map(|(i, c)| (Symbol::c(i + 1), pot.tower.elem(c.clone())))
        .collect();
    let order = phat.order().expect("nonzero operator");
    let coeffs = (0..=order)
        .map(|i| {
            let formal = DiffPoly::from_scalar(phat.coeff(i))?;
            Ok(dp_substitute(&formal, &pot.u, &assignments))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiffOp::from_coeffs(pot.tower.ctx(), coeffs))
}

/// Commutation test [A_{2s+1}, L_s] = 0 in concrete coefficients.
pub fn centralizer_check(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
) -> Result<bool> {
    let a = build_a(h, pot, level)?;
    let l = pot.schrodinger();
    Ok(op_commutator(&a, &l)?.is_zero())
}

/// The spectral curve polynomial f_s = −μ² − R(λ) with constant coefficients
/// and R monic of degree 2s+1.
#[derive(Clone, PartialEq)]
pub struct CurvePoly {
    pub s: usize,
    /// R as a polynomial in λ over the constants field
    pub r: UPoly,
}

impl CurvePoly {
    /// f_s as a rational function in (λ, μ).
    pub fn f(&self) -> RatFun {
        let m = RatFun::var(mu());
        m.mul(&m).neg().sub(&self.r.to_ratfun())
    }

    /// Right-hand side of the reduction rule μ² ↦ −R(λ).
    pub fn mu_square_rhs(&self) -> MPoly {
        let r = self.r.to_ratfun();
        debug_assert!(r.den.is_one());
        r.num.neg()
    }

    /// Evaluate f at a rational point.
    pub fn f_at(&self, lambda0: &Rat, mu0: &Rat) -> RatFun {
        let r_at = self.r.eval(&RatFun::constant(lambda0.clone()));
        RatFun::constant(-(mu0 * mu0)).sub(&r_at)
    }
}

impl fmt::Display for CurvePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f())
    }
}

/// L_s − λ and A_{2s+1} − μ as operators over K with λ, μ constant symbols.
pub fn lax_pair_shifted(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
) -> Result<(DiffOp, DiffOp)> {
    let ctx = pot.tower.ctx();
    let l = pot.schrodinger();
    let a = build_a(h, pot, level)?;
    let lam = DiffOp::scalar(Scalar::var(ctx, lambda()));
    let m = DiffOp::scalar(Scalar::var(ctx, mu()));
    Ok((l.sub(&lam)?, a.sub(&m)?))
}

/// Compute the spectral curve via the differential resultant; asserts that
/// every coefficient is a constant and that the −μ² shape holds.
pub fn spectral_curve(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
) -> Result<CurvePoly> {
    if !centralizer_check(h, pot, level)? {
        return Err(Error::Internal(
            "operator pair does not commute; level or constants are broken".into(),
        ));
    }
    let (lm, am) = lax_pair_shifted(h, pot, level)?;
    let res = diff_resultant(&lm, &am)?;
    // constancy: annihilated by the derivation and free of the generators
    if !res.derive().is_zero() || !res.is_generator_free() {
        return Err(Error::NonConstantCoefficient(format!("{}", res)));
    }
    let in_mu = UPoly::from_ratfun(&res.val, mu())
        .map_err(|_| Error::ShapeMismatch(format!("{}", res)))?;
    if in_mu.degree() != 2 || !in_mu.coeff(1).is_zero() {
        return Err(Error::ShapeMismatch(format!("{}", res)));
    }
    let c2 = in_mu.coeff(2);
    if c2.as_constant().is_none() {
        return Err(Error::ShapeMismatch(format!("{}", res)));
    }
    // normalize the μ² coefficient to −1
    let scale = RatFun::constant(rat_i(-1)).div(&c2)?;
    let c0 = in_mu.coeff(0).mul(&scale);
    let r = UPoly::from_ratfun(&c0.neg(), lambda())
        .map_err(|_| Error::ShapeMismatch(format!("{}", res)))?;
    if r.degree() != 2 * level.s + 1 || !r.lc().is_one() {
        return Err(Error::ShapeMismatch(format!("R = {}", r)));
    }
    Ok(CurvePoly { s: level.s, r })
}

/// The coefficient field K(Γ_s): the tower context extended with μ² ↦ −R(λ).
pub fn curve_ctx(pot: &Potential, curve: &CurvePoly) -> Arc<DiffCtx> {
    pot.tower.ctx().with_relation(mu(), curve.mu_square_rhs())
}

/// Normal form on Γ_s: μ-degree ≤ 1, denominator free of μ.
pub fn curve_reduce(e: &Scalar, cctx: &Arc<DiffCtx>) -> Scalar {
    e.lift_to(cctx)
}

/// Inverse in K(Γ_s) by μ-conjugation.
pub fn curve_invert(e: &Scalar) -> Result<Scalar> {
    if e.is_zero() {
        return Err(Error::ZeroOnCurve);
    }
    e.inv()
}

/// The factorization data over the curve: L_s − λ = (−∂−φ₊)(∂−φ₊) with
/// φ₊ = (μ+α)/φ₂ and φ₋ its image under μ ↦ −μ.
#[derive(Clone)]
pub struct CurveFactors {
    pub phi_plus: Scalar,
    pub phi_minus: Scalar,
    /// α ∈ K[λ], degree ≤ s−1 in λ
    pub alpha: Scalar,
    /// φ₂ ∈ K[λ], monic of degree s in λ
    pub phi2: Scalar,
}

/// Factorization over K(Γ_s) from the first subresultant:
/// 𝓛₁ = det S₁⁰ + det S₁¹ ∂, φ₊ = −det S₁⁰ / det S₁¹ reduced on Γ.
pub fn factor_on_curve(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
    curve: &CurvePoly,
) -> Result<CurveFactors> {
    let (lm, am) = lax_pair_shifted(h, pot, level)?;
    let (d0, d1) = subresultant_l1(&lm, &am)?;
    if d1.is_zero() {
        return Err(Error::ZeroSubresultant);
    }
    let cctx = curve_ctx(pot, curve);
    let phi_plus = curve_reduce(&d0.neg().div(&d1)?, &cctx);
    if phi_plus.is_zero() {
        return Err(Error::ZeroSubresultant);
    }
    let phi_minus = phi_plus.subst(mu(), &RatFun::var(mu()).neg())?;
    // det S₁⁰ = −μ − α
    let alpha = d0.add(&Scalar::var(&d0.ctx, mu())).neg();
    if alpha.val.contains_var(mu()) || d1.val.contains_var(mu()) {
        return Err(Error::Internal(
            "subresultant parts are not of the form (-mu - alpha, phi2)".into(),
        ));
    }
    Ok(CurveFactors {
        phi_plus,
        phi_minus,
        alpha,
        phi2: d1,
    })
}

/// Riccati residual ∂φ + φ² − u + λ, reduced on the curve; must vanish.
/// The test is fraction-free: one numerator over the product denominator,
/// reduced by the curve and tower relations.
pub fn riccati_check(phi: &Scalar, pot: &Potential, cctx: &Arc<DiffCtx>) -> bool {
    let p = RawFrac::of(phi);
    let u = RawFrac::of(&pot.u);
    let lam = RawFrac {
        num: MPoly::var(lambda()),
        den: MPoly::one(),
    };
    p.derive(cctx)
        .add(&p.mul(&p))
        .sub(&u)
        .add(&lam)
        .is_zero_in(cctx)
}

/// The two φ-level solution identities:
/// (i) φ₊ − φ₋ = 2μ/φ₂ on Γ, and (ii) φ₂ solves the second symmetric power
/// equation ∂³φ − 4(u−λ)∂φ − 2u′φ = 0.
pub fn solution_identities(
    factors: &CurveFactors,
    pot: &Potential,
    curve: &CurvePoly,
) -> Result<(bool, bool)> {
    let cctx = curve_ctx(pot, curve);
    let two_mu = RawFrac {
        num: MPoly::var(mu()).scale(&rat_i(2)),
        den: MPoly::one(),
    };
    let phi2 = RawFrac::of(&factors.phi2);
    let wronskian_ok = RawFrac::of(&factors.phi_plus)
        .sub(&RawFrac::of(&factors.phi_minus))
        .mul(&phi2)
        .sub(&two_mu)
        .is_zero_in(&cctx);
    // second symmetric power; λ is a constant symbol for the derivation
    let tctx = pot.tower.ctx();
    let u = RawFrac::of(&pot.u);
    let lam = RawFrac {
        num: MPoly::var(lambda()),
        den: MPoly::one(),
    };
    let d1 = phi2.derive(tctx);
    let d3 = d1.derive(tctx).derive(tctx);
    let four = |f: RawFrac| RawFrac {
        num: f.num.scale(&rat_i(4)),
        den: f.den,
    };
    let two = |f: RawFrac| RawFrac {
        num: f.num.scale(&rat_i(2)),
        den: f.den,
    };
    let residual = d3
        .sub(&four(u.sub(&lam).mul(&d1)))
        .sub(&two(u.derive(tctx).mul(&phi2)));
    Ok((wronskian_ok, residual.is_zero_in(tctx)))
}

/// Specialization of the factorization at a rational curve point.
#[derive(Clone)]
pub struct SpecializedFactor {
    pub lambda0: Rat,
    pub mu0: Rat,
    pub phi0: FieldElem,
    /// μ₀ = 0: the point lies in Z_s, which contains the affine singular points
    pub in_zs: bool,
}

/// Factor L_s − λ₀ = (−∂−φ₀)(∂−φ₀) at a point (λ₀, μ₀) of Γ_s, with
/// φ₀ = (μ₀ + α(λ₀))/φ₂(λ₀); verifies the factorization by expansion.
pub fn specialize_at_point(
    factors: &CurveFactors,
    pot: &Potential,
    curve: &CurvePoly,
    lambda0: Rat,
    mu0: Rat,
) -> Result<SpecializedFactor> {
    if !curve.f_at(&lambda0, &mu0).is_zero() {
        return Err(Error::NotOnCurve {
            lambda0: lambda0.to_string(),
            mu0: mu0.to_string(),
        });
    }
    let lam_val = RatFun::constant(lambda0.clone());
    let phi2_at = factors.phi2.subst(lambda(), &lam_val)?;
    if phi2_at.is_zero() {
        return Err(Error::VanishingPhi2(lambda0.to_string()));
    }
    let alpha_at = factors.alpha.subst(lambda(), &lam_val)?;
    let ctx = &pot.u.ctx;
    let phi0 = Scalar::constant(ctx, mu0.clone())
        .add(&alpha_at)
        .div(&phi2_at)?;
    // verify L_s − λ₀ = (−∂ − φ₀)(∂ − φ₀)
    let d = DiffOp::partial(ctx);
    let left = d.neg().sub(&DiffOp::scalar(phi0.clone()))?;
    let right = d.sub(&DiffOp::scalar(phi0.clone()))?;
    let prod = op_mul(&left, &right)?;
    let expect = pot
        .schrodinger()
        .sub(&DiffOp::scalar(Scalar::constant(ctx, lambda0.clone())))?;
    if prod != expect {
        return Err(Error::Internal(format!(
            "specialized factorization failed at ({}, {})",
            lambda0, mu0
        )));
    }
    let in_zs = mu0.is_zero();
    Ok(SpecializedFactor {
        lambda0,
        mu0,
        phi0,
        in_zs,
    })
}

/// Order of gcrd(L_s−λ₀, A_{2s+1}−μ₀) over K; 1 at every curve point.
pub fn specialization_gcd_order(
    h: &mut HierarchyCache,
    pot: &Potential,
    level: &LevelResult,
    lambda0: &Rat,
    mu0: &Rat,
) -> Result<Option<usize>> {
    let ctx = pot.tower.ctx();
    let l = pot
        .schrodinger()
        .sub(&DiffOp::scalar(Scalar::constant(ctx, lambda0.clone())))?;
    let a = build_a(h, pot, level)?
        .sub(&DiffOp::scalar(Scalar::constant(ctx, mu0.clone())))?;
    let g = op_gcrd(&l, &a)?;
    Ok(g.order())
}

/// Coefficients of a μ-free element as a polynomial in λ over K; errors when
/// the denominator involves λ.
pub fn as_lambda_poly(e: &Scalar) -> Result<Vec<Scalar>> {
    if e.val.den.vars.contains(lambda()) {
        return Err(Error::Internal("denominator contains lambda".into()));
    }
    let den = RatFun::from_mpoly(e.val.den.clone());
    Ok(e.val
        .num
        .coeffs_in(lambda())
        .into_iter()
        .map(|c| {
            Scalar::new(
                e.ctx.clone(),
                RatFun::from_mpoly(c).div(&den).expect("nonzero den"),
            )
        })
        .collect())
}
