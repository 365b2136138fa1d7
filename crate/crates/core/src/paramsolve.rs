//! Genus detection, global parametrization of the spectral curve (genus 0
//! and the elliptic normal-form family), one-parameter factors, and
//! hyperexponential solving of ∂Υ = φ̃·Υ with built-in verification.

use crate::ctx::{RawFrac, Scalar};
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldTower, Generator};
use crate::matrix::{det_fraction_free, SymMatrix};
use crate::mpoly::MPoly;
use crate::rat::{is_integer, rat_i, rational_roots, Rat};
use crate::ratfun::RatFun;
use crate::spectral::{CurvePoly, Potential};
use crate::symbol::Symbol;
use crate::upoly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

fn lambda() -> Symbol {
    Symbol::new("lambda")
}
fn mu() -> Symbol {
    Symbol::new("mu")
}
fn tau() -> Symbol {
    Symbol::new("tau")
}

/// The product of the odd-multiplicity factors: S = kernel · (square part).
fn odd_multiplicity_part(p: &UPoly) -> Result<UPoly> {
    let dec = p.squarefree_decomposition()?;
    let mut kernel = UPoly::constant(p.var, RatFun::one());
    for (f, m) in dec {
        if m % 2 == 1 {
            kernel = kernel.mul(&f);
        }
    }
    Ok(kernel)
}

/// Genus of the hyperelliptic curve μ² = S(λ) with S = −R: with d the degree
/// left after removing the square part of S, the genus is ⌊(d−1)/2⌋.
pub fn hyperelliptic_genus(curve: &CurvePoly) -> Result<usize> {
    let s_poly = curve.r.neg();
    let d = odd_multiplicity_part(&s_poly)?.degree();
    Ok(d.saturating_sub(1) / 2)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamKind {
    Rational,
    WeierstrassPair,
}

/// Global parametrization ℵ(τ) = (χ₁(τ), χ₂(τ)) of the spectral curve.
#[derive(Clone)]
pub struct Parametrization {
    pub kind: ParamKind,
    pub chi1: RatFun,
    pub chi2: RatFun,
    pub sign: i8,
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.chi1, self.chi2)
    }
}

/// Parametrize a genus-0 curve of the shape S = −(λ−r)·q(λ)² (χ₁ = r−τ²,
/// χ₂ = ±τ·q(χ₁)), or the elliptic normal form −μ²−λ³+¼g₂λ−¼g₃
/// (χ = (−wp(τ), ½wp'(τ))). The identity f(χ₁, χ₂) = 0 is verified exactly
/// before returning. `sign_flip` selects the opposite sheet.
pub fn parametrize_curve(curve: &CurvePoly, sign_flip: bool) -> Result<Parametrization> {
    let genus = hyperelliptic_genus(curve)?;
    match genus {
        0 => {
            let s_poly = curve.r.neg();
            let sf = odd_multiplicity_part(&s_poly)?;
            if sf.degree() != 1 {
                return Err(Error::UnsupportedShape(format!(
                    "genus 0 branch-point part has degree {}",
                    sf.degree()
                )));
            }
            // sf = λ − r
            let r_val = sf.coeff(0).neg();
            let (t_quot, t_rem) = s_poly.divrem(&sf)?;
            if !t_rem.is_zero() {
                return Err(Error::Internal("squarefree part does not divide".into()));
            }
            let q = t_quot.neg().sqrt().ok_or_else(|| {
                Error::UnsupportedShape("curve is not of the -(lambda-r)*q^2 family".into())
            })?;
            let tau_rf = RatFun::var(tau());
            let chi1 = r_val.sub(&tau_rf.mul(&tau_rf));
            let mut chi2 = tau_rf.mul(&q.eval(&chi1));
            // canonical sheet: the leading τ-coefficient of χ₂ is negative
            let chi2_up = UPoly::from_ratfun(&chi2, tau())
                .map_err(|_| Error::Internal("chi2 not polynomial in tau".into()))?;
            let lc = chi2_up
                .lc()
                .as_constant()
                .ok_or_else(|| Error::Internal("chi2 leading coefficient not rational".into()))?;
            let mut sign = 1i8;
            if lc.is_positive() {
                chi2 = chi2.neg();
                sign = -1;
            }
            if sign_flip {
                chi2 = chi2.neg();
                sign = -sign;
            }
            // exact identity f(χ₁, χ₂) = −χ₂² − R(χ₁) = 0
            let residual = chi2.mul(&chi2).neg().sub(&curve.r.eval(&chi1));
            if !residual.is_zero() {
                return Err(Error::Internal("parametrization identity failed".into()));
            }
            Ok(Parametrization {
                kind: ParamKind::Rational,
                chi1,
                chi2,
                sign,
            })
        }
        1 => {
            // require R = λ³ − ¼g₂λ + ¼g₃ exactly
            let g2 = RatFun::var(Symbol::new("g2"));
            let g3 = RatFun::var(Symbol::new("g3"));
            let quarter = RatFun::constant(crate::rat::rat(1, 4));
            let expect = UPoly::new(
                lambda(),
                vec![
                    g3.mul(&quarter),
                    g2.mul(&quarter).neg(),
                    RatFun::zero(),
                    RatFun::one(),
                ],
            );
            if curve.r != expect {
                return Err(Error::UnsupportedShape(
                    "genus 1 curve is not in the normal form -mu^2 - lambda^3 + 1/4*g2*lambda - 1/4*g3"
                        .into(),
                ));
            }
            let chi1 = RatFun::var(Symbol::new("wpt")).neg();
            let mut chi2 = RatFun::var(Symbol::new("wppt")).scale(&crate::rat::rat(1, 2));
            let mut sign = 1i8;
            if sign_flip {
                chi2 = chi2.neg();
                sign = -1;
            }
            // identity holds modulo the parameter pair's cubic relation
            let pctx = crate::ctx::DiffCtx::weierstrass(true);
            let residual = Scalar::new(pctx, chi2.mul(&chi2).neg().sub(&curve.r.eval(&chi1)));
            if !residual.is_zero() {
                return Err(Error::Internal("parametrization identity failed".into()));
            }
            Ok(Parametrization {
                kind: ParamKind::WeierstrassPair,
                chi1,
                chi2,
                sign,
            })
        }
        g => Err(Error::UnsupportedShape(format!(
            "genus {g}: no algorithm is known to compute a global parametrization"
        ))),
    }
}

/// The differential morphism ρ: λ ↦ χ₁(τ), μ ↦ χ₂(τ), identity on K.
/// τ-dependent symbols are constants of the target field.
pub fn substitute_param(phi: &Scalar, par: &Parametrization, pot: &Potential) -> Result<FieldElem> {
    let substituted = phi.val.subst(lambda(), &par.chi1)?.subst(mu(), &par.chi2)?;
    let target_tower = param_tower(par, pot);
    Ok(target_tower.elem(substituted))
}

/// The field F = K(χ₁, χ₂) the one-parameter factor lives in.
pub fn param_tower(par: &Parametrization, pot: &Potential) -> FieldTower {
    match par.kind {
        ParamKind::Rational => pot.tower.with_constants(&[tau()]),
        ParamKind::WeierstrassPair => FieldTower::weierstrass(&pot.tower.constants, true),
    }
}

/// Riccati residual in F: ∂φ̃ + φ̃² − u + χ₁(τ); fraction-free zero test.
pub fn riccati_check_param(phi_t: &FieldElem, pot: &Potential, par: &Parametrization) -> bool {
    let target = param_tower(par, pot);
    let ctx = target.ctx();
    let p = RawFrac::of(phi_t);
    let u = RawFrac::of(&pot.u);
    let chi1 = RawFrac {
        num: par.chi1.num.clone(),
        den: par.chi1.den.clone(),
    };
    p.derive(ctx)
        .add(&p.mul(&p))
        .sub(&u)
        .add(&chi1)
        .is_zero_in(ctx)
}

/// Factorization identity in F: (−∂−φ̃)(∂−φ̃) = L_s − χ₁(τ).
pub fn factorization_check_param(
    phi_t: &FieldElem,
    pot: &Potential,
    par: &Parametrization,
) -> Result<bool> {
    use crate::diffop::{op_mul, DiffOp};
    let target = param_tower(par, pot);
    let ctx = target.ctx();
    let phi = phi_t.lift_to(ctx);
    let d = DiffOp::partial(ctx);
    let left = d.neg().sub(&DiffOp::scalar(phi.clone()))?;
    let right = d.sub(&DiffOp::scalar(phi))?;
    let prod = op_mul(&left, &right)?;
    let l = DiffOp::from_coeffs(
        ctx,
        vec![
            pot.u.lift_to(ctx),
            Scalar::zero(ctx),
            Scalar::constant(ctx, rat_i(-1)),
        ],
    );
    let chi1 = Scalar::new(ctx.clone(), par.chi1.clone());
    let expect = l.sub(&DiffOp::scalar(chi1))?;
    Ok(prod == expect)
}

/// Rewrite an even element of the η = eˣ tower over w = η² (∂w = 2w).
/// Returns None when odd powers of η occur.
pub fn to_w_tower(phi: &FieldElem) -> Option<(FieldTower, FieldElem)> {
    let eta = Symbol::new("eta");
    let w = Symbol::new("w");
    let num = half_exponents(&phi.val.num, eta, w)?;
    let den = half_exponents(&phi.val.den, eta, w)?;
    let tower = FieldTower::exponential_w(&[tau()]);
    let val = RatFun::new(num, den).ok()?;
    Some((tower.clone(), tower.elem(val)))
}

fn half_exponents(p: &MPoly, from: Symbol, to: Symbol) -> Option<MPoly> {
    let pos = match p.vars.position(from) {
        None => return Some(p.clone()),
        Some(i) => i,
    };
    let mut acc = MPoly::zero();
    for (m, c) in &p.terms {
        if m[pos] % 2 != 0 {
            return None;
        }
        let mut term = MPoly::constant(c.clone());
        for (i, s) in p.vars.iter().enumerate() {
            if m[i] == 0 {
                continue;
            }
            if i == pos {
                term = term.mul(&MPoly::var_pow(to, m[i] / 2));
            } else {
                term = term.mul(&MPoly::var_pow(s, m[i]));
            }
        }
        acc = acc.add(&term);
    }
    Some(acc)
}

/// Exponent classification of a hyperexponential solution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpClass {
    /// all factor exponents are integers
    Integer,
    /// some exponent is a non-integer rational: a radical extension
    Radical,
}

/// A verified closed-form solution Υ of ∂Υ = φ̃·Υ:
/// Υ = Π pᵢ^{nᵢ} · exp(a·x) · exp(g).
#[derive(Clone)]
pub struct HyperexpSolution {
    /// the tower the solution lives over (generator t)
    pub tower: FieldTower,
    /// a: the coefficient of x in the exponent, a value of the constants field
    pub exp_rate: RatFun,
    /// (primitive polynomial in t, exponent) pairs
    pub factors: Vec<(UPoly, Rat)>,
    /// Hermite part g: exp(g) multiplies the solution
    pub residual_exponent: RatFun,
    pub classification: ExpClass,
}

impl HyperexpSolution {
    /// Logarithmic derivative of the assembled product, as an element of the
    /// tower: a + Σ nᵢ·∂(pᵢ)/pᵢ + ∂(g).
    pub fn log_derivative(&self) -> FieldElem {
        let ctx = self.tower.ctx();
        let mut acc = Scalar::new(ctx.clone(), self.exp_rate.clone());
        for (p, n) in &self.factors {
            let ps = self.tower.elem(p.to_ratfun());
            let term = ps.derive().div(&ps).expect("nonzero factor").scale(n);
            acc = acc.add(&term);
        }
        let g = Scalar::new(ctx.clone(), self.residual_exponent.clone());
        acc.add(&g.derive())
    }

    /// The product of factor polynomials with positive exponents over those
    /// with negative exponents, as a rational function.
    pub fn rational_part(&self) -> RatFun {
        let mut acc = RatFun::one();
        for (p, n) in &self.factors {
            if let Some(k) = n.to_integer().to_string().parse::<i64>().ok().filter(|_| is_integer(n)) {
                acc = acc.mul(&p.to_ratfun().pow(k).expect("nonzero factor"));
            }
        }
        acc
    }

    /// Display string for the assembled solution.
    pub fn assembled(&self) -> String {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (p, n) in &self.factors {
            let e = n.abs();
            let base = format!("({})", p.to_ratfun());
            let piece = if e.is_one() {
                base
            } else {
                format!("{}^{}", base, e)
            };
            if n.is_negative() {
                den.push(piece);
            } else {
                num.push(piece);
            }
        }
        let mut s = String::new();
        let num_s = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        if den.is_empty() {
            s.push_str(&num_s);
        } else {
            s.push_str(&format!("{}/({})", num_s, den.join("*")));
        }
        if !self.exp_rate.is_zero() {
            s.push_str(&format!(" * exp(({})*x)", self.exp_rate));
        }
        if !self.residual_exponent.is_zero() {
            s.push_str(&format!(" * exp({})", self.residual_exponent));
        }
        s
    }
}

/// ∂ₓ action on a polynomial in the generator: p' for the rational tower,
/// rate·t·p' for exponential towers.
fn dx_poly(p: &UPoly, rate: Option<&Rat>) -> UPoly {
    match rate {
        None => p.derivative(),
        Some(r) => {
            let t = UPoly::monomial(p.var, RatFun::one(), 1);
            t.mul(&p.derivative()).scale(&RatFun::constant(r.clone()))
        }
    }
}

/// Classical resultant Res_t(p, q) via the Sylvester matrix determinant.
fn upoly_resultant(p: &UPoly, q: &UPoly) -> Result<RatFun> {
    if p.is_zero() || q.is_zero() {
        return Ok(RatFun::zero());
    }
    let n = p.degree();
    let m = q.degree();
    let size = n + m;
    if size == 0 {
        return Ok(RatFun::one());
    }
    let mut entries = vec![RatFun::zero(); size * size];
    for row in 0..m {
        for k in 0..=n {
            entries[row * size + row + k] = p.coeff(n - k);
        }
    }
    for row in 0..n {
        for k in 0..=m {
            entries[(m + row) * size + row + k] = q.coeff(m - k);
        }
    }
    det_fraction_free(&SymMatrix::new(size, size, entries))
}

/// Rational-number roots z₀ of a polynomial identity r(z, τ, …) ≡ 0:
/// candidates come from a rational specialization of the other symbols and
/// are verified symbolically.
fn rational_constant_roots(r: &RatFun, z: Symbol) -> Vec<Rat> {
    let num = &r.num;
    if num.is_zero() {
        return Vec::new();
    }
    let others: Vec<Symbol> = num.vars.iter().filter(|s| *s != z).collect();
    let deg_z = num.degree_in(z) as usize;
    'samples: for base in [2i64, 3, 5, 7, 11, 13] {
        let mut specialized = num.clone();
        for (i, s) in others.iter().enumerate() {
            specialized = specialized.subst(*s, &MPoly::constant(rat_i(base + i as i64)));
        }
        if specialized.degree_in(z) as usize != deg_z {
            continue 'samples;
        }
        let coeffs = specialized.coeffs_in(z);
        let mut den_lcm = BigInt::one();
        for c in &coeffs {
            if let Some(q) = c.as_constant() {
                den_lcm = den_lcm.lcm(q.denom());
            } else {
                continue 'samples;
            }
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| {
                let q = c.as_constant().unwrap();
                q.numer() * (&den_lcm / q.denom())
            })
            .collect();
        let candidates = rational_roots(&ints);
        let mut verified = Vec::new();
        for cand in candidates {
            let at = num.subst(z, &MPoly::constant(cand.clone()));
            if at.is_zero() {
                verified.push(cand);
            }
        }
        return verified;
    }
    Vec::new()
}

/// Split N/D (deg N < deg D) into per-factor numerators over the squarefree
/// decomposition D = Π pᵢ^{mᵢ}: Σ Aᵢ/pᵢ^{mᵢ} = N/D.
fn partial_fractions(
    n_poly: &UPoly,
    d_poly: &UPoly,
    dec: &[(UPoly, usize)],
) -> Result<Vec<(UPoly, UPoly, usize)>> {
    let mut out = Vec::new();
    for (p, m) in dec {
        let f = p.pow(*m);
        let g = d_poly.divrem(&f)?.0;
        // 1 = s·f + t·g  ⇒  N/D = N·s/g + N·t/f
        let (one, _, t) = f.xgcd(&g);
        if one.degree() != 0 || one.is_zero() {
            return Err(Error::Internal("squarefree factors not coprime".into()));
        }
        let a = n_poly.mul(&t).rem(&f)?;
        out.push((a, p.clone(), *m));
    }
    Ok(out)
}

/// Hyperexponential solving over a rational or exponential tower: decompose
/// φ̃ by squarefree partial fractions, peel multiple poles into the Hermite
/// part, extract rational factor exponents from the residues, and classify
/// the exponents. The returned solution always satisfies verify_solution.
pub fn hyperexponential_solve(phi: &FieldElem, tower: &FieldTower) -> Result<HyperexpSolution> {
    let (gen, rate): (Symbol, Option<Rat>) = match &tower.generator {
        Generator::Rational => (Symbol::new("x"), None),
        Generator::Exponential { sym, rate } => (*sym, Some(rate.clone())),
        Generator::Weierstrass => {
            return Err(Error::UnsupportedTower(
                "weierstrass towers need elliptic functions beyond hyperexponential closed forms"
                    .into(),
            ))
        }
    };
    let num = UPoly::from_ratfun(&RatFun::from_mpoly(phi.val.num.clone()), gen)
        .map_err(|_| Error::Internal("numerator not polynomial in the generator".into()))?;
    let den = UPoly::from_ratfun(&RatFun::from_mpoly(phi.val.den.clone()), gen)
        .map_err(|_| Error::Internal("denominator not polynomial in the generator".into()))?;
    let lc_inv = den.lc().inv()?;
    let num = num.scale(&lc_inv);
    let den = den.monic();
    let (mut poly_part, pole_num) = num.divrem(&den)?;
    let dec = den.squarefree_decomposition()?;
    let parts = partial_fractions(&pole_num, &den, &dec)?;

    let mut residual = RatFun::zero();
    let mut factors: Vec<(UPoly, Rat)> = Vec::new();
    let gen_rf = RatFun::var(gen);

    for (a0, p, m0) in parts {
        // poles at t = 0 in an exponential tower are ∂ₓ-eigenvectors:
        // B/t^j = ∂ₓ(−B/(j·rate)·t^(−j)) for every j ≥ 1
        if let Some(r) = &rate {
            if p.degree() == 1 && p.coeff(0).is_zero() {
                let mut a = a0.clone();
                for j in (1..=m0).rev() {
                    let (q, rem) = a.divrem(&p)?;
                    let b = rem.coeff(0);
                    if !b.is_zero() {
                        let scale = RatFun::constant(
                            -Rat::one() / (Rat::from_integer((j as i64).into()) * r.clone()),
                        );
                        let pw = gen_rf.pow(j as i64)?;
                        residual = residual.add(&b.mul(&scale).div(&pw)?);
                    }
                    a = q;
                }
                if !a.is_zero() {
                    return Err(Error::Internal("pole expansion left a polynomial".into()));
                }
                continue;
            }
        }
        // Hermite reduction: subtracting ∂ₓ(h/p^(m−1)) lowers the pole order
        let mut a = a0;
        let mut m = m0;
        let dxp = dx_poly(&p, rate.as_ref());
        while m >= 2 {
            let w = dxp
                .scale(&RatFun::constant(rat_i(-((m as i64) - 1))))
                .rem(&p)?;
            let h = a.rem(&p)?.mul(&w.inv_mod(&p)?).rem(&p)?;
            // a_next = (a + (m−1)·h·∂ₓp)/p − ∂ₓh
            let lifted = a.add(&h.mul(&dxp).scale(&RatFun::constant(rat_i(m as i64 - 1))));
            let (q, rem) = lifted.divrem(&p)?;
            if !rem.is_zero() {
                return Err(Error::Internal("hermite division not exact".into()));
            }
            a = q.sub(&dx_poly(&h, rate.as_ref()));
            m -= 1;
            if !h.is_zero() {
                let pw = p.to_ratfun().pow(m as i64)?;
                residual = residual.add(&h.to_ratfun().div(&pw)?);
            }
        }
        // simple pole; any quotient spills into the polynomial part
        let (spill, mut a) = a.divrem(&p)?;
        poly_part = poly_part.add(&spill);
        if a.is_zero() {
            continue;
        }
        // extract factors q | p carrying a constant rational exponent n
        let mut p_left = p.clone();
        loop {
            if a.is_zero() {
                break;
            }
            if p_left.degree() == 0 {
                return Err(Error::NoHyperexponentialSolution(format!(
                    "nonzero residue left over the trivial factor of {}",
                    p.to_ratfun()
                )));
            }
            let dxp_left = dx_poly(&p_left, rate.as_ref());
            let n_poly = a
                .rem(&p_left)?
                .mul(&dxp_left.rem(&p_left)?.inv_mod(&p_left)?)
                .rem(&p_left)?;
            let n_const = if n_poly.is_constant() {
                n_poly.coeff(0).as_constant()
            } else {
                None
            };
            match n_const {
                Some(n) => {
                    push_factor(&mut factors, &p_left, &n);
                    break;
                }
                None => {
                    // residues differ across irreducible factors of p_left:
                    // split by the rational roots of Res_t(p_left, a − z·∂ₓp_left)
                    let z = Symbol::new("z");
                    let z_rf = RatFun::var(z);
                    let shifted = a.sub(&dxp_left.scale(&z_rf));
                    let res = upoly_resultant(&p_left, &shifted)?;
                    let roots = rational_constant_roots(&res, z);
                    let mut split_any = false;
                    for n in roots {
                        if n.is_zero() {
                            continue;
                        }
                        let q =
                            p_left.gcd(&a.sub(&dxp_left.scale(&RatFun::constant(n.clone()))));
                        if q.degree() == 0 {
                            continue;
                        }
                        push_factor(&mut factors, &q, &n);
                        let cofactor = p_left.divrem(&q)?.0;
                        // remove q's residue contribution and shrink p_left
                        let contrib = dx_poly(&q, rate.as_ref())
                            .mul(&cofactor)
                            .scale(&RatFun::constant(n));
                        a = a.sub(&contrib).rem(&cofactor)?;
                        p_left = cofactor;
                        split_any = true;
                    }
                    if !split_any {
                        return Err(Error::NoHyperexponentialSolution(format!(
                            "non-rational residues over {}",
                            p_left.to_ratfun()
                        )));
                    }
                }
            }
        }
    }

    // the polynomial part
    let exp_rate = match &rate {
        None => {
            // exponent ∫P = a·x + antiderivative of the higher terms
            let a = poly_part.coeff(0);
            for k in 1..=poly_part.degree() {
                let c = poly_part.coeff(k);
                if c.is_zero() {
                    continue;
                }
                let scaled = c.scale(&(Rat::one() / Rat::from_integer(((k + 1) as i64).into())));
                residual = residual.add(&scaled.mul(&gen_rf.pow(k as i64 + 1)?));
            }
            a
        }
        Some(r) => {
            if poly_part.degree() > 0 {
                return Err(Error::NoHyperexponentialSolution(
                    "polynomial part of positive degree over an exponential tower".into(),
                ));
            }
            // factor log-derivatives contribute the constants rate·n·deg(p)
            let mut c = poly_part.coeff(0);
            for (p, n) in &factors {
                let shift = Rat::from_integer((p.degree() as i64).into()) * r.clone() * n.clone();
                c = c.sub(&RatFun::constant(shift));
            }
            // fold an integer power of the generator back into the factors
            if let Some(cv) = c.as_constant() {
                let k = cv.clone() / r.clone();
                if !cv.is_zero() && is_integer(&k) {
                    push_factor(&mut factors, &UPoly::monomial(gen, RatFun::one(), 1), &k);
                    c = RatFun::zero();
                }
            }
            c
        }
    };

    let mut classification = ExpClass::Integer;
    for (_, n) in &factors {
        if !is_integer(n) {
            classification = ExpClass::Radical;
        }
    }
    if let (Some(cv), Some(r)) = (exp_rate.as_constant(), rate.as_ref()) {
        // a numeric exponent on the bare exponential means t^(a/rate)
        let k = cv.clone() / r.clone();
        if !cv.is_zero() && !is_integer(&k) {
            classification = ExpClass::Radical;
        }
    }

    let sol = HyperexpSolution {
        tower: tower.clone(),
        exp_rate,
        factors,
        residual_exponent: residual,
        classification,
    };
    if !verify_solution(&sol, phi) {
        return Err(Error::Internal(
            "assembled solution fails its logarithmic-derivative check".into(),
        ));
    }
    Ok(sol)
}

fn push_factor(factors: &mut Vec<(UPoly, Rat)>, p: &UPoly, n: &Rat) {
    // primitive integer-coefficient normalization with a positive leading sign
    let rf = p.to_ratfun();
    let normalized = crate::gcd::normalize(rf.num.clone());
    let p_norm = UPoly::from_ratfun(&RatFun::from_mpoly(normalized), p.var)
        .expect("polynomial stays polynomial");
    factors.push((p_norm, n.clone()));
}

/// Check ∂(assembled)/assembled = φ̃ symbolically.
pub fn verify_solution(sol: &HyperexpSolution, phi: &FieldElem) -> bool {
    let ctx = sol.tower.ctx();
    let ld = sol.log_derivative();
    let lhs = RawFrac::of(&ld);
    let rhs = RawFrac {
        num: phi.val.num.clone(),
        den: phi.val.den.clone(),
    };
    lhs.sub(&rhs).is_zero_in(ctx)
}

/// Substitute a rational value for τ in a one-parameter object.
pub fn specialize_tau(phi_t: &FieldElem, tau0: &Rat) -> Result<FieldElem> {
    phi_t.subst(tau(), &RatFun::constant(tau0.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn upoly_q(cs: &[i64]) -> UPoly {
        UPoly::new(
            Symbol::new("x"),
            cs.iter().map(|&c| RatFun::constant(rat_i(c))).collect(),
        )
    }

    #[test]
    fn resultant_of_coprime_and_sharing() {
        let p = upoly_q(&[-1, 1]); // x - 1
        let q = upoly_q(&[1, 1]); // x + 1
        let r = upoly_resultant(&p, &q).unwrap();
        assert_eq!(r, RatFun::constant(rat_i(2)));
        let shared = upoly_resultant(&p, &p).unwrap();
        assert!(shared.is_zero());
    }

    #[test]
    fn solve_simple_rational() {
        // φ = 2/x + 3  ⇒  Υ = x² e^(3x)
        let tower = FieldTower::rational(&[]);
        let x = tower.var(Symbol::new("x")).unwrap();
        let phi = tower
            .constant(rat_i(2))
            .div(&x)
            .unwrap()
            .add(&tower.constant(rat_i(3)));
        let sol = hyperexponential_solve(&phi, &tower).unwrap();
        assert_eq!(sol.exp_rate, RatFun::constant(rat_i(3)));
        assert_eq!(sol.factors.len(), 1);
        assert_eq!(sol.factors[0].1, rat_i(2));
        assert!(verify_solution(&sol, &phi));
        assert_eq!(sol.classification, ExpClass::Integer);
    }

    #[test]
    fn solve_with_multiple_pole() {
        // φ = 1/x²  ⇒  Υ = e^(−1/x)
        let tower = FieldTower::rational(&[]);
        let x = tower.var(Symbol::new("x")).unwrap();
        let phi = x.mul(&x).inv().unwrap();
        let sol = hyperexponential_solve(&phi, &tower).unwrap();
        assert!(sol.factors.is_empty());
        assert_eq!(
            sol.residual_exponent,
            RatFun::var(Symbol::new("x")).inv().unwrap().neg()
        );
        assert!(verify_solution(&sol, &phi));
    }

    #[test]
    fn solve_exponential_tower() {
        // over w with ∂w = 2w: φ = logder(w + 1) = 2w/(w+1)
        let tower = FieldTower::exponential_w(&[]);
        let w = tower.var(Symbol::new("w")).unwrap();
        let phi = w.scale(&rat_i(2)).div(&w.add(&tower.one())).unwrap();
        let sol = hyperexponential_solve(&phi, &tower).unwrap();
        assert_eq!(sol.factors.len(), 1);
        assert_eq!(sol.factors[0].1, rat_i(1));
        assert!(sol.exp_rate.is_zero());
        assert!(verify_solution(&sol, &phi));
    }

    #[test]
    fn radical_classification() {
        // φ = 1/(2x): Υ = x^(1/2), a radical
        let tower = FieldTower::rational(&[]);
        let x = tower.var(Symbol::new("x")).unwrap();
        let phi = x.scale(&rat_i(2)).inv().unwrap();
        let sol = hyperexponential_solve(&phi, &tower).unwrap();
        assert_eq!(sol.classification, ExpClass::Radical);
        assert_eq!(sol.factors[0].1, rat(1, 2));
    }

    #[test]
    fn irrational_residues_are_rejected() {
        // φ = 1/(x²−2): residues ±1/(2√2) are irrational
        let tower = FieldTower::rational(&[]);
        let x = tower.var(Symbol::new("x")).unwrap();
        let den = x.mul(&x).sub(&tower.constant(rat_i(2)));
        let phi = den.inv().unwrap();
        assert!(matches!(
            hyperexponential_solve(&phi, &tower),
            Err(Error::NoHyperexponentialSolution(_))
        ));
        // equal residues over the same irreducible quadratic succeed
        let phi2 = x.div(&den).unwrap();
        let sol = hyperexponential_solve(&phi2, &tower).unwrap();
        assert_eq!(sol.factors[0].1, rat(1, 2));
        assert_eq!(sol.classification, ExpClass::Radical);
    }
}
