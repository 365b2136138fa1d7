//! Multivariate polynomial gcd via subresultant polynomial remainder
//! sequences with content extraction.
//!
//! This is the engine's hot path: every rational-function normalization
//! lands here. Subresultant PRS keeps the desk-scale degrees of this domain
//! cheap and the code simple; a modular gcd can be swapped in behind this
//! interface if profiles ever demand it.

use crate::mpoly::MPoly;
use crate::rat::Rat;
use crate::symbol::Symbol;
use num_traits::{One, Signed};

#[doc(hidden)]
pub static GCD_CALLS: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);

/// Primitive, positive-leading-coefficient gcd. gcd(0, p) = normalized p.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    GCD_CALLS.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // pick the main variable: present in both, smallest max degree; if the
    // used variables are disjoint the gcd is the gcd of contents (recursed).
    let main = pick_main_var(a, b);
    let main = match main {
        Some(v) => v,
        None => {
            // no shared variable: only a constant can divide both
            return MPoly::one();
        }
    };
    let ca = poly_content(a, main);
    let cb = poly_content(b, main);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let cont_gcd = mpoly_gcd(&ca, &cb);
    let prim_gcd = prs_gcd(&pa, &pb, main);
    normalize(cont_gcd.mul(&prim_gcd))
}

/// Make the polynomial integer-primitive with positive leading coefficient.
pub fn normalize(p: MPoly) -> MPoly {
    if p.is_zero() {
        return p;
    }
    let mut c = p.content();
    if p.leading_coeff().is_negative() {
        c = -c;
    }
    p.scale(&(Rat::one() / c))
}

fn pick_main_var(a: &MPoly, b: &MPoly) -> Option<Symbol> {
    let mut best: Option<(u32, Symbol)> = None;
    for v in a.used_vars() {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da > 0 && db > 0 {
            let key = da.max(db);
            if best.map(|(k, _)| key < k).unwrap_or(true) {
                best = Some((key, v));
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Content of p viewed as a univariate polynomial in `main`.
fn poly_content(p: &MPoly, main: Symbol) -> MPoly {
    let coeffs = p.coeffs_in(main);
    let mut g = MPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = mpoly_gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &MPoly, main: Symbol) -> MPoly {
    let c = poly_content(p, main);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of a by b in `main`: lc(b)^(da-db+1) * a ≡ prem mod b.
fn pseudo_rem(a: &MPoly, b: &MPoly, main: Symbol) -> MPoly {
    let db = b.degree_in(main);
    let bc = b.coeffs_in(main);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    let mut dr = r.degree_in(main);
    let da = dr;
    if da < db {
        // prem(a, b) = lc(b)^(da-db+1) a, exponent <= 0: callers never need it
        return a.clone();
    }
    let mut steps = (da - db + 1) as i64;
    while !r.is_zero() && dr >= db {
        let rc = r.coeffs_in(main);
        let lr = rc[dr as usize].clone();
        // r := lb*r - lr*x^(dr-db)*b
        let shift = MPoly::var_pow(main, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
        steps -= 1;
        if r.is_zero() {
            break;
        }
        dr = r.degree_in(main);
    }
    // pad remaining multiplications so the subresultant bookkeeping stays exact
    while steps > 0 {
        r = r.mul(&lb);
        steps -= 1;
    }
    r
}

fn lc_in(p: &MPoly, main: Symbol) -> MPoly {
    let d = p.degree_in(main) as usize;
    p.coeffs_in(main)[d].clone()
}

/// Subresultant PRS gcd of two primitive polynomials in `main`.
fn prs_gcd(a: &MPoly, b: &MPoly, main: Symbol) -> MPoly {
    let (mut r_prev, mut r) = if a.degree_in(main) >= b.degree_in(main) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut delta = r_prev.degree_in(main) - r.degree_in(main);
    let mut beta = if delta % 2 == 0 {
        MPoly::constant(crate::rat::rat_i(-1))
    } else {
        MPoly::one()
    };
    let mut psi = MPoly::constant(crate::rat::rat_i(-1));
    loop {
        let rem = pseudo_rem(&r_prev, &r, main);
        if rem.is_zero() {
            return primitive_part(&r, main);
        }
        let r_next = rem.exact_div(&beta).expect("subresultant division is exact");
        if r_next.degree_in(main) == 0 {
            return MPoly::one();
        }
        let neg_lc = lc_in(&r, main).neg();
        psi = if delta == 0 {
            psi
        } else if delta == 1 {
            neg_lc.clone()
        } else {
            neg_lc
                .pow(delta)
                .exact_div(&psi.pow(delta - 1))
                .expect("psi update divides")
        };
        let new_delta = r.degree_in(main) - r_next.degree_in(main);
        beta = neg_lc.mul(&psi.pow(new_delta));
        r_prev = r;
        r = r_next;
        delta = new_delta;
    }
}

/// lcm built from the gcd; normalized like `normalize`.
pub fn mpoly_lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero();
    }
    let g = mpoly_gcd(a, b);
    normalize(a.mul(b).exact_div(&g).expect("gcd divides product"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Symbol;

    fn x() -> MPoly {
        MPoly::var(Symbol::new("x"))
    }
    fn y() -> MPoly {
        MPoly::var(Symbol::new("lambda"))
    }

    #[test]
    fn univariate_gcd() {
        // gcd((x^2-1)(x+2), (x-1)(x+2)) = (x-1)(x+2)? no: x^2-1 = (x-1)(x+1)
        let p = x().pow(2).sub(&MPoly::one()).mul(&x().add(&MPoly::constant(crate::rat::rat_i(2))));
        let q = x()
            .sub(&MPoly::one())
            .mul(&x().add(&MPoly::constant(crate::rat::rat_i(2))));
        let g = mpoly_gcd(&p, &q);
        assert_eq!(g, q);
    }

    #[test]
    fn multivariate_gcd() {
        // gcd((x+y)^2 (x-y), (x+y)(x-y)^2) = (x+y)(x-y) = x^2 - y^2
        let s = x().add(&y());
        let d = x().sub(&y());
        let p = s.pow(2).mul(&d);
        let q = s.mul(&d.pow(2));
        let g = mpoly_gcd(&p, &q);
        assert_eq!(g, s.mul(&d));
    }

    #[test]
    fn coprime_returns_one() {
        let g = mpoly_gcd(&x().add(&MPoly::one()), &x().sub(&MPoly::one()));
        assert!(g.is_one());
        let g2 = mpoly_gcd(&x(), &y());
        assert!(g2.is_one());
    }

    #[test]
    fn content_normalization() {
        let p = x().scale(&crate::rat::rat(4, 3));
        assert_eq!(normalize(p), x());
        let q = x().scale(&crate::rat::rat_i(-2));
        assert_eq!(normalize(q), x());
    }
}
