//! Arbitrary-precision rationals: the coefficient field of everything.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Canonical rational: reduced, positive denominator, zero is 0/1.
/// `BigRational` maintains exactly this invariant.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// gcd normalized to be nonnegative; gcd(0, 0) = 0.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    // gcd(p/q, r/s) = gcd(p, r) / lcm(q, s)
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat::new(num, den)
}

/// Exact square root when the rational is a perfect square.
pub fn rat_sqrt(a: &Rat) -> Option<Rat> {
    if a.is_negative() {
        return None;
    }
    if a.is_zero() {
        return Some(Rat::zero());
    }
    let ns = a.numer().sqrt();
    let ds = a.denom().sqrt();
    if &(&ns * &ns) == a.numer() && &(&ds * &ds) == a.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

pub fn is_integer(a: &Rat) -> bool {
    a.denom().is_one()
}

/// Rational roots of an integer-coefficient polynomial given as `coeffs[i]`
/// for power i. Uses the rational root theorem on the primitive part.
pub fn rational_roots(coeffs: &[BigInt]) -> Vec<Rat> {
    let mut cs: Vec<BigInt> = coeffs.to_vec();
    while cs.last().map(|c| c.is_zero()).unwrap_or(false) {
        cs.pop();
    }
    if cs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // factor out roots at zero
    let mut shift = 0;
    while cs[shift].is_zero() {
        shift += 1;
    }
    if shift > 0 {
        roots.push(Rat::zero());
        cs.drain(..shift);
    }
    if cs.len() <= 1 {
        return roots;
    }
    let lead = cs.last().unwrap().clone();
    let tail = cs[0].clone();
    let eval = |r: &Rat, cs: &[BigInt]| -> bool {
        let mut acc = Rat::zero();
        for c in cs.iter().rev() {
            acc = acc * r + Rat::from_integer(c.clone());
        }
        acc.is_zero()
    };
    for p in divisors(&tail) {
        for q in divisors(&lead) {
            for sgn in [1i64, -1] {
                let cand = Rat::new(&p * BigInt::from(sgn), q.clone());
                if roots.contains(&cand) {
                    continue;
                }
                if eval(&cand, &cs) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    // trial division; desk-scale coefficients only
    let mut divs = vec![BigInt::one()];
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            let mut powers = Vec::new();
            while (&m % &p).is_zero() {
                m /= &p;
                powers.push(p.clone());
            }
            let old = divs.clone();
            let mut acc = BigInt::one();
            for _ in powers {
                acc *= &p;
                for d in &old {
                    divs.push(d * &acc);
                }
            }
        }
        p += 1;
        if p.bits() > 24 {
            break; // give up on huge prime factors; callers verify candidates anyway
        }
    }
    if m > BigInt::one() {
        let old = divs.clone();
        for d in &old {
            divs.push(d * &m);
        }
    }
    divs.sort();
    divs.dedup();
    divs
}

pub fn bigint_sign(n: &BigInt) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_sqrt() {
        assert_eq!(rat_gcd(&rat(4, 3), &rat(2, 9)), rat(2, 9));
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
    }

    #[test]
    fn rational_root_search() {
        // (x - 2)(2x + 3) = 2x^2 - x - 6
        let cs = vec![BigInt::from(-6), BigInt::from(-1), BigInt::from(2)];
        let mut r = rational_roots(&cs);
        r.sort();
        assert_eq!(r, vec![rat(-3, 2), rat_i(2)]);
    }
}
