use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::spectral::*;
use kdvspec_core::gcd::mpoly_gcd;
use kdvspec_core::ratfun::RatFun;
use kdvspec_core::ctx::Scalar;

#[test]
fn profile_gcd() {
    let mut h = HierarchyCache::new();
    let pot = potential(Family::RosenMorse, 1).unwrap();
    let level = kdv_level(&mut h, &pot, 8).unwrap();
    let curve = spectral_curve(&mut h, &pot, &level).unwrap();
    let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
    let phi = &fac.phi_plus;
    let n2 = phi.val.num.mul(&phi.val.num);
    let d2 = phi.val.den.mul(&phi.val.den);
    println!("n2 {} terms, d2 {} terms", n2.terms.len(), d2.terms.len());
    let t = std::time::Instant::now(); let g = mpoly_gcd(&n2, &d2); println!("gcd(n2,d2): {:?} -> {} terms", t.elapsed(), g.terms.len());
    let t = std::time::Instant::now(); let rf = RatFun::new(n2.clone(), d2.clone()).unwrap(); println!("RatFun::new: {:?}", t.elapsed());
    let cctx = curve_ctx(&pot, &curve);
    let t = std::time::Instant::now(); let red_n = cctx.reduce_mpoly(&rf.num); println!("reduce num: {:?} ({} terms)", t.elapsed(), red_n.terms.len());
    let t = std::time::Instant::now(); let _s = Scalar::new(cctx.clone(), rf.clone()); println!("Scalar::new: {:?}", t.elapsed());
    let t = std::time::Instant::now(); let g2 = mpoly_gcd(&red_n, &rf.den); println!("gcd(reduced num, den): {:?} -> {} terms", t.elapsed(), g2.terms.len());
}

#[test]
fn count_gcd_calls() {
    use std::sync::atomic::Ordering;
    let mut h = HierarchyCache::new();
    let pot = potential(Family::RosenMorse, 1).unwrap();
    let level = kdv_level(&mut h, &pot, 8).unwrap();
    let curve = spectral_curve(&mut h, &pot, &level).unwrap();
    let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
    let phi = &fac.phi_plus;
    let n2 = phi.val.num.mul(&phi.val.num);
    let d2 = phi.val.den.mul(&phi.val.den);
    kdvspec_core::gcd::GCD_CALLS.store(0, Ordering::Relaxed);
    let t = std::time::Instant::now();
    let _ = mpoly_gcd(&n2, &d2);
    println!("gcd calls: {} in {:?}", kdvspec_core::gcd::GCD_CALLS.load(Ordering::Relaxed), t.elapsed());
}
