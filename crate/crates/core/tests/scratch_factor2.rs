use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::spectral::*;

fn one(fam: Family, s: usize) {
    let mut h = HierarchyCache::new();
    let pot = potential(fam, s).unwrap();
    let level = kdv_level(&mut h, &pot, 8).unwrap();
    let curve = spectral_curve(&mut h, &pot, &level).unwrap();
    let t0 = std::time::Instant::now();
    let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
    println!("{:?} s={} factor: {:?}", fam, s, t0.elapsed());
    let cctx = curve_ctx(&pot, &curve);
    let t1 = std::time::Instant::now();
    assert!(riccati_check(&fac.phi_plus, &pot, &cctx));
    println!("  riccati: {:?}", t1.elapsed());
    let t2 = std::time::Instant::now();
    let (w, s2) = solution_identities(&fac, &pot, &curve).unwrap();
    println!("  identities: {:?} {} {}", t2.elapsed(), w, s2);
}

#[test] fn rat3() { one(Family::Rational, 3); }
#[test] fn rat4() { one(Family::Rational, 4); }
#[test] fn rm2() { one(Family::RosenMorse, 2); }
#[test] fn ell3() { one(Family::Elliptic, 3); }

#[test] fn rm3() { one(Family::RosenMorse, 3); }
