use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::spectral::*;

#[test]
fn profile_rm1() {
    let mut h = HierarchyCache::new();
    let pot = potential(Family::RosenMorse, 1).unwrap();
    let level = kdv_level(&mut h, &pot, 8).unwrap();
    let curve = spectral_curve(&mut h, &pot, &level).unwrap();
    let t0 = std::time::Instant::now();
    let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
    println!("factor: {:?}", t0.elapsed());
    let cctx = curve_ctx(&pot, &curve);
    let t1 = std::time::Instant::now();
    let r1 = riccati_check(&fac.phi_plus, &pot, &cctx);
    println!("riccati+: {:?} -> {}", t1.elapsed(), r1);
    let t2 = std::time::Instant::now();
    let (w, s2) = solution_identities(&fac, &pot, &curve).unwrap();
    println!("identities: {:?} -> {} {}", t2.elapsed(), w, s2);
}
