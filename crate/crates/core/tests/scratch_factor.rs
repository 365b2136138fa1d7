use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::spectral::*;

#[test]
fn factors_all() {
    let mut h = HierarchyCache::new();
    let t_all = std::time::Instant::now();
    for (fam, smax) in [(Family::Rational, 4), (Family::RosenMorse, 3), (Family::Elliptic, 3)] {
        for s in 1..=smax {
            let pot = potential(fam, s).unwrap();
            let level = kdv_level(&mut h, &pot, 8).unwrap();
            let curve = spectral_curve(&mut h, &pot, &level).unwrap();
            let t0 = std::time::Instant::now();
            let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
            let cctx = curve_ctx(&pot, &curve);
            assert!(riccati_check(&fac.phi_plus, &pot, &cctx), "riccati+ {:?} {}", fam, s);
            assert!(riccati_check(&fac.phi_minus, &pot, &cctx), "riccati- {:?} {}", fam, s);
            let (w, s2) = solution_identities(&fac, &pot, &curve).unwrap();
            assert!(w && s2, "identities {:?} {}", fam, s);
            println!("{:?} s={}: ok ({:?})", fam, s, t0.elapsed());
            if fam == Family::Elliptic && s == 3 {
                println!("  phi+ = {}", fac.phi_plus);
                println!("  alpha = {}", fac.alpha);
                println!("  phi2 = {}", fac.phi2);
            }
        }
    }
    println!("total {:?}", t_all.elapsed());
}
