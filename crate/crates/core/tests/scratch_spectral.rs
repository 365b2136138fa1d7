use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::spectral::*;

#[test]
fn levels_and_curves_smoke() {
    let mut h = HierarchyCache::new();
    let t_all = std::time::Instant::now();
    for (fam, smax) in [(Family::Rational, 4), (Family::RosenMorse, 3), (Family::Elliptic, 3)] {
        for s in 1..=smax {
            let pot = potential(fam, s).unwrap();
            let t0 = std::time::Instant::now();
            let level = kdv_level(&mut h, &pot, 8).unwrap();
            println!("{:?} s={} -> level {} cbar {:?} ({:?})", fam, s, level.s, level.cbar.iter().map(|c| c.to_string()).collect::<Vec<_>>(), t0.elapsed());
            assert_eq!(level.s, s);
            let t1 = std::time::Instant::now();
            let curve = spectral_curve(&mut h, &pot, &level).unwrap();
            println!("  f = {}   ({:?})", curve, t1.elapsed());
        }
    }
    println!("total {:?}", t_all.elapsed());
}
