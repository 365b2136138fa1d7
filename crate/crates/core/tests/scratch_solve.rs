use kdvspec_core::families::{potential, Family};
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::paramsolve::*;
use kdvspec_core::spectral::*;

#[test]
fn pipeline_to_solutions() {
    let mut h = HierarchyCache::new();
    let t_all = std::time::Instant::now();
    for (fam, smax) in [(Family::Rational, 4), (Family::RosenMorse, 3)] {
        for s in 1..=smax {
            let pot = potential(fam, s).unwrap();
            let level = kdv_level(&mut h, &pot, 8).unwrap();
            let curve = spectral_curve(&mut h, &pot, &level).unwrap();
            let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
            let genus = hyperelliptic_genus(&curve).unwrap();
            let par = parametrize_curve(&curve, false).unwrap();
            println!("{:?} s={} genus {} aleph = {}", fam, s, genus, par);
            let phit = substitute_param(&fac.phi_plus, &par, &pot).unwrap();
            println!("  phit = {}", phit);
            assert!(riccati_check_param(&phit, &pot, &par), "riccati param {:?} {}", fam, s);
            assert!(factorization_check_param(&phit, &pot, &par).unwrap());
            // solve: Rosen-Morse over w = e^{2x}, rational directly
            let (tower, phi_conv) = if fam == Family::RosenMorse {
                to_w_tower(&phit).expect("even element")
            } else {
                (pot.tower.clone(), phit.clone())
            };
            let sol = hyperexponential_solve(&phi_conv, &tower).unwrap();
            println!("  Upsilon = {}", sol.assembled());
            assert!(verify_solution(&sol, &phi_conv));
        }
    }
    // elliptic s=1: parametrization + riccati, solve returns UnsupportedTower
    let pot = potential(Family::Elliptic, 1).unwrap();
    let level = kdv_level(&mut h, &pot, 8).unwrap();
    let curve = spectral_curve(&mut h, &pot, &level).unwrap();
    let fac = factor_on_curve(&mut h, &pot, &level, &curve).unwrap();
    let par = parametrize_curve(&curve, false).unwrap();
    println!("Elliptic s=1 aleph = {}", par);
    let phit = substitute_param(&fac.phi_plus, &par, &pot).unwrap();
    println!("  phit = {}", phit);
    assert!(riccati_check_param(&phit, &pot, &par));
    assert!(factorization_check_param(&phit, &pot, &par).unwrap());
    let target = param_tower(&par, &pot);
    assert!(matches!(hyperexponential_solve(&phit, &target), Err(kdvspec_core::Error::UnsupportedTower(_))));
    // elliptic s=2 has genus 2: unsupported shape
    let pot2 = potential(Family::Elliptic, 2).unwrap();
    let level2 = kdv_level(&mut h, &pot2, 8).unwrap();
    let curve2 = spectral_curve(&mut h, &pot2, &level2).unwrap();
    assert_eq!(hyperelliptic_genus(&curve2).unwrap(), 2);
    assert!(matches!(parametrize_curve(&curve2, false), Err(kdvspec_core::Error::UnsupportedShape(_))));
    println!("total {:?}", t_all.elapsed());
}
