use kdvspec_core::diffop::{diff_resultant, subresultant_l1, sylvester_matrix, DiffOp};
use kdvspec_core::diffpoly::DiffPoly;
use kdvspec_core::hierarchy::HierarchyCache;
use kdvspec_core::ctx::Scalar;
use kdvspec_core::symbol::Symbol;

#[test]
fn ex43_resultant() {
    let mut h = HierarchyCache::new();
    let ctx = DiffPoly::ctx();
    let lam = Scalar::var(&ctx, Symbol::new("lambda"));
    let mu = Scalar::var(&ctx, Symbol::new("mu"));
    let l_min_lam = h.l_op().sub(&DiffOp::scalar(lam.clone())).unwrap();
    let p3_min_mu = h.p_hat(1).unwrap().sub(&DiffOp::scalar(mu.clone())).unwrap();
    let s0 = sylvester_matrix(&l_min_lam, &p3_min_mu, 0).unwrap();
    println!("S0 =\n{}", s0);
    let res = diff_resultant(&l_min_lam, &p3_min_mu).unwrap();
    println!("dRes = {}", res);
    let (d0, d1) = subresultant_l1(&l_min_lam, &p3_min_mu).unwrap();
    println!("det S1^0 = {}", d0);
    println!("det S1^1 = {}", d1);
    let s1 = sylvester_matrix(&l_min_lam, &p3_min_mu, 1).unwrap();
    println!("S1 ({}x{}) =\n{}", s1.rows, s1.cols, s1);
}
