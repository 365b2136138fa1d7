//! The KdV hierarchy: kdv_n and v_n differential polynomials, the odd-order
//! operators P_{2n+1}, their extended families with free constants c_i, and
//! the Lax identity as a built-in verification.

use crate::ctx::Scalar;
use crate::diffop::{op_commutator, op_mul, DiffOp};
use crate::diffpoly::{dp_derive, dp_integrate, DiffPoly};
use crate::error::Result;
use crate::rat::rat;

pub struct HierarchyCache {
    kdv: Vec<DiffPoly>,
    v: Vec<DiffPoly>,
    p_odd: Vec<DiffOp>,
}

impl Default for HierarchyCache {
    fn default() -> Self {
        Self::new()
    }
}

impl HierarchyCache {
    pub fn new() -> HierarchyCache {
        HierarchyCache {
            kdv: vec![DiffPoly::u(1)],
            v: vec![DiffPoly::one()],
            p_odd: vec![DiffOp::partial(&DiffPoly::ctx())],
        }
    }

    /// The formal Schrödinger operator L = −∂² + u.
    pub fn l_op(&self) -> DiffOp {
        let ctx = DiffPoly::ctx();
        DiffOp::from_coeffs(
            &ctx,
            vec![
                DiffPoly::u(0).0,
                Scalar::zero(&ctx),
                Scalar::constant(&ctx, rat(-1, 1)),
            ],
        )
    }

    fn extend_kdv(&mut self, n: usize) -> Result<()> {
        while self.kdv.len() <= n {
            let prev = self.kdv.last().unwrap().clone();
            // kdv_{k+1} = -1/4 ∂²(kdv_k) + u·kdv_k + 1/2 u'·∫kdv_k
            let dd = dp_derive(&dp_derive(&prev));
            let int = dp_integrate(&prev)?;
            let next = dd
                .scale(&rat(-1, 4))
                .add(&DiffPoly::u(0).mul(&prev))
                .add(&DiffPoly::u(1).mul(&int).scale(&rat(1, 2)));
            self.kdv.push(next);
        }
        Ok(())
    }

    pub fn kdv_n(&mut self, n: usize) -> Result<DiffPoly> {
        self.extend_kdv(n)?;
        Ok(self.kdv[n].clone())
    }

    /// v_0 = 1 and 2∂(v_{n+1}) = kdv_n, with zero constant of integration.
    pub fn v_n(&mut self, n: usize) -> Result<DiffPoly> {
        while self.v.len() <= n {
            let k = self.kdv_n(self.v.len() - 1)?;
            let next = dp_integrate(&k)?.scale(&rat(1, 2));
            self.v.push(next);
        }
        Ok(self.v[n].clone())
    }

    /// P_1 = ∂ and P_{2n+1} = v_n·∂ − 1/2·∂(v_n) + P_{2n−1}·L; order 2n+1.
    pub fn p_odd(&mut self, n: usize) -> Result<DiffOp> {
        while self.p_odd.len() <= n {
            let k = self.p_odd.len();
            let vk = self.v_n(k)?;
            let ctx = DiffPoly::ctx();
            let head = DiffOp::from_coeffs(
                &ctx,
                vec![dp_derive(&vk).scale(&rat(-1, 2)).0, vk.0],
            );
            let next = head.add(&op_mul(&self.p_odd[k - 1], &self.l_op())?)?;
            self.p_odd.push(next);
        }
        Ok(self.p_odd[n].clone())
    }

    /// Extended family: KdV_n = kdv_n + Σ_{l<n} c_{n−l}·kdv_l.
    pub fn kdv_ext(&mut self, n: usize) -> Result<DiffPoly> {
        let mut acc = self.kdv_n(n)?;
        for l in 0..n {
            let c = DiffPoly::c_sym(n - l);
            acc = acc.add(&c.mul(&self.kdv_n(l)?));
        }
        Ok(acc)
    }

    /// Extended operator: P̂_{2n+1} = P_{2n+1} + Σ_{l<n} c_{n−l}·P_{2l+1}.
    pub fn p_hat(&mut self, n: usize) -> Result<DiffOp> {
        let mut acc = self.p_odd(n)?;
        for l in 0..n {
            let c = DiffPoly::c_sym(n - l).0;
            acc = acc.add(&self.p_odd(l)?.scalar_mul(&c))?;
        }
        Ok(acc)
    }

    /// [P_{2n+1}, L] = kdv_n as a formal operator identity.
    pub fn lax_check(&mut self, n: usize) -> Result<bool> {
        let p = self.p_odd(n)?;
        let comm = op_commutator(&p, &self.l_op())?;
        let expect = DiffOp::scalar(self.kdv_n(n)?.0);
        Ok(comm == expect)
    }

    /// Extended variant: [P̂_{2n+1}, L] = KdV_n.
    pub fn lax_check_ext(&mut self, n: usize) -> Result<bool> {
        let p = self.p_hat(n)?;
        let comm = op_commutator(&p, &self.l_op())?;
        let expect = DiffOp::scalar(self.kdv_ext(n)?.0);
        Ok(comm == expect)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    fn u(k: usize) -> DiffPoly {
        DiffPoly::u(k)
    }

    #[test]
    fn first_kdv_polynomials() {
        let mut h = HierarchyCache::new();
        assert_eq!(h.kdv_n(0).unwrap(), u(1));
        let kdv1 = u(3).scale(&rat(-1, 4)).add(&u(0).mul(&u(1)).scale(&rat(3, 2)));
        assert_eq!(h.kdv_n(1).unwrap(), kdv1);
        let kdv2 = u(5)
            .scale(&rat(1, 16))
            .add(&u(0).mul(&u(3)).scale(&rat(-5, 8)))
            .add(&u(1).mul(&u(2)).scale(&rat(-5, 4)))
            .add(&u(0).mul(&u(0)).mul(&u(1)).scale(&rat(15, 8)));
        assert_eq!(h.kdv_n(2).unwrap(), kdv2);
    }

    #[test]
    fn v_polynomials_and_defining_identity() {
        let mut h = HierarchyCache::new();
        assert_eq!(h.v_n(1).unwrap(), u(0).scale(&rat(1, 2)));
        let v2 = u(0).mul(&u(0)).scale(&rat(3, 8)).add(&u(2).scale(&rat(-1, 8)));
        assert_eq!(h.v_n(2).unwrap(), v2);
        // 2∂(v_{n+1}) = kdv_n for all cached n
        for n in 0..4 {
            let lhs = dp_derive(&h.v_n(n + 1).unwrap()).scale(&rat_i(2));
            assert_eq!(lhs, h.kdv_n(n).unwrap());
        }
    }

    #[test]
    fn p3_and_p5_match_recursion() {
        let mut h = HierarchyCache::new();
        // P3 = -∂³ + 3/2 u ∂ + 3/4 u'
        let p3 = h.p_odd(1).unwrap();
        assert_eq!(p3.order(), Some(3));
        assert_eq!(p3.coeff(3), DiffPoly::constant(rat_i(-1)).0);
        assert_eq!(p3.coeff(2), DiffPoly::zero().0);
        assert_eq!(p3.coeff(1), u(0).scale(&rat(3, 2)).0);
        assert_eq!(p3.coeff(0), u(1).scale(&rat(3, 4)).0);
        // P5 = ∂⁵ - 5/2 u ∂³ - 15/4 u' ∂² + (15/8 u² - 25/8 u'') ∂ - 15/16 u''' + 15/8 u u'
        let p5 = h.p_odd(2).unwrap();
        assert_eq!(p5.coeff(5), DiffPoly::constant(rat_i(1)).0);
        assert_eq!(p5.coeff(4), DiffPoly::zero().0);
        assert_eq!(p5.coeff(3), u(0).scale(&rat(-5, 2)).0);
        assert_eq!(p5.coeff(2), u(1).scale(&rat(-15, 4)).0);
        assert_eq!(
            p5.coeff(1),
            u(0).mul(&u(0)).scale(&rat(15, 8)).add(&u(2).scale(&rat(-25, 8))).0
        );
        assert_eq!(
            p5.coeff(0),
            u(3).scale(&rat(-15, 16)).add(&u(0).mul(&u(1)).scale(&rat(15, 8))).0
        );
    }

    #[test]
    fn lax_identities() {
        let mut h = HierarchyCache::new();
        // [P1, L] = u' = kdv_0
        assert!(h.lax_check(0).unwrap());
        // [P3, L] = kdv_1
        assert!(h.lax_check(1).unwrap());
        assert!(h.lax_check(2).unwrap());
    }
}
