//! Symbolic matrices and exact determinants.
//!
//! The default determinant clears row denominators, runs fraction-free
//! Bareiss elimination over polynomials and divides the cleared content
//! back. Cofactor expansion with memoized minors is kept as an independent
//! cross-check route for the test suites.

use crate::error::{Error, Result};
use crate::gcd::mpoly_lcm;
use crate::mpoly::MPoly;
use crate::ratfun::RatFun;
use crate::symbol::VarSet;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    pub rows: usize,
    pub cols: usize,
    /// row-major entries in one shared variable universe
    pub entries: Vec<RatFun>,
}

impl SymMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFun>) -> SymMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        SymMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(n: usize) -> SymMatrix {
        let mut entries = vec![RatFun::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = RatFun::one();
        }
        SymMatrix::new(n, n, entries)
    }

    pub fn at(&self, r: usize, c: usize) -> &RatFun {
        &self.entries[r * self.cols + c]
    }

    pub fn universe(&self) -> VarSet {
        let mut u = VarSet::empty();
        for e in &self.entries {
            u = u.union(&e.used_vars());
        }
        u
    }

    /// Submatrix with the listed columns removed.
    pub fn remove_cols(&self, remove: &[usize]) -> SymMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !remove.contains(c)).collect();
        let mut entries = Vec::with_capacity(self.rows * keep.len());
        for r in 0..self.rows {
            for &c in &keep {
                entries.push(self.at(r, c).clone());
            }
        }
        SymMatrix::new(self.rows, keep.len(), entries)
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn det_fraction_free(m: &SymMatrix) -> Result<RatFun> {
    if m.rows != m.cols {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFun::one());
    }
    // clear row denominators; track the cleared content
    let mut cleared: Vec<Vec<MPoly>> = Vec::with_capacity(n);
    let mut content = MPoly::one();
    for r in 0..n {
        let mut l = MPoly::one();
        for c in 0..n {
            l = mpoly_lcm(&l, &m.at(r, c).den);
        }
        let row: Vec<MPoly> = (0..n)
            .map(|c| {
                let e = m.at(r, c);
                e.num
                    .mul(&l.exact_div(&e.den).expect("lcm divides"))
            })
            .collect();
        content = content.mul(&l);
        cleared.push(row);
    }
    let det_poly = bareiss(cleared)?;
    RatFun::new(det_poly, content)
}

fn bareiss(mut a: Vec<Vec<MPoly>>) -> Result<MPoly> {
    let n = a.len();
    let mut sign = 1i64;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // find a pivot below and swap
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(MPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t
                    .exact_div(&prev)
                    .ok_or_else(|| Error::Internal("bareiss division not exact".into()))?;
            }
        }
        for i in k + 1..n {
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det = det.neg();
    }
    Ok(det)
}

/// Independent determinant route: cofactor expansion over the first row with
/// memoized minors, entirely in rational-function arithmetic.
pub fn det_cofactor(m: &SymMatrix) -> Result<RatFun> {
    if m.rows != m.cols {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(RatFun::one());
    }
    let mut memo: HashMap<(usize, u64), RatFun> = HashMap::new();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(minor(m, 0, full, &mut memo))
}

fn minor(m: &SymMatrix, row: usize, cols: u64, memo: &mut HashMap<(usize, u64), RatFun>) -> RatFun {
    if cols == 0 {
        return RatFun::one();
    }
    if let Some(v) = memo.get(&(row, cols)) {
        return v.clone();
    }
    let mut acc = RatFun::zero();
    let mut sign = 1i64;
    for c in 0..m.cols {
        if cols & (1u64 << c) == 0 {
            continue;
        }
        let e = m.at(row, c);
        if !e.is_zero() {
            let sub = minor(m, row + 1, cols & !(1u64 << c), memo);
            let term = e.mul(&sub);
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        sign = -sign;
    }
    memo.insert((row, cols), acc.clone());
    acc
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;
    use crate::symbol::Symbol;

    fn rf(p: MPoly) -> RatFun {
        RatFun::from_mpoly(p)
    }

    #[test]
    fn identity_and_cofactor_agree() {
        let m = SymMatrix::identity(3);
        assert!(det_fraction_free(&m).unwrap().is_one());
        assert!(det_cofactor(&m).unwrap().is_one());
    }

    #[test]
    fn two_by_two_with_symbols() {
        // [[0, u - lambda], [-1, 0]] -> u - lambda
        let u = MPoly::var(Symbol::u_jet(0));
        let lam = MPoly::var(Symbol::new("lambda"));
        let m = SymMatrix::new(
            2,
            2,
            vec![
                RatFun::zero(),
                rf(u.sub(&lam)),
                rf(MPoly::constant(rat_i(-1))),
                RatFun::zero(),
            ],
        );
        let d = det_fraction_free(&m).unwrap();
        assert_eq!(d, rf(u.sub(&lam)));
        assert_eq!(d, det_cofactor(&m).unwrap());
    }

    #[test]
    fn nonsquare_rejected() {
        let m = SymMatrix::new(1, 2, vec![RatFun::zero(), RatFun::zero()]);
        assert!(matches!(
            det_fraction_free(&m),
            Err(Error::NonSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn rational_entries() {
        let x = MPoly::var(Symbol::new("x"));
        // [[1/x, 1], [1, x]] -> 1 - 1 = 0
        let m = SymMatrix::new(
            2,
            2,
            vec![
                RatFun::new(MPoly::one(), x.clone()).unwrap(),
                RatFun::one(),
                RatFun::one(),
                rf(x.clone()),
            ],
        );
        assert!(det_fraction_free(&m).unwrap().is_zero());
        assert!(det_cofactor(&m).unwrap().is_zero());
    }
}
