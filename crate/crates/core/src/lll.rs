//! Exact LLL reduction for integer lattices under an integral quadratic form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intmat::IMatrix;

fn inner(x: &[i128], y: &[i128], gram: &IMatrix) -> BigInt {
    let gy = gram.mul_vec(y);
    x.iter().zip(&gy).map(|(&a, &b)| BigInt::from(a) * BigInt::from(b)).sum()
}

fn gram_schmidt(basis: &[Vec<i128>], gram: &IMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = basis.len();
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut bstar: Vec<BigRational> = Vec::with_capacity(k);
    // r[i][j] = <b_i, b*_j>, computed without forming b*
    let mut r = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..=i {
            let mut v = BigRational::from_integer(inner(&basis[i], &basis[j], gram));
            for l in 0..j {
                v -= &mu[j][l] * &r[i][l];
            }
            r[i][j] = v.clone();
            if j < i {
                mu[i][j] = if bstar[j].is_zero() { BigRational::zero() } else { v / &bstar[j] };
            } else {
                bstar.push(v);
            }
        }
    }
    (mu, bstar)
}

/// LLL-reduce linearly independent `basis` vectors (δ = 3/4) with respect
/// to `x ↦ xᵀ G x`. `G` must be positive definite on their span.
pub fn lll_reduce(mut basis: Vec<Vec<i128>>, gram: &IMatrix) -> Vec<Vec<i128>> {
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let k = basis.len();
    if k <= 1 {
        return basis;
    }
    let mut i = 1;
    let (mut mu, mut bstar) = gram_schmidt(&basis, gram);
    while i < k {
        for j in (0..i).rev() {
            if mu[i][j].abs() > half {
                let q = mu[i][j].round().to_integer().to_i128().expect("LLL coefficient overflow");
                let bj = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                let (m2, b2) = gram_schmidt(&basis, gram);
                mu = m2;
                bstar = b2;
            }
        }
        let lhs = &bstar[i];
        let rhs = (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &bstar[i - 1];
        if *lhs >= rhs {
            i += 1;
        } else {
            basis.swap(i, i - 1);
            let (m2, b2) = gram_schmidt(&basis, gram);
            mu = m2;
            bstar = b2;
            i = i.max(2) - 1;
        }
    }
    basis
}
