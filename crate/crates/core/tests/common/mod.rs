//! Test-side oracles written without the library's algorithms.
#![allow(dead_code)]

use cm_torsion::matrix::OMatrix;
use cm_torsion::{Discriminant, OrderElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(t, n)` with `ω² = tω − n`, derived from the discriminant alone.
pub fn omega_poly(d: i64) -> (i128, i128) {
    let d = d as i128;
    if d.rem_euclid(4) == 0 {
        (0, -d / 4)
    } else {
        (1, (1 - d) / 4)
    }
}

pub type Pair = (i128, i128);

pub fn mul(d: i64, x: Pair, y: Pair) -> Pair {
    let (t, n) = omega_poly(d);
    let (a, b) = x;
    let (c, e) = y;
    (a * c - n * b * e, a * e + b * c + t * b * e)
}

pub fn conj(d: i64, x: Pair) -> Pair {
    let (t, _) = omega_poly(d);
    (x.0 + t * x.1, -x.1)
}

pub fn norm(d: i64, x: Pair) -> i128 {
    let (t, n) = omega_poly(d);
    x.0 * x.0 + t * x.0 * x.1 + n * x.1 * x.1
}

pub fn pair(x: &OrderElement) -> Pair {
    (x.a, x.b)
}

pub fn elem(disc: Discriminant, x: Pair) -> OrderElement {
    OrderElement::new(x.0, x.1, disc)
}

/// Uniform element with norm at most `bound`.
pub fn random_elem(r: &mut impl Rng, d: i64, bound: i128) -> Pair {
    let side = ((bound as f64).sqrt() as i128 + 1) * 2;
    loop {
        let x = (r.gen_range(-side..=side), r.gen_range(-side..=side));
        if norm(d, x) <= bound {
            return x;
        }
    }
}

pub fn random_matrix(r: &mut impl Rng, d: i64, rows: usize, cols: usize, bound: i128) -> Vec<Vec<Pair>> {
    (0..rows).map(|_| (0..cols).map(|_| random_elem(r, d, bound)).collect()).collect()
}

pub fn to_omatrix(disc: Discriminant, cols: usize, m: &[Vec<Pair>]) -> OMatrix {
    OMatrix::from_rows_with_cols(disc, cols, m.iter().map(|row| row.iter().map(|&x| elem(disc, x)).collect()).collect())
        .expect("well-formed rows")
}

pub fn from_omatrix(m: &OMatrix) -> Vec<Vec<Pair>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(pair).collect()).collect()
}

/// Rank over the fraction field, via the `2×2` integer blocks and
/// rational elimination.
pub fn rank(d: i64, m: &[Vec<Pair>]) -> usize {
    let (t, n) = omega_poly(d);
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for row in m {
        let mut r1 = Vec::new();
        let mut r2 = Vec::new();
        for &(a, b) in row {
            r1.extend([a, -n * b]);
            r2.extend([b, a + t * b]);
        }
        for r in [r1, r2] {
            rows.push(r.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect());
        }
    }
    rational_rank(rows) / 2
}

pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let v = &rows[rank][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All `c ∈ (O/L)^N` with `M c ≡ 0 (mod L)`, as flat component vectors.
pub fn kernel_mod(d: i64, m: &[Vec<Pair>], n_cols: usize, level: i128) -> Vec<Vec<i128>> {
    let total = (level * level).pow(n_cols as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = Vec::with_capacity(n_cols);
        let mut k = code;
        for _ in 0..n_cols {
            let v = k % (level * level);
            k /= level * level;
            c.push((v % level, v / level));
        }
        let killed = m.iter().all(|row| {
            let s = row.iter().zip(&c).fold((0, 0), |acc, (&x, &y)| {
                let p = mul(d, x, y);
                (acc.0 + p.0, acc.1 + p.1)
            });
            s.0.rem_euclid(level) == 0 && s.1.rem_euclid(level) == 0
        });
        if killed {
            out.push(c.iter().flat_map(|&(a, b)| [a, b]).collect());
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Determinant by cofactor expansion.
pub fn det(d: i64, m: &[Vec<Pair>]) -> Pair {
    match m.len() {
        0 => (1, 0),
        1 => m[0][0],
        k => {
            let mut acc = (0, 0);
            for j in 0..k {
                let minor: Vec<Vec<Pair>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let term = mul(d, m[0][j], det(d, &minor));
                acc = if j % 2 == 0 { (acc.0 + term.0, acc.1 + term.1) } else { (acc.0 - term.0, acc.1 - term.1) };
            }
            acc
        }
    }
}

pub fn rat(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> BigRational {
    BigRational::one()
}
