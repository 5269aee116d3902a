//! Siegel's lemma over the order: small independent solutions of
//! underdetermined linear systems.
//!
//! Solutions come from LLL reduction of the kernel lattice, viewed as a
//! rank `2(n − m)` sublattice of `Z^{2n}` with the trace form of the
//! order. Every answer carries a certificate comparing the largest entry
//! norm with `c_S · size^{m/(n−m)}`, `size = Π_i max(1, Σ_j N(s_ij))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::IMatrix;
use crate::lll::lll_reduce;
use crate::matrix::OMatrix;
use crate::orders::{Discriminant, OrderElement};
use crate::subgroups::SubgroupMatrix;

#[derive(Debug, Clone)]
pub struct SiegelConfig {
    /// Override for `c_S`; the default is `4^n · |D|`.
    pub constant: Option<BigRational>,
    /// Exhaustive search when the lattice answer misses the bound (n ≤ 6).
    pub box_fallback: bool,
    /// Cap on vectors visited by the exhaustive search.
    pub box_limit: u64,
}

impl Default for SiegelConfig {
    fn default() -> Self {
        SiegelConfig {
            constant: None,
            box_fallback: true,
            box_limit: 2_000_000,
        }
    }
}

pub fn default_constant(disc: Discriminant, n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(4).pow(n as u32) * BigInt::from(disc.value().abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Lattice,
    BoxSearch,
}

#[derive(Debug, Clone, Serialize)]
pub struct SiegelCertificate {
    pub n: usize,
    /// Rank of the system after dropping dependent rows.
    pub m: usize,
    #[serde(serialize_with = "ser_int")]
    pub size_term: BigInt,
    pub max_norm: i128,
    #[serde(serialize_with = "ser_rat")]
    pub constant: BigRational,
    /// `max_norm^{n−m} ≤ c_S^{n−m} · size^m`, checked exactly.
    pub holds: bool,
    /// `max_norm / size^{m/(n−m)}`.
    pub achieved: f64,
    pub method: Method,
}

fn ser_int<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::field::format_rational(x))
}

#[derive(Debug, Clone)]
pub struct SiegelSolution {
    /// Independent solutions, each normalized so that its first nonzero
    /// entry is a canonical associate, sorted by (largest norm, entries).
    pub vectors: Vec<Vec<OrderElement>>,
    pub certificate: SiegelCertificate,
}

fn max_norm(v: &[OrderElement]) -> i128 {
    v.iter().map(OrderElement::norm).max().unwrap_or(0)
}

fn normalize(v: Vec<OrderElement>) -> Vec<OrderElement> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) => {
            let (_, unit) = first.canonical_with_unit();
            v.into_iter().map(|x| unit * x).collect()
        }
        None => v,
    }
}

fn sort_key(v: &[OrderElement]) -> (i128, Vec<(i128, i128)>) {
    (max_norm(v), v.iter().map(|x| (x.a, x.b)).collect())
}

/// Pick vectors in order, keeping those that raise the rank over `L`.
fn independent_prefix(disc: Discriminant, n: usize, candidates: &[Vec<OrderElement>], k: usize) -> Vec<Vec<OrderElement>> {
    let mut chosen: Vec<Vec<OrderElement>> = Vec::new();
    for v in candidates {
        if chosen.len() == k {
            break;
        }
        if v.iter().all(OrderElement::is_zero) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let m = OMatrix::from_rows_with_cols(disc, n, trial.clone()).expect("rows have n entries");
        if m.rank() == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

fn trace_form(disc: Discriminant, n: usize) -> IMatrix {
    let t = disc.omega_trace();
    let nn = disc.omega_norm();
    let mut g = IMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        g[(2 * i, 2 * i)] = 2;
        g[(2 * i, 2 * i + 1)] = t;
        g[(2 * i + 1, 2 * i)] = t;
        g[(2 * i + 1, 2 * i + 1)] = 2 * nn;
    }
    g
}

fn size_term(s: &OMatrix) -> BigInt {
    (0..s.rows())
        .map(|i| {
            let d: i128 = s.row(i).iter().map(OrderElement::norm).sum();
            BigInt::from(d.max(1))
        })
        .product()
}

fn certify(s: &OMatrix, m: usize, vectors: &[Vec<OrderElement>], constant: &BigRational, method: Method) -> SiegelCertificate {
    let n = s.cols();
    let size = size_term(s);
    let mx = vectors.iter().map(|v| max_norm(v)).max().unwrap_or(0);
    let e = (n - m) as u32;
    let lhs = BigRational::from_integer(BigInt::from(mx).pow(e));
    let rhs = constant.pow(e as i32) * BigRational::from_integer(size.pow(m as u32));
    let size_f = size.to_f64().unwrap_or(f64::INFINITY);
    SiegelCertificate {
        n,
        m,
        size_term: size,
        max_norm: mx,
        constant: constant.clone(),
        holds: lhs <= rhs,
        achieved: mx as f64 / size_f.powf(m as f64 / (n - m) as f64),
        method,
    }
}

/// Elements of the order with norm at most `bound`, by (norm, a, b).
pub fn elements_up_to_norm(disc: Discriminant, bound: i128) -> Vec<OrderElement> {
    let r = (bound as f64).sqrt().ceil() as i128 + 2;
    let mut out: Vec<OrderElement> = (-2 * r..=2 * r)
        .flat_map(|a| (-r..=r).map(move |b| OrderElement::new(a, b, disc)))
        .filter(|x| x.norm() <= bound)
        .collect();
    out.sort_by_key(|x| (x.norm(), x.a, x.b));
    out
}

/// All nonzero solutions with every entry of norm at most `bound`, sorted
/// and normalized; `None` if more than `limit` vectors would be visited.
pub fn box_search(s: &OMatrix, bound: i128, limit: u64) -> Option<Vec<Vec<OrderElement>>> {
    let disc = s.disc();
    let n = s.cols();
    let elems = elements_up_to_norm(disc, bound);
    let total = (elems.len() as u64).checked_pow(n as u32)?;
    if total > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<OrderElement> = idx.iter().map(|&i| elems[i]).collect();
        if v.iter().any(|x| !x.is_zero()) && s.mul_vec(&v).expect("length n").iter().all(OrderElement::is_zero) {
            out.push(normalize(v));
        }
        let mut j = 0;
        loop {
            if j == n {
                out.sort_by_key(|v| sort_key(v));
                out.dedup();
                return Some(out);
            }
            idx[j] += 1;
            if idx[j] < elems.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// `k` independent small solutions of `s · v = 0`.
pub fn small_solution(s: &OMatrix, k: usize, config: &SiegelConfig) -> Result<SiegelSolution> {
    let disc = s.disc();
    let n = s.cols();
    // dependent rows carry no information
    let reduced = OMatrix::from_rows_with_cols(disc, n, independent_prefix(disc, n, &s.row_vecs(), s.rows()))?;
    let m = reduced.rows();
    if m >= n {
        return Err(Error::domain(format!("system of rank {m} in {n} unknowns has no nonzero solution")));
    }
    if k == 0 || k > n - m {
        return Err(Error::domain(format!("can ask for 1 to {} independent solutions, not {k}", n - m)));
    }
    let constant = config.constant.clone().unwrap_or_else(|| default_constant(disc, n));

    let kernel = s.right_kernel();
    let omega = disc.omega();
    let mut basis = Vec::with_capacity(2 * kernel.cols());
    for j in 0..kernel.cols() {
        let col = kernel.column(j);
        for scale in [disc.one(), omega] {
            basis.push(col.iter().flat_map(|&x| {
                let y = scale * x;
                [y.a, y.b]
            }).collect::<Vec<i128>>());
        }
    }
    let reduced_basis = lll_reduce(basis, &trace_form(disc, n));
    let mut candidates: Vec<Vec<OrderElement>> = reduced_basis
        .iter()
        .map(|v| normalize(v.chunks(2).map(|c| OrderElement::new(c[0], c[1], disc)).collect()))
        .collect();
    candidates.sort_by_key(|v| sort_key(v));
    let mut vectors = independent_prefix(disc, n, &candidates, k);
    vectors.sort_by_key(|v| sort_key(v));
    let cert = certify(&reduced, m, &vectors, &constant, Method::Lattice);
    if cert.holds || !config.box_fallback || n > 6 {
        return Ok(SiegelSolution { vectors, certificate: cert });
    }
    let mut bound = 1;
    while bound < cert.max_norm {
        match box_search(s, bound, config.box_limit) {
            None => break,
            Some(found) => {
                let chosen = independent_prefix(disc, n, &found, k);
                if chosen.len() == k {
                    let cert = certify(&reduced, m, &chosen, &constant, Method::BoxSearch);
                    return Ok(SiegelSolution { vectors: chosen, certificate: cert });
                }
            }
        }
        bound *= 2;
    }
    Ok(SiegelSolution { vectors, certificate: cert })
}

/// An invertible `N×N` matrix whose first rows are `M` and whose last
/// `N − r` rows are small solutions of `conj(M) · w = 0`.
#[derive(Debug, Clone)]
pub struct Completion {
    pub matrix: OMatrix,
    pub det: OrderElement,
    pub certificate: Option<SiegelCertificate>,
}

pub fn complete_to_square(m: &SubgroupMatrix, config: &SiegelConfig) -> Result<Completion> {
    let disc = m.disc();
    let n = m.ambient();
    let r = m.codim();
    let (extra, certificate) = if r == n {
        (OMatrix::zeros(disc, 0, n), None)
    } else if r == 0 {
        (OMatrix::identity(disc, n), None)
    } else {
        let sol = small_solution(&m.matrix().conj(), n - r, config)?;
        (
            OMatrix::from_rows_with_cols(disc, n, sol.vectors)?,
            Some(sol.certificate),
        )
    };
    let matrix = m.matrix().stack(&extra)?;
    let det = matrix.det()?;
    debug_assert!(!det.is_zero());
    Ok(Completion { matrix, det, certificate })
}

impl SiegelCertificate {
    /// `c_S` as a float, for logs.
    pub fn constant_f64(&self) -> f64 {
        self.constant.to_f64().unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> Discriminant {
        Discriminant::new(-4).unwrap()
    }

    fn sys(rows: &[Vec<(i128, i128)>]) -> OMatrix {
        OMatrix::from_pairs(d4(), rows).unwrap()
    }

    #[test]
    fn diagonal_system() {
        let sol = small_solution(&sys(&[vec![(1, 0), (-1, 0)]]), 1, &SiegelConfig::default()).unwrap();
        assert_eq!(sol.vectors, vec![vec![d4().one(), d4().one()]]);
        assert!(sol.certificate.holds);
    }

    #[test]
    fn two_three_system() {
        let s = sys(&[vec![(2, 0), (3, 0)]]);
        let sol = small_solution(&s, 1, &SiegelConfig::default()).unwrap();
        let v = &sol.vectors[0];
        assert_eq!(v, &vec![d4().int(3), d4().int(-2)]);
        assert!(max_norm(v) <= 9);
        // exhaustive search agrees on the smallest norm
        let all = box_search(&s, 9, 1 << 20).unwrap();
        assert_eq!(max_norm(&all[0]), 9);
    }

    #[test]
    fn two_solutions_with_unit_vector() {
        let s = sys(&[vec![(1, 0), (0, 1), (0, 0)]]);
        let sol = small_solution(&s, 2, &SiegelConfig::default()).unwrap();
        assert_eq!(sol.vectors.len(), 2);
        assert!(sol.vectors.contains(&vec![d4().zero(), d4().zero(), d4().one()]));
        for v in &sol.vectors {
            assert!(s.mul_vec(v).unwrap().iter().all(OrderElement::is_zero));
        }
        assert!(small_solution(&s, 3, &SiegelConfig::default()).is_err());
    }

    #[test]
    fn completions() {
        let disc = d4();
        let m = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (0, 0)]]).unwrap();
        let c = complete_to_square(&m, &SiegelConfig::default()).unwrap();
        assert_eq!(c.matrix.row(1), &[disc.zero(), disc.one()]);
        let m = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (1, 0)]]).unwrap();
        let c = complete_to_square(&m, &SiegelConfig::default()).unwrap();
        assert_eq!(c.matrix.row(1), &[disc.one(), disc.int(-1)]);
        let m = SubgroupMatrix::from_pairs(disc, &[vec![(2, 0), (1, 1)]]).unwrap();
        let c = complete_to_square(&m, &SiegelConfig::default()).unwrap();
        assert!(!c.det.is_zero());
        assert!(c.certificate.unwrap().holds);
    }
}
