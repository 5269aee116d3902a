//! Exhaustive listings of small subgroups and torsion points, and the
//! brute-force oracles built on them.

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bounds::rational_power;
use crate::error::{Error, Result};
use crate::field::rat;
use crate::matrix::OMatrix;
use crate::mordell_weil::{ModuleSpec, PointInEN};
use crate::orders::{Discriminant, OrderElement};
use crate::siegel::elements_up_to_norm;
use crate::subgroups::{SubgroupMatrix, TorsionCoset, TorsionPoint};

/// Default torsion level at which listed subgroups are told apart.
pub const DEFAULT_WITNESS_LEVEL: i128 = 12;

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationBudget {
    pub disc: Discriminant,
    #[serde(rename = "N")]
    pub n: usize,
    pub target_dim: usize,
    /// `X`: bound on the product of squared row norms.
    pub max_row_product: i128,
    /// `M`: bound on torsion orders.
    pub max_torsion_order: i128,
    pub time_cap: Option<Duration>,
    pub witness_level: i128,
}

impl EnumerationBudget {
    pub fn new(disc: Discriminant, n: usize, target_dim: usize, max_row_product: i128) -> Self {
        EnumerationBudget {
            disc,
            n,
            target_dim,
            max_row_product,
            max_torsion_order: 1,
            time_cap: None,
            witness_level: DEFAULT_WITNESS_LEVEL,
        }
    }

    pub fn with_time_cap(mut self, cap: Duration) -> Self {
        self.time_cap = Some(cap);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("N must be positive"));
        }
        if self.target_dim > self.n {
            return Err(Error::Dimension(format!(
                "target dimension {} exceeds N = {}",
                self.target_dim, self.n
            )));
        }
        if self.max_row_product < 0 || self.max_torsion_order < 1 || self.witness_level < 1 {
            return Err(Error::domain("budgets must be non-negative and levels positive"));
        }
        Ok(())
    }
}

/// A listed subgroup with the smallest row product seen among its
/// defining matrices.
#[derive(Debug, Clone)]
pub struct ListedSubgroup {
    pub subgroup: SubgroupMatrix,
    pub row_product: i128,
}

#[derive(Debug, Clone)]
pub struct SubgroupListing {
    pub subgroups: Vec<ListedSubgroup>,
    /// Set when the time cap stopped the search early.
    pub partial: bool,
    pub tuples_examined: u64,
    pub witness_level: i128,
}

impl SubgroupListing {
    pub fn count(&self) -> usize {
        self.subgroups.len()
    }

    /// `c · X^(N+η)`, the growth envelope the count is compared against.
    pub fn growth_envelope(&self, budget: &EnumerationBudget, c: &BigRational, eta: &BigRational) -> BigRational {
        let x = BigRational::from_integer(budget.max_row_product.max(1).into());
        let e = BigRational::from_integer((budget.n as i64).into()) + eta;
        c * rational_power(&x, &e).upper
    }
}

/// Nonzero vectors of `O^n` with `Σ norm ≤ bound`, first nonzero entry a
/// canonical associate, ordered by total norm then coordinates.
pub fn short_rows(disc: Discriminant, n: usize, bound: i128) -> Vec<Vec<OrderElement>> {
    let elems = elements_up_to_norm(disc, bound);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        elems: &[OrderElement],
        n: usize,
        left: i128,
        leading_done: bool,
        cur: &mut Vec<OrderElement>,
        out: &mut Vec<Vec<OrderElement>>,
    ) {
        if cur.len() == n {
            if leading_done {
                out.push(cur.clone());
            }
            return;
        }
        for x in elems.iter().take_while(|x| x.norm() <= left) {
            if !leading_done && !x.is_zero() && !x.is_canonical() {
                continue;
            }
            cur.push(*x);
            rec(elems, n, left - x.norm(), leading_done || !x.is_zero(), cur, out);
            cur.pop();
        }
    }
    rec(&elems, n, bound, false, &mut cur, &mut out);
    out.sort_by_key(|v| (row_norm(v), key_of_row(v)));
    out
}

fn row_norm(v: &[OrderElement]) -> i128 {
    v.iter().map(OrderElement::norm).sum()
}

fn key_of_row(v: &[OrderElement]) -> Vec<(i128, i128)> {
    v.iter().map(|x| (x.a, x.b)).collect()
}

fn matrix_key(m: &OMatrix) -> Vec<(i128, i128)> {
    (0..m.rows()).flat_map(|i| key_of_row(m.row(i))).collect()
}

/// Every connected subgroup of dimension `target_dim` cut out exactly by
/// a matrix whose row product is at most `X`, once each, ordered by row
/// product and then by canonical form.
pub fn enumerate_subgroups(budget: &EnumerationBudget) -> Result<SubgroupListing> {
    budget.validate()?;
    let start = Instant::now();
    let r = budget.n - budget.target_dim;
    let x = budget.max_row_product;
    let mut found: BTreeMap<Vec<(i128, i128)>, ListedSubgroup> = BTreeMap::new();
    let mut examined = 0;
    let mut partial = false;
    if x >= 1 && r == 0 {
        let whole = SubgroupMatrix::whole(budget.disc, budget.n);
        found.insert(Vec::new(), ListedSubgroup { subgroup: whole, row_product: 1 });
    } else if x >= 1 {
        let rows = short_rows(budget.disc, budget.n, x);
        let mut walk = TupleWalk {
            budget,
            rows: &rows,
            norms: rows.iter().map(|v| row_norm(v)).collect(),
            r,
            start,
            idx: Vec::with_capacity(r),
            found: &mut found,
            examined: 0,
            partial: false,
        };
        walk.descend(0, 1)?;
        examined = walk.examined;
        partial = walk.partial;
    }
    let mut subgroups: Vec<(Vec<(i128, i128)>, ListedSubgroup)> = found.into_iter().collect();
    subgroups.sort_by(|a, b| (a.1.row_product, &a.0).cmp(&(b.1.row_product, &b.0)));
    Ok(SubgroupListing {
        subgroups: subgroups.into_iter().map(|(_, s)| s).collect(),
        partial,
        tuples_examined: examined,
        witness_level: budget.witness_level,
    })
}

struct TupleWalk<'a> {
    budget: &'a EnumerationBudget,
    rows: &'a [Vec<OrderElement>],
    norms: Vec<i128>,
    r: usize,
    start: Instant,
    idx: Vec<usize>,
    found: &'a mut BTreeMap<Vec<(i128, i128)>, ListedSubgroup>,
    examined: u64,
    partial: bool,
}

impl TupleWalk<'_> {
    fn descend(&mut self, from: usize, prod: i128) -> Result<()> {
        if self.idx.len() == self.r {
            return self.visit(prod);
        }
        for i in from..self.rows.len() {
            // rows are sorted by norm
            if prod * self.norms[i] > self.budget.max_row_product {
                break;
            }
            self.idx.push(i);
            self.descend(i + 1, prod * self.norms[i])?;
            self.idx.pop();
            if self.partial {
                break;
            }
        }
        Ok(())
    }

    fn visit(&mut self, prod: i128) -> Result<()> {
        self.examined += 1;
        if self.examined.is_multiple_of(1024) {
            if let Some(cap) = self.budget.time_cap {
                if self.start.elapsed() > cap {
                    self.partial = true;
                    return Ok(());
                }
            }
        }
        let m = OMatrix::from_rows_with_cols(
            self.budget.disc,
            self.budget.n,
            self.idx.iter().map(|&i| self.rows[i].clone()).collect(),
        )?;
        let Ok(s) = SubgroupMatrix::new(m) else {
            return Ok(());
        };
        if !s.is_connected() {
            return Ok(());
        }
        let h = s.hnf();
        let entry = self.found.entry(matrix_key(h.matrix())).or_insert(ListedSubgroup {
            subgroup: h,
            row_product: prod,
        });
        entry.row_product = entry.row_product.min(prod);
        Ok(())
    }
}

/// Whether the listed subgroups have pairwise different kernels at `level`.
pub fn kernels_distinct(subgroups: &[SubgroupMatrix], level: i128) -> bool {
    let mut seen = HashSet::new();
    subgroups.iter().all(|s| {
        let k: Vec<Vec<i128>> = s.kernel_at_level(level).iter().map(TorsionPoint::to_integer).collect();
        seen.insert(k)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionCount {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: i128,
    /// `(n, points of order dividing n)` for `n ≤ M`.
    #[serde(serialize_with = "ser_pairs")]
    pub dividing: Vec<(i128, BigInt)>,
    /// `(n, points of exact order n)` for `n ≤ M`.
    #[serde(serialize_with = "ser_pairs")]
    pub exact: Vec<(i128, BigInt)>,
    /// Points of order at most `M`.
    #[serde(serialize_with = "ser_int")]
    pub total: BigInt,
    #[serde(skip)]
    pub listing: Option<Vec<TorsionPoint>>,
    pub listed: bool,
}

fn ser_int<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_pairs<S: serde::Serializer>(v: &[(i128, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (n, c) in v {
        seq.serialize_element(&(*n as i64, c.to_string()))?;
    }
    seq.end()
}

/// Jordan's totient `J_k(n)`, the number of points of exact order `n` in
/// `(Z/n)^k`.
pub fn jordan_totient(n: i128, k: u32) -> BigInt {
    let mut m = n;
    let mut num = num_traits::pow(BigInt::from(n), k as usize);
    let mut p = 2i128;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            let pk = num_traits::pow(BigInt::from(p), k as usize);
            num = num / &pk * (&pk - 1);
        }
        p += 1;
    }
    if m > 1 {
        let pk = num_traits::pow(BigInt::from(m), k as usize);
        num = num / &pk * (&pk - 1);
    }
    num
}

/// Counts of torsion points in `E^N` by order; the points themselves are
/// listed when there are at most `list_limit` of them.
pub fn enumerate_torsion(disc: Discriminant, n: usize, m: i128, list_limit: usize) -> Result<TorsionCount> {
    if m < 1 || n == 0 {
        return Err(Error::domain("enumerate_torsion needs M >= 1 and N >= 1"));
    }
    let k = 2 * n as u32;
    let dividing: Vec<(i128, BigInt)> = (1..=m).map(|i| (i, num_traits::pow(BigInt::from(i), k as usize))).collect();
    let exact: Vec<(i128, BigInt)> = (1..=m).map(|i| (i, jordan_totient(i, k))).collect();
    let total: BigInt = exact.iter().map(|(_, c)| c).sum();
    let listing = if total <= BigInt::from(list_limit) {
        let mut pts = Vec::new();
        for level in 1..=m {
            for p in points_at_level(disc, n, level) {
                if p.order() == level {
                    pts.push(p);
                }
            }
        }
        Some(pts)
    } else {
        None
    };
    Ok(TorsionCount {
        n,
        m,
        dividing,
        exact,
        total,
        listed: listing.is_some(),
        listing,
    })
}

/// Every point of `(1/level)·O^N / O^N`.
pub fn points_at_level(disc: Discriminant, n: usize, level: i128) -> Vec<TorsionPoint> {
    let per = (level * level) as usize;
    let total = per.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = Vec::with_capacity(2 * n);
            for _ in 0..n {
                let c = code % per;
                code /= per;
                v.push((c % level as usize) as i128);
                v.push((c / level as usize) as i128);
            }
            TorsionPoint::from_integer(disc, level, &v)
        })
        .collect()
}

/// `|ker H ∩ ker H2|` restricted to points of order dividing `level`,
/// by exhaustive search.
pub fn brute_force_intersection_count(h: &SubgroupMatrix, h2: &SubgroupMatrix, level: i128) -> u128 {
    points_at_level(h.disc(), h.ambient(), level)
        .iter()
        .filter(|p| h.kernel_contains(p) && h2.kernel_contains(p))
        .count() as u128
}

/// Smallest-dimension torsion coset containing `x` whose subgroup is cut
/// out by rows of squared norm sum at most `max_row_product`, found by
/// exhaustive search. `None` if the time cap ran out.
///
/// A coset `B + ζ` contains `x` iff every equation of `B` kills the free
/// part of `x`, so the search collects all short rows that do and takes
/// the connected subgroup they cut out.
pub fn brute_force_minimal_coset(
    spec: &ModuleSpec,
    x: &PointInEN,
    budget: &EnumerationBudget,
) -> Result<Option<TorsionCoset>> {
    let start = Instant::now();
    let a = spec.coefficient_matrix(x)?;
    let n = x.ambient();
    let mut chosen: Vec<Vec<OrderElement>> = Vec::new();
    for (k, v) in short_rows(spec.disc(), n, budget.max_row_product).into_iter().enumerate() {
        if k % 256 == 0 && budget.time_cap.is_some_and(|cap| start.elapsed() > cap) {
            return Ok(None);
        }
        let row = OMatrix::from_rows_with_cols(spec.disc(), n, vec![v.clone()])?;
        if !row.mul(&a)?.is_zero() {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(v);
        if OMatrix::from_rows_with_cols(spec.disc(), n, trial.clone())?.rank() == trial.len() {
            chosen = trial;
        }
    }
    let subgroup = if chosen.is_empty() {
        SubgroupMatrix::whole(spec.disc(), n)
    } else {
        SubgroupMatrix::new(OMatrix::from_rows_with_cols(spec.disc(), n, chosen)?)?.saturate()
    };
    TorsionCoset::new(subgroup, spec.torsion_part(x)?.normalized()).map(Some)
}

/// Growth constant `2^N` and exponent slack `1/2` for subgroup counts.
///
/// At `X = 1` the count is a binomial coefficient in `N`, which `2^N`
/// covers.
pub fn default_growth(n: usize) -> (BigRational, BigRational) {
    (rat(1 << n, 1), rat(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn gaussian_lines_in_the_plane() {
        let b = EnumerationBudget::new(d(-4), 2, 1, 1);
        let l = enumerate_subgroups(&b).unwrap();
        assert_eq!(l.count(), 2);
        let b = EnumerationBudget::new(d(-4), 2, 1, 2);
        let l = enumerate_subgroups(&b).unwrap();
        // (1,0), (0,1) and (1,u) for the four units u
        assert_eq!(l.count(), 6);
        let subs: Vec<SubgroupMatrix> = l.subgroups.iter().map(|s| s.subgroup.clone()).collect();
        assert!(kernels_distinct(&subs, 4));
        assert!(kernels_distinct(&subs, DEFAULT_WITNESS_LEVEL));
    }

    #[test]
    fn empty_and_monotone() {
        let b = EnumerationBudget::new(d(-3), 2, 1, 0);
        assert_eq!(enumerate_subgroups(&b).unwrap().count(), 0);
        let mut last = 0;
        for x in 1..=6 {
            let c = enumerate_subgroups(&EnumerationBudget::new(d(-3), 2, 1, x)).unwrap().count();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn torsion_counts() {
        let t = enumerate_torsion(d(-4), 2, 3, 0).unwrap();
        assert_eq!(t.dividing[2].1, BigInt::from(81));
        let t = enumerate_torsion(d(-4), 1, 2, 100).unwrap();
        assert_eq!(t.dividing[0].1, BigInt::from(1));
        assert_eq!(t.exact[1].1, BigInt::from(3));
        assert_eq!(t.listing.unwrap().len(), 4);
    }

    #[test]
    fn jordan_matches_listing() {
        for disc in [d(-3), d(-7)] {
            let t = enumerate_torsion(disc, 1, 6, 10_000).unwrap();
            let pts = t.listing.unwrap();
            for (n, c) in &t.exact {
                let listed = pts.iter().filter(|p| p.order() == *n).count();
                assert_eq!(BigInt::from(listed), *c);
            }
        }
    }
}
