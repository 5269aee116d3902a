//! Algebraic subgroups of `E^N` as matrices over the order.
//!
//! A full-rank `r×N` matrix `M` defines the homomorphism `φ: E^N → E^r`;
//! its kernel is a subgroup of dimension `N − r` whose connected component
//! is the kernel of the saturation of `M`. Torsion points are modelled by
//! `E[n] ≅ O/nO`, so a point of order dividing `n` is a vector `c ∈ O^N`
//! read as `c/n ∈ (C/O)^N`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::OMatrix;
use crate::orders::{Discriminant, OrderElement};

/// Full row-rank matrix defining an algebraic subgroup of `E^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupMatrix {
    m: OMatrix,
}

/// Torsion point `coords / level` in `E^N`.
#[derive(Debug, Clone)]
pub struct TorsionPoint {
    disc: Discriminant,
    level: i128,
    coords: Vec<OrderElement>,
}

/// The torsion coset `B + ζ`, with `B` the connected kernel of `subgroup`.
#[derive(Debug, Clone)]
pub struct TorsionCoset {
    pub subgroup: SubgroupMatrix,
    pub zeta: TorsionPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSurrogate {
    pub minor_sum: i128,
    pub row_product: i128,
}

/// Which degree surrogate a degree-conditioned computation used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurrogateKind {
    #[default]
    MinorSum,
    RowProduct,
}

impl DegreeSurrogate {
    pub fn get(&self, kind: SurrogateKind) -> i128 {
        match kind {
            SurrogateKind::MinorSum => self.minor_sum,
            SurrogateKind::RowProduct => self.row_product,
        }
    }
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i as i128 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl SubgroupMatrix {
    pub fn new(m: OMatrix) -> Result<Self> {
        let rank = m.rank();
        if rank != m.rows() {
            return Err(Error::Rank {
                expected: m.rows(),
                found: rank,
            });
        }
        Ok(SubgroupMatrix { m })
    }

    pub fn from_pairs(disc: Discriminant, rows: &[Vec<(i128, i128)>]) -> Result<Self> {
        Self::new(OMatrix::from_pairs(disc, rows)?)
    }

    /// The whole of `E^N` (no equations).
    pub fn whole(disc: Discriminant, n: usize) -> Self {
        SubgroupMatrix {
            m: OMatrix::zeros(disc, 0, n),
        }
    }

    /// The trivial subgroup `{0}`.
    pub fn trivial(disc: Discriminant, n: usize) -> Self {
        SubgroupMatrix {
            m: OMatrix::identity(disc, n),
        }
    }

    pub fn matrix(&self) -> &OMatrix {
        &self.m
    }

    pub fn disc(&self) -> Discriminant {
        self.m.disc()
    }

    /// The ambient power `N`.
    pub fn ambient(&self) -> usize {
        self.m.cols()
    }

    pub fn codim(&self) -> usize {
        self.m.rows()
    }

    pub fn dim(&self) -> usize {
        self.ambient() - self.codim()
    }

    /// Canonical Hermite form of the defining matrix.
    pub fn hnf(&self) -> SubgroupMatrix {
        SubgroupMatrix {
            m: self.m.hnf().nonzero_rows(),
        }
    }

    /// Matrix of the connected component, in Hermite form.
    pub fn saturate(&self) -> SubgroupMatrix {
        if self.codim() == 0 {
            return self.clone();
        }
        SubgroupMatrix { m: self.m.saturate() }
    }

    /// Whether the kernel is connected, i.e. the rows are saturated.
    pub fn is_connected(&self) -> bool {
        self.saturate() == self.hnf()
    }

    /// Columns spanning the tangent lattice `{v ∈ O^N : M v = 0}`.
    pub fn parametrization(&self) -> OMatrix {
        if self.codim() == 0 {
            return OMatrix::identity(self.disc(), self.ambient());
        }
        self.m.right_kernel()
    }

    /// The subgroup whose tangent lattice is spanned by the columns of `p`.
    pub fn from_parametrization(p: &OMatrix) -> Result<SubgroupMatrix> {
        if p.cols() == 0 {
            return Ok(SubgroupMatrix::trivial(p.disc(), p.rows()));
        }
        let m = p.left_kernel();
        SubgroupMatrix::new(OMatrix::from_rows_with_cols(p.disc(), p.rows(), m.row_vecs())?)
    }

    pub fn degree_surrogate(&self) -> DegreeSurrogate {
        let r = self.codim();
        let n = self.ambient();
        let minor_sum = combinations(n, r)
            .iter()
            .map(|cols| self.m.select_cols(cols).det().expect("square minor").norm())
            .sum();
        let row_product = (0..r)
            .map(|i| self.m.row(i).iter().map(OrderElement::norm).sum::<i128>())
            .product();
        DegreeSurrogate { minor_sum, row_product }
    }

    /// Exact count of `ζ ∈ (O/nO)^N` with `M ζ ≡ 0 (mod n)`.
    pub fn kernel_count_at_level(&self, n: i128) -> u128 {
        self.m.to_integer().kernel_count_mod(n)
    }

    /// All torsion points of level `n` in `ker φ`, sorted by coordinates.
    pub fn kernel_at_level(&self, n: i128) -> Vec<TorsionPoint> {
        self.m
            .to_integer()
            .kernel_mod(n)
            .into_iter()
            .map(|v| TorsionPoint::from_integer(self.disc(), n, &v))
            .collect()
    }

    /// Whether `ζ` lies in `ker φ` (not only its connected component).
    pub fn kernel_contains(&self, zeta: &TorsionPoint) -> bool {
        self.m
            .mul_vec(&zeta.coords)
            .expect("dimensions checked by caller")
            .iter()
            .all(|x| x.a % zeta.level == 0 && x.b % zeta.level == 0)
    }

    fn check_compatible(&self, other: &SubgroupMatrix) -> Result<()> {
        if self.disc() != other.disc() || self.ambient() != other.ambient() {
            return Err(Error::domain(format!(
                "subgroups live in different ambients (disc {}, N {}) and (disc {}, N {})",
                self.disc(),
                self.ambient(),
                other.disc(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SubgroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

/// Dimensions and matrices of `H + H2` and of the connected part of `H ∩ H2`.
#[derive(Debug, Clone)]
pub struct SumIntersection {
    pub dim_sum: usize,
    pub dim_int: usize,
    pub sum: SubgroupMatrix,
    pub intersection: SubgroupMatrix,
}

pub fn sum_and_intersection(h: &SubgroupMatrix, h2: &SubgroupMatrix) -> Result<SumIntersection> {
    h.check_compatible(h2)?;
    let disc = h.disc();
    let n = h.ambient();
    let stacked = h.matrix().stack(h2.matrix())?;
    let intersection = if stacked.rows() == 0 {
        SubgroupMatrix::whole(disc, n)
    } else {
        SubgroupMatrix { m: stacked.saturate() }
    };
    let params = h.parametrization().augment(&h2.parametrization())?;
    let sum = if params.cols() == 0 {
        SubgroupMatrix::trivial(disc, n)
    } else {
        let k = params.left_kernel();
        SubgroupMatrix::new(OMatrix::from_rows_with_cols(disc, n, k.row_vecs())?)?
    };
    Ok(SumIntersection {
        dim_sum: sum.dim(),
        dim_int: intersection.dim(),
        sum,
        intersection,
    })
}

/// Exact size of `H ∩ H2` for connected `H`, `H2` meeting in a finite set.
pub fn intersection_cardinality(h: &SubgroupMatrix, h2: &SubgroupMatrix) -> Result<u128> {
    let si = sum_and_intersection(h, h2)?;
    if si.dim_int != 0 {
        return Err(Error::Dimension(format!(
            "intersection has dimension {}, so it is infinite",
            si.dim_int
        )));
    }
    let stacked = h.saturate().matrix().stack(h2.saturate().matrix())?;
    // kernel of the integer model on (R/Z)^{2N} has size Π d_i
    let diag = stacked.to_integer().diagonalize();
    Ok(diag.d.iter().map(|&d| d as u128).product())
}

/// Whether `Σ_i a_ij · conj(b_ik) = 0` for every pair of columns.
pub fn tangent_orthogonal(a: &OMatrix, b: &OMatrix) -> Result<bool> {
    if a.rows() != b.rows() || a.disc() != b.disc() {
        return Err(Error::domain("parametrizations live in different ambients"));
    }
    Ok(a.transpose().mul(&b.conj())?.is_zero())
}

/// The orthogonal complement together with its observed intersection data.
#[derive(Debug, Clone)]
pub struct Complement {
    pub complement: SubgroupMatrix,
    /// `♯(B ∩ B⊥)`.
    pub intersection: u128,
    /// `♯(B ∩ B⊥) / minor_sum(B)²` as a reduced fraction.
    pub ratio: (u128, u128),
}

/// The subgroup `B⊥` whose tangent space is hermitian-orthogonal to that of `B`.
pub fn orthogonal_complement(b: &SubgroupMatrix) -> Result<Complement> {
    let disc = b.disc();
    let n = b.ambient();
    let complement = if b.codim() == n {
        SubgroupMatrix::whole(disc, n)
    } else {
        SubgroupMatrix::new(b.parametrization().adjoint())?.saturate()
    };
    let connected = b.saturate();
    let intersection = intersection_cardinality(&connected, &complement)?;
    let ms = connected.degree_surrogate().minor_sum as u128;
    let den = ms * ms;
    let g = intersection.gcd(&den);
    Ok(Complement {
        complement,
        intersection,
        ratio: (intersection / g, den / g),
    })
}

pub fn is_anomalous(dim_y: usize, dim_v: usize, dim_b: usize, n: usize) -> Result<bool> {
    if !(dim_y <= dim_v && dim_v < n && dim_y <= dim_b && dim_b <= n) {
        return Err(Error::domain(format!(
            "need 0 ≤ dim Y ≤ dim V < N and dim Y ≤ dim B ≤ N, got dim Y = {dim_y}, dim V = {dim_v}, dim B = {dim_b}, N = {n}"
        )));
    }
    Ok(n - dim_y < (n - dim_v) + (n - dim_b))
}

/// Outcome of the dimension argument for a translate `H + p` meeting `B + ζ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslateCertificate {
    pub dim_h: usize,
    pub dim_b: usize,
    pub dim_y: usize,
    pub dim_sum: usize,
    pub dim_int: usize,
    /// `dim Y > dim H + dim B − N`.
    pub dimension_excess: bool,
    /// `H + B ≠ E^N`, so `H + p` lies in a translate of a proper subgroup.
    pub sum_is_proper: bool,
    /// No anomalous component can exist for a weak-transverse `H + p`.
    pub no_anomalous: bool,
}

pub fn translate_has_no_anomalous(
    h: &SubgroupMatrix,
    b: &SubgroupMatrix,
    dim_y: usize,
) -> Result<TranslateCertificate> {
    let si = sum_and_intersection(h, b)?;
    if dim_y > si.dim_int {
        return Err(Error::domain(format!(
            "a component of (H+p)∩(B+ζ) has dimension at most {}, got {dim_y}",
            si.dim_int
        )));
    }
    let n = h.ambient();
    let dimension_excess = dim_y + n > h.dim() + b.dim();
    let sum_is_proper = si.dim_sum < n;
    // excess forces dim(H+B) < N, which contradicts weak-transversality
    debug_assert!(!dimension_excess || sum_is_proper);
    Ok(TranslateCertificate {
        dim_h: h.dim(),
        dim_b: b.dim(),
        dim_y,
        dim_sum: si.dim_sum,
        dim_int: si.dim_int,
        dimension_excess,
        sum_is_proper,
        no_anomalous: !dimension_excess || sum_is_proper,
    })
}

impl TorsionPoint {
    pub fn new(level: i128, coords: Vec<OrderElement>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::domain("torsion point needs at least one coordinate"));
        };
        let disc = first.disc;
        if level < 1 {
            return Err(Error::domain(format!("torsion level must be positive, got {level}")));
        }
        if coords.iter().any(|c| c.disc != disc) {
            return Err(Error::domain("coordinates with different discriminants"));
        }
        Ok(TorsionPoint {
            disc,
            level,
            coords: coords.iter().map(|c| c.reduce_mod(level)).collect(),
        })
    }

    pub fn zero(disc: Discriminant, n: usize) -> Self {
        TorsionPoint {
            disc,
            level: 1,
            coords: vec![disc.zero(); n],
        }
    }

    /// From the integer vector `(a_1, b_1, …, a_N, b_N)`.
    pub fn from_integer(disc: Discriminant, level: i128, v: &[i128]) -> Self {
        let coords = v
            .chunks(2)
            .map(|c| OrderElement::new(c[0], c[1], disc).reduce_mod(level))
            .collect();
        TorsionPoint { disc, level, coords }
    }

    pub fn to_integer(&self) -> Vec<i128> {
        self.coords.iter().flat_map(|c| [c.a, c.b]).collect()
    }

    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn level(&self) -> i128 {
        self.level
    }

    pub fn coords(&self) -> &[OrderElement] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    /// Exact order: the least `m` with `m · ζ = 0`.
    pub fn order(&self) -> i128 {
        self.coords.iter().fold(1, |acc, c| {
            let g = self.level.gcd(&c.a).gcd(&c.b);
            acc.lcm(&(self.level / g))
        })
    }

    /// The same point written at its exact order.
    pub fn normalized(&self) -> Self {
        let ord = self.order();
        let f = self.level / ord;
        TorsionPoint {
            disc: self.disc,
            level: ord,
            coords: self
                .coords
                .iter()
                .map(|c| OrderElement::new(c.a / f, c.b / f, self.disc))
                .collect(),
        }
    }

    /// Rewrite at a level that is a multiple of the current one.
    pub fn at_level(&self, level: i128) -> Result<Self> {
        if level < 1 || level % self.level != 0 {
            return Err(Error::domain(format!("level {level} is not a multiple of {}", self.level)));
        }
        let f = level / self.level;
        Ok(TorsionPoint {
            disc: self.disc,
            level,
            coords: self.coords.iter().map(|c| c.scale(f).reduce_mod(level)).collect(),
        })
    }

    pub fn add(&self, other: &TorsionPoint) -> Result<Self> {
        if self.ambient() != other.ambient() || self.disc != other.disc {
            return Err(Error::domain("torsion points in different ambients"));
        }
        let level = self.level.lcm(&other.level);
        let x = self.at_level(level)?;
        let y = other.at_level(level)?;
        TorsionPoint::new(level, x.coords.iter().zip(&y.coords).map(|(&a, &b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        TorsionPoint {
            coords: self.coords.iter().map(|c| (-*c).reduce_mod(self.level)).collect(),
            ..self.clone()
        }
    }

    /// `τ · ζ` for an endomorphism `τ ∈ O`.
    pub fn scale(&self, tau: OrderElement) -> Self {
        TorsionPoint {
            coords: self.coords.iter().map(|&c| (tau * c).reduce_mod(self.level)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(OrderElement::is_zero)
    }
}

impl PartialEq for TorsionPoint {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.disc == b.disc && a.level == b.level && a.coords == b.coords
    }
}

impl Eq for TorsionPoint {}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "level: {}; coords: [{}]", self.level, coords.join(", "))
    }
}

impl TorsionCoset {
    pub fn new(subgroup: SubgroupMatrix, zeta: TorsionPoint) -> Result<Self> {
        if subgroup.ambient() != zeta.ambient() || subgroup.disc() != zeta.disc() {
            return Err(Error::domain("subgroup and torsion point live in different ambients"));
        }
        Ok(TorsionCoset { subgroup, zeta })
    }

    pub fn dim(&self) -> usize {
        self.subgroup.dim()
    }

    /// Canonical data `(hnf of the saturated matrix, S·ζ at its exact order)`;
    /// two cosets are equal iff their keys agree.
    pub fn key(&self) -> (SubgroupMatrix, TorsionPoint) {
        let s = self.subgroup.saturate();
        let image = image_point(s.matrix(), &self.zeta);
        (s, image)
    }

    /// Whether a torsion point lies on `B + ζ`.
    pub fn contains_torsion(&self, p: &TorsionPoint) -> Result<bool> {
        let diff = p.add(&self.zeta.neg())?;
        Ok(self.subgroup.saturate().kernel_contains(&diff))
    }

    /// Whether `self ⊆ other`.
    pub fn is_contained_in(&self, other: &TorsionCoset) -> Result<bool> {
        self.subgroup.check_compatible(&other.subgroup)?;
        let si = sum_and_intersection(&self.subgroup.saturate(), &other.subgroup.saturate())?;
        if si.dim_int != self.dim() {
            return Ok(false);
        }
        other.contains_torsion(&self.zeta)
    }
}

impl PartialEq for TorsionCoset {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl fmt::Display for TorsionCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+ {}", self.subgroup, self.zeta)
    }
}

/// `S · ζ` as a torsion point in `E^rows(S)`, at its exact order.
fn image_point(s: &OMatrix, zeta: &TorsionPoint) -> TorsionPoint {
    if s.rows() == 0 {
        return TorsionPoint::zero(zeta.disc, 1);
    }
    let v = s.mul_vec(&zeta.coords).expect("dimensions agree");
    TorsionPoint::new(zeta.level, v).expect("nonempty").normalized()
}

/// Find `ζ ∈ (Q/Z ⊗ O)^N` with `M ζ = ρ` for a torsion point `ρ ∈ E^r`.
pub fn solve_torsion(m: &OMatrix, rhs: &TorsionPoint) -> Option<TorsionPoint> {
    if m.rows() != rhs.ambient() {
        return None;
    }
    let (x, level) = m.to_integer().solve_q_mod_z(&rhs.to_integer(), rhs.level)?;
    Some(TorsionPoint::from_integer(m.disc(), level, &x).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> Discriminant {
        Discriminant::new(-4).unwrap()
    }

    fn sub(rows: &[Vec<(i128, i128)>]) -> SubgroupMatrix {
        SubgroupMatrix::from_pairs(d4(), rows).unwrap()
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let err = SubgroupMatrix::from_pairs(d4(), &[vec![(1, 0), (1, 0)], vec![(2, 0), (2, 0)]]).unwrap_err();
        assert_eq!(err, Error::Rank { expected: 2, found: 1 });
    }

    #[test]
    fn hnf_is_unit_orbit_invariant() {
        let a = sub(&[vec![(2, 0), (0, 0)], vec![(0, 0), (1, 0)]]);
        let b = sub(&[vec![(0, 0), (0, 1)], vec![(0, 2), (0, 0)]]);
        assert_eq!(a.hnf(), b.hnf());
        let id = sub(&[vec![(1, 0), (0, 0), (0, 0)]]);
        assert_eq!(id.hnf(), id);
    }

    #[test]
    fn degree_surrogate_examples() {
        let s = sub(&[vec![(1, 0), (0, 1)]]).degree_surrogate();
        assert_eq!(s, DegreeSurrogate { minor_sum: 2, row_product: 2 });
        let s = sub(&[vec![(1, 0), (0, 0), (1, 0)], vec![(0, 0), (1, 0), (0, 1)]]).degree_surrogate();
        assert_eq!(s, DegreeSurrogate { minor_sum: 3, row_product: 4 });
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(sub(&[vec![(1, 0), (0, 0)], vec![(0, 0), (1, 0)]]).kernel_at_level(3).len(), 1);
        let diag = sub(&[vec![(1, 0), (-1, 0)]]).kernel_at_level(2);
        assert_eq!(diag.len(), 4);
        assert!(diag.iter().all(|p| p.coords()[0] == p.coords()[1]));
        let second = sub(&[vec![(0, 0), (1, 0)]]).kernel_at_level(5);
        assert_eq!(second.len(), 25);
        assert!(second.iter().all(|p| p.coords()[1].is_zero()));
    }

    #[test]
    fn sums_and_intersections() {
        let e0 = sub(&[vec![(0, 0), (1, 0)]]);
        let oe = sub(&[vec![(1, 0), (0, 0)]]);
        let si = sum_and_intersection(&e0, &oe).unwrap();
        assert_eq!((si.dim_sum, si.dim_int), (2, 0));
        assert_eq!(intersection_cardinality(&e0, &oe).unwrap(), 1);
        let si = sum_and_intersection(&e0, &e0).unwrap();
        assert_eq!((si.dim_sum, si.dim_int), (1, 1));
        let diag = sub(&[vec![(1, 0), (-1, 0)]]);
        let anti = sub(&[vec![(1, 0), (1, 0)]]);
        let si = sum_and_intersection(&diag, &anti).unwrap();
        assert_eq!((si.dim_sum, si.dim_int), (2, 0));
        assert_eq!(intersection_cardinality(&diag, &anti).unwrap(), 4);
        assert!(matches!(intersection_cardinality(&diag, &diag), Err(Error::Dimension(_))));
    }

    #[test]
    fn complements() {
        let b = sub(&[vec![(0, 0), (1, 0)]]);
        let c = orthogonal_complement(&b).unwrap();
        assert_eq!(c.complement, sub(&[vec![(1, 0), (0, 0)]]));
        let diag = sub(&[vec![(1, 0), (-1, 0)]]);
        let c = orthogonal_complement(&diag).unwrap();
        let p = c.complement.parametrization();
        assert!(tangent_orthogonal(&diag.parametrization(), &p).unwrap());
        assert_eq!(p.column(0)[0], -p.column(0)[1]);
        let b = sub(&[vec![(2, 0), (1, 1)]]);
        let c = orthogonal_complement(&b).unwrap();
        assert!(tangent_orthogonal(&b.parametrization(), &c.complement.parametrization()).unwrap());
        assert_eq!(b.dim() + c.complement.dim(), 2);
    }

    #[test]
    fn orthogonality_examples() {
        let disc = d4();
        let col = |a: (i128, i128), b: (i128, i128)| OMatrix::from_pairs(disc, &[vec![a], vec![b]]).unwrap();
        assert!(tangent_orthogonal(&col((1, 0), (0, 0)), &col((0, 0), (1, 0))).unwrap());
        assert!(!tangent_orthogonal(&col((1, 0), (1, 0)), &col((1, 0), (1, 0))).unwrap());
        // 1·conj(ω) + ω·conj(1) = −ω + ω = 0 in Z[i]
        assert!(tangent_orthogonal(&col((1, 0), (0, 1)), &col((0, 1), (1, 0))).unwrap());
    }

    #[test]
    fn anomaly_inequality() {
        assert!(is_anomalous(0, 1, 1, 3).unwrap());
        assert!(!is_anomalous(0, 1, 1, 2).unwrap());
        assert!(is_anomalous(2, 1, 1, 3).is_err());
    }

    #[test]
    fn translate_certificates() {
        let h = sub(&[vec![(0, 0), (1, 0)]]);
        let b = sub(&[vec![(1, 0), (0, 0)]]);
        let cert = translate_has_no_anomalous(&h, &b, 0).unwrap();
        assert!(!cert.dimension_excess && !cert.sum_is_proper && cert.no_anomalous);
        let h = sub(&[vec![(1, 0), (-1, 0), (0, 0)]]);
        let b = sub(&[vec![(1, 0), (-1, 0), (0, 0)], vec![(0, 0), (0, 0), (1, 0)]]);
        let cert = translate_has_no_anomalous(&h, &b, 1).unwrap();
        assert!(cert.dimension_excess && cert.sum_is_proper && cert.no_anomalous);
    }

    #[test]
    fn torsion_point_arithmetic() {
        let disc = d4();
        let p = TorsionPoint::new(6, vec![OrderElement::new(2, 4, disc), disc.zero()]).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.normalized().level(), 3);
        assert_eq!(p, p.at_level(12).unwrap());
        assert!(p.add(&p.neg()).unwrap().is_zero());
        assert_eq!(p.to_string(), "level: 6; coords: [2+4*w, 0]");
    }

    #[test]
    fn solving_for_torsion() {
        let m = sub(&[vec![(2, 0), (1, 1)]]).matrix().clone();
        let rhs = TorsionPoint::new(3, vec![OrderElement::new(1, 2, d4())]).unwrap();
        let zeta = solve_torsion(&m, &rhs).unwrap();
        let img = image_point(&m, &zeta);
        assert_eq!(img, rhs);
    }
}
