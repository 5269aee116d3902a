//! A finite-rank subgroup of `E(k̄)` modelled as `O^t ⊕ O/RO`.
//!
//! Points are `Σ_j α_j g_j + β T` for abstract generators `g_1 … g_t`
//! without nontrivial `O`-relations and a torsion generator `T` of order
//! `R`. Heights come from a hermitian positive definite Gram matrix
//! `G_jk = ⟨g_j, g_k⟩`, and `⟨p, q⟩ = Σ α_j G_jk conj(β_k)`.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{determinant, QElem};
use crate::matrix::OMatrix;
use crate::orders::{Discriminant, OrderElement};
use crate::subgroups::{SubgroupMatrix, TorsionCoset, TorsionPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    disc: Discriminant,
    gram: Vec<Vec<QElem>>,
    torsion_order: i128,
}

/// `Σ_j free[j]·g_j + torsion·T`, with `torsion` reduced modulo `R`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePoint {
    pub free: Vec<OrderElement>,
    pub torsion: OrderElement,
    torsion_order: i128,
}

/// A point of `E^N` whose coordinates lie in the modelled subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointInEN {
    pub coords: Vec<ModulePoint>,
}

impl ModuleSpec {
    /// Validates that `gram` is hermitian and positive definite.
    pub fn new(disc: Discriminant, gram: Vec<Vec<QElem>>, torsion_order: i128) -> Result<Self> {
        if torsion_order < 1 {
            return Err(Error::domain(format!("torsion order must be positive, got {torsion_order}")));
        }
        let t = gram.len();
        for (j, row) in gram.iter().enumerate() {
            if row.len() != t {
                return Err(Error::domain(format!("gram row {j} has {} entries, expected {t}", row.len())));
            }
            for (k, x) in row.iter().enumerate() {
                if x.disc != disc {
                    return Err(Error::domain("gram entry with a different discriminant"));
                }
                if *x != gram[k][j].conj() {
                    return Err(Error::domain(format!("gram is not hermitian at ({j}, {k})")));
                }
            }
        }
        for k in 1..=t {
            let minor: Vec<Vec<QElem>> = gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = determinant(&minor, disc)?;
            if !d.is_positive_rational() {
                return Err(Error::domain(format!("gram is not positive definite (leading minor {k} is {d})")));
            }
        }
        Ok(ModuleSpec {
            disc,
            gram,
            torsion_order,
        })
    }

    /// Orthonormal generators.
    pub fn standard(disc: Discriminant, rank: usize, torsion_order: i128) -> Result<Self> {
        let gram = (0..rank)
            .map(|j| {
                (0..rank)
                    .map(|k| if j == k { QElem::one(disc) } else { QElem::zero(disc) })
                    .collect()
            })
            .collect();
        Self::new(disc, gram, torsion_order)
    }

    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<QElem>] {
        &self.gram
    }

    pub fn torsion_order(&self) -> i128 {
        self.torsion_order
    }

    pub fn point(&self, free: Vec<OrderElement>, torsion: OrderElement) -> Result<ModulePoint> {
        if free.len() != self.rank() {
            return Err(Error::domain(format!(
                "point has {} free coefficients, module rank is {}",
                free.len(),
                self.rank()
            )));
        }
        if free.iter().chain([&torsion]).any(|x| x.disc != self.disc) {
            return Err(Error::domain("point coefficient with a different discriminant"));
        }
        Ok(ModulePoint {
            free,
            torsion: torsion.reduce_mod(self.torsion_order),
            torsion_order: self.torsion_order,
        })
    }

    /// Point from integer pairs `(a, b)` for free and torsion coefficients.
    pub fn point_from_pairs(&self, free: &[(i128, i128)], torsion: (i128, i128)) -> Result<ModulePoint> {
        let d = self.disc;
        self.point(
            free.iter().map(|&(a, b)| OrderElement::new(a, b, d)).collect(),
            OrderElement::new(torsion.0, torsion.1, d),
        )
    }

    pub fn zero_point(&self) -> ModulePoint {
        ModulePoint {
            free: vec![self.disc.zero(); self.rank()],
            torsion: self.disc.zero(),
            torsion_order: self.torsion_order,
        }
    }

    /// The generator `g_j`.
    pub fn generator(&self, j: usize) -> ModulePoint {
        let mut p = self.zero_point();
        p.free[j] = self.disc.one();
        p
    }

    pub fn check_point(&self, p: &ModulePoint) -> Result<()> {
        if p.free.len() != self.rank() || p.torsion_order != self.torsion_order || p.torsion.disc != self.disc {
            return Err(Error::domain("point does not belong to this module"));
        }
        Ok(())
    }

    pub fn check(&self, x: &PointInEN) -> Result<()> {
        if x.coords.is_empty() {
            return Err(Error::domain("point of E^0"));
        }
        x.coords.iter().try_for_each(|p| self.check_point(p))
    }

    /// `⟨p, q⟩` for points of `E`.
    pub fn pairing_coord(&self, p: &ModulePoint, q: &ModulePoint) -> QElem {
        let mut acc = QElem::zero(self.disc);
        for (j, a) in p.free.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = QElem::from(*a);
            for (k, b) in q.free.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = &(&a * &self.gram[j][k]) * &QElem::from(b.conj());
                acc = &acc + &term;
            }
        }
        acc
    }

    /// Hermitian pairing on `E^N`, summed over coordinates.
    pub fn nt_pairing(&self, x: &PointInEN, y: &PointInEN) -> Result<QElem> {
        self.check(x)?;
        self.check(y)?;
        if x.ambient() != y.ambient() {
            return Err(Error::domain("points in different powers of E"));
        }
        Ok(x.coords
            .iter()
            .zip(&y.coords)
            .fold(QElem::zero(self.disc), |acc, (p, q)| &acc + &self.pairing_coord(p, q)))
    }

    /// Néron–Tate height `ĥ(x) = ⟨x, x⟩`.
    pub fn nt_height(&self, x: &PointInEN) -> Result<BigRational> {
        let v = self.nt_pairing(x, x)?;
        debug_assert!(v.is_rational() && !v.q.is_negative());
        Ok(v.q)
    }

    /// The `N×t` matrix of free coefficients.
    pub fn coefficient_matrix(&self, x: &PointInEN) -> Result<OMatrix> {
        self.check(x)?;
        OMatrix::from_rows_with_cols(self.disc, self.rank(), x.coords.iter().map(|p| p.free.clone()).collect())
    }

    /// The torsion part `(β_1 T, …, β_N T)` at level `R`.
    pub fn torsion_part(&self, x: &PointInEN) -> Result<TorsionPoint> {
        self.check(x)?;
        TorsionPoint::new(self.torsion_order, x.coords.iter().map(|p| p.torsion).collect())
    }

    /// Smallest torsion coset `B + ζ` containing `x`.
    ///
    /// `B` is cut out by the saturated left kernel of the coefficient
    /// matrix, so `dim B` is the rank of that matrix, and `ζ` is the
    /// torsion part of `x`.
    pub fn minimal_coset(&self, x: &PointInEN) -> Result<TorsionCoset> {
        let a = self.coefficient_matrix(x)?;
        let n = x.ambient();
        let subgroup = if a.is_zero() {
            SubgroupMatrix::trivial(self.disc, n)
        } else {
            let k = a.left_kernel();
            SubgroupMatrix::new(OMatrix::from_rows_with_cols(self.disc, n, k.row_vecs())?)?
        };
        TorsionCoset::new(subgroup, self.torsion_part(x)?.normalized())
    }

    /// Whether `x` lies on the torsion coset `B + ζ` (connected `B`).
    pub fn coset_contains(&self, coset: &TorsionCoset, x: &PointInEN) -> Result<bool> {
        let s = coset.subgroup.saturate();
        let a = self.coefficient_matrix(x)?;
        if !s.matrix().mul(&a)?.is_zero() {
            return Ok(false);
        }
        coset.contains_torsion(&self.torsion_part(x)?)
    }

    /// `ĥ(y0)`, which equals the essential minimum of the translate `H + y0`
    /// once `y0` is orthogonal to `H`.
    pub fn essential_minimum_translate(&self, h: &SubgroupMatrix, y0: &PointInEN) -> Result<BigRational> {
        self.check(y0)?;
        if h.ambient() != y0.ambient() || h.disc() != self.disc {
            return Err(Error::domain("subgroup and point live in different ambients"));
        }
        let param = h.parametrization();
        for col in 0..param.cols() {
            for g in 0..self.rank() {
                let v = PointInEN {
                    coords: param
                        .column(col)
                        .into_iter()
                        .map(|c| {
                            let mut p = self.zero_point();
                            p.free[g] = c;
                            p
                        })
                        .collect(),
                };
                let s = self.nt_pairing(y0, &v)?;
                if !s.is_zero() {
                    return Err(Error::Precondition(format!(
                        "point is not orthogonal to the subgroup: pairing with column {col} on generator {g} is {s}"
                    )));
                }
            }
        }
        self.nt_height(y0)
    }
}

impl ModulePoint {
    pub fn torsion_order(&self) -> i128 {
        self.torsion_order
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(OrderElement::is_zero)
    }

    fn zip(&self, o: &ModulePoint, f: impl Fn(OrderElement, OrderElement) -> OrderElement) -> ModulePoint {
        assert_eq!(self.torsion_order, o.torsion_order, "points of different modules");
        ModulePoint {
            free: self.free.iter().zip(&o.free).map(|(&a, &b)| f(a, b)).collect(),
            torsion: f(self.torsion, o.torsion).reduce_mod(self.torsion_order),
            torsion_order: self.torsion_order,
        }
    }

    pub fn add(&self, o: &ModulePoint) -> ModulePoint {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ModulePoint) -> ModulePoint {
        self.zip(o, |a, b| a - b)
    }

    /// Image under the endomorphism `τ`.
    pub fn scale(&self, tau: OrderElement) -> ModulePoint {
        ModulePoint {
            free: self.free.iter().map(|&a| tau * a).collect(),
            torsion: (tau * self.torsion).reduce_mod(self.torsion_order),
            torsion_order: self.torsion_order,
        }
    }
}

impl PointInEN {
    pub fn new(coords: Vec<ModulePoint>) -> Self {
        PointInEN { coords }
    }

    pub fn ambient(&self) -> usize {
        self.coords.len()
    }

    pub fn is_torsion(&self) -> bool {
        self.coords.iter().all(ModulePoint::is_torsion)
    }

    pub fn add(&self, o: &PointInEN) -> PointInEN {
        PointInEN::new(self.coords.iter().zip(&o.coords).map(|(p, q)| p.add(q)).collect())
    }

    pub fn sub(&self, o: &PointInEN) -> PointInEN {
        PointInEN::new(self.coords.iter().zip(&o.coords).map(|(p, q)| p.sub(q)).collect())
    }

    pub fn scale(&self, tau: OrderElement) -> PointInEN {
        PointInEN::new(self.coords.iter().map(|p| p.scale(tau)).collect())
    }
}

/// `τ · x` coordinatewise.
pub fn isogeny_action(tau: OrderElement, x: &PointInEN) -> Result<PointInEN> {
    if x.coords.iter().any(|p| p.torsion.disc != tau.disc) {
        return Err(Error::domain("endomorphism and point use different discriminants"));
    }
    Ok(x.scale(tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn d4() -> Discriminant {
        Discriminant::new(-4).unwrap()
    }

    fn big(n: i128) -> BigRational {
        rat(n, 1)
    }

    #[test]
    fn rejects_bad_gram() {
        let disc = d4();
        let q = |a, b| QElem::from_rational(rat(a, b), disc);
        assert!(ModuleSpec::new(disc, vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(1, 1)]], 1).is_err());
        let off = QElem::new(rat(0, 1), rat(1, 1), disc);
        assert!(ModuleSpec::new(disc, vec![vec![q(2, 1), off.clone()], vec![off, q(2, 1)]], 1).is_err());
        assert!(ModuleSpec::standard(disc, 2, 0).is_err());
    }

    #[test]
    fn height_examples() {
        let spec = ModuleSpec::standard(d4(), 1, 4).unwrap();
        let tors = PointInEN::new(vec![spec.point_from_pairs(&[(0, 0)], (1, 1)).unwrap()]);
        assert_eq!(spec.nt_height(&tors).unwrap(), big(0));
        let p = PointInEN::new(vec![spec.point_from_pairs(&[(2, 0)], (0, 0)).unwrap()]);
        assert_eq!(spec.nt_height(&p).unwrap(), big(4));
        let p = PointInEN::new(vec![spec.point_from_pairs(&[(1, 1)], (0, 0)).unwrap()]);
        assert_eq!(spec.nt_height(&p).unwrap(), big(2));
    }

    #[test]
    fn pairing_example() {
        let disc = d4();
        let q = |a, b| QElem::from_rational(rat(a, b), disc);
        let spec = ModuleSpec::new(disc, vec![vec![q(1, 1), q(1, 2)], vec![q(1, 2), q(1, 1)]], 1).unwrap();
        let g1 = PointInEN::new(vec![spec.generator(0)]);
        let g2 = PointInEN::new(vec![spec.generator(1)]);
        assert_eq!(spec.nt_pairing(&g1, &g2).unwrap().real_part(), rat(1, 2));
        assert_eq!(spec.nt_height(&g1.add(&g2)).unwrap(), big(3));
    }

    #[test]
    fn minimal_coset_examples() {
        let disc = d4();
        let spec = ModuleSpec::standard(disc, 1, 3).unwrap();
        let pt = |b: i128, z: i128| spec.point_from_pairs(&[(b, 0)], (z, 0)).unwrap();
        let x = PointInEN::new(vec![pt(1, 0), pt(1, 0), pt(1, 1)]);
        let c = spec.minimal_coset(&x).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(spec.coset_contains(&c, &x).unwrap());
        let expect = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (0, 0), (-1, 0)], vec![(0, 0), (1, 0), (-1, 0)]])
            .unwrap();
        assert_eq!(c.subgroup.hnf(), expect.hnf());

        let x = PointInEN::new(vec![pt(1, 0), pt(2, 0)]);
        let c = spec.minimal_coset(&x).unwrap();
        assert_eq!(c.subgroup.hnf(), SubgroupMatrix::from_pairs(disc, &[vec![(2, 0), (-1, 0)]]).unwrap().hnf());

        let t = PointInEN::new(vec![pt(0, 1), pt(0, 2)]);
        let c = spec.minimal_coset(&t).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(c.zeta, spec.torsion_part(&t).unwrap());
    }

    #[test]
    fn translate_minimum() {
        let disc = d4();
        let spec = ModuleSpec::standard(disc, 1, 1).unwrap();
        let pt = |b: i128| spec.point_from_pairs(&[(b, 0)], (0, 0)).unwrap();
        let h = SubgroupMatrix::from_pairs(disc, &[vec![(0, 0), (1, 0)]]).unwrap();
        let y0 = PointInEN::new(vec![pt(0), pt(1)]);
        assert_eq!(spec.essential_minimum_translate(&h, &y0).unwrap(), big(1));
        let diag = SubgroupMatrix::from_pairs(disc, &[vec![(1, 0), (-1, 0)]]).unwrap();
        let y0 = PointInEN::new(vec![pt(1), pt(-1)]);
        assert_eq!(spec.essential_minimum_translate(&diag, &y0).unwrap(), big(2));
        let bad = PointInEN::new(vec![pt(1), pt(1)]);
        assert!(matches!(
            spec.essential_minimum_translate(&diag, &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn isogenies_scale_heights() {
        let disc = d4();
        let spec = ModuleSpec::standard(disc, 2, 5).unwrap();
        let x = PointInEN::new(vec![spec.point_from_pairs(&[(1, 2), (-1, 1)], (3, 1)).unwrap()]);
        let h = spec.nt_height(&x).unwrap();
        assert_eq!(isogeny_action(disc.one(), &x).unwrap(), x);
        assert_eq!(spec.nt_height(&isogeny_action(disc.omega(), &x).unwrap()).unwrap(), h);
        let tau = OrderElement::new(1, 1, disc);
        assert_eq!(spec.nt_height(&isogeny_action(tau, &x).unwrap()).unwrap(), h * big(2));
    }
}
