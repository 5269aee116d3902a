//! Reducing membership in a finite-rank subgroup `Γ` to torsion varieties.
//!
//! A point is described by relations
//! `a_i · x_i = Σ_j b_ij g_j + ζ_i` with `a_i ≠ 0`. Eliminating the
//! generators from these relations yields equations `Σ_i h_i x_i = ρ`
//! with torsion right-hand side, that is, a torsion variety through `x`.

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::serde_rational;
use crate::matrix::OMatrix;
use crate::mordell_weil::{ModuleSpec, PointInEN};
use crate::orders::OrderElement;
use crate::subgroups::{is_anomalous, solve_torsion, SubgroupMatrix, TorsionCoset, TorsionPoint};

/// A point of `E^N` given by `a_i x_i = Σ_j b_ij g_j + ζ_i T`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPoint {
    pub a: Vec<OrderElement>,
    /// `N×t` coefficient matrix.
    pub b: OMatrix,
    /// Torsion classes modulo the module's torsion order.
    pub zeta: Vec<OrderElement>,
}

/// The torsion variety `{y ∈ E^N : M y = ρ}`.
#[derive(Debug, Clone)]
pub struct TorsionVariety {
    pub equations: OMatrix,
    pub rhs: TorsionPoint,
    /// `ker φ_M + ζ₀` with `M ζ₀ = ρ`; equal to the whole variety.
    pub coset: TorsionCoset,
}

#[derive(Debug, Clone)]
pub enum Reduction {
    /// Every `b_ij` vanishes, so `x` is torsion and has height zero.
    TorsionPoint,
    Variety(TorsionVariety),
}

impl GammaPoint {
    pub fn new(spec: &ModuleSpec, a: Vec<OrderElement>, b: OMatrix, zeta: Vec<OrderElement>) -> Result<Self> {
        let n = a.len();
        if n == 0 || b.rows() != n || zeta.len() != n || b.cols() != spec.rank() {
            return Err(Error::domain(format!(
                "expected {n} relations over a rank-{} module, got b of shape {}x{} and {} torsion classes",
                spec.rank(),
                b.rows(),
                b.cols(),
                zeta.len()
            )));
        }
        if let Some(i) = a.iter().position(OrderElement::is_zero) {
            return Err(Error::domain(format!("a_{} must be nonzero", i + 1)));
        }
        if a.iter().chain(&zeta).any(|x| x.disc != spec.disc()) || b.disc() != spec.disc() {
            return Err(Error::domain("relation coefficients use a different discriminant"));
        }
        let r = spec.torsion_order();
        Ok(GammaPoint {
            a,
            b,
            zeta: zeta.iter().map(|z| z.reduce_mod(r)).collect(),
        })
    }

    /// The relations satisfied by a point of the module model (`a_i = 1`).
    pub fn from_point(spec: &ModuleSpec, x: &PointInEN) -> Result<Self> {
        let disc = spec.disc();
        GammaPoint::new(
            spec,
            vec![disc.one(); x.ambient()],
            spec.coefficient_matrix(x)?,
            x.coords.iter().map(|p| p.torsion).collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.a.len()
    }

    pub fn is_torsion(&self) -> bool {
        self.b.is_zero()
    }

    /// Rank of the coefficient matrix: the dimension of the smallest
    /// torsion coset through the point.
    pub fn coefficient_rank(&self) -> usize {
        self.b.rank()
    }

    /// Whether `Σ h_i x_i = ρ` holds: every `h_i` must be a multiple of
    /// `a_i`, the generator parts must cancel, and the torsion parts must
    /// agree at the module's torsion level.
    pub fn satisfies(&self, spec: &ModuleSpec, h: &[OrderElement], rhs: &TorsionPoint) -> Result<bool> {
        let disc = spec.disc();
        let mut free = vec![disc.zero(); spec.rank()];
        let mut tors = disc.zero();
        for (i, &hi) in h.iter().enumerate() {
            let Some(f) = hi.div_exact(&self.a[i]) else {
                return Err(Error::Precondition(format!(
                    "equation coefficient {hi} is not a multiple of a_{} = {}",
                    i + 1,
                    self.a[i]
                )));
            };
            for (j, slot) in free.iter_mut().enumerate() {
                *slot += f * self.b[(i, j)];
            }
            tors += f * self.zeta[i];
        }
        if free.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        let lhs = TorsionPoint::new(spec.torsion_order(), vec![tors])?;
        Ok(lhs == *rhs)
    }
}

impl TorsionVariety {
    fn new(equations: OMatrix, rhs: TorsionPoint) -> Result<Self> {
        let zeta = solve_torsion(&equations, &rhs)
            .ok_or_else(|| Error::domain("torsion equations have no solution"))?;
        let subgroup = SubgroupMatrix::new(equations.clone())?;
        let coset = TorsionCoset::new(subgroup, zeta)?;
        Ok(TorsionVariety { equations, rhs, coset })
    }

    pub fn codim(&self) -> usize {
        self.equations.rows()
    }

    pub fn dim(&self) -> usize {
        self.equations.cols() - self.codim()
    }

    /// Whether the point satisfies every defining equation.
    pub fn contains(&self, spec: &ModuleSpec, x: &GammaPoint) -> Result<bool> {
        for k in 0..self.codim() {
            let rhs = TorsionPoint::new(self.rhs.level(), vec![self.rhs.coords()[k]])?;
            if !x.satisfies(spec, self.equations.row(k), &rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Eliminate the generators: for each relation `c` with `Σ_i c_i b_i = 0`
/// the point satisfies `Σ_i c_i a_i x_i = Σ_i c_i ζ_i`. The resulting
/// variety has codimension `N − rank(b)`.
pub fn gamma_to_torsion_variety(spec: &ModuleSpec, x: &GammaPoint) -> Result<Reduction> {
    if x.is_torsion() {
        return Ok(Reduction::TorsionPoint);
    }
    let disc = spec.disc();
    let n = x.ambient();
    let relations = x.b.left_kernel();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..relations.rows() {
        let c = relations.row(k);
        rows.push(c.iter().zip(&x.a).map(|(&ci, &ai)| ci * ai).collect());
        rhs.push(c.iter().zip(&x.zeta).fold(disc.zero(), |acc, (&ci, &z)| acc + ci * z));
    }
    if rows.is_empty() {
        // rank(b) = N: the only torsion variety through x is E^N
        return Ok(Reduction::Variety(TorsionVariety {
            equations: OMatrix::zeros(disc, 0, n),
            rhs: TorsionPoint::zero(disc, 1),
            coset: TorsionCoset::new(SubgroupMatrix::whole(disc, n), TorsionPoint::zero(disc, n))?,
        }));
    }
    let equations = OMatrix::from_rows_with_cols(disc, n, rows)?;
    let rhs = TorsionPoint::new(spec.torsion_order(), rhs)?;
    Ok(Reduction::Variety(TorsionVariety::new(equations, rhs)?))
}

/// The lift `(x, g) ∈ E^{N+t}` and the torsion variety
/// `{a_i y_i − Σ_j b_ij y_{N+j} = ζ_i}` of codimension `N` containing it.
#[derive(Debug, Clone)]
pub struct Lift {
    pub point: GammaPoint,
    pub variety: TorsionVariety,
    /// Set when `x` is torsion: the equations no longer involve the
    /// generator coordinates.
    pub degenerate: bool,
}

pub fn transverse_lift(spec: &ModuleSpec, x: &GammaPoint) -> Result<Lift> {
    let t = spec.rank();
    if t == 0 {
        return Err(Error::domain("the lift needs a module of positive rank"));
    }
    let disc = spec.disc();
    let n = x.ambient();
    let mut a = x.a.clone();
    a.extend(std::iter::repeat_n(disc.one(), t));
    let mut b_rows = x.b.row_vecs();
    for j in 0..t {
        b_rows.push((0..t).map(|k| if j == k { disc.one() } else { disc.zero() }).collect());
    }
    let mut zeta = x.zeta.clone();
    zeta.extend(std::iter::repeat_n(disc.zero(), t));
    let point = GammaPoint::new(spec, a, OMatrix::from_rows_with_cols(disc, t, b_rows)?, zeta)?;

    let rows: Vec<Vec<OrderElement>> = (0..n)
        .map(|i| {
            let mut row = vec![disc.zero(); n + t];
            row[i] = x.a[i];
            for j in 0..t {
                row[n + j] = -x.b[(i, j)];
            }
            row
        })
        .collect();
    let equations = OMatrix::from_rows_with_cols(disc, n + t, rows)?;
    let rhs = TorsionPoint::new(spec.torsion_order(), x.zeta.clone())?;
    let variety = TorsionVariety::new(equations, rhs)?;
    Ok(Lift {
        point,
        variety,
        degenerate: x.is_torsion(),
    })
}

/// Parameters of the ambient variety `V ⊆ E^N` that the classifier needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub dim_v: usize,
    #[serde(with = "serde_rational")]
    pub h_v: BigRational,
    #[serde(with = "serde_rational")]
    pub deg_v: BigRational,
    #[serde(with = "serde_rational")]
    pub deg_ktor_v: BigRational,
    #[serde(with = "serde_rational")]
    pub deg_k_v: BigRational,
}

impl VarietyParams {
    pub fn validate(&self) -> Result<()> {
        if self.dim_v >= self.n {
            return Err(Error::domain(format!("need dim V < N, got dim V = {} and N = {}", self.dim_v, self.n)));
        }
        if self.h_v.is_negative() {
            return Err(Error::domain("h(V) must be non-negative"));
        }
        for (name, v) in [("deg V", &self.deg_v), ("[k_tor(V):k_tor]", &self.deg_ktor_v), ("[k(V):k]", &self.deg_k_v)] {
            if !v.is_positive() {
                return Err(Error::domain(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Torsion,
    Anomalous,
    NotAnomalous,
}

#[derive(Debug, Clone)]
pub struct AnomalyReport {
    pub verdict: Verdict,
    pub dim_b: usize,
    /// Codimension of the point inside its minimal coset, i.e. `dim B`.
    pub relative_codim: usize,
    pub theorem_id: Option<String>,
    pub coset: TorsionCoset,
    pub notes: Vec<String>,
}

impl AnomalyReport {
    pub fn relative_codim_one(&self) -> bool {
        self.relative_codim == 1
    }
}

/// Classify a point of `V` against its minimal torsion coset.
pub fn classify_point(v: &VarietyParams, spec: &ModuleSpec, x: &PointInEN) -> Result<AnomalyReport> {
    v.validate()?;
    if v.n != x.ambient() {
        return Err(Error::domain(format!("V lives in E^{} but the point in E^{}", v.n, x.ambient())));
    }
    let coset = spec.minimal_coset(x)?;
    let dim_b = coset.dim();
    let n = v.n;
    let mut notes = Vec::new();
    if dim_b == 0 {
        notes.push("torsion point: Manin-Mumford regime, height zero".into());
        return Ok(AnomalyReport {
            verdict: Verdict::Torsion,
            dim_b,
            relative_codim: 0,
            theorem_id: None,
            coset,
            notes,
        });
    }
    let anomalous = dim_b < n && is_anomalous(0, v.dim_v, dim_b, n)?;
    let theorem_id = if !anomalous {
        None
    } else if dim_b == 1 {
        notes.push("relative codimension one: height, degree and field bounds apply; the point count follows from the same data".into());
        Some("main_hY".to_string())
    } else if v.dim_v == 1 && 2 * (n - dim_b) > n {
        notes.push("curve regime: codim B exceeds dim B".into());
        Some("curva_hY0".to_string())
    } else {
        notes.push("no explicit bound in the catalog for this configuration".into());
        None
    };
    if n == 2 && v.dim_v == 1 && dim_b == 1 {
        notes.push("N = 2 curve meeting a one-dimensional coset: the E×g family shows such points need not be bounded".into());
    }
    Ok(AnomalyReport {
        verdict: if anomalous { Verdict::Anomalous } else { Verdict::NotAnomalous },
        dim_b,
        relative_codim: dim_b,
        theorem_id,
        coset,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::orders::Discriminant;

    fn d4() -> Discriminant {
        Discriminant::new(-4).unwrap()
    }

    fn gamma(spec: &ModuleSpec, b: &[i128], z: &[i128]) -> GammaPoint {
        let disc = spec.disc();
        GammaPoint::new(
            spec,
            vec![disc.one(); b.len()],
            OMatrix::from_pairs(disc, &b.iter().map(|&x| vec![(x, 0)]).collect::<Vec<_>>()).unwrap(),
            z.iter().map(|&x| disc.int(x)).collect(),
        )
        .unwrap()
    }

    fn variety(r: Reduction) -> TorsionVariety {
        match r {
            Reduction::Variety(v) => v,
            Reduction::TorsionPoint => panic!("expected a variety"),
        }
    }

    #[test]
    fn diagonal_reduction() {
        let spec = ModuleSpec::standard(d4(), 1, 1).unwrap();
        let x = gamma(&spec, &[1, 1], &[0, 0]);
        let v = variety(gamma_to_torsion_variety(&spec, &x).unwrap());
        assert_eq!(v.codim(), 1);
        assert!(v.contains(&spec, &x).unwrap());
        let expect = SubgroupMatrix::from_pairs(d4(), &[vec![(1, 0), (-1, 0)]]).unwrap();
        assert_eq!(v.coset.subgroup.hnf(), expect.hnf());
    }

    #[test]
    fn codimension_two_in_three() {
        let spec = ModuleSpec::standard(d4(), 1, 5).unwrap();
        let x = gamma(&spec, &[1, 1, 2], &[1, 3, 4]);
        let v = variety(gamma_to_torsion_variety(&spec, &x).unwrap());
        assert_eq!(v.codim(), 2);
        assert!(v.contains(&spec, &x).unwrap());
        let moved = gamma(&spec, &[1, 1, 2], &[1, 2, 4]);
        assert!(!v.contains(&spec, &moved).unwrap());
    }

    #[test]
    fn torsion_points_are_reported() {
        let spec = ModuleSpec::standard(d4(), 1, 3).unwrap();
        let x = gamma(&spec, &[0, 0], &[1, 2]);
        assert!(matches!(gamma_to_torsion_variety(&spec, &x).unwrap(), Reduction::TorsionPoint));
    }

    #[test]
    fn lift_example() {
        let spec = ModuleSpec::standard(d4(), 1, 1).unwrap();
        let x = gamma(&spec, &[1, 2], &[0, 0]);
        let lift = transverse_lift(&spec, &x).unwrap();
        assert_eq!((lift.variety.codim(), lift.variety.dim()), (2, 1));
        assert!(lift.variety.contains(&spec, &lift.point).unwrap());
        assert!(!lift.degenerate);
        let expect = OMatrix::from_pairs(d4(), &[vec![(1, 0), (0, 0), (-1, 0)], vec![(0, 0), (1, 0), (-2, 0)]]).unwrap();
        assert_eq!(lift.variety.equations, expect);
        assert!(lift.point.coefficient_rank() <= 1);
    }

    fn curve(n: usize) -> VarietyParams {
        VarietyParams {
            n,
            dim_v: 1,
            h_v: rat(1, 1),
            deg_v: rat(1, 1),
            deg_ktor_v: rat(1, 1),
            deg_k_v: rat(1, 1),
        }
    }

    #[test]
    fn classification_examples() {
        let spec = ModuleSpec::standard(d4(), 1, 2).unwrap();
        let p = |b: i128, z: i128| spec.point_from_pairs(&[(b, 0)], (z, 0)).unwrap();
        let tors = PointInEN::new(vec![p(0, 1), p(0, 0), p(0, 1)]);
        assert_eq!(classify_point(&curve(3), &spec, &tors).unwrap().verdict, Verdict::Torsion);
        let x = PointInEN::new(vec![p(1, 0), p(2, 1), p(3, 0)]);
        let rep = classify_point(&curve(3), &spec, &x).unwrap();
        assert_eq!(rep.verdict, Verdict::Anomalous);
        assert!(rep.relative_codim_one());
        assert_eq!(rep.theorem_id.as_deref(), Some("main_hY"));
        let y = PointInEN::new(vec![p(1, 0), p(2, 1)]);
        let rep = classify_point(&curve(2), &spec, &y).unwrap();
        assert_eq!(rep.verdict, Verdict::NotAnomalous);
        assert!(!rep.notes.is_empty());
    }

    #[test]
    fn curve_regime_in_higher_rank() {
        let spec = ModuleSpec::standard(d4(), 2, 1).unwrap();
        let p = |b: (i128, i128)| spec.point_from_pairs(&[(b.0, 0), (b.1, 0)], (0, 0)).unwrap();
        let x = PointInEN::new(vec![p((1, 0)), p((0, 1)), p((1, 1)), p((1, 2)), p((2, 1))]);
        let rep = classify_point(&curve(5), &spec, &x).unwrap();
        assert_eq!(rep.dim_b, 2);
        assert_eq!(rep.verdict, Verdict::Anomalous);
        assert_eq!(rep.theorem_id.as_deref(), Some("curva_hY0"));
    }
}
