//! Dense matrices over the order and their Hermite normal forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::intmat::IMatrix;
use crate::orders::{Discriminant, OrderElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OMatrix {
    disc: Discriminant,
    rows: usize,
    cols: usize,
    data: Vec<OrderElement>,
}

/// Row Hermite normal form with the unimodular transform that produced it.
#[derive(Debug, Clone)]
pub struct Hermite {
    /// `h = u · m`.
    pub h: OMatrix,
    pub u: OMatrix,
    /// Column index of each nonzero row's pivot.
    pub pivots: Vec<usize>,
}

impl OMatrix {
    pub fn zeros(disc: Discriminant, rows: usize, cols: usize) -> Self {
        OMatrix {
            disc,
            rows,
            cols,
            data: vec![disc.zero(); rows * cols],
        }
    }

    pub fn identity(disc: Discriminant, n: usize) -> Self {
        let mut m = Self::zeros(disc, n, n);
        for i in 0..n {
            m[(i, i)] = disc.one();
        }
        m
    }

    pub fn from_rows(disc: Discriminant, rows: Vec<Vec<OrderElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(disc, cols, rows)
    }

    /// Like [`OMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(disc: Discriminant, cols: usize, rows: Vec<Vec<OrderElement>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::domain(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for x in row {
                if x.disc != disc {
                    return Err(Error::domain(format!("entry {x} has discriminant {}, expected {disc}", x.disc)));
                }
                data.push(x);
            }
        }
        Ok(OMatrix {
            disc,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Build from integer pairs `(a, b)`.
    pub fn from_pairs(disc: Discriminant, rows: &[Vec<(i128, i128)>]) -> Result<Self> {
        Self::from_rows(
            disc,
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| OrderElement::new(a, b, disc)).collect())
                .collect(),
        )
    }

    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[OrderElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<OrderElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<OrderElement> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(OrderElement::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(OrderElement::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.disc, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        OMatrix {
            data: self.data.iter().map(OrderElement::conj).collect(),
            ..self.clone()
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn mul(&self, other: &OMatrix) -> Result<OMatrix> {
        if self.cols != other.rows || self.disc != other.disc {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.disc, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[OrderElement]) -> Result<Vec<OrderElement>> {
        if v.len() != self.cols {
            return Err(Error::domain("vector length does not match column count"));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.disc.zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect())
    }

    /// Stack `other` below `self`.
    pub fn stack(&self, other: &OMatrix) -> Result<OMatrix> {
        if self.cols != other.cols || self.disc != other.disc {
            return Err(Error::domain("cannot stack matrices with different column counts"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(OMatrix {
            disc: self.disc,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Place `other` to the right of `self`.
    pub fn augment(&self, other: &OMatrix) -> Result<OMatrix> {
        self.transpose().stack(&other.transpose()).map(|m| m.transpose())
    }

    pub fn select_rows(&self, idx: &[usize]) -> OMatrix {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows_with_cols(self.disc, self.cols, rows).expect("rows taken from a valid matrix")
    }

    pub fn select_cols(&self, idx: &[usize]) -> OMatrix {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn nonzero_rows(&self) -> OMatrix {
        let idx: Vec<usize> = (0..self.rows).filter(|&i| !self.is_zero_row(i)).collect();
        self.select_rows(&idx)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    /// `row[target] -= q · row[source]`
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: OrderElement) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self[(source, c)];
            self[(target, c)] -= q * s;
        }
    }

    fn scale_row(&mut self, i: usize, u: OrderElement) {
        for c in 0..self.cols {
            self[(i, c)] = u * self[(i, c)];
        }
    }

    /// Row Hermite normal form over the Euclidean order.
    ///
    /// Pivots are canonical associates, entries above a pivot are the
    /// canonical Euclidean remainders modulo the pivot, and zero rows sink
    /// to the bottom. Two matrices have the same form iff their rows span
    /// the same `O`-module.
    pub fn hermite(&self) -> Hermite {
        let mut h = self.clone();
        let mut u = OMatrix::identity(self.disc, self.rows);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            loop {
                // smallest nonzero norm in the column, lowest row on ties
                let best = (pr..self.rows)
                    .filter(|&i| !h[(i, pc)].is_zero())
                    .min_by_key(|&i| (h[(i, pc)].norm(), i));
                let Some(best) = best else { break };
                h.swap_rows(pr, best);
                u.swap_rows(pr, best);
                let pivot = h[(pr, pc)];
                let mut done = true;
                for i in pr + 1..self.rows {
                    let x = h[(i, pc)];
                    if x.is_zero() {
                        continue;
                    }
                    let (q, r) = x.euclid_div(&pivot).expect("pivot is nonzero");
                    h.sub_row_multiple(i, pr, q);
                    u.sub_row_multiple(i, pr, q);
                    if !r.is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if pr < self.rows && !h[(pr, pc)].is_zero() {
                let (_, unit) = h[(pr, pc)].canonical_with_unit();
                h.scale_row(pr, unit);
                u.scale_row(pr, unit);
                let pivot = h[(pr, pc)];
                for i in 0..pr {
                    let (q, _) = h[(i, pc)].euclid_div(&pivot).expect("pivot is nonzero");
                    h.sub_row_multiple(i, pr, q);
                    u.sub_row_multiple(i, pr, q);
                }
                pivots.push(pc);
                pr += 1;
            }
        }
        Hermite { h, u, pivots }
    }

    pub fn hnf(&self) -> OMatrix {
        self.hermite().h
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        self.hermite().pivots.len()
    }

    /// Basis (as columns) of the `O`-module `{v ∈ O^cols : self · v = 0}`.
    ///
    /// The returned module is saturated in `O^cols`.
    pub fn right_kernel(&self) -> OMatrix {
        let n = self.cols;
        // rows of [selfᵀ | I] reduced on the first block; rows that vanish
        // there carry kernel vectors in the identity block
        let aug = self
            .transpose()
            .augment(&OMatrix::identity(self.disc, n))
            .expect("shapes agree");
        let herm = OMatrix {
            cols: self.rows,
            data: (0..n).flat_map(|i| aug.row(i)[..self.rows].to_vec()).collect(),
            ..aug.clone()
        }
        .hermite();
        let transformed = herm.u.mul(&aug).expect("shapes agree");
        let rank = herm.pivots.len();
        let rows: Vec<Vec<OrderElement>> = (rank..n).map(|i| transformed.row(i)[self.rows..].to_vec()).collect();
        Self::from_rows_with_cols(self.disc, n, rows)
            .expect("identity block has n columns")
            .hnf()
            .nonzero_rows()
            .transpose()
    }

    /// Basis (as rows) of `{w : w · self = 0}`.
    pub fn left_kernel(&self) -> OMatrix {
        self.transpose().right_kernel().transpose()
    }

    /// Saturation of the row module: all `O`-integral vectors in the row
    /// space over the fraction field, returned in Hermite form without zero rows.
    pub fn saturate(&self) -> OMatrix {
        let k = self.right_kernel();
        if k.cols() == 0 {
            return OMatrix::identity(self.disc, self.cols);
        }
        k.left_kernel().hnf().nonzero_rows()
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> Result<OrderElement> {
        if self.rows != self.cols {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.disc.one());
        }
        let mut m = self.clone();
        let mut sign = self.disc.one();
        let mut prev = self.disc.one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(self.disc.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(k, k)] * m[(i, j)] - m[(i, k)] * m[(k, j)];
                    m[(i, j)] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[(i, k)] = self.disc.zero();
            }
            prev = m[(k, k)];
        }
        Ok(sign * m[(n - 1, n - 1)])
    }

    /// Integer model: each entry `α` becomes the 2×2 matrix of
    /// multiplication by `α` on `O = Z ⊕ Zω`.
    pub fn to_integer(&self) -> IMatrix {
        let t = self.disc.omega_trace();
        let n = self.disc.omega_norm();
        let mut out = IMatrix::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self[(i, j)];
                out[(2 * i, 2 * j)] = x.a;
                out[(2 * i, 2 * j + 1)] = -n * x.b;
                out[(2 * i + 1, 2 * j)] = x.b;
                out[(2 * i + 1, 2 * j + 1)] = x.a + t * x.b;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for OMatrix {
    type Output = OrderElement;
    fn index(&self, (i, j): (usize, usize)) -> &OrderElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for OMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut OrderElement {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for OMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> Discriminant {
        Discriminant::new(-4).unwrap()
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let m = OMatrix::from_pairs(d4(), &[vec![(1, 1), (1, 0)], vec![(2, 0), (1, -1)]]).unwrap();
        let herm = m.hermite();
        assert_eq!(herm.u.mul(&m).unwrap(), herm.h);
        assert!(herm.u.det().unwrap().is_unit());
        assert_eq!(herm.h.hnf(), herm.h);
    }

    #[test]
    fn rank_deficient_matrix() {
        let m = OMatrix::from_pairs(d4(), &[vec![(1, 0), (0, 1)], vec![(0, 1), (-1, 0)]]).unwrap();
        // second row is ω times the first
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det().unwrap(), d4().zero());
    }

    #[test]
    fn kernel_and_saturation() {
        let disc = d4();
        let m = OMatrix::from_pairs(disc, &[vec![(2, 0), (2, 0), (0, 0)]]).unwrap();
        let k = m.right_kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let sat = m.saturate();
        assert_eq!(sat, OMatrix::from_pairs(disc, &[vec![(1, 0), (1, 0), (0, 0)]]).unwrap());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let disc = Discriminant::new(-3).unwrap();
        let m = OMatrix::from_pairs(disc, &[vec![(1, 2), (3, 0)], vec![(0, -1), (2, 1)]]).unwrap();
        let expect = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        assert_eq!(m.det().unwrap(), expect);
    }

    #[test]
    fn integer_model_respects_multiplication() {
        for disc in Discriminant::all() {
            let x = OrderElement::new(2, -3, disc);
            let y = OrderElement::new(-1, 4, disc);
            let mx = OMatrix::from_rows(disc, vec![vec![x]]).unwrap().to_integer();
            let prod = mx.mul_vec(&[y.a, y.b]);
            let xy = x * y;
            assert_eq!(prod, vec![xy.a, xy.b]);
        }
    }
}
