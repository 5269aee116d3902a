//! Integer matrices, diagonalization with transforms, and linear algebra
//! over `Z/nZ` and `Q/Z`.

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

/// `u · m · v = diag(d)`, with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct Diagonal {
    pub u: IMatrix,
    pub v: IMatrix,
    /// Diagonal entries, `min(rows, cols)` of them, non-negative.
    pub d: Vec<i128>,
}

impl IMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, &x) in r.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IMatrix) -> IMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[t] -= q · row[s]`
    fn row_op(&mut self, t: usize, s: usize, q: i128) {
        for c in 0..self.cols {
            let x = self[(s, c)];
            self[(t, c)] -= q * x;
        }
    }

    /// `col[t] -= q · col[s]`
    fn col_op(&mut self, t: usize, s: usize, q: i128) {
        for r in 0..self.rows {
            let x = self[(r, s)];
            self[(r, t)] -= q * x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self[(i, c)] = -self[(i, c)];
        }
    }

    /// Diagonalize by unimodular row and column operations.
    ///
    /// The diagonal is not forced into divisibility order; the kernel
    /// computations below only need a diagonal form.
    pub fn diagonalize(&self) -> Diagonal {
        let mut m = self.clone();
        let mut u = IMatrix::identity(self.rows);
        let mut v = IMatrix::identity(self.cols);
        let k = self.rows.min(self.cols);
        for t in 0..k {
            loop {
                let best = (t..m.rows)
                    .flat_map(|i| (t..m.cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| m[(i, j)] != 0)
                    .min_by_key(|&(i, j)| (m[(i, j)].abs(), i, j));
                let Some((bi, bj)) = best else { break };
                m.swap_rows(t, bi);
                u.swap_rows(t, bi);
                m.swap_cols(t, bj);
                v.swap_cols(t, bj);
                let p = m[(t, t)];
                let mut clean = true;
                for i in t + 1..m.rows {
                    let q = Integer::div_floor(&m[(i, t)], &p);
                    if q != 0 {
                        m.row_op(i, t, q);
                        u.row_op(i, t, q);
                    }
                    if m[(i, t)] != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..m.cols {
                    let q = Integer::div_floor(&m[(t, j)], &p);
                    if q != 0 {
                        m.col_op(j, t, q);
                        v.col_op(j, t, q);
                    }
                    if m[(t, j)] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if m[(t, t)] < 0 {
                m.negate_row(t);
                u.negate_row(t);
            }
        }
        let d = (0..k).map(|i| m[(i, i)]).collect();
        Diagonal { u, v, d }
    }

    /// Number of `x ∈ (Z/n)^cols` with `self · x ≡ 0 (mod n)`.
    pub fn kernel_count_mod(&self, n: i128) -> u128 {
        let diag = self.diagonalize();
        let mut count: u128 = 1;
        for j in 0..self.cols {
            let g = match diag.d.get(j) {
                Some(&d) => d.gcd(&n),
                None => n,
            };
            count *= g as u128;
        }
        count
    }

    /// All `x ∈ [0, n)^cols` with `self · x ≡ 0 (mod n)`, sorted.
    pub fn kernel_mod(&self, n: i128) -> Vec<Vec<i128>> {
        let diag = self.diagonalize();
        // y_j ranges over multiples of n / gcd(d_j, n)
        let steps: Vec<i128> = (0..self.cols)
            .map(|j| match diag.d.get(j) {
                Some(&d) => n / d.gcd(&n),
                None => 1,
            })
            .collect();
        let mut out = Vec::new();
        let mut y = vec![0i128; self.cols];
        loop {
            let x: Vec<i128> = diag.v.mul_vec(&y).into_iter().map(|c| c.rem_euclid(n)).collect();
            out.push(x);
            let mut j = 0;
            loop {
                if j == self.cols {
                    out.sort();
                    out.dedup();
                    return out;
                }
                y[j] += steps[j];
                if y[j] < n {
                    break;
                }
                y[j] = 0;
                j += 1;
            }
        }
    }

    /// Solve `self · x ≡ rhs / level (mod Z^rows)` for `x ∈ (Q/Z)^cols`.
    ///
    /// Returns `(numerators, denominator)` of one solution with
    /// `numerators` reduced into `[0, denominator)`, or `None` when the
    /// system is inconsistent.
    pub fn solve_q_mod_z(&self, rhs: &[i128], level: i128) -> Option<(Vec<i128>, i128)> {
        assert_eq!(rhs.len(), self.rows);
        let diag = self.diagonalize();
        let urhs = diag.u.mul_vec(rhs);
        let mut denom = level;
        for (i, &r) in urhs.iter().enumerate() {
            match diag.d.get(i) {
                Some(&d) if d != 0 => denom = denom.lcm(&(level * d)),
                _ => {
                    if r.rem_euclid(level) != 0 {
                        return None;
                    }
                }
            }
        }
        let y: Vec<i128> = (0..self.cols)
            .map(|j| match diag.d.get(j) {
                Some(&d) if d != 0 => urhs[j] * (denom / (level * d)),
                _ => 0,
            })
            .collect();
        let x: Vec<i128> = diag.v.mul_vec(&y).into_iter().map(|c| c.rem_euclid(denom)).collect();
        Some((x, denom))
    }
}

impl std::ops::Index<(usize, usize)> for IMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_kernel(m: &IMatrix, n: i128) -> Vec<Vec<i128>> {
        let total = (n as usize).pow(m.cols() as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut x = Vec::with_capacity(m.cols());
            let mut k = idx;
            for _ in 0..m.cols() {
                x.push((k % n as usize) as i128);
                k /= n as usize;
            }
            if m.mul_vec(&x).iter().all(|c| c.rem_euclid(n) == 0) {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn diagonal_form_reconstructs() {
        let m = IMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let diag = m.diagonalize();
        let prod = diag.u.mul(&m).mul(&diag.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { diag.d[i] } else { 0 };
                assert_eq!(prod[(i, j)], expect);
            }
        }
    }

    #[test]
    fn kernel_matches_brute_force() {
        let m = IMatrix::from_rows(&[vec![2, 3, 0], vec![0, 4, 6]]);
        for n in 1..=6 {
            let fast = m.kernel_mod(n);
            assert_eq!(fast, brute_kernel(&m, n));
            assert_eq!(m.kernel_count_mod(n), fast.len() as u128);
        }
    }

    #[test]
    fn solve_modulo_integers() {
        let m = IMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let (x, den) = m.solve_q_mod_z(&[1, 1], 1).unwrap();
        // 2x ≡ 0, 3y ≡ 0 mod Z is solvable with x = y = 0
        assert_eq!(x.len(), 2);
        let r = m.mul_vec(&x);
        assert!(r.iter().all(|c| c % den == 0));
        let (x, den) = m.solve_q_mod_z(&[1, 2], 5).unwrap();
        let r = m.mul_vec(&x);
        assert_eq!((r[0] - den / 5).rem_euclid(den), 0);
        assert_eq!((r[1] - 2 * den / 5).rem_euclid(den), 0);
        let singular = IMatrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(singular.solve_q_mod_z(&[1, 0], 2).is_none());
    }
}
