use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::intmatrix::IntMatrix;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Matrix over the Laurent ring `ℤ[t₁^±1, …, t_d^±1]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![LaurentPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one(nvars);
        }
        m
    }

    pub fn from_int(m: &IntMatrix, nvars: usize) -> Self {
        let mut p = Self::zeros(m.rows(), m.cols(), nvars);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                p[(i, j)] = LaurentPoly::constant(nvars, m[(i, j)].clone());
            }
        }
        p
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>, nvars: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().flatten().any(|p| p.nvars() != nvars) || rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows or mixed variable counts".into()));
        }
        Ok(PolyMatrix { rows: r, cols: c, nvars, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len(), self.nvars);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let rows: Vec<usize> = (r0..r0 + h).collect();
        let cols: Vec<usize> = (c0..c0 + w).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_to_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] += &block[(i, j)];
            }
        }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols, self.nvars);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        Ok(m)
    }

    /// Substitute integers for all variables. Fails if a value is not integral.
    pub fn evaluate(&self, point: &[i64]) -> Result<IntMatrix> {
        let data = self
            .entries
            .iter()
            .map(|p| p.evaluate_integer(point))
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_vec(self.rows, self.cols, data)
    }

    /// Multiply row `i` by the monomial `t^shift`.
    pub fn shift_row(&mut self, i: usize, shift: &[i64]) {
        for j in 0..self.cols {
            let e = self[(i, j)].shift(shift);
            self[(i, j)] = e;
        }
    }

    /// Per-row shifts making every entry a polynomial with some row entry
    /// having zero minimum exponent in each variable. Returns the total shift.
    fn shift_rows_to_polynomials(&mut self) -> Vec<i64> {
        let mut total = vec![0; self.nvars];
        for i in 0..self.rows {
            let mut lo: Option<Vec<i64>> = None;
            for j in 0..self.cols {
                if let Some(m) = self[(i, j)].min_exponents() {
                    lo = Some(match lo {
                        None => m,
                        Some(l) => l.iter().zip(&m).map(|(a, b)| *a.min(b)).collect(),
                    });
                }
            }
            if let Some(l) = lo {
                let s: Vec<i64> = l.iter().map(|x| -x).collect();
                self.shift_row(i, &s);
                for (t, x) in total.iter_mut().zip(&s) {
                    *t += x;
                }
            }
        }
        total
    }

    /// Exact determinant. One-variable matrices use fraction-free Bareiss
    /// elimination; several variables use evaluation and interpolation on an
    /// integer grid.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows == 0 {
            return Ok(LaurentPoly::one(self.nvars));
        }
        let mut m = self.clone();
        let shift = m.shift_rows_to_polynomials();
        let unshift: Vec<i64> = shift.iter().map(|x| -x).collect();
        let d = if self.nvars <= 1 { m.det_bareiss()? } else { m.det_interpolate()? };
        Ok(d.shift(&unshift))
    }

    fn det_bareiss(&self) -> Result<LaurentPoly> {
        let n = self.rows;
        let mut a: Vec<Vec<LaurentPoly>> =
            (0..n).map(|i| (0..n).map(|j| self[(i, j)].clone()).collect()).collect();
        let mut prev = LaurentPoly::one(self.nvars);
        let mut negate = false;
        for k in 0..n - 1 {
            let pivot = (k..n)
                .filter(|&i| !a[i][k].is_zero())
                .min_by_key(|&i| (a[i][k].len(), a[i][k].degree_in(0)));
            let Some(p) = pivot else {
                return Ok(LaurentPoly::zero(self.nvars));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    fn det_interpolate(&self) -> Result<LaurentPoly> {
        let d = self.nvars;
        // Degree bound per variable: sum over rows of the row's maximum degree.
        let mut bound = vec![0usize; d];
        for i in 0..self.rows {
            for (v, b) in bound.iter_mut().enumerate() {
                let row_max = (0..self.cols).filter_map(|j| self[(i, j)].degree_in(v)).max().unwrap_or(0);
                *b += row_max.max(0) as usize;
            }
        }
        let sizes: Vec<usize> = bound.iter().map(|b| b + 1).collect();
        let total: usize = sizes.iter().product();
        let mut values = Vec::with_capacity(total);
        let mut idx = vec![0usize; d];
        for _ in 0..total {
            let pt: Vec<i64> = idx.iter().map(|&x| x as i64).collect();
            values.push(BigRational::from_integer(self.evaluate(&pt)?.det()?));
            for (k, s) in idx.iter_mut().zip(&sizes) {
                *k += 1;
                if *k < *s {
                    break;
                }
                *k = 0;
            }
        }
        // Tensor interpolation: convert one axis at a time from values at
        // 0..size to monomial coefficients. Index order is little-endian.
        let mut stride = 1;
        for &size in &sizes {
            let block = stride * size;
            for base in (0..total).step_by(block) {
                for off in 0..stride {
                    let line: Vec<BigRational> =
                        (0..size).map(|k| values[base + off + k * stride].clone()).collect();
                    for (k, c) in interpolate_line(&line).into_iter().enumerate() {
                        values[base + off + k * stride] = c;
                    }
                }
            }
            stride = block;
        }
        let mut out = LaurentPoly::zero(d);
        let mut idx = vec![0usize; d];
        for v in values {
            if !v.is_zero() {
                if !v.is_integer() {
                    return Err(Error::DivisionInexact);
                }
                let exps = idx.iter().map(|&x| x as i64).collect();
                out += &LaurentPoly::monomial(exps, v.to_integer());
            }
            for (k, s) in idx.iter_mut().zip(&sizes) {
                *k += 1;
                if *k < *s {
                    break;
                }
                *k = 0;
            }
        }
        Ok(out)
    }

    /// Cofactor expansion along the first row; exponential time, for checks only.
    pub fn det_cofactor(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.nvars));
        }
        if n == 1 {
            return Ok(self[(0, 0)].clone());
        }
        let mut acc = LaurentPoly::zero(self.nvars);
        let rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rows, &cols).det_cofactor()?;
            let term = &self[(0, j)] * &minor;
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        Ok(acc)
    }
}

/// Newton interpolation through `(k, values[k])`, returning monomial coefficients.
fn interpolate_line(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / BigRational::from_integer(BigInt::from(level));
        }
    }
    // Horner expansion of sum dd[k] * prod_{m<k} (x - m).
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (x - k) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * BigRational::from_integer(BigInt::from(k));
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut m = PolyMatrix::zeros(self.rows, rhs.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if !rhs[(k, j)].is_zero() {
                        let p = &self[(i, k)] * &rhs[(k, j)];
                        m[(i, j)] += &p;
                    }
                }
            }
        }
        m
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
        m
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
        m
    }
}

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = -&*a;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn pm(rows: &[&[&str]], nvars: usize) -> PolyMatrix {
        let names: Vec<String> = LaurentPoly::default_names(nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| LaurentPoly::parse_with(s, &refs).unwrap()).collect())
                .collect(),
            nvars,
        )
        .unwrap()
    }

    #[test]
    fn one_by_one() {
        assert_eq!(pm(&[&["t-1"]], 1).det().unwrap(), p("t-1"));
    }

    #[test]
    fn laurent_entries() {
        let m = pm(&[&["t^-1", "1"], &["1", "t"]], 1);
        assert_eq!(m.det().unwrap(), LaurentPoly::zero(1));
        let m = pm(&[&["t^-1", "2"], &["1", "t^-2"]], 1);
        assert_eq!(m.det().unwrap(), p("t^-3-2"));
    }

    #[test]
    fn bivariate_matches_cofactor() {
        let m = pm(
            &[
                &["t1-1", "t2", "0"],
                &["1", "t1*t2-2", "t2^2"],
                &["t1^-1", "3", "t1+t2"],
            ],
            2,
        );
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn interpolation_line_recovers_cubic() {
        let f = |x: i64| 2 * x * x * x - 3 * x + 7;
        let vals: Vec<BigRational> = (0..4).map(|x| BigRational::from_integer(f(x).into())).collect();
        let c = interpolate_line(&vals);
        let want = [7, -3, 0, 2];
        for (a, b) in c.iter().zip(want) {
            assert_eq!(*a, BigRational::from_integer(b.into()));
        }
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(PolyMatrix::zeros(2, 3, 1).det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn identity_times_matrix() {
        let m = pm(&[&["t", "1"], &["2", "t^2"]], 1);
        assert_eq!(&PolyMatrix::identity(2, 1) * &m, m);
        assert_eq!(m[(1, 1)].coeff(&[2]), BigInt::one());
    }
}
