use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Build from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self[(i, j)] == if i == j { BigInt::one() } else { BigInt::zero() })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Block matrix from a grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<IntMatrix>]) -> Self {
        let br = blocks.len();
        let bc = blocks.first().map_or(0, Vec::len);
        let (h, w) = blocks
            .first()
            .and_then(|r| r.first())
            .map_or((0, 0), |b| (b.rows, b.cols));
        let mut m = Self::zeros(br * h, bc * w);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                m.set_block(i * h, j * w, b);
            }
        }
        m
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut prev = BigInt::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = !sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    /// Adjugate matrix, so that `m * adj(m) = det(m) I`.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut adj = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rows, &cols).det()?;
                adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
            }
        }
        Ok(adj)
    }

    /// Integer inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        let d = self.det().ok()?;
        if !d.abs().is_one() {
            return None;
        }
        let adj = self.adjugate().ok()?;
        Some(adj.scale(&d))
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimensions");
        let mut m = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        m.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        m
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimensions");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimensions");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.to_rows().into_iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut rows = Vec::with_capacity(raw.len());
        for r in raw {
            let mut row = Vec::with_capacity(r.len());
            for v in r {
                let x: BigInt = match &v {
                    serde_json::Value::Number(n) => n.to_string().parse(),
                    serde_json::Value::String(s) => s.parse(),
                    _ => return Err(serde::de::Error::custom("matrix entries must be integers")),
                }
                .map_err(serde::de::Error::custom)?;
                row.push(x);
            }
            rows.push(row);
        }
        IntMatrix::from_big_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Invariant factors of an integer matrix.
///
/// The cokernel refers to the row-vector map `x ↦ xM`, i.e. the abelian group
/// with one generator per column and one relation per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    /// Nonzero diagonal entries `d₁ | d₂ | …`, all positive.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub free_rank_of_cokernel: usize,
}

impl SnfResult {
    /// Order of the torsion subgroup of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Invariant factors greater than one.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith form `S = U M V` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub result: SnfResult,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    Smith::run(m, false).result
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    Smith::run(m, true)
}

struct Smith {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

impl Smith {
    fn run(m: &IntMatrix, transforms: bool) -> SmithDecomposition {
        let (r, c) = (m.rows, m.cols);
        let mut s = Smith {
            a: m.to_rows(),
            u: transforms.then(|| IntMatrix::identity(r).to_rows()),
            v: transforms.then(|| IntMatrix::identity(c).to_rows()),
        };
        let mut t = 0;
        while t < r.min(c) {
            let Some((pi, pj)) = s.min_entry(t) else { break };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..r {
                    if s.a[i][t].is_zero() {
                        continue;
                    }
                    let q = s.a[i][t].div_floor(&s.a[t][t]);
                    s.add_row(i, t, &-q);
                    dirty |= !s.a[i][t].is_zero();
                }
                for j in t + 1..c {
                    if s.a[t][j].is_zero() {
                        continue;
                    }
                    let q = s.a[t][j].div_floor(&s.a[t][t]);
                    s.add_col(j, t, &-q);
                    dirty |= !s.a[t][j].is_zero();
                }
                if dirty {
                    let (bi, bj) = s.min_in_cross(t);
                    s.swap_rows(t, bi);
                    s.swap_cols(t, bj);
                    continue;
                }
                let bad = (t + 1..r).find_map(|i| {
                    (t + 1..c).any(|j| !s.a[i][j].is_multiple_of(&s.a[t][t])).then_some(i)
                });
                match bad {
                    Some(i) => s.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if s.a[t][t].is_negative() {
                s.negate_row(t);
            }
            t += 1;
        }
        let rank = t;
        let invariant_factors: Vec<BigInt> = (0..rank).map(|i| s.a[i][i].clone()).collect();
        let result = SnfResult { invariant_factors, rank, free_rank_of_cokernel: c - rank };
        let diagonal = IntMatrix::from_big_rows(s.a).unwrap_or_else(|_| IntMatrix::zeros(r, c));
        let left = s.u.map_or_else(|| IntMatrix::identity(r), |u| IntMatrix::from_big_rows(u).unwrap());
        let right = s.v.map_or_else(|| IntMatrix::identity(c), |v| IntMatrix::from_big_rows(v).unwrap());
        SmithDecomposition {
            result,
            diagonal: if r == 0 || c == 0 { IntMatrix::zeros(r, c) } else { diagonal },
            left,
            right,
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().map_or(true, |b| ax < b.2) {
                    let done = ax.is_one();
                    best = Some((i, j, ax));
                    if done {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a[t][t].abs());
        for i in t + 1..self.a.len() {
            let x = self.a[i][t].abs();
            if !x.is_zero() && x < best.2 {
                best = (i, t, x);
            }
        }
        for j in t + 1..self.a[t].len() {
            let x = self.a[t][j].abs();
            if !x.is_zero() && x < best.2 {
                best = (t, j, x);
            }
        }
        (best.0, best.1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        add_scaled_row(&mut self.a, i, j, k);
        if let Some(u) = &mut self.u {
            add_scaled_row(u, i, j, k);
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for row in &mut self.a {
            if !row[j].is_zero() {
                let d = &row[j] * k;
                row[i] += d;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v {
                if !row[j].is_zero() {
                    let d = &row[j] * k;
                    row[i] += d;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }
}

fn add_scaled_row(a: &mut [Vec<BigInt>], i: usize, j: usize, k: &BigInt) {
    let (src, dst) = if i < j {
        let (lo, hi) = a.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * k;
        }
    }
}

/// Row-style Hermite normal form: the nonzero rows of an echelon basis of the
/// row lattice, with positive pivots and reduced entries above each pivot.
pub fn hermite_rows(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out_row = 0;
    for col in 0..cols {
        loop {
            let nz: Vec<usize> = (out_row..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            a.swap(out_row, p);
            let mut again = false;
            for i in out_row + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[out_row][col]);
                add_scaled_row(&mut a, i, out_row, &-q);
                again |= !a[i][col].is_zero();
            }
            if !again {
                break;
            }
        }
        if out_row < a.len() && !a[out_row][col].is_zero() {
            if a[out_row][col].is_negative() {
                for x in &mut a[out_row] {
                    *x = -std::mem::take(x);
                }
            }
            for i in 0..out_row {
                let q = a[i][col].div_floor(&a[out_row][col]);
                if !q.is_zero() {
                    add_scaled_row(&mut a, i, out_row, &-q);
                }
            }
            out_row += 1;
        }
    }
    a.truncate(out_row);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(m.det().unwrap(), BigInt::from(18));
        let u = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let ui = u.inverse_unimodular().unwrap();
        assert!((&u * &ui).is_identity());
        assert!(m.inverse_unimodular().is_none());
        assert_eq!(
            IntMatrix::from_rows(&[[0, 1], [1, 0]]).det().unwrap(),
            BigInt::from(-1)
        );
        assert!(matches!(IntMatrix::zeros(2, 3).det(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn smith_small_cases() {
        let r = smith_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 4]]));
        assert_eq!(r.invariant_factors, big(&[2, 4]));
        assert_eq!(r.free_rank_of_cokernel, 0);
        let r = smith_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(r.invariant_factors, big(&[1, 6]));
        let r = smith_normal_form(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        assert_eq!(r.invariant_factors, big(&[2, 6, 12]));
        let r = smith_normal_form(&IntMatrix::from_rows(&[[1, 1, 1]]));
        assert_eq!((r.rank, r.free_rank_of_cokernel), (1, 2));
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let m = IntMatrix::from_rows(&[[4, 6, 2], [2, 8, 10], [6, 0, 3], [1, 1, 1]]);
        let d = smith_decomposition(&m);
        let s = &(&d.left * &m) * &d.right;
        assert_eq!(s, d.diagonal);
        assert!(d.left.det().unwrap().abs().is_one());
        assert!(d.right.det().unwrap().abs().is_one());
    }

    #[test]
    fn hermite_basis() {
        let rows = vec![big(&[2, 0]), big(&[0, 2]), big(&[1, 1])];
        let h = hermite_rows(&rows, 2);
        assert_eq!(h, vec![big(&[1, 1]), big(&[0, 2])]);
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let m: IntMatrix = serde_json::from_str(r#"[[1,"2"],[3,4]]"#).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[[1, 2], [3, 4]]));
    }
}
