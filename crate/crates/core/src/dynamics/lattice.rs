use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{smith_decomposition, IntMatrix};
use crate::error::{Error, Result};

/// A finite-index sublattice `Λ ⊆ ℤᵈ` given by basis rows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sublattice {
    pub dim: usize,
    pub basis: IntMatrix,
    pub index: u64,
    /// Shortest nonzero vector length, Euclidean.
    pub min_length: f64,
    #[serde(skip)]
    quotient: Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Quotient {
    /// Nontrivial cyclic orders of `ℤᵈ/Λ`.
    orders: Vec<u64>,
    /// Columns of the right transform belonging to those orders.
    columns: Vec<Vec<i64>>,
}

impl Sublattice {
    pub fn new(basis: IntMatrix) -> Result<Self> {
        let dim = basis.cols();
        if basis.rows() != dim || dim == 0 {
            return Err(Error::InvalidLattice("basis must be a nonempty square matrix".into()));
        }
        let det = basis.det()?.abs();
        if det.is_zero() {
            return Err(Error::InvalidLattice("basis is singular".into()));
        }
        let index = det.to_u64().ok_or_else(|| Error::InvalidLattice("index too large".into()))?;
        let dec = smith_decomposition(&basis);
        let mut orders = Vec::new();
        let mut columns = Vec::new();
        for i in 0..dim {
            let d = dec.diagonal[(i, i)].abs().to_u64().expect("divides the index");
            if d > 1 {
                orders.push(d);
                columns.push(
                    (0..dim)
                        .map(|r| dec.right[(r, i)].mod_floor(&BigInt::from(d)).to_i64().expect("reduced"))
                        .collect(),
                );
            }
        }
        let quotient = Quotient { orders, columns };
        let mut lat = Sublattice { dim, basis, index, min_length: 0.0, quotient };
        lat.min_length = lat.shortest_vector();
        Ok(lat)
    }

    /// `rℤ ⊆ ℤ`.
    pub fn cyclic(r: u64) -> Result<Self> {
        Self::diagonal(&[r])
    }

    pub fn diagonal(entries: &[u64]) -> Result<Self> {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(e);
        }
        Self::new(m)
    }

    /// `diag(r, …, r)` in dimension `d`.
    pub fn scalar(dim: usize, r: u64) -> Result<Self> {
        Self::diagonal(&vec![r; dim])
    }

    /// Position of the class of `v ∈ ℤᵈ` in `0..index`.
    pub fn class_of(&self, v: &[i64]) -> usize {
        let mut idx = 0usize;
        for (order, col) in self.quotient.orders.iter().zip(&self.quotient.columns) {
            let c: i64 = v.iter().zip(col).map(|(a, b)| a * b).sum();
            idx = idx * (*order as usize) + c.rem_euclid(*order as i64) as usize;
        }
        idx
    }

    /// Orders of the cyclic factors of `ℤᵈ/Λ`, matching the digits of a class.
    pub fn quotient_orders(&self) -> &[u64] {
        &self.quotient.orders
    }

    /// Class of the sum of two classes.
    pub fn add_classes(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0usize, 1usize);
        for &o in self.quotient.orders.iter().rev() {
            let o = o as usize;
            out += ((a % o + b % o) % o) * place;
            place *= o;
            a /= o;
            b /= o;
        }
        out
    }

    fn contains(&self, v: &[i64]) -> bool {
        self.class_of(v) == 0
    }

    fn shortest_vector(&self) -> f64 {
        let bound = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.basis[(i, j)].to_f64().unwrap_or(f64::MAX).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::MAX, f64::min);
        let r = bound.floor() as i64;
        if self.dim > 3 || r > 200 {
            return bound;
        }
        let mut best = bound;
        let mut v = vec![-r; self.dim];
        loop {
            let len = v.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
            if len > 0.0 && len < best && self.contains(&v) {
                best = len;
            }
            let mut k = 0;
            loop {
                if k == self.dim {
                    return best;
                }
                if v[k] < r {
                    v[k] += 1;
                    break;
                }
                v[k] = -r;
                k += 1;
            }
        }
    }
}
