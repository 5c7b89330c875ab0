use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intmatrix::IntMatrix;
use super::laurent::LaurentPoly;
use super::polymatrix::PolyMatrix;
use crate::error::{Error, Result};

/// Companion matrix with ones on the subdiagonal and the negated
/// coefficients in the last column, so `det(tI - C) = p`.
pub fn companion(p: &LaurentPoly) -> Result<IntMatrix> {
    if p.nvars() != 1 || !p.is_polynomial() {
        return Err(Error::NotUnivariate);
    }
    let (_, coeffs) = p.to_dense().ok_or(Error::NotUnivariate)?;
    let shift = p.min_exponents().map_or(0, |m| m[0]);
    let mut dense = vec![BigInt::zero(); shift as usize];
    dense.extend(coeffs);
    let n = dense.len().saturating_sub(1);
    if n == 0 {
        return Err(Error::NotUnivariate);
    }
    if !dense[n].is_one() {
        return Err(Error::NotMonic);
    }
    let mut c = IntMatrix::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = BigInt::one();
    }
    for (i, a) in dense.iter().take(n).enumerate() {
        c[(i, n - 1)] = -a;
    }
    Ok(c)
}

/// Linear pencil `(F, G)` with `det(G - tF) = ±t^a det(M)`.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub f: IntMatrix,
    pub g: IntMatrix,
    /// Exponent shifts applied to each row before splitting by degree.
    pub row_shifts: Vec<i64>,
}

/// Block companion linearization of a square one-variable polynomial matrix.
///
/// After shifting rows to polynomial entries, `M = M₀ + M₁t + … + M_k t^k`
/// and `F = diag(I, …, I, M_k)`, `G` the block companion with last block row
/// `-M₀ … -M_{k-1}`.
pub fn linearize(m: &PolyMatrix) -> Result<Linearization> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.nvars() != 1 {
        return Err(Error::NotUnivariate);
    }
    let n = m.rows();
    let mut shifted = m.clone();
    let mut row_shifts = Vec::with_capacity(n);
    for i in 0..n {
        let lo = (0..n).filter_map(|j| shifted[(i, j)].min_exponents()).map(|e| e[0]).min().unwrap_or(0);
        shifted.shift_row(i, &[-lo]);
        row_shifts.push(-lo);
    }
    let k = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| shifted[(i, j)].degree_in(0))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let coeff = |d: usize| {
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                c[(i, j)] = shifted[(i, j)].coeff(&[d as i64]);
            }
        }
        c
    };
    if k == 0 {
        return Ok(Linearization { f: IntMatrix::zeros(n, n), g: coeff(0), row_shifts });
    }
    let size = k * n;
    let mut f = IntMatrix::identity(size);
    f.set_block((k - 1) * n, (k - 1) * n, &coeff(k));
    let mut g = IntMatrix::zeros(size, size);
    for b in 0..k - 1 {
        g.set_block(b * n, (b + 1) * n, &IntMatrix::identity(n));
    }
    for b in 0..k {
        g.set_block((k - 1) * n, b * n, &-&coeff(b));
    }
    Ok(Linearization { f, g, row_shifts })
}

impl Linearization {
    /// `G - tF` as a polynomial matrix.
    pub fn pencil(&self) -> PolyMatrix {
        let t = LaurentPoly::var(1, 0);
        &PolyMatrix::from_int(&self.g, 1) - &PolyMatrix::from_int(&self.f, 1).scale(&t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(&w("w+1")).unwrap(), IntMatrix::from_rows(&[[-1]]));
        assert_eq!(
            companion(&w("w^2-w+1")).unwrap(),
            IntMatrix::from_rows(&[[0, -1], [1, 1]])
        );
        assert_eq!(companion(&w("w^2+2w+2")).unwrap().det().unwrap(), BigInt::from(2));
        assert_eq!(companion(&w("2w+1")), Err(Error::NotMonic));
        assert_eq!(companion(&w("3")), Err(Error::NotUnivariate));
        assert_eq!(companion(&w("w^-1+1")), Err(Error::NotUnivariate));
        assert_eq!(companion(&w("w^2")).unwrap(), IntMatrix::from_rows(&[[0, 0], [1, 0]]));
    }

    #[test]
    fn scalar_quadratic_pencil() {
        let m = PolyMatrix::from_rows(vec![vec![w("t^2-5t-7")]], 1).unwrap();
        let lin = linearize(&m).unwrap();
        assert_eq!(lin.g, IntMatrix::from_rows(&[[0, 1], [7, 5]]));
        assert!(lin.f.is_identity());
        assert!(lin.pencil().det().unwrap().eq_up_to_unit(&w("t^2-5t-7")));
    }
}
