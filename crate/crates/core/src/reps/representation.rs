use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::diagram::{GroupPresentation, WirtingerPresentation, Word};
use crate::error::{Error, Result};

/// Integer matrices assigned to the generators of a presentation.
///
/// Image determinants must be units of `S⁻¹ℤ`, where `S = ring_primes`;
/// with `S` empty they must be ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub dimension: usize,
    pub ring_primes: Vec<u64>,
    pub images: Vec<IntMatrix>,
}

impl Representation {
    pub fn new(images: Vec<IntMatrix>, ring_primes: Vec<u64>) -> Result<Self> {
        let dimension = images.first().map_or(0, IntMatrix::rows);
        if dimension == 0 {
            return Err(Error::InvalidRepresentation("no generator images".into()));
        }
        for (i, m) in images.iter().enumerate() {
            if m.rows() != dimension || m.cols() != dimension {
                return Err(Error::DimensionMismatch(format!(
                    "image of generator {i} is {}x{}, expected {dimension}x{dimension}",
                    m.rows(),
                    m.cols()
                )));
            }
            let d = m.det()?;
            if !is_s_unit(&d, &ring_primes) {
                return Err(Error::InvalidRepresentation(format!(
                    "image of generator {i} has determinant {d}, not a unit of the ring"
                )));
            }
        }
        let mut ring_primes = ring_primes;
        ring_primes.sort_unstable();
        ring_primes.dedup();
        Ok(Representation { dimension, ring_primes, images })
    }

    /// Every generator sent to the identity.
    pub fn identity(generators: usize, dimension: usize) -> Self {
        Representation {
            dimension,
            ring_primes: Vec::new(),
            images: vec![IntMatrix::identity(dimension); generators],
        }
    }

    /// Permutation matrices with `e_i P = e_{σ(i)}`; permutations act on `0..n`.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(0, Vec::len);
        let mut images = Vec::with_capacity(perms.len());
        for p in perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidRepresentation(format!("{p:?} is not a permutation of 0..{n}")));
            }
            let mut m = IntMatrix::zeros(n, n);
            for (i, &j) in p.iter().enumerate() {
                m[(i, j)] = BigInt::one();
            }
            images.push(m);
        }
        Self::new(images, Vec::new())
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn is_unimodular(&self) -> bool {
        self.images.iter().all(|m| m.det().is_ok_and(|d| d.abs().is_one()))
    }

    /// Check every Wirtinger relator `X_i X_j = X_k X_i`, reporting the first failure.
    pub fn validate(&self, pres: &WirtingerPresentation) -> Result<()> {
        if self.images.len() != pres.generators {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                self.images.len(),
                pres.generators
            )));
        }
        for (idx, r) in pres.relators.iter().enumerate() {
            let (xi, xj, xk) = (&self.images[r.over], &self.images[r.left], &self.images[r.right]);
            if &(xi * xj) != &(xk * xi) {
                return Err(Error::RelatorViolation { index: idx });
            }
        }
        Ok(())
    }

    /// Check every word relator maps to the identity. Works over `S⁻¹ℤ` by
    /// carrying a common denominator.
    pub fn validate_words(&self, pres: &GroupPresentation) -> Result<()> {
        if self.images.len() != pres.generators {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                self.images.len(),
                pres.generators
            )));
        }
        let inverses = self.scaled_inverses()?;
        for (idx, w) in pres.relators.iter().enumerate() {
            let mut num = IntMatrix::identity(self.dimension);
            let mut den = BigInt::one();
            for l in w.letters() {
                if l.power > 0 {
                    num = &num * &self.images[l.generator];
                } else {
                    let (adj, det) = &inverses[l.generator];
                    num = &num * adj;
                    den *= det;
                }
            }
            if num != IntMatrix::identity(self.dimension).scale(&den) {
                return Err(Error::RelatorViolation { index: idx });
            }
        }
        Ok(())
    }

    /// Pairs `(adj X, det X)` so that `X⁻¹ = adj X / det X`.
    fn scaled_inverses(&self) -> Result<Vec<(IntMatrix, BigInt)>> {
        self.images.iter().map(|m| Ok((m.adjugate()?, m.det()?))).collect()
    }

    /// Integer inverses of all images; requires determinants ±1.
    pub fn integer_inverses(&self) -> Result<Vec<IntMatrix>> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.inverse_unimodular().ok_or_else(|| {
                    Error::InvalidRepresentation(format!("image of generator {i} is not invertible over ℤ"))
                })
            })
            .collect()
    }

    /// Image of a word; requires integer inverses for inverted letters.
    pub fn image_of_word(&self, w: &Word) -> Result<IntMatrix> {
        let inv = self.integer_inverses()?;
        let mut m = IntMatrix::identity(self.dimension);
        for l in w.letters() {
            m = &m * if l.power > 0 { &self.images[l.generator] } else { &inv[l.generator] };
        }
        Ok(m)
    }

    /// Conjugate every image by `p`: `X ↦ P X P⁻¹`. `p` must be unimodular.
    pub fn conjugate(&self, p: &IntMatrix) -> Result<Self> {
        let pinv = p
            .inverse_unimodular()
            .ok_or_else(|| Error::InvalidRepresentation("conjugating matrix is not unimodular".into()))?;
        Ok(Representation {
            dimension: self.dimension,
            ring_primes: self.ring_primes.clone(),
            images: self.images.iter().map(|x| &(p * x) * &pinv).collect(),
        })
    }

    /// Every image has trace equal to the dimension.
    pub fn is_trace_unipotent(&self) -> bool {
        let n = BigInt::from(self.dimension);
        self.images.iter().all(|m| m.trace() == n)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Parse `{"dimension": N, "ring_primes": [...], "images": [[[...]]]}`;
    /// `dimension` and `ring_primes` are optional.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            dimension: Option<usize>,
            #[serde(default)]
            ring_primes: Vec<u64>,
            images: Vec<IntMatrix>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let rep = Self::new(raw.images, raw.ring_primes)?;
        if raw.dimension.is_some_and(|d| d != rep.dimension) {
            return Err(Error::DimensionMismatch("declared dimension differs from images".into()));
        }
        Ok(rep)
    }
}

/// Propagate known generator images through the Wirtinger relators
/// (`X_k = X_i X_j X_i⁻¹`, `X_j = X_i⁻¹ X_k X_i`). Returns `None` if some
/// generator stays unknown or a needed inverse is not integral.
pub fn propagate(pres: &WirtingerPresentation, known: &BTreeMap<usize, IntMatrix>) -> Option<Vec<IntMatrix>> {
    let mut imgs: Vec<Option<IntMatrix>> = vec![None; pres.generators];
    let mut invs: Vec<Option<IntMatrix>> = vec![None; pres.generators];
    for (&g, m) in known {
        invs[g] = Some(m.inverse_unimodular()?);
        imgs[g] = Some(m.clone());
    }
    let mut changed = true;
    while changed {
        changed = false;
        for r in &pres.relators {
            let (Some(xi), Some(xi_inv)) = (&imgs[r.over], &invs[r.over]) else { continue };
            let (xi, xi_inv) = (xi.clone(), xi_inv.clone());
            match (&imgs[r.left], &imgs[r.right]) {
                (Some(xj), None) => {
                    let xk = &(&xi * xj) * &xi_inv;
                    invs[r.right] = Some(xk.inverse_unimodular()?);
                    imgs[r.right] = Some(xk);
                    changed = true;
                }
                (None, Some(xk)) => {
                    let xj = &(&xi_inv * xk) * &xi;
                    invs[r.left] = Some(xj.inverse_unimodular()?);
                    imgs[r.left] = Some(xj);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    imgs.into_iter().collect()
}

/// Whether `d` is ±(product of primes in `primes`).
pub fn is_s_unit(d: &BigInt, primes: &[u64]) -> bool {
    if d.is_zero() {
        return false;
    }
    let mut x = d.abs();
    for &p in primes {
        let p = BigInt::from(p);
        while x.is_multiple_of(&p) {
            x /= &p;
        }
    }
    x.is_one()
}

/// Distinct prime factors by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut x = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !x.is_one() && !x.is_zero() {
        let bp = BigInt::from(p);
        if &bp * &bp > x {
            out.push(x.to_string().parse().expect("prime factor fits in u64"));
            break;
        }
        if x.is_multiple_of(&bp) {
            out.push(p);
            while x.is_multiple_of(&bp) {
                x /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, wirtinger};

    fn trefoil() -> WirtingerPresentation {
        wirtinger(&parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap())
    }

    fn assign(pres: &WirtingerPresentation, a: &IntMatrix, b: &IntMatrix) -> Option<Representation> {
        for i in 0..pres.generators {
            for j in 0..pres.generators {
                if i == j {
                    continue;
                }
                let known = BTreeMap::from([(i, a.clone()), (j, b.clone())]);
                if let Some(imgs) = propagate(pres, &known) {
                    let rep = Representation::new(imgs, vec![]).unwrap();
                    if rep.validate(pres).is_ok() {
                        return Some(rep);
                    }
                }
            }
        }
        None
    }

    #[test]
    fn trefoil_parabolic_validates() {
        let x = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let y = IntMatrix::from_rows(&[[1, 0], [-1, 1]]);
        assert!(assign(&trefoil(), &x, &y).is_some());
    }

    #[test]
    fn trefoil_wrong_parameter_fails() {
        let pres = trefoil();
        let x = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let y = IntMatrix::from_rows(&[[1, 0], [2, 1]]);
        assert!(assign(&pres, &x, &y).is_none());
        let mut imgs = vec![x.clone(); 3];
        imgs[1] = y;
        let rep = Representation::new(imgs, vec![]).unwrap();
        assert!(matches!(rep.validate(&pres), Err(Error::RelatorViolation { .. })));
    }

    #[test]
    fn identity_and_permutations() {
        let pres = trefoil();
        Representation::identity(3, 4).validate(&pres).unwrap();
        let s = Representation::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        assert!(assign(&pres, &s.images[0], &s.images[1]).is_some());
        assert!(Representation::from_permutations(&[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn s_units() {
        assert!(is_s_unit(&BigInt::from(-8), &[2]));
        assert!(!is_s_unit(&BigInt::from(6), &[2]));
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_factors(&BigInt::from(97)), vec![97]);
        let m = IntMatrix::from_rows(&[[2, 0], [0, 1]]);
        assert!(Representation::new(vec![m.clone()], vec![]).is_err());
        assert!(Representation::new(vec![m], vec![2]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let rep = Representation::from_permutations(&[vec![1, 0], vec![1, 0]]).unwrap();
        let back = Representation::from_json(&rep.to_json().unwrap()).unwrap();
        assert_eq!(rep, back);
        let plain = Representation::from_json(r#"{"images": [[[1,1],[0,1]], [[1,0],[-1,1]]]}"#).unwrap();
        assert_eq!(plain.dimension, 2);
    }
}
