use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::lattice::Sublattice;
use super::mahler::mahler_1var;
use crate::algebra::{smith_normal_form, IntMatrix, LaurentPoly, PolyMatrix};
use crate::error::{Error, Result};
use crate::twisted::{coloring_polynomial, TwistedModulePresentation};

/// Torsion data of the twisted homology of the cover indexed by a lattice.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub lattice: Sublattice,
    /// Torsion order with the primes in `stripped_primes` removed.
    pub b: BigInt,
    /// Torsion order before stripping.
    pub b_unstripped: BigInt,
    pub invariant_factors: Vec<BigInt>,
    /// Free rank of the homology.
    pub beta: usize,
    pub stripped_primes: Vec<u64>,
}

/// Replace each Laurent entry by its action on `ℤ[ℤᵈ/Λ]` (rows act on the
/// right by translation).
pub fn expand_over_quotient(m: &PolyMatrix, lattice: &Sublattice) -> Result<IntMatrix> {
    if m.nvars() != lattice.dim {
        return Err(Error::DimensionMismatch(format!(
            "{} variables against a lattice in dimension {}",
            m.nvars(),
            lattice.dim
        )));
    }
    let n = lattice.index as usize;
    let mut out = IntMatrix::zeros(m.rows() * n, m.cols() * n);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            for (exps, c) in m[(i, j)].terms() {
                let shift = lattice.class_of(exps);
                for h in 0..n {
                    let target = lattice.add_classes(h, shift);
                    out[(i * n + h, j * n + target)] += c;
                }
            }
        }
    }
    Ok(out)
}

fn strip(mut x: BigInt, primes: &[u64]) -> BigInt {
    for &p in primes {
        let p = BigInt::from(p);
        while !x.is_zero() && x.is_multiple_of(&p) {
            x /= &p;
        }
    }
    x
}

/// Torsion number `b_Λ` of the full twisted chain complex of the cover,
/// with the primes in `strip_primes` removed.
pub fn torsion_number(tp: &TwistedModulePresentation, lattice: &Sublattice, strip_primes: &[u64]) -> Result<TorsionReport> {
    let full = expand_over_quotient(&tp.full_matrix(), lattice)?;
    let snf = smith_normal_form(&full);
    let mut boundary1 = PolyMatrix::zeros(tp.generators * tp.dimension, tp.dimension, tp.nvars);
    for g in 0..tp.generators {
        boundary1.set_block(g * tp.dimension, 0, &tp.generator_block(g));
    }
    let rank1 = expand_over_quotient(&boundary1, lattice)?.rank();
    let b_unstripped = snf.torsion_order();
    let mut stripped_primes = strip_primes.to_vec();
    stripped_primes.sort_unstable();
    stripped_primes.dedup();
    Ok(TorsionReport {
        lattice: lattice.clone(),
        b: strip(b_unstripped.clone(), &stripped_primes),
        b_unstripped,
        invariant_factors: snf.torsion_factors(),
        beta: snf.free_rank_of_cokernel - rank1,
        stripped_primes,
    })
}

/// Components of the fixed set: torsion order and free rank of the based
/// module tensored with `ℤ[ℤᵈ/Λ]`.
pub fn periodic_point_components(tp: &TwistedModulePresentation, lattice: &Sublattice) -> Result<(BigInt, usize)> {
    let m = expand_over_quotient(&tp.matrix, lattice)?;
    let snf = smith_normal_form(&m);
    Ok((snf.torsion_order(), snf.free_rank_of_cokernel))
}

/// `|det p(P)|` with `P` the cyclic shift of order `r`, which equals
/// `|∏_{ζ^r=1} p(ζ)|`.
pub fn cyclic_resultant(p: &LaurentPoly, r: usize) -> Result<BigInt> {
    if p.nvars() != 1 {
        return Err(Error::NotAKnot(p.nvars()));
    }
    let mut m = IntMatrix::zeros(r, r);
    for (exps, c) in p.terms() {
        let s = exps[0].rem_euclid(r as i64) as usize;
        for h in 0..r {
            m[(h, (h + s) % r)] += c;
        }
    }
    Ok(m.det()?.abs())
}

/// Torsion growth samples and the extrapolated rate.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthEstimate {
    /// `(r, index, b_r, log b_r / index)`, sorted by `r`.
    pub samples: Vec<(u64, u64, BigInt, f64)>,
    pub extrapolated_rate: f64,
    pub target: Option<f64>,
    pub residual: Option<f64>,
}

/// Sweep `Λ = diag(r, …, r)` for `r = 1..=r_max`. The rate is the mean of
/// `Δlog b / Δindex` over the top third of the sweep. `target` is the
/// polynomial whose Mahler measure the rate is compared against, with the
/// stripped primes removed from its content.
pub fn growth_sweep(
    tp: &TwistedModulePresentation,
    r_max: u64,
    strip_primes: &[u64],
    target: Option<&LaurentPoly>,
) -> Result<GrowthEstimate> {
    if r_max < 2 {
        return Err(Error::InvalidLattice("growth needs r_max ≥ 2".into()));
    }
    if coloring_polynomial(tp)?.is_zero() {
        return Err(Error::ZeroColoringPolynomial);
    }
    let reports: Vec<TorsionReport> = (1..=r_max)
        .into_par_iter()
        .map(|r| torsion_number(tp, &Sublattice::scalar(tp.nvars, r)?, strip_primes))
        .collect::<Result<_>>()?;
    let samples: Vec<(u64, u64, BigInt, f64)> = reports
        .iter()
        .zip(1..)
        .map(|(rep, r)| {
            let idx = rep.lattice.index;
            (r, idx, rep.b.clone(), big_log(&rep.b) / idx as f64)
        })
        .collect();
    let start = (r_max - r_max / 3).max(1) as usize - 1;
    let diffs: Vec<f64> = samples[start..]
        .windows(2)
        .map(|w| (big_log(&w[1].2) - big_log(&w[0].2)) / (w[1].1 as f64 - w[0].1 as f64))
        .collect();
    let extrapolated_rate = diffs.iter().sum::<f64>() / diffs.len().max(1) as f64;
    let target = match target {
        Some(p) => {
            let content = p.content();
            let kept = strip(content.clone(), strip_primes);
            let reduced = p.div_scalar_exact(&(&content / &kept)).unwrap_or_else(|| p.clone());
            Some(if reduced.nvars() == 1 {
                mahler_1var(&reduced)?
            } else {
                super::mahler::mahler_multivar(&reduced, 1e-6).value
            })
        }
        None => None,
    };
    Ok(GrowthEstimate {
        residual: target.map(|t| (extrapolated_rate - t).abs()),
        samples,
        extrapolated_rate,
        target,
    })
}

/// Natural log of a positive big integer.
pub fn big_log(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.abs().to_f64().expect("fits").ln();
    }
    let shift = bits - 900;
    let top: BigInt = x.abs() >> shift;
    top.to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}
