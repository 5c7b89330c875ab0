use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::module::TwistedModulePresentation;
use crate::algebra::{hermite_rows, linearize, smith_normal_form, IntMatrix, LaurentPoly, PolyMatrix};
use crate::diagram::{Letter, Word};
use crate::error::{Error, Result};

/// D, the denominator `det(t^{ε(x₀)}X₀ − I)`, W, `Δ₀(H₀)` and Δ.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantBundle {
    pub coloring: LaurentPoly,
    pub denominator: LaurentPoly,
    /// `D / denominator` when the division is exact.
    pub wada: Option<LaurentPoly>,
    pub h0_order: LaurentPoly,
    pub delta: LaurentPoly,
    /// Exponent shift and sign removed from Δ by unit normalization.
    pub delta_shift: Vec<i64>,
    pub delta_sign: i8,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut cur, &mut out);
    }
    out
}

fn gcd_all(polys: impl IntoIterator<Item = LaurentPoly>, nvars: usize) -> LaurentPoly {
    polys
        .into_iter()
        .fold(LaurentPoly::zero(nvars), |acc, p| if acc.is_zero() { p } else { acc.gcd(&p) })
        .normalize_unit()
}

/// `D = Δ₀(A⁰)`: gcd of the square minors obtained by deleting whole
/// relator blocks. Zero when there are too few relators.
pub fn coloring_polynomial(tp: &TwistedModulePresentation) -> Result<LaurentPoly> {
    let n = tp.dimension;
    let keep = tp.generators - 1;
    if keep == 0 {
        return Ok(LaurentPoly::one(tp.nvars));
    }
    if tp.relators < keep {
        return Ok(LaurentPoly::zero(tp.nvars));
    }
    let cols: Vec<usize> = (0..tp.matrix.cols()).collect();
    let dets: Vec<LaurentPoly> = combinations(tp.relators, keep)
        .into_par_iter()
        .map(|blocks| {
            let rows: Vec<usize> = blocks.iter().flat_map(|b| b * n..(b + 1) * n).collect();
            tp.matrix.submatrix(&rows, &cols).det()
        })
        .collect::<Result<_>>()?;
    Ok(gcd_all(dets, tp.nvars))
}

/// `det(t^{ε(x₀)}X₀ − I)`.
pub fn denominator(tp: &TwistedModulePresentation) -> Result<LaurentPoly> {
    tp.generator_block(0).det()
}

/// `Δ₀(H₀)`: gcd of the maximal minors of the blocks `t^{ε(x)}X − I`
/// stacked over `generators`, which must generate the group.
pub fn h0_order(tp: &TwistedModulePresentation, generators: &[usize]) -> Result<LaurentPoly> {
    let n = tp.dimension;
    let mut stacked = PolyMatrix::zeros(generators.len() * n, n, tp.nvars);
    for (b, &g) in generators.iter().enumerate() {
        stacked.set_block(b * n, 0, &tp.generator_block(g));
    }
    let cols: Vec<usize> = (0..n).collect();
    let dets: Vec<LaurentPoly> = combinations(stacked.rows(), n)
        .into_par_iter()
        .map(|rows| stacked.submatrix(&rows, &cols).det())
        .collect::<Result<_>>()?;
    Ok(gcd_all(dets, tp.nvars))
}

/// Structure of `H₀ = V / ⟨v(γ(c) − I) : c ∈ [π, π]⟩` as an abelian group.
///
/// `normal_generators` must normally generate the commutator subgroup.
/// Images must be unimodular.
pub fn h0_group(images: &[IntMatrix], normal_generators: &[Word]) -> Result<crate::algebra::SnfResult> {
    let n = images.first().map_or(0, IntMatrix::rows);
    let inverses: Vec<IntMatrix> = images
        .iter()
        .map(|m| m.inverse_unimodular().ok_or_else(|| Error::InvalidRepresentation("image not unimodular".into())))
        .collect::<Result<_>>()?;
    let image = |w: &Word| {
        w.letters().iter().fold(IntMatrix::identity(n), |acc, l| {
            &acc * if l.power > 0 { &images[l.generator] } else { &inverses[l.generator] }
        })
    };
    let id = IntMatrix::identity(n);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for w in normal_generators {
        rows.extend((&image(w) - &id).to_rows());
    }
    let mut basis = hermite_rows(&rows, n);
    loop {
        let mut extended = basis.clone();
        for x in images {
            let b = IntMatrix::from_big_rows(basis.clone()).unwrap_or_else(|_| IntMatrix::zeros(0, n));
            if b.rows() > 0 {
                extended.extend((&b * x).to_rows());
            }
        }
        let next = hermite_rows(&extended, n);
        if next == basis {
            break;
        }
        basis = next;
    }
    let m = if basis.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_big_rows(basis)? };
    Ok(smith_normal_form(&m))
}

/// Normal generators of the commutator subgroup for meridian generators:
/// `x_i x_{b(i)}⁻¹` with `b(i)` the first generator on the same component,
/// and commutators of those first generators.
pub fn commutator_normal_generators(abelianization: &[usize], components: usize) -> Vec<Word> {
    let bases: Vec<usize> = (0..components)
        .map(|c| abelianization.iter().position(|&a| a == c).expect("every component has a generator"))
        .collect();
    let mut out = Vec::new();
    for (g, &c) in abelianization.iter().enumerate() {
        if g != bases[c] {
            out.push(Word(vec![Letter::new(g, 1), Letter::new(bases[c], -1)]));
        }
    }
    for a in 0..components {
        for b in a + 1..components {
            let (x, y) = (bases[a], bases[b]);
            out.push(Word(vec![Letter::new(x, 1), Letter::new(y, 1), Letter::new(x, -1), Letter::new(y, -1)]));
        }
    }
    out
}

/// All invariants; `generating` lists generators that generate the group
/// (used for `Δ₀(H₀)`).
pub fn twisted_alexander(tp: &TwistedModulePresentation, generating: &[usize]) -> Result<InvariantBundle> {
    let coloring = coloring_polynomial(tp)?;
    let denom = denominator(tp)?;
    let h0 = h0_order(tp, generating)?;
    let wada = if denom.is_zero() { None } else { coloring.div_exact(&denom).ok().map(|w| w.normalize_unit()) };
    let delta = if coloring.is_zero() {
        LaurentPoly::zero(tp.nvars)
    } else if denom.is_zero() {
        return Err(Error::DivisionInexact);
    } else {
        (&coloring * &h0).div_exact(&denom)?
    };
    let (delta, delta_shift, delta_sign) = delta.normalize_unit_with_shift();
    Ok(InvariantBundle {
        coloring,
        denominator: denom.normalize_unit(),
        wada,
        h0_order: h0,
        delta,
        delta_shift,
        delta_sign,
    })
}

/// Absolute trailing and leading coefficients of the primitive form of Δ
/// and whether both are 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberingReport {
    pub trailing_abs: BigInt,
    pub leading_abs: BigInt,
    pub monic_pair: bool,
}

pub fn fibering_report(delta: &LaurentPoly) -> Result<FiberingReport> {
    if delta.nvars() != 1 {
        return Err(Error::NotAKnot(delta.nvars()));
    }
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = delta.primitive_part();
    let lead = p.leading_term().map(|(_, c)| c.abs()).expect("nonzero");
    let trail = p.trailing_term().map(|(_, c)| c.abs()).expect("nonzero");
    Ok(FiberingReport { monic_pair: lead.is_one() && trail.is_one(), trailing_abs: trail, leading_abs: lead })
}

/// `(|det F|, |det G|)` for the linearization of a square one-variable
/// presentation matrix.
pub fn pencil_indices(m: &PolyMatrix) -> Result<(BigInt, BigInt)> {
    let lin = linearize(m)?;
    Ok((lin.f.det()?.abs(), lin.g.det()?.abs()))
}

/// Values of Δ at ±1 against the expected `2^{deg φ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationReport {
    pub at_one: BigInt,
    pub expected_at_one: BigInt,
    pub at_one_holds: bool,
    pub at_minus_one: BigInt,
    /// `|Δ(−1)| / 2^{deg φ}` when the division is exact.
    pub minus_one_quotient: Option<BigInt>,
    /// Square root of the quotient when it is a perfect square.
    pub square_root: Option<BigInt>,
}

pub fn evaluation_checks(delta: &LaurentPoly, seed_degree: usize) -> Result<EvaluationReport> {
    if delta.nvars() != 1 {
        return Err(Error::NotAKnot(delta.nvars()));
    }
    let at_one = delta.evaluate_integer(&[1])?.abs();
    let at_minus_one = delta.evaluate_integer(&[-1])?.abs();
    let expected = BigInt::one() << seed_degree;
    let (q, r) = at_minus_one.div_rem(&expected);
    let minus_one_quotient = r.is_zero().then_some(q);
    let square_root = minus_one_quotient.as_ref().and_then(|q| {
        let s = q.sqrt();
        (&s * &s == *q).then_some(s)
    });
    Ok(EvaluationReport {
        at_one_holds: at_one == expected,
        at_one,
        expected_at_one: expected,
        at_minus_one,
        minus_one_quotient,
        square_root,
    })
}

/// Kronecker's test: whether `p` is, up to a unit, a product of cyclotomic
/// polynomials.
pub fn cyclotomic_test(p: &LaurentPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.nvars() != 1 {
        return Err(Error::NotUnivariate);
    }
    let mut rest = p.normalize_unit();
    if !rest.content().is_one() {
        return Ok(false);
    }
    let lead_is_unit = |q: &LaurentPoly| q.leading_term().is_some_and(|(_, c)| c.abs().is_one());
    if !lead_is_unit(&rest) || !rest.coeff(&[0]).abs().is_one() {
        return Ok(false);
    }
    let deg = rest.degree_in(0).unwrap_or(0);
    let bound = 2 * deg * deg + 2;
    while rest.degree_in(0).unwrap_or(0) > 0 {
        let mut progressed = false;
        for n in 1..=bound {
            let g = rest.gcd(&power_mod(&rest, n)?);
            if g.degree_in(0).unwrap_or(0) > 0 {
                rest = rest.div_exact(&g)?.normalize_unit();
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(t^n mod p) − 1` for monic `p`.
fn power_mod(p: &LaurentPoly, n: i64) -> Result<LaurentPoly> {
    let (_, coeffs) = p.to_dense().ok_or(Error::NotUnivariate)?;
    let lead = coeffs.last().expect("nonzero").clone();
    let monic: Vec<BigInt> = if lead.is_negative() { coeffs.iter().map(|c| -c).collect() } else { coeffs };
    let d = monic.len() - 1;
    let reduce = |mut v: Vec<BigInt>| {
        while v.len() > d {
            let top = v.pop().expect("nonempty");
            let base = v.len() - d;
            for (i, c) in monic.iter().take(d).enumerate() {
                v[base + i] -= &top * c;
            }
        }
        v
    };
    let mut acc = reduce(vec![BigInt::one()]);
    for _ in 0..n {
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(acc);
        acc = reduce(shifted);
    }
    acc.resize(d.max(1), BigInt::zero());
    acc[0] -= 1;
    Ok(LaurentPoly::from_dense(0, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn cyclotomic() {
        assert!(cyclotomic_test(&t("t^2+1")).unwrap());
        assert!(cyclotomic_test(&t("(t^2+1)*(t^10+1)")).unwrap());
        assert!(cyclotomic_test(&t("(t-1)^3*(t^2+t+1)^2")).unwrap());
        assert!(!cyclotomic_test(&t("t^2-4*t+1")).unwrap());
        assert!(!cyclotomic_test(&t("2*t^2+2")).unwrap());
        assert!(!cyclotomic_test(&t("t^2-t-1")).unwrap());
    }

    #[test]
    fn evaluations() {
        let r = evaluation_checks(&t("25*t^6-104*t^5+219*t^4-272*t^3+219*t^2-104*t+25"), 3).unwrap();
        assert!(r.at_one_holds);
        assert_eq!(r.at_minus_one, BigInt::from(968));
        assert_eq!(r.square_root, Some(BigInt::from(11)));
        let f = fibering_report(&t("(t^2-4*t+1)^2")).unwrap();
        assert!(f.monic_pair);
    }
}
