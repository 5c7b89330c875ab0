use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::representation::{prime_factors, Representation};
use crate::algebra::{companion, IntMatrix, LaurentPoly, PolyMatrix};
use crate::diagram::{GroupPresentation, Letter, Word};
use crate::error::{Error, Result};

/// A 2-bridge knot or link `k(α, β)` with `β` odd, `0 < β < α`, coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoBridgeData {
    pub alpha: u64,
    pub beta: u64,
}

impl TwoBridgeData {
    pub fn new(alpha: u64, beta: u64) -> Result<Self> {
        if beta == 0 || beta >= alpha || beta % 2 == 0 || alpha.gcd(&beta) != 1 {
            return Err(Error::NotTwoBridgeForm(format!(
                "need coprime 0 < β < α with β odd, got ({alpha}, {beta})"
            )));
        }
        Ok(TwoBridgeData { alpha, beta })
    }

    pub fn is_knot(&self) -> bool {
        self.alpha % 2 == 1
    }

    /// `e_i = (−1)^⌊iβ/α⌋` for `i = 1..α−1`.
    pub fn epsilon_sequence(&self) -> Vec<i8> {
        (1..self.alpha)
            .map(|i| if (i * self.beta / self.alpha) % 2 == 0 { 1 } else { -1 })
            .collect()
    }

    /// `W = x^{e₁} y^{e₂} x^{e₃} ⋯` with `x` = generator 0, `y` = generator 1.
    pub fn word(&self) -> Word {
        Word(
            self.epsilon_sequence()
                .into_iter()
                .enumerate()
                .map(|(i, e)| Letter::new(i % 2, e))
                .collect(),
        )
    }

    /// `⟨x, y | Wx = yW⟩` for knots, `⟨x, y | Wy = yW⟩` for links.
    pub fn presentation(&self) -> GroupPresentation {
        let w = self.word();
        let (x, y) = (Letter::new(0, 1), Letter::new(1, 1));
        let relator = if self.is_knot() {
            w.concat(&Word(vec![x])).concat(&w.inverse()).concat(&Word(vec![y.inverse()]))
        } else {
            w.concat(&Word(vec![y])).concat(&w.inverse()).concat(&Word(vec![y.inverse()]))
        };
        let components = if self.is_knot() { vec![0, 0] } else { vec![0, 1] };
        GroupPresentation {
            generators: 2,
            relators: vec![relator],
            abelianization: components,
            components: if self.is_knot() { 1 } else { 2 },
            names: vec!["x".into(), "y".into()],
        }
    }
}

fn symbolic_images() -> [PolyMatrix; 4] {
    let c = |k: i64| LaurentPoly::constant(1, k);
    let w = LaurentPoly::var(1, 0);
    let m = |rows: [[LaurentPoly; 2]; 2]| {
        PolyMatrix::from_rows(rows.into_iter().map(Vec::from).collect(), 1).expect("2x2")
    };
    [
        m([[c(1), c(1)], [c(0), c(1)]]),
        m([[c(1), c(-1)], [c(0), c(1)]]),
        m([[c(1), c(0)], [w.clone(), c(1)]]),
        m([[c(1), c(0)], [-&w, c(1)]]),
    ]
}

/// Image of `W` under `x ↦ (1 1; 0 1)`, `y ↦ (1 0; w 1)` over `ℤ[w]`.
pub fn symbolic_word_image(word: &Word) -> PolyMatrix {
    let imgs = symbolic_images();
    let mut acc = PolyMatrix::identity(2, 1);
    for l in word.letters() {
        let idx = 2 * l.generator + usize::from(l.power < 0);
        acc = &acc * &imgs[idx];
    }
    acc
}

/// The Riley polynomial `Φ_{α,β}(w)`.
///
/// For knots this is the (1,1) entry of the image of `W`. For links the
/// representation condition is that the (1,2) entry vanishes; that entry is
/// `w` times the returned polynomial (up to sign), which is made monic.
pub fn riley_polynomial(data: &TwoBridgeData) -> Result<LaurentPoly> {
    let m = symbolic_word_image(&data.word());
    let phi = if data.is_knot() {
        m[(0, 0)].clone()
    } else {
        let w = LaurentPoly::var(1, 0);
        m[(0, 1)].div_exact(&w).map_err(|_| Error::NotTwoBridgeForm("(1,2) entry not divisible by w".into()))?
    };
    let lead = phi.leading_term().map(|(_, c)| c.clone()).ok_or(Error::ZeroPolynomial)?;
    if !lead.abs().is_one() {
        return Err(Error::NotTwoBridgeForm(format!("leading coefficient {lead}")));
    }
    let phi = if lead.is_negative() { -phi } else { phi };
    if data.is_knot() && !phi.coeff(&[0]).abs().is_one() {
        return Err(Error::NotTwoBridgeForm(format!("constant term {}", phi.coeff(&[0]))));
    }
    Ok(phi)
}

/// `Φ_{2n+1,1}` from `Φ_{1,1} = 1`, `Φ_{3,1} = w+1` and
/// `Φ_{2n+5,1} = −Φ_{2n+1,1} + (w+2)Φ_{2n+3,1}`.
pub fn riley_torus_recursion(n: usize) -> LaurentPoly {
    let mut prev = LaurentPoly::one(1);
    let mut cur = LaurentPoly::univariate(&[1, 1]);
    if n == 0 {
        return prev;
    }
    let w2 = LaurentPoly::univariate(&[2, 1]);
    for _ in 1..n {
        let next = &(&w2 * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// A monic integer polynomial `φ(w)` used to build a total representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicSeed {
    pub phi: LaurentPoly,
}

impl ParabolicSeed {
    pub fn new(phi: LaurentPoly) -> Result<Self> {
        if phi.nvars() != 1 || !phi.is_polynomial() || phi.degree_in(0).unwrap_or(0) < 1 {
            return Err(Error::NotUnivariate);
        }
        if !phi.leading_term().is_some_and(|(_, c)| c.is_one()) {
            return Err(Error::NonMonicPhi);
        }
        Ok(ParabolicSeed { phi })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(LaurentPoly::parse_with(text, &["w"])?)
    }

    pub fn degree(&self) -> usize {
        self.phi.degree_in(0).unwrap_or(0) as usize
    }

    pub fn constant_term(&self) -> BigInt {
        self.phi.coeff(&[0])
    }

    /// Primes that must be inverted for the companion matrix to be invertible.
    pub fn ring_primes(&self) -> Vec<u64> {
        prime_factors(&self.constant_term())
    }

    /// Exact-division check `φ | Φ`.
    pub fn check_divides(&self, riley: &LaurentPoly) -> Result<()> {
        riley.div_exact(&self.phi).map(|_| ()).map_err(|_| Error::SeedNotDivisor)
    }

    /// `X = (I I; 0 I)` and `Y = (I 0; C I)` with `C` the companion matrix of `φ`.
    pub fn parabolic_pair(&self) -> Result<(IntMatrix, IntMatrix)> {
        let c = companion(&self.phi)?;
        let n = c.rows();
        let (i, z) = (IntMatrix::identity(n), IntMatrix::zeros(n, n));
        let x = IntMatrix::from_blocks(&[vec![i.clone(), i.clone()], vec![z.clone(), i.clone()]]);
        let y = IntMatrix::from_blocks(&[vec![i.clone(), z], vec![c, i]]);
        Ok((x, y))
    }
}

/// Total representation of the 2-bridge presentation attached to `seed`.
///
/// With `integers_only`, `φ(0)` must be ±1; otherwise the primes dividing
/// `φ(0)` are recorded as the ring.
pub fn total_representation(
    seed: &ParabolicSeed,
    data: &TwoBridgeData,
    integers_only: bool,
) -> Result<Representation> {
    if integers_only && !seed.constant_term().abs().is_one() {
        return Err(Error::NonUnitConstantTerm(seed.constant_term().to_string()));
    }
    let (x, y) = seed.parabolic_pair()?;
    let rep = Representation::new(vec![x, y], seed.ring_primes())?;
    rep.validate_words(&data.presentation())?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn riley(a: u64, b: u64) -> String {
        riley_polynomial(&TwoBridgeData::new(a, b).unwrap()).unwrap().display_with(&["w"])
    }

    #[test]
    fn known_riley_polynomials() {
        assert_eq!(riley(3, 1), "w+1");
        assert_eq!(riley(5, 3), "w^2-w+1");
        assert_eq!(riley(7, 3), "w^3+w^2+2*w+1");
        assert_eq!(riley(8, 3), "w^2+2*w+2");
        assert_eq!(riley(5, 1), "w^2+3*w+1");
    }

    #[test]
    fn recursion_matches_direct() {
        assert!(riley_torus_recursion(0).is_one());
        for n in 1..6 {
            let direct = riley_polynomial(&TwoBridgeData::new(2 * n as u64 + 1, 1).unwrap()).unwrap();
            assert_eq!(riley_torus_recursion(n), direct);
        }
    }

    #[test]
    fn bad_data() {
        assert!(TwoBridgeData::new(4, 2).is_err());
        assert!(TwoBridgeData::new(6, 3).is_err());
        assert!(TwoBridgeData::new(3, 3).is_err());
    }

    #[test]
    fn total_reps() {
        let tre = TwoBridgeData::new(3, 1).unwrap();
        let rep = total_representation(&ParabolicSeed::parse("w+1").unwrap(), &tre, true).unwrap();
        assert_eq!(rep.images[1], IntMatrix::from_rows(&[[1, 0], [-1, 1]]));
        assert!(rep.is_trace_unipotent());
        let wh = TwoBridgeData::new(8, 3).unwrap();
        let seed = ParabolicSeed::parse("w^2+2*w+2").unwrap();
        assert!(matches!(total_representation(&seed, &wh, true), Err(Error::NonUnitConstantTerm(_))));
        let rep = total_representation(&seed, &wh, false).unwrap();
        assert_eq!((rep.dimension, rep.ring_primes.clone()), (4, vec![2]));
        assert!(ParabolicSeed::parse("2*w+1").is_err());
        assert!(total_representation(&ParabolicSeed::parse("w-1").unwrap(), &tre, true).is_err());
    }
}
