use serde::Serialize;

use crate::algebra::{IntMatrix, LaurentPoly, PolyMatrix};
use crate::diagram::{GroupPresentation, WirtingerPresentation};
use crate::error::{Error, Result};
use crate::reps::Representation;

/// Presentation matrix of the based twisted module.
///
/// Rows come in blocks of `dimension`, one block per relator; columns in
/// blocks of `dimension`, one per non-base generator. The deleted base
/// generator's columns are kept in `base_block`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistedModulePresentation {
    pub matrix: PolyMatrix,
    pub base_block: PolyMatrix,
    pub nvars: usize,
    pub dimension: usize,
    pub relators: usize,
    pub generators: usize,
    /// Component of each generator.
    pub abelianization: Vec<usize>,
    /// Image of each generator.
    pub images: Vec<IntMatrix>,
    pub ring_primes: Vec<u64>,
}

fn t_power(nvars: usize, component: usize) -> LaurentPoly {
    LaurentPoly::var(nvars, component)
}

impl TwistedModulePresentation {
    fn from_full(full: PolyMatrix, relators: usize, abelianization: Vec<usize>, nvars: usize, rep: &Representation) -> Self {
        let n = rep.dimension;
        let gens = rep.images.len();
        let base_block = full.block(0, 0, full.rows(), n);
        let matrix = full.block(0, n, full.rows(), (gens - 1) * n);
        TwistedModulePresentation {
            matrix,
            base_block,
            nvars,
            dimension: n,
            relators,
            generators: gens,
            abelianization,
            images: rep.images.clone(),
            ring_primes: rep.ring_primes.clone(),
        }
    }

    /// Full matrix with the base block restored as the first column block.
    pub fn full_matrix(&self) -> PolyMatrix {
        self.base_block.hstack(&self.matrix).expect("row counts agree")
    }

    /// `t^{ε(x)} X − I` for generator `g`.
    pub fn generator_block(&self, g: usize) -> PolyMatrix {
        let n = self.dimension;
        &PolyMatrix::from_int(&self.images[g], self.nvars).scale(&t_power(self.nvars, self.abelianization[g]))
            - &PolyMatrix::identity(n, self.nvars)
    }
}

/// Module from Wirtinger relators: each crossing `x_i x_j x_i⁻¹ = x_k`
/// contributes `I[x_i] + t^{ε(x_i)}X_i[x_j] − I[x_k] − t^{ε(x_k)}X_k[x_i]`.
pub fn build_presentation(pres: &WirtingerPresentation, rep: &Representation) -> Result<TwistedModulePresentation> {
    rep.validate(pres).map_err(|e| match e {
        Error::RelatorViolation { index } => {
            Error::InvalidRepresentation(format!("relator {index} is violated"))
        }
        other => other,
    })?;
    let n = rep.dimension;
    let d = pres.components;
    let id = PolyMatrix::identity(n, d);
    let scaled = |g: usize| PolyMatrix::from_int(&rep.images[g], d).scale(&t_power(d, pres.abelianization[g]));
    let mut full = PolyMatrix::zeros(pres.relators.len() * n, pres.generators * n, d);
    for (r, rel) in pres.relators.iter().enumerate() {
        let row = r * n;
        full.add_to_block(row, rel.over * n, &id);
        full.add_to_block(row, rel.left * n, &scaled(rel.over));
        full.add_to_block(row, rel.right * n, &-&id);
        full.add_to_block(row, rel.over * n, &-&scaled(rel.right));
    }
    Ok(TwistedModulePresentation::from_full(
        full,
        pres.relators.len(),
        pres.abelianization.clone(),
        d,
        rep,
    ))
}

/// Module from Fox derivatives of arbitrary relator words. Inverted letters
/// need integer inverses of their images.
pub fn build_fox_presentation(pres: &GroupPresentation, rep: &Representation) -> Result<TwistedModulePresentation> {
    rep.validate_words(pres).map_err(|e| match e {
        Error::RelatorViolation { index } => {
            Error::InvalidRepresentation(format!("relator {index} is violated"))
        }
        other => other,
    })?;
    let n = rep.dimension;
    let d = pres.components;
    let inverses = rep.integer_inverses()?;
    let mut full = PolyMatrix::zeros(pres.relators.len() * n, pres.generators * n, d);
    for (r, word) in pres.relators.iter().enumerate() {
        let mut prefix = IntMatrix::identity(n);
        let mut exps = vec![0i64; d];
        for l in word.letters() {
            let g = l.generator;
            let comp = pres.abelianization[g];
            if l.power > 0 {
                let term = PolyMatrix::from_int(&prefix, d).scale(&LaurentPoly::monomial(exps.clone(), 1));
                full.add_to_block(r * n, g * n, &term);
                prefix = &prefix * &rep.images[g];
                exps[comp] += 1;
            } else {
                prefix = &prefix * &inverses[g];
                exps[comp] -= 1;
                let term = PolyMatrix::from_int(&prefix, d).scale(&LaurentPoly::monomial(exps.clone(), -1));
                full.add_to_block(r * n, g * n, &term);
            }
        }
    }
    Ok(TwistedModulePresentation::from_full(
        full,
        pres.relators.len(),
        pres.abelianization.clone(),
        d,
        rep,
    ))
}
