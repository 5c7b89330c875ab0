use std::collections::BTreeMap;

use super::representation::{propagate, Representation};
use crate::algebra::IntMatrix;
use crate::diagram::WirtingerPresentation;
use crate::error::{Error, Result};

/// Find arcs `a`, `b` such that `X_a = x`, `X_b = y` propagates to a valid
/// representation of the Wirtinger group. For links, `a` lies on the first
/// component and `b` on the second.
pub fn assign_pair(
    pres: &WirtingerPresentation,
    x: &IntMatrix,
    y: &IntMatrix,
    ring_primes: &[u64],
) -> Result<Representation> {
    let want_b = usize::from(pres.components > 1);
    for a in (0..pres.generators).filter(|&a| pres.abelianization[a] == 0) {
        for b in (0..pres.generators).filter(|&b| b != a && pres.abelianization[b] == want_b) {
            let known = BTreeMap::from([(a, x.clone()), (b, y.clone())]);
            let Some(imgs) = propagate(pres, &known) else { continue };
            let rep = Representation::new(imgs, ring_primes.to_vec())?;
            if rep.validate(pres).is_ok() {
                return Ok(rep);
            }
        }
    }
    Err(Error::NoParabolicAssignment)
}

/// Extend fixed images on some generators to a valid representation.
pub fn extend_assignment(
    pres: &WirtingerPresentation,
    known: &BTreeMap<usize, IntMatrix>,
    ring_primes: &[u64],
) -> Result<Representation> {
    let imgs = propagate(pres, known).ok_or(Error::NoParabolicAssignment)?;
    let rep = Representation::new(imgs, ring_primes.to_vec())?;
    rep.validate(pres)?;
    Ok(rep)
}

/// Parse `"x:(1 2),y:(2 3)"` into permutations of `0..n` for each named
/// generator, with `n` the largest point mentioned. Generators that are not
/// mentioned map to the identity; points are 1-based.
pub fn parse_permutations(spec: &str, names: &[String]) -> Result<Vec<Vec<usize>>> {
    let bad = |m: String| Error::InvalidRepresentation(m);
    let mut cycles: Vec<Vec<Vec<usize>>> = vec![Vec::new(); names.len()];
    let mut n = 1;
    for part in split_top_level(spec) {
        let (name, body) = part.split_once(':').ok_or_else(|| bad(format!("expected name:cycles in {part:?}")))?;
        let g = names
            .iter()
            .position(|s| s == name.trim())
            .ok_or_else(|| bad(format!("unknown generator {:?}", name.trim())))?;
        let mut rest = body.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| bad(format!("malformed cycle in {body:?}")))?;
            let cyc: Vec<usize> = inner
                .0
                .split(|c: char| c == ' ' || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok().filter(|&p| p >= 1))
                .collect::<Option<_>>()
                .ok_or_else(|| bad(format!("bad point in cycle ({})", inner.0)))?;
            n = n.max(cyc.iter().copied().max().unwrap_or(1));
            cycles[g].push(cyc);
            rest = inner.1.trim_start();
        }
    }
    cycles
        .into_iter()
        .map(|cs| {
            let mut p: Vec<usize> = (0..n).collect();
            let mut seen = vec![false; n];
            for c in cs {
                for (i, &a) in c.iter().enumerate() {
                    if std::mem::replace(&mut seen[a - 1], true) {
                        return Err(bad(format!("point {a} repeated")));
                    }
                    p[a - 1] = c[(i + 1) % c.len()] - 1;
                }
            }
            Ok(p)
        })
        .collect()
}

fn split_top_level(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in spec.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' | ';' if depth == 0 => {
                out.push(spec[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(spec[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}
