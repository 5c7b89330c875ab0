use std::fmt;

use serde::{Deserialize, Serialize};

use super::pd::LinkDiagram;
use crate::error::{Error, Result};

/// Relator `x_over x_left x_over⁻¹ = x_right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerRelator {
    pub over: usize,
    pub left: usize,
    pub right: usize,
}

/// Wirtinger presentation: one generator per arc, one relator per crossing.
///
/// `abelianization[m]` is the component (basis vector of ℤᵈ) that generator
/// `m` maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WirtingerPresentation {
    pub generators: usize,
    pub relators: Vec<WirtingerRelator>,
    pub abelianization: Vec<usize>,
    pub components: usize,
}

/// Wirtinger presentation of a diagram. All relators are kept, including
/// the redundant one.
pub fn wirtinger(diagram: &LinkDiagram) -> WirtingerPresentation {
    WirtingerPresentation {
        generators: diagram.arc_count,
        relators: diagram
            .crossings
            .iter()
            .map(|c| WirtingerRelator { over: c.over, left: c.left(), right: c.right() })
            .collect(),
        abelianization: diagram.arc_component.clone(),
        components: diagram.components,
    }
}

impl WirtingerPresentation {
    /// The same presentation with relators written as words.
    pub fn to_group_presentation(&self) -> GroupPresentation {
        let relators = self
            .relators
            .iter()
            .map(|r| {
                Word(vec![
                    Letter::new(r.over, 1),
                    Letter::new(r.left, 1),
                    Letter::new(r.over, -1),
                    Letter::new(r.right, -1),
                ])
            })
            .collect();
        GroupPresentation {
            generators: self.generators,
            relators,
            abelianization: self.abelianization.clone(),
            components: self.components,
            names: (0..self.generators).map(|i| format!("x{i}")).collect(),
        }
    }

    /// Image of relator `index` in ℤᵈ; always zero.
    pub fn abelianized_relator(&self, index: usize) -> Vec<i64> {
        let r = &self.relators[index];
        let mut v = vec![0; self.components];
        v[self.abelianization[r.left]] += 1;
        v[self.abelianization[r.right]] -= 1;
        v
    }

    /// A small set of generators from which all others follow by the
    /// relators, always containing generator 0.
    pub fn generating_subset(&self) -> Vec<usize> {
        for size in 1..=self.generators {
            let mut chosen = None;
            for_each_subset(self.generators, size, &mut |s: &[usize]| {
                if chosen.is_none() && s.contains(&0) && self.closure(s).iter().all(|&x| x) {
                    chosen = Some(s.to_vec());
                }
            });
            if let Some(s) = chosen {
                return s;
            }
        }
        (0..self.generators).collect()
    }

    fn closure(&self, start: &[usize]) -> Vec<bool> {
        let mut known = vec![false; self.generators];
        for &s in start {
            known[s] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for r in &self.relators {
                if !known[r.over] {
                    continue;
                }
                if known[r.left] != known[r.right] {
                    known[r.left] = true;
                    known[r.right] = true;
                    changed = true;
                }
            }
        }
        known
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// A generator raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub power: i8,
}

impl Letter {
    pub fn new(generator: usize, power: i8) -> Self {
        Letter { generator, power }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, power: -self.power }
    }
}

/// A word in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

/// A finite presentation whose generators are meridians: generator `m` maps
/// to basis vector `abelianization[m]` of ℤᵈ. Generator 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub abelianization: Vec<usize>,
    pub components: usize,
    pub names: Vec<String>,
}

impl GroupPresentation {
    /// Build from named generators and relations written as `lhs = rhs`
    /// (or a single relator word), letters separated by spaces, with `^-1`
    /// or a trailing `'` for inverses.
    pub fn parse(names: &[&str], components: &[usize], relations: &[&str]) -> Result<Self> {
        if names.len() != components.len() || names.is_empty() {
            return Err(Error::DimensionMismatch("one component per generator".into()));
        }
        let lookup = |tok: &str| -> Result<Letter> {
            let (base, power) = if let Some(b) = tok.strip_suffix("^-1") {
                (b, -1)
            } else if let Some(b) = tok.strip_suffix('\'') {
                (b, -1)
            } else {
                (tok, 1)
            };
            let g = names
                .iter()
                .position(|n| *n == base)
                .ok_or_else(|| Error::InvalidRepresentation(format!("unknown generator {base:?}")))?;
            Ok(Letter::new(g, power))
        };
        let word = |s: &str| -> Result<Word> {
            Ok(Word(s.split_whitespace().map(lookup).collect::<Result<_>>()?))
        };
        let mut relators = Vec::new();
        for rel in relations {
            let r = match rel.split_once('=') {
                Some((l, r)) => word(l)?.concat(&word(r)?.inverse()),
                None => word(rel)?,
            };
            relators.push(r);
        }
        let d = components.iter().max().unwrap() + 1;
        let p = GroupPresentation {
            generators: names.len(),
            relators,
            abelianization: components.to_vec(),
            components: d,
            names: names.iter().map(|s| s.to_string()).collect(),
        };
        p.check_abelianization()?;
        Ok(p)
    }

    /// Every relator must have zero exponent sum on each component.
    pub fn check_abelianization(&self) -> Result<()> {
        for (i, r) in self.relators.iter().enumerate() {
            let mut v = vec![0i64; self.components];
            for l in r.letters() {
                v[self.abelianization[l.generator]] += l.power as i64;
            }
            if v.iter().any(|&x| x != 0) {
                return Err(Error::InvalidRepresentation(format!(
                    "relator {i} does not abelianize to zero"
                )));
            }
        }
        Ok(())
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        w.letters()
            .iter()
            .map(|l| {
                if l.power > 0 {
                    self.names[l.generator].clone()
                } else {
                    format!("{}^-1", self.names[l.generator])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_to_string(r)).collect();
        write!(f, "<{} | {}>", self.names.join(", "), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_braid, parse_pd};
    use super::*;

    #[test]
    fn trefoil_presentation() {
        let d = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        let p = wirtinger(&d);
        assert_eq!(p.generators, 3);
        assert_eq!(p.relators.len(), 3);
        assert!(p.abelianization.iter().all(|&c| c == 0));
        for i in 0..3 {
            assert_eq!(p.abelianized_relator(i), vec![0]);
        }
        assert_eq!(p.generating_subset().len(), 2);
    }

    #[test]
    fn whitehead_abelianizes_to_rank_two() {
        let d = parse_pd("X[6,1,7,2],X[10,7,5,8],X[4,5,1,6],X[2,10,3,9],X[8,4,9,3]").unwrap();
        let p = wirtinger(&d);
        assert_eq!(p.components, 2);
        let mut seen = p.abelianization.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, vec![0, 1]);
        for i in 0..p.relators.len() {
            assert_eq!(p.abelianized_relator(i), vec![0, 0]);
        }
    }

    #[test]
    fn word_presentations() {
        let g = GroupPresentation::parse(
            &["x0", "x1", "x2"],
            &[0, 0, 0],
            &["x1 x0 x1 = x0 x1 x0", "x2 x0 x2 = x0 x2 x0"],
        )
        .unwrap();
        assert_eq!(g.relators[0].letters().len(), 6);
        assert!(GroupPresentation::parse(&["a", "b"], &[0, 1], &["a b a^-1"]).is_err());
        let h = wirtinger(&parse_braid("s1 s1 s1", 2).unwrap()).to_group_presentation();
        assert_eq!(h.relators.len(), 3);
        h.check_abelianization().unwrap();
    }
}
