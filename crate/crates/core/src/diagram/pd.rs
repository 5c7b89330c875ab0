use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One crossing in arc coordinates.
///
/// `under_in` and `under_out` are the arcs entering and leaving along the
/// under strand. The relator roles (left and right undercrossing arcs) depend
/// on the sign and are given by [`Crossing::left`] and [`Crossing::right`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

impl Crossing {
    /// Arc `j` in the relator `x_i x_j x_i⁻¹ = x_k`.
    pub fn left(&self) -> usize {
        if self.sign > 0 {
            self.under_out
        } else {
            self.under_in
        }
    }

    /// Arc `k` in the relator `x_i x_j x_i⁻¹ = x_k`.
    pub fn right(&self) -> usize {
        if self.sign > 0 {
            self.under_in
        } else {
            self.under_out
        }
    }
}

/// An oriented link diagram with arcs indexed `0..arc_count`.
///
/// Arc 0 is the base arc and lies on component 0. Components are numbered
/// from 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub arc_count: usize,
    pub components: usize,
    pub arc_component: Vec<usize>,
    pub base_arc: usize,
    /// Canonical PD code the arcs were derived from; empty for the
    /// crossingless unknot.
    pub pd: Vec<[usize; 4]>,
}

impl LinkDiagram {
    /// The crossingless unknot: one arc, one component.
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            arc_count: 1,
            components: 1,
            arc_component: vec![0],
            base_arc: 0,
            pd: Vec::new(),
        }
    }

    pub fn is_crossingless(&self) -> bool {
        self.crossings.is_empty()
    }

    /// PD text of the canonical code.
    pub fn to_pd_string(&self) -> String {
        self.pd
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Relabel arcs so that `arc` becomes the base arc 0 and its component
    /// becomes component 0.
    pub fn with_base_arc(&self, arc: usize) -> Result<Self> {
        if arc >= self.arc_count {
            return Err(Error::InconsistentDiagram(format!(
                "base arc {arc} out of range (diagram has {} arcs)",
                self.arc_count
            )));
        }
        let swap_arc = |a: usize| {
            if a == arc {
                0
            } else if a == 0 {
                arc
            } else {
                a
            }
        };
        let comp = self.arc_component[arc];
        let swap_comp = |c: usize| {
            if c == comp {
                0
            } else if c == 0 {
                comp
            } else {
                c
            }
        };
        let mut arc_component = vec![0; self.arc_count];
        for (a, &c) in self.arc_component.iter().enumerate() {
            arc_component[swap_arc(a)] = swap_comp(c);
        }
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing {
                over: swap_arc(x.over),
                under_in: swap_arc(x.under_in),
                under_out: swap_arc(x.under_out),
                sign: x.sign,
            })
            .collect();
        Ok(LinkDiagram { crossings, arc_component, ..self.clone() })
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_crossingless() {
            return f.write_str("unknot (no crossings)");
        }
        f.write_str(&self.to_pd_string())
    }
}

/// Parse a planar diagram code such as `X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]`.
///
/// Each tuple lists edge labels counterclockwise starting from the incoming
/// under edge. An optional `PD[...]` wrapper is accepted.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let tuples = tokenize(text)?;
    from_tuples(&tuples)
}

fn tokenize(text: &str) -> Result<Vec<[usize; 4]>> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix("PD[") {
        s = rest.strip_suffix(']').ok_or_else(|| Error::MalformedPd("unclosed PD[".into()))?;
    }
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < chars.len() && (chars[*i].is_whitespace() || chars[*i] == ',') {
            *i += 1;
        }
    };
    skip(&mut i);
    while i < chars.len() {
        if chars[i] != 'X' || chars.get(i + 1) != Some(&'[') {
            return Err(Error::MalformedPd(format!("expected X[ at position {i}")));
        }
        i += 2;
        let start = i;
        while i < chars.len() && chars[i] != ']' {
            i += 1;
        }
        if i == chars.len() {
            return Err(Error::MalformedPd("unclosed X[".into()));
        }
        let body: String = chars[start..i].iter().collect();
        i += 1;
        let nums: Vec<usize> = body
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::MalformedPd(format!("bad edge label {:?}", x.trim())))
            })
            .collect::<Result<_>>()?;
        let tuple: [usize; 4] = nums
            .try_into()
            .map_err(|_| Error::MalformedPd(format!("X[{body}] does not have four labels")))?;
        out.push(tuple);
        skip(&mut i);
    }
    if out.is_empty() {
        return Err(Error::MalformedPd("no crossings".into()));
    }
    Ok(out)
}

type Slot = (usize, usize);

/// Build a canonical diagram from PD tuples.
pub(crate) fn from_tuples(tuples: &[[usize; 4]]) -> Result<LinkDiagram> {
    let mut occ: BTreeMap<usize, Vec<Slot>> = BTreeMap::new();
    for (c, x) in tuples.iter().enumerate() {
        for (p, &e) in x.iter().enumerate() {
            occ.entry(e).or_default().push((c, p));
        }
    }
    if let Some((e, o)) = occ.iter().find(|(_, o)| o.len() != 2) {
        return Err(Error::InconsistentDiagram(format!(
            "edge label {e} used {} times",
            o.len()
        )));
    }
    let other = |e: usize, s: Slot| -> Slot {
        let o = &occ[&e];
        if o[0] == s {
            o[1]
        } else {
            o[0]
        }
    };

    // Undirected strand components: slot p continues through slot p+2.
    let labels: Vec<usize> = occ.keys().copied().collect();
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut strand_sets: Vec<Vec<usize>> = Vec::new();
    for &e in &labels {
        if comp_of.contains_key(&e) {
            continue;
        }
        let id = strand_sets.len();
        let mut members = Vec::new();
        let mut stack = vec![e];
        while let Some(f) = stack.pop() {
            if comp_of.insert(f, id).is_some() {
                continue;
            }
            members.push(f);
            for &(c, p) in &occ[&f] {
                let g = tuples[c][(p + 2) % 4];
                if !comp_of.contains_key(&g) {
                    stack.push(g);
                }
            }
        }
        members.sort_unstable();
        strand_sets.push(members);
    }
    strand_sets.sort_by_key(|m| m[0]);

    // Orient and traverse each component from its smallest label.
    let mut head: BTreeMap<usize, Slot> = BTreeMap::new();
    let mut order: Vec<Vec<usize>> = Vec::new();
    for members in &strand_sets {
        let seed = members.iter().find_map(|&e| {
            occ[&e].iter().find(|s| s.1 == 0).map(|&s| (e, s)).or_else(|| {
                occ[&e].iter().find(|s| s.1 == 2).map(|&s| (e, other(e, s)))
            })
        });
        let (mut e, mut h) = match seed {
            Some(x) => x,
            None => {
                // Only over-crossings: orient by increasing labels.
                let e = members[0];
                let o = &occ[&e];
                let pick = o
                    .iter()
                    .copied()
                    .find(|&(c, p)| tuples[c][(p + 2) % 4] == e + 1)
                    .unwrap_or(o[0]);
                (e, pick)
            }
        };
        // Walk once around to find the orientation at the smallest label.
        let mut cycle = Vec::new();
        let mut heads = Vec::new();
        loop {
            if head.contains_key(&e) || cycle.contains(&e) {
                break;
            }
            cycle.push(e);
            heads.push(h);
            let (c, p) = h;
            if p == 2 {
                return Err(Error::InconsistentDiagram(format!(
                    "edge {e} enters crossing {} along its outgoing under slot",
                    c + 1
                )));
            }
            let tail = (c, (p + 2) % 4);
            let f = tuples[c][tail.1];
            let fh = other(f, tail);
            if tail.1 == 0 {
                return Err(Error::InconsistentDiagram(format!(
                    "edge {f} leaves crossing {} along its incoming under slot",
                    c + 1
                )));
            }
            e = f;
            h = fh;
        }
        if cycle.len() != members.len() || e != cycle[0] {
            return Err(Error::InconsistentDiagram("strand orientation cycle is broken".into()));
        }
        for (&e, &h) in cycle.iter().zip(&heads) {
            head.insert(e, h);
        }
        let start = cycle.iter().position(|&x| x == members[0]).unwrap();
        cycle.rotate_left(start);
        order.push(cycle);
    }

    // Relabel edges consecutively along components.
    let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
    for e in order.iter().flatten() {
        let n = relabel.len() + 1;
        relabel.insert(*e, n);
    }
    let mut pd: Vec<[usize; 4]> = tuples.iter().map(|x| x.map(|e| relabel[&e])).collect();
    let mut idx: Vec<usize> = (0..tuples.len()).collect();
    idx.sort_by_key(|&c| pd[c][0]);
    let signs: Vec<i8> = (0..tuples.len())
        .map(|c| if head[&tuples[c][1]] == (c, 1) { -1 } else { 1 })
        .collect();
    let signs: Vec<i8> = idx.iter().map(|&c| signs[c]).collect();
    pd = idx.iter().map(|&c| pd[c]).collect();

    // Arcs: edges joined where they pass over a crossing.
    let n = relabel.len();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for x in &pd {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a.max(b)] = a.min(b);
    }
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edge_arc = vec![0; n + 1];
    for e in 1..=n {
        let r = find(&mut parent, e);
        let next = arc_of_root.len();
        edge_arc[e] = *arc_of_root.entry(r).or_insert(next);
    }
    let arc_count = arc_of_root.len();
    let mut arc_component = vec![0; arc_count];
    let mut label = 1;
    for (ci, cyc) in order.iter().enumerate() {
        for _ in cyc {
            arc_component[edge_arc[label]] = ci;
            label += 1;
        }
    }
    let crossings = pd
        .iter()
        .zip(&signs)
        .map(|(x, &sign)| Crossing {
            over: edge_arc[x[1]],
            under_in: edge_arc[x[0]],
            under_out: edge_arc[x[2]],
            sign,
        })
        .collect();
    Ok(LinkDiagram { crossings, arc_count, components: order.len(), arc_component, base_arc: 0, pd })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]";

    #[test]
    fn trefoil_structure() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.arc_count, 3);
        assert_eq!(d.components, 1);
        assert_eq!(d.base_arc, 0);
        let signs: Vec<i8> = d.crossings.iter().map(|c| c.sign).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_pd(""), Err(Error::MalformedPd(_))));
        assert!(matches!(parse_pd("X[1,2,3]"), Err(Error::MalformedPd(_))));
        assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(Error::MalformedPd(_))));
        assert!(matches!(parse_pd("X[0,1,1,2]"), Err(Error::MalformedPd(_))));
        assert!(matches!(
            parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,7,3]"),
            Err(Error::InconsistentDiagram(_))
        ));
    }

    #[test]
    fn every_arc_is_under_terminus_and_origin_once() {
        let d = parse_pd("X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]").unwrap();
        let mut ins = vec![0; d.arc_count];
        let mut outs = vec![0; d.arc_count];
        for c in &d.crossings {
            ins[c.under_in] += 1;
            outs[c.under_out] += 1;
        }
        assert!(ins.iter().all(|&x| x == 1));
        assert!(outs.iter().all(|&x| x == 1));
    }

    #[test]
    fn pd_round_trip() {
        let d = parse_pd("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]").unwrap();
        let again = parse_pd(&d.to_pd_string()).unwrap();
        assert_eq!(d, again);
    }

    #[test]
    fn base_arc_override() {
        let d = parse_pd(TREFOIL).unwrap();
        let e = d.with_base_arc(2).unwrap();
        assert_eq!(e.crossings.len(), 3);
        assert!(d.with_base_arc(3).is_err());
        let back = e.with_base_arc(2).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn two_component_link() {
        let d = parse_pd("X[6,1,7,2],X[10,7,5,8],X[4,5,1,6],X[2,10,3,9],X[8,4,9,3]").unwrap();
        assert_eq!(d.components, 2);
        assert_eq!(d.arc_count, 5);
        assert_eq!(d.arc_component[0], 0);
    }
}
