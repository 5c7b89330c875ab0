use super::pd::{from_tuples, LinkDiagram};
use crate::error::{Error, Result};

/// Parse a braid word into signed generator indices.
///
/// Accepted letters: `s3`, `s3^-1`, `s3^2`, `S3` (inverse), `σ3`, or bare
/// signed integers as in `1 1 -2`. Letters may be separated by spaces,
/// commas or nothing.
pub fn parse_braid_word(word: &str) -> Result<Vec<i64>> {
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let bad = |i: usize, what: &str| Error::MalformedBraid(format!("{what} at position {i}"));
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        if *i < chars.len() && (chars[*i] == '-' || chars[*i] == '−') {
            *i += 1;
        }
        let digits = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == digits {
            *i = start;
            return None;
        }
        let s: String = chars[start..*i].iter().map(|&c| if c == '−' { '-' } else { c }).collect();
        s.parse().ok()
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' || c == '.' || c == '*' {
            i += 1;
            continue;
        }
        let (index, base_sign) = match c {
            's' | 'σ' | 'S' => {
                i += 1;
                let k = read_int(&mut i).filter(|&k| k > 0).ok_or_else(|| bad(i, "expected generator index"))?;
                (k, if c == 'S' { -1 } else { 1 })
            }
            '-' | '−' | '0'..='9' => {
                let k = read_int(&mut i).ok_or_else(|| bad(i, "expected integer"))?;
                if k == 0 {
                    return Err(bad(i, "generator 0"));
                }
                (k.abs(), k.signum())
            }
            _ => return Err(bad(i, &format!("unexpected {c:?}"))),
        };
        let mut power = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            power = read_int(&mut i).ok_or_else(|| bad(i, "expected exponent"))?;
        }
        let sign = base_sign * power.signum();
        for _ in 0..power.abs() {
            out.push(sign * index);
        }
    }
    if out.is_empty() {
        return Err(Error::MalformedBraid("empty braid word".into()));
    }
    Ok(out)
}

/// PD tuples of the closure of a braid given as signed generator indices.
pub fn braid_pd(word: &[i64], strands: usize) -> Result<Vec<[usize; 4]>> {
    if strands < 2 {
        return Err(Error::MalformedBraid("a braid needs at least two strands".into()));
    }
    let mut cur: Vec<usize> = (1..=strands).collect();
    let mut next = strands + 1;
    let mut tuples = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::GeneratorOutOfRange { index: i, strands });
        }
        let p = i - 1;
        let (e1, e2) = (cur[p], cur[p + 1]);
        let (f1, f2) = (next, next + 1);
        next += 2;
        if g > 0 {
            // Under strand moves from position p+1 to p.
            tuples.push([e2, f2, f1, e1]);
        } else {
            // Under strand moves from position p to p+1.
            tuples.push([e1, e2, f2, f1]);
        }
        cur[p] = f1;
        cur[p + 1] = f2;
    }
    for (p, &e) in cur.iter().enumerate() {
        if e == p + 1 {
            return Err(Error::MalformedBraid(format!("strand {} has no crossings", p + 1)));
        }
    }
    let close = |e: usize| cur.iter().position(|&x| x == e).map_or(e, |p| p + 1);
    Ok(tuples.into_iter().map(|x| x.map(close)).collect())
}

/// Diagram of the closure of a braid word on `strands` strands.
pub fn parse_braid(word: &str, strands: usize) -> Result<LinkDiagram> {
    let w = parse_braid_word(word)?;
    from_tuples(&braid_pd(&w, strands)?)
}
