use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multivariable Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are keyed by exponent vectors in lexicographic order; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `t_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Vec<i64>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// One-variable polynomial from coefficients listed from degree 0 upward.
    pub fn univariate(coeffs: &[i64]) -> Self {
        Self::from_dense(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// One-variable polynomial `t^shift * sum coeffs[i] t^i`.
    pub fn from_dense(shift: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_terms(
            1,
            coeffs.into_iter().enumerate().map(|(i, c)| (vec![shift + i as i64], c)),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lexicographically greatest term.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next()
    }

    /// Componentwise minimum exponent.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exps(i64::min)
    }

    pub fn max_exponents(&self) -> Option<Vec<i64>> {
        self.fold_exps(i64::max)
    }

    fn fold_exps(&self, f: fn(i64, i64) -> i64) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = f(*a, b);
            }
        }
        Some(acc)
    }

    /// Largest exponent of variable `v`, or `None` for the zero polynomial.
    pub fn degree_in(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x / &c)).collect(),
        }
    }

    /// Multiply by `±t^n` so the lowest exponent of every variable is 0 and
    /// the lexicographically leading coefficient is positive.
    pub fn normalize_unit(&self) -> Self {
        self.normalize_unit_with_shift().0
    }

    /// As [`normalize_unit`](Self::normalize_unit), also returning the applied
    /// exponent shift and sign.
    pub fn normalize_unit_with_shift(&self) -> (Self, Vec<i64>, i8) {
        let Some(min) = self.min_exponents() else {
            return (self.clone(), vec![0; self.nvars], 1);
        };
        let shift: Vec<i64> = min.iter().map(|m| -m).collect();
        let mut p = self.shift(&shift);
        let mut sign = 1;
        if p.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            p = -p;
            sign = -1;
        }
        (p, shift, sign)
    }

    /// True if the two polynomials differ by a factor `±t^n`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.normalize_unit() == other.normalize_unit()
    }

    /// Evaluate at a rational point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        self.check_point_len(point.len())?;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::Domain("negative exponent evaluated at 0".into()));
                }
                term *= pow_rational(x, k);
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn evaluate_i64(&self, point: &[i64]) -> Result<BigRational> {
        let pt: Vec<BigRational> =
            point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.evaluate(&pt)
    }

    /// Evaluate at an integer point, requiring an integer value.
    pub fn evaluate_integer(&self, point: &[i64]) -> Result<BigInt> {
        let v = self.evaluate_i64(point)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::Domain(format!("value {v} at {point:?} is not an integer")))
        }
    }

    pub fn evaluate_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        self.check_point_len(point.len())?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut term = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.norm() == 0.0 {
                    return Err(Error::Domain("negative exponent evaluated at 0".into()));
                }
                term *= x.powi(k as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    fn check_point_len(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {n} coordinates, polynomial has {} variables",
                self.nvars
            )));
        }
        Ok(())
    }

    /// Substitute `value` for variable `v`. Negative powers of `v` require
    /// `value` to be a unit monomial.
    pub fn substitute(&self, v: usize, value: &LaurentPoly) -> Result<Self> {
        if value.nvars != self.nvars {
            return Err(Error::DimensionMismatch("substitution variable count".into()));
        }
        let inverse = if self.terms.keys().any(|e| e[v] < 0) {
            Some(value.unit_inverse().ok_or_else(|| {
                Error::Domain("negative exponent substituted by a non-unit".into())
            })?)
        } else {
            None
        };
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[v] = 0;
            let k = e[v];
            let factor = if k >= 0 {
                value.pow(k as u32)
            } else {
                inverse.as_ref().unwrap().pow((-k) as u32)
            };
            out += &(&Self::monomial(rest, c.clone()) * &factor);
        }
        Ok(out)
    }

    /// Inverse of `±t^n`, if this is such a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !c.abs().is_one() {
            return None;
        }
        Some(Self::monomial(e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Formal partial derivative in variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[v] != 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[v] -= 1;
                (e2, c * e[v])
            }),
        )
    }

    /// Coefficients `(shift, dense)` of a one-variable polynomial, lowest degree first.
    pub fn to_dense(&self) -> Option<(i64, Vec<BigInt>)> {
        if self.nvars != 1 {
            return None;
        }
        let Some(lo) = self.terms.keys().next().map(|e| e[0]) else {
            return Some((0, Vec::new()));
        };
        let hi = self.terms.keys().next_back().unwrap()[0];
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        Some((lo, v))
    }

    /// Extend to more variables, placing old variable `i` at position `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = vec![0; nvars];
                for (i, &k) in e.iter().enumerate() {
                    e2[map[i]] += k;
                }
                (e2, c.clone())
            }),
        )
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self` in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionInexact);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some(c) = d.as_constant() {
            return self.div_scalar_exact(&c).ok_or(Error::DivisionInexact);
        }
        let (lead_e, lead_c) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let (smin, smax) = (self.min_exponents().unwrap(), self.max_exponents().unwrap());
        let (dmin, dmax) = (d.min_exponents().unwrap(), d.max_exponents().unwrap());
        let lo: Vec<i64> = smin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = smax.iter().zip(&dmax).map(|(a, b)| a - b).collect();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = r.leading_term() {
            let qe: Vec<i64> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
                return Err(Error::DivisionInexact);
            }
            let (qc, rem) = c.div_rem(&lead_c);
            if !rem.is_zero() {
                return Err(Error::DivisionInexact);
            }
            let m = Self::monomial(qe, qc);
            r -= &(&m * d);
            q += &m;
        }
        Ok(q)
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(LaurentPoly { nvars: self.nvars, terms })
    }

    /// Greatest common divisor, unit-normalized. Zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "gcd of polynomials in different rings");
        let a = self.normalize_unit();
        let b = other.normalize_unit();
        gcd_rec(&a, &b, self.nvars).normalize_unit()
    }

    /// Square-free decomposition of a one-variable polynomial: pairs
    /// `(factor, multiplicity)` whose product is the primitive normalized input
    /// up to sign.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Self, u32)>> {
        if self.nvars != 1 {
            return Err(Error::NotUnivariate);
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.normalize_unit().primitive_part();
        let mut out = Vec::new();
        if f.degree_in(0) == Some(0) {
            return Ok(out);
        }
        // Yun's algorithm over the integers, using primitive gcds.
        let df = f.derivative(0);
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a)?;
        let mut c = df.div_exact(&a)?;
        let mut i = 1;
        loop {
            let d = &c - &b.derivative(0);
            if b.degree_in(0) == Some(0) {
                break;
            }
            a = b.gcd(&d);
            if a.degree_in(0).unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a)?;
            c = d.div_exact(&a)?;
            i += 1;
        }
        Ok(out)
    }

    /// Render with the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], k)),
                }
            }
            if factors.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        if nvars == 1 {
            vec!["t".to_string()]
        } else {
            (1..=nvars).map(|i| format!("t{i}")).collect()
        }
    }

    /// Parse with explicit variable names; `*` is optional between factors.
    pub fn parse_with(text: &str, names: &[&str]) -> Result<Self> {
        let mut p = Parser { s: text.replace('−', "-").chars().collect(), pos: 0, names };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }

    /// Coefficients of a two-variable polynomial arranged as a grid, entry
    /// `[i][j]` holding the coefficient of `t1^(i+lo1) t2^(j+lo2)`.
    pub fn coefficient_grid(&self) -> Option<Vec<Vec<BigInt>>> {
        if self.nvars != 2 {
            return None;
        }
        let (lo, hi) = (self.min_exponents()?, self.max_exponents()?);
        let mut g = vec![vec![BigInt::zero(); (hi[1] - lo[1] + 1) as usize]; (hi[0] - lo[0] + 1) as usize];
        for (e, c) in &self.terms {
            g[(e[0] - lo[0]) as usize][(e[1] - lo[1]) as usize] = c.clone();
        }
        Some(g)
    }

    fn coeff_in(&self, v: usize, k: i64) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[v] == k).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[v] = 0;
                (e2, c.clone())
            }),
        )
    }
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

/// Gcd of polynomials with nonnegative exponents involving only variables `0..k`.
fn gcd_rec(a: &LaurentPoly, b: &LaurentPoly, k: usize) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if k == 0 {
        let g = a.as_constant().unwrap().gcd(&b.as_constant().unwrap());
        return LaurentPoly::constant(a.nvars, g);
    }
    let v = k - 1;
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let g = gcd_rec(&ca, &cb, v);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if q.degree_in(v) == Some(0) {
            return g;
        }
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, v);
            r.div_exact(&c).expect("content divides")
        };
    }
    &g * &p
}

/// Gcd of the coefficients of `a` viewed as a polynomial in variable `v`.
fn content_in(a: &LaurentPoly, v: usize) -> LaurentPoly {
    let top = a.degree_in(v).unwrap_or(0);
    let mut g = LaurentPoly::zero(a.nvars);
    for k in 0..=top {
        let c = a.coeff_in(v, k);
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c, v);
        if g.as_constant().is_some_and(|x| x.abs().is_one()) {
            break;
        }
    }
    if g.leading_term().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    g
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v).unwrap();
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(v) {
        if dr < db {
            break;
        }
        let lr = r.coeff_in(v, dr);
        let mut e = vec![0; a.nvars];
        e[v] = dr - db;
        r = &(&lb * &r) - &(&lr * &b.shift(&e));
    }
    r
}

struct Parser<'a> {
    s: Vec<char>,
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::MalformedPolynomial(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let n = self.names.len();
        let mut acc = LaurentPoly::zero(n);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == '(' || c.is_ascii_digit() || c.is_alphabetic() => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let n = self.names.len();
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.s[start..self.pos].iter().collect();
                LaurentPoly::constant(n, digits.parse::<BigInt>().map_err(|_| self.err("bad integer"))?)
            }
            Some(c) if c.is_alphabetic() => {
                let rest: String = self.s[self.pos..].iter().collect();
                let mut best: Option<(usize, usize)> = None;
                for (i, name) in self.names.iter().enumerate() {
                    if rest.starts_with(name) && best.map_or(true, |(_, l)| name.len() > l) {
                        best = Some((i, name.chars().count()));
                    }
                }
                let (i, len) = best.ok_or_else(|| self.err("unknown variable"))?;
                self.pos += len;
                LaurentPoly::var(n, i)
            }
            _ => return Err(self.err("expected a factor")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let k: u32 = self.s[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            if neg {
                let inv = base.unit_inverse().ok_or_else(|| self.err("negative power of a non-unit"))?;
                return Ok(inv.pow(k));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses with variables inferred from the text: `t1, t2, ...` give a
    /// multivariable ring, otherwise a single letter `t`, `w`, `x` or `u` is used.
    fn from_str(s: &str) -> Result<Self> {
        let mut max_index = 0;
        let chars: Vec<char> = s.chars().collect();
        let mut letter = None;
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_alphabetic() {
                let c = chars[i];
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j > i + 1 {
                    let idx: usize = chars[i + 1..j].iter().collect::<String>().parse().unwrap_or(0);
                    max_index = max_index.max(idx);
                }
                if letter.is_some_and(|l| l != c) {
                    return Err(Error::MalformedPolynomial(format!("mixed variables {c:?}")));
                }
                letter = Some(c);
                i = j;
            } else {
                i += 1;
            }
        }
        let letter = letter.unwrap_or('t').to_string();
        if max_index > 0 {
            let names: Vec<String> = (1..=max_index).map(|k| format!("{letter}{k}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Self::parse_with(s, &refs)
        } else {
            Self::parse_with(s, &[letter.as_str()])
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(Vec<i64>, String)> = Vec::deserialize(deserializer)?;
        let nvars = raw.first().map_or(1, |(e, _)| e.len());
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in raw {
            if e.len() != nvars {
                return Err(serde::de::Error::custom("inconsistent exponent lengths"));
            }
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn p2(s: &str) -> LaurentPoly {
        LaurentPoly::parse_with(s, &["t1", "t2"]).unwrap()
    }

    #[test]
    fn normalize_unit_shifts_and_fixes_sign() {
        assert_eq!(p("-t^3+t").normalize_unit(), p("t^2-1"));
        let (q, shift, sign) = p("-t^-2+t^-1").normalize_unit_with_shift();
        assert_eq!(q, p("t-1"));
        assert_eq!(shift, vec![2]);
        assert_eq!(sign, 1);
        assert_eq!(p("-t^2+t^3").normalize_unit_with_shift().2, 1);
        assert_eq!(p("t^2-t^3").normalize_unit_with_shift().2, -1);
    }

    #[test]
    fn five_two_total_polynomial_is_primitive() {
        let f = p("25t^6-104t^5+219t^4-272t^3+219t^2-104t+25");
        assert_eq!(f.content(), BigInt::from(1));
        assert_eq!(p("6t^2-4").content(), BigInt::from(2));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("t^2+1").evaluate_integer(&[1]).unwrap(), BigInt::from(2));
        assert!(matches!(p("t^-1+1").evaluate_i64(&[0]), Err(Error::Domain(_))));
        assert_eq!(
            p("t^-1").evaluate_i64(&[2]).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["t^2+1", "25*t^6-104*t^5+25", "t1^2-t1*t2-3", "4+t^-2", "0"] {
            let q = p(s);
            assert_eq!(q.to_string(), s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("w^2-w+1").display_with(&["w"]), "w^2-w+1");
        assert_eq!(p("(t^2+1)(t^10+1)"), p("t^12+t^10+t^2+1"));
    }

    #[test]
    fn exact_division() {
        let a = p("(t1-1)^2*(t2-1)*(t1*t2+3)");
        let b = p("(t1-1)*(t1*t2+3)");
        assert_eq!(a.div_exact(&b).unwrap(), p("(t1-1)*(t2-1)"));
        assert_eq!(a.div_exact(&p("t1+t2")), Err(Error::DivisionInexact));
        assert_eq!(p("t^3-t").div_exact(&p("t^-1")).unwrap(), p("t^4-t^2"));
        assert_eq!(p("t^2+1").div_exact(&p("2")), Err(Error::DivisionInexact));
    }

    #[test]
    fn gcds() {
        assert_eq!(p("(t-1)^2*(t^2+1)").gcd(&p("(t-1)*(t+2)")), p("t-1"));
        assert_eq!(p("6t+6").gcd(&p("4t^2-4")), p("2t+2"));
        let g = p2("(t1-1)*(t2+t1)^2*t1^-3").gcd(&p2("(t2+t1)*(t1*t2-7)*(t1-1)"));
        assert_eq!(g, p2("(t1-1)*(t1+t2)"));
        assert_eq!(p2("t1-1").gcd(&p2("t2-1")), p2("1"));
        assert_eq!(p("0").gcd(&p("-2t+4")), p("2t-4"));
    }

    #[test]
    fn square_free_parts() {
        let f = p("(t-1)^3*(t^2+1)^2*(t+3)");
        let mut parts = f.square_free_decomposition().unwrap();
        parts.sort_by_key(|x| x.1);
        assert_eq!(parts, vec![(p("t+3"), 1), (p("t^2+1"), 2), (p("t-1"), 3)]);
    }

    #[test]
    fn substitution() {
        let f = p("t1^2*t2^-1+t2");
        let g = f.substitute(1, &p2("t1^-1")).unwrap();
        assert_eq!(g, p2("t1^3+t1^-1"));
        assert!(f.substitute(1, &p2("t1+1")).is_err());
    }

    #[test]
    fn json_layout() {
        let f = p("t1^2*t2-3");
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"[[[0,0],"-3"],[[2,1],"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
    }
}
