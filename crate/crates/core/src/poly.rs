//! Sparse multivariate polynomials over `Q(i)` in the fixed variable
//! universe `{x, y, r, t}`.
//!
//! Terms are kept in a vector sorted by graded lexicographic order
//! (`x > y > r > t`) with no zero coefficients, so two polynomials are equal
//! exactly when their term vectors are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{GaussRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    R,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::R, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::R => "r",
            Var::T => "t",
        }
    }
}

const FIELD_BITS: u32 = 12;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;
const DEGREE_SHIFT: u32 = 4 * FIELD_BITS;

/// Largest exponent a single variable may carry.
pub const MAX_EXPONENT: u32 = FIELD_MASK as u32;

/// An exponent vector packed into one word: total degree in the top bits,
/// then the `x, y, r, t` exponents. Integer order on the packed word is
/// graded lexicographic order, and multiplication is word addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: [u32; 4]) -> Monomial {
        let mut key = 0u64;
        let mut degree = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} exceeds {MAX_EXPONENT}");
            key |= (e as u64) << Self::shift(i);
            degree += e as u64;
        }
        Monomial(key | (degree << DEGREE_SHIFT))
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Monomial::new(exps)
    }

    fn shift(i: usize) -> u32 {
        FIELD_BITS * (3 - i as u32)
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> Self::shift(v.index())) & FIELD_MASK) as u32
    }

    pub fn exps(self) -> [u32; 4] {
        Var::ALL.map(|v| self.exp(v))
    }

    pub fn degree(self) -> u32 {
        (self.0 >> DEGREE_SHIFT) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product of monomials. Panics if an exponent overflows its field.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        for v in Var::ALL {
            assert!(self.exp(v) + other.exp(v) <= MAX_EXPONENT, "exponent overflow in {}", v.name());
        }
        Monomial(self.0 + other.0)
    }

    /// The same monomial with the exponent of `v` replaced.
    pub fn with_exp(self, v: Var, e: u32) -> Monomial {
        let mut exps = self.exps();
        exps[v.index()] = e;
        Monomial::new(exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Monomial, GaussRational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(GaussRational::one())
    }

    pub fn constant(c: impl Into<GaussRational>) -> Self {
        MultiPoly::monomial(c, Monomial::ONE)
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(GaussRational::from_int(n))
    }

    pub fn rational(q: Rational) -> Self {
        MultiPoly::constant(GaussRational::real(q))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(GaussRational::one(), Monomial::var(v, 1))
    }

    pub fn x() -> Self {
        MultiPoly::var(Var::X)
    }

    pub fn y() -> Self {
        MultiPoly::var(Var::Y)
    }

    pub fn r() -> Self {
        MultiPoly::var(Var::R)
    }

    pub fn t() -> Self {
        MultiPoly::var(Var::T)
    }

    pub fn monomial(c: impl Into<GaussRational>, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            MultiPoly::zero()
        } else {
            MultiPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussRational)>) -> Self {
        let mut acc: HashMap<Monomial, GaussRational> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(slot) => *slot += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, GaussRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        MultiPoly { terms }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[(Monomial, GaussRational)] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<GaussRational> {
        match self.terms.as_slice() {
            [] => Some(GaussRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// The imaginary part as a real polynomial.
    pub fn imag_part(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_real())
                .map(|(m, c)| (*m, GaussRational::real(c.im.clone())))
                .collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    /// Coefficient of `v^k`, a polynomial free of `v`.
    pub fn coeff_of(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Dense coefficient list in `v` when the polynomial depends on no
    /// other variable.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<GaussRational>> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![GaussRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.with_exp(v, 0) != Monomial::ONE {
                return None;
            }
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }

    fn merge(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly { terms: out }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, GaussRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn scale(&self, c: &GaussRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> MultiPoly {
        self.scale(&GaussRational::real(c.clone()))
    }

    pub fn scale_int(&self, n: i64) -> MultiPoly {
        self.scale(&GaussRational::from_int(n))
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: Monomial) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = MultiPoly::mul(&base, &base);
            }
        }
        acc
    }

    /// Partial evaluation: assigned variables are replaced by their values,
    /// the rest stay symbolic.
    pub fn eval(&self, assignment: &[(Var, GaussRational)]) -> MultiPoly {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: Vec<(Var, Vec<GaussRational>)> = assignment
            .iter()
            .map(|(v, val)| {
                let deg = self.degree_in(*v).unwrap_or(0);
                let mut table = Vec::with_capacity(deg as usize + 1);
                table.push(GaussRational::one());
                for k in 1..=deg as usize {
                    let next = &table[k - 1] * val;
                    table.push(next);
                }
                (*v, table)
            })
            .collect();
        powers.dedup_by_key(|(v, _)| *v);
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (v, table) in &powers {
                let e = m.exp(*v);
                if e > 0 {
                    coeff = &coeff * &table[e as usize];
                    mono = mono.with_exp(*v, 0);
                }
            }
            (mono, coeff)
        }))
    }

    /// Evaluates at rational points for each listed variable.
    pub fn eval_rational(&self, assignment: &[(Var, Rational)]) -> MultiPoly {
        let a: Vec<_> = assignment.iter().map(|(v, q)| (*v, GaussRational::real(q.clone()))).collect();
        self.eval(&a)
    }

    /// Formal partial derivative.
    pub fn diff(&self, v: Var) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) > 0)
                .map(|(m, c)| {
                    let e = m.exp(v);
                    (m.with_exp(v, e - 1), c.scale(&Rational::from(e as i64)))
                })
                .collect(),
        }
        .resorted()
    }

    pub fn diff_x(&self) -> MultiPoly {
        self.diff(Var::X)
    }

    fn resorted(mut self) -> MultiPoly {
        self.terms.sort_unstable_by_key(|(m, _)| *m);
        self
    }

    /// Replaces `v` by the polynomial `q` and re-expands.
    pub fn substitute(&self, v: Var, q: &MultiPoly) -> MultiPoly {
        let Some(deg) = self.degree_in(v) else {
            return MultiPoly::zero();
        };
        let mut by_power: Vec<Vec<(Monomial, GaussRational)>> = vec![Vec::new(); deg as usize + 1];
        for (m, c) in &self.terms {
            by_power[m.exp(v) as usize].push((m.with_exp(v, 0), c.clone()));
        }
        let mut result = MultiPoly::zero();
        let mut q_pow = MultiPoly::one();
        for (e, terms) in by_power.into_iter().enumerate() {
            if e > 0 {
                q_pow = q_pow.mul(q);
            }
            if !terms.is_empty() {
                result = result.add(&MultiPoly::from_terms(terms).mul(&q_pow));
            }
        }
        result
    }

    /// Replaces `x` by `a*x + b`. Only defined on polynomials free of `y`
    /// and `t`.
    pub fn subst_x_affine(&self, a: &GaussRational, b: &GaussRational) -> Result<MultiPoly> {
        if self.depends_on(Var::Y) || self.depends_on(Var::T) {
            return Err(Error::Precondition("affine x-substitution needs a polynomial free of y and t".into()));
        }
        let q = MultiPoly::x().scale(a).add(&MultiPoly::constant(b.clone()));
        Ok(self.substitute(Var::X, &q))
    }

    /// Renames variable `from` to `to`; `to` must not occur.
    pub fn rename(&self, from: Var, to: Var) -> Result<MultiPoly> {
        if from != to && self.depends_on(to) {
            return Err(Error::Precondition(format!("rename target {} already occurs", to.name())));
        }
        Ok(MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.with_exp(from, 0).with_exp(to, m.exp(from)), c.clone())).collect(),
        }
        .resorted())
    }

    /// The polynomial with every coefficient replaced by `f(coeff)`.
    pub fn map_coeffs(&self, f: impl Fn(&GaussRational) -> GaussRational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// The first `limit` terms in descending order, rendered, and whether
    /// anything was cut.
    pub fn display_truncated(&self, limit: usize) -> (String, bool) {
        if self.terms.len() <= limit {
            return (self.to_string(), false);
        }
        let head = MultiPoly { terms: self.terms[self.terms.len() - limit..].to_vec() };
        (format!("{head}+..."), true)
    }
}

/// Generalized binomial coefficient `C(alpha, k) = alpha(alpha-1)...(alpha-k+1)/k!`.
pub fn binom_poly(alpha: &MultiPoly, k: u32) -> MultiPoly {
    let mut acc = MultiPoly::one();
    for j in 0..k {
        acc = acc.mul(&alpha.sub(&MultiPoly::int(j as i64)));
    }
    let k_fact: Rational = (1..=k as i64).map(Rational::from).product();
    acc.scale_rational(&k_fact.recip().expect("factorial is nonzero"))
}

/// Rising product `(a)(a+1)...(a+len-1)` with polynomial `a`.
pub fn rising(a: &MultiPoly, len: u32) -> MultiPoly {
    (0..len).fold(MultiPoly::one(), |acc, j| acc.mul(&a.add(&MultiPoly::int(j as i64))))
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        MultiPoly::add(&self, &rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        MultiPoly::sub(&self, &rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        MultiPoly::mul(&self, &rhs)
    }
}

macro_rules! poly_owned_ref_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                MultiPoly::$method(&self, rhs)
            }
        }
    };
}

poly_owned_ref_binop!(Add, add);
poly_owned_ref_binop!(Sub, sub);
poly_owned_ref_binop!(Mul, mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc.add(&p))
    }
}

// ---- pretty printing ----

fn render_monomial(m: Monomial) -> String {
    let mut s = String::new();
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => s.push_str(v.name()),
            e => {
                s.push_str(v.name());
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
    }
    s
}

/// Renders `c * m` as (is_negative, magnitude text). `followed` means more
/// factors are appended after the text.
fn render_term(c: &GaussRational, m: Monomial, followed: bool) -> (bool, String) {
    let mono = render_monomial(m);
    let bare = mono.is_empty() && !followed;
    let (negative, scalar, unit) = if c.is_real() {
        (c.re.is_negative(), c.re.abs(), "")
    } else if c.re.is_zero() {
        (c.im.is_negative(), c.im.abs(), "i")
    } else {
        return (false, format!("({c}){mono}"));
    };
    let scalar_text = if scalar.is_one() && !(bare && unit.is_empty()) {
        String::new()
    } else if scalar.is_integer() || (bare && unit.is_empty()) {
        scalar.to_string()
    } else {
        format!("({scalar})")
    };
    (negative, format!("{scalar_text}{unit}{mono}"))
}

fn render_flat(terms: &[(Monomial, GaussRational)], out: &mut String, leading: bool) {
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        let (neg, text) = render_term(c, *m, false);
        if neg {
            out.push('-');
        } else if !(leading && i == 0) {
            out.push('+');
        }
        out.push_str(&text);
    }
}

/// Descending powers of `x`; each power's coefficient (a polynomial in the
/// remaining variables) is parenthesized when it has several terms.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let max_x = self.degree_in(Var::X).unwrap_or(0);
        let mut out = String::new();
        for k in (0..=max_x).rev() {
            let coeff = self.coeff_of(Var::X, k);
            if coeff.is_zero() {
                continue;
            }
            let first = out.is_empty();
            if k == 0 {
                render_flat(&coeff.terms, &mut out, first);
                continue;
            }
            let x_part = render_monomial(Monomial::var(Var::X, k));
            if coeff.len() == 1 {
                let (m, c) = &coeff.terms[0];
                let (neg, text) = render_term(c, *m, true);
                if neg {
                    out.push('-');
                } else if !first {
                    out.push('+');
                }
                out.push_str(&text);
            } else {
                let lead_negative = {
                    let (m, c) = coeff.terms.last().expect("nonempty");
                    render_term(c, *m, false).0
                };
                let inner = if lead_negative { -&coeff } else { coeff };
                if lead_negative {
                    out.push('-');
                } else if !first {
                    out.push('+');
                }
                out.push('(');
                render_flat(&inner.terms, &mut out, true);
                out.push(')');
            }
            out.push_str(&x_part);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---- JSON ----

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: [u32; 4],
    re: Rational,
    im: Rational,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: [String; 4],
    terms: Vec<JsonTerm>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            vars: Var::ALL.map(|v| v.name().to_string()),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| JsonTerm { exp: m.exps(), re: c.re.clone(), im: c.im.clone() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(deserializer)?;
        if raw.vars != Var::ALL.map(|v| v.name().to_string()) {
            return Err(D::Error::custom("vars must be [\"x\",\"y\",\"r\",\"t\"]"));
        }
        if raw.terms.iter().any(|t| t.exp.iter().any(|&e| e > MAX_EXPONENT)) {
            return Err(D::Error::custom("exponent out of range"));
        }
        Ok(MultiPoly::from_terms(raw.terms.into_iter().map(|t| (Monomial::new(t.exp), GaussRational::new(t.re, t.im)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn x() -> MultiPoly {
        MultiPoly::x()
    }

    fn r() -> MultiPoly {
        MultiPoly::r()
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(n)
    }

    /// d_2 from the definition written out by hand: 2x^2+2x+r+1.
    fn d2() -> MultiPoly {
        x().pow(2).scale_int(2) + x().scale_int(2) + r() + c(1)
    }

    #[test]
    fn monomial_packing_orders_graded_lex() {
        let xy = Monomial::new([1, 1, 0, 0]);
        let r3 = Monomial::new([0, 0, 3, 0]);
        let x2 = Monomial::new([2, 0, 0, 0]);
        let y2 = Monomial::new([0, 2, 0, 0]);
        assert!(xy < r3);
        assert!(y2 < xy && xy < x2);
        assert_eq!(xy.mul(x2), Monomial::new([3, 1, 0, 0]));
        assert_eq!(Monomial::new([3, 1, 4, 2]).degree(), 10);
    }

    #[test]
    fn ring_examples() {
        assert_eq!(x().mul(&x()), MultiPoly::monomial(GaussRational::one(), Monomial::var(Var::X, 2)));
        assert_eq!(d2().add(&MultiPoly::zero()), d2());
        let d1 = x().scale_int(2) + c(1);
        assert_eq!(MultiPoly::mul(&d1, &d1), x().pow(2).scale_int(4) + x().scale_int(4) + c(1));
        assert!(d2().sub(&d2()).is_zero());
        assert_eq!(d2().sub(&d2()).terms().len(), 0);
    }

    #[test]
    fn binom_poly_examples() {
        assert_eq!(binom_poly(&(x() + r()), 0), MultiPoly::one());
        assert_eq!(binom_poly(&(r() + c(1)), 1), r() + c(1));
        let alpha = -r() - MultiPoly::rational(q(1, 2));
        assert_eq!(binom_poly(&alpha, 1), alpha);
        // C(x,2) = (x^2 - x)/2
        assert_eq!(binom_poly(&x(), 2), (x().pow(2) - x()).scale_rational(&q(1, 2)));
        assert_eq!(binom_poly(&x(), 3).total_degree(), Some(3));
        // integer specialization agrees with the integer binomial, negatives included
        for n in -6..=6i64 {
            for k in 0..=5u32 {
                let v = binom_poly(&c(n), k).constant_value().unwrap();
                assert_eq!(v, GaussRational::real(Rational::from(crate::exact::int_binomial(n, k as i64))));
            }
        }
    }

    #[test]
    fn eval_examples() {
        let zero = GaussRational::zero();
        assert_eq!(d2().eval(&[(Var::X, zero)]), r() + c(1));
        let half = GaussRational::real(q(-1, 2));
        assert_eq!(d2().eval(&[(Var::X, half)]), r() + MultiPoly::rational(q(1, 2)));
        assert_eq!(d2().eval(&[]), d2());
        let full = d2().eval(&[(Var::X, 1.into()), (Var::R, 3.into())]);
        assert_eq!(full.constant_value(), Some(GaussRational::from_int(8)));
    }

    #[test]
    fn diff_examples() {
        assert_eq!(x().pow(2).diff_x(), x().scale_int(2));
        assert_eq!((x().scale_int(2) + c(1)).diff_x(), c(2));
        let six_r_5 = r().scale_int(6) + c(5);
        let big_d3 = x().pow(3) - MultiPoly::mul(&six_r_5, &x());
        assert_eq!(big_d3.diff_x(), x().pow(2).scale_int(3) - six_r_5);
    }

    #[test]
    fn affine_substitution_examples() {
        let a = GaussRational::new(q(0, 1), q(1, 2));
        let b = GaussRational::real(q(-1, 2));
        assert_eq!(x().subst_x_affine(&a, &b).unwrap(), x().scale(&a) + MultiPoly::constant(b.clone()));
        // (-i)^2 * 2! * d_2((ix-1)/2) = x^2-2r-1
        let scaled = d2().subst_x_affine(&a, &b).unwrap().scale(&GaussRational::from_int(-2));
        assert_eq!(scaled, x().pow(2) - r().scale_int(2) - c(1));
        assert_eq!(d2().subst_x_affine(&GaussRational::one(), &GaussRational::zero()).unwrap(), d2());
        assert!(MultiPoly::y().subst_x_affine(&a, &b).is_err());
        assert!(MultiPoly::t().subst_x_affine(&a, &b).is_err());
    }

    #[test]
    fn rename_and_coefficients() {
        let p = d2();
        let py = p.rename(Var::X, Var::Y).unwrap();
        assert_eq!(py.rename(Var::Y, Var::X).unwrap(), p);
        assert!(py.add(&p).rename(Var::X, Var::Y).is_err());
        assert_eq!(p.coeff_of(Var::X, 0), r() + c(1));
        assert_eq!(p.coeff_of(Var::X, 2), c(2));
        assert_eq!(p.univariate_coeffs(Var::X), None);
        assert_eq!(
            p.eval(&[(Var::R, 0.into())]).univariate_coeffs(Var::X).unwrap(),
            vec![1.into(), 2.into(), 2.into()]
        );
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(d2().to_string(), "2x^2+2x+r+1");
        let d3 = x().pow(3).scale_rational(&q(4, 3))
            + x().pow(2).scale_int(2)
            + (r().scale_int(2) + MultiPoly::rational(q(8, 3))).mul(&x())
            + r()
            + c(1);
        assert_eq!(d3.to_string(), "(4/3)x^3+2x^2+(2r+8/3)x+r+1");
        let big_d3 = x().pow(3) - (r().scale_int(6) + c(5)).mul(&x());
        assert_eq!(big_d3.to_string(), "x^3-(6r+5)x");
        assert_eq!((x().pow(2) - r().scale_int(2) - c(1)).to_string(), "x^2-2r-1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::rational(q(-1, 2)).to_string(), "-1/2");
        let a = GaussRational::new(q(0, 1), q(1, 2));
        assert_eq!((x().scale(&a) - MultiPoly::rational(q(1, 2))).to_string(), "(1/2)ix-1/2");
        assert_eq!((r().mul(&x()).scale_int(-3) + MultiPoly::y()).to_string(), "-3rx+y");
    }

    #[test]
    fn json_schema() {
        let p = MultiPoly::x().scale_int(2) + MultiPoly::int(1);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"vars":["x","y","r","t"],"terms":[{"exp":[1,0,0,0],"re":"2","im":"0"},{"exp":[0,0,0,0],"re":"1","im":"0"}]}"#
        );
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"vars":["a","y","r","t"],"terms":[]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }
}
