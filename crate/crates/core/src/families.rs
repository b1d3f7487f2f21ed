//! The two polynomial families and their independent constructions.
//!
//! `d_n(x)` below always means the generalized Delannoy polynomial with a
//! symbolic parameter `r`; `D_n(x)` is the monic family from the
//! three-term recurrence `D_{n+1} = x D_n - n(n+2r) D_{n-1}`.
//!
//! Every family has at least three routes (definition, recurrence,
//! generating function) so the routes can be compared against each other.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, int_binomial, GaussRational, Rational};
use crate::poly::{binom_poly, MultiPoly, Var};
use crate::series::{linear, series_arctan, series_binpow, series_exp_scaled, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Generalized Delannoy polynomials `d_n`.
    Delannoy,
    /// Orthogonal polynomials `D_n`.
    Orthogonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Def,
    Rec,
    Gf,
    Egf,
    FromD,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Def => "def",
            Route::Rec => "rec",
            Route::Gf => "gf",
            Route::Egf => "egf",
            Route::FromD => "from-d",
        }
    }

    /// Whether the route constructs the given family.
    pub fn valid_for(self, family: Family) -> bool {
        match family {
            Family::Delannoy => matches!(self, Route::Def | Route::Rec | Route::Gf),
            Family::Orthogonal => matches!(self, Route::Rec | Route::FromD | Route::Egf),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "def" => Ok(Route::Def),
            "rec" => Ok(Route::Rec),
            "gf" => Ok(Route::Gf),
            "egf" => Ok(Route::Egf),
            "from-d" => Ok(Route::FromD),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// Replaces `r` by `r + c`.
pub fn shift_r(p: &MultiPoly, c: i64) -> MultiPoly {
    p.substitute(Var::R, &MultiPoly::r().add(&MultiPoly::int(c)))
}

/// Sets `r = 0`.
pub fn at_r_zero(p: &MultiPoly) -> MultiPoly {
    p.eval(&[(Var::R, GaussRational::zero())])
}

/// `d_n` from its defining sum `sum_k C(x+r+k, k) C(x-r, n-k)`.
pub fn d_def(n: usize) -> MultiPoly {
    let x_minus_r = MultiPoly::x().sub(&MultiPoly::r());
    let x_plus_r = MultiPoly::x().add(&MultiPoly::r());
    (0..=n)
        .map(|k| {
            let upper = x_plus_r.add(&MultiPoly::int(k as i64));
            binom_poly(&upper, k as u32).mul(&binom_poly(&x_minus_r, (n - k) as u32))
        })
        .sum()
}

/// `d_0..=d_max` from `(n+1) d_{n+1} = (1+2x) d_n + (n+2r) d_{n-1}`.
pub fn d_rec_list(max: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one()];
    let one_plus_2x = MultiPoly::x().scale_int(2).add(&MultiPoly::one());
    for n in 0..max {
        let prev = if n == 0 { MultiPoly::zero() } else { out[n - 1].clone() };
        out.push(d_rec_step(n, &out[n], &prev, &one_plus_2x));
    }
    out
}

fn d_rec_step(n: usize, cur: &MultiPoly, prev: &MultiPoly, one_plus_2x: &MultiPoly) -> MultiPoly {
    let n_plus_2r = MultiPoly::r().scale_int(2).add(&MultiPoly::int(n as i64));
    let sum = one_plus_2x.mul(cur).add(&n_plus_2r.mul(prev));
    sum.scale_rational(&Rational::new(1, n as i64 + 1).expect("n+1 > 0"))
}

pub fn d_rec(n: usize) -> MultiPoly {
    d_rec_list(n).pop().expect("nonempty")
}

/// `d_0..=d_max` as coefficients of `(1+t)^(x-r) (1-t)^(-x-r-1)`.
pub fn d_gf_list(max: usize) -> Vec<MultiPoly> {
    let order = max + 1;
    let x = MultiPoly::x();
    let r = MultiPoly::r();
    let plus = series_binpow(&x.sub(&r), &linear(1.into(), order)).expect("u has no constant term");
    let minus_exp = -(&x.add(&r).add(&MultiPoly::one()));
    let minus = series_binpow(&minus_exp, &linear((-1).into(), order)).expect("u has no constant term");
    let gf = plus.mul(&minus).expect("same order");
    gf.coeffs()[..=max].to_vec()
}

pub fn d_gf(n: usize) -> MultiPoly {
    d_gf_list(n).pop().expect("nonempty")
}

/// `D_0..=D_max` from the three-term recurrence.
pub fn big_d_rec_list(max: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::one()];
    for n in 0..max {
        let prev = if n == 0 { MultiPoly::zero() } else { out[n - 1].clone() };
        out.push(big_d_rec_step(n, &out[n], &prev));
    }
    out
}

fn big_d_rec_step(n: usize, cur: &MultiPoly, prev: &MultiPoly) -> MultiPoly {
    // n(n+2r)
    let c = MultiPoly::r().scale_int(2 * n as i64).add(&MultiPoly::int((n * n) as i64));
    MultiPoly::x().mul(cur).sub(&c.mul(prev))
}

pub fn big_d_rec(n: usize) -> MultiPoly {
    big_d_rec_list(n).pop().expect("nonempty")
}

/// `D_n(x) = (-i)^n n! d_n((ix-1)/2)`, given `d_n`.
pub fn big_d_from_d(n: usize, d_n: &MultiPoly) -> Result<MultiPoly> {
    let a = GaussRational::new(Rational::zero(), Rational::new(1, 2)?);
    let b = GaussRational::real(Rational::new(-1, 2)?);
    let substituted = d_n.subst_x_affine(&a, &b)?;
    let factor = GaussRational::i_pow(-(n as i64)).scale(&Rational::from_int(factorial(n as u64)));
    let out = substituted.scale(&factor);
    if !out.is_real() {
        return Err(Error::ImaginaryResidue(format!("D_{n} built from d_{n}")));
    }
    Ok(out)
}

pub fn big_d_from_d_def(n: usize) -> Result<MultiPoly> {
    big_d_from_d(n, &d_def(n))
}

/// `D_0..=D_max` as `n! [t^n] (1+t^2)^(-r-1/2) exp(x arctan t)`.
pub fn big_d_egf_list(max: usize) -> Vec<MultiPoly> {
    let order = max + 1;
    let alpha = -(&MultiPoly::r().add(&MultiPoly::rational(Rational::new(1, 2).expect("nonzero"))));
    let t2 = TruncSeries::monomial(MultiPoly::one(), 2, order);
    let radical = series_binpow(&alpha, &t2).expect("t^2 has no constant term");
    let exp = series_exp_scaled(&MultiPoly::x(), &series_arctan(order)).expect("arctan has no constant term");
    let egf = radical.mul(&exp).expect("same order");
    egf.coeffs()[..=max]
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale_rational(&Rational::from_int(factorial(n as u64))))
        .collect()
}

pub fn big_d_egf(n: usize) -> MultiPoly {
    big_d_egf_list(n).pop().expect("nonempty")
}

/// Builds `family` index `n` by `route`.
pub fn construct(family: Family, route: Route, n: usize) -> Result<MultiPoly> {
    if !route.valid_for(family) {
        return Err(Error::Precondition(format!("route {route} does not construct {family:?}")));
    }
    Ok(match (family, route) {
        (Family::Delannoy, Route::Def) => d_def(n),
        (Family::Delannoy, Route::Rec) => d_rec(n),
        (Family::Delannoy, Route::Gf) => d_gf(n),
        (Family::Orthogonal, Route::Rec) => big_d_rec(n),
        (Family::Orthogonal, Route::FromD) => big_d_from_d(n, &d_rec(n))?,
        (Family::Orthogonal, Route::Egf) => big_d_egf(n),
        _ => unreachable!("checked by valid_for"),
    })
}

/// Builds indices `0..=n` by `route`, sharing work where the route allows.
pub fn construct_list(family: Family, route: Route, n: usize) -> Result<Vec<MultiPoly>> {
    if !route.valid_for(family) {
        return Err(Error::Precondition(format!("route {route} does not construct {family:?}")));
    }
    match (family, route) {
        (Family::Delannoy, Route::Def) => Ok((0..=n).map(d_def).collect()),
        (Family::Delannoy, Route::Rec) => Ok(d_rec_list(n)),
        (Family::Delannoy, Route::Gf) => Ok(d_gf_list(n)),
        (Family::Orthogonal, Route::Rec) => Ok(big_d_rec_list(n)),
        (Family::Orthogonal, Route::FromD) => {
            d_rec_list(n).iter().enumerate().map(|(k, d)| big_d_from_d(k, d)).collect()
        }
        (Family::Orthogonal, Route::Egf) => Ok(big_d_egf_list(n)),
        _ => unreachable!("checked by valid_for"),
    }
}

/// Delannoy number `d_n(m)`: lattice paths from `(0,0)` to `(m,n)` with
/// steps `(1,0)`, `(0,1)`, `(1,1)`, computed as `sum_k C(n,k) C(m,k) 2^k`.
pub fn delannoy_number(m: u64, n: u64) -> BigInt {
    (0..=m.min(n))
        .map(|k| (int_binomial(n as i64, k as i64) * int_binomial(m as i64, k as i64)) << k as usize)
        .fold(BigInt::zero(), |acc, v| acc + v)
}

/// Table `table[m][n]` of Delannoy numbers from the lattice-path recurrence.
pub fn delannoy_table(max_m: usize, max_n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::one(); max_n + 1]; max_m + 1];
    for m in 1..=max_m {
        for n in 1..=max_n {
            table[m][n] = &table[m - 1][n] + &table[m][n - 1] + &table[m - 1][n - 1];
        }
    }
    table
}

/// One lazily extended sequence, readable from many threads.
#[derive(Default)]
struct Column {
    items: RwLock<Vec<Arc<MultiPoly>>>,
}

impl Column {
    fn get(&self, n: usize, extend: impl Fn(usize, &[Arc<MultiPoly>]) -> MultiPoly) -> Arc<MultiPoly> {
        if let Some(p) = self.items.read().expect("cache lock poisoned").get(n) {
            return p.clone();
        }
        let mut items = self.items.write().expect("cache lock poisoned");
        while items.len() <= n {
            let next = extend(items.len(), &items);
            items.push(Arc::new(next));
        }
        items[n].clone()
    }

    fn len(&self) -> usize {
        self.items.read().expect("cache lock poisoned").len()
    }
}

/// Memoized families: `d_n`, `D_n` and their `r -> r+1` and `r = 0`
/// specializations.
///
/// The symbolic columns grow by their recurrences; the derived columns are
/// built from them entry by entry. Readers share a lock, so the cache can be
/// warmed once and then read from parallel workers.
#[derive(Default)]
pub struct FamilyCache {
    d: Column,
    d_shifted: Column,
    d_zero: Column,
    big_d: Column,
    big_d_shifted: Column,
    big_d_zero: Column,
}

impl FamilyCache {
    pub fn new() -> Self {
        FamilyCache::default()
    }

    /// Fills every column up to index `max`.
    pub fn warm(&self, max: usize) {
        self.d_shifted(max as i64);
        self.d_zero(max as i64);
        self.big_d_shifted(max as i64);
        self.big_d_zero(max as i64);
    }

    pub fn warmed_to(&self) -> usize {
        [&self.d, &self.d_shifted, &self.d_zero, &self.big_d, &self.big_d_shifted, &self.big_d_zero]
            .iter()
            .map(|c| c.len())
            .min()
            .unwrap_or(0)
    }

    /// How each symbolic entry was built.
    pub fn construction_route(&self, _family: Family) -> Route {
        Route::Rec
    }

    fn zero() -> Arc<MultiPoly> {
        Arc::new(MultiPoly::zero())
    }

    /// `d_n`; zero for negative `n`.
    pub fn d(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        let one_plus_2x = MultiPoly::x().scale_int(2).add(&MultiPoly::one());
        self.d.get(n as usize, |k, items| match k {
            0 => MultiPoly::one(),
            1 => one_plus_2x.clone(),
            _ => d_rec_step(k - 1, &items[k - 1], &items[k - 2], &one_plus_2x),
        })
    }

    /// `d_n` with `r` replaced by `r+1`.
    pub fn d_shifted(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        self.d_shifted.get(n as usize, |k, _| shift_r(&self.d(k as i64), 1))
    }

    /// `d_n` at `r = 0`, the classical Delannoy polynomial.
    pub fn d_zero(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        self.d_zero.get(n as usize, |k, _| at_r_zero(&self.d(k as i64)))
    }

    /// `D_n`; zero for negative `n`.
    pub fn big_d(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        self.big_d.get(n as usize, |k, items| match k {
            0 => MultiPoly::one(),
            1 => MultiPoly::x(),
            _ => big_d_rec_step(k - 1, &items[k - 1], &items[k - 2]),
        })
    }

    pub fn big_d_shifted(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        self.big_d_shifted.get(n as usize, |k, _| shift_r(&self.big_d(k as i64), 1))
    }

    pub fn big_d_zero(&self, n: i64) -> Arc<MultiPoly> {
        if n < 0 {
            return Self::zero();
        }
        self.big_d_zero.get(n as usize, |k, _| at_r_zero(&self.big_d(k as i64)))
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

    fn displayed_d3() -> MultiPoly {
        x().pow(3).scale_rational(&q(4, 3))
            + x().pow(2).scale_int(2)
            + (r().scale_int(2) + MultiPoly::rational(q(8, 3))).mul(&x())
            + r()
            + c(1)
    }

    #[test]
    fn d_routes_match_displays() {
        assert_eq!(d_def(0), MultiPoly::one());
        assert_eq!(d_def(3), displayed_d3());
        assert_eq!(d_def(2).eval(&[(Var::X, 0.into())]), r() + c(1));
        assert_eq!(d_rec(2), x().pow(2).scale_int(2) + x().scale_int(2) + r() + c(1));
        assert_eq!(d_rec(1), x().scale_int(2) + c(1));
        assert_eq!(d_rec(6), d_def(6));
        assert_eq!(d_gf(0), MultiPoly::one());
        assert_eq!(d_gf(3), displayed_d3());
        assert_eq!(d_gf(5), d_rec(5));
    }

    #[test]
    fn big_d_routes_match_displays() {
        let d2 = x().pow(2) - r().scale_int(2) - c(1);
        let d3 = x().pow(3) - (r().scale_int(6) + c(5)).mul(&x());
        assert_eq!(big_d_rec(2), d2);
        assert_eq!(big_d_rec(3), d3);
        assert_eq!(big_d_rec(0), MultiPoly::one());
        assert_eq!(big_d_from_d_def(2).unwrap(), d2);
        assert_eq!(big_d_from_d_def(0).unwrap(), MultiPoly::one());
        assert_eq!(big_d_from_d_def(4).unwrap(), big_d_rec(4));
        assert_eq!(big_d_egf(1), x());
        assert_eq!(big_d_egf(2), d2);
        assert_eq!(big_d_egf(5), big_d_rec(5));
    }

    #[test]
    fn from_d_rejects_non_real_results() {
        // d_1 without the matching power of -i leaves an imaginary part
        let err = big_d_from_d(0, &d_def(1)).unwrap_err();
        assert!(matches!(err, Error::ImaginaryResidue(_)));
    }

    #[test]
    fn construct_validates_routes() {
        assert!(construct(Family::Delannoy, Route::Egf, 2).is_err());
        assert!(construct(Family::Orthogonal, Route::Def, 2).is_err());
        assert_eq!(construct(Family::Orthogonal, Route::FromD, 3).unwrap(), big_d_rec(3));
        let lists: Vec<_> = [Route::Def, Route::Rec, Route::Gf]
            .iter()
            .map(|&route| construct_list(Family::Delannoy, route, 4).unwrap())
            .collect();
        assert_eq!(lists[0], lists[1]);
        assert_eq!(lists[1], lists[2]);
    }

    #[test]
    fn delannoy_examples() {
        assert_eq!(delannoy_number(1, 1), BigInt::from(3));
        assert_eq!(delannoy_number(0, 7), BigInt::one());
        assert_eq!(delannoy_number(3, 3), BigInt::from(63));
        let table = delannoy_table(8, 8);
        for (m, row) in table.iter().enumerate() {
            for (n, v) in row.iter().enumerate() {
                assert_eq!(*v, delannoy_number(m as u64, n as u64));
            }
        }
    }

    #[test]
    fn cache_matches_routes_and_conventions() {
        let cache = FamilyCache::new();
        assert!(cache.d(-1).is_zero());
        assert!(cache.big_d(-1).is_zero());
        assert_eq!(*cache.d(0), MultiPoly::one());
        assert_eq!(*cache.d(1), x().scale_int(2) + c(1));
        assert_eq!(*cache.big_d(1), x());
        assert_eq!(*cache.d(7), d_def(7));
        assert_eq!(*cache.big_d(7), big_d_rec(7));
        assert_eq!(*cache.d_shifted(3), shift_r(&d_def(3), 1));
        assert!(!cache.d_zero(4).depends_on(Var::R));
        cache.warm(9);
        assert_eq!(cache.warmed_to(), 10);
    }

    #[test]
    fn cache_is_shareable_across_threads() {
        let cache = FamilyCache::new();
        std::thread::scope(|s| {
            for i in 0..4 {
                let cache = &cache;
                s.spawn(move || {
                    assert_eq!(*cache.d(5 + i), d_rec(5 + i as usize));
                });
            }
        });
    }
}
