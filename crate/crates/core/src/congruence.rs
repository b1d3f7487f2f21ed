//! Exhaustive big-integer divisibility scans.
//!
//! Values of `d_k^(r)(x)` at integer points come from the symbolic family
//! specialized at integer `r` and evaluated exactly; each grid row is
//! compared once against the integer three-term recurrence.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};
use crate::families::FamilyCache;
use crate::poly::{MultiPoly, Var};

pub const DEFAULT_N_MAX: u32 = 50;
pub const DEFAULT_R_MAX: u32 = 4;
pub const DEFAULT_M_MAX: u32 = 3;
pub const DEFAULT_X_RANGE: RangeInclusive<i64> = -20..=20;

pub const CSV_HEADER: &str = "check,n,r,x,m,eps,value,modulus,divisible";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CongruenceCheck {
    /// `(2r+1) prod_{k=-r}^{r} (x+k)(x+1-k) sum_{k<n} (2k+2r+1) d_k^(r)(x)^2`
    /// modulo `2 n^2 (n+1)^2 ... (n+2r)^2`.
    #[serde(rename = "thm2.5")]
    Thm25,
    /// `x(x+1) sum_{k<n} (2k+1) d_k(x)^2` modulo `2n^2`.
    #[serde(rename = "sun1.4")]
    Sun14,
    /// `sum_{k<n} eps^k (2k+1) d_k(x)^(2m)` modulo `n`.
    #[serde(rename = "sun1.5")]
    Sun15,
}

impl CongruenceCheck {
    pub const ALL: [CongruenceCheck; 3] = [CongruenceCheck::Thm25, CongruenceCheck::Sun14, CongruenceCheck::Sun15];

    pub fn name(self) -> &'static str {
        match self {
            CongruenceCheck::Thm25 => "thm2.5",
            CongruenceCheck::Sun14 => "sun1.4",
            CongruenceCheck::Sun15 => "sun1.5",
        }
    }
}

impl fmt::Display for CongruenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongruenceCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CongruenceCheck::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCheck {
            name: s.to_string(),
            valid: CongruenceCheck::ALL.iter().map(|c| c.name().to_string()).collect(),
        })
    }
}

/// Scan bounds. Unused fields are ignored by the checks that do not need
/// them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub n_max: u32,
    pub r_max: u32,
    pub m_max: u32,
    pub x_min: i64,
    pub x_max: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_max: DEFAULT_N_MAX,
            r_max: DEFAULT_R_MAX,
            m_max: DEFAULT_M_MAX,
            x_min: *DEFAULT_X_RANGE.start(),
            x_max: *DEFAULT_X_RANGE.end(),
        }
    }
}

impl Grid {
    fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::Precondition("n_max must be positive".into()));
        }
        if self.m_max == 0 {
            return Err(Error::Precondition("m_max must be positive".into()));
        }
        if self.x_min > self.x_max {
            return Err(Error::Precondition(format!("empty x range {}..{}", self.x_min, self.x_max)));
        }
        Ok(())
    }
}

/// Parses `a..b` (inclusive at both ends).
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(s.to_string()))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
    let b: i64 = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
    if a > b {
        return Err(Error::Parse(s.to_string()));
    }
    Ok(a..=b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub check: CongruenceCheck,
    pub n: u32,
    pub r: Option<u32>,
    pub x: i64,
    pub m: Option<u32>,
    pub eps: Option<i8>,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    #[serde(serialize_with = "as_string")]
    pub modulus: BigInt,
    pub divisible: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl ScanRow {
    #[allow(clippy::too_many_arguments)]
    fn new(
        check: CongruenceCheck,
        n: u32,
        r: Option<u32>,
        x: i64,
        m: Option<u32>,
        eps: Option<i8>,
        value: BigInt,
        modulus: BigInt,
    ) -> Self {
        let divisible = value.is_multiple_of(&modulus);
        ScanRow { check, n, r, x, m, eps, value, modulus, divisible }
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.check,
            self.n,
            opt(self.r.map(|r| r.to_string())),
            self.x,
            opt(self.m.map(|m| m.to_string())),
            opt(self.eps.map(|e| e.to_string())),
            self.value,
            self.modulus,
            self.divisible
        )
    }
}

/// Outcome of one exhaustive scan.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceScan {
    pub check: CongruenceCheck,
    pub grid: Grid,
    pub rows: Vec<ScanRow>,
}

impl CongruenceScan {
    pub fn failures(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| !r.divisible)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn summary(&self) -> ScanSummary {
        ScanSummary {
            check: self.check,
            grid: self.grid.clone(),
            rows: self.rows.len(),
            failures: self.failures().count(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub check: CongruenceCheck,
    pub grid: Grid,
    pub rows: usize,
    pub failures: usize,
}

/// A univariate polynomial with rational coefficients stored as integers
/// over one common denominator.
struct IntPoly {
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl IntPoly {
    fn from_poly(p: &MultiPoly) -> Result<IntPoly> {
        let coeffs = p
            .univariate_coeffs(Var::X)
            .ok_or_else(|| Error::Internal("specialized polynomial still depends on r".into()))?;
        let mut den = BigInt::one();
        for c in &coeffs {
            if !c.is_real() {
                return Err(Error::ImaginaryResidue("integer specialization".into()));
            }
            den = den.lcm(c.re.denom());
        }
        let coeffs = coeffs.iter().map(|c| c.re.numer() * (&den / c.re.denom())).collect();
        Ok(IntPoly { coeffs, den })
    }

    fn eval(&self, x: &BigInt) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let (q, rem) = acc.div_rem(&self.den);
        if !rem.is_zero() {
            return Err(Error::NonInteger(format!("{acc}/{}", self.den)));
        }
        Ok(q)
    }
}

/// `d_0..=d_n_max` at integer `r`, as integer-valued polynomials in `x`.
struct Specialized {
    r: u32,
    polys: Vec<IntPoly>,
}

impl Specialized {
    fn new(cache: &FamilyCache, r: u32, n_max: u32) -> Result<Self> {
        let polys = (0..=n_max as i64)
            .map(|k| IntPoly::from_poly(&cache.d(k).eval_rational(&[(Var::R, Rational::from(r as i64))])))
            .collect::<Result<_>>()?;
        Ok(Specialized { r, polys })
    }

    /// `d_0(x)..=d_n_max(x)`, checked against
    /// `(n+1) d_{n+1} = (1+2x) d_n + (n+2r) d_{n-1}`.
    fn values(&self, x: i64) -> Result<Vec<BigInt>> {
        let xb = BigInt::from(x);
        let values: Vec<BigInt> = self.polys.iter().map(|p| p.eval(&xb)).collect::<Result<_>>()?;
        let one_2x = BigInt::from(1 + 2 * x);
        let two_r = BigInt::from(2 * self.r);
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        for (n, v) in values.iter().enumerate() {
            if *v != cur {
                return Err(Error::Internal(format!("d_{n}({x}) at r={} disagrees with the recurrence", self.r)));
            }
            let num = &one_2x * &cur + (BigInt::from(n) + &two_r) * &prev;
            let (next, rem) = num.div_rem(&BigInt::from(n + 1));
            if !rem.is_zero() {
                return Err(Error::NonInteger(format!("recurrence step d_{}({x}) at r={}", n + 1, self.r)));
            }
            prev = std::mem::replace(&mut cur, next);
        }
        Ok(values)
    }
}

fn x_values(grid: &Grid) -> Vec<i64> {
    (grid.x_min..=grid.x_max).collect()
}

/// `2 n^2 (n+1)^2 ... (n+2r)^2`.
pub fn thm2_5_modulus(n: u32, r: u32) -> BigInt {
    (n..=n + 2 * r).fold(BigInt::from(2), |acc, j| acc * BigInt::from(j) * BigInt::from(j))
}

/// `prod_{k=-r}^{r} (x+k)(x+1-k)`.
fn thm2_5_prefactor(x: i64, r: u32) -> BigInt {
    let r = r as i64;
    (-r..=r).fold(BigInt::one(), |acc, k| acc * BigInt::from(x + k) * BigInt::from(x + 1 - k))
}

pub fn check_thm2_5(grid: &Grid) -> Result<CongruenceScan> {
    grid.validate()?;
    let cache = FamilyCache::new();
    let specs: Vec<(Specialized, Specialized)> = (0..=grid.r_max)
        .map(|r| Ok((Specialized::new(&cache, r, grid.n_max)?, Specialized::new(&cache, r + 1, grid.n_max)?)))
        .collect::<Result<_>>()?;
    let tasks: Vec<(u32, i64)> =
        (0..=grid.r_max).flat_map(|r| x_values(grid).into_iter().map(move |x| (r, x))).collect();
    let chunks: Vec<Vec<ScanRow>> = tasks
        .par_iter()
        .map(|&(r, x)| {
            let (spec, shifted) = &specs[r as usize];
            let d = spec.values(x)?;
            let d_up = shifted.values(x)?;
            let two_r1 = BigInt::from(2 * r + 1);
            let prefactor = thm2_5_prefactor(x, r);
            let four_xr = BigInt::from(4) * BigInt::from(x - r as i64) * BigInt::from(x + 1 + r as i64);
            let mut sum = BigInt::zero();
            let mut rows = Vec::with_capacity(grid.n_max as usize);
            for n in 1..=grid.n_max {
                let k = (n - 1) as usize;
                sum += BigInt::from(2 * k as u32 + 2 * r + 1) * &d[k] * &d[k];
                // Closed form of the same sum, computed independently.
                let nb = BigInt::from(n);
                let closed = &nb * &nb * &d[n as usize] * &d[n as usize] - &four_xr * &d_up[k] * &d_up[k];
                if &two_r1 * &sum != closed {
                    return Err(Error::Internal(format!(
                        "weighted sum disagrees with closed form at n={n}, r={r}, x={x}"
                    )));
                }
                let value = &two_r1 * &prefactor * &sum;
                rows.push(ScanRow::new(CongruenceCheck::Thm25, n, Some(r), x, None, None, value, thm2_5_modulus(n, r)));
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(CongruenceScan {
        check: CongruenceCheck::Thm25,
        grid: grid.clone(),
        rows: chunks.into_iter().flatten().collect(),
    })
}

pub fn check_sun_1_4(grid: &Grid) -> Result<CongruenceScan> {
    grid.validate()?;
    let cache = FamilyCache::new();
    let spec = Specialized::new(&cache, 0, grid.n_max)?;
    let chunks: Vec<Vec<ScanRow>> = x_values(grid)
        .par_iter()
        .map(|&x| {
            let d = spec.values(x)?;
            let prefactor = BigInt::from(x) * BigInt::from(x + 1);
            let mut sum = BigInt::zero();
            let mut rows = Vec::new();
            for n in 1..=grid.n_max {
                let k = (n - 1) as usize;
                sum += BigInt::from(2 * k + 1) * &d[k] * &d[k];
                let modulus = BigInt::from(2) * BigInt::from(n) * BigInt::from(n);
                rows.push(ScanRow::new(CongruenceCheck::Sun14, n, None, x, None, None, &prefactor * &sum, modulus));
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(CongruenceScan {
        check: CongruenceCheck::Sun14,
        grid: grid.clone(),
        rows: chunks.into_iter().flatten().collect(),
    })
}

pub fn check_sun_1_5(grid: &Grid) -> Result<CongruenceScan> {
    grid.validate()?;
    let cache = FamilyCache::new();
    let spec = Specialized::new(&cache, 0, grid.n_max)?;
    let chunks: Vec<Vec<ScanRow>> = x_values(grid)
        .par_iter()
        .map(|&x| {
            let d = spec.values(x)?;
            let mut rows = Vec::new();
            for m in 1..=grid.m_max {
                for eps in [1i8, -1] {
                    let mut sum = BigInt::zero();
                    for n in 1..=grid.n_max {
                        let k = (n - 1) as usize;
                        let term = BigInt::from(2 * k + 1) * d[k].pow(2 * m);
                        if eps == -1 && k % 2 == 1 {
                            sum -= term;
                        } else {
                            sum += term;
                        }
                        let row = ScanRow::new(
                            CongruenceCheck::Sun15,
                            n,
                            None,
                            x,
                            Some(m),
                            Some(eps),
                            sum.clone(),
                            BigInt::from(n),
                        );
                        rows.push(row);
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(CongruenceScan {
        check: CongruenceCheck::Sun15,
        grid: grid.clone(),
        rows: chunks.into_iter().flatten().collect(),
    })
}

pub fn run_scan(check: CongruenceCheck, grid: &Grid) -> Result<CongruenceScan> {
    match check {
        CongruenceCheck::Thm25 => check_thm2_5(grid),
        CongruenceCheck::Sun14 => check_sun_1_4(grid),
        CongruenceCheck::Sun15 => check_sun_1_5(grid),
    }
}

/// Compares both sides of the alternating weighted sum of `d_k^2`
/// (each multiplied by `n!`) at every integer point of the grid; returns
/// the number of points compared.
///
/// `sum_{k<n} (-1)^k (2k+2r+1) k! (k+1+2r)...(n+2r) d_k^2
///     = (-1)^n n! (n+2r) (n d_n^2 - (n+1) d_{n-1} d_{n+1})`
pub fn check_alternating_sum(grid: &Grid) -> Result<usize> {
    grid.validate()?;
    let cache = FamilyCache::new();
    let mut compared = 0;
    for r in 0..=grid.r_max {
        let spec = Specialized::new(&cache, r, grid.n_max + 1)?;
        for x in grid.x_min..=grid.x_max {
            let d = spec.values(x)?;
            for n in 1..=grid.n_max as usize {
                let two_r = 2 * r as usize;
                let mut lhs = BigInt::zero();
                for (k, dk) in d.iter().enumerate().take(n) {
                    let rising: BigInt = (k + 1 + two_r..=n + two_r).map(BigInt::from).product();
                    let term = BigInt::from(2 * k + two_r + 1) * factorial(k as u64) * rising * dk * dk;
                    if k % 2 == 0 {
                        lhs += term;
                    } else {
                        lhs -= term;
                    }
                }
                let inner = BigInt::from(n) * &d[n] * &d[n] - BigInt::from(n + 1) * &d[n - 1] * &d[n + 1];
                let mut rhs = factorial(n as u64) * BigInt::from(n + two_r) * inner;
                if n % 2 == 1 {
                    rhs = -rhs;
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!("alternating sum mismatch at n={n}, r={r}, x={x}")));
                }
                compared += 1;
            }
        }
    }
    Ok(compared)
}

/// Exact integer `d_n^(r)(x)` for quick lookups.
pub fn d_value(n: u32, r: u32, x: i64) -> Result<BigInt> {
    let cache = FamilyCache::new();
    let spec = Specialized::new(&cache, r, n)?;
    Ok(spec.values(x)?.swap_remove(n as usize))
}
