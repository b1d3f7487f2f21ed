//! The linear functional `L` that makes the `D_n` orthogonal, built from
//! the three-term recurrence alone: `L[D_0] = 1`, `L[D_k] = 0` for `k > 0`.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::families::FamilyCache;
use crate::poly::{binom_poly, rising, MultiPoly, Var};
use crate::verify::report::{CheckReport, Params, Verdict, Witness};

/// Coefficients `c_k(r)` with `x^n = sum_k c_k(r) D_k(x)`.
///
/// Uses `x D_k = D_{k+1} + k(k+2r) D_{k-1}`.
pub fn monomial_to_d_basis(n: usize) -> Vec<MultiPoly> {
    let mut coeffs = vec![MultiPoly::one()];
    for _ in 0..n {
        coeffs = times_x(&coeffs);
    }
    coeffs
}

fn times_x(coeffs: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut next = vec![MultiPoly::zero(); coeffs.len() + 1];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        next[k + 1] = next[k + 1].add(c);
        if k > 0 {
            let k_times = MultiPoly::r().scale_int(2 * k as i64).add(&MultiPoly::int((k * k) as i64));
            next[k - 1] = next[k - 1].add(&c.mul(&k_times));
        }
    }
    next
}

/// `mu_n = L[x^n]`.
pub fn moment(n: usize) -> MultiPoly {
    monomial_to_d_basis(n).swap_remove(0)
}

/// `mu_0..=mu_max`, sharing the basis expansion.
pub fn moments(max: usize) -> Vec<MultiPoly> {
    let mut out = Vec::with_capacity(max + 1);
    let mut coeffs = vec![MultiPoly::one()];
    out.push(MultiPoly::one());
    for _ in 0..max {
        coeffs = times_x(&coeffs);
        out.push(coeffs[0].clone());
    }
    out
}

/// `L[p]` for `p` polynomial in `x` (coefficients may involve `r`).
pub fn apply_functional(p: &MultiPoly, moments: &[MultiPoly]) -> Result<MultiPoly> {
    let deg = p.degree_in(Var::X).unwrap_or(0) as usize;
    if deg >= moments.len() {
        return Err(Error::Precondition(format!("need moments up to {deg}, have {}", moments.len())));
    }
    Ok((0..=deg).map(|j| p.coeff_of(Var::X, j as u32).mul(&moments[j])).sum())
}

/// `1/v_n = n! (2r+1)(2r+2)...(2r+n)`, the squared norm of `D_n`.
pub fn squared_norm(n: usize) -> MultiPoly {
    let two_r_plus_1 = MultiPoly::r().scale_int(2).add(&MultiPoly::one());
    rising(&two_r_plus_1, n as u32).scale_rational(&Rational::from_int(crate::exact::factorial(n as u64)))
}

/// The `D_0` coefficient of `D_m D_n` in the linearization
/// `D_m D_n = sum_k C(m,k) C(n,k) k!^2 C(2r+m+n-k, k) D_{m+n-2k}`.
pub fn linearization_constant_term(m: usize, n: usize) -> MultiPoly {
    if m != n {
        return MultiPoly::zero();
    }
    let k_fact = Rational::from_int(crate::exact::factorial(n as u64));
    let upper = MultiPoly::r().scale_int(2).add(&MultiPoly::int(n as i64));
    binom_poly(&upper, n as u32).scale_rational(&(&k_fact * &k_fact))
}

/// One orthogonality instance: `L[D_m D_n]` against the expected norm and
/// against the linearization formula.
pub fn orthogonality_verdict(cache: &FamilyCache, moments: &[MultiPoly], m: usize, n: usize) -> Verdict {
    let product = cache.big_d(m as i64).mul(&cache.big_d(n as i64));
    let value = apply_functional(&product, moments)
        .map_err(|e| Witness::Message { label: "L[D_m D_n]".into(), detail: e.to_string() })?;
    let expected = if m == n { squared_norm(n) } else { MultiPoly::zero() };
    super::expect_eq("L[D_m D_n] vs norm", &value, &expected)?;
    super::expect_eq("L[D_m D_n] vs linearization", &value, &linearization_constant_term(m, n))
}

pub fn check_orthogonality(cache: &FamilyCache, max_n: usize) -> Vec<CheckReport> {
    let mu = moments(2 * max_n);
    let mut out = Vec::new();
    for m in 0..=max_n {
        for n in 0..=max_n {
            let start = Instant::now();
            let verdict = orthogonality_verdict(cache, &mu, m, n);
            let params = Params::new().int("m", m as i64).int("n", n as i64);
            out.push(CheckReport::new("eq3.1.orthogonality", params, verdict, None, start.elapsed()));
        }
    }
    out
}

/// Sample grid used when no samples are given.
pub fn default_r_samples() -> Vec<Rational> {
    [(-1, 4), (0, 1), (1, 2), (1, 1), (3, 1)].iter().map(|&(p, q)| Rational::new(p, q).expect("q > 0")).collect()
}

pub fn default_x_samples() -> Vec<Rational> {
    [(-3, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (2, 1)]
        .iter()
        .map(|&(p, q)| Rational::new(p, q).expect("q > 0"))
        .collect()
}

/// `Delta_n = D_n^2 - D_{n+1} D_{n-1}` at the point `(r, x)`, and the lower
/// bound `(2r+1) n! (2r+1)...(2r+n) / (n(n+2r))`.
pub fn turan_gap(cache: &FamilyCache, n: usize, r: &Rational, x: &Rational) -> (Rational, Rational) {
    let at = |k: i64| -> Rational {
        let v = cache.big_d(k).eval_rational(&[(Var::R, r.clone()), (Var::X, x.clone())]);
        v.constant_value().expect("fully evaluated").re
    };
    let n_i = n as i64;
    let d_n = at(n_i);
    let delta = &d_n * &d_n - at(n_i + 1) * at(n_i - 1);
    let two_r_plus_1 = r * &Rational::from(2) + Rational::one();
    let mut rising_prod = Rational::one();
    for j in 0..n_i {
        rising_prod = rising_prod * (&two_r_plus_1 + &Rational::from(j));
    }
    let numer = &two_r_plus_1 * &Rational::from_int(crate::exact::factorial(n as u64)) * rising_prod;
    let denom = Rational::from(n_i) * (Rational::from(n_i) + r * &Rational::from(2));
    (delta, numer / denom)
}

pub fn positivity_verdict(cache: &FamilyCache, n: usize, r: &Rational, x: &Rational) -> Verdict {
    let (delta, bound) = turan_gap(cache, n, r, x);
    if !delta.is_positive() {
        return Err(Witness::Message { label: "Delta_n > 0".into(), detail: format!("Delta_n = {delta}") });
    }
    if delta < bound {
        return Err(Witness::Message {
            label: "Delta_n >= bound".into(),
            detail: format!("Delta_n = {delta} < {bound}"),
        });
    }
    Ok(())
}

pub fn check_positivity(
    cache: &FamilyCache,
    max_n: usize,
    r_samples: &[Rational],
    x_samples: &[Rational],
) -> Result<Vec<CheckReport>> {
    let minus_half = Rational::new(-1, 2)?;
    if let Some(bad) = r_samples.iter().find(|r| **r <= minus_half) {
        return Err(Error::Precondition(format!("r sample {bad} is not above -1/2")));
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in r_samples {
            for x in x_samples {
                let start = Instant::now();
                let verdict = positivity_verdict(cache, n, r, x);
                let params = Params::new().int("n", n as i64).rat("r", r.clone()).rat("x", x.clone());
                out.push(CheckReport::new("thm3.1.positivity", params, verdict, None, start.elapsed()));
            }
        }
    }
    Ok(out)
}
