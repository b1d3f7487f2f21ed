//! Truncated power series in `t` whose coefficients are `t`-free
//! polynomials in the remaining variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{GaussRational, Rational};
use crate::poly::{binom_poly, MultiPoly, Var};

/// Coefficients of `t^0..=t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a series needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| c.depends_on(Var::T)) {
            return Err(Error::CoefficientDependsOnT);
        }
        Ok(TruncSeries { order: coeffs.len() - 1, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { order, coeffs: vec![MultiPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(MultiPoly::one(), order)
    }

    /// `c` as a series; `c` must not depend on `t`.
    pub fn constant(c: MultiPoly, order: usize) -> Self {
        assert!(!c.depends_on(Var::T), "series coefficients are t-free");
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c * t^k` truncated at `order`.
    pub fn monomial(c: MultiPoly, k: usize, order: usize) -> Self {
        assert!(!c.depends_on(Var::T), "series coefficients are t-free");
        let mut s = TruncSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Splits a polynomial by powers of `t`.
    pub fn from_poly(p: &MultiPoly, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| p.coeff_of(Var::T, k as u32)).collect();
        TruncSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&MultiPoly> {
        self.coeffs.get(n).ok_or(Error::CoefficientOutOfRange { index: n, order: self.order })
    }

    fn check_order(&self, other: &TruncSeries) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(TruncSeries { order: self.order, coeffs })
    }

    /// Cauchy product.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_order(other)?;
        let n = self.order;
        let mut coeffs = vec![MultiPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncSeries { order: n, coeffs })
    }

    pub fn scale(&self, c: &MultiPoly) -> TruncSeries {
        assert!(!c.depends_on(Var::T), "series coefficients are t-free");
        TruncSeries { order: self.order, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// Termwise `d/dt`; the result keeps the same order with a zero top slot.
    pub fn derivative(&self) -> TruncSeries {
        let mut coeffs: Vec<MultiPoly> = (1..=self.order).map(|k| self.coeffs[k].scale_int(k as i64)).collect();
        coeffs.push(MultiPoly::zero());
        TruncSeries { order: self.order, coeffs }
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// Powers `u^0..=u^order` of a series with zero constant term; `u^k`
    /// vanishes below `t^k`, so higher powers are all zero after truncation.
    fn powers(&self) -> Vec<TruncSeries> {
        let mut out = vec![TruncSeries::one(self.order)];
        for _ in 1..=self.order {
            let next = out.last().expect("nonempty").mul(self).expect("same order");
            out.push(next);
        }
        out
    }
}

/// `(1 + u)^alpha = sum_n C(alpha, n) u^n`, truncated at the order of `u`.
pub fn series_binpow(alpha: &MultiPoly, u: &TruncSeries) -> Result<TruncSeries> {
    u.require_zero_constant()?;
    if alpha.depends_on(Var::T) {
        return Err(Error::CoefficientDependsOnT);
    }
    let mut acc = TruncSeries::zero(u.order);
    for (n, u_n) in u.powers().iter().enumerate() {
        acc = acc.add(&u_n.scale(&binom_poly(alpha, n as u32)))?;
    }
    Ok(acc)
}

/// `exp(c * s) = sum_k c^k s^k / k!` for `s` with zero constant term.
pub fn series_exp_scaled(c: &MultiPoly, s: &TruncSeries) -> Result<TruncSeries> {
    s.require_zero_constant()?;
    if c.depends_on(Var::T) {
        return Err(Error::CoefficientDependsOnT);
    }
    let mut acc = TruncSeries::zero(s.order);
    let mut c_pow = MultiPoly::one();
    let mut k_fact = Rational::one();
    for (k, s_k) in s.powers().iter().enumerate() {
        if k > 0 {
            c_pow = c_pow.mul(c);
            k_fact = k_fact * Rational::from(k as i64);
        }
        let factor = c_pow.scale_rational(&k_fact.recip()?);
        acc = acc.add(&s_k.scale(&factor))?;
    }
    Ok(acc)
}

/// `arctan t = sum_k (-1)^k t^(2k+1) / (2k+1)`.
pub fn series_arctan(order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for j in (1..=order).step_by(2) {
        let sign = if (j / 2) % 2 == 0 { 1 } else { -1 };
        s.coeffs[j] = MultiPoly::rational(Rational::new(sign, j as i64).expect("odd index"));
    }
    s
}

pub fn series_coeff(s: &TruncSeries, n: usize) -> Result<MultiPoly> {
    s.coeff(n).cloned()
}

/// `t` scaled by `c`, a convenience for building `u = c t`.
pub fn linear(c: GaussRational, order: usize) -> TruncSeries {
    TruncSeries::monomial(MultiPoly::constant(c), 1, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn t_series(order: usize) -> TruncSeries {
        linear(1.into(), order)
    }

    #[test]
    fn mul_examples() {
        let one_plus_t = TruncSeries::one(2).add(&t_series(2)).unwrap();
        let one_minus_t = TruncSeries::one(2).add(&linear((-1).into(), 2)).unwrap();
        let prod = one_plus_t.mul(&one_minus_t).unwrap();
        assert_eq!(prod.coeffs(), &[MultiPoly::one(), MultiPoly::zero(), MultiPoly::int(-1)]);
        assert_eq!(prod.mul(&TruncSeries::one(2)).unwrap(), prod);
        assert_eq!(prod.mul(&TruncSeries::one(3)), Err(Error::OrderMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn binpow_examples() {
        let alpha = MultiPoly::x() - MultiPoly::r();
        let s = series_binpow(&alpha, &t_series(3)).unwrap();
        for n in 0..=3 {
            assert_eq!(s.coeff(n).unwrap(), &binom_poly(&alpha, n as u32));
        }
        let anything = TruncSeries::from_poly(&(MultiPoly::t().scale_int(3) + MultiPoly::t().pow(2)), 4);
        assert_eq!(series_binpow(&MultiPoly::zero(), &anything).unwrap(), TruncSeries::one(4));
        let neg_half = -MultiPoly::r() - MultiPoly::rational(q(1, 2));
        let t2 = TruncSeries::monomial(MultiPoly::one(), 2, 4);
        let s = series_binpow(&neg_half, &t2).unwrap();
        assert_eq!(s.coeff(2).unwrap(), &binom_poly(&neg_half, 1));
        assert_eq!(s.coeff(1).unwrap(), &MultiPoly::zero());
        assert_eq!(series_binpow(&neg_half, &TruncSeries::one(2)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn exp_examples() {
        let x = MultiPoly::x();
        let e = series_exp_scaled(&x, &series_arctan(2)).unwrap();
        assert_eq!(e.coeffs(), &[MultiPoly::one(), x.clone(), x.pow(2).scale_rational(&q(1, 2))]);
        assert_eq!(series_exp_scaled(&MultiPoly::zero(), &series_arctan(5)).unwrap(), TruncSeries::one(5));
        let e = series_exp_scaled(&x, &t_series(3)).unwrap();
        assert_eq!(e.coeff(3).unwrap(), &x.pow(3).scale_rational(&q(1, 6)));
        assert_eq!(series_exp_scaled(&x, &TruncSeries::one(2)), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn arctan_examples() {
        assert_eq!(series_arctan(1).coeffs(), &[MultiPoly::zero(), MultiPoly::one()]);
        let a5 = series_arctan(5);
        let expect: [i64; 6] = [0, 1, 0, -3, 0, 5];
        for (k, d) in expect.iter().enumerate() {
            let want = if *d == 0 { MultiPoly::zero() } else { MultiPoly::rational(q(d.signum(), d.abs())) };
            assert_eq!(a5.coeff(k).unwrap(), &want, "k={k}");
        }
        // (1 + t^2) * arctan' = 1
        let one_t2 = TruncSeries::from_poly(&(MultiPoly::one() + MultiPoly::t().pow(2)), 9);
        let lhs = one_t2.mul(&series_arctan(9).derivative()).unwrap();
        assert_eq!(lhs, TruncSeries::one(9));
    }

    #[test]
    fn coeff_bounds() {
        let s = series_arctan(3);
        assert_eq!(series_coeff(&s, 0).unwrap(), MultiPoly::zero());
        assert_eq!(series_coeff(&s, 4), Err(Error::CoefficientOutOfRange { index: 4, order: 3 }));
        assert_eq!(TruncSeries::new(vec![MultiPoly::t()]), Err(Error::CoefficientDependsOnT));
    }
}
