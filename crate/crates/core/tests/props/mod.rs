//! Property suites shared by the core test target and the acceptance run.
//!
//! Each suite drives its own `TestRunner` so callers pick the case count.

use delannoy::families::FamilyCache;
use delannoy::poly::rising;
use delannoy::series::{series_binpow, TruncSeries};
use delannoy::{binom_poly, int_binomial, GaussRational, Monomial, MultiPoly, Rational, Var};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub struct Suite {
    pub name: &'static str,
    pub run: fn(u32) -> Result<(), String>,
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "rational field axioms", run: rational_field },
        Suite { name: "gaussian rational field axioms", run: gauss_field },
        Suite { name: "integer binomial pascal rule", run: int_binomial_pascal },
        Suite { name: "polynomial binomial pascal rule", run: binom_poly_pascal },
        Suite { name: "polynomial ring axioms", run: ring_axioms },
        Suite { name: "derivative product rule", run: product_rule },
        Suite { name: "derivative as difference quotient in t", run: difference_quotient },
        Suite { name: "substitution composes", run: substitution_composition },
        Suite { name: "binomial series exponents add", run: binpow_additivity },
        Suite { name: "turan gap recurrence", run: delta_recurrence },
        Suite { name: "weighted square sum closed form", run: weighted_square_sum },
    ]
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..15).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (rat(), rat()).prop_map(|(a, b)| GaussRational::new(a, b))
}

/// Small polynomials; `t` appears only when `with_t`.
fn poly(with_t: bool) -> impl Strategy<Value = MultiPoly> {
    let t_max = if with_t { 2u32 } else { 1 };
    prop::collection::vec(((0u32..3, 0u32..2, 0u32..3, 0..t_max), -4i64..5, -2i64..3), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|((x, y, r, t), re, im)| {
            (Monomial::new([x, y, r, t]), GaussRational::new(Rational::from(re), Rational::from(im)))
        }))
    })
}

fn var() -> impl Strategy<Value = Var> {
    prop::sample::select(Var::ALL.to_vec())
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn rational_field(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(rat(), rat(), rat()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Rational::zero(), a.clone());
        prop_assert_eq!(&a * &Rational::one(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        } else {
            prop_assert!(a.recip().is_err());
        }
        prop_assert_eq!(a.normalized().normalized(), a.normalized());
        prop_assert_eq!(a.normalized(), a.clone());
        Ok(())
    }))
}

fn gauss_field(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(gauss(), gauss(), gauss()), |(a, b, c)| {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(&a * &a.conj(), GaussRational::real(a.norm()));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
            prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b.clone());
        } else {
            prop_assert!(a.recip().is_err());
        }
        Ok(())
    }))
}

fn int_binomial_pascal(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(-40i64..40, -2i64..30), |(n, k)| {
        let lhs = int_binomial(n, k);
        if k >= 1 {
            prop_assert_eq!(&lhs, &(int_binomial(n - 1, k) + int_binomial(n - 1, k - 1)));
        }
        // falling factorial over k!
        let direct: Rational =
            if k < 0 { Rational::zero() } else { (0..k).map(|j| Rational::new(n - j, j + 1).unwrap()).product() };
        prop_assert_eq!(Rational::from_int(lhs), direct);
        Ok(())
    }))
}

fn binom_poly_pascal(cases: u32) -> Result<(), String> {
    let alpha = prop::collection::vec(((0u32..2, 0u32..2), -3i64..4), 1..4).prop_map(|terms| {
        MultiPoly::from_terms(
            terms.into_iter().map(|((x, r), c)| (Monomial::new([x, 0, r, 0]), GaussRational::from_int(c))),
        )
    });
    finish(runner(cases).run(&(alpha, 1u32..6), |(a, k)| {
        let a1 = a.sub(&MultiPoly::one());
        prop_assert_eq!(binom_poly(&a, k), binom_poly(&a1, k).add(&binom_poly(&a1, k - 1)));
        // k! C(a, k) is the falling factorial a(a-1)...(a-k+1)
        let falling = rising(&a.sub(&MultiPoly::int(k as i64 - 1)), k);
        let k_fact: i64 = (1..=k as i64).product();
        prop_assert_eq!(binom_poly(&a, k).scale_int(k_fact), falling);
        Ok(())
    }))
}

fn ring_axioms(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(poly(true), poly(true), poly(true)), |(p, q, s)| {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).add(&s), p.add(&q.add(&s)));
        prop_assert_eq!(p.mul(&q).mul(&s), p.mul(&q.mul(&s)));
        prop_assert_eq!(p.mul(&q.add(&s)), p.mul(&q).add(&p.mul(&s)));
        prop_assert_eq!(p.mul(&MultiPoly::one()), p.clone());
        prop_assert!(p.sub(&p).is_zero());
        prop_assert!(p.mul(&MultiPoly::zero()).is_zero());
        prop_assert_eq!(p.pow(3), p.mul(&p).mul(&p));
        Ok(())
    }))
}

fn product_rule(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(poly(true), poly(true), var()), |(p, q, v)| {
        let lhs = p.mul(&q).diff(v);
        let rhs = p.diff(v).mul(&q).add(&p.mul(&q.diff(v)));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

fn difference_quotient(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&poly(false), |p| {
        // p(x+t) = p(x) + p'(x) t + O(t^2)
        let shifted = p.substitute(Var::X, &MultiPoly::x().add(&MultiPoly::t()));
        prop_assert_eq!(shifted.coeff_of(Var::T, 0), p.clone());
        prop_assert_eq!(shifted.coeff_of(Var::T, 1), p.diff_x());
        Ok(())
    }))
}

fn substitution_composition(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(poly(false), poly(false), poly(false)), |(p, q, s)| {
        let left = p.substitute(Var::X, &q).substitute(Var::X, &s);
        let right = p.substitute(Var::X, &q.substitute(Var::X, &s));
        prop_assert_eq!(left, right);
        prop_assert_eq!(p.substitute(Var::X, &MultiPoly::x()), p.clone());
        Ok(())
    }))
}

fn binpow_additivity(cases: u32) -> Result<(), String> {
    let alpha = || (rat(), -2i64..3).prop_map(|(c, k)| MultiPoly::rational(c).add(&MultiPoly::r().scale_int(k)));
    let series = prop::collection::vec(-3i64..4, 1..6).prop_map(|cs| {
        let mut coeffs = vec![MultiPoly::zero()];
        coeffs.extend(cs.into_iter().map(MultiPoly::int));
        TruncSeries::new(coeffs).unwrap()
    });
    finish(runner(cases).run(&(alpha(), alpha(), series), |(a, b, u)| {
        let lhs = series_binpow(&a, &u).unwrap().mul(&series_binpow(&b, &u).unwrap()).unwrap();
        let rhs = series_binpow(&a.add(&b), &u).unwrap();
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
        Ok(())
    }))
}

/// `D_0..=D_{n+1}` at a point, straight from the three-term recurrence.
fn big_d_values(n: usize, r: &Rational, x: &Rational) -> Vec<Rational> {
    let mut v = vec![Rational::one(), x.clone()];
    for k in 1..=n {
        let k_r = Rational::from(k as i64);
        let c = &k_r * &(&k_r + &(r * &Rational::from(2)));
        let next = x * &v[k] - &c * &v[k - 1];
        v.push(next);
    }
    v
}

fn delta_recurrence(cases: u32) -> Result<(), String> {
    let cache = FamilyCache::new();
    finish(runner(cases).run(&(rat(), rat(), 1usize..12), |(r, x, n)| {
        let d = big_d_values(n + 1, &r, &x);
        let delta = |k: usize| &d[k] * &d[k] - &d[k + 1] * &d[k - 1];
        let n_r = Rational::from(n as i64);
        let two_r = &r * &Rational::from(2);
        let lhs = delta(n + 1) - &(&n_r * &(&n_r + &two_r)) * &delta(n);
        let rhs = &(&(&n_r * &Rational::from(2)) + &two_r + Rational::one()) * &(&d[n] * &d[n]);
        prop_assert_eq!(lhs, rhs);
        // the symbolic D_n evaluates to the same value
        let sym = cache.big_d(n as i64).eval_rational(&[(Var::R, r.clone()), (Var::X, x.clone())]);
        prop_assert_eq!(sym.constant_value().unwrap(), GaussRational::real(d[n].clone()));
        Ok(())
    }))
}

/// `d_n^(r)(x)` at integers by the defining double binomial sum.
fn d_direct(n: i64, r: i64, x: i64) -> Rational {
    (0..=n).map(|k| Rational::from_int(int_binomial(x + r + k, k) * int_binomial(x - r, n - k))).sum()
}

fn weighted_square_sum(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(0i64..5, -12i64..13, 1i64..16), |(r, x, n)| {
        let sum: Rational =
            (0..n).map(|k| Rational::from(2 * k + 2 * r + 1) * d_direct(k, r, x) * d_direct(k, r, x)).sum();
        let lhs = Rational::from(2 * r + 1) * sum;
        let d_n = d_direct(n, r, x);
        let d_up = d_direct(n - 1, r + 1, x);
        let rhs = Rational::from(n * n) * &d_n * &d_n - Rational::from(4 * (x - r) * (x + 1 + r)) * &d_up * &d_up;
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}
