use std::sync::OnceLock;

use crate::exact::{factorial, int_binomial, GaussRational, Rational};
use crate::families::big_d_from_d;
use crate::poly::{binom_poly, rising, MultiPoly, Var};
use crate::verify::certificate::certificate_verdict;
use crate::verify::moments::{default_r_samples, default_x_samples, orthogonality_verdict, positivity_verdict};
use crate::verify::{big, expect_eq, expect_zero, int, lin_r, rat, sign, Ctx, IdentityCheck, Params, Verdict, Witness};

/// Integer `r` values used where an identity needs `r` in `N_0`.
pub const EQ28_R_MAX: i64 = 4;

fn from_zero(max: usize) -> Vec<Params> {
    (0..=max as i64).map(|n| Params::new().int("n", n)).collect()
}

fn from_one(max: usize) -> Vec<Params> {
    (1..=max as i64).map(|n| Params::new().int("n", n)).collect()
}

fn pairs(max: usize) -> Vec<Params> {
    let max = max as i64;
    (0..=max).flat_map(|m| (0..=max).map(move |n| Params::new().int("m", m).int("n", n))).collect()
}

fn integer_r(max: usize) -> Vec<Params> {
    (0..=EQ28_R_MAX).flat_map(|r| (0..=max as i64).map(move |n| Params::new().int("r", r).int("n", n))).collect()
}

fn samples(max: usize) -> Vec<Params> {
    let mut out = Vec::new();
    for n in 1..=max as i64 {
        for r in default_r_samples() {
            for x in default_x_samples() {
                out.push(Params::new().int("n", n).rat("r", r.clone()).rat("x", x));
            }
        }
    }
    out
}

fn x() -> MultiPoly {
    MultiPoly::x()
}

fn r() -> MultiPoly {
    MultiPoly::r()
}

fn fact(n: i64) -> MultiPoly {
    big(factorial(n as u64))
}

fn ibinom(n: i64, k: i64) -> MultiPoly {
    big(int_binomial(n, k))
}

/// `1 + 2x`.
fn one_2x() -> MultiPoly {
    x().scale_int(2).add(&int(1))
}

/// `4(x-r)(x+1+r)`.
fn four_xr() -> MultiPoly {
    x().sub(&r()).mul(&x().add(&r()).add(&int(1))).scale_int(4)
}

fn sq(p: &MultiPoly) -> MultiPoly {
    p.mul(p)
}

fn floor_half(n: i64) -> i64 {
    n.div_euclid(2)
}

fn eq1_1(_: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let t = MultiPoly::t();
    let t_minus_1 = t.sub(&int(1));
    let lhs: MultiPoly = (0..=n).map(|k| ibinom(n, k).mul(&binom_poly(&x(), k as u32)).mul(&t.pow(k as u32))).sum();
    let rhs: MultiPoly = (0..=n)
        .map(|k| ibinom(n, k).mul(&binom_poly(&x().add(&int(k)), n as u32)).mul(&t_minus_1.pow((n - k) as u32)))
        .sum();
    expect_eq("binomial transform in x, t", &lhs, &rhs)
}

/// `d_n^2` against the squaring sum, both multiplied by
/// `P = prod_{m=1}^{n} C(m+2r, m)`.
fn cleared_square(ctx: &Ctx, n: i64) -> (MultiPoly, MultiPoly) {
    let cof = cofactors(n);
    let lhs = sq(&ctx.cache.d(n)).mul(&cof[0]);
    let rhs = binom_poly(&lin_r(2, n), n as u32).mul(&cleared_s(n, &cof));
    (lhs, rhs)
}

/// `cof[0] = P_M` and `cof[m] = P_M / C(m+2r, m)` for `1 <= m <= M`.
fn cofactors(big_m: i64) -> Vec<MultiPoly> {
    let big_m = big_m.max(0) as usize;
    let factors: Vec<MultiPoly> = (1..=big_m).map(|m| binom_poly(&lin_r(2, m as i64), m as u32)).collect();
    let mut prefix = vec![MultiPoly::one()];
    for f in &factors {
        let next = prefix.last().expect("nonempty").mul(f);
        prefix.push(next);
    }
    let mut suffix = vec![MultiPoly::one(); big_m + 2];
    for m in (1..=big_m).rev() {
        suffix[m] = factors[m - 1].mul(&suffix[m + 1]);
    }
    let mut out = vec![prefix[big_m].clone()];
    out.extend((1..=big_m).map(|m| prefix[m - 1].mul(&suffix[m + 1])));
    out
}

/// `C(x-r, m) C(x+r+m, m) 4^m`, independent of `n`.
fn s_kernel(m: i64) -> MultiPoly {
    static CACHE: OnceLock<std::sync::Mutex<Vec<MultiPoly>>> = OnceLock::new();
    let lock = CACHE.get_or_init(Default::default);
    let mut memo = lock.lock().expect("kernel memo poisoned");
    while memo.len() as i64 <= m {
        let j = memo.len() as i64;
        let k = binom_poly(&x().sub(&r()), j as u32)
            .mul(&binom_poly(&x().add(&r()).add(&int(j)), j as u32))
            .scale_int(1 << (2 * j));
        memo.push(k);
    }
    memo[m as usize].clone()
}

/// `S(n) * P_M` for the cofactors of some `M >= n`.
fn cleared_s(n: i64, cof: &[MultiPoly]) -> MultiPoly {
    if n < 0 {
        return MultiPoly::zero();
    }
    (0..=n)
        .map(|m| {
            let tail = binom_poly(&lin_r(2, n + m), (n - m) as u32);
            s_kernel(m).mul(&tail.mul(&cof[m as usize]))
        })
        .sum()
}

fn eq1_6(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let lhs = sq(&ctx.cache.d_zero(n));
    let rhs: MultiPoly = (0..=n)
        .map(|k| {
            ibinom(n + k, 2 * k)
                .mul(&binom_poly(&x(), k as u32))
                .mul(&binom_poly(&x().add(&int(k)), k as u32))
                .scale_int(1 << (2 * k))
        })
        .sum();
    expect_eq("d_n(x)^2 vs the 4^k sum", &lhs, &rhs)?;
    let (cl, cr) = cleared_square(ctx, n);
    let at_zero = |q: &MultiPoly| q.eval(&[(Var::R, GaussRational::zero())]);
    expect_eq("cleared squaring formula at r=0", &at_zero(&cl), &at_zero(&cr))?;
    expect_eq("r=0 slice vs the 4^k sum", &at_zero(&cl), &rhs)
}

fn eq2_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let d0 = ctx.cache.d_zero(n);
    let first: MultiPoly = (0..=n).map(|k| ibinom(n, k).mul(&binom_poly(&x(), k as u32)).scale_int(1 << k)).sum();
    let second: MultiPoly = (0..=n).map(|k| ibinom(n, k).mul(&binom_poly(&x().add(&int(k)), n as u32))).sum();
    let third: MultiPoly =
        (0..=n).map(|k| binom_poly(&x().add(&int(k)), k as u32).mul(&binom_poly(&x(), (n - k) as u32))).sum();
    expect_eq("d_n vs sum C(n,k)C(x,k)2^k", &d0, &first)?;
    expect_eq("d_n vs sum C(n,k)C(x+k,n)", &d0, &second)?;
    expect_eq("d_n vs sum C(x+k,k)C(x,n-k)", &d0, &third)
}

fn eq2_2(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let d = ctx.cache.d(n);
    let neg = int(-1).sub(&x()).sub(&r());
    let x_minus_r = x().sub(&r());
    let first: MultiPoly = (0..=n)
        .map(|k| binom_poly(&neg, k as u32).scale_int(sign(k)).mul(&binom_poly(&x_minus_r, (n - k) as u32)))
        .sum();
    let second: MultiPoly = (0..=n)
        .map(|k| binom_poly(&neg, (n - k) as u32).scale_int(sign(n - k)).mul(&binom_poly(&x_minus_r, k as u32)))
        .sum();
    expect_eq("d_n vs negated upper argument, first form", &d, &first)?;
    expect_eq("d_n vs negated upper argument, second form", &d, &second)
}

fn eq2_3(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let d = ctx.cache.d(n);
    let reflected = d.substitute(Var::X, &int(-1).sub(&x()));
    expect_eq("d_n(-1-x) vs (-1)^n d_n(x)", &reflected, &d.scale_int(sign(n)))
}

fn thm2_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    expect_eq("[t^n] generating function vs defining sum", &ctx.d_gf(n as usize), &ctx.d_def(n))
}

fn cor2_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let value = ctx.cache.d(n).eval_rational(&[(Var::X, Rational::new(-1, 2).expect("nonzero"))]);
    let expected = if n % 2 == 1 {
        MultiPoly::zero()
    } else {
        binom_poly(&rat(-1, 2).sub(&r()), (n / 2) as u32).scale_int(sign(n / 2))
    };
    expect_eq("d_n(-1/2)", &value, &expected)
}

fn thm2_2(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let lhs = ctx.d_def(n + 1).scale_int(n + 1);
    let rhs = one_2x().mul(&ctx.d_def(n)).add(&lin_r(2, n).mul(&ctx.d_def(n - 1)));
    expect_eq("(n+1)d_{n+1} vs (1+2x)d_n + (n+2r)d_{n-1}", &lhs, &rhs)
}

fn thm2_3(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let d = c.d(n);
    let d0 = c.d_zero(n);
    let x_minus_r = x().sub(&r());
    let x_plus_r = x().add(&r());
    let a: MultiPoly =
        (0..=floor_half(n)).map(|k| binom_poly(&lin_r(1, k - 1), k as u32).mul(&c.d_zero(n - 2 * k))).sum();
    expect_eq("d_n^(r) vs sum C(r-1+k,k) d_{n-2k}", &d, &a)?;
    let b: MultiPoly = (0..=n)
        .map(|k| binom_poly(&lin_r(2, k - 1), k as u32).mul(&c.d_zero(n - k).substitute(Var::X, &x_minus_r)))
        .sum();
    expect_eq("d_n^(r) vs sum C(2r-1+k,k) d_{n-k}(x-r)", &d, &b)?;
    let cc: MultiPoly =
        (0..=floor_half(n)).map(|k| binom_poly(&r(), k as u32).scale_int(sign(k)).mul(&c.d(n - 2 * k))).sum();
    expect_eq("d_n vs sum C(r,k)(-1)^k d_{n-2k}^(r)", &d0, &cc)?;
    let dd: MultiPoly = (0..=n)
        .map(|k| {
            binom_poly(&r().scale_int(2), k as u32).scale_int(sign(k)).mul(&c.d(n - k).substitute(Var::X, &x_plus_r))
        })
        .sum();
    expect_eq("d_n vs sum C(2r,k)(-1)^k d_{n-k}^(r)(x+r)", &d0, &dd)
}

fn cor2_2(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let value = ctx.cache.d(n).eval_rational(&[(Var::X, Rational::zero())]);
    let h = floor_half(n);
    expect_eq("d_n(0) vs C(r+[n/2],[n/2])", &value, &binom_poly(&lin_r(1, h), h as u32))
}

fn thm2_4_i(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    expect_eq("d_n^(r) vs d_n^(r+1) - d_{n-2}^(r+1)", &c.d(n), &c.d_shifted(n).sub(&c.d_shifted(n - 2)))
}

fn thm2_4_ii(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let sum: MultiPoly = (0..=floor_half(n)).map(|k| (*c.d(n - 2 * k)).clone()).sum();
    expect_eq("d_n^(r+1) vs sum d_{n-2k}^(r)", &c.d_shifted(n), &sum)
}

fn thm2_4_iii(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let lhs = sq(&c.d(n + 1)).scale_int((n + 1) * (n + 1)).sub(&sq(&lin_r(2, n + 1)).mul(&sq(&c.d(n))));
    let rhs = four_xr().mul(&sq(&c.d_shifted(n)).sub(&sq(&c.d_shifted(n - 1))));
    expect_eq("squared recurrence", &lhs, &rhs)
}

fn thm2_4_iv(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let sum: MultiPoly = (0..n).map(|k| lin_r(2, 2 * k + 1).mul(&sq(&c.d(k)))).sum();
    let lhs = lin_r(2, 1).mul(&sum);
    let rhs = sq(&c.d(n)).scale_int(n * n).sub(&four_xr().mul(&sq(&c.d_shifted(n - 1))));
    expect_eq("weighted sum of squares", &lhs, &rhs)
}

fn eq2_8(ctx: &Ctx, p: &Params) -> Verdict {
    let (rv, n) = (p.get_int("r"), p.get_int("n"));
    let d = ctx.cache.d(n).eval_rational(&[(Var::R, Rational::from(rv))]);
    let lhs = binom_poly(&x().add(&int(rv)), (2 * rv) as u32).mul(&d);
    let sum: MultiPoly =
        (0..=n).map(|k| ibinom(n, k).mul(&binom_poly(&x().add(&int(rv + k)), (n + 2 * rv) as u32))).sum();
    let rhs = ibinom(n + 2 * rv, 2 * rv).mul(&sum);
    expect_eq("C(x+r,2r) d_n vs C(n+2r,2r) sum C(n,k)C(x+r+k,n+2r)", &lhs, &rhs)
}

fn thm2_6(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let (lhs, rhs) = cleared_square(ctx, n);
    expect_eq("P * d_n^2 vs P * C(n+2r,n) S(n)", &lhs, &rhs)?;
    if n == 0 {
        return Ok(());
    }
    // (n+2)(n+2+2r)S(n+2) - ((2x+1)^2 + (n+1)(n+1+2r))(S(n+1)+S(n)) + n(n+2r)S(n-1) = 0
    let cof = cofactors(n + 2);
    let s = |j: i64| cleared_s(j, &cof);
    let middle = sq(&one_2x()).add(&lin_r(2, n + 1).scale_int(n + 1));
    let total = lin_r(2, n + 2)
        .scale_int(n + 2)
        .mul(&s(n + 2))
        .sub(&middle.mul(&s(n + 1).add(&s(n))))
        .add(&lin_r(2, n).scale_int(n).mul(&s(n - 1)));
    expect_zero("P * S recurrence", total)
}

fn thm2_7(ctx: &Ctx, p: &Params) -> Verdict {
    let (m, n) = (p.get_int("m"), p.get_int("n"));
    let c = &ctx.cache;
    let lhs = c.d(m).mul(&c.d(n));
    let rhs: MultiPoly = (0..=m.min(n))
        .map(|k| {
            ibinom(m + n - 2 * k, m - k)
                .mul(&binom_poly(&lin_r(2, m + n - k), k as u32))
                .scale_int(sign(k))
                .mul(&c.d(m + n - 2 * k))
        })
        .sum();
    expect_eq("d_m d_n vs linearization", &lhs, &rhs)
}

fn thm2_7_certificate(ctx: &Ctx, p: &Params) -> Verdict {
    certificate_verdict(ctx, p.get_int("m"), p.get_int("n"))
}

fn in_y(p: &MultiPoly) -> MultiPoly {
    p.rename(Var::X, Var::Y).expect("family polynomials are free of y")
}

fn thm2_8(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let one_xy = x().add(&MultiPoly::y()).add(&int(1)).scale_int(2);
    // Both sides times n!.
    let sum: MultiPoly = (0..n)
        .map(|k| {
            let weight = fact(k).mul(&rising(&lin_r(2, k + 1), (n - k) as u32));
            weight.mul(&c.d(k).mul(&in_y(&c.d(k))))
        })
        .sum();
    let lhs = one_xy.mul(&sum);
    let cross = c.d(n).mul(&in_y(&c.d(n - 1))).add(&c.d(n - 1).mul(&in_y(&c.d(n))));
    let rhs = fact(n).mul(&lin_r(2, n)).mul(&cross);
    expect_eq("Christoffel-Darboux type sum in x, y", &lhs, &rhs)
}

fn rem2_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let one_xy = x().add(&MultiPoly::y()).add(&int(1)).scale_int(2);
    let sum: MultiPoly = (0..n).map(|k| c.d_zero(k).mul(&in_y(&c.d_zero(k)))).sum();
    let cross = c.d_zero(n).mul(&in_y(&c.d_zero(n - 1))).add(&c.d_zero(n - 1).mul(&in_y(&c.d_zero(n))));
    expect_eq("r=0 sum in x, y", &one_xy.mul(&sum), &cross.scale_int(n))
}

fn orthogonality(ctx: &Ctx, p: &Params) -> Verdict {
    let (m, n) = (p.get_int("m") as usize, p.get_int("n") as usize);
    orthogonality_verdict(&ctx.cache, ctx.moments(), m, n)
}

fn lemma3_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let from_d = big_d_from_d(n as usize, &c.d(n))
        .map_err(|e| Witness::Message { label: "D_n from d_n".into(), detail: e.to_string() })?;
    expect_eq("D_n vs (-i)^n n! d_n((ix-1)/2)", &from_d, &c.big_d(n))?;
    let minus_i = -GaussRational::i();
    let back = c
        .big_d(n)
        .subst_x_affine(&minus_i.scale(&Rational::from(2)), &minus_i)
        .map_err(|e| Witness::Message { label: "D_n(-i(1+2x))".into(), detail: e.to_string() })?
        .scale(&GaussRational::i_pow(n));
    expect_eq("n! d_n vs i^n D_n(-i(1+2x))", &c.d(n).mul(&fact(n)), &back)
}

/// `prod_{s=k+1}^{n} s(s+2r)`.
fn s_product(k: i64, n: i64) -> MultiPoly {
    (k + 1..=n).fold(MultiPoly::one(), |acc, s| acc.mul(&lin_r(2, s).scale_int(s)))
}

fn delta(ctx: &Ctx, n: i64) -> MultiPoly {
    let c = &ctx.cache;
    sq(&c.big_d(n)).sub(&c.big_d(n - 1).mul(&c.big_d(n + 1)))
}

fn thm3_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let lhs: MultiPoly = (0..n).map(|k| lin_r(2, 2 * k + 1).mul(&s_product(k, n)).mul(&sq(&c.big_d(k)))).sum();
    let rhs = lin_r(2, n).scale_int(n).mul(&delta(ctx, n));
    expect_eq("weighted sum vs n(n+2r) Delta_n", &lhs, &rhs)?;
    let step = delta(ctx, n + 1).sub(&lin_r(2, n).scale_int(n).mul(&delta(ctx, n)));
    expect_eq("Delta_{n+1} - n(n+2r) Delta_n vs (2n+2r+1) D_n^2", &step, &lin_r(2, 2 * n + 1).mul(&sq(&c.big_d(n))))
}

fn thm3_1_positivity(ctx: &Ctx, p: &Params) -> Verdict {
    positivity_verdict(&ctx.cache, p.get_int("n") as usize, &p.get_rat("r"), &p.get_rat("x"))
}

fn cor3_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    // Both sides times n!.
    let lhs: MultiPoly = (0..n)
        .map(|k| {
            lin_r(2, 2 * k + 1)
                .mul(&fact(k))
                .mul(&rising(&lin_r(2, k + 1), (n - k) as u32))
                .mul(&sq(&c.d(k)))
                .scale_int(sign(k))
        })
        .sum();
    let inner = sq(&c.d(n)).scale_int(n).sub(&c.d(n - 1).mul(&c.d(n + 1)).scale_int(n + 1));
    let rhs = fact(n).mul(&lin_r(2, n)).mul(&inner).scale_int(sign(n));
    expect_eq("alternating weighted sum of d_k^2", &lhs, &rhs)
}

fn wronskian(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    // p q' - q p'
    p.mul(&q.diff_x()).sub(&q.mul(&p.diff_x()))
}

fn thm3_2(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let lhs: MultiPoly = (0..n).map(|k| s_product(k, n).mul(&sq(&c.big_d(k)))).sum();
    let rhs = lin_r(2, n).scale_int(n).mul(&wronskian(&c.big_d(n - 1), &c.big_d(n)));
    expect_eq("sum of D_k^2 vs Wronskian", &lhs, &rhs)?;
    // Second identity times 2 n!.
    let lhs: MultiPoly = (0..n)
        .map(|k| fact(k).mul(&rising(&lin_r(2, k + 1), (n - k) as u32)).mul(&sq(&c.d(k))).scale_int(2 * sign(k)))
        .sum();
    let rhs = fact(n).mul(&lin_r(2, n)).mul(&wronskian(&c.d(n - 1), &c.d(n))).scale_int(sign(n - 1));
    expect_eq("alternating sum of d_k^2 vs Wronskian", &lhs, &rhs)
}

fn rem3_1(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let lhs: MultiPoly = (0..n).map(|k| sq(&c.d_zero(k)).scale_int(2 * sign(k))).sum();
    let rhs = wronskian(&c.d_zero(n - 1), &c.d_zero(n)).scale_int(sign(n - 1) * n);
    expect_eq("2 sum (-1)^k d_k^2", &lhs, &rhs)?;
    let lhs: MultiPoly = (0..n).map(|k| sq(&c.d_zero(k)).scale_int(sign(k) * (2 * k + 1))).sum();
    let rhs = sq(&c.d_zero(n))
        .scale_int(n * n)
        .sub(&c.d_zero(n - 1).mul(&c.d_zero(n + 1)).scale_int(n * (n + 1)))
        .scale_int(sign(n));
    expect_eq("sum (-1)^k (2k+1) d_k^2", &lhs, &rhs)
}

fn thm3_3(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let x2 = sq(&x());
    let mut product = MultiPoly::one();
    let mut rhs = MultiPoly::zero();
    for m in 0..=n {
        if m > 0 {
            product = product.mul(&x2.add(&sq(&lin_r(2, 2 * m - 1))));
        }
        let weight = fact(n)
            .scale_rational(&Rational::from_int(factorial(m as u64)).recip().expect("nonzero"))
            .mul(&rising(&lin_r(2, m + 1), (n - m) as u32));
        let term = binom_poly(&lin_r(2, n + m), (n - m) as u32).mul(&weight).mul(&product).scale_int(sign(n - m));
        rhs = rhs.add(&term);
    }
    expect_eq("D_n^2 vs product expansion", &sq(&ctx.cache.big_d(n)), &rhs)
}

fn thm3_4(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    expect_eq("n! [t^n] EGF vs recurrence", &ctx.big_d_egf(n as usize), &ctx.cache.big_d(n))
}

fn cor3_2(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let big_d = ctx.cache.big_d(n);
    expect_eq("D_n(-x) vs (-1)^n D_n(x)", &big_d.substitute(Var::X, &-x()), &big_d.scale_int(sign(n)))?;
    let at_zero = big_d.eval_rational(&[(Var::X, Rational::zero())]);
    let expected =
        if n % 2 == 1 { MultiPoly::zero() } else { fact(n).mul(&binom_poly(&rat(-1, 2).sub(&r()), (n / 2) as u32)) };
    expect_eq("D_n(0)", &at_zero, &expected)
}

fn thm3_5(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let rhs = (1..n).fold(x().pow(n as u32), |acc, k| {
        acc.sub(&lin_r(2, k).scale_int(k).mul(&c.big_d(k - 1)).mul(&x().pow((n - 1 - k) as u32)))
    });
    expect_eq("D_n vs x^n expansion", &c.big_d(n), &rhs)?;
    let u = one_2x();
    let rhs = (1..n).fold(u.pow(n as u32), |acc, k| {
        acc.add(&lin_r(2, k).mul(&fact(k)).mul(&c.d(k - 1)).mul(&u.pow((n - 1 - k) as u32)))
    });
    expect_eq("n! d_n vs (1+2x)^n expansion", &c.d(n).mul(&fact(n)), &rhs)
}

fn cor3_3(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let d = c.d(n);
    let big_d = c.big_d(n);
    let at = |q: &MultiPoly, k: i64| q.coeff_of(Var::X, k as u32);
    let two_pow = |e: i64| big(num_bigint::BigInt::from(1) << e as usize);
    let over_fact = |e: i64| Rational::from_int(factorial(e as u64)).recip().expect("nonzero");
    expect_eq("[x^n] d_n", &at(&d, n), &two_pow(n).scale_rational(&over_fact(n)))?;
    expect_eq("[x^(n-1)] d_n", &at(&d, n - 1), &two_pow(n - 1).scale_rational(&over_fact(n - 1)))?;
    expect_eq("[x^n] D_n", &at(&big_d, n), &MultiPoly::one())?;
    if n >= 2 {
        let third = two_pow(n - 2).scale_rational(&over_fact(n - 2)).mul(&r().add(&rat(n + 1, 3)));
        expect_eq("[x^(n-2)] d_n", &at(&d, n - 2), &third)?;
        let second = lin_r(6, 2 * n - 1).scale_rational(&Rational::new(-(n - 1) * n, 6).expect("nonzero"));
        expect_eq("[x^(n-2)] D_n", &at(&big_d, n - 2), &second)?;
    }
    Ok(())
}

fn thm3_6(ctx: &Ctx, p: &Params) -> Verdict {
    let n = p.get_int("n");
    let c = &ctx.cache;
    let shifted = c.big_d_shifted(n).add(&c.big_d_shifted(n - 2).scale_int(n * (n - 1)));
    expect_eq("D_n^(r) vs D_n^(r+1) + n(n-1) D_{n-2}^(r+1)", &c.big_d(n), &shifted)?;
    let expansion: MultiPoly = (0..=floor_half(n))
        .map(|k| ibinom(n, 2 * k).mul(&binom_poly(&-r(), k as u32)).mul(&fact(2 * k)).mul(&c.big_d_zero(n - 2 * k)))
        .sum();
    expect_eq("D_n^(r) vs expansion in D^(0)", &c.big_d(n), &expansion)
}

fn thm3_7(ctx: &Ctx, p: &Params) -> Verdict {
    let (m, n) = (p.get_int("m"), p.get_int("n"));
    let c = &ctx.cache;
    let lhs = c.big_d(m).mul(&c.big_d(n));
    let rhs: MultiPoly = (0..=m.min(n))
        .map(|k| {
            let kf = fact(k);
            ibinom(m, k)
                .mul(&ibinom(n, k))
                .mul(&kf.mul(&kf))
                .mul(&binom_poly(&lin_r(2, m + n - k), k as u32))
                .mul(&c.big_d(m + n - 2 * k))
        })
        .sum();
    expect_eq("D_m D_n vs linearization", &lhs, &rhs)
}

const CLOSURE: Option<&str> = Some("verified on closure");

macro_rules! check {
    ($name:expr, $statement:expr, $domain:expr, $instances:expr, $eval:expr) => {
        check!($name, $statement, $domain, $instances, $eval, None)
    };
    ($name:expr, $statement:expr, $domain:expr, $instances:expr, $eval:expr, $note:expr) => {
        IdentityCheck {
            name: $name,
            statement: $statement,
            domain: $domain,
            instances: $instances,
            eval: $eval,
            note: $note,
        }
    };
}

static CATALOG: OnceLock<Vec<IdentityCheck>> = OnceLock::new();

/// Every registered check, in a fixed order.
pub fn catalog() -> &'static [IdentityCheck] {
    CATALOG.get_or_init(|| {
        vec![
            check!("eq1.1", "sum C(n,k)C(x,k)t^k = sum C(n,k)C(x+k,n)(t-1)^(n-k)", "0<=n<=N", from_zero, eq1_1),
            check!("eq1.6", "d_n(x)^2 = sum C(n+k,2k)C(x,k)C(x+k,k)4^k", "0<=n<=N", from_zero, eq1_6),
            check!(
                "eq2.1",
                "d_n(x) = sum C(n,k)C(x,k)2^k = sum C(n,k)C(x+k,n) = sum C(x+k,k)C(x,n-k)",
                "0<=n<=N",
                from_zero,
                eq2_1
            ),
            check!("eq2.2", "d_n^(r)(x) = sum C(-1-x-r,k)(-1)^k C(x-r,n-k)", "0<=n<=N", from_zero, eq2_2),
            check!("eq2.3", "d_n^(r)(-1-x) = (-1)^n d_n^(r)(x)", "0<=n<=N", from_zero, eq2_3),
            check!("thm2.1", "sum d_n^(r)(x) t^n = (1+t)^(x-r) (1-t)^(-x-r-1)", "0<=n<=N", from_zero, thm2_1),
            check!("cor2.1", "d_n^(r)(-1/2) = 0 (n odd), C(-1/2-r,n/2)(-1)^(n/2) (n even)", "0<=n<=N", from_zero, cor2_1),
            check!("thm2.2", "(n+1)d_{n+1} = (1+2x)d_n + (n+2r)d_{n-1}", "1<=n<=N", from_one, thm2_2),
            check!(
                "thm2.3",
                "d_n^(r) = sum C(r-1+k,k)d_{n-2k} = sum C(2r-1+k,k)d_{n-k}(x-r); d_n = sum C(r,k)(-1)^k d_{n-2k}^(r) = sum C(2r,k)(-1)^k d_{n-k}^(r)(x+r)",
                "0<=n<=N",
                from_zero,
                thm2_3
            ),
            check!("cor2.2", "d_n^(r)(0) = C(r+[n/2],[n/2])", "0<=n<=N", from_zero, cor2_2),
            check!("thm2.4.i", "d_n^(r) = d_n^(r+1) - d_{n-2}^(r+1)", "1<=n<=N", from_one, thm2_4_i),
            check!("thm2.4.ii", "d_n^(r+1) = sum_{k<=n/2} d_{n-2k}^(r)", "1<=n<=N", from_one, thm2_4_ii),
            check!(
                "thm2.4.iii",
                "(n+1)^2 d_{n+1}^2 - (n+2r+1)^2 d_n^2 = 4(x-r)(x+1+r)(d_n^(r+1)^2 - d_{n-1}^(r+1)^2)",
                "1<=n<=N",
                from_one,
                thm2_4_iii
            ),
            check!(
                "thm2.4.iv",
                "(2r+1) sum_{k<n} (2k+2r+1) d_k^2 = n^2 d_n^2 - 4(x-r)(x+1+r) d_{n-1}^(r+1)^2",
                "1<=n<=N",
                from_one,
                thm2_4_iv
            ),
            check!(
                "eq2.8",
                "C(x+r,2r) d_n^(r) = C(n+2r,2r) sum C(n,k)C(x+r+k,n+2r), integer r",
                "0<=r<=4, 0<=n<=N",
                integer_r,
                eq2_8
            ),
            check!(
                "thm2.6",
                "d_n^2 = C(n+2r,n) sum_m C(x-r,m)C(x+r+m,m)C(n+2r+m,n-m) 4^m / C(m+2r,m), and the S(n) recurrence",
                "0<=n<=N",
                from_zero,
                thm2_6,
                CLOSURE
            ),
            check!(
                "thm2.7",
                "d_m d_n = sum_k C(m+n-2k,m-k) C(2r+m+n-k,k) (-1)^k d_{m+n-2k}",
                "0<=m,n<=N",
                pairs,
                thm2_7
            ),
            check!(
                "thm2.7.certificate",
                "(m+1+2r)G(m) + (2x+1)G(m+1) - (m+2)G(m+2) = F1(k+1)-F1(k) + F2(l+1)-F2(l) on the full (k,l) grid, with telescoped sum",
                "0<=m,n<=N",
                pairs,
                thm2_7_certificate
            ),
            check!(
                "thm2.8",
                "2(1+x+y) sum_{k<n} ((2r+k+1)...(2r+n))/((k+1)...n) d_k(x)d_k(y) = (n+2r)(d_n(x)d_{n-1}(y) + d_{n-1}(x)d_n(y))",
                "1<=n<=N",
                from_one,
                thm2_8
            ),
            check!(
                "rem2.1",
                "2(1+x+y) sum_{k<n} d_k(x)d_k(y) = n(d_n(x)d_{n-1}(y) + d_{n-1}(x)d_n(y))",
                "1<=n<=N",
                from_one,
                rem2_1
            ),
            check!(
                "eq3.1.orthogonality",
                "L[D_m D_n] = 0 for m != n, L[D_n^2] = n!(2r+1)...(2r+n)",
                "0<=m,n<=N",
                pairs,
                orthogonality
            ),
            check!(
                "lemma3.1",
                "d_n(x) = i^n D_n(-i(1+2x))/n! and D_n(x) = (-i)^n n! d_n((ix-1)/2)",
                "0<=n<=N",
                from_zero,
                lemma3_1
            ),
            check!(
                "thm3.1",
                "sum_{k<n} (2k+2r+1) prod_{s=k+1}^n s(s+2r) D_k^2 = n(n+2r)(D_n^2 - D_{n-1}D_{n+1}), and the Delta recurrence",
                "1<=n<=N",
                from_one,
                thm3_1
            ),
            check!(
                "thm3.1.positivity",
                "D_n^2 - D_{n+1}D_{n-1} >= (2r+1) n!(2r+1)...(2r+n)/(n(n+2r)) > 0 at sample points",
                "1<=n<=N, r in {-1/4,0,1/2,1,3}, x in {-3,-1,-1/2,0,1/2,2}",
                samples,
                thm3_1_positivity
            ),
            check!(
                "cor3.1",
                "sum_{k<n} (-1)^k (2k+2r+1) ((k+1+2r)...(n+2r))/((k+1)...n) d_k^2 = (-1)^n (n+2r)(n d_n^2 - (n+1) d_{n-1}d_{n+1})",
                "1<=n<=N",
                from_one,
                cor3_1
            ),
            check!(
                "thm3.2",
                "sum_{k<n} prod s(s+2r) D_k^2 = n(n+2r)(D_{n-1}D_n' - D_n D_{n-1}'), and the alternating d_k^2 form",
                "1<=n<=N",
                from_one,
                thm3_2
            ),
            check!(
                "rem3.1",
                "r=0: sum (-1)^k d_k^2 and sum (-1)^k (2k+1) d_k^2 in closed form",
                "1<=n<=N",
                from_one,
                rem3_1
            ),
            check!(
                "thm3.3",
                "D_n^2 = sum_m C(n+2r+m,n-m)(-1)^(n-m) prod_{j=m+1}^n j(2r+j) prod_{k=1}^m (x^2+(2r+2k-1)^2)",
                "0<=n<=N",
                from_zero,
                thm3_3
            ),
            check!("thm3.4", "sum D_n t^n/n! = (1+t^2)^(-r-1/2) exp(x arctan t)", "0<=n<=N", from_zero, thm3_4),
            check!(
                "cor3.2",
                "D_n(-x) = (-1)^n D_n(x); D_n(0) = 0 (n odd), n! C(-r-1/2,n/2) (n even)",
                "0<=n<=N",
                from_zero,
                cor3_2
            ),
            check!(
                "thm3.5",
                "D_n = x^n - sum k(k+2r) D_{k-1} x^(n-1-k); n! d_n = (1+2x)^n + sum (k+2r) k! d_{k-1} (1+2x)^(n-1-k)",
                "0<=n<=N",
                from_zero,
                thm3_5
            ),
            check!(
                "cor3.3",
                "leading coefficients of d_n and D_n",
                "1<=n<=N",
                from_one,
                cor3_3
            ),
            check!(
                "thm3.6",
                "D_n^(r) = D_n^(r+1) + n(n-1)D_{n-2}^(r+1) = sum C(n,2k)C(-r,k)(2k)! D_{n-2k}^(0)",
                "0<=n<=N",
                from_zero,
                thm3_6
            ),
            check!(
                "thm3.7",
                "D_m D_n = sum_k C(m,k)C(n,k)k!^2 C(2r+m+n-k,k) D_{m+n-2k}",
                "0<=m,n<=N",
                pairs,
                thm3_7
            ),
        ]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{run_check, run_checks};

    #[test]
    fn cofactors_divide_out() {
        let cof = cofactors(4);
        for m in 1..=4 {
            assert_eq!(cof[m as usize].mul(&binom_poly(&lin_r(2, m), m as u32)), cof[0]);
        }
        assert_eq!(cofactors(0), vec![MultiPoly::one()]);
    }

    #[test]
    fn spec_examples() {
        let reports = run_check("thm2.7", 4).unwrap();
        assert_eq!(reports.len(), 25);
        assert!(reports.iter().all(|r| r.passed()));
        let reports = run_check("thm2.2", 1).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed());
        let reports = run_check("thm3.7", 1).unwrap();
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn unknown_check_lists_catalog() {
        match run_check("nosuch", 2) {
            Err(crate::Error::UnknownCheck { name, valid }) => {
                assert_eq!(name, "nosuch");
                assert!(valid.iter().any(|v| v == "thm2.7.certificate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = catalog().iter().map(|c| c.name).collect();
        let total = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), total);
    }

    #[test]
    fn whole_catalog_small() {
        let names: Vec<&str> = catalog().iter().map(|c| c.name).collect();
        let reports = run_checks(&names, 4, false).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert!(
            failed.is_empty(),
            "{:#?}",
            failed.iter().map(|r| (&r.check, r.params.to_string())).collect::<Vec<_>>()
        );
    }

    #[test]
    fn wrong_identity_is_caught() {
        let ctx = Ctx::new(3);
        let lhs = ctx.cache.d(2).mul(&ctx.cache.d(1));
        let verdict = expect_eq("deliberately wrong", &lhs, &ctx.cache.d(3));
        assert!(matches!(verdict, Err(Witness::Difference { .. })));
    }
}
