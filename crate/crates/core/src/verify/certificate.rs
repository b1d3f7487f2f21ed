//! The telescoping certificate behind the `d_m d_n` linearization.
//!
//! With `A_l = C(x+r+l, l)`, `B_j = C(x-r, j)` and `B'_j = C(x+1-r, j)`:
//!
//! ```text
//! G(m,n,k,l)  = (-1)^k C(m+n-2k, m-k) C(2r+m+n-k, k) A_l B_{m+n-2k-l}
//! F1(m,n,k,l) = (-1)^k (2m+n+2r+4-2k) C(m+n+2-2k, m+2-k) C(2r+m+1+n-k, k-1) A_l B_{m+2+n-2k-l}
//! F2(m,n,k,l) = (-1)^k l C(m+1+n-2k, m+1-k) C(2r+m+n+1-k, k) A_l B'_{m+2+n-2k-l}
//! ```
//!
//! and the claim is, for every `k, l`,
//!
//! ```text
//! (m+1+2r) G(m) + (2x+1) G(m+1) - (m+2) G(m+2)
//!     = F1(k+1) - F1(k) + F2(l+1) - F2(l).
//! ```
//!
//! Integer binomials follow the falling-factorial extension and vanish for
//! a negative lower index.

use crate::exact::int_binomial;
use crate::poly::{binom_poly, MultiPoly};
use crate::verify::{big, expect_eq, expect_zero, int, lin_r, sign, Ctx, Verdict, Witness};

fn pbinom(top: &MultiPoly, k: i64) -> MultiPoly {
    if k < 0 {
        MultiPoly::zero()
    } else {
        binom_poly(top, k as u32)
    }
}

/// `C(x-r, j)`, zero for `j < 0`.
fn b(j: i64) -> MultiPoly {
    pbinom(&MultiPoly::x().sub(&MultiPoly::r()), j)
}

/// `C(x+1-r, j)`.
fn b_prime(j: i64) -> MultiPoly {
    pbinom(&MultiPoly::x().sub(&MultiPoly::r()).add(&MultiPoly::one()), j)
}

/// `C(x+r+l, l)`.
fn a(l: i64) -> MultiPoly {
    pbinom(&MultiPoly::x().add(&MultiPoly::r()).add(&int(l)), l)
}

/// The `r`-polynomial in front of `A_l B_j` in `G(mm, n, k, l)`.
pub fn g_coeff(mm: i64, n: i64, k: i64) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    let integer = int_binomial(mm + n - 2 * k, mm - k);
    big(integer).scale_int(sign(k)).mul(&pbinom(&lin_r(2, mm + n - k), k))
}

pub fn f1_coeff(m: i64, n: i64, k: i64) -> MultiPoly {
    let integer = int_binomial(m + n + 2 - 2 * k, m + 2 - k);
    let linear = lin_r(2, 2 * m + n + 4 - 2 * k);
    big(integer).scale_int(sign(k)).mul(&linear).mul(&pbinom(&lin_r(2, m + 1 + n - k), k - 1))
}

/// `F2` without its factor `l`.
pub fn f2_coeff(m: i64, n: i64, k: i64) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    let integer = int_binomial(m + 1 + n - 2 * k, m + 1 - k);
    big(integer).scale_int(sign(k)).mul(&pbinom(&lin_r(2, m + n + 1 - k), k))
}

/// `c A_l B`, skipping the expansion when `c` or `B` vanishes.
fn term(c: MultiPoly, l: i64, bj: impl FnOnce() -> MultiPoly) -> MultiPoly {
    if c.is_zero() {
        return c;
    }
    let bj = bj();
    if bj.is_zero() {
        return bj;
    }
    c.mul(&a(l)).mul(&bj)
}

pub fn g(mm: i64, n: i64, k: i64, l: i64) -> MultiPoly {
    term(g_coeff(mm, n, k), l, || b(mm + n - 2 * k - l))
}

pub fn f1(m: i64, n: i64, k: i64, l: i64) -> MultiPoly {
    term(f1_coeff(m, n, k), l, || b(m + 2 + n - 2 * k - l))
}

pub fn f2(m: i64, n: i64, k: i64, l: i64) -> MultiPoly {
    term(f2_coeff(m, n, k).scale_int(l), l, || b_prime(m + 2 + n - 2 * k - l))
}

/// Both sides at one grid point, fully expanded.
pub fn point_sides(m: i64, n: i64, k: i64, l: i64) -> (MultiPoly, MultiPoly) {
    let lhs = lin_r(2, m + 1)
        .mul(&g(m, n, k, l))
        .add(&MultiPoly::x().scale_int(2).add(&int(1)).mul(&g(m + 1, n, k, l)))
        .sub(&g(m + 2, n, k, l).scale_int(m + 2));
    let rhs = f1(m, n, k + 1, l).sub(&f1(m, n, k, l)).add(&f2(m, n, k, l + 1)).sub(&f2(m, n, k, l));
    (lhs, rhs)
}

/// `B_b / B_a` for `0 <= a <= b`: `prod_{i=a}^{b-1} (x-r-i)/(i+1)`.
fn b_ratio(from: i64, to: i64) -> MultiPoly {
    let x_minus_r = MultiPoly::x().sub(&MultiPoly::r());
    (from..to).fold(MultiPoly::one(), |acc, i| {
        acc.mul(&x_minus_r.sub(&int(i))).scale_rational(&crate::exact::Rational::new(1, i + 1).expect("i >= 0"))
    })
}

/// Coefficients per `k`, shared by every `l`.
struct Row {
    g0: MultiPoly,
    g1: MultiPoly,
    g2: MultiPoly,
    f1_next: MultiPoly,
    f1_here: MultiPoly,
    f2: MultiPoly,
}

/// `lhs - rhs` at one grid point, divided by the nonzero polynomial
/// `A_l B_{max(j,0)}` with `j = m+n-2k-l`.
///
/// Every term carries `A_l` (using `A_{l+1} = A_l (x+r+l+1)/(l+1)`) and one
/// of `B_j, B_{j+1}, B_{j+2}` (using `B'_j = B_j + B_{j-1}`), so the point
/// identity holds exactly when this quotient vanishes.
fn reduced_point(m: i64, n: i64, row: &Row, l: i64, k: i64) -> MultiPoly {
    let j = m + n - 2 * k - l;
    let x_r_l = MultiPoly::x().add(&MultiPoly::r()).add(&int(l + 1));
    let f2_shift = row.f2.mul(&x_r_l);
    let f2_l = row.f2.scale_int(l);
    let alpha = lin_r(2, m + 1).mul(&row.g0).sub(&row.f1_next).sub(&f2_shift);
    let beta = MultiPoly::x().scale_int(2).add(&int(1)).mul(&row.g1).sub(&f2_shift).add(&f2_l);
    let gamma = row.f1_here.add(&f2_l).sub(&row.g2.scale_int(m + 2));
    let base = j.max(0);
    [(0, alpha), (1, beta), (2, gamma)]
        .into_iter()
        .filter(|(s, _)| j + s >= 0)
        .map(|(s, c)| c.mul(&b_ratio(base, j + s)))
        .sum()
}

/// All grid points `0 <= k <= m+2`, `0 <= l <= m+n+2` for one `(m, n)`,
/// the boundary terms left after telescoping, and the recurrence for the
/// double sum `R`.
pub fn certificate_verdict(ctx: &Ctx, m: i64, n: i64) -> Verdict {
    let l_max = m + n + 2;
    for k in 0..=m + 2 {
        let row = Row {
            g0: g_coeff(m, n, k),
            g1: g_coeff(m + 1, n, k),
            g2: g_coeff(m + 2, n, k),
            f1_next: f1_coeff(m, n, k + 1),
            f1_here: f1_coeff(m, n, k),
            f2: f2_coeff(m, n, k),
        };
        for l in 0..=l_max {
            let q = reduced_point(m, n, &row, l, k);
            if !q.is_zero() {
                return Err(Witness::Difference { label: format!("certificate at k={k}, l={l}"), difference: q });
            }
        }
    }
    for l in 0..=l_max {
        expect_zero("F1 boundary k=m+3", f1(m, n, m + 3, l))?;
        expect_zero("F1 boundary k=0", f1(m, n, 0, l))?;
    }
    for k in 0..=m + 2 {
        expect_zero("F2 boundary l=m+n+3", f2(m, n, k, l_max + 1))?;
        expect_zero("F2 boundary l=0", f2(m, n, k, 0))?;
    }
    // Summing G over l gives the defining sum of d.
    let grid_sum =
        |mm: i64| -> MultiPoly { (0..=m + 2).map(|k| g_coeff(mm, n, k).mul(&ctx.d_def(mm + n - 2 * k))).sum() };
    let (r0, r1, r2) = (grid_sum(m), grid_sum(m + 1), grid_sum(m + 2));
    let telescoped =
        lin_r(2, m + 1).mul(&r0).add(&MultiPoly::x().scale_int(2).add(&int(1)).mul(&r1)).sub(&r2.scale_int(m + 2));
    expect_zero("summed certificate", telescoped)?;
    expect_eq("R(m,n) vs d_m d_n", &r0, &ctx.cache.d(m).mul(&ctx.cache.d(n)))
}
