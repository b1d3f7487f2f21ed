//! Named symbolic checks over the two families, evaluated instance by
//! instance at bounded degree.

mod catalog;
pub mod certificate;
pub mod moments;
pub mod report;

use std::sync::{OnceLock, RwLock};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::families::{big_d_egf_list, d_def, d_gf_list, FamilyCache};
use crate::poly::MultiPoly;

pub use catalog::catalog;
pub use report::{CheckReport, Params, Status, SuiteSummary, Verdict, Witness};

/// Default upper index for every check.
pub const DEFAULT_MAX_N: usize = 10;

/// One registered identity.
pub struct IdentityCheck {
    pub name: &'static str,
    /// The identity in words and symbols.
    pub statement: &'static str,
    /// Which instances are enumerated for a given `max_n`.
    pub domain: &'static str,
    pub instances: fn(usize) -> Vec<Params>,
    pub eval: fn(&Ctx, &Params) -> Verdict,
    pub note: Option<&'static str>,
}

/// Shared state for one run: the family cache plus lists built once by
/// the independent routes.
pub struct Ctx {
    pub cache: FamilyCache,
    max_n: usize,
    d_def: RwLock<Vec<MultiPoly>>,
    d_gf: OnceLock<Vec<MultiPoly>>,
    big_d_egf: OnceLock<Vec<MultiPoly>>,
    moments: OnceLock<Vec<MultiPoly>>,
}

impl Ctx {
    pub fn new(max_n: usize) -> Self {
        Ctx {
            cache: FamilyCache::new(),
            max_n,
            d_def: RwLock::new(Vec::new()),
            d_gf: OnceLock::new(),
            big_d_egf: OnceLock::new(),
            moments: OnceLock::new(),
        }
    }

    /// Highest index any check touches.
    pub fn reach(&self) -> usize {
        2 * self.max_n + 4
    }

    pub fn warm(&self) {
        self.cache.warm(self.reach());
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `d_n` from the defining sum; zero for negative `n`.
    pub fn d_def(&self, n: i64) -> MultiPoly {
        if n < 0 {
            return MultiPoly::zero();
        }
        let n = n as usize;
        if let Some(p) = self.d_def.read().expect("memo lock poisoned").get(n) {
            return p.clone();
        }
        let mut list = self.d_def.write().expect("memo lock poisoned");
        while list.len() <= n {
            let next = d_def(list.len());
            list.push(next);
        }
        list[n].clone()
    }

    pub fn d_gf(&self, n: usize) -> MultiPoly {
        let list = self.d_gf.get_or_init(|| d_gf_list(self.max_n + 2));
        list.get(n).cloned().unwrap_or_else(|| d_gf_list(n).swap_remove(n))
    }

    pub fn big_d_egf(&self, n: usize) -> MultiPoly {
        let list = self.big_d_egf.get_or_init(|| big_d_egf_list(self.max_n + 2));
        list.get(n).cloned().unwrap_or_else(|| big_d_egf_list(n).swap_remove(n))
    }

    pub fn moments(&self) -> &[MultiPoly] {
        self.moments.get_or_init(|| moments::moments(2 * self.max_n + 2))
    }
}

/// Passes when `lhs == rhs`; otherwise the witness is `lhs - rhs`.
pub fn expect_eq(label: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Verdict {
    expect_zero(label, lhs.sub(rhs))
}

pub fn expect_zero(label: &str, difference: MultiPoly) -> Verdict {
    if difference.is_zero() {
        Ok(())
    } else {
        Err(Witness::Difference { label: label.to_string(), difference })
    }
}

pub(crate) fn int(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

pub(crate) fn big(n: BigInt) -> MultiPoly {
    MultiPoly::rational(Rational::from_int(n))
}

pub(crate) fn rat(p: i64, q: i64) -> MultiPoly {
    MultiPoly::rational(Rational::new(p, q).expect("nonzero denominator"))
}

/// `a r + b`.
pub(crate) fn lin_r(a: i64, b: i64) -> MultiPoly {
    MultiPoly::r().scale_int(a).add(&MultiPoly::int(b))
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Registered names in catalog order.
pub fn check_names() -> Vec<&'static str> {
    catalog().iter().map(|c| c.name).collect()
}

pub fn find_check(name: &str) -> Result<&'static IdentityCheck> {
    catalog().iter().find(|c| c.name == name).ok_or_else(|| Error::UnknownCheck {
        name: name.to_string(),
        valid: check_names().iter().map(|s| s.to_string()).collect(),
    })
}

pub fn run_check(name: &str, max_n: usize) -> Result<Vec<CheckReport>> {
    run_checks(&[name], max_n, false)
}

/// Runs the named checks for every instance up to `max_n`.
///
/// The cache is warmed before any instance runs. With `parallel` the
/// instances are spread over the current rayon pool; the output order is
/// catalog order, then instance order, either way.
pub fn run_checks(names: &[&str], max_n: usize, parallel: bool) -> Result<Vec<CheckReport>> {
    let checks: Vec<&'static IdentityCheck> = names.iter().map(|n| find_check(n)).collect::<Result<_>>()?;
    let ctx = Ctx::new(max_n);
    ctx.warm();
    let tasks: Vec<(&IdentityCheck, Params)> =
        checks.iter().flat_map(|c| (c.instances)(max_n).into_iter().map(move |p| (*c, p))).collect();
    let run = |(check, params): &(&IdentityCheck, Params)| {
        let start = Instant::now();
        let verdict = (check.eval)(&ctx, params);
        CheckReport::new(check.name, params.clone(), verdict, check.note, start.elapsed())
    };
    Ok(if parallel { tasks.par_iter().map(run).collect() } else { tasks.iter().map(run).collect() })
}

pub fn run_all(max_n: usize, parallel: bool) -> Vec<CheckReport> {
    run_checks(&check_names(), max_n, parallel).expect("catalog names are registered")
}
