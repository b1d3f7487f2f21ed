//! Exact symbolic toolkit for the generalized Delannoy polynomials
//! `d_n(x)` (with a symbolic parameter `r`) and the orthogonal family
//! `D_n(x)` tied to them by the substitution `x -> (ix-1)/2`.
//!
//! Layers, bottom up:
//! - [`exact`]: big rationals, Gaussian rationals, integer binomials
//! - [`poly`]: sparse polynomials over `Q(i)` in `x, y, r, t`
//! - [`series`]: truncated power series in `t`
//! - [`families`]: `d_n` and `D_n` by several independent routes
//! - [`verify`]: the registry of symbolic identity checks and the moment functional
//! - [`congruence`]: big-integer divisibility scans

pub mod congruence;
pub mod error;
pub mod exact;
pub mod families;
pub mod poly;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{int_binomial, GaussRational, Rational};
pub use families::{Family, FamilyCache, Route};
pub use poly::{binom_poly, Monomial, MultiPoly, Var};
pub use series::TruncSeries;
