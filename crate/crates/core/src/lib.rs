//! Exact arithmetic for simultaneous torsion in the Legendre family
//! `y^2 = x(x - 1)(x - λ)`.
//!
//! The crate is `no_std` and needs only `alloc`. Everything that touches the
//! file system, the environment or a terminal lives in the `legtors` crate.
//!
//! Module map:
//!
//! * [`arith`]: rationals, 2-adic valuation and residue class, Weil heights.
//! * [`poly`]: dense univariate and bivariate polynomials over exact rings.
//! * [`quotring`]: number fields presented as `ℚ[t]/(m)`, numeric embeddings.
//! * [`divpoly`]: division polynomials of the Legendre and short Weierstrass families.
//! * [`torsion`]: orders of points, reduction modulo primes, non-torsion certificates.
//! * [`tset`]: common torsion parameters `T_N(α, β)`.
//! * [`screen`]: 2-adic screening of candidate parameters.
//! * [`census`]: orbit census of components of the simultaneous torsion curve.
//! * [`resultants`]: resultants, squarefreeness and the bundled polynomial corpus.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod divpoly;
pub mod error;
pub mod modp;
pub mod ntt;
pub mod numeric;
pub mod poly;
pub mod quotring;
pub mod resultants;
pub mod ring;
pub mod screen;
pub mod torsion;
pub mod tset;

pub use arith::Rational;
pub use error::{Error, Result};
pub use poly::{BiPoly, UPoly};
pub use quotring::{FieldElem, QuotRing};
pub use ring::{ExactDiv, Field, Ring, RingOps};
