//! Exact-arithmetic kernel and desk-scale verifiers for a family of
//! integrable-combinatorics identities:
//!
//! - commuting transfer matrices of 1+1D Lorentzian triangulations ([`lorentzian`]),
//! - the geodesic two-point function of tetravalent planar maps and its
//!   discrete soliton solution ([`geodesic`]),
//! - alternating sign matrices, their six-vertex and osculating-path avatars,
//!   and the lambda-determinant expansion ([`asm`]),
//! - path-model Whittaker vectors in Verma modules ([`whittaker`]),
//! - classical and quantum Q-systems, generalized Macdonald operators,
//!   DIM current exchange relations and the quantum determinant ([`qsystem`]).
//!
//! Everything is computed over exact scalars: arbitrary-precision rationals,
//! or rational functions in the formal parameters `q` (and `t`). The kernel
//! types ([`series::TruncatedSeries`], [`mpoly::LaurentMPoly`]) are generic
//! over the scalar via the [`scalar::Scalar`] trait; the concrete towers used
//! throughout are the aliases [`Rat`], [`QRat`] and [`QtRat`] below.

pub mod asm;
pub mod geodesic;
pub mod lorentzian;
pub mod mpoly;
pub mod qsystem;
pub mod report;
pub mod scalar;
pub mod schur;
pub mod series;
pub mod whittaker;

/// Arbitrary-precision rational number.
pub type Rat = num_rational::BigRational;

/// Rational function in the formal parameter `q`, over the integers.
pub type QRat = scalar::ratfn::RatFn<1>;

/// Rational function in the formal parameters `q` and `t`, over the integers.
pub type QtRat = scalar::ratfn::RatFn<2>;

/// Truncated formal power/Laurent series over exact rationals.
pub type RatSeries = series::TruncatedSeries<Rat>;

/// Multivariate Laurent polynomial over exact rationals.
pub type RatMPoly = mpoly::LaurentMPoly<Rat>;

/// Multivariate Laurent polynomial with rational-function-in-`q` coefficients.
pub type QMPoly = mpoly::LaurentMPoly<QRat>;

/// Multivariate Laurent polynomial with rational-function-in-`(q,t)` coefficients.
pub type QtMPoly = mpoly::LaurentMPoly<QtRat>;

pub use scalar::Scalar;
