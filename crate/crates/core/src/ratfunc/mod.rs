//! Exact arithmetic in `Q(n)`: polynomials, rational functions, Laurent
//! expansions at infinity and the group ring `Q(n)[S_L]`.

mod groupring;
mod laurent;
mod poly;
mod rational;

pub use groupring::GroupRingElement;
pub use laurent::{LaurentJson, LaurentSeries};
pub use poly::{rat, ratio, Polynomial};
pub(crate) use rational::ratio_to_f64;
pub use rational::{RationalFunction, RationalFunctionJson};

pub(crate) fn serialize_ratio<S: serde::Serializer>(r: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
