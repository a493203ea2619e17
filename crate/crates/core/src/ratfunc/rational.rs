use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentSeries;
use super::poly::{rat, write_int_poly, Polynomial};
use crate::error::{Error, Result};

/// Element of Q(n) in canonical form: reduced fraction with monic denominator.
///
/// Zero is `0/1`. Because the form is canonical, structural equality is
/// equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().unwrap().recip();
        Ok(RationalFunction { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction { num: Polynomial::constant(c), den: Polynomial::one() }
    }

    pub fn integer(c: i64) -> Self {
        RationalFunction::constant(rat(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// `n^k` for any integer `k`.
    pub fn n_pow(k: i64) -> Self {
        let m = Polynomial::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RationalFunction::from_poly(m)
        } else {
            RationalFunction { num: Polynomial::one(), den: m }
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order at infinity: `deg num − deg den`, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn evaluate(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.evaluate(q);
        if d.is_zero() {
            return Err(Error::Pole(q.to_string()));
        }
        Ok(self.num.evaluate(q) / d)
    }

    pub fn evaluate_f64(&self, n: f64) -> f64 {
        let ev = |p: &Polynomial| p.coeffs().iter().rev().fold(0.0, |acc, c| acc * n + ratio_to_f64(c));
        ev(&self.num) / ev(&self.den)
    }

    /// Expansion at `n → ∞` keeping every exponent `≥ floor`.
    pub fn laurent(&self, floor: i64) -> LaurentSeries {
        let mut out = LaurentSeries::new(floor);
        let Some(top) = self.degree() else {
            return out;
        };
        if top < floor {
            return out;
        }
        let a = self.num.degree().unwrap();
        let d = self.den.degree().unwrap();
        let nrev = |k: usize| if k <= a { self.num.coeff(a - k) } else { BigRational::zero() };
        let drev = |k: usize| if k <= d { self.den.coeff(d - k) } else { BigRational::zero() };
        let steps = (top - floor) as usize;
        let mut c: Vec<BigRational> = Vec::with_capacity(steps + 1);
        // den is monic, so drev(0) = 1
        for k in 0..=steps {
            let mut v = nrev(k);
            for j in 1..=k.min(d) {
                v -= drev(j) * &c[k - j];
            }
            c.push(v);
        }
        for (k, v) in c.into_iter().enumerate() {
            out.add_term(top - k as i64, v);
        }
        out
    }

    pub fn to_json(&self) -> RationalFunctionJson {
        let s = |p: &Polynomial| p.coeffs().iter().map(|c| c.to_string()).collect();
        RationalFunctionJson { num: s(&self.num), den: s(&self.den) }
    }

    pub fn from_json(j: &RationalFunctionJson) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Polynomial> {
            v.iter()
                .map(|c| BigRational::from_str(c).map_err(|_| Error::Invalid(format!("bad coefficient {c:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(Polynomial::new)
        };
        RationalFunction::new(parse(&j.num)?, parse(&j.den)?)
    }
}

/// Wire form: ascending coefficients as exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

pub(crate) fn ratio_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        let inv = rhs.invert()?;
        Ok(self.mul(&inv))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |a, b| &a + &b)
    }
}

fn is_bare_monomial(p: &[BigInt]) -> bool {
    let nz: Vec<&BigInt> = p.iter().filter(|c| !c.is_zero()).collect();
    nz.len() == 1 && nz[0].is_one()
}

/// Integer-cleared rendering with the numerator's content factored out,
/// e.g. `-4/(n^3 - n)` or `9(n^2 + 4)/(n^5 - 5n^3 + 4n)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (cn, pn) = self.num.integer_content();
        let (cd, pd) = self.den.integer_content();
        let c = cn / cd;
        let a = c.numer().clone();
        let b = c.denom().clone();
        let den: Vec<BigInt> = pd.iter().map(|x| x * &b).collect();
        let den_is_one = den.len() == 1 && den[0].is_one();

        let mut num = String::new();
        if pn.len() == 1 {
            num = a.to_string();
        } else {
            let mut body = String::new();
            write_int_poly(&mut body, &pn)?;
            if is_bare_monomial(&pn) {
                num = if a.is_one() {
                    body
                } else if (-&a).is_one() {
                    format!("-{body}")
                } else {
                    format!("{a}{body}")
                };
            } else if a.is_one() {
                num = if den_is_one { body } else { format!("({body})") };
            } else if (-&a).is_one() {
                num = format!("-({body})");
            } else {
                num.push_str(&format!("{a}({body})"));
            }
        }
        if den_is_one {
            return write!(f, "{num}");
        }
        let mut d = String::new();
        write_int_poly(&mut d, &den)?;
        if den.len() == 1 || is_bare_monomial(&den) {
            write!(f, "{num}/{d}")
        } else {
            write!(f, "{num}/({d})")
        }
    }
}
