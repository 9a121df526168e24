//! Exact extended-real arithmetic over arbitrary-precision rationals.
//!
//! `XReal` is the arithmetic carrier for every measure and integral in this
//! crate: the rationals extended with `-inf` and `inf`, totally ordered with
//! `-inf < q < inf`. Two multiplication conventions coexist in the
//! literature; we implement the total, measure-theoretic one (`0 * inf = 0`)
//! as [`XReal::mul_mt`], and keep addition partial so that `inf + (-inf)`
//! is a reported error rather than a silent convention.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Builds a rational from an integer pair, reducing to lowest terms.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    BigRational::from_integer(BigInt::from(num))
}

/// An extended real number: a rational, `-inf`, or `inf`.
///
/// Finite values are kept in lowest terms (guaranteed by `BigRational`).
/// The derived order is total with `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum XReal {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Errors raised by the partial operations on [`XReal`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum XRealError {
    /// `inf + (-inf)` (in either order) has no value.
    #[error("undefined sum: inf + (-inf)")]
    UndefinedSum,
    /// A term of a nonnegative sum was negative.
    #[error("negative term in nonnegative sum: {0}")]
    NegativeTerm(String),
    /// Exponentiation pair that would need exp/ln to evaluate.
    #[error("unsupported exponent: {base}^{exp} is irrational")]
    UnsupportedExponent { base: String, exp: String },
    /// `pow_mt` requires a nonnegative base.
    #[error("negative base in nonnegative exponentiation: {0}")]
    NegativeBase(String),
    /// `div_nonneg_mt` is only defined on nonnegative operands.
    #[error("negative operand in nonnegative division: {0}")]
    NegativeOperand(String),
}

impl XReal {
    pub fn zero() -> Self {
        XReal::Finite(Rat::zero())
    }

    pub fn one() -> Self {
        XReal::Finite(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        XReal::Finite(r)
    }

    pub fn from_int(n: i64) -> Self {
        XReal::Finite(rat_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, XReal::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, XReal::Finite(r) if r.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            XReal::NegInf => false,
            XReal::Finite(r) => !r.is_negative(),
            XReal::PosInf => true,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            XReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sign as an integer in {-1, 0, 1}.
    fn signum(&self) -> i32 {
        match self {
            XReal::NegInf => -1,
            XReal::PosInf => 1,
            XReal::Finite(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Addition with the undefined form `inf + (-inf)` reported as an error.
    pub fn add_checked(&self, other: &XReal) -> Result<XReal, XRealError> {
        use XReal::*;
        Ok(match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => return Err(XRealError::UndefinedSum),
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        })
    }

    /// Total addition variant that maps the undefined form to zero.
    ///
    /// Some proof assistants totalize subtraction this way; the wrapper is
    /// for callers that need that convention, while the library itself
    /// always goes through [`XReal::add_checked`].
    pub fn add_total_zero(&self, other: &XReal) -> XReal {
        self.add_checked(other).unwrap_or_else(|_| XReal::zero())
    }

    /// Checked subtraction: `a - b = a + (-b)`.
    pub fn sub_checked(&self, other: &XReal) -> Result<XReal, XRealError> {
        self.add_checked(&other.neg())
    }

    /// Total multiplication under the measure-theory convention `0 * inf = 0`.
    pub fn mul_mt(&self, other: &XReal) -> XReal {
        use XReal::*;
        if self.is_zero() || other.is_zero() {
            return XReal::zero();
        }
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a * b),
            _ => {
                if self.signum() * other.signum() > 0 {
                    PosInf
                } else {
                    NegInf
                }
            }
        }
    }

    pub fn neg(&self) -> XReal {
        match self {
            XReal::NegInf => XReal::PosInf,
            XReal::PosInf => XReal::NegInf,
            XReal::Finite(r) => XReal::Finite(-r),
        }
    }

    /// `|a| = max(-a, a)`; in particular `|-inf| = inf`.
    pub fn abs(&self) -> XReal {
        std::cmp::max(self.neg(), self.clone())
    }

    /// Nonnegative division, total under the measure-theory convention.
    ///
    /// `1/0 = inf`, `1/inf = 0`, and `inf/inf = 0/0 = 0`; `a/0 = inf` for
    /// `a > 0`. Operands outside the nonnegative cone are rejected.
    pub fn div_nonneg_mt(&self, other: &XReal) -> Result<XReal, XRealError> {
        if !self.is_nonneg() {
            return Err(XRealError::NegativeOperand(self.to_string()));
        }
        if !other.is_nonneg() {
            return Err(XRealError::NegativeOperand(other.to_string()));
        }
        let inverse = match other {
            XReal::PosInf => XReal::zero(),
            XReal::Finite(r) if r.is_zero() => XReal::PosInf,
            XReal::Finite(r) => XReal::Finite(r.recip()),
            XReal::NegInf => unreachable!("nonnegative checked above"),
        };
        Ok(self.mul_mt(&inverse))
    }

    /// Exponentiation on a nonnegative base under the measure-theory rule
    /// `0^0 = inf^0 = 1^(+-inf) = 1`.
    ///
    /// Rational base with integer exponent is exact; the remaining pairs are
    /// the infinite special forms. Anything that would require `exp`/`ln`
    /// (a non-integer exponent on a base other than 0, 1, or inf) is an
    /// error, never an approximation.
    pub fn pow_mt(&self, exponent: &XReal) -> Result<XReal, XRealError> {
        use XReal::*;
        if !self.is_nonneg() {
            return Err(XRealError::NegativeBase(self.to_string()));
        }
        // a^0 = 1 for every a >= 0, and 1^b = 1 for every b.
        if exponent.is_zero() {
            return Ok(XReal::one());
        }
        if *self == XReal::one() {
            return Ok(XReal::one());
        }
        match (self, exponent) {
            // 0^b: 0 for b > 0, inf for b < 0.
            (Finite(a), _) if a.is_zero() => Ok(if exponent.signum() > 0 {
                XReal::zero()
            } else {
                PosInf
            }),
            // inf^b: inf for b > 0, 0 for b < 0.
            (PosInf, _) => Ok(if exponent.signum() > 0 {
                PosInf
            } else {
                XReal::zero()
            }),
            // a^inf for finite a > 0, a != 1: 0 below one, inf above.
            (Finite(a), PosInf) => Ok(if *a < Rat::one() { XReal::zero() } else { PosInf }),
            (Finite(a), NegInf) => Ok(if *a < Rat::one() { PosInf } else { XReal::zero() }),
            (Finite(a), Finite(b)) => {
                if b.is_integer() {
                    let k = b.to_integer();
                    Ok(Finite(pow_rat_int(a, &k)))
                } else {
                    Err(XRealError::UnsupportedExponent {
                        base: self.to_string(),
                        exp: exponent.to_string(),
                    })
                }
            }
            (NegInf, _) => unreachable!("nonnegative checked above"),
        }
    }

    /// Exact sum of nonnegative terms; `inf` as soon as one term is `inf`.
    pub fn sum_nonneg<'a, I>(terms: I) -> Result<XReal, XRealError>
    where
        I: IntoIterator<Item = &'a XReal>,
    {
        let mut acc = Rat::zero();
        let mut saw_inf = false;
        for t in terms {
            match t {
                XReal::NegInf => return Err(XRealError::NegativeTerm(t.to_string())),
                XReal::Finite(r) if r.is_negative() => {
                    return Err(XRealError::NegativeTerm(t.to_string()))
                }
                XReal::Finite(r) => acc += r,
                XReal::PosInf => saw_inf = true,
            }
        }
        Ok(if saw_inf {
            XReal::PosInf
        } else {
            XReal::Finite(acc)
        })
    }
}

/// `base^k` for a rational base and integer exponent, exact.
fn pow_rat_int(base: &Rat, k: &BigInt) -> Rat {
    use num_traits::ToPrimitive;
    let e = k
        .abs()
        .to_i32()
        .expect("exponent magnitude fits in i32 at desk scale");
    let p = base.pow(e);
    if k.is_negative() {
        p.recip()
    } else {
        p
    }
}

impl PartialOrd for XReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use XReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for XReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XReal::NegInf => write!(f, "-inf"),
            XReal::PosInf => write!(f, "inf"),
            XReal::Finite(r) => write!(f, "{}", format_rat(r)),
        }
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, `inf`, `-inf` (the crate-wide value grammar).
impl FromStr for XReal {
    type Err = ParseXRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "+inf" => Ok(XReal::PosInf),
            "-inf" => Ok(XReal::NegInf),
            _ => parse_rat(s).map(XReal::Finite),
        }
    }
}

/// Parse error for the `p/q | inf | -inf` grammar.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as an extended rational")]
pub struct ParseXRealError {
    pub input: String,
}

/// Parses a rational in `p` or `p/q` form.
pub fn parse_rat(s: &str) -> Result<Rat, ParseXRealError> {
    let err = || ParseXRealError {
        input: s.to_string(),
    };
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| err())?;
        Ok(Rat::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: i64, d: i64) -> XReal {
        XReal::Finite(rat(n, d))
    }

    #[test]
    fn addition_absorbs_infinity() {
        assert_eq!(
            XReal::from_int(2).add_checked(&XReal::PosInf),
            Ok(XReal::PosInf)
        );
        assert_eq!(
            XReal::NegInf.add_checked(&XReal::from_int(7)),
            Ok(XReal::NegInf)
        );
    }

    #[test]
    fn opposite_infinities_are_undefined() {
        assert_eq!(
            XReal::PosInf.add_checked(&XReal::NegInf),
            Err(XRealError::UndefinedSum)
        );
        assert_eq!(
            XReal::NegInf.add_checked(&XReal::PosInf),
            Err(XRealError::UndefinedSum)
        );
        assert_eq!(XReal::PosInf.add_total_zero(&XReal::NegInf), XReal::zero());
    }

    #[test]
    fn finite_addition_is_exact() {
        assert_eq!(x(1, 2).add_checked(&x(1, 3)), Ok(x(5, 6)));
    }

    #[test]
    fn mt_product_absorbs_zero() {
        assert_eq!(XReal::zero().mul_mt(&XReal::PosInf), XReal::zero());
        assert_eq!(XReal::NegInf.mul_mt(&XReal::zero()), XReal::zero());
        assert_eq!(XReal::PosInf.mul_mt(&x(-2, 1)), XReal::NegInf);
        assert_eq!(x(3, 1).mul_mt(&x(4, 1)), x(12, 1));
    }

    #[test]
    fn abs_of_infinities() {
        assert_eq!(XReal::NegInf.abs(), XReal::PosInf);
        assert_eq!(x(-3, 1).abs(), x(3, 1));
        assert_eq!(XReal::zero().abs(), XReal::zero());
    }

    #[test]
    fn order_is_total() {
        assert!(XReal::NegInf < XReal::Finite(rat_int(-1_000_000_000)));
        assert!(XReal::Finite(rat_int(1_000_000_000)) < XReal::PosInf);
        assert!(x(1, 3) < x(1, 2));
    }

    #[test]
    fn pow_mt_special_forms() {
        let zero = XReal::zero();
        let one = XReal::one();
        assert_eq!(zero.pow_mt(&zero), Ok(one.clone()));
        assert_eq!(XReal::PosInf.pow_mt(&zero), Ok(one.clone()));
        assert_eq!(one.pow_mt(&XReal::PosInf), Ok(one.clone()));
        assert_eq!(one.pow_mt(&XReal::NegInf), Ok(one.clone()));
        assert_eq!(zero.pow_mt(&x(3, 1)), Ok(zero.clone()));
        assert_eq!(zero.pow_mt(&x(-1, 1)), Ok(XReal::PosInf));
        assert_eq!(x(2, 1).pow_mt(&x(3, 1)), Ok(x(8, 1)));
        assert_eq!(x(2, 3).pow_mt(&x(-2, 1)), Ok(x(9, 4)));
        assert_eq!(x(1, 2).pow_mt(&XReal::PosInf), Ok(zero.clone()));
        assert_eq!(x(1, 2).pow_mt(&XReal::NegInf), Ok(XReal::PosInf));
        assert_eq!(x(3, 2).pow_mt(&XReal::PosInf), Ok(XReal::PosInf));
        assert!(matches!(
            x(2, 1).pow_mt(&x(1, 2)),
            Err(XRealError::UnsupportedExponent { .. })
        ));
        assert!(matches!(
            x(-1, 1).pow_mt(&x(2, 1)),
            Err(XRealError::NegativeBase(_))
        ));
    }

    #[test]
    fn sum_nonneg_rules() {
        let terms = vec![x(1, 2), x(1, 3), XReal::PosInf];
        assert_eq!(XReal::sum_nonneg(&terms), Ok(XReal::PosInf));
        assert_eq!(XReal::sum_nonneg(&[]), Ok(XReal::zero()));
        let exact = vec![x(1, 4), x(1, 4), x(1, 2)];
        assert_eq!(XReal::sum_nonneg(&exact), Ok(XReal::one()));
        assert!(matches!(
            XReal::sum_nonneg(&[x(-1, 2)]),
            Err(XRealError::NegativeTerm(_))
        ));
    }

    #[test]
    fn division_on_nonneg_cone() {
        assert_eq!(XReal::one().div_nonneg_mt(&XReal::zero()), Ok(XReal::PosInf));
        assert_eq!(XReal::one().div_nonneg_mt(&XReal::PosInf), Ok(XReal::zero()));
        assert_eq!(XReal::PosInf.div_nonneg_mt(&XReal::PosInf), Ok(XReal::zero()));
        assert_eq!(XReal::zero().div_nonneg_mt(&XReal::zero()), Ok(XReal::zero()));
        assert_eq!(x(3, 2).div_nonneg_mt(&x(3, 4)), Ok(x(2, 1)));
        assert!(x(-1, 1).div_nonneg_mt(&x(1, 1)).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["inf", "-inf", "5/6", "-7", "0"] {
            let v: XReal = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("4/6".parse::<XReal>().unwrap().to_string(), "2/3");
        assert!("nan".parse::<XReal>().is_err());
        assert!("1/0".parse::<XReal>().is_err());
    }
}
