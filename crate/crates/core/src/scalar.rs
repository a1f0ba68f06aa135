//! Numeric kernel shared by every module: an exact rational or an `f64`.
//!
//! Arithmetic between two exact values stays exact; as soon as one operand
//! is a float the result is a float.

use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Exact,
    Float,
}

impl Kind {
    /// Float wins.
    pub fn join(self, other: Kind) -> Kind {
        if self == Kind::Float || other == Kind::Float {
            Kind::Float
        } else {
            Kind::Exact
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// Arbitrary-precision rational, always in lowest terms.
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as an exact rational. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn float(v: f64) -> Scalar {
        Scalar::Float(v)
    }

    pub fn zero() -> Scalar {
        Scalar::int(0)
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn kind(&self) -> Kind {
        match self {
            Scalar::Exact(_) => Kind::Exact,
            Scalar::Float(_) => Kind::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Nearest `f64`; exact values are rounded correctly.
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(v) => *v,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Same value, represented in `kind`. Converting a float to exact keeps
    /// its binary value.
    pub fn to_kind(&self, kind: Kind) -> Scalar {
        match (self, kind) {
            (Scalar::Float(v), Kind::Exact) => BigRational::from_float(*v)
                .map(Scalar::Exact)
                .unwrap_or(Scalar::Float(*v)),
            (s, Kind::Float) => s.to_float(),
            (s, Kind::Exact) => s.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    /// The value as an integer, if it is one. Floats are taken literally:
    /// `2.0000000001` is not an integer.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Exact(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Exact(_) => None,
            Scalar::Float(v) => {
                if v.is_finite() && libm::trunc(*v) == *v && v.abs() < 9.0e15 {
                    Some(*v as i64)
                } else {
                    None
                }
            }
        }
    }

    /// `Some(m)` when the value equals `-m` for an integer `m >= 0`.
    pub fn nonpositive_integer_magnitude(&self) -> Option<usize> {
        match self.as_integer() {
            Some(n) if n <= 0 => usize::try_from(-n).ok(),
            _ => None,
        }
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        self.nonpositive_integer_magnitude().is_some()
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn add_int(&self, k: i64) -> Scalar {
        self + &Scalar::int(k)
    }

    pub fn mul_int(&self, k: i64) -> Scalar {
        self * &Scalar::int(k)
    }

    pub fn div_int(&self, k: i64) -> Scalar {
        self / &Scalar::int(k)
    }

    /// Integer power by repeated multiplication; exact stays exact.
    ///
    /// Panics on `0^negative` in exact mode.
    pub fn powi(&self, exp: i64) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                let mut acc = BigRational::one();
                let mut base = r.clone();
                let mut e = exp.unsigned_abs();
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                if exp < 0 {
                    acc = acc.recip();
                }
                Scalar::Exact(acc)
            }
            Scalar::Float(v) => match i32::try_from(exp) {
                Ok(e) => Scalar::Float(powi_f64(*v, e)),
                Err(_) => Scalar::Float(libm::pow(*v, exp as f64)),
            },
        }
    }

    /// `(1 - x)^p` for `x < 1`.
    ///
    /// Exact when both inputs are exact and `p` is an integer, or when `x`
    /// is zero; otherwise
    /// computed as `exp(p · ln(1 - x))`.
    pub fn one_minus_pow(x: &Scalar, p: &Scalar) -> Scalar {
        let base = &Scalar::one() - x;
        if x.is_zero() {
            return base;
        }
        if base.is_exact() {
            if let (Some(e), true) = (p.as_integer(), p.is_exact()) {
                return base.powi(e);
            }
        }
        let b = base.to_f64();
        Scalar::Float(libm::exp(p.to_f64() * libm::log(b)))
    }

    /// Parse `p/q`, an integer or a decimal (with optional exponent) as an
    /// exact rational. Decimals are read as exact decimal fractions.
    pub fn parse_exact(text: &str) -> Result<Scalar> {
        let t = text.trim();
        let err = || Error::Parse(t.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let n = parse_decimal(num.trim()).ok_or_else(err)?;
            let d = parse_decimal(den.trim()).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::Exact(n / d));
        }
        parse_decimal(t).map(Scalar::Exact).ok_or_else(err)
    }

    /// Parse as a float; `p/q` is parsed exactly and then rounded once.
    pub fn parse_float(text: &str) -> Result<Scalar> {
        let t = text.trim();
        if t.contains('/') {
            return Scalar::parse_exact(t).map(|s| s.to_float());
        }
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Scalar::Float)
            .ok_or_else(|| Error::Parse(t.to_string()))
    }

    pub fn parse(text: &str, kind: Kind) -> Result<Scalar> {
        match kind {
            Kind::Exact => Scalar::parse_exact(text),
            Kind::Float => Scalar::parse_float(text),
        }
    }

    pub fn partial_cmp_value(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }
}

fn powi_f64(mut base: f64, exp: i32) -> f64 {
    let mut e = exp.unsigned_abs();
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    if exp < 0 {
        1.0 / acc
    } else {
        acc
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    Some(value)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    _ => Scalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                &self $op rhs
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
// Exact division by zero panics, as BigRational does.
binop!(Div, div, /);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
