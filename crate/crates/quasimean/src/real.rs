//! Exact base-10 numbers and the value type used throughout the toolkit.
//!
//! `ExactDecimal` is a sign/mantissa/exponent representation in which
//! `floor(10^m * x)` and `ceil(10^m * x)` are computed without rounding.
//! `Real` is the result currency: an exact rational when an operation can
//! stay exact (sums, products, division by an integer), or an `f64` once an
//! irrational step (roots, powers, generator inversion) has happened.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::MeanError;

/// A real number of the form `sign * mantissa * 10^exponent`.
///
/// Canonical form: `mantissa == 0` iff `sign == 0`, and a nonzero mantissa is
/// never divisible by 10.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactDecimal {
    sign: i8,
    mantissa: BigUint,
    exponent: i64,
}

impl ExactDecimal {
    pub fn zero() -> Self {
        ExactDecimal {
            sign: 0,
            mantissa: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        ExactDecimal::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        let (sign, mag) = match v.sign() {
            Sign::Minus => (-1, v.magnitude().clone()),
            Sign::NoSign => (0, BigUint::zero()),
            Sign::Plus => (1, v.magnitude().clone()),
        };
        ExactDecimal {
            sign,
            mantissa: mag,
            exponent: 0,
        }
        .canonical()
    }

    /// `k * 10^exponent` for integer `k`; the grid constructor used by samplers.
    pub fn from_scaled(k: i64, exponent: i64) -> Self {
        let sign = match k.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        ExactDecimal {
            sign,
            mantissa: BigUint::from(k.unsigned_abs()),
            exponent,
        }
        .canonical()
    }

    /// 10^m as an exact decimal.
    pub fn pow10(m: i64) -> Self {
        ExactDecimal {
            sign: 1,
            mantissa: BigUint::one(),
            exponent: m,
        }
    }

    fn canonical(mut self) -> Self {
        if self.mantissa.is_zero() {
            self.sign = 0;
            self.exponent = 0;
            return self;
        }
        let ten = BigUint::from(10u32);
        loop {
            let (q, r) = self.mantissa.div_rem(&ten);
            if r.is_zero() {
                self.mantissa = q;
                self.exponent += 1;
            } else {
                break;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn neg(&self) -> Self {
        ExactDecimal {
            sign: -self.sign,
            mantissa: self.mantissa.clone(),
            exponent: self.exponent,
        }
    }

    /// Signed mantissa as a `BigInt`.
    fn signed_mantissa(&self) -> BigInt {
        let m = BigInt::from(self.mantissa.clone());
        if self.sign < 0 {
            -m
        } else {
            m
        }
    }

    /// Exact value as a rational number.
    pub fn to_rational(&self) -> BigRational {
        let m = self.signed_mantissa();
        if self.exponent >= 0 {
            BigRational::from_integer(m * pow10_bigint(self.exponent as u64))
        } else {
            BigRational::new(m, pow10_bigint((-self.exponent) as u64))
        }
    }

    /// Exact rational to decimal, when the denominator divides a power of 10.
    pub fn try_from_rational(r: &BigRational) -> Option<Self> {
        let num = r.numer().clone();
        let den = r.denom().clone();
        // den is positive and coprime with num; terminating iff den = 2^a 5^b.
        let (a, rest) = strip_factor(den.magnitude().clone(), 2u32);
        let (b, rest) = strip_factor(rest, 5u32);
        if !rest.is_one() {
            return None;
        }
        // num / (2^a 5^b) = num * 2^b' * 5^a' / 10^max(a,b)
        let k = a.max(b);
        let scale = BigInt::from(2u32).pow((k - a) as u32) * BigInt::from(5u32).pow((k - b) as u32);
        let scaled = num * scale;
        let (sign, mag) = match scaled.sign() {
            Sign::Minus => (-1, scaled.magnitude().clone()),
            Sign::NoSign => (0, BigUint::zero()),
            Sign::Plus => (1, scaled.magnitude().clone()),
        };
        Some(
            ExactDecimal {
                sign,
                mantissa: mag,
                exponent: -(k as i64),
            }
            .canonical(),
        )
    }

    /// `floor(10^m * value)`, exact.
    pub fn floor_at_scale(&self, m: i64) -> BigInt {
        floor_scaled_rational(&self.to_rational(), m)
    }

    /// `ceil(10^m * value)`, exact.
    pub fn ceil_at_scale(&self, m: i64) -> BigInt {
        ceil_scaled_rational(&self.to_rational(), m)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.to_rational())
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.exponent.min(other.exponent);
        let a = self.signed_mantissa() * pow10_bigint((self.exponent - e) as u64);
        let b = other.signed_mantissa() * pow10_bigint((other.exponent - e) as u64);
        let s = a + b;
        let (sign, mag) = match s.sign() {
            Sign::Minus => (-1, s.magnitude().clone()),
            Sign::NoSign => (0, BigUint::zero()),
            Sign::Plus => (1, s.magnitude().clone()),
        };
        ExactDecimal {
            sign,
            mantissa: mag,
            exponent: e,
        }
        .canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        ExactDecimal {
            sign: self.sign * other.sign,
            mantissa: &self.mantissa * &other.mantissa,
            exponent: self.exponent + other.exponent,
        }
        .canonical()
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.sign != other.sign {
            return self.sign.cmp(&other.sign);
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa * pow10_biguint((self.exponent - e) as u64);
        let b = &other.mantissa * pow10_biguint((other.exponent - e) as u64);
        if self.sign > 0 {
            a.cmp(&b)
        } else {
            b.cmp(&a)
        }
    }
}

impl PartialOrd for ExactDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

fn strip_factor(mut n: BigUint, f: u32) -> (u64, BigUint) {
    let f = BigUint::from(f);
    let mut count = 0u64;
    if n.is_zero() {
        return (0, BigUint::one());
    }
    loop {
        let (q, r) = n.div_rem(&f);
        if r.is_zero() {
            n = q;
            count += 1;
        } else {
            return (count, n);
        }
    }
}

pub(crate) fn pow10_bigint(e: u64) -> BigInt {
    BigInt::from(10u32).pow(e as u32)
}

pub(crate) fn pow10_biguint(e: u64) -> BigUint {
    BigUint::from(10u32).pow(e as u32)
}

/// `floor(10^m * r)` for an exact rational, with no rounding.
pub fn floor_scaled_rational(r: &BigRational, m: i64) -> BigInt {
    let scaled = if m >= 0 {
        BigRational::new(r.numer() * pow10_bigint(m as u64), r.denom().clone())
    } else {
        BigRational::new(r.numer().clone(), r.denom() * pow10_bigint((-m) as u64))
    };
    scaled.floor().to_integer()
}

pub fn ceil_scaled_rational(r: &BigRational, m: i64) -> BigInt {
    let scaled = if m >= 0 {
        BigRational::new(r.numer() * pow10_bigint(m as u64), r.denom().clone())
    } else {
        BigRational::new(r.numer().clone(), r.denom() * pow10_bigint((-m) as u64))
    };
    scaled.ceil().to_integer()
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer();
        let d = r.denom();
        let shift = (n.bits() as i64 - d.bits() as i64).clamp(-900, 900);
        if shift > 0 {
            let nd = n >> shift as u64;
            nd.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
                * 2f64.powi(shift as i32)
        } else {
            let dd = d >> (-shift) as u64;
            n.to_f64().unwrap_or(f64::NAN) / dd.to_f64().unwrap_or(f64::NAN)
                * 2f64.powi(shift as i32)
        }
    })
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let digits = self.mantissa.to_string();
        let ndigits = digits.len() as i64;
        let s = if self.sign < 0 { "-" } else { "" };
        // Positional form while it stays short, exponent form otherwise.
        if self.exponent >= 0 && self.exponent + ndigits <= 21 {
            write!(f, "{s}{digits}{}", "0".repeat(self.exponent as usize))
        } else if self.exponent < 0 && -self.exponent < ndigits {
            let point = (ndigits + self.exponent) as usize;
            write!(f, "{s}{}.{}", &digits[..point], &digits[point..])
        } else if self.exponent < 0 && -self.exponent - ndigits <= 18 {
            let zeros = (-self.exponent - ndigits) as usize;
            write!(f, "{s}0.{}{digits}", "0".repeat(zeros))
        } else {
            write!(f, "{s}{digits}e{}", self.exponent)
        }
    }
}

impl FromStr for ExactDecimal {
    type Err = MeanError;

    fn from_str(input: &str) -> Result<Self, MeanError> {
        let bad = |msg: &str| MeanError::Parse {
            position: 0,
            message: format!("{msg}: {input:?}"),
        };
        let s = input.trim();
        if s.is_empty() {
            return Err(bad("empty decimal"));
        }
        let (sign, rest) = match s.as_bytes()[0] {
            b'+' => (1i8, &s[1..]),
            b'-' => (-1i8, &s[1..]),
            _ => (1i8, s),
        };
        let (body, exp_part) = match rest.find(['e', 'E']) {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let exp_shift: i64 = match exp_part {
            Some(e) if !e.is_empty() => e.parse().map_err(|_| bad("bad exponent"))?,
            Some(_) => return Err(bad("bad exponent")),
            None => 0,
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("no digits"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad("invalid digit"));
        }
        let combined = format!("{int_part}{frac_part}");
        let mantissa = BigUint::from_str(&combined).map_err(|_| bad("invalid digits"))?;
        let exponent = exp_shift - frac_part.len() as i64;
        let sign = if mantissa.is_zero() { 0 } else { sign };
        Ok(ExactDecimal {
            sign,
            mantissa,
            exponent,
        }
        .canonical())
    }
}

/// A real value: exact rational while operations permit, `f64` afterwards.
#[derive(Clone, Debug)]
pub enum Real {
    Exact(BigRational),
    Approx(f64),
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Real::Exact(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Real::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_decimal(d: &ExactDecimal) -> Self {
        Real::Exact(d.to_rational())
    }

    pub fn from_f64(v: f64) -> Self {
        Real::Approx(v)
    }

    /// Exact ratio `p / q`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Real::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => rational_to_f64(r),
            Real::Approx(v) => *v,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Real::Exact(_) => true,
            Real::Approx(v) => v.is_finite(),
        }
    }

    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => Real::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Approx(self.to_f64() * other.to_f64()),
        }
    }

    pub fn div(&self, other: &Real) -> Result<Real, MeanError> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => {
                if b.is_zero() {
                    Err(MeanError::Domain("division by zero".into()))
                } else {
                    Ok(Real::Exact(a / b))
                }
            }
            _ => {
                let d = other.to_f64();
                if d == 0.0 {
                    Err(MeanError::Domain("division by zero".into()))
                } else {
                    Ok(Real::Approx(self.to_f64() / d))
                }
            }
        }
    }

    pub fn div_int(&self, n: i64) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(a / BigRational::from_integer(BigInt::from(n))),
            Real::Approx(v) => Real::Approx(v / n as f64),
        }
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Approx(v) => Real::Approx(-v),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(a.abs()),
            Real::Approx(v) => Real::Approx(v.abs()),
        }
    }

    pub fn recip(&self) -> Result<Real, MeanError> {
        Real::one().div(self)
    }

    /// Degrades to `f64` once an exact value's representation exceeds
    /// `max_bits`. Iterations with polynomial update rules square their
    /// denominators every step; this keeps them from exploding while
    /// bounded-denominator values (decimal grids) stay exact.
    pub fn clamp_precision(self, max_bits: u64) -> Real {
        match &self {
            Real::Exact(r) => {
                if r.numer().bits() + r.denom().bits() > max_bits {
                    Real::Approx(self.to_f64())
                } else {
                    self
                }
            }
            Real::Approx(_) => self,
        }
    }

    /// `max(0, x)`: the positive-part operation used by the defect measures.
    pub fn positive_part(&self) -> Real {
        if self.cmp_value(&Real::zero()) == Ordering::Less {
            Real::zero()
        } else {
            self.clone()
        }
    }

    pub fn floor_at_scale(&self, m: i64) -> Real {
        match self {
            Real::Exact(r) => {
                let k = floor_scaled_rational(r, m);
                Real::Exact(scaled_int_rational(k, m))
            }
            Real::Approx(v) => {
                Real::Approx((v * 10f64.powi(m as i32)).floor() / 10f64.powi(m as i32))
            }
        }
    }

    pub fn ceil_at_scale(&self, m: i64) -> Real {
        match self {
            Real::Exact(r) => {
                let k = ceil_scaled_rational(r, m);
                Real::Exact(scaled_int_rational(k, m))
            }
            Real::Approx(v) => {
                Real::Approx((v * 10f64.powi(m as i32)).ceil() / 10f64.powi(m as i32))
            }
        }
    }

    /// Integer `floor(10^m * x)`; `None` on a non-finite approx value.
    pub fn floor_scaled_int(&self, m: i64) -> Option<BigInt> {
        match self {
            Real::Exact(r) => Some(floor_scaled_rational(r, m)),
            Real::Approx(v) => {
                let s = v * 10f64.powi(m as i32);
                if s.is_finite() {
                    Some(BigInt::from(s.floor() as i128))
                } else {
                    None
                }
            }
        }
    }

    pub fn ceil_scaled_int(&self, m: i64) -> Option<BigInt> {
        match self {
            Real::Exact(r) => Some(ceil_scaled_rational(r, m)),
            Real::Approx(v) => {
                let s = v * 10f64.powi(m as i32);
                if s.is_finite() {
                    Some(BigInt::from(s.ceil() as i128))
                } else {
                    None
                }
            }
        }
    }

    pub fn sqrt(&self) -> Result<Real, MeanError> {
        let v = self.to_f64();
        if v < 0.0 {
            return Err(MeanError::Domain("square root of a negative value".into()));
        }
        Ok(Real::Approx(v.sqrt()))
    }

    pub fn powf(&self, e: f64) -> Result<Real, MeanError> {
        let v = self.to_f64();
        if v < 0.0 && e.fract() != 0.0 {
            return Err(MeanError::Domain(
                "fractional power of a negative value".into(),
            ));
        }
        Ok(Real::Approx(v.powf(e)))
    }

    /// Value comparison; exact when both sides are exact.
    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .unwrap_or(Ordering::Equal),
        }
    }

    pub fn min_value(&self, other: &Real) -> Real {
        if self.cmp_value(other) == Ordering::Greater {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn max_value(&self, other: &Real) -> Real {
        if self.cmp_value(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    /// Equality up to `tol` when either side is approximate, exact otherwise.
    pub fn approx_eq(&self, other: &Real, tol: f64) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => {
                let a = self.to_f64();
                let b = other.to_f64();
                (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
            }
        }
    }

    /// `self >= other`, allowing `tol` slack when either side is approximate.
    pub fn ge_with_tol(&self, other: &Real, tol: f64) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a >= b,
            _ => {
                let a = self.to_f64();
                let b = other.to_f64();
                a >= b - tol * 1f64.max(a.abs()).max(b.abs())
            }
        }
    }

    pub fn le_with_tol(&self, other: &Real, tol: f64) -> bool {
        other.ge_with_tol(self, tol)
    }

    /// Exact decimal render when terminating, 18 significant digits with a
    /// leading `≈` otherwise.
    pub fn render(&self) -> String {
        match self {
            Real::Exact(r) => match ExactDecimal::try_from_rational(r) {
                Some(d) => d.to_string(),
                None => format!("≈{}", significant_digits(r, 18)),
            },
            Real::Approx(v) => format!("≈{v:.17e}").replace("e0", "e"),
        }
    }

    /// Plain numeric render for CSV output: exact decimal when terminating,
    /// shortest faithful f64 otherwise.
    pub fn render_plain(&self) -> String {
        match self {
            Real::Exact(r) => match ExactDecimal::try_from_rational(r) {
                Some(d) => d.to_string(),
                None => format!("{}", rational_to_f64(r)),
            },
            Real::Approx(v) => format!("{v}"),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn scaled_int_rational(k: BigInt, m: i64) -> BigRational {
    if m >= 0 {
        BigRational::new(k, pow10_bigint(m as u64))
    } else {
        BigRational::from_integer(k * pow10_bigint((-m) as u64))
    }
}

/// First `n` significant digits of a rational, in positional or exponent form.
fn significant_digits(r: &BigRational, n: u32) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Decimal magnitude e with 10^e <= a < 10^(e+1).
    let num_len = a.numer().to_string().len() as i64;
    let den_len = a.denom().to_string().len() as i64;
    let mut e = num_len - den_len;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow10_bigint(k as u64))
        } else {
            BigRational::new(BigInt::one(), pow10_bigint((-k) as u64))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    // digits = floor(a * 10^(n-1-e)), an n-digit integer.
    let shifted = &a * pow(n as i64 - 1 - e);
    let digits = shifted.floor().to_integer().to_string();
    let _ = ten;
    let sign = if neg { "-" } else { "" };
    if e >= 0 && e < n as i64 {
        let point = (e + 1) as usize;
        let tail = digits[point..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{}", &digits[..point])
        } else {
            format!("{sign}{}.{}", &digits[..point], tail)
        }
    } else if (-4..0).contains(&e) {
        let zeros = (-(e + 1)) as usize;
        let tail = digits.trim_end_matches('0');
        format!("{sign}0.{}{}", "0".repeat(zeros), tail)
    } else {
        let tail = digits[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{sign}{}e{e}", &digits[..1])
        } else {
            format!("{sign}{}.{}e{e}", &digits[..1], tail)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> ExactDecimal {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_render_round_trip() {
        for s in [
            "0", "1", "-1", "2.55", "-0.001", "1234e-7", "21000", "3.1", "0.36",
        ] {
            let d = dec(s);
            let back: ExactDecimal = d.to_string().parse().unwrap();
            assert_eq!(d, back, "round trip failed for {s}");
        }
    }

    #[test]
    fn canonical_form() {
        let d = dec("2.50");
        assert_eq!(d, dec("2.5"));
        assert_eq!(d.to_string(), "2.5");
        assert_eq!(dec("0.0"), ExactDecimal::zero());
        assert_eq!(dec("-0"), ExactDecimal::zero());
    }

    #[test]
    fn floor_ceil_at_scale_exact() {
        let d = dec("2.1");
        assert_eq!(d.floor_at_scale(0), BigInt::from(2));
        assert_eq!(d.ceil_at_scale(0), BigInt::from(3));
        assert_eq!(d.floor_at_scale(1), BigInt::from(21));
        assert_eq!(d.ceil_at_scale(1), BigInt::from(21));
        let n = dec("-2.1");
        assert_eq!(n.floor_at_scale(0), BigInt::from(-3));
        assert_eq!(n.ceil_at_scale(0), BigInt::from(-2));
        // The classic double-rounding trap: 0.1 has no finite binary form.
        assert_eq!(dec("0.1").floor_at_scale(1), BigInt::from(1));
        assert_eq!(
            dec("0.29999999999999999").floor_at_scale(1),
            BigInt::from(2)
        );
    }

    #[test]
    fn decimal_arithmetic() {
        assert_eq!(dec("2.1").add(&dec("3")), dec("5.1"));
        assert_eq!(dec("2.1").sub(&dec("3")), dec("-0.9"));
        assert_eq!(dec("1.5").mul(&dec("0.2")), dec("0.3"));
        assert!(dec("2.1") < dec("3"));
        assert!(dec("-2.1") > dec("-3"));
    }

    #[test]
    fn real_exact_division_stays_exact() {
        let v = Real::from_decimal(&dec("5.1")).div_int(2);
        assert_eq!(v, Real::ratio(51, 20));
        assert_eq!(v.render(), "2.55");
        let third = Real::from_int(23).div_int(3);
        assert!(third.render().starts_with('≈'));
        assert!(third.render().contains("7.6666666666666666"));
    }

    #[test]
    fn render_non_terminating_marks_approx() {
        let v = Real::ratio(1, 3);
        let s = v.render();
        assert!(s.starts_with('≈'), "got {s}");
        assert!(s.contains("0.333333333333333333"), "got {s}");
    }

    #[test]
    fn positive_part_and_comparisons() {
        assert_eq!(Real::from_int(-3).positive_part(), Real::zero());
        assert_eq!(Real::from_int(3).positive_part(), Real::from_int(3));
        assert!(Real::ratio(1, 2).ge_with_tol(&Real::ratio(1, 2), 0.0));
        assert!(Real::Approx(1.0).ge_with_tol(&Real::Approx(1.0 + 1e-14), 1e-12));
    }
}
