//! Scalar fields for section arithmetic.
//!
//! Three modes are supported: exact rationals (the default), Gaussian
//! rationals (pairs of rationals acting as complex numbers), and `f64`
//! with a global comparison tolerance. The two exact modes satisfy the
//! field axioms bit-exactly, which is what makes injectivity of a
//! section a decidable predicate. Float mode exists for large-window
//! exploration only; every certificate-producing routine refuses it.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num::bigint::{BigInt, Sign};
use num::integer::Roots;
use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse {mode} scalar from {text:?}: {reason}")]
    Parse {
        mode: &'static str,
        text: String,
        reason: String,
    },
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
}

/// Which of the three scalar modes a type implements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarMode {
    Rational,
    Gaussian,
    Float,
}

impl ScalarMode {
    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::Rational => "rational",
            ScalarMode::Gaussian => "gaussian",
            ScalarMode::Float => "float",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Global comparison tolerance for float mode, default `1e-9`.
///
/// Only the float injectivity heuristic (`|det| > eps`) consults it;
/// exact modes never do.
static FLOAT_EPSILON_BITS: AtomicU64 = AtomicU64::new(0);

const DEFAULT_EPSILON: f64 = 1e-9;

pub fn float_epsilon() -> f64 {
    let bits = FLOAT_EPSILON_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_EPSILON
    } else {
        f64::from_bits(bits)
    }
}

pub fn set_float_epsilon(eps: f64) {
    FLOAT_EPSILON_BITS.store(eps.to_bits(), Ordering::Relaxed);
}

/// Element of the coefficient field.
///
/// Arithmetic takes references so big-integer values are never cloned
/// just to pass through an operation. The method names deliberately do
/// not collide with anything in the prelude; call sites on a generic
/// `S: Scalar` resolve without qualification.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Value used for exact modulus comparisons: `|x|` for rationals
    /// and floats, the squared modulus for Gaussian rationals (keeping
    /// comparisons inside the rationals).
    type Magnitude: Clone + PartialOrd + PartialEq + fmt::Debug + fmt::Display;

    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_integer(n: i64) -> Self;
    fn from_big_rational(r: &BigRational) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division; `None` when `rhs` is zero.
    fn div(&self, rhs: &Self) -> Option<Self>;

    fn magnitude(&self) -> Self::Magnitude;
    fn zero_magnitude() -> Self::Magnitude;
    fn add_magnitudes(a: &Self::Magnitude, b: &Self::Magnitude) -> Self::Magnitude;

    /// `|self|` as an exact rational when that is representable:
    /// always for rationals, for Gaussian values only when the squared
    /// modulus is a perfect rational square, never for floats.
    fn rational_magnitude(&self) -> Option<BigRational>;

    fn parse(text: &str) -> Result<Self, ScalarError>
    where
        Self: Sized;

    fn exact() -> bool {
        !matches!(Self::MODE, ScalarMode::Float)
    }
}

/// Convenience constructor, `n/d` in any scalar mode.
pub fn ratio<S: Scalar>(n: i64, d: i64) -> S {
    assert!(d != 0, "ratio with zero denominator");
    S::from_big_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn parse_big_rational(text: &str) -> Result<BigRational, ScalarError> {
    let trimmed = text.trim();
    if let Some((n, d)) = trimmed.split_once('/') {
        let numer = BigInt::from_str(n.trim()).map_err(|e| ScalarError::Parse {
            mode: "rational",
            text: text.to_string(),
            reason: e.to_string(),
        })?;
        let denom = BigInt::from_str(d.trim()).map_err(|e| ScalarError::Parse {
            mode: "rational",
            text: text.to_string(),
            reason: e.to_string(),
        })?;
        if denom.is_zero() {
            return Err(ScalarError::ZeroDenominator(text.to_string()));
        }
        Ok(BigRational::new(numer, denom))
    } else {
        let numer = BigInt::from_str(trimmed).map_err(|e| ScalarError::Parse {
            mode: "rational",
            text: text.to_string(),
            reason: e.to_string(),
        })?;
        Ok(BigRational::from_integer(numer))
    }
}

/// `sqrt(r)` when `r` is a perfect square of a rational.
fn exact_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let numer = r.numer();
    let denom = r.denom();
    let sn = numer.sqrt();
    let sd = denom.sqrt();
    if &(&sn * &sn) == numer && &(&sd * &sd) == denom {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Scalar for BigRational {
    type Magnitude = BigRational;

    const MODE: ScalarMode = ScalarMode::Rational;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_big_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn magnitude(&self) -> BigRational {
        self.abs()
    }

    fn zero_magnitude() -> BigRational {
        <BigRational as Zero>::zero()
    }

    fn add_magnitudes(a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn rational_magnitude(&self) -> Option<BigRational> {
        Some(self.abs())
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        parse_big_rational(text)
    }
}

/// Gaussian rational: `re + im*i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re: &BigRational, im: &BigRational) -> Self {
        GaussianRational {
            re: re.clone(),
            im: im.clone(),
        }
    }

    /// `re^2 + im^2`, exact.
    pub fn modulus_squared(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Zero::is_zero(&self.re) {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar for GaussianRational {
    type Magnitude = BigRational;

    const MODE: ScalarMode = ScalarMode::Gaussian;

    fn zero() -> Self {
        GaussianRational::new(Zero::zero(), Zero::zero())
    }

    fn one() -> Self {
        GaussianRational::new(One::one(), Zero::zero())
    }

    fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), Zero::zero())
    }

    fn from_big_rational(r: &BigRational) -> Self {
        GaussianRational::new(r.clone(), Zero::zero())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        let norm = rhs.modulus_squared();
        if Zero::is_zero(&norm) {
            return None;
        }
        // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &norm;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &norm;
        Some(GaussianRational::new(re, im))
    }

    fn magnitude(&self) -> BigRational {
        self.modulus_squared()
    }

    fn zero_magnitude() -> BigRational {
        <BigRational as Zero>::zero()
    }

    fn add_magnitudes(a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn rational_magnitude(&self) -> Option<BigRational> {
        exact_sqrt(&self.modulus_squared())
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        parse_gaussian(text)
    }
}

/// Parses `p/q`, `p/qi`, `a+bi`, `a-bi`, with each part a rational.
fn parse_gaussian(text: &str) -> Result<GaussianRational, ScalarError> {
    let s = text.trim();
    let err = |reason: &str| ScalarError::Parse {
        mode: "gaussian",
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty string"));
    }
    // Split at the last top-level '+'/'-' that is not the leading sign.
    let bytes = s.as_bytes();
    let mut split_at = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if b == b'+' || b == b'-' {
            split_at = Some(idx);
        }
    }
    if let Some(stripped) = s.strip_suffix('i') {
        if let Some(idx) = split_at {
            // a+bi or a-bi
            let re = parse_big_rational(&s[..idx])?;
            let sign = if bytes[idx] == b'-' { -1 } else { 1 };
            let im_text = stripped[idx + 1..].trim();
            let im_mag = if im_text.is_empty() {
                <BigRational as One>::one()
            } else {
                parse_big_rational(im_text)?
            };
            let im = if sign < 0 { -im_mag } else { im_mag };
            return Ok(GaussianRational::new(re, im));
        }
        // pure imaginary
        let body = stripped.trim();
        let im = if body.is_empty() {
            <BigRational as One>::one()
        } else if body == "-" {
            -<BigRational as One>::one()
        } else {
            parse_big_rational(body)?
        };
        return Ok(GaussianRational::new(Zero::zero(), im));
    }
    let re = parse_big_rational(s)?;
    Ok(GaussianRational::new(re, Zero::zero()))
}

impl Scalar for f64 {
    type Magnitude = f64;

    const MODE: ScalarMode = ScalarMode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_integer(n: i64) -> Self {
        n as f64
    }

    fn from_big_rational(r: &BigRational) -> Self {
        big_rational_to_f64(r)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        if *rhs == 0.0 {
            None
        } else {
            Some(self / rhs)
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn zero_magnitude() -> f64 {
        0.0
    }

    fn add_magnitudes(a: &f64, b: &f64) -> f64 {
        a + b
    }

    fn rational_magnitude(&self) -> Option<BigRational> {
        None
    }

    fn parse(text: &str) -> Result<Self, ScalarError> {
        let s = text.trim();
        // Accept the rational file syntax in float mode so one config
        // works across modes.
        if s.contains('/') {
            return Ok(big_rational_to_f64(&parse_big_rational(s)?));
        }
        s.parse::<f64>().map_err(|e| ScalarError::Parse {
            mode: "float",
            text: text.to_string(),
            reason: e.to_string(),
        })
    }
}

fn big_rational_to_f64(r: &BigRational) -> f64 {
    bigint_to_f64(r.numer()) / bigint_to_f64(r.denom())
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut value = 0.0f64;
    for &d in digits.iter().rev() {
        value = value * 1.8446744073709552e19 + d as f64;
    }
    if sign == Sign::Minus {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(rat(1, 2).to_string(), "1/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(BigRational::parse("3/6").unwrap(), rat(1, 2));
        assert_eq!(BigRational::parse("-7").unwrap(), rat(-7, 1));
        assert!(BigRational::parse("1/0").is_err());
        assert!(BigRational::parse("x").is_err());
    }

    #[test]
    fn rational_normalization() {
        // num keeps lowest terms with positive denominator
        let r = rat(6, -8);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
    }

    #[test]
    fn gaussian_display_round_trip() {
        let cases = [
            GaussianRational::new(rat(1, 2), rat(-1, 3)),
            GaussianRational::new(rat(0, 1), rat(5, 1)),
            GaussianRational::new(rat(-2, 1), rat(0, 1)),
            GaussianRational::new(rat(3, 4), rat(1, 1)),
        ];
        for g in cases {
            let text = g.to_string();
            assert_eq!(GaussianRational::parse(&text).unwrap(), g, "{text}");
        }
        assert_eq!(
            GaussianRational::parse("i").unwrap(),
            GaussianRational::new(rat(0, 1), rat(1, 1))
        );
    }

    #[test]
    fn gaussian_division_inverts_multiplication() {
        let a = GaussianRational::new(rat(3, 5), rat(-2, 7));
        let b = GaussianRational::new(rat(1, 3), rat(4, 1));
        let product = a.mul(&b);
        assert_eq!(product.div(&b).unwrap(), a);
        assert!(a.div(&Scalar::zero()).is_none());
    }

    #[test]
    fn gaussian_rational_magnitude() {
        // 3+4i has modulus 5
        let g = GaussianRational::new(rat(3, 1), rat(4, 1));
        assert_eq!(g.rational_magnitude().unwrap(), rat(5, 1));
        // 1+i has modulus sqrt(2), not rational
        let h = GaussianRational::new(rat(1, 1), rat(1, 1));
        assert!(h.rational_magnitude().is_none());
        // purely imaginary -2/3 i
        let p = GaussianRational::new(rat(0, 1), rat(-2, 3));
        assert_eq!(p.rational_magnitude().unwrap(), rat(2, 3));
    }

    #[test]
    fn float_epsilon_default() {
        assert_eq!(float_epsilon(), 1e-9);
    }

    #[test]
    fn float_parse_accepts_rational_syntax() {
        assert_eq!(<f64 as Scalar>::parse("1/2").unwrap(), 0.5);
        assert_eq!(<f64 as Scalar>::parse("-3.25").unwrap(), -3.25);
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        // Field axioms hold bit-exactly in the exact modes.
        #[test]
        fn rational_field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let ab_c = Scalar::add(&Scalar::add(&a, &b), &c);
            let a_bc = Scalar::add(&a, &Scalar::add(&b, &c));
            prop_assert_eq!(&ab_c, &a_bc);
            let left = Scalar::mul(&a, &Scalar::add(&b, &c));
            let right = Scalar::add(&Scalar::mul(&a, &b), &Scalar::mul(&a, &c));
            prop_assert_eq!(&left, &right);
            // normalization invariant after arithmetic
            prop_assert!(left.denom() > &BigInt::from(0));
            prop_assert!(num::Integer::gcd(left.numer(), left.denom()) == BigInt::from(1)
                || Zero::is_zero(&left));
        }

        #[test]
        fn gaussian_field_laws(
            (ar, ai, br, bi, cr, ci) in (arb_rat(), arb_rat(), arb_rat(), arb_rat(), arb_rat(), arb_rat())
        ) {
            let a = GaussianRational::new(ar, ai);
            let b = GaussianRational::new(br, bi);
            let c = GaussianRational::new(cr, ci);
            prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !Scalar::is_zero(&b) {
                prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
            }
        }

        #[test]
        fn rational_parse_round_trip(a in arb_rat()) {
            prop_assert_eq!(BigRational::parse(&a.to_string()).unwrap(), a);
        }
    }
}
