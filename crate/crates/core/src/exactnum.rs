//! Exact arithmetic over ℚ and the quadratic extension ℚ(√D).
//!
//! Rationals are [`num_rational::BigRational`] values (always reduced, positive
//! denominator). A [`QuadField`] fixes the radicand `D` once for a session;
//! every [`QuadExt`] carries a cheap handle to its field so that mixing
//! numbers from different fields is detected instead of silently producing
//! garbage.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different quadratic fields (D = {left} vs D = {right})")]
    MixedFields { left: String, right: String },
    #[error("radicand must be non-negative, got {0}")]
    NegativeRadicand(String),
    #[error("cannot parse `{0}` as an exact number")]
    Parse(String),
}

/// Builds the rational `numer/denom`. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses an integer, a fraction `p/q`, or a finite decimal such as `-1.75`.
/// Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let err = || ExactError::Parse(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = parse_integer(p).ok_or_else(err)?;
        let q: BigInt = parse_integer(q).ok_or_else(err)?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (negative, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if int_digits.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let all_digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if !all_digits(int_digits) || !all_digits(frac_part) {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac_part}");
        let numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| err())?
        };
        let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    parse_integer(s).map(Rational::from_integer).ok_or_else(err)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

fn sign_of(q: &Rational) -> i8 {
    match q.numer().sign() {
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
        BigSign::Plus => 1,
    }
}

#[derive(Debug)]
struct FieldInner {
    d: Rational,
    sqrt_d: Option<Rational>,
}

/// The field ℚ(√D) for a fixed radicand `D ≥ 0`.
#[derive(Clone, Debug)]
pub struct QuadField(Arc<FieldInner>);

impl QuadField {
    pub fn new(d: Rational) -> Result<Self, ExactError> {
        if d.is_negative() {
            return Err(ExactError::NegativeRadicand(d.to_string()));
        }
        let sqrt_d = rational_sqrt(&d);
        Ok(QuadField(Arc::new(FieldInner { d, sqrt_d })))
    }

    pub fn d(&self) -> &Rational {
        &self.0.d
    }

    /// True when `D` is the square of a rational, i.e. the field is just ℚ.
    pub fn is_rational(&self) -> bool {
        self.0.sqrt_d.is_some()
    }

    pub fn same_as(&self, other: &QuadField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.d == other.0.d
    }

    /// Normalized `r + s·√D`.
    pub fn make(&self, r: Rational, s: Rational) -> QuadExt {
        match &self.0.sqrt_d {
            Some(root) if !s.is_zero() => QuadExt {
                r: r + s * root,
                s: Rational::zero(),
                field: self.clone(),
            },
            _ => QuadExt {
                r,
                s,
                field: self.clone(),
            },
        }
    }

    pub fn rational(&self, r: Rational) -> QuadExt {
        self.make(r, Rational::zero())
    }

    pub fn int(&self, n: i64) -> QuadExt {
        self.rational(rat_int(n))
    }

    pub fn zero(&self) -> QuadExt {
        self.rational(Rational::zero())
    }

    pub fn one(&self) -> QuadExt {
        self.rational(Rational::one())
    }

    pub fn sqrt_d(&self) -> QuadExt {
        self.make(Rational::zero(), Rational::one())
    }

    /// Parses `r`, `s*sqrt(D)` or `r+s*sqrt(D)` (also with `-`). The radicand
    /// written inside `sqrt(...)` must equal this field's `D`.
    pub fn parse(&self, text: &str) -> Result<QuadExt, ExactError> {
        let err = || ExactError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(star) = compact.find("*sqrt(") else {
            return Ok(self.rational(parse_rational(&compact)?));
        };
        let radicand = compact[star + 6..].strip_suffix(')').ok_or_else(err)?;
        let radicand = parse_rational(radicand)?;
        if radicand != self.0.d {
            return Err(ExactError::MixedFields {
                left: self.0.d.to_string(),
                right: radicand.to_string(),
            });
        }
        let head = &compact[..star];
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (r, s) = match split {
            Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
            None => (Rational::zero(), parse_rational(head)?),
        };
        Ok(self.make(r, s))
    }
}

/// An element `r + s·√D` of a [`QuadField`].
#[derive(Clone)]
pub struct QuadExt {
    r: Rational,
    s: Rational,
    field: QuadField,
}

impl QuadExt {
    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    /// The rational value, when the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.s.is_zero().then_some(&self.r)
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign(&self) -> i8 {
        let rs = sign_of(&self.r);
        let ss = sign_of(&self.s);
        if ss == 0 {
            return rs;
        }
        if rs == 0 || rs == ss {
            return ss;
        }
        // r and s√D have opposite signs: the larger square wins.
        let r2 = &self.r * &self.r;
        let s2d = &self.s * &self.s * &self.field.0.d;
        match r2.cmp(&s2d) {
            Ordering::Greater => rs,
            Ordering::Less => ss,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> QuadExt {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest-float rendering. Not authoritative: never feed it back into a
    /// predicate.
    pub fn to_f64(&self) -> f64 {
        let r = self.r.to_f64().unwrap_or(f64::NAN);
        if self.s.is_zero() {
            return r;
        }
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let d = self.field.0.d.to_f64().unwrap_or(f64::NAN);
        r + s * d.sqrt()
    }

    fn check_field(&self, other: &QuadExt) -> Result<(), ExactError> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(ExactError::MixedFields {
                left: self.field.0.d.to_string(),
                right: other.field.0.d.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_field(other)?;
        if self.s.is_zero() && other.s.is_zero() {
            return Ok(self.field.rational(&self.r + &other.r));
        }
        Ok(QuadExt {
            r: &self.r + &other.r,
            s: &self.s + &other.s,
            field: self.field.clone(),
        })
    }

    pub fn try_sub(&self, other: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_field(other)?;
        if self.s.is_zero() && other.s.is_zero() {
            return Ok(self.field.rational(&self.r - &other.r));
        }
        Ok(QuadExt {
            r: &self.r - &other.r,
            s: &self.s - &other.s,
            field: self.field.clone(),
        })
    }

    pub fn try_mul(&self, other: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_field(other)?;
        if self.s.is_zero() && other.s.is_zero() {
            return Ok(self.field.rational(&self.r * &other.r));
        }
        let d = &self.field.0.d;
        Ok(QuadExt {
            r: &self.r * &other.r + &self.s * &other.s * d,
            s: &self.r * &other.s + &self.s * &other.r,
            field: self.field.clone(),
        })
    }

    /// Multiplicative inverse via the conjugate.
    pub fn recip(&self) -> Result<QuadExt, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.s.is_zero() {
            return Ok(self.field.rational(self.r.recip()));
        }
        // For normalized values the norm vanishes only at zero.
        let norm = &self.r * &self.r - &self.s * &self.s * &self.field.0.d;
        Ok(QuadExt {
            r: &self.r / &norm,
            s: -(&self.s / &norm),
            field: self.field.clone(),
        })
    }

    pub fn try_div(&self, other: &QuadExt) -> Result<QuadExt, ExactError> {
        self.check_field(other)?;
        self.try_mul(&other.recip()?)
    }

    pub fn mul_rational(&self, q: &Rational) -> QuadExt {
        if self.s.is_zero() {
            return self.field.rational(&self.r * q);
        }
        QuadExt {
            r: &self.r * q,
            s: &self.s * q,
            field: self.field.clone(),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> QuadExt {
        QuadExt {
            r: &self.r + q,
            s: self.s.clone(),
            field: self.field.clone(),
        }
    }

    /// Exact comparison; `None` for operands from different fields.
    pub fn cmp_exact(&self, other: &QuadExt) -> Option<Ordering> {
        self.try_sub(other).ok().map(|d| d.sign().cmp(&0))
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.r == other.r && self.s == other.s
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other)
    }
}

impl std::hash::Hash for QuadExt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.r.hash(state);
        self.s.hash(state);
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return write!(f, "{}", self.r);
        }
        let d = &self.field.0.d;
        if self.r.is_zero() {
            return write!(f, "{}*sqrt({})", self.s, d);
        }
        if self.s.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.r, -&self.s, d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.r, self.s, d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            /// Panics when the operands belong to different fields; use the
            /// `try_*` methods to handle that case.
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("mixed quadratic fields")
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            r: -&self.r,
            s: -&self.s,
            field: self.field.clone(),
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}
