//! Exact scalars over ℚ, the Gaussian rationals ℚ(i), and prime fields 𝔽_p.
//!
//! Every element carries enough information to know which field it lives in,
//! so mixing fields is caught at run time instead of silently producing garbage.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("malformed literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("modulus {found} does not match field modulus {expected}")]
    ModulusMismatch { expected: u64, found: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("unknown field spec `{0}`")]
    UnknownSpec(String),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    GaussianRationals,
    Prime(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) && p < (1 << 31) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldSpec::GaussianRationals => FieldElement::Gaussian(Box::new((BigRational::from_integer(n.into()), BigRational::zero()))),
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// The imaginary unit; `None` outside ℚ(i).
    pub fn imaginary_unit(self) -> Option<FieldElement> {
        match self {
            FieldSpec::GaussianRationals => Some(FieldElement::Gaussian(Box::new((BigRational::zero(), BigRational::one())))),
            _ => None,
        }
    }

    /// A random element. Over 𝔽_p this is uniform; over ℚ and ℚ(i) the
    /// numerators are small integers so that exact arithmetic stays cheap.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> FieldElement {
        match self {
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: rng.gen_range(0..p),
                modulus: p,
            },
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            FieldSpec::GaussianRationals => {
                let re = BigRational::from_integer(rng.gen_range(-2..=2).into());
                let im = BigRational::from_integer(rng.gen_range(-2..=2).into());
                FieldElement::Gaussian(Box::new((re, im)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::GaussianRationals => write!(f, "qi"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `q`, `qi`, `fp:<p>` and the short form `f<p>`.
    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        match s {
            "q" | "Q" => return Ok(FieldSpec::Rationals),
            "qi" | "Qi" | "Q(i)" => return Ok(FieldSpec::GaussianRationals),
            _ => {}
        }
        let digits = s
            .strip_prefix("fp:")
            .or_else(|| s.strip_prefix('f'))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| FieldError::UnknownSpec(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| FieldError::UnknownSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Gaussian(Box<(BigRational, BigRational)>),
    Prime { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rational_to_residue(r: &BigRational, p: u64) -> Result<u64, FieldError> {
    let pb = BigInt::from(p);
    let num = r.numer().mod_floor(&pb).to_u64().unwrap();
    let den = r.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return Err(FieldError::ZeroDenominator(r.to_string()));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Gaussian(_) => FieldSpec::GaussianRationals,
            FieldElement::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Gaussian(g) => g.0.is_zero() && g.1.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.spec().one()
    }

    pub fn zero_like(&self) -> FieldElement {
        self.spec().zero()
    }

    /// Residue as u64 for elements of 𝔽_p.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Prime { value, .. } => Some(*value),
            _ => None,
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(FieldError::MixedFields(self.spec(), other.spec()))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Gaussian(a), FieldElement::Gaussian(b)) => FieldElement::Gaussian(Box::new((&a.0 + &b.0, &a.1 + &b.1))),
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => {
                let s = a + b;
                FieldElement::Prime {
                    value: if s >= *modulus { s - modulus } else { s },
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Gaussian(a), FieldElement::Gaussian(b)) => {
                let re = &a.0 * &b.0 - &a.1 * &b.1;
                let im = &a.0 * &b.1 + &a.1 * &b.0;
                FieldElement::Gaussian(Box::new((re, im)))
            }
            (FieldElement::Prime { value: a, modulus }, FieldElement::Prime { value: b, .. }) => FieldElement::Prime {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn neg_ref(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Gaussian(a) => FieldElement::Gaussian(Box::new((-&a.0, -&a.1))),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        Ok(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Gaussian(a) => {
                let norm = &a.0 * &a.0 + &a.1 * &a.1;
                FieldElement::Gaussian(Box::new((&a.0 / &norm, -&a.1 / &norm)))
            }
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.checked_mul(&other.inv()?)
    }

    /// Parses a literal in the grammar `int | int/int | (frac)(±)(frac)i | int mod p`.
    ///
    /// Over 𝔽_p a fraction is read as numerator times the inverse of the
    /// denominator. A bare `i` (or `-i`, `1/2i`) is accepted over ℚ(i).
    pub fn parse(literal: &str, spec: FieldSpec) -> Result<FieldElement, FieldError> {
        let text: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(FieldError::Malformed(literal.to_string()));
        }
        if let Some((lhs, rhs)) = text.split_once("mod") {
            let p: u64 = rhs.parse().map_err(|_| FieldError::Malformed(literal.to_string()))?;
            match spec {
                FieldSpec::Prime(q) if q == p => {}
                FieldSpec::Prime(q) => return Err(FieldError::ModulusMismatch { expected: q, found: p }),
                _ => return Err(FieldError::Malformed(literal.to_string())),
            }
            let n = parse_rational(lhs, literal)?;
            return Ok(FieldElement::Prime {
                value: rational_to_residue(&n, p)?,
                modulus: p,
            });
        }
        if text.ends_with('i') {
            if spec != FieldSpec::GaussianRationals {
                return Err(FieldError::Malformed(literal.to_string()));
            }
            let body = &text[..text.len() - 1];
            // split at the last sign that is not leading and not after '/'
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            let (re_txt, im_txt) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let re = parse_rational(re_txt, literal)?;
            let im = match im_txt {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                t => parse_rational(t, literal)?,
            };
            return Ok(FieldElement::Gaussian(Box::new((re, im))));
        }
        let r = parse_rational(&text, literal)?;
        Ok(match spec {
            FieldSpec::Rationals => FieldElement::Rational(r),
            FieldSpec::GaussianRationals => FieldElement::Gaussian(Box::new((r, BigRational::zero()))),
            FieldSpec::Prime(p) => FieldElement::Prime {
                value: rational_to_residue(&r, p)?,
                modulus: p,
            },
        })
    }
}

fn parse_rational(text: &str, literal: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::Malformed(literal.to_string());
    let text = text.strip_prefix('+').unwrap_or(text);
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let valid = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !valid(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::ZeroDenominator(literal.to_string()));
    }
    Ok(BigRational::new(n, d))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{}", fmt_rational(r)),
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
            FieldElement::Gaussian(g) => {
                let (re, im) = (&g.0, &g.1);
                if im.is_zero() {
                    return write!(f, "{}", fmt_rational(re));
                }
                let im_txt = if im.is_one() {
                    String::new()
                } else if *im == -BigRational::one() {
                    "-".to_string()
                } else {
                    fmt_rational(im)
                };
                if re.is_zero() {
                    write!(f, "{im_txt}i")
                } else if im.is_negative() {
                    write!(f, "{}{im_txt}i", fmt_rational(re))
                } else {
                    write!(f, "{}+{im_txt}i", fmt_rational(re))
                }
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        if let (FieldElement::Prime { value, modulus }, FieldElement::Prime { value: b, modulus: m2 }) = (&mut *self, rhs) {
            assert_eq!(*modulus, *m2, "field mismatch");
            let s = *value + b;
            *value = if s >= *modulus { s - *modulus } else { s };
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}
