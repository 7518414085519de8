//! Gaussian-rational scalars, the ground field of every computation.

use crate::error::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational number. Always stored reduced with positive
/// denominator, so equality is structural.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse a rational literal of the form `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        message: format!("invalid rational literal {s:?}"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
    let den = match den_str {
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse {
            message: format!("zero denominator in {s:?}"),
        });
    }
    Ok(Rat::new(num, den))
}

/// Canonical display for a rational: `p` when the denominator is 1, else `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A Gaussian rational `re + im·i`. Both parts are reduced rationals, so
/// equality is structural and all field operations are exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        CRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn from_pair(re: (i64, i64), im: (i64, i64)) -> Self {
        CRat {
            re: rat(re.0, re.1),
            im: rat(im.0, im.1),
        }
    }

    pub fn i() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn conj(&self) -> Self {
        CRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus `re² + im²`, a non-negative rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact multiplicative inverse. Division by zero is an error, never a
    /// NaN-like value.
    pub fn inv(&self) -> Result<CRat, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(CRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &CRat) -> Result<CRat, Error> {
        Ok(self.clone() * rhs.inv()?)
    }
}

impl Zero for CRat {
    fn zero() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CRat {
    fn one() -> Self {
        CRat {
            re: Rat::one(),
            im: Rat::zero(),
        }
    }
}

impl Add for CRat {
    type Output = CRat;
    fn add(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for CRat {
    type Output = CRat;
    fn sub(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for CRat {
    type Output = CRat;
    fn mul(self, rhs: CRat) -> CRat {
        CRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Panics on division by zero; callers that cannot rule that out must go
/// through `checked_div` or `inv`.
impl Div for CRat {
    type Output = CRat;
    fn div(self, rhs: CRat) -> CRat {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl<'a> Add<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn add(self, rhs: &CRat) -> CRat {
        self.clone() + rhs.clone()
    }
}

impl<'a> Mul<&'a CRat> for &'a CRat {
    type Output = CRat;
    fn mul(self, rhs: &CRat) -> CRat {
        CRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", rat_to_string(&self.re));
        }
        let im_mag = self.im.abs();
        let im_part = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}i", rat_to_string(&im_mag))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_part}")
            } else {
                write!(f, "{im_part}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", rat_to_string(&self.re), sign, im_part)
        }
    }
}

impl FromStr for CRat {
    type Err = Error;

    /// Parse a Gaussian-rational literal: `p/q`, `p/q+r/si`, `i`, `-i`,
    /// `3i`, `1-i`, ... Floats and any other notation are rejected.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                message: "empty scalar literal".into(),
            });
        }
        // Split into at most two signed terms.
        let bytes = s.as_bytes();
        let mut split_at = None;
        for (k, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[k - 1] != b'/' && bytes[k - 1] != b'+' {
                split_at = Some(k);
                break;
            }
        }
        let terms: Vec<&str> = match split_at {
            Some(k) => vec![&s[..k], &s[k..]],
            None => vec![s],
        };
        let mut re: Option<Rat> = None;
        let mut im: Option<Rat> = None;
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'+' => (Rat::one(), &term[1..]),
                b'-' => (-Rat::one(), &term[1..]),
                _ => (Rat::one(), term),
            };
            let body = body.trim();
            if let Some(mag) = body.strip_suffix('i') {
                if im.is_some() {
                    return Err(Error::Parse {
                        message: format!("duplicate imaginary part in {s:?}"),
                    });
                }
                let mag = if mag.is_empty() {
                    Rat::one()
                } else {
                    parse_rat(mag)?
                };
                im = Some(sign * mag);
            } else {
                if re.is_some() {
                    return Err(Error::Parse {
                        message: format!("duplicate real part in {s:?}"),
                    });
                }
                re = Some(sign * parse_rat(body)?);
            }
        }
        Ok(CRat {
            re: re.unwrap_or_else(Rat::zero),
            im: im.unwrap_or_else(Rat::zero),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: (i64, i64), im: (i64, i64)) -> CRat {
        CRat::from_pair(re, im)
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in [
            "0", "1", "-2", "1/3", "-5/7", "i", "-i", "2i", "-1/2i", "1/3+2/5i", "1/3-2/5i",
            "1+i", "-1-i", "7/2+i",
        ] {
            let v: CRat = text.parse().unwrap();
            assert_eq!(v.to_string(), text, "canonical form of {text}");
            let again: CRat = v.to_string().parse().unwrap();
            assert_eq!(again, v);
        }
    }

    #[test]
    fn parse_spec_literal() {
        let v: CRat = "1/3+2/5i".parse().unwrap();
        assert_eq!(v, c((1, 3), (2, 5)));
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "1.5", "1/0", "i+i", "1+2", "2x", "--1"] {
            assert!(text.parse::<CRat>().is_err(), "{text:?} should be rejected");
        }
    }

    #[test]
    fn canonical_reduced_form() {
        let a = CRat::new(rat(2, 4), rat(-6, 9));
        assert_eq!(a, c((1, 2), (-2, 3)));
        assert_eq!(a.to_string(), "1/2-2/3i");
    }

    #[test]
    fn field_ops_exact() {
        let a = c((1, 3), (2, 5));
        let b = c((-4, 7), (1, 2));
        let prod = a.clone() * b.clone();
        // (1/3 + 2/5 i)(-4/7 + 1/2 i) = (-4/21 - 1/5) + (1/6 - 8/35) i
        assert_eq!(prod, c((-41, 105), (-13, 210)));
        let back = prod.checked_div(&b).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.clone() * a.inv().unwrap(), CRat::one());
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(CRat::zero().inv().is_err());
        assert!(CRat::one().checked_div(&CRat::zero()).is_err());
    }

    #[test]
    fn conjugation() {
        let a = c((1, 2), (3, 4));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() * a.conj()).im, Rat::zero());
        assert_eq!(a.clone() * a.conj(), CRat::from_rat(a.norm_sq()));
    }
}
