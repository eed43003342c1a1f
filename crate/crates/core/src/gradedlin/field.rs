//! Exact ground-field scalars: rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field. `Prime(p)` is only constructed through [`Field::prime`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp {
                r: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num.into(), den.into()))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                let inv = d
                    .inverse()
                    .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes mod p")))?;
                Ok(self.from_i64(num) * inv)
            }
        }
    }

    /// Parses `"a"`, `"a/b"` or `"r mod p"`; the latter must name this field's prime.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((r, p)) = s.split_once("mod") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in scalar {s:?}")))?;
            if self != Field::Prime(p) {
                return Err(Error::Parse(format!(
                    "scalar {s:?} does not belong to field {self}"
                )));
            }
            let r: i64 = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in scalar {s:?}")))?;
            return Ok(self.from_i64(r));
        }
        match self {
            Field::Rational => {
                let q = BigRational::from_str(s)
                    .map_err(|_| Error::Parse(format!("bad rational scalar {s:?}")))?;
                Ok(Scalar::Q(q))
            }
            Field::Prime(_) => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: i64 = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
                let d: i64 = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
                self.from_ratio(n, d)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F5`, `Fp:5`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 || p > u32::MAX as u64 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Arithmetic between different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { r: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { r, .. } => *r == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { r, p } => Scalar::Fp {
                r: pow_mod(*r, *p - 2, *p),
                p: *p,
            },
        })
    }

    /// Absolute value for rationals; the residue itself over `F_p`.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.abs()),
            other => other.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { r, .. } => Some(*r as i64),
        }
    }

    /// Multiplies by `(-1)^e`.
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    /// Serialized form: `"a/b"` (or `"a"`) for rationals, `"r mod p"` otherwise.
    pub fn to_wire(&self) -> String {
        match self {
            Scalar::Q(q) => q.to_string(),
            Scalar::Fp { r, p } => format!("{r} mod {p}"),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { r, .. } => write!(f, "{r}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => Scalar::Fp {
                r: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => *a = (*a + b) % *p,
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { r: a, p }, Scalar::Fp { r: b, p: q }) if p == q => Scalar::Fp {
                r: a * b % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { r, p } => Scalar::Fp { r: (p - r) % p, p },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("F6".parse::<Field>().is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn rational_scalars_are_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/4").unwrap();
        assert_eq!(a.to_wire(), "3/2");
        assert_eq!((a.clone() * q.from_i64(2)).to_wire(), "3");
        assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn residues_stay_in_range() {
        let f = Field::Prime(5);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Fp { r: 2, p: 5 });
        assert_eq!(f.parse_scalar("3 mod 5").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("3 mod 7").is_err());
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        let inv = f.from_i64(2).inverse().unwrap();
        assert!((inv * f.from_i64(2)).is_one());
        assert_eq!(f.from_i64(3).to_wire(), "3 mod 5");
    }
}
