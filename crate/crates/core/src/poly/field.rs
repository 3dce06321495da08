use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field `k`: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rational,
    Prime(u32),
}

/// A field element. Prime-field elements carry their modulus so arithmetic
/// needs no context; mixing fields is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp { value: u32, p: u32 },
}

impl BaseField {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Invalid(format!("prime {p} is too large (must be below 2^31)")));
        }
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(BaseField::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            BaseField::Rational => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match *self {
            BaseField::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            BaseField::Prime(p) => Coeff::Fp {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match *self {
            BaseField::Rational => Coeff::Q(BigRational::from_integer(v.clone())),
            BaseField::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Coeff::Fp {
                    value: r.to_u32().expect("reduced residue"),
                    p,
                }
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Invalid(format!("denominator {den} vanishes in {self}")));
        }
        Ok(&self.from_bigint(num) * &d.inv())
    }

    pub fn owns(&self, c: &Coeff) -> bool {
        c.field() == *self
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "Fp {p}"),
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

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> BaseField {
        match self {
            Coeff::Q(_) => BaseField::Rational,
            Coeff::Fp { p, .. } => BaseField::Prime(*p),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Q(q) => Coeff::Q(q.recip()),
            Coeff::Fp { value, p } => Coeff::Fp {
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            },
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative_literal(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_negative(),
            Coeff::Fp { .. } => false,
        }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

fn same_prime(a: u32, b: u32) -> u32 {
    assert_eq!(a, b, "coefficients from different prime fields");
    a
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp { value: a, p }, Coeff::Fp { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Coeff::Fp {
                    value: ((*a as u64 + *b as u64) % p as u64) as u32,
                    p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp { value, p } => Coeff::Fp {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp { value: a, p }, Coeff::Fp { value: b, p: q }) => {
                let p = same_prime(*p, *q);
                Coeff::Fp {
                    value: ((*a as u64 * *b as u64) % p as u64) as u32,
                    p,
                }
            }
            _ => panic!("mixed coefficient fields"),
        }
    }
}
