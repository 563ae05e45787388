//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Every scalar carries its field. Arithmetic between scalars of different
//! fields is a programming error; the checked `try_*` entry points report it
//! as [`Error::FieldMismatch`], the operator forms panic. All arithmetic is
//! exact: rationals are arbitrary-precision and kept in lowest terms with a
//! positive denominator, prime-field values are reduced representatives in
//! `0..p`.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Coefficient field: the rationals or a prime field of the given modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Fp(u64),
}

impl FieldSpec {
    /// Parses a field tag: `rational` or `fp:<p>` with `p` prime.
    pub fn parse(tag: &str) -> Result<FieldSpec> {
        if tag == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = tag.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::UnsupportedField(format!("bad modulus in {tag:?}")))?;
            if !is_prime(p) {
                return Err(Error::UnsupportedField(format!("{p} is not prime")));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::UnsupportedField(format!(
            "unknown field tag {tag:?} (expected \"rational\" or \"fp:<p>\")"
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { p: *p, val: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { p: *p, val: 1 % *p },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: r }
            }
        }
    }

    /// Parses a scalar in this field's serialization: `a/b` or `a` over the
    /// rationals, a reduced representative `r` over a prime field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rational => {
                let r = if let Some((num, den)) = s.split_once('/') {
                    let n = BigInt::from_str(num.trim())
                        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                    let d = BigInt::from_str(den.trim())
                        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    BigRational::new(n, d)
                } else {
                    let n = BigInt::from_str(s)
                        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                    BigRational::from_integer(n)
                };
                Ok(Scalar::Rational(r))
            }
            FieldSpec::Fp(p) => {
                let neg = s.starts_with('-');
                let body = if neg { &s[1..] } else { s };
                let v: u64 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                let v = v % *p;
                Ok(Scalar::Fp {
                    p: *p,
                    val: if neg { (*p - v) % *p } else { v },
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    /// The canonical residue in `0..p`; None for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Fp { val, .. } => Some(*val),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Fp { p, val } => *val == 1 % *p,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field(),
                other.field()
            )))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: addmod(*a, *b, *p),
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: addmod(*a, *p - *b, *p),
            },
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: mulmod(*a, *b, *p),
            },
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { *p - *val },
            },
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: invmod(*val, *p),
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar field mismatch")
            }
        }
    };
}
scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse mod prime p by extended Euclid; caller guarantees val != 0.
fn invmod(val: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, val as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime and value nonzero");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set decides primality for all u64.
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
