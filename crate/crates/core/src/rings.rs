//! Coefficient rings: the prime field F_p and the rationals.
//!
//! Series and polynomials elsewhere in the crate are generic over
//! [`CoeffRing`], a context object that knows how to build and combine
//! its elements. The prime field keeps its modulus inside every
//! [`Residue`] so that mixing two primes is detected rather than coerced.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// A prime number small enough for trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 != 2
    }

    /// Returns `Err(OddPrimeRequired)` for p = 2.
    pub fn require_odd(self) -> Result<Self> {
        if self.is_odd() {
            Ok(self)
        } else {
            Err(Error::OddPrimeRequired(self.0))
        }
    }

    /// Powers p, p^2, p^3, ... strictly below `bound`.
    pub fn powers_below(self, bound: usize) -> impl Iterator<Item = usize> {
        let p = self.0 as usize;
        std::iter::successors(Some(p), move |&q| q.checked_mul(p)).take_while(move |&q| q < bound)
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, p: Prime) -> Self {
        let m = p.get() as i64;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus: p.get(),
        }
    }

    pub fn zero(p: Prime) -> Self {
        Residue {
            value: 0,
            modulus: p.get(),
        }
    }

    pub fn one(p: Prime) -> Self {
        Residue {
            value: 1,
            modulus: p.get(),
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn prime(self) -> Prime {
        Prime(self.modulus)
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Residue) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: format!("F_{}", self.modulus),
                right: format!("F_{}", other.modulus),
            })
        }
    }

    pub fn checked_add(self, other: Residue) -> Result<Residue> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(self, other: Residue) -> Result<Residue> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other.neg()))
    }

    pub fn checked_mul(self, other: Residue) -> Result<Residue> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self) -> Result<Residue> {
        residue_inverse(self)
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue {
            value: 1 % self.modulus,
            modulus: self.modulus,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(base);
            }
            base = base.mul_unchecked(base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn add_unchecked(self, other: Residue) -> Residue {
        let s = self.value + other.value;
        Residue {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul_unchecked(self, other: Residue) -> Residue {
        Residue {
            value: ((self.value as u128 * other.value as u128) % self.modulus as u128) as u64,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn residue_inverse(a: Residue) -> Result<Residue> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    Ok(a.pow(a.modulus - 2))
}

/// p-adic valuation of a rational; zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_p_integral(self) -> bool {
        self >= Valuation::Finite(0)
    }
}

fn multiplicity(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

pub fn p_adic_valuation(q: &BigRational, p: Prime) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinity;
    }
    Valuation::Finite(multiplicity(q.numer(), p.get()) - multiplicity(q.denom(), p.get()))
}

fn bigint_mod(n: &BigInt, p: Prime) -> Residue {
    let r = n.mod_floor(&BigInt::from(p.get()));
    Residue {
        value: r.to_u64().expect("remainder fits in u64"),
        modulus: p.get(),
    }
}

/// Image of a p-integral rational in F_p.
pub fn reduce_rational_mod_p(q: &BigRational, p: Prime) -> Result<Residue> {
    match p_adic_valuation(q, p) {
        Valuation::Infinity => Ok(Residue::zero(p)),
        Valuation::Finite(v) if v > 0 => Ok(Residue::zero(p)),
        Valuation::Finite(0) => {
            let num = bigint_mod(q.numer(), p);
            let den = bigint_mod(q.denom(), p);
            Ok(num.mul_unchecked(residue_inverse(den)?))
        }
        Valuation::Finite(_) => Err(Error::NotPIntegral {
            value: q.to_string(),
            prime: p.get(),
        }),
    }
}

/// Context object for a commutative coefficient ring.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    /// Whether `a` belongs to this ring (same modulus for residues).
    fn contains(&self, a: &Self::Elem) -> bool;
    fn name(&self) -> String;
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField(pub Prime);

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Ok(PrimeField(Prime::new(p)?))
    }

    pub fn prime(&self) -> Prime {
        self.0
    }

    pub fn elem(&self, v: i64) -> Residue {
        Residue::new(v, self.0)
    }
}

impl CoeffRing for PrimeField {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        Residue::zero(self.0)
    }
    fn one(&self) -> Residue {
        Residue::one(self.0)
    }
    fn from_i64(&self, n: i64) -> Residue {
        Residue::new(n, self.0)
    }
    #[inline]
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        a.add_unchecked(*b)
    }
    #[inline]
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        a.add_unchecked(b.neg())
    }
    #[inline]
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        a.mul_unchecked(*b)
    }
    fn neg(&self, a: &Residue) -> Residue {
        a.neg()
    }
    fn is_zero(&self, a: &Residue) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Residue) -> Result<Residue> {
        residue_inverse(*a)
    }
    fn contains(&self, a: &Residue) -> bool {
        a.modulus == self.0.get()
    }
    fn name(&self) -> String {
        format!("F_{}", self.0)
    }
}

/// The field of rational numbers, with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }
    fn contains(&self, _a: &BigRational) -> bool {
        true
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// Shorthand for the rational `num/den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
