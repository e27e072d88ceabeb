//! Exact p-adic rationals.
//!
//! A [`PadicRational`] is an element of ℚ carrying the prime it is viewed
//! under and its cached p-adic valuation. All arithmetic is exact, so every
//! predicate on norms, leading digits and discriminants is decided without
//! precision management.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime p > 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 {
            if primal_check::miller_rabin(p) {
                return Err(Error::PrimeTooSmall(p));
            }
            return Err(Error::NotPrime(p));
        }
        if !primal_check::miller_rabin(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^e` as a big integer.
    pub fn pow(self, e: u32) -> BigInt {
        num_traits::pow(self.to_bigint(), e as usize)
    }

    /// Residue class of a machine integer in `{0, …, p-1}`.
    pub fn reduce(self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.0 as i128) as u64
    }

    /// Residue class of a big integer in `{0, …, p-1}`.
    pub fn reduce_big(self, x: &BigInt) -> u64 {
        x.mod_floor(&self.to_bigint())
            .to_u64()
            .expect("residue below p fits in u64")
    }

    #[inline]
    pub fn add_mod(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub_mod(self, a: u64, b: u64) -> u64 {
        let p = self.0 as u128;
        ((a as u128 % p + p - b as u128 % p) % p) as u64
    }

    #[inline]
    pub fn mul_mod(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn neg_mod(self, a: u64) -> u64 {
        self.sub_mod(0, a)
    }

    pub fn pow_mod(self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_mod(acc, b);
            }
            b = self.mul_mod(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse in F_p via Fermat.
    pub fn inv_mod(self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.0) {
            return Err(Error::ZeroResidue);
        }
        Ok(self.pow_mod(a, self.0 - 2))
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

/// p-adic order; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// True when the valuation is at least `n`.
    pub fn at_least(self, n: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= n,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Strips every factor of `p` from `n`; returns the count and the cofactor.
pub(crate) fn split_p_power(n: &BigInt, p: &BigInt) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut count = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (count, m);
        }
        m = q;
        count += 1;
    }
}

/// p-adic valuation of a rational, `Infinite` for zero.
pub fn rational_valuation(x: &BigRational, prime: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = prime.to_bigint();
    let (vn, _) = split_p_power(x.numer(), &p);
    let (vd, _) = split_p_power(x.denom(), &p);
    Valuation::Finite(vn as i64 - vd as i64)
}

/// `x mod p^n` for a rational with non-negative valuation, as an integer in `[0, p^n)`.
pub fn rational_mod_pow(x: &BigRational, prime: Prime, n: u32) -> Result<BigInt> {
    let modulus = prime.pow(n);
    if x.is_zero() {
        return Ok(BigInt::zero());
    }
    if let Valuation::Finite(v) = rational_valuation(x, prime) {
        if v < 0 {
            return Err(Error::NotIntegral(v));
        }
    }
    let den = x.denom().mod_floor(&modulus);
    let inv = den
        .modinv(&modulus)
        .expect("denominator is coprime to p for an integral rational");
    Ok((x.numer() * inv).mod_floor(&modulus))
}

/// An exact rational viewed as an element of ℚ_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicRational {
    prime: Prime,
    value: BigRational,
    valuation: Valuation,
}

impl PadicRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>, prime: Prime) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_rational(
            BigRational::new(num.into(), den),
            prime,
        ))
    }

    pub fn from_rational(value: BigRational, prime: Prime) -> Self {
        let valuation = rational_valuation(&value, prime);
        PadicRational {
            prime,
            value,
            valuation,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>, prime: Prime) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), prime)
    }

    pub fn zero(prime: Prime) -> Self {
        Self::from_integer(0, prime)
    }

    pub fn one(prime: Prime) -> Self {
        Self::from_integer(1, prime)
    }

    /// `p^k` for any integer `k`.
    pub fn prime_power(prime: Prime, k: i64) -> Self {
        let pk = prime.pow(k.unsigned_abs() as u32);
        let value = if k >= 0 {
            BigRational::from_integer(pk)
        } else {
            BigRational::new(BigInt::one(), pk)
        };
        PadicRational {
            prime,
            value,
            valuation: Valuation::Finite(k),
        }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn valuation(&self) -> Valuation {
        self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_infinite()
    }

    fn finite_valuation(&self) -> Result<i64> {
        self.valuation.finite().ok_or(Error::ZeroArgument)
    }

    /// `log_p |x|_p = -ord_p(x)`.
    pub fn norm_exponent(&self) -> Result<i64> {
        Ok(-self.finite_valuation()?)
    }

    /// The unit `u` with `x = u · p^{ord_p(x)}`.
    pub fn unit_part(&self) -> Result<PadicRational> {
        let v = self.finite_valuation()?;
        Ok(self.mul_pow_p(-v))
    }

    /// Leading canonical digit `x₀ ∈ {1, …, p-1}` of the unit part.
    pub fn leading_digit(&self) -> Result<u64> {
        let u = self.unit_part()?;
        let num = self.prime.reduce_big(u.value.numer());
        let den = self.prime.reduce_big(u.value.denom());
        Ok(self.prime.mul_mod(num, self.prime.inv_mod(den)?))
    }

    /// `x · p^k`.
    pub fn mul_pow_p(&self, k: i64) -> PadicRational {
        let pk = self.prime.pow(k.unsigned_abs() as u32);
        let value = if k >= 0 {
            &self.value * BigRational::from_integer(pk)
        } else {
            &self.value / BigRational::from_integer(pk)
        };
        let valuation = match self.valuation {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinite => Valuation::Infinite,
        };
        PadicRational {
            prime: self.prime,
            value,
            valuation,
        }
    }

    /// First `n` canonical digits of the unit part.
    pub fn digits(&self, n: usize) -> Result<DigitExpansion> {
        let v = self.finite_valuation()?;
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let unit = self.mul_pow_p(-v);
        let residue = rational_mod_pow(&unit.value, self.prime, n as u32)?;
        let digits = DigitExpansion::base_p_digits(&residue, self.prime, n);
        debug_assert_ne!(digits[0], 0);
        Ok(DigitExpansion {
            prime: self.prime,
            valuation: v,
            digits,
        })
    }

    /// `x mod p^n` for `x ∈ ℤ_p`.
    pub fn residue_mod_pow(&self, n: u32) -> Result<BigInt> {
        rational_mod_pow(&self.value, self.prime, n)
    }

    pub fn inv(&self) -> Result<PadicRational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PadicRational {
            prime: self.prime,
            value: self.value.recip(),
            valuation: Valuation::Finite(-self.finite_valuation()?),
        })
    }

    pub fn checked_div(&self, rhs: &PadicRational) -> Result<PadicRational> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> PadicRational {
        let mut acc = PadicRational::one(self.prime);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_prime(&self, other: &PadicRational) {
        assert_eq!(
            self.prime, other.prime,
            "p-adic operands must share the same prime"
        );
    }
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for &PadicRational {
    type Output = PadicRational;
    fn add(self, rhs: &PadicRational) -> PadicRational {
        self.check_prime(rhs);
        PadicRational::from_rational(&self.value + &rhs.value, self.prime)
    }
}

impl Sub for &PadicRational {
    type Output = PadicRational;
    fn sub(self, rhs: &PadicRational) -> PadicRational {
        self.check_prime(rhs);
        PadicRational::from_rational(&self.value - &rhs.value, self.prime)
    }
}

impl Mul for &PadicRational {
    type Output = PadicRational;
    fn mul(self, rhs: &PadicRational) -> PadicRational {
        self.check_prime(rhs);
        let valuation = match (self.valuation, rhs.valuation) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        };
        PadicRational {
            prime: self.prime,
            value: &self.value * &rhs.value,
            valuation,
        }
    }
}

impl Neg for &PadicRational {
    type Output = PadicRational;
    fn neg(self) -> PadicRational {
        PadicRational {
            prime: self.prime,
            value: -&self.value,
            valuation: self.valuation,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PadicRational {
            type Output = PadicRational;
            fn $m(self, rhs: PadicRational) -> PadicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PadicRational {
    type Output = PadicRational;
    fn neg(self) -> PadicRational {
        -&self
    }
}

/// Truncated canonical expansion `p^v (d₀ + d₁p + … + d_{n-1}p^{n-1}) + O(p^{v+n})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitExpansion {
    pub prime: Prime,
    pub valuation: i64,
    pub digits: Vec<u64>,
}

impl DigitExpansion {
    pub(crate) fn base_p_digits(residue: &BigInt, prime: Prime, n: usize) -> Vec<u64> {
        let p = BigUint::from(prime.get());
        let mut m = residue
            .to_biguint()
            .expect("residue is reduced to [0, p^n)");
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let (q, r) = m.div_rem(&p);
            out.push(r.to_u64().expect("digit below p"));
            m = q;
        }
        out
    }

    /// Builds an expansion of a unit from its residue modulo `p^n`.
    pub fn from_unit_residue(residue: &BigInt, valuation: i64, prime: Prime, n: usize) -> Self {
        let modulus = prime.pow(n as u32);
        let residue = residue.mod_floor(&modulus);
        DigitExpansion {
            prime,
            valuation,
            digits: Self::base_p_digits(&residue, prime, n),
        }
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// `Σ dᵢ pⁱ` as an integer in `[0, p^n)`.
    pub fn unit_residue(&self) -> BigInt {
        let p = self.prime.to_bigint();
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &p + BigInt::from(d))
    }

    /// The represented rational `p^v · Σ dᵢ pⁱ` (exact up to `O(p^{v+n})`).
    pub fn to_padic(&self) -> PadicRational {
        PadicRational::from_integer(self.unit_residue(), self.prime).mul_pow_p(self.valuation)
    }

    /// Number of leading digits on which two expansions agree.
    pub fn agreement(&self, other: &DigitExpansion) -> usize {
        if self.valuation != other.valuation {
            return 0;
        }
        self.digits
            .iter()
            .zip(&other.digits)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn truncated(&self, n: usize) -> DigitExpansion {
        DigitExpansion {
            prime: self.prime,
            valuation: self.valuation,
            digits: self.digits[..n.min(self.digits.len())].to_vec(),
        }
    }
}

impl fmt::Display for DigitExpansion {
    /// Renders `d₀ + d₁·p + d₂·p^2 + … + O(p^n)` for the unit part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime.get();
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{d}")?,
                1 => write!(f, "{d}·{p}")?,
                _ => write!(f, "{d}·{p}^{i}")?,
            }
        }
        write!(f, " + O({p}^{})", self.digits.len())
    }
}

/// Signed integer helper for display of rationals in reports.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.numer().sign() == Sign::Minus {
        format!("-{}/{}", x.numer().abs(), x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
