//! Polynomials over GF(2).
//!
//! Coefficients are bit-packed into 64-bit limbs, lowest power first. The
//! limb vector is always trimmed so that the highest stored limb is nonzero;
//! the zero polynomial has no limbs.

mod classify;
mod factor;
mod parse;

pub use classify::{
    classify, count_irreducible_with_exponent, enumerate_irreducible, exponent, has_exponent, ord2, PolynomialClass,
    PolynomialKind,
};
pub use factor::{factor, is_irreducible, is_squarefree};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of GF(2)[x].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    limbs: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { limbs: vec![1] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self { limbs: vec![2] }
    }

    pub fn monomial(power: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(power, true);
        p
    }

    /// Builds a polynomial from the low `64` coefficients packed in `bits`.
    pub fn from_u64(bits: u64) -> Self {
        let mut p = Self { limbs: vec![bits] };
        p.trim();
        p
    }

    /// Builds a polynomial from the powers with coefficient one. Repeated
    /// powers cancel.
    pub fn from_powers(powers: &[usize]) -> Self {
        let mut p = Self::zero();
        for &k in powers {
            p.flip_coeff(k);
        }
        p
    }

    /// Builds a polynomial from coefficients, lowest power first.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            if c {
                p.set_coeff(k, true);
            }
        }
        p
    }

    pub(crate) fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Self { limbs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// Low 64 coefficients as a packed integer.
    pub fn low_u64(&self) -> u64 {
        self.limbs.first().copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.limbs.last()?;
        Some(64 * (self.limbs.len() - 1) + 63 - last.leading_zeros() as usize)
    }

    /// Degree with the zero polynomial mapped to 0. Callers that need to
    /// tell zero and one apart should use [`degree`](Self::degree).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn coeff(&self, power: usize) -> bool {
        self.limbs.get(power / 64).is_some_and(|l| (l >> (power % 64)) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    pub fn set_coeff(&mut self, power: usize, value: bool) {
        let idx = power / 64;
        if value {
            if self.limbs.len() <= idx {
                self.limbs.resize(idx + 1, 0);
            }
            self.limbs[idx] |= 1 << (power % 64);
        } else if idx < self.limbs.len() {
            self.limbs[idx] &= !(1 << (power % 64));
            self.trim();
        }
    }

    fn flip_coeff(&mut self, power: usize) {
        let v = !self.coeff(power);
        self.set_coeff(power, v);
    }

    /// Powers with nonzero coefficient, in increasing order.
    pub fn powers(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &limb) in self.limbs.iter().enumerate() {
            let mut l = limb;
            while l != 0 {
                let b = l.trailing_zeros() as usize;
                out.push(64 * i + b);
                l &= l - 1;
            }
        }
        out
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.limbs.iter().map(|l| l.count_ones()).sum()
    }

    /// `self ^= other * x^shift`.
    pub(crate) fn xor_shifted(&mut self, other: &Self, shift: usize) {
        if other.is_zero() {
            return;
        }
        let word = shift / 64;
        let bit = shift % 64;
        let needed = other.limbs.len() + word + usize::from(bit != 0);
        if self.limbs.len() < needed {
            self.limbs.resize(needed, 0);
        }
        if bit == 0 {
            for (i, &l) in other.limbs.iter().enumerate() {
                self.limbs[word + i] ^= l;
            }
        } else {
            for (i, &l) in other.limbs.iter().enumerate() {
                self.limbs[word + i] ^= l << bit;
                self.limbs[word + i + 1] ^= l >> (64 - bit);
            }
        }
        self.trim();
    }

    pub fn shl(&self, shift: usize) -> Self {
        let mut out = Self::zero();
        out.xor_shifted(self, shift);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Iterate over the sparser operand.
        let (a, b) = if self.weight() <= other.weight() { (self, other) } else { (other, self) };
        let mut out = Self { limbs: vec![0; a.limbs.len() + b.limbs.len() + 1] };
        for k in a.powers() {
            out.xor_shifted(b, k);
        }
        out.trim();
        out
    }

    pub fn square(&self) -> Self {
        // Squaring over GF(2) spreads the bits: (Σ a_i x^i)^2 = Σ a_i x^{2i}.
        let mut limbs = vec![0u64; 2 * self.limbs.len()];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[2 * i] = spread_bits(l as u32);
            limbs[2 * i + 1] = spread_bits((l >> 32) as u32);
        }
        Self::from_limbs(limbs)
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            quot.set_coeff(dr - db, true);
            rem.xor_shifted(divisor, dr - db);
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            rem.xor_shifted(divisor, dr - db);
        }
        Ok(rem)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd. Over GF(2) every nonzero polynomial is monic.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let g = self.gcd(other)?;
        let (q, _) = self.divmod(&g)?;
        Ok(q.mul(other))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// `self^k mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut k: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one().rem(modulus)?;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.square().rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `x^(2^k) mod modulus`.
    pub fn x_pow_two_pow_mod(k: usize, modulus: &Self) -> Result<Self> {
        let mut acc = Self::x().rem(modulus)?;
        for _ in 0..k {
            acc = acc.square().rem(modulus)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        // d/dx x^k = k x^{k-1}; only odd k survive in characteristic 2.
        let mut out = Self::zero();
        for k in self.powers() {
            if k % 2 == 1 {
                out.set_coeff(k - 1, true);
            }
        }
        out
    }

    /// Square root of a polynomial whose odd coefficients are all zero.
    pub(crate) fn sqrt_even(&self) -> Self {
        let mut out = Self::zero();
        for k in self.powers() {
            debug_assert!(k % 2 == 0);
            out.set_coeff(k / 2, true);
        }
        out
    }

    /// Reciprocal `x^deg f(1/x)`.
    pub fn reciprocal(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => Self::from_powers(&self.powers().iter().map(|k| d - k).collect::<Vec<_>>()),
        }
    }

    /// Coefficients `c_1..c_n` of the recurrence `a_k = Σ c_i a_{k-i}`.
    pub fn taps(&self) -> Vec<bool> {
        (1..=self.deg()).map(|i| self.coeff(i)).collect()
    }

    /// Compact notation, most significant coefficient first.
    pub fn to_compact(&self) -> String {
        match self.degree() {
            None => "0".to_string(),
            Some(d) => (0..=d).rev().map(|k| if self.coeff(k) { '1' } else { '0' }).collect(),
        }
    }

    /// Symbolic notation `x^k+...+x+1`, powers strictly decreasing.
    pub fn to_symbolic(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .powers()
            .into_iter()
            .rev()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            })
            .collect();
        terms.join("+")
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse(text)
    }
}

/// Inserts a zero bit above each bit of `v`.
fn spread_bits(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl PartialOrd for BinaryPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree first, then lexicographically from the top coefficient.
impl Ord for BinaryPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs.len().cmp(&other.limbs.len()).then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str(&self.to_compact())
        } else {
            f.write_str(&self.to_symbolic())
        }
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({})", self.to_symbolic())
    }
}

impl std::str::FromStr for BinaryPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for BinaryPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_symbolic())
    }
}

impl<'de> Deserialize<'de> for BinaryPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BinaryPolynomial> for BinaryPolynomial {
    fn add_assign(&mut self, rhs: &BinaryPolynomial) {
        self.xor_shifted(rhs, 0);
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        BinaryPolynomial::mul(self, rhs)
    }
}

/// Product of a list of polynomials.
pub fn product<'a, I: IntoIterator<Item = &'a BinaryPolynomial>>(polys: I) -> BinaryPolynomial {
    polys.into_iter().fold(BinaryPolynomial::one(), |acc, p| acc.mul(p))
}
