use std::collections::BTreeMap;

use num_integer::Integer;
use num_prime::nt_funcs::factorize64;
use serde::Serialize;

use super::factor::{berlekamp_split, factor};
use super::BinaryPolynomial;
use crate::error::{Error, Result};
use crate::field::FieldContext;

/// Incremental search bound used when `2^L - 1` cannot be factored in 64 bits.
const INCREMENTAL_EXPONENT_CAP: u64 = 1 << 26;

fn pow_mod_u64(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn totient(factors: &BTreeMap<u64, usize>) -> u64 {
    factors.iter().map(|(&p, &k)| (p - 1) * p.pow(k as u32 - 1)).product()
}

/// Smallest `d` with `2^d = 1 (mod e)`; `ord2(1) = 1`.
pub fn ord2(e: u64) -> Result<u64> {
    if e.is_multiple_of(2) {
        return Err(Error::EvenModulus(e));
    }
    if e == 1 {
        return Ok(1);
    }
    let phi = totient(&factorize64(e));
    let mut t = phi;
    for (&p, &k) in factorize64(phi).iter() {
        for _ in 0..k {
            if pow_mod_u64(2, t / p, e) == 1 {
                t /= p;
            } else {
                break;
            }
        }
    }
    Ok(t)
}

/// Number of irreducible polynomials whose exponent is `e`: `φ(e) / ord2(e)`.
pub fn count_irreducible_with_exponent(e: u64) -> Result<u64> {
    let n = ord2(e)?;
    Ok(totient(&factorize64(e)) / n)
}

fn x_pow_is_one(k: u64, f: &BinaryPolynomial) -> Result<bool> {
    Ok(BinaryPolynomial::x().pow_mod(k as u128, f)?.is_one())
}

/// Multiplicative order of `x` modulo `f`, knowing it divides `bound`.
fn order_dividing(f: &BinaryPolynomial, bound: u64) -> Result<u64> {
    let mut t = bound;
    for (&p, &k) in factorize64(bound).iter() {
        for _ in 0..k {
            if x_pow_is_one(t / p, f)? {
                t /= p;
            } else {
                break;
            }
        }
    }
    Ok(t)
}

fn exponent_of_irreducible(f: &BinaryPolynomial) -> Result<u64> {
    let d = f.deg();
    if d == 0 {
        return Ok(1);
    }
    if d <= 64 {
        let bound = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        return order_dividing(f, bound);
    }
    // Walk powers of x until we return to 1.
    let x = BinaryPolynomial::x();
    let mut acc = x.rem(f)?;
    for k in 1..=INCREMENTAL_EXPONENT_CAP {
        if acc.is_one() {
            return Ok(k);
        }
        acc = acc.shl(1).rem(f)?;
    }
    Err(Error::ExponentTooLarge)
}

/// Least `e` with `f | x^e - 1`, for square-free `f` with `f(0) = 1`.
///
/// The exponent of a square-free polynomial is the lcm of the exponents of
/// its irreducible factors; each factor's exponent divides `2^deg - 1`.
pub fn exponent(f: &BinaryPolynomial) -> Result<u64> {
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    if f.is_one() {
        return Ok(1);
    }
    let factors = factor(f)?;
    if factors.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedFactors);
    }
    let mut e = 1u64;
    for g in &factors {
        let eg = exponent_of_irreducible(g)?;
        let l = e.lcm(&eg);
        if l / eg != e / e.gcd(&eg) {
            return Err(Error::ExponentTooLarge);
        }
        e = l;
    }
    Ok(e)
}

/// True iff the multiplicative order of `x` modulo `f` is exactly `e`.
pub fn has_exponent(f: &BinaryPolynomial, e: u64) -> Result<bool> {
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    if e == 0 {
        return Ok(false);
    }
    if !x_pow_is_one(e, f)? {
        return Ok(false);
    }
    for &p in factorize64(e).keys() {
        if x_pow_is_one(e / p, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first primitive polynomial of degree `n` in ascending order.
fn first_primitive(n: usize) -> BinaryPolynomial {
    let order = (1u64 << n) - 1;
    (0..1u64 << (n - 1))
        .map(|low| BinaryPolynomial::from_u64(1 << n | low << 1 | 1))
        .find(|f| has_exponent(f, order).unwrap_or(false))
        .expect("primitive polynomials exist in every degree")
}

fn mobius(n: u64) -> i32 {
    let f = factorize64(n);
    if f.values().any(|&k| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Cyclotomic polynomial `Φ_e(x)` reduced mod 2.
fn cyclotomic(e: u64) -> BinaryPolynomial {
    let mut num = BinaryPolynomial::one();
    let mut den = BinaryPolynomial::one();
    let one = BinaryPolynomial::one();
    for d in (1..=e).filter(|d| e.is_multiple_of(*d)) {
        let term = &BinaryPolynomial::monomial(d as usize) + &one;
        match mobius(e / d) {
            1 => num = num.mul(&term),
            -1 => den = den.mul(&term),
            _ => {}
        }
    }
    let (q, r) = num.divmod(&den).expect("nonzero");
    debug_assert!(r.is_zero());
    q
}

/// Minimal polynomials of the elements of order `e` in GF(2^n), `n < 64`.
///
/// With `α` a primitive element these elements are `β^k` for
/// `β = α^((2^n - 1) / e)` and `k` a unit mod `e`; one minimal polynomial is
/// taken per Frobenius orbit `{k, 2k, 4k, ...}`.
fn enumerate_by_roots(n: usize, e: u64) -> Vec<BinaryPolynomial> {
    if n == 1 {
        return vec![BinaryPolynomial::from_u64(0b11)];
    }
    let ctx = FieldContext::new(first_primitive(n)).expect("primitive polynomials are irreducible");
    let order = (1u64 << n) - 1;
    let beta = ctx.generator().pow((order / e) as i64).expect("generator is invertible");
    let mut seen = vec![false; e as usize];
    let mut power = beta.clone();
    let mut out = Vec::new();
    for k in 1..e {
        if !seen[k as usize] && k.gcd(&e) == 1 {
            let mut j = k;
            while !seen[j as usize] {
                seen[j as usize] = true;
                j = j * 2 % e;
            }
            out.push(power.minimal_polynomial());
        }
        power = power.mul(&beta).expect("same context");
    }
    out
}

/// All irreducible polynomials of degree `n` and exponent `e`, sorted.
///
/// Their roots are exactly the elements of order `e`. Small fields are
/// walked through a primitive element; beyond 63 bits the cyclotomic
/// polynomial `Φ_e` is split instead. The result is empty when
/// `n != ord2(e)` or `e` is even.
pub fn enumerate_irreducible(n: usize, e: u64) -> Vec<BinaryPolynomial> {
    match ord2(e) {
        Ok(d) if d as usize == n => {}
        _ => return Vec::new(),
    }
    let mut out = if n < 64 { enumerate_by_roots(n, e) } else { berlekamp_split(&cyclotomic(e)) };
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolynomialKind {
    Primitive,
    /// Irreducible non-primitive.
    Inp,
    ReducibleUniform,
    ReducibleNonuniform,
    Unit,
    ZeroConstantTerm,
}

impl PolynomialKind {
    pub fn is_irreducible(self) -> bool {
        matches!(self, Self::Primitive | Self::Inp)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Primitive => "primitive",
            Self::Inp => "INP",
            Self::ReducibleUniform => "reducible-uniform",
            Self::ReducibleNonuniform => "reducible-nonuniform",
            Self::Unit => "unit",
            Self::ZeroConstantTerm => "zero-constant-term",
        }
    }
}

impl std::fmt::Display for PolynomialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolynomialClass {
    pub kind: PolynomialKind,
    pub exponent: Option<u64>,
    pub factors: Vec<BinaryPolynomial>,
}

impl PolynomialClass {
    /// Uniform exponent, present for irreducible and reducible-uniform kinds.
    pub fn uniform_exponent(&self) -> Option<u64> {
        match self.kind {
            PolynomialKind::Primitive | PolynomialKind::Inp | PolynomialKind::ReducibleUniform => self.exponent,
            _ => None,
        }
    }
}

pub fn classify(f: &BinaryPolynomial) -> Result<PolynomialClass> {
    if f.is_one() {
        return Ok(PolynomialClass { kind: PolynomialKind::Unit, exponent: Some(1), factors: Vec::new() });
    }
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    let factors = factor(f)?;
    if factors.len() == 1 {
        let n = f.deg();
        let e = exponent_of_irreducible(f)?;
        let primitive = n < 64 && e == (1u64 << n) - 1 || n == 64 && e == u64::MAX;
        return Ok(PolynomialClass {
            kind: if primitive { PolynomialKind::Primitive } else { PolynomialKind::Inp },
            exponent: Some(e),
            factors,
        });
    }
    if factors.windows(2).any(|w| w[0] == w[1]) {
        return Ok(PolynomialClass { kind: PolynomialKind::ReducibleNonuniform, exponent: None, factors });
    }
    let exps = factors.iter().map(exponent_of_irreducible).collect::<Result<Vec<_>>>()?;
    let uniform = exps.iter().all(|&e| e == exps[0]) && factors.iter().all(|g| g.deg() == factors[0].deg());
    let kind = if uniform { PolynomialKind::ReducibleUniform } else { PolynomialKind::ReducibleNonuniform };
    Ok(PolynomialClass { kind, exponent: Some(exponent(f)?), factors })
}
