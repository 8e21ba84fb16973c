//! Arithmetic in GF(2^n) realized as GF(2)[x]/(f) for an irreducible `f`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_prime::nt_funcs::factorize128;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2poly::{is_irreducible, BinaryPolynomial};

#[derive(Debug, PartialEq, Eq)]
pub struct FieldContext {
    modulus: BinaryPolynomial,
    degree: usize,
}

impl FieldContext {
    pub fn new(modulus: BinaryPolynomial) -> Result<Arc<Self>> {
        if modulus.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !is_irreducible(&modulus)? {
            return Err(Error::NotIrreducible(modulus.to_symbolic()));
        }
        let degree = modulus.deg();
        Ok(Arc::new(Self { modulus, degree }))
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { ctx: Arc::clone(self), value: BinaryPolynomial::zero() }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element(&BinaryPolynomial::one())
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.element(&BinaryPolynomial::x())
    }

    pub fn element(self: &Arc<Self>, p: &BinaryPolynomial) -> FieldElement {
        element_from_polynomial(self, p)
    }

    /// Every element of the field, in coordinate order. Intended for small `n`.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        assert!(self.degree < 64, "field too large to enumerate");
        (0..1u64 << self.degree).map(move |bits| self.element(&BinaryPolynomial::from_u64(bits)))
    }
}

pub fn element_from_polynomial(ctx: &Arc<FieldContext>, p: &BinaryPolynomial) -> FieldElement {
    FieldElement { ctx: Arc::clone(ctx), value: p.rem(&ctx.modulus).expect("modulus is nonzero") }
}

#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    value: BinaryPolynomial,
}

impl FieldElement {
    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Representative polynomial of degree below `n`.
    pub fn value(&self) -> &BinaryPolynomial {
        &self.value
    }

    /// Coefficients of `1, x, ..., x^(n-1)`.
    pub fn coordinates(&self) -> Vec<bool> {
        (0..self.ctx.degree).map(|i| self.value.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_value(&self, value: BinaryPolynomial) -> Self {
        Self { ctx: Arc::clone(&self.ctx), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_value(&self.value + &other.value))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_value(self.value.mul_mod(&other.value, &self.ctx.modulus)?))
    }

    pub fn square(&self) -> Self {
        self.with_value(self.value.square().rem(&self.ctx.modulus).expect("nonzero"))
    }

    fn pow_u128(&self, k: u128) -> Self {
        self.with_value(self.value.pow_mod(k, &self.ctx.modulus).expect("nonzero"))
    }

    /// `a^k`; negative exponents are reduced modulo the order of `a`.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow_u128(k as u128));
        }
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let t = self.order()?;
        let r = (k as i128).rem_euclid(t as i128) as u128;
        Ok(self.pow_u128(r))
    }

    pub fn inverse(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// Least `t >= 1` with `a^t = 1`, found by pruning the divisors of `2^n - 1`.
    pub fn order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.ctx.degree;
        if n > 127 {
            return Err(Error::ExponentTooLarge);
        }
        let group = (1u128 << n) - 1;
        let mut t = group;
        for (&p, &k) in factorize128(group).iter() {
            for _ in 0..k {
                if self.pow_u128(t / p).is_one() {
                    t /= p;
                } else {
                    break;
                }
            }
        }
        Ok(t)
    }

    /// Absolute trace `a + a^2 + ... + a^(2^(n-1))`.
    pub fn trace(&self) -> bool {
        let mut acc = BinaryPolynomial::zero();
        let mut conj = self.clone();
        for _ in 0..self.ctx.degree {
            acc += &conj.value;
            conj = conj.square();
        }
        debug_assert!(acc.is_constant());
        acc.is_one()
    }

    /// The Frobenius orbit `a, a^2, a^4, ...` up to its first repetition.
    pub fn conjugates(&self) -> Vec<Self> {
        let mut orbit = vec![self.clone()];
        loop {
            let next = orbit.last().unwrap().square();
            if next == orbit[0] {
                return orbit;
            }
            orbit.push(next);
        }
    }

    /// Minimal polynomial over GF(2): the product of `X - c` over the conjugates.
    pub fn minimal_polynomial(&self) -> BinaryPolynomial {
        // Coefficients in the field, lowest power first.
        let mut coeffs = vec![self.ctx.one()];
        for c in self.conjugates() {
            let mut next = vec![self.ctx.zero(); coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(a).expect("same context");
                next[i] = next[i].add(&a.mul(&c).expect("same context")).expect("same context");
            }
            coeffs = next;
        }
        BinaryPolynomial::from_coeffs(coeffs.iter().map(|a| {
            debug_assert!(a.value.is_constant());
            a.is_one()
        }))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.check(other).is_ok() && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.ctx.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FieldElement", 2)?;
        s.serialize_field("modulus", &self.ctx.modulus.to_compact())?;
        s.serialize_field("value", &self.value.to_compact())?;
        s.end()
    }
}

/// Extended Euclid: `(g, x, y)` with `g = gcd(a, b) = a x + b y`.
pub fn bezout(a: u64, b: u64) -> (u64, i64, i64) {
    let r = (a as i128).extended_gcd(&(b as i128));
    (r.gcd as u64, r.x as i64, r.y as i64)
}

/// Unique `0 <= k < r1 r2` with `k = i mod r1` and `k = j mod r2`.
pub fn crt_solve(i: u64, j: u64, r1: u64, r2: u64) -> Result<u64> {
    let (g, mu, nu) = bezout(r1, r2);
    if g != 1 {
        return Err(Error::NotCoprime(r1, r2));
    }
    if i >= r1 || j >= r2 {
        return Err(Error::InvalidParams(format!("residues ({i}, {j}) out of range for moduli ({r1}, {r2})")));
    }
    // mu r1 + nu r2 = 1, so nu r2 is 1 mod r1 and 0 mod r2, and vice versa.
    let m = (r1 as i128) * (r2 as i128);
    let k = (i as i128) * (nu as i128) * (r2 as i128) + (j as i128) * (mu as i128) * (r1 as i128);
    Ok(k.rem_euclid(m) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    fn ctx(s: &str) -> Arc<FieldContext> {
        FieldContext::new(p(s)).unwrap()
    }

    fn small_fields() -> Vec<Arc<FieldContext>> {
        (2u64..(1 << 9))
            .map(BinaryPolynomial::from_u64)
            .filter(|f| !f.is_constant() && is_irreducible(f).unwrap())
            .map(|f| FieldContext::new(f).unwrap())
            .collect()
    }

    #[test]
    fn reduction_and_arithmetic() {
        let k = ctx("x^2+x+1");
        assert_eq!(k.element(&p("x^2")).value(), &p("x+1"));
        assert!(k.element(&BinaryPolynomial::zero()).is_zero());
        assert!(k.element(&p("x^2+x+1")).is_zero());
        let x = k.generator();
        assert_eq!(x.mul(&x).unwrap().value(), &p("x+1"));
        assert!(x.add(&x).unwrap().is_zero());
        assert_eq!(x.mul(&k.one()).unwrap(), x);
        assert_eq!(x.coordinates(), vec![false, true]);
    }

    #[test]
    fn mixing_contexts_is_an_error() {
        let a = ctx("x^2+x+1").generator();
        let b = ctx("x^3+x+1").generator();
        assert_eq!(a.add(&b).unwrap_err(), Error::ContextMismatch);
        assert_eq!(a.mul(&b).unwrap_err(), Error::ContextMismatch);
        assert_ne!(a, b);
        assert!(matches!(FieldContext::new(p("x^2+1")), Err(Error::NotIrreducible(_))));
    }

    #[test]
    fn powers_and_orders() {
        let k = ctx("x^4+x^3+x^2+x+1");
        assert!(k.generator().pow(5).unwrap().is_one());
        assert!(k.generator().pow(0).unwrap().is_one());
        let x = k.generator();
        assert!(x.pow(-1).unwrap().mul(&x).unwrap().is_one());
        assert_eq!(x.pow(-7).unwrap(), x.pow(3).unwrap());
        assert_eq!(k.zero().pow(-1).unwrap_err(), Error::ZeroInverse);
        assert_eq!(ctx("x^4+x+1").generator().order().unwrap(), 15);
        assert_eq!(k.one().order().unwrap(), 1);
        assert_eq!(ctx("x^12+x^10+x^9+x+1").generator().order().unwrap(), 91);
    }

    #[test]
    fn trace_examples() {
        let k = ctx("x^2+x+1");
        assert!(!k.zero().trace());
        assert!(k.generator().trace());
        for k in small_fields() {
            assert_eq!(k.one().trace(), k.degree() % 2 == 1);
        }
    }

    #[test]
    fn minimal_polynomials_in_twelve_bit_field() {
        let k = ctx("x^12+x^7+x^6+x^5+x^3+x+1");
        let alpha = k.generator();
        assert_eq!(alpha.order().unwrap(), 4095);
        assert_eq!(alpha.pow(273).unwrap().minimal_polynomial(), p("x^4+x+1"));
        assert_eq!(alpha.pow(585).unwrap().minimal_polynomial(), p("x^3+x+1"));
        assert_eq!(k.one().minimal_polynomial(), p("x+1"));
    }

    #[test]
    fn field_properties_exhaustive_up_to_degree_8() {
        for k in small_fields() {
            let n = k.degree();
            let group = (1u128 << n) - 1;
            let elems: Vec<_> = k.elements().collect();
            let traces: Vec<bool> = elems.iter().map(|a| a.trace()).collect();
            assert!(traces.iter().any(|&t| t), "trivial trace for {}", k.modulus());
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    assert_eq!(a.add(b).unwrap(), elems[i ^ j]);
                    assert_eq!(traces[i ^ j], traces[i] ^ traces[j]);
                }
            }
            for a in elems.iter().skip(1) {
                let t = a.order().unwrap();
                assert_eq!(group % t, 0);
                let m = a.minimal_polynomial();
                assert!(is_irreducible(&m).unwrap());
                assert_eq!(n % m.deg(), 0);
                assert!(a.pow(t as i64).unwrap().is_one());
            }
            assert_eq!(&k.generator().minimal_polynomial(), k.modulus());
        }
    }

    #[test]
    fn bezout_certificates() {
        for (a, b) in [(3u64, 5u64), (7, 13), (6, 6), (12, 18), (455, 91)] {
            let (g, x, y) = bezout(a, b);
            assert_eq!(g, a.gcd(&b));
            assert_eq!(a as i64 * x + b as i64 * y, g as i64);
        }
        let (g, x, y) = bezout(9, 9);
        assert_eq!((g, x + y), (9, 1));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_solve(1, 2, 3, 5).unwrap(), 7);
        assert_eq!(crt_solve(2, 4, 3, 5).unwrap(), 14);
        assert_eq!(crt_solve(0, 0, 7, 15).unwrap(), 0);
        assert_eq!(crt_solve(0, 0, 6, 4), Err(Error::NotCoprime(6, 4)));
    }

    #[test]
    fn crt_is_a_bijection() {
        for (r1, r2) in [(3u64, 5u64), (7, 15), (13, 35), (1, 9), (99, 1000), (316, 317)] {
            let mut seen = vec![false; (r1 * r2) as usize];
            for i in 0..r1 {
                for j in 0..r2 {
                    let k = crt_solve(i, j, r1, r2).unwrap();
                    assert_eq!((k % r1, k % r2), (i, j));
                    assert!(!std::mem::replace(&mut seen[k as usize], true));
                }
            }
        }
    }
}
