//! Linear-recurring binary sequences.
//!
//! A polynomial `c(x) = 1 + c_1 x + ... + c_n x^n` generates the sequences
//! satisfying `a_k = c_1 a_(k-1) + ... + c_n a_(k-n)`; the seed is
//! `a_0, ..., a_(n-1)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2poly::{classify, BinaryPolynomial};

/// Largest register length accepted by [`zero_factor`].
pub const MAX_ZERO_FACTOR_DEGREE: usize = 28;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSequence {
    bits: Vec<bool>,
    period: usize,
}

fn least_period(bits: &[bool]) -> usize {
    let len = bits.len();
    (1..=len).filter(|d| len.is_multiple_of(*d)).find(|&d| (d..len).all(|i| bits[i] == bits[i - d])).unwrap_or(len)
}

impl CyclicSequence {
    pub fn new(bits: Vec<bool>) -> Self {
        let period = least_period(&bits);
        Self { bits, period }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![false; len], period: 1.min(len) }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Bit at index `k`, read cyclically.
    pub fn get(&self, k: usize) -> bool {
        self.bits[k % self.bits.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    /// The sequence delayed by `k` steps: `out[i] = s[i - k]`.
    pub fn rotate(&self, k: usize) -> Self {
        let len = self.bits.len();
        if len == 0 {
            return self.clone();
        }
        let mut bits = self.bits.clone();
        bits.rotate_right(k % len);
        Self { bits, period: self.period }
    }

    /// One period, starting at its lexicographically least rotation.
    pub fn canonical(&self) -> Vec<bool> {
        let one = &self.bits[..self.period];
        let p = one.len();
        let mut best = 0;
        for r in 1..p {
            let cand = (0..p).map(|i| one[(r + i) % p]);
            let cur = (0..p).map(|i| one[(best + i) % p]);
            if cand.lt(cur) {
                best = r;
            }
        }
        (0..p).map(|i| one[(best + i) % p]).collect()
    }

    /// True iff both sequences have the same period up to a cyclic shift.
    pub fn is_rotation_of(&self, other: &Self) -> bool {
        self.period == other.period && self.canonical() == other.canonical()
    }

    /// The sequence repeated to length `len`, a multiple of its period.
    fn extended(&self, len: usize) -> Vec<bool> {
        (0..len).map(|i| self.bits[i % self.period]).collect()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let len = self.period.lcm(&other.period);
        let (a, b) = (self.extended(len), other.extended(len));
        Self::new(a.iter().zip(&b).map(|(&x, &y)| op(x, y)).collect())
    }
}

impl fmt::Display for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for CyclicSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let bits = s
            .char_indices()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => {
                    Err(Error::Parse { position: i, message: format!("unexpected character {c:?} in a 0/1 sequence") })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(bits))
    }
}

impl Serialize for CyclicSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Runs the recurrence of `f` from `seed` for `length` terms.
pub fn generate(f: &BinaryPolynomial, seed: &[bool], length: usize) -> Result<CyclicSequence> {
    let n = f.degree().ok_or(Error::ConstantPolynomial)?;
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    if seed.len() != n {
        return Err(Error::LengthMismatch(seed.len(), n));
    }
    if length < n {
        return Err(Error::SequenceTooShort { length, degree: n });
    }
    let taps: Vec<usize> = f.powers().into_iter().filter(|&i| i > 0).collect();
    let mut bits = seed.to_vec();
    bits.reserve(length - n);
    for k in n..length {
        let next = taps.iter().fold(false, |acc, &i| acc ^ bits[k - i]);
        bits.push(next);
    }
    Ok(CyclicSequence::new(bits))
}

pub fn bitadd(a: &CyclicSequence, b: &CyclicSequence) -> CyclicSequence {
    a.combine(b, |x, y| x ^ y)
}

pub fn bitmul(a: &CyclicSequence, b: &CyclicSequence) -> CyclicSequence {
    a.combine(b, |x, y| x & y)
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroFactor {
    pub generator: BinaryPolynomial,
    pub exponent: u64,
    pub cycles: Vec<CyclicSequence>,
}

impl fmt::Display for ZeroFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Bit-packed table over all `2^n` register states.
pub(crate) struct Occupancy {
    words: Vec<u64>,
}

impl Occupancy {
    pub(crate) fn new(bits: usize) -> Self {
        Self { words: vec![0; (1usize << bits).div_ceil(64)] }
    }

    /// Marks `state`; returns whether it was already set.
    pub(crate) fn test_and_set(&mut self, state: usize) -> bool {
        let (w, b) = (state / 64, state % 64);
        let was = (self.words[w] >> b) & 1 == 1;
        self.words[w] |= 1 << b;
        was
    }

    pub(crate) fn contains(&self, state: usize) -> bool {
        (self.words[state / 64] >> (state % 64)) & 1 == 1
    }
}

/// Partitions the nonzero states of the register of `f` into its cycles.
///
/// Requires a uniform exponent `e`; then every cycle has least period `e`
/// and there are `(2^n - 1) / e` of them. States are visited in increasing
/// order of their window read most significant bit first.
pub fn zero_factor(f: &BinaryPolynomial) -> Result<ZeroFactor> {
    let class = classify(f)?;
    let e = class.uniform_exponent().ok_or(Error::NonUniformExponent)?;
    let n = f.deg();
    if n > MAX_ZERO_FACTOR_DEGREE {
        return Err(Error::InvalidParams(format!("degree {n} exceeds the zero-factor bound {MAX_ZERO_FACTOR_DEGREE}")));
    }
    let mask: u64 = (1 << n) - 1;
    let tapmask: u64 = f.powers().into_iter().filter(|&i| i > 0).map(|i| 1 << (i - 1)).sum();
    let mut seen = Occupancy::new(n);
    let mut cycles = Vec::new();
    for start in 1..=mask {
        if seen.contains(start as usize) {
            continue;
        }
        let mut bits: Vec<bool> = (0..n).rev().map(|i| (start >> i) & 1 == 1).collect();
        let mut state = start;
        loop {
            if seen.test_and_set(state as usize) {
                return Err(Error::Consistency(format!("state {state:#b} reached twice while walking {f}")));
            }
            let next = (state & tapmask).count_ones() & 1 == 1;
            state = ((state << 1) | next as u64) & mask;
            if state == start {
                break;
            }
            bits.push(next);
        }
        // `bits` now holds the n seed bits followed by the continuation; one
        // period is the first (cycle length) terms.
        let period = bits.len() - n + 1;
        bits.truncate(period);
        let cycle = CyclicSequence::new(bits);
        if cycle.period() as u64 != e {
            return Err(Error::Consistency(format!(
                "cycle of {f} has period {} but the exponent is {e}",
                cycle.period()
            )));
        }
        cycles.push(cycle);
    }
    if cycles.len() as u64 * e != mask {
        return Err(Error::Consistency(format!("{} cycles of period {e} do not cover 2^{n} - 1 states", cycles.len())));
    }
    Ok(ZeroFactor { generator: f.clone(), exponent: e, cycles })
}

fn pack(bits: impl Iterator<Item = bool>) -> Vec<u64> {
    let mut out = Vec::new();
    for (i, b) in bits.enumerate() {
        if i % 64 == 0 {
            out.push(0);
        }
        if b {
            *out.last_mut().unwrap() |= 1 << (i % 64);
        }
    }
    out
}

/// True iff every sum of a cycle and a shift of a cycle is zero or a shift
/// of some cycle of the family.
pub fn shift_and_add_closed(cycles: &[CyclicSequence]) -> Result<bool> {
    let Some(first) = cycles.first() else {
        return Ok(true);
    };
    let len = first.len();
    if let Some(c) = cycles.iter().find(|c| c.len() != len) {
        return Err(Error::LengthMismatch(len, c.len()));
    }
    let shifted = |c: &CyclicSequence, s: usize| pack((0..len).map(move |i| c.bits[(i + len - s) % len]));
    let mut family: HashSet<Vec<u64>> = HashSet::new();
    for c in cycles {
        for s in 0..len {
            family.insert(shifted(c, s));
        }
    }
    // The family is closed under shifts, so fixing the first summand's phase
    // loses nothing.
    for a in cycles {
        let pa = pack(a.bits.iter().copied());
        for b in cycles {
            for s in 0..len {
                let sum: Vec<u64> = pa.iter().zip(shifted(b, s)).map(|(x, y)| x ^ y).collect();
                if sum.iter().any(|&w| w != 0) && !family.contains(&sum) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Shortest linear recurrence generating `s`, as its polynomial
/// `1 + c_1 x + ... + c_L x^L`.
pub fn berlekamp_massey(s: &[bool]) -> BinaryPolynomial {
    let mut c = BinaryPolynomial::one();
    let mut b = BinaryPolynomial::one();
    let mut l = 0usize;
    let mut m = 1usize;
    for k in 0..s.len() {
        let d = (1..=l).fold(s[k], |acc, i| acc ^ (c.coeff(i) & s[k - i]));
        if !d {
            m += 1;
        } else if 2 * l <= k {
            let t = c.clone();
            c += &b.shl(m);
            l = k + 1 - l;
            b = t;
            m = 1;
        } else {
            c += &b.shl(m);
            m += 1;
        }
    }
    c
}
