//! The set-polynomial criterion: an irreducible `f` with root `β` yields the
//! window property iff the powers `β^p`, `p` in the window's position set,
//! are linearly independent.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::field::crt_solve;
use crate::folding::CodeParams;
use crate::gf2poly::{is_irreducible, BinaryPolynomial};
use crate::report::{Criterion, VerdictReport, Witness};

/// Largest position set the exhaustive subset scan accepts.
pub const MAX_EXHAUSTIVE_POSITIONS: usize = 20;

/// Sequence indices of the cells of the top-left `n1 x n2` window, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionSet {
    pub params: CodeParams,
    pub positions: Vec<u64>,
}

impl PositionSet {
    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.positions.clone();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.sorted().iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub fn window_positions(params: &CodeParams) -> Result<PositionSet> {
    let CodeParams { r1, r2, n1, n2 } = *params;
    if n1 > r1 || n2 > r2 {
        return Err(Error::WindowTooLarge { n1, n2, r1, r2 });
    }
    let mut positions = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            positions.push(crt_solve(i as u64, j as u64, r1 as u64, r2 as u64)?);
        }
    }
    Ok(PositionSet { params: *params, positions })
}

fn coordinates(v: &BinaryPolynomial, n: usize) -> Vec<bool> {
    (0..n).map(|i| v.coeff(i)).collect()
}

/// Gray-code walk over all nonempty subsets; returns the first subset whose
/// powers sum to zero, as a bit mask over `vectors`.
fn zero_subset(vectors: &[BinaryPolynomial]) -> Option<u64> {
    let mut sum = BinaryPolynomial::zero();
    let mut mask = 0u64;
    for step in 1u64..(1 << vectors.len()) {
        let flip = step.trailing_zeros() as usize;
        sum += &vectors[flip];
        mask ^= 1 << flip;
        if sum.is_zero() {
            return Some(mask);
        }
    }
    None
}

/// Decides whether `f` fails to divide the set polynomial of `positions`.
///
/// The rank test is the default; `exhaustive` additionally scans every
/// nonempty subset for a zero sum and requires both to agree.
pub fn setpoly_test(f: &BinaryPolynomial, positions: &PositionSet, exhaustive: bool) -> Result<VerdictReport> {
    let start = Instant::now();
    let n = f.degree().ok_or(Error::ConstantPolynomial)?;
    if !is_irreducible(f)? {
        return Err(Error::NotIrreducible(f.to_symbolic()));
    }
    if positions.len() != n {
        return Err(Error::Precondition(format!("{} positions for a polynomial of degree {n}", positions.len())));
    }
    let x = BinaryPolynomial::x();
    let powers: Vec<BinaryPolynomial> =
        positions.positions.iter().map(|&p| x.pow_mod(p as u128, f)).collect::<Result<_>>()?;
    // Column t holds the coordinates of β^(p_t).
    let columns: Vec<Vec<bool>> = powers.iter().map(|v| coordinates(v, n)).collect();
    let m = BitMatrix::from_rows(&columns).transpose();
    let relation = m.nullspace().into_iter().next();
    let independent = relation.is_none();

    let mut report = VerdictReport::from_bool(Criterion::SetPolynomial, Some(positions.params), independent);
    if let Some(v) = relation {
        let indices = v.iter().zip(&positions.positions).filter(|(&b, _)| b).map(|(_, &p)| p as usize).collect();
        report = report.with_witness(Witness::Dependency { indices });
    }
    if exhaustive {
        if n > MAX_EXHAUSTIVE_POSITIONS {
            return Err(Error::Precondition(format!(
                "exhaustive subset scan supports at most {MAX_EXHAUSTIVE_POSITIONS} positions, got {n}"
            )));
        }
        let found = zero_subset(&powers);
        if found.is_some() == independent {
            return Err(Error::Consistency(format!(
                "rank test and subset scan disagree for {f} at {}",
                positions.params
            )));
        }
        report = report.with_count("subsets", (1u64 << n) - 1);
    }
    Ok(report.with_count("positions", n as u64).timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        s.parse().unwrap()
    }

    /// Set polynomial `Π_Q Σ_{p in Q} x^p` reduced mod `f`, over all nonempty
    /// subsets: `f` divides it iff some factor vanishes mod `f`.
    fn set_polynomial_mod(f: &BinaryPolynomial, positions: &[u64]) -> BinaryPolynomial {
        let mut acc = BinaryPolynomial::one();
        for mask in 1u64..(1 << positions.len()) {
            let chosen: Vec<usize> =
                positions.iter().enumerate().filter(|(t, _)| (mask >> t) & 1 == 1).map(|(_, &p)| p as usize).collect();
            let q = BinaryPolynomial::from_powers(&chosen);
            acc = acc.mul_mod(&q, f).unwrap();
        }
        acc
    }

    #[test]
    fn position_examples() {
        let ps = window_positions(&CodeParams::new(13, 35, 4, 3)).unwrap();
        assert_eq!(ps.sorted(), vec![0, 1, 2, 105, 106, 107, 210, 211, 247, 315, 351, 352]);
        let ps = window_positions(&CodeParams::new(13, 35, 3, 4)).unwrap();
        assert_eq!(ps.sorted(), vec![0, 1, 2, 105, 106, 143, 210, 247, 248, 351, 352, 353]);
        assert_eq!(ps.to_string(), "{0, 1, 2, 105, 106, 143, 210, 247, 248, 351, 352, 353}");
        let ps = window_positions(&CodeParams::new(3, 5, 2, 2)).unwrap();
        assert_eq!(ps.positions, vec![0, 6, 10, 1]);
        assert_eq!(window_positions(&CodeParams::new(7, 9, 1, 1)).unwrap().positions, vec![0]);
    }

    #[test]
    fn grid_of_twelve_bit_polynomials() {
        let polys = [
            ("1011101001111", false, false),
            ("1100101101111", false, true),
            ("1110001011111", true, false),
            ("1010011011111", true, true),
        ];
        let wide = window_positions(&CodeParams::new(13, 35, 4, 3)).unwrap();
        let tall = window_positions(&CodeParams::new(13, 35, 3, 4)).unwrap();
        for (f, pass_43, pass_34) in polys {
            let f = p(f);
            assert_eq!(setpoly_test(&f, &wide, true).unwrap().passed(), pass_43, "{f} 4x3");
            assert_eq!(setpoly_test(&f, &tall, true).unwrap().passed(), pass_34, "{f} 3x4");
        }
    }

    #[test]
    fn failure_witness_is_a_zero_sum() {
        let f = p("1011101001111");
        let ps = window_positions(&CodeParams::new(13, 35, 4, 3)).unwrap();
        let r = setpoly_test(&f, &ps, false).unwrap();
        let Some(Witness::Dependency { indices }) = r.witness else { panic!() };
        let x = BinaryPolynomial::x();
        let sum = indices.iter().fold(BinaryPolynomial::zero(), |acc, &q| &acc + &x.pow_mod(q as u128, &f).unwrap());
        assert!(!indices.is_empty() && sum.is_zero());
    }

    #[test]
    fn rank_test_matches_literal_set_polynomial() {
        for (r1, r2, n1, n2) in [(3usize, 5usize, 2usize, 2usize), (3, 7, 2, 3), (7, 9, 2, 3), (5, 17, 4, 2)] {
            let params = CodeParams::new(r1, r2, n1, n2);
            let ps = window_positions(&params).unwrap();
            let n = n1 * n2;
            let e = (r1 * r2) as u64;
            for f in crate::gf2poly::enumerate_irreducible(n, e) {
                let divides = set_polynomial_mod(&f, &ps.positions).is_zero();
                assert_eq!(setpoly_test(&f, &ps, true).unwrap().passed(), !divides, "{f} {params}");
            }
        }
    }

    #[test]
    fn precondition_errors() {
        let ps = window_positions(&CodeParams::new(3, 5, 2, 2)).unwrap();
        assert!(matches!(setpoly_test(&p("x^4+1"), &ps, false), Err(Error::NotIrreducible(_))));
        assert!(matches!(setpoly_test(&p("x^3+x+1"), &ps, false), Err(Error::Precondition(_))));
        assert!(setpoly_test(&p("x^4+x+1"), &ps, false).unwrap().passed());
    }
}
