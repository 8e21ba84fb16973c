//! Explorer for products of irreducible polynomials whose individual foldings
//! already have the window property.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::det_test;
use crate::error::{Error, Result};
use crate::folding::{fold_zero_factor, CodeParams};
use crate::gf2poly::{enumerate_irreducible, product, BinaryPolynomial};
use crate::lfsr::zero_factor;
use crate::report::VerdictReport;
use crate::verify::{window_census, MAX_CENSUS_AREA};

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureEntry {
    pub k: usize,
    pub factors: Vec<BinaryPolynomial>,
    pub product: BinaryPolynomial,
    pub params: CodeParams,
    pub determinant: VerdictReport,
    pub census: Option<VerdictReport>,
    /// A product of `k >= 2` passing factors that fails, inside the range
    /// `n1 < r1 < 2 n1`.
    pub counterexample: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub n1: usize,
    pub n2: usize,
    pub r1: usize,
    pub r2: usize,
    pub kmax: usize,
    pub in_range: bool,
    pub candidates: usize,
    /// Candidates whose own foldings pass.
    pub base: Vec<BinaryPolynomial>,
    pub entries: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ConjectureEntry> {
        self.entries.iter().filter(|e| e.counterexample)
    }
}

fn evaluate(
    factors: Vec<BinaryPolynomial>,
    params: CodeParams,
    census_limit: usize,
    in_range: bool,
) -> Result<ConjectureEntry> {
    let k = factors.len();
    let product = product(&factors);
    let determinant = det_test(&factors, &params)?;
    let census = if product.deg() <= census_limit.min(MAX_CENSUS_AREA) {
        let zf = zero_factor(&product)?;
        let arrays = fold_zero_factor(&zf, params.r1, params.r2)?;
        let report = window_census(&arrays, params.n1, params.n2)?;
        if report.verdict != determinant.verdict {
            return Err(Error::Consistency(format!(
                "determinant ({}) and census ({}) disagree for {product} at {params}",
                determinant.verdict, report.verdict
            )));
        }
        Some(report)
    } else {
        None
    };
    let counterexample = in_range && k >= 2 && !determinant.passed();
    Ok(ConjectureEntry { k, factors, product, params, determinant, census, counterexample })
}

/// Enumerates the irreducible polynomials of degree `n1 n2` and exponent
/// `r1 r2`, keeps those whose foldings are `(r1, r2; n1, n2)` codes, and tests
/// every product of `k` of them, `2 <= k <= kmax`, as an `(r1, r2; n1, k n2)`
/// code. Products up to degree `census_limit` are also censused.
///
/// Entries appear in enumeration order: by `k`, then lexicographically by
/// factor index.
pub fn conjecture_search(
    n1: usize,
    n2: usize,
    r1: usize,
    r2: usize,
    kmax: usize,
    census_limit: usize,
) -> Result<ConjectureReport> {
    if n1 == 0 || n2 == 0 || r1 == 0 || r2 == 0 {
        return Err(Error::InvalidParams("all parameters must be positive".into()));
    }
    let in_range = n1 < r1 && r1 < 2 * n1;
    let candidates = enumerate_irreducible(n1 * n2, (r1 * r2) as u64);
    let single = CodeParams::new(r1, r2, n1, n2);
    let mut entries: Vec<ConjectureEntry> = candidates
        .par_iter()
        .map(|f| evaluate(vec![f.clone()], single, census_limit, in_range))
        .collect::<Result<_>>()?;
    let base: Vec<BinaryPolynomial> =
        entries.iter().filter(|e| e.determinant.passed()).map(|e| e.product.clone()).collect();
    for k in 2..=kmax.min(base.len()) {
        let params = CodeParams::new(r1, r2, n1, k * n2);
        let combos: Vec<Vec<BinaryPolynomial>> = base.iter().cloned().combinations(k).collect();
        let batch: Vec<ConjectureEntry> = combos
            .into_par_iter()
            .map(|factors| evaluate(factors, params, census_limit, in_range))
            .collect::<Result<_>>()?;
        entries.extend(batch);
    }
    Ok(ConjectureReport { n1, n2, r1, r2, kmax, in_range, candidates: candidates.len(), base, entries })
}
