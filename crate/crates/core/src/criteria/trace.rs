//! Determinant and trace criteria for products of irreducible polynomials.
//!
//! For factors `f_1, ..., f_k` of degree `n` and exponent `r1 r2`, take
//! `α_u` the class of `x` modulo `f_u` and split it through Bézout
//! coefficients `μ r1 + ν r2 = 1` into `β_u = α_u^(ν r2)` (order `r1`) and
//! `γ_u = α_u^(μ r1)` (order `r2`). The folded product code has the window
//! property iff the matrix `C[(i, j), (u, v)] = Tr(α_u^v β_u^i γ_u^j)` is
//! nonsingular.

use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;

use super::uniform_exponent;
use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::field::{bezout, FieldContext, FieldElement};
use crate::folding::CodeParams;
use crate::gf2poly::{is_irreducible, BinaryPolynomial};
use crate::report::{Criterion, VerdictReport, Witness};

struct Split {
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
}

fn split_root(f: &BinaryPolynomial, params: &CodeParams) -> Result<Split> {
    let e = params.period();
    let ctx: Arc<FieldContext> = FieldContext::new(f.clone())?;
    let alpha = ctx.generator();
    let (_, mu, nu) = bezout(params.r1 as u64, params.r2 as u64);
    let reduce = |k: i128| k.rem_euclid(e as i128) as i64;
    let beta = alpha.pow(reduce(nu as i128 * params.r2 as i128))?;
    let gamma = alpha.pow(reduce(mu as i128 * params.r1 as i128))?;
    Ok(Split { alpha, beta, gamma })
}

fn check_factor(f: &BinaryPolynomial, params: &CodeParams) -> Result<()> {
    if f.degree().unwrap_or(0) < 2 {
        return Err(Error::Precondition(format!("factor {f} must have degree at least 2")));
    }
    if !is_irreducible(f)? {
        return Err(Error::NotIrreducible(f.to_symbolic()));
    }
    let e = uniform_exponent(f)?;
    if e != params.period() {
        return Err(Error::ExponentMismatch { actual: e, expected: params.period() });
    }
    Ok(())
}

fn check_params(params: &CodeParams) -> Result<()> {
    if params.r1.gcd(&params.r2) != 1 {
        return Err(Error::NotCoprime(params.r1 as u64, params.r2 as u64));
    }
    Ok(())
}

/// Row indices `i n2 + j` of a nontrivial left kernel vector of `m`.
fn row_dependency(m: &BitMatrix) -> Option<Vec<usize>> {
    m.transpose()
        .nullspace()
        .into_iter()
        .next()
        .map(|v| v.iter().enumerate().filter(|(_, &b)| b).map(|(t, _)| t).collect())
}

/// Nonsingularity of the trace matrix `C` for a list of distinct factors.
pub fn det_test(factors: &[BinaryPolynomial], params: &CodeParams) -> Result<VerdictReport> {
    let start = Instant::now();
    check_params(params)?;
    let Some(first) = factors.first() else {
        return Err(Error::Precondition("det_test needs at least one factor".into()));
    };
    let n = first.deg();
    for (u, f) in factors.iter().enumerate() {
        check_factor(f, params)?;
        if f.deg() != n {
            return Err(Error::Precondition(format!("factors have different degrees {n} and {}", f.deg())));
        }
        if factors[..u].contains(f) {
            return Err(Error::RepeatedFactors);
        }
    }
    let size = params.area();
    if factors.len() * n != size {
        return Err(Error::Precondition(format!(
            "{} factors of degree {n} do not match window area {size}",
            factors.len()
        )));
    }
    let mut c = BitMatrix::zeros(size, size);
    for (u, f) in factors.iter().enumerate() {
        let Split { alpha, beta, gamma } = split_root(f, params)?;
        let mut beta_i = alpha.context().one();
        for i in 0..params.n1 {
            let mut bg = beta_i.clone();
            for j in 0..params.n2 {
                let mut entry = bg.clone();
                for v in 0..n {
                    if entry.trace() {
                        c.set(i * params.n2 + j, u * n + v, true);
                    }
                    entry = entry.mul(&alpha)?;
                }
                bg = bg.mul(&gamma)?;
            }
            beta_i = beta_i.mul(&beta)?;
        }
    }
    let report = match row_dependency(&c) {
        None => VerdictReport::pass(Criterion::Determinant, Some(*params)),
        Some(indices) => VerdictReport::fail(Criterion::Determinant, Some(*params), Witness::Dependency { indices }),
    };
    Ok(report.with_count("factors", factors.len() as u64).with_count("matrix-size", size as u64).timed(start))
}

/// Linear independence of `β^i γ^j`, `0 <= i < n1`, `0 <= j < n2`, for a single
/// irreducible `f` of degree `n1 n2`.
pub fn trace_independence_test(f: &BinaryPolynomial, params: &CodeParams) -> Result<VerdictReport> {
    let start = Instant::now();
    check_params(params)?;
    check_factor(f, params)?;
    let n = f.deg();
    if n != params.area() {
        return Err(Error::Precondition(format!("degree {n} differs from window area {}", params.area())));
    }
    let Split { alpha, beta, gamma } = split_root(f, params)?;
    let mut rows = Vec::with_capacity(n);
    let mut beta_i = alpha.context().one();
    for _ in 0..params.n1 {
        let mut bg = beta_i.clone();
        for _ in 0..params.n2 {
            rows.push(bg.coordinates());
            bg = bg.mul(&gamma)?;
        }
        beta_i = beta_i.mul(&beta)?;
    }
    let m = BitMatrix::from_rows(&rows);
    let report = match row_dependency(&m) {
        None => VerdictReport::pass(Criterion::TraceIndependence, Some(*params)),
        Some(indices) => {
            VerdictReport::fail(Criterion::TraceIndependence, Some(*params), Witness::Dependency { indices })
        }
    };
    Ok(report.timed(start))
}
