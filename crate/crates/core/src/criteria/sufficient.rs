//! Arithmetic sufficient conditions under which folding the sequences of any
//! irreducible polynomial with exponent `r1 r2` gives a PRA or PRAC.

use std::collections::HashSet;
use std::time::Instant;

use num_integer::Integer;

use crate::folding::CodeParams;
use crate::report::{Criterion, VerdictReport, Witness};

/// Passes iff `r1 r2 | 2^(n1 n2) - 1`, `gcd(r1, r2) = 1`, `r1 | 2^n1 - 1` and
/// the residues `2^i mod r1`, `0 <= i < n1`, are distinct. The note tells the
/// PRA case (`r1 r2 = 2^(n1 n2) - 1`) from the PRAC case.
pub fn sufficient_conditions(params: &CodeParams) -> VerdictReport {
    let start = Instant::now();
    let CodeParams { r1, r2, n1, n2 } = *params;
    let fail = |text: String| {
        VerdictReport::fail(Criterion::SufficientConditions, Some(*params), Witness::Message { text }).timed(start)
    };
    let area = n1 * n2;
    if area == 0 || area > 127 || r1 == 0 || r2 == 0 {
        return fail(format!("parameters {params} are outside the supported range"));
    }
    let total = (1u128 << area) - 1;
    let period = r1 as u128 * r2 as u128;
    if !total.is_multiple_of(period) {
        return fail(format!("r1 r2 = {period} does not divide 2^{area} - 1"));
    }
    if r1.gcd(&r2) != 1 {
        return fail(format!("gcd({r1}, {r2}) = {}", r1.gcd(&r2)));
    }
    if !((1u128 << n1) - 1).is_multiple_of(r1 as u128) {
        return fail(format!("r1 = {r1} does not divide 2^{n1} - 1"));
    }
    let mut seen = HashSet::new();
    let mut residue = 1 % r1 as u128;
    for i in 0..n1 {
        if !seen.insert(residue) {
            return fail(format!("2^{i} repeats an earlier residue {residue} modulo {r1}"));
        }
        residue = residue * 2 % r1 as u128;
    }
    let note = if period == total { "PRA case" } else { "PRAC case" };
    VerdictReport::pass(Criterion::SufficientConditions, Some(*params)).with_note(note).timed(start)
}
