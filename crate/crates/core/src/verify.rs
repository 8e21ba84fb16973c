//! Brute-force oracles: window census and shift-and-add closure.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::folding::{CodeParams, TorusArray};
use crate::lfsr::Occupancy;
use crate::report::{Criterion, Verdict, VerdictReport, WindowIssue, WindowPosition, Witness};

/// Largest window area `n1 n2` the occupancy table accepts (a 32 MiB table).
pub const MAX_CENSUS_AREA: usize = 28;

fn window_rows(code: u64, n1: usize, n2: usize) -> Vec<String> {
    (0..n1)
        .map(|t| {
            let row = code >> (n2 * (n1 - 1 - t));
            (0..n2).rev().map(|u| if (row >> u) & 1 == 1 { '1' } else { '0' }).collect()
        })
        .collect()
}

/// Row-window codes of every `(i, j)`, so a full window costs `n1` lookups.
struct WindowTable {
    rows: usize,
    cols: usize,
    n1: usize,
    n2: usize,
    row_codes: Vec<u64>,
}

impl WindowTable {
    fn new(a: &TorusArray, n1: usize, n2: usize) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        let mut row_codes = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                row_codes.push(a.row_window(i, j, n2));
            }
        }
        Self { rows, cols, n1, n2, row_codes }
    }

    fn code(&self, i: usize, j: usize) -> u64 {
        (0..self.n1).fold(0, |acc, t| (acc << self.n2) | self.row_codes[((i + t) % self.rows) * self.cols + j])
    }

    /// Codes in row-major anchor order.
    fn codes(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| (i, j, self.code(i, j))))
    }
}

fn check_census_shape(arrays: &[TorusArray], n1: usize, n2: usize) -> Result<()> {
    let area = n1 * n2;
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidParams("window dimensions must be positive".into()));
    }
    if area > MAX_CENSUS_AREA {
        return Err(Error::CensusTooLarge(area));
    }
    if let Some(first) = arrays.first() {
        let (r1, r2) = (first.rows(), first.cols());
        if let Some(a) = arrays.iter().find(|a| (a.rows(), a.cols()) != (r1, r2)) {
            return Err(Error::DimensionMismatch(r1, r2, a.rows(), a.cols()));
        }
        if n1 > r1 || n2 > r2 {
            return Err(Error::WindowTooLarge { n1, n2, r1, r2 });
        }
    }
    Ok(())
}

/// True iff no window is zero or repeated; marks every code seen in `table`.
fn parallel_scan(arrays: &[TorusArray], n1: usize, n2: usize, table: &[AtomicU64]) -> bool {
    arrays.par_iter().all(|a| {
        let wt = WindowTable::new(a, n1, n2);
        let clean = wt.codes().all(|(_, _, code)| {
            if code == 0 {
                return false;
            }
            let bit = 1u64 << (code % 64);
            table[(code / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
        });
        clean
    })
}

/// Scans in array, row, column order; returns the first failure and the table.
fn serial_scan(arrays: &[TorusArray], n1: usize, n2: usize) -> (Option<Witness>, Occupancy) {
    let mut seen = Occupancy::new(n1 * n2);
    for (k, a) in arrays.iter().enumerate() {
        let wt = WindowTable::new(a, n1, n2);
        for (i, j, code) in wt.codes() {
            let position = WindowPosition { array: k, row: i, col: j };
            let issue = if code == 0 {
                Some(WindowIssue::Zero)
            } else if seen.test_and_set(code as usize) {
                Some(WindowIssue::Duplicate { first: first_occurrence(arrays, n1, n2, code) })
            } else {
                None
            };
            if let Some(issue) = issue {
                let w = Witness::Window { issue, position: Some(position), code, bits: window_rows(code, n1, n2) };
                return (Some(w), seen);
            }
        }
    }
    (None, seen)
}

fn first_occurrence(arrays: &[TorusArray], n1: usize, n2: usize, code: u64) -> WindowPosition {
    for (k, a) in arrays.iter().enumerate() {
        let wt = WindowTable::new(a, n1, n2);
        let found = wt.codes().find(|&(_, _, c)| c == code);
        if let Some((i, j, _)) = found {
            return WindowPosition { array: k, row: i, col: j };
        }
    }
    unreachable!("code {code} was marked as seen")
}

fn census(arrays: &[TorusArray], n1: usize, n2: usize, parallel: bool) -> Result<VerdictReport> {
    let start = Instant::now();
    check_census_shape(arrays, n1, n2)?;
    let area = n1 * n2;
    let needed = (1u64 << area) - 1;
    let windows: u64 = arrays.iter().map(|a| (a.rows() * a.cols()) as u64).sum();
    let params = arrays.first().map(|a| CodeParams::new(a.rows(), a.cols(), n1, n2));

    let clean = parallel && {
        let table: Vec<AtomicU64> = (0..(1usize << area).div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
        parallel_scan(arrays, n1, n2, &table)
    };
    let report = if clean && windows == needed {
        VerdictReport::pass(Criterion::Census, params)
    } else {
        // Re-scan serially so that the witness does not depend on scheduling.
        let (witness, seen) = serial_scan(arrays, n1, n2);
        match witness {
            Some(w) => VerdictReport::fail(Criterion::Census, params, w),
            None if windows == needed => VerdictReport::pass(Criterion::Census, params),
            None => {
                let code = (1..=needed).find(|&c| !seen.contains(c as usize)).expect("fewer windows than codes");
                VerdictReport::fail(
                    Criterion::Census,
                    params,
                    Witness::Window {
                        issue: WindowIssue::Missing,
                        position: None,
                        code,
                        bits: window_rows(code, n1, n2),
                    },
                )
            }
        }
    };
    Ok(report
        .with_count("arrays", arrays.len() as u64)
        .with_count("windows", windows)
        .with_count("nonzero-patterns", needed)
        .timed(start))
}

/// Slides every toroidal `n1 x n2` window over every array. Passes iff every
/// nonzero pattern occurs exactly once and the zero pattern never does.
pub fn window_census(arrays: &[TorusArray], n1: usize, n2: usize) -> Result<VerdictReport> {
    census(arrays, n1, n2, true)
}

/// Single-threaded [`window_census`]; verdicts and witnesses are identical.
pub fn window_census_serial(arrays: &[TorusArray], n1: usize, n2: usize) -> Result<VerdictReport> {
    census(arrays, n1, n2, false)
}

fn fingerprint(a: &TorusArray) -> u64 {
    let mut h = DefaultHasher::new();
    a.hash(&mut h);
    h.finish()
}

/// Checks that `A + shift(B)` is zero or a shift of a codeword for every
/// pair of codewords and every shift.
///
/// Shifts of all codewords are indexed by a content hash; a hit is confirmed
/// by rebuilding the candidate shift and comparing exactly.
pub fn shift_add_closure(arrays: &[TorusArray]) -> Result<VerdictReport> {
    let start = Instant::now();
    let Some(first) = arrays.first() else {
        return Ok(VerdictReport::pass(Criterion::ShiftAdd, None).timed(start));
    };
    let (r1, r2) = (first.rows(), first.cols());
    if let Some(a) = arrays.iter().find(|a| (a.rows(), a.cols()) != (r1, r2)) {
        return Err(Error::DimensionMismatch(r1, r2, a.rows(), a.cols()));
    }
    let shifts: Vec<(usize, usize)> = (0..r1).flat_map(|dv| (0..r2).map(move |dh| (dv, dh))).collect();
    let mut index: HashMap<u64, Vec<(usize, usize, usize)>> = HashMap::new();
    let keyed: Vec<(u64, (usize, usize, usize))> = arrays
        .par_iter()
        .enumerate()
        .flat_map_iter(|(b, arr)| {
            shifts.iter().map(move |&(dv, dh)| (fingerprint(&arr.shift(dv as i64, dh as i64)), (b, dv, dh)))
        })
        .collect();
    for (key, entry) in keyed {
        index.entry(key).or_default().push(entry);
    }
    let is_codeword_shift = |sum: &TorusArray| {
        index
            .get(&fingerprint(sum))
            .is_some_and(|cands| cands.iter().any(|&(c, dv, dh)| &arrays[c].shift(dv as i64, dh as i64) == sum))
    };
    let failures: Vec<Option<Witness>> = arrays
        .par_iter()
        .enumerate()
        .map(|(a, arr)| {
            for (b, other) in arrays.iter().enumerate() {
                for &(dv, dh) in &shifts {
                    let sum = arr.add(&other.shift(dv as i64, dh as i64)).expect("same dimensions");
                    if !sum.is_zero() && !is_codeword_shift(&sum) {
                        return Some(Witness::ShiftAdd {
                            a,
                            b,
                            dv,
                            dh,
                            sum: sum.to_string().lines().map(str::to_string).collect(),
                        });
                    }
                }
            }
            None
        })
        .collect();
    let report = match failures.into_iter().flatten().next() {
        Some(w) => VerdictReport::fail(Criterion::ShiftAdd, None, w),
        None => VerdictReport::pass(Criterion::ShiftAdd, None),
    };
    let pairs = (arrays.len() * arrays.len() * shifts.len()) as u64;
    Ok(report.with_count("pairs", pairs).timed(start))
}

fn parameter_check(arrays: &[TorusArray], params: &CodeParams) -> VerdictReport {
    let fail = |text: String| VerdictReport::fail(Criterion::Parameters, Some(*params), Witness::Message { text });
    let delta = match params.validate() {
        Ok(d) => d,
        Err(e) => return fail(e.to_string()),
    };
    if arrays.len() as u64 != delta {
        return fail(format!(
            "expected {delta} arrays with (2^{} - 1) = {delta} x {}, found {}",
            params.area(),
            params.period(),
            arrays.len()
        ));
    }
    if let Some((k, a)) = arrays.iter().enumerate().find(|(_, a)| (a.rows(), a.cols()) != (params.r1, params.r2)) {
        return fail(format!("array {k} is {}x{}, expected {}x{}", a.rows(), a.cols(), params.r1, params.r2));
    }
    VerdictReport::pass(Criterion::Parameters, Some(*params)).with_count("codewords", delta)
}

/// Parameter arithmetic, then census, then shift-and-add closure. The verdict
/// is their conjunction and carries the first failure's witness.
pub fn verify_prac(arrays: &[TorusArray], params: &CodeParams) -> VerdictReport {
    let start = Instant::now();
    let mut checks = vec![parameter_check(arrays, params)];
    if checks[0].passed() {
        let census = if params.area() > MAX_CENSUS_AREA {
            VerdictReport::new(Criterion::Census, Some(*params), Verdict::Inconclusive)
                .with_note(format!("window area {} exceeds the census bound {MAX_CENSUS_AREA}", params.area()))
        } else {
            window_census(arrays, params.n1, params.n2).unwrap_or_else(|e| {
                VerdictReport::fail(Criterion::Census, Some(*params), Witness::Message { text: e.to_string() })
            })
        };
        checks.push(census);
        let closure = shift_add_closure(arrays).unwrap_or_else(|e| {
            VerdictReport::fail(Criterion::ShiftAdd, Some(*params), Witness::Message { text: e.to_string() })
        });
        checks.push(closure);
    }
    let verdict = if checks.iter().any(|c| c.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if checks.iter().any(|c| c.verdict == Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let mut report = VerdictReport::new(Criterion::Prac, Some(*params), verdict);
    report.witness = checks.iter().find(|c| c.verdict == Verdict::Fail).and_then(|c| c.witness.clone());
    report.checks = checks;
    report.timed(start)
}
