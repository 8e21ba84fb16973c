use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use prac::criteria::{
    classify_construction, conjecture_search, det_test, setpoly_test, sufficient_conditions, trace_independence_test,
    uniform_exponent, vee, window_positions,
};
use prac::folding::{fold_zero_factor, read_arrays, write_arrays, CodeParams, TorusArray};
use prac::gf2poly::{
    classify, count_irreducible_with_exponent, enumerate_irreducible, exponent, factor, is_irreducible, ord2, product,
    BinaryPolynomial,
};
use prac::lfsr::{zero_factor, MAX_ZERO_FACTOR_DEGREE};
use prac::report::{Criterion, Verdict, VerdictReport, Witness};
use prac::verify::{verify_prac, MAX_CENSUS_AREA};
use serde_json::json;

use crate::args::{CriterionArg, ParamArgs};
use crate::output::{Document, Run};

fn folded_arrays(f: &BinaryPolynomial, r1: usize, r2: usize) -> Result<Vec<TorusArray>> {
    let zf = zero_factor(f)?;
    Ok(fold_zero_factor(&zf, r1, r2)?)
}

/// Window shape used for the file header when `--n1`/`--n2` are absent: the
/// smallest `n1` with `r1 | 2^n1 - 1`, provided the resulting shape is valid.
fn default_shape(deg: usize, r1: usize, r2: usize) -> Option<CodeParams> {
    let n1 = ord2(r1 as u64).ok()? as usize;
    if n1 == 0 || !deg.is_multiple_of(n1) {
        return None;
    }
    let params = CodeParams::new(r1, r2, n1, deg / n1);
    params.validate().ok().map(|_| params)
}

pub fn construct(poly: &BinaryPolynomial, args: &ParamArgs) -> Result<Run> {
    let (r1, r2) = args.periods()?;
    let e = uniform_exponent(poly)?;
    if e != (r1 * r2) as u64 {
        bail!("polynomial {poly} has exponent {e}, but {r1} x {r2} arrays need exponent {}", r1 * r2);
    }
    let params = match (args.n1, args.n2) {
        (Some(n1), Some(n2)) => Some(CodeParams::new(r1, r2, n1, n2)),
        (None, None) => default_shape(poly.deg(), r1, r2),
        _ => bail!("give both --n1 and --n2, or neither"),
    };
    let arrays = folded_arrays(poly, r1, r2)?;

    let mut doc = Document::new("construct").input("poly", poly).input("r1", r1).input("r2", r2);
    doc.params = params;
    doc.counts.insert("arrays".into(), arrays.len() as u64);
    doc.counts.insert("exponent".into(), e);
    doc.result = json!({ "arrays": arrays });
    let mut run = Run::new(doc, Verdict::Pass);
    run.line(format!("folded {} sequences of {poly} into {r1} x {r2} arrays", arrays.len()));
    if let Some(p) = params {
        run.line(format!("header parameters {p}"));
    }
    run.artifact = Some(write_arrays(&arrays, params.as_ref()));
    Ok(run)
}

pub fn verify(path: &Path, args: &ParamArgs) -> Result<Run> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (header, arrays) = read_arrays(&text).with_context(|| format!("parsing {}", path.display()))?;
    let params = if args.is_empty() { header } else { Some(args.full()?) };
    let mut doc = Document::new("verify").input("file", path.display());
    doc.params = params;
    doc.counts.insert("arrays".into(), arrays.len() as u64);
    let report = if arrays.is_empty() {
        VerdictReport::fail(Criterion::Parameters, params, Witness::Message { text: "file contains no arrays".into() })
    } else {
        let Some(params) = params else {
            bail!("no '# r1 r2 n1 n2' header; give --r1 --r2 --n1 --n2");
        };
        verify_prac(&arrays, &params)
    };
    let verdict = report.verdict;
    doc.push(report);
    Ok(Run::new(doc, verdict))
}

pub fn vee_product(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<Run> {
    let g = vee(f1, f2)?;
    let class = classify(&g)?;
    let construction = if f1.deg() >= 2 && f2.deg() >= 2 { Some(classify_construction(f1, f2)?) } else { None };
    let mut doc = Document::new("vee").input("f1", f1).input("f2", f2);
    doc.params = construction.as_ref().map(|c| c.params);
    doc.counts.insert("degree".into(), g.deg() as u64);
    if let Some(e) = class.exponent {
        doc.counts.insert("exponent".into(), e);
    }
    doc.result = json!({
        "g": g,
        "compact": g.to_compact(),
        "kind": class.kind,
        "factors": class.factors,
        "construction": construction,
    });
    let mut run = Run::new(doc, Verdict::Pass);
    run.line(format!("g       {g}"));
    run.line(format!("compact {}", g.to_compact()));
    run.line(format!("degree  {}", g.deg()));
    if let Some(e) = class.exponent {
        run.line(format!("exponent {e}"));
    }
    run.line(format!("type    {}", class.kind));
    if class.factors.len() > 1 {
        for f in &class.factors {
            run.line(format!("  factor {f}"));
        }
    }
    if let Some(c) = &construction {
        let [t1, t2, tg] = c.types;
        let swap = if c.swapped { ", inputs swapped" } else { "" };
        run.line(format!("table row {} ({t1}, {t2}, {tg}{swap}); code {}", c.row, c.params));
    }
    run.line("characteristic polynomial and sequence span agree");
    Ok(run)
}

/// Applicability of a criterion to `factors` at `params`, or the reason it
/// does not apply.
fn applicable(criterion: CriterionArg, factors: &[BinaryPolynomial], params: &CodeParams) -> Result<(), String> {
    let deg: usize = factors.iter().map(BinaryPolynomial::deg).sum();
    let single = factors.len() == 1;
    match criterion {
        CriterionArg::Census => {
            if deg > MAX_ZERO_FACTOR_DEGREE {
                return Err(format!("degree {deg} exceeds the register bound {MAX_ZERO_FACTOR_DEGREE}"));
            }
            if params.area() > MAX_CENSUS_AREA {
                return Err(format!("window area {} exceeds the census bound {MAX_CENSUS_AREA}", params.area()));
            }
        }
        CriterionArg::Setpoly | CriterionArg::Sufficient => {
            if !single {
                return Err("needs a single irreducible polynomial".into());
            }
            if deg != params.area() {
                return Err(format!("degree {deg} differs from window area {}", params.area()));
            }
        }
        CriterionArg::Det => {
            if deg != params.area() {
                return Err(format!("degree {deg} differs from window area {}", params.area()));
            }
        }
        CriterionArg::All => unreachable!("expanded by the caller"),
    }
    Ok(())
}

fn run_criterion(
    criterion: CriterionArg,
    poly: &BinaryPolynomial,
    factors: &[BinaryPolynomial],
    params: &CodeParams,
    exhaustive: bool,
) -> Result<Vec<VerdictReport>> {
    Ok(match criterion {
        CriterionArg::Census => {
            let arrays = folded_arrays(poly, params.r1, params.r2)?;
            vec![verify_prac(&arrays, params)]
        }
        CriterionArg::Setpoly => {
            let positions = window_positions(params)?;
            vec![setpoly_test(poly, &positions, exhaustive)?, trace_independence_test(poly, params)?]
        }
        CriterionArg::Det => vec![det_test(factors, params)?],
        CriterionArg::Sufficient => vec![sufficient_conditions(params)],
        CriterionArg::All => unreachable!("expanded by the caller"),
    })
}

/// Verdicts of the exact criteria, ignoring undecided ones.
fn decisive(reports: &[VerdictReport]) -> Vec<Verdict> {
    reports
        .iter()
        .filter(|r| r.criterion != Criterion::SufficientConditions && r.verdict != Verdict::Inconclusive)
        .map(|r| r.verdict)
        .collect()
}

pub fn check_fold(
    poly: Option<&BinaryPolynomial>,
    factors: Option<&[BinaryPolynomial]>,
    args: &ParamArgs,
    criterion: CriterionArg,
    exhaustive: bool,
) -> Result<Run> {
    let params = args.full()?;
    let (poly, factors) = match (poly, factors) {
        (Some(p), None) => (p.clone(), factor(p)?),
        (None, Some(fs)) => {
            for f in fs {
                if !is_irreducible(f)? {
                    bail!("factor {f} is not irreducible");
                }
            }
            (product(fs), fs.to_vec())
        }
        _ => bail!("give exactly one of --poly and --factors"),
    };
    let e = uniform_exponent(&poly)?;
    if e != params.period() {
        bail!("polynomial {poly} has exponent {e}, but {params} needs exponent {}", params.period());
    }
    params.validate()?;

    let mut doc = Document::new("check-fold")
        .input("poly", &poly)
        .input("criterion", criterion.as_str())
        .input("factors", factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    doc.params = Some(params);
    doc.counts.insert("exponent".into(), e);
    doc.counts.insert("factors".into(), factors.len() as u64);

    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    if criterion == CriterionArg::All {
        for c in [CriterionArg::Census, CriterionArg::Setpoly, CriterionArg::Det, CriterionArg::Sufficient] {
            match applicable(c, &factors, &params) {
                Ok(()) => reports.extend(run_criterion(c, &poly, &factors, &params, exhaustive)?),
                Err(why) => skipped.push(format!("{}: {why}", c.as_str())),
            }
        }
        // Failing sufficient conditions decide nothing.
        for r in &mut reports {
            if r.criterion == Criterion::SufficientConditions && r.verdict == Verdict::Fail {
                r.verdict = Verdict::Inconclusive;
                r.note = Some("sufficient conditions do not hold".into());
            }
        }
    } else {
        if let Err(why) = applicable(criterion, &factors, &params) {
            bail!("criterion {} does not apply: {why}", criterion.as_str());
        }
        reports.extend(run_criterion(criterion, &poly, &factors, &params, exhaustive)?);
    }

    let exact = decisive(&reports);
    let sufficient_pass = reports.iter().any(|r| r.criterion == Criterion::SufficientConditions && r.passed());
    let agreement = exact.windows(2).all(|w| w[0] == w[1]) && !(sufficient_pass && exact.contains(&Verdict::Fail));
    let verdict = if criterion == CriterionArg::Sufficient {
        reports[0].verdict
    } else if !agreement || exact.contains(&Verdict::Fail) {
        Verdict::Fail
    } else if exact.is_empty() && !sufficient_pass {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    doc.agreement = Some(agreement);
    if !skipped.is_empty() {
        doc.result = json!({ "skipped": skipped });
    }
    for r in reports {
        doc.push(r);
    }
    let mut run = Run::new(doc, verdict);
    for s in &skipped {
        run.line(format!("skipped {s}"));
    }
    Ok(run)
}

pub fn enumerate(args: &ParamArgs, criterion: Option<CriterionArg>) -> Result<Run> {
    let params = args.full()?;
    let (n, e) = (params.area(), params.period());
    let polys = enumerate_irreducible(n, e);
    let expected = if ord2(e)? as usize == n { count_irreducible_with_exponent(e)? } else { 0 };
    if expected != polys.len() as u64 {
        bail!("enumerated {} polynomials but the count formula gives {expected}", polys.len());
    }
    let mut doc = Document::new("enumerate").input("degree", n).input("exponent", e);
    doc.params = Some(params);
    doc.counts.insert("polynomials".into(), polys.len() as u64);
    let mut run_verdict = Verdict::Pass;
    let mut lines = Vec::new();
    if let Some(c) = criterion {
        for f in &polys {
            let sub = check_fold(Some(f), None, args, c, false)?;
            let mark = match sub.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inconclusive => "inconclusive",
            };
            lines.push(format!("{:<40} {:<16} {mark}", f.to_string(), f.to_compact()));
            if sub.verdict == Verdict::Fail {
                run_verdict = Verdict::Fail;
            } else if sub.verdict == Verdict::Inconclusive && run_verdict == Verdict::Pass {
                run_verdict = Verdict::Inconclusive;
            }
            for r in sub.doc.verdicts {
                doc.push(r);
            }
        }
    } else {
        lines.extend(polys.iter().map(|f| format!("{:<40} {}", f.to_string(), f.to_compact())));
    }
    doc.result = json!({ "polynomials": polys });
    let mut run = Run::new(doc, run_verdict);
    run.line(format!("{} irreducible polynomials of degree {n} and exponent {e}", polys.len()));
    for l in lines {
        run.line(l);
    }
    Ok(run)
}

pub fn classify_poly(poly: &BinaryPolynomial) -> Result<Run> {
    let class = classify(poly)?;
    let mut doc = Document::new("classify").input("poly", poly);
    doc.counts.insert("degree".into(), poly.deg() as u64);
    doc.counts.insert("factors".into(), class.factors.len() as u64);
    if let Some(e) = class.exponent {
        doc.counts.insert("exponent".into(), e);
    }
    doc.result = serde_json::to_value(&class)?;
    let mut run = Run::new(doc, Verdict::Pass);
    run.line(format!("polynomial {poly}"));
    run.line(format!("compact    {}", poly.to_compact()));
    run.line(format!("type       {}", class.kind));
    match class.exponent {
        Some(e) => run.line(format!("exponent   {e}")),
        None => {
            for f in &class.factors {
                run.line(format!("  factor {f} exponent {}", exponent(f)?));
            }
        }
    }
    if class.exponent.is_some() && class.factors.len() > 1 {
        for f in &class.factors {
            run.line(format!("  factor {f}"));
        }
    }
    Ok(run)
}

pub fn classify_pair(f1: &BinaryPolynomial, f2: &BinaryPolynomial) -> Result<Run> {
    let record = classify_construction(f1, f2)?;
    let mut doc = Document::new("classify").input("f1", f1).input("f2", f2);
    doc.params = Some(record.params);
    doc.counts.insert("row".into(), record.row as u64);
    doc.result = serde_json::to_value(&record)?;
    let mut run = Run::new(doc, Verdict::Pass);
    let [t1, t2, tg] = record.types;
    run.line(format!("{:<12} {:<12} {:<12} row", "f1", "f2", "g"));
    run.line(format!("{:<12} {:<12} {:<12} {}", t1.to_string(), t2.to_string(), tg.to_string(), record.row));
    if record.swapped {
        run.line("matched with f1 and f2 exchanged");
    }
    run.line(format!("g = {}", record.g));
    run.line(format!("code parameters {}", record.params));
    Ok(run)
}

pub fn conjecture(args: &ParamArgs, kmax: usize, census_limit: usize) -> Result<Run> {
    let p = args.full()?;
    let report = conjecture_search(p.n1, p.n2, p.r1, p.r2, kmax, census_limit)?;
    let mut doc = Document::new("conjecture").input("kmax", kmax).input("census-limit", census_limit);
    doc.params = Some(p);
    doc.counts.insert("candidates".into(), report.candidates as u64);
    doc.counts.insert("base".into(), report.base.len() as u64);
    doc.counts.insert("entries".into(), report.entries.len() as u64);
    let counterexamples = report.counterexamples().count();
    doc.counts.insert("counterexamples".into(), counterexamples as u64);
    let mut run_lines = vec![
        format!(
            "{} candidates, {} pass individually; r1 in (n1, 2 n1): {}",
            report.candidates,
            report.base.len(),
            report.in_range
        ),
        format!("{:<3} {:<18} {:<8} {:<8} {}", "k", "params", "det", "census", "factors"),
    ];
    for entry in &report.entries {
        let census = entry.census.as_ref().map_or("-".to_string(), |c| c.verdict.to_string());
        let factors: Vec<String> = entry.factors.iter().map(BinaryPolynomial::to_compact).collect();
        let flag = if entry.counterexample { "  counterexample" } else { "" };
        run_lines.push(format!(
            "{:<3} {:<18} {:<8} {:<8} {}{flag}",
            entry.k,
            entry.params.to_string(),
            entry.determinant.verdict.to_string(),
            census,
            factors.join(" ")
        ));
        if let Some(w) = &entry.determinant.witness {
            if entry.counterexample {
                doc.witnesses.push(w.clone());
            }
        }
    }
    doc.result = serde_json::to_value(&report)?;
    let verdict = if counterexamples == 0 { Verdict::Pass } else { Verdict::Fail };
    let mut run = Run::new(doc, verdict);
    for l in run_lines {
        run.line(l);
    }
    Ok(run)
}
