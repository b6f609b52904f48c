//! The subcommands. Each returns a finished report or a typed failure.

use std::time::Instant;

use serde_json::{json, Value};

use heightgap_core::canonical::{
    canonical_height_doubling, canonical_height_local_sum, naive_height, CanonicalError, DEFAULT_DOUBLINGS,
};
use heightgap_core::curve::{supersingular_scan, ScanCriteria, Verdict, WeierstrassCurve, SURJECTIVITY_STATUS};
use heightgap_core::formal::{eisenstein_tower, supersingular_index, torsion_valuations};
use heightgap_core::gap::{
    cross_check, thm01_constants, thm02_constants, tower_prediction, GapParams, Q_of_n, DEFAULT_UNIVERSAL_C,
};
use heightgap_core::height::{is_root_of_unity, weil_height, HeightError};

use crate::input::{curve_json, load, parse_curve, parse_curve_csv, parse_minpoly, parse_point, point_json};
use crate::report::ReportBuilder;
use crate::suites::{CriterionResult, Suite, SuiteName};
use crate::{CliError, Report, RunConfig};

/// Unproved field equalities the torsion-tower reading depends on.
pub const TOWER_ASSUMPTION: &str =
    "PREDICTED: the field equalities for the torsion tower rest on a lemma whose published proof is incomplete";

/// The universal constant c is an input, not derived here.
pub const UNIVERSAL_C_ASSUMPTION: &str =
    "INPUT: the universal constant c of the lower bound h(β) ≥ c/d² is supplied by the caller, not computed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Doubling,
    Local,
    Both,
}

fn bad(e: impl ToString) -> CliError {
    CliError::bad(e.to_string())
}

fn inconsistent(message: String, report: Report) -> CliError {
    CliError::Inconsistent { message, report: Box::new(report) }
}

/// A single JSON curve, or a CSV batch when the text starts with a `label` header.
fn load_curves(arg: &str) -> Result<Vec<(String, WeierstrassCurve)>, CliError> {
    let text = load(arg)?;
    if text.trim_start().starts_with("label") {
        parse_curve_csv(&text)
    } else {
        Ok(vec![(String::new(), parse_curve(&text)?)])
    }
}

pub fn scan(cfg: &RunConfig, curves: &str, p_min: u64, p_max: u64) -> Result<Report, CliError> {
    let curves = load_curves(curves)?;
    if p_max > cfg.desk_bounds.max_pf {
        return Err(CliError::bad(format!("p_max = {p_max} exceeds max_pf = {}", cfg.desk_bounds.max_pf)));
    }
    let mut rb = ReportBuilder::new("scan", cfg);
    rb.assumptions.push(SURJECTIVITY_STATUS.into());
    let results: Vec<Value> = curves
        .iter()
        .map(|(label, c)| {
            let entries = if p_min > p_max { Vec::new() } else { supersingular_scan(c, p_min, p_max, ScanCriteria::over_q()) };
            let accepted: Vec<u64> =
                entries.iter().filter(|e| e.verdict == Verdict::Accepted).map(|e| e.p).collect();
            json!({ "label": label, "curve": curve_json(c), "accepted": accepted, "entries": entries })
        })
        .collect();
    let inputs = json!({ "curves": curves.iter().map(|(l, c)| json!({"label": l, "curve": curve_json(c)})).collect::<Vec<_>>(), "p_min": p_min, "p_max": p_max });
    Ok(rb.finish(inputs, json!({ "results": results })))
}

pub fn formal(cfg: &RunConfig, curve: &str, p: u64, level: u32) -> Result<Report, CliError> {
    let c = parse_curve(&load(curve)?)?;
    if level == 0 || level > cfg.desk_bounds.max_tower_n {
        return Err(CliError::bad(format!("level {level} is outside 1..={}", cfg.desk_bounds.max_tower_n)));
    }
    let order = (p * p + 1) as usize;
    if order > cfg.series_order_cap {
        return Err(CliError::bad(format!("[p](T) to order p² + 1 = {order} exceeds series_order_cap")));
    }
    let inputs = json!({ "curve": curve_json(&c), "p": p, "level": level });
    let mut rb = ReportBuilder::new("formal", cfg);
    let index = supersingular_index(&c, p, order).map_err(bad)?;
    if index.index as u64 != p * p {
        rb.warnings.push(format!("index {} ≠ p²: the reduction at {p} is not supersingular; no tower built", index.index));
        return Ok(rb.finish(inputs, json!({ "index": index })));
    }
    rb.assumptions.push(TOWER_ASSUMPTION.into());
    let pf = eisenstein_tower(&c, p, level, &cfg.tower_config()).map_err(bad)?;
    let torsion = torsion_valuations(&pf).map_err(bad)?;
    let counts: Vec<u64> = (1..=level)
        .map(|n| 1 + torsion.iter().filter(|t| t.level <= n).map(|t| t.multiplicity as u64).sum::<u64>())
        .collect();
    let prediction = tower_prediction(level, p).map_err(bad)?;
    let checks = cross_check(&pf).map_err(bad)?;
    let outputs = json!({
        "index": index,
        "tower": pf,
        "torsion": torsion,
        "torsion_counts": counts,
        "prediction": prediction,
        "cross_check": checks,
    });
    let report = rb.finish(inputs, outputs);
    if let Some(bad_level) = checks.iter().find(|c| !c.agrees) {
        return Err(inconsistent(format!("tower prediction disagrees at level {}", bad_level.level), report));
    }
    Ok(report)
}

pub fn height(cfg: &RunConfig, minpoly: &str) -> Result<Report, CliError> {
    let a = parse_minpoly(&load(minpoly)?)?;
    let mut rb = ReportBuilder::new("height", cfg);
    let h = match weil_height(&a) {
        Ok(h) => h,
        Err(HeightError::NoConvergence { partial }) => {
            rb.warnings.push("root isolation did not converge; the error bound covers the partial result".into());
            partial
        }
        Err(e) => return Err(bad(e)),
    };
    let inputs = json!({ "minpoly": a.minpoly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() });
    let outputs = json!({ "degree": a.degree(), "height": h, "root_of_unity": is_root_of_unity(&a) });
    Ok(rb.finish(inputs, outputs))
}

fn canonical_err(e: CanonicalError) -> CliError {
    bad(e)
}

pub fn ntheight(cfg: &RunConfig, curve: &str, point: &str, method: Method) -> Result<Report, CliError> {
    let c = parse_curve(&load(curve)?)?;
    let p = parse_point(&c, &load(point)?)?;
    let inputs = json!({ "curve": curve_json(&c), "point": point_json(&p), "method": format!("{method:?}").to_lowercase() });
    let rb = ReportBuilder::new("ntheight", cfg);
    let torsion_order = c.torsion_order(&p, 12);
    let naive = naive_height(&p);
    let doubling = match method {
        Method::Doubling | Method::Both => Some(canonical_height_doubling(&c, &p, DEFAULT_DOUBLINGS).map_err(canonical_err)?),
        Method::Local => None,
    };
    let local = match method {
        Method::Local | Method::Both => Some(canonical_height_local_sum(&c, &p).map_err(canonical_err)?),
        Method::Doubling => None,
    };
    let gap = match (&doubling, &local) {
        (Some(d), Some(l)) => Some((d.value - l.value).abs()),
        _ => None,
    };
    let value = doubling.as_ref().map(|d| d.value).or(local.as_ref().map(|l| l.value));
    let outputs = json!({
        "naive": naive,
        "canonical_height": value,
        "torsion": torsion_order.is_some(),
        "torsion_order": torsion_order,
        "doubling": doubling,
        "local": local,
        "method_gap": gap,
    });
    let report = rb.finish(inputs, outputs);
    match gap {
        Some(g) if !(g <= cfg.tolerances.method_agreement) => {
            Err(inconsistent(format!("doubling and local-sum heights differ by {g:e}"), report))
        }
        _ => Ok(report),
    }
}

pub struct ConstantsArgs {
    pub d: u32,
    pub f: u32,
    pub p: u64,
    pub universal_c: Option<f64>,
    pub local_degree: Option<u32>,
}

pub fn constants(cfg: &RunConfig, args: &ConstantsArgs) -> Result<Report, CliError> {
    let params = GapParams::new(args.d, args.f, args.p).map_err(bad)?;
    let c = args.universal_c.unwrap_or(DEFAULT_UNIVERSAL_C);
    let d_frak_p = args.local_degree.unwrap_or(args.f);
    let mut rb = ReportBuilder::new("constants", cfg);
    rb.assumptions.push(UNIVERSAL_C_ASSUMPTION.into());
    let number_field = thm01_constants(&params, c).map_err(bad)?;
    let elliptic = thm02_constants(&params, d_frak_p).map_err(bad)?;
    rb.warnings.extend(number_field.warnings.iter().cloned());
    let q = args.p.checked_mul(args.p).ok_or_else(|| CliError::bad("p² overflows"))?;
    let q_of_n: Vec<Value> = (1..=2).map(|n| json!({ "n": n, "Q": Q_of_n(n, q).ok() })).collect();
    let inputs = json!({ "d": args.d, "f": args.f, "p": args.p, "universal_c": c, "local_degree": d_frak_p });
    let outputs = json!({ "number_field": number_field, "elliptic": elliptic, "Q": q_of_n });
    Ok(rb.finish(inputs, outputs))
}

/// Plain-text rendering of a constants report.
pub fn constants_table(report: &Report) -> String {
    let mut out = String::new();
    let mut row = |name: &str, v: &Value| out.push_str(&format!("{name:<24} {v}\n"));
    let nf = &report.outputs["number_field"];
    for k in ["C1", "c2_ramified", "c2_unramified", "c2", "C2", "final_C"] {
        row(k, &nf[k]);
    }
    let el = &report.outputs["elliptic"];
    for k in ["amplification", "local_gap", "global_gap", "epsilon"] {
        row(k, &el[k]);
    }
    out
}

pub fn verify(cfg: &RunConfig, suite: SuiteName) -> Result<(Report, Vec<CriterionResult>), CliError> {
    let start = Instant::now();
    let rb = ReportBuilder::new("verify", cfg);
    let results = Suite::new(cfg).run_suite(suite);
    let passed = results.iter().all(|r| r.passed);
    let inputs = json!({ "suite": format!("{suite:?}").to_lowercase() });
    let outputs = json!({ "passed": passed, "criteria": results, "elapsed_s": start.elapsed().as_secs_f64() });
    let report = rb.finish(inputs, outputs);
    if passed {
        Ok((report, results))
    } else {
        let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
        Err(inconsistent(format!("criteria failed: {}", failed.join(", ")), report))
    }
}
