use std::collections::BTreeMap;

use lucas_atlas::census::{census, Threshold};
use lucas_atlas::growth::{delta_power_minus_one_bound, delta_sweep, growth_sweep};
use lucas_atlas::oracle::census_naive;
use lucas_atlas::pell::pell_solve_box;
use lucas_atlas::precision::Ctx;
use lucas_atlas::term_sets::{
    density_check, exponent_regression, ln_ge_set_with, ln_set_with, SetOptions, TermSetResult,
};
use lucas_atlas::verify::{run_suite, SuiteConfig};
use lucas_atlas::{term, LucasParams, Result};
use serde_json::{json, Value};

use crate::report::{Meta, Output, Report, Table};

/// Builds an [`Output`] once the command has filled in its parts.
pub struct Builder {
    command: &'static str,
    params: BTreeMap<&'static str, String>,
    precision: usize,
}

impl Builder {
    pub fn new(command: &'static str, precision: usize) -> Self {
        Builder {
            command,
            params: BTreeMap::new(),
            precision,
        }
    }

    pub fn param(mut self, key: &'static str, value: impl ToString) -> Self {
        self.params.insert(key, value.to_string());
        self
    }

    fn finish(self, results: Value, table: Table, passed: bool) -> Output {
        Output {
            report: Report {
                command: self.command,
                params: self.params,
                results,
                meta: Meta {
                    version: env!("CARGO_PKG_VERSION"),
                    precision_bits: self.precision,
                    wall_time_ms: 0,
                },
            },
            table,
            passed,
        }
    }
}

fn digits(prec: usize) -> usize {
    // About 0.3 decimal digits per bit, keeping a guard margin.
    (prec as f64 * 0.30103) as usize - 3
}

pub fn term_cmd(b: Builder, a: i64, bb: i64, n: u64) -> Result<Output> {
    let v = term(LucasParams::new(a, bb), n).to_string();
    let mut t = Table::new(&["A", "B", "n", "value"]);
    t.row(vec![a.to_string(), bb.to_string(), n.to_string(), v.clone()]);
    Ok(b.finish(json!({ "value": v }), t, true))
}

pub fn classify_cmd(b: Builder, a: i64, bb: i64) -> Result<Output> {
    let prec = b.precision;
    let p = LucasParams::new(a, bb);
    let c = lucas_atlas::lucas::classify_with_precision(p, prec);
    let mut ctx = Ctx::new(prec);
    let root = ctx.to_decimal(&c.dominant_root_abs, digits(prec));
    let kind = c.kind.as_str();
    let d = c.discriminant.to_string();
    let mut t = Table::new(&["A", "B", "kind", "discriminant", "dominant_root_abs"]);
    t.row(vec![a.to_string(), bb.to_string(), kind.into(), d.clone(), root.clone()]);
    Ok(b.finish(
        json!({ "kind": kind, "discriminant": d, "dominant_root_abs": root }),
        t,
        true,
    ))
}

pub fn census_cmd(b: Builder, t: Threshold, oracle: bool) -> Result<Output> {
    let r = census(t)?;
    let oracle_count = oracle.then(|| census_naive(t));
    let mut results = json!({
        "t": t.to_string(),
        "exact_count": r.exact_count.to_string(),
        "lower_formula": r.lower_formula.to_string(),
        "upper_formula": r.upper_formula.to_string(),
        "within_bounds": r.within_bounds(),
        "breakdown": {
            "non_real": r.breakdown.non_real.to_string(),
            "real_pos_b": r.breakdown.real_pos_b.to_string(),
            "real_neg_b": r.breakdown.real_neg_b.to_string(),
        },
    });
    let mut header = vec!["t", "exact_count", "lower_formula", "upper_formula", "within_bounds"];
    let mut row = vec![
        t.to_string(),
        r.exact_count.to_string(),
        r.lower_formula.to_string(),
        r.upper_formula.to_string(),
        r.within_bounds().to_string(),
    ];
    if let Some(o) = oracle_count {
        results["oracle_count"] = json!(o.to_string());
        results["oracle_agrees"] = json!(o == r.exact_count);
        header.extend(["oracle_count", "oracle_agrees"]);
        row.extend([o.to_string(), (o == r.exact_count).to_string()]);
    }
    let mut table = Table::new(&header);
    table.row(row);
    Ok(b.finish(results, table, true))
}

fn term_set_output(b: Builder, r: TermSetResult) -> Output {
    let mut results = json!({
        "n": r.n,
        "N": r.big_n.to_string(),
        "count": r.count.to_string(),
        "upper_bound_value": r.upper_bound_value,
        "stats": {
            "a_limit": r.stats.a_limit.to_string(),
            "b_limit": r.stats.b_limit.to_string(),
            "tail_b_half": r.stats.tail_b_half.to_string(),
            "tail_b_stop": r.stats.tail_b_stop.to_string(),
            "evaluations": r.stats.evaluations.to_string(),
        },
    });
    if let Some(m) = &r.members {
        results["members"] = json!(m.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }
    let table = if let Some(w) = &r.witnesses {
        results["witnesses"] = w
            .iter()
            .map(|(x, w)| {
                (
                    x.to_string(),
                    json!({ "A": w.a.to_string(), "B": w.b.to_string(), "n": w.n }),
                )
            })
            .collect::<serde_json::Map<_, _>>()
            .into();
        let mut t = Table::new(&["value", "A", "B", "n"]);
        for (x, w) in w {
            t.row(vec![x.to_string(), w.a.to_string(), w.b.to_string(), w.n.to_string()]);
        }
        t
    } else if let Some(m) = &r.members {
        let mut t = Table::new(&["value"]);
        for x in m {
            t.row(vec![x.to_string()]);
        }
        t
    } else {
        let mut t = Table::new(&["n", "N", "count", "upper_bound_value"]);
        t.row(vec![
            r.n.to_string(),
            r.big_n.to_string(),
            r.count.to_string(),
            r.upper_bound_value.map(|v| format!("{v:e}")).unwrap_or_default(),
        ]);
        t
    };
    b.finish(results, table, true)
}

pub fn ln_set_cmd(b: Builder, n: u32, big_n: u64, opts: SetOptions) -> Result<Output> {
    Ok(term_set_output(b, ln_set_with(n, big_n, opts)?))
}

pub fn ln_ge_set_cmd(b: Builder, n: u32, big_n: u64, opts: SetOptions) -> Result<Output> {
    Ok(term_set_output(b, ln_ge_set_with(n, big_n, opts)?))
}

pub fn growth_check_cmd(b: Builder, a_max: i64, b_max: i64, n_max: u64) -> Result<Output> {
    let mut ctx = Ctx::new(b.precision);
    let s = growth_sweep(&mut ctx, a_max, b_max, n_max)?;
    let ok = s.violations.is_empty();
    let mut t = Table::new(&["A_max", "B_max", "n_max", "pairs", "terms", "violations"]);
    t.row(vec![
        a_max.to_string(),
        b_max.to_string(),
        n_max.to_string(),
        s.pairs.to_string(),
        s.terms.to_string(),
        s.violations.len().to_string(),
    ]);
    let results = json!({
        "pairs": s.pairs.to_string(),
        "terms": s.terms.to_string(),
        "violations": s.violations.iter().map(|(a, bb, n)| json!([a.to_string(), bb.to_string(), n.to_string()])).collect::<Vec<_>>(),
    });
    Ok(b.finish(results, t, ok))
}

pub fn laurent_cmd(b: Builder, a: i64, bb: i64, ell: u64) -> Result<Output> {
    let p = LucasParams::new(a, bb);
    let mut ctx = Ctx::new(b.precision);
    let ell_i = i64::try_from(ell).map_err(|_| {
        lucas_atlas::Error::OutOfRange {
            name: "ell",
            value: ell.to_string(),
            reason: "too large".into(),
        }
    })?;
    let bound = delta_power_minus_one_bound(&mut ctx, p, ell_i)?;
    let sweep = delta_sweep(&mut ctx, p, ell)?;
    let ln_bound = ctx.to_decimal(&bound.ln_value, digits(b.precision));
    let ok = sweep.violations.is_empty();
    let mut t = Table::new(&["A", "B", "ell", "ln_bound", "min_ln_gap", "argmin", "violations"]);
    t.row(vec![
        a.to_string(),
        bb.to_string(),
        ell.to_string(),
        ln_bound.clone(),
        format!("{}", sweep.min_ln_gap),
        sweep.argmin.to_string(),
        sweep.violations.len().to_string(),
    ]);
    let results = json!({
        "ln_bound": ln_bound,
        "min_ln_gap": sweep.min_ln_gap,
        "argmin": sweep.argmin.to_string(),
        "violations": sweep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    Ok(b.finish(results, t, ok))
}

pub fn pell_cmd(b: Builder, t_val: i64, y_max: u64) -> Result<Output> {
    let s = pell_solve_box(t_val, y_max)?;
    let mut t = Table::new(&["x", "y"]);
    for (x, y) in &s.solutions {
        t.row(vec![x.to_string(), y.to_string()]);
    }
    let results = json!({
        "t": s.t.to_string(),
        "y_max": s.box_y.to_string(),
        "solutions": s.solutions.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect::<Vec<_>>(),
        "families": s.families.iter().map(|f| json!([f.u.to_string(), f.v.to_string()])).collect::<Vec<_>>(),
    });
    Ok(b.finish(results, t, true))
}

pub fn density_cmd(b: Builder, n: u32, big_n: u64) -> Result<Output> {
    let d = density_check(n, big_n)?;
    let ratio = d.to_string();
    let approx = *d.numer() as f64 / *d.denom() as f64;
    let mut t = Table::new(&["n", "N", "count", "ratio", "approx"]);
    let count = (d * big_n).to_integer().to_string();
    t.row(vec![n.to_string(), big_n.to_string(), count.clone(), ratio.clone(), format!("{approx}")]);
    Ok(b.finish(json!({ "count": count, "ratio": ratio, "approx": approx }), t, true))
}

pub fn regress_cmd(b: Builder, n: u32, ns: &[u64]) -> Result<Output> {
    let r = exponent_regression(n, ns)?;
    let mut t = Table::new(&["N", "count", "residual"]);
    let mut k = 0;
    for (x, c) in r.bounds.iter().zip(&r.counts) {
        let res = if *c > 0 {
            k += 1;
            format!("{}", r.residuals[k - 1])
        } else {
            String::new()
        };
        t.row(vec![x.to_string(), c.to_string(), res]);
    }
    let results = json!({
        "slope": r.slope,
        "intercept": r.intercept,
        "points": r.bounds.iter().zip(&r.counts).map(|(x, c)| json!([x.to_string(), c.to_string()])).collect::<Vec<_>>(),
        "residuals": r.residuals,
    });
    Ok(b.finish(results, t, true))
}

pub fn verify_cmd(b: Builder, quick: bool) -> Result<Output> {
    let mut cfg = if quick { SuiteConfig::quick() } else { SuiteConfig::full() };
    cfg.precision = b.precision;
    let outcomes = run_suite(&cfg);
    for o in &outcomes {
        eprintln!("{o}");
    }
    let ok = outcomes.iter().all(|o| o.passed);
    let mut t = Table::new(&["id", "name", "passed", "detail"]);
    for o in &outcomes {
        t.row(vec![o.id.to_string(), o.name.into(), o.passed.to_string(), o.detail.clone()]);
    }
    let results = json!({
        "passed": ok,
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail,
        })).collect::<Vec<_>>(),
    });
    Ok(b.finish(results, t, ok))
}
