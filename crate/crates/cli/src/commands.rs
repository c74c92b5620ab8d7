use std::io::{self, Write};
use std::process::ExitCode;

use cotsum::asymptotics::{c0_asymptotic, c1_direct, c1_empirical, main_term, C1Input};
use cotsum::core_sums::{c0_with, estermann_at_zero, q_sum, vasyunin, Precision, ReducedFraction};
use cotsum::equidist::{
    figure_points, limit_law_reference, scan_with, summarize, Reduction, ScanOptions, ScanWindow,
};
use cotsum::gseries::TruncatedGSeries;
use cotsum::verify::{run_suite, Suite, VerifyConfig};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, num, resolve_dir, write_csv_to, write_csv_file, write_json_file};
use crate::{AsymptArgs, C0Args, C0Format, Format, PrecisionArg, ScanArgs, SuiteArg, VerifyArgs};

#[derive(Serialize)]
struct Valued {
    value: f64,
    err_bound: f64,
}

#[derive(Serialize)]
struct C0Output {
    r: u64,
    b: u64,
    c0: Valued,
    q: Valued,
    v: Valued,
    estermann_re: f64,
    estermann_im: f64,
}

pub fn c0(a: &C0Args) -> CliResult<ExitCode> {
    let f = ReducedFraction::new(a.r, a.b)?;
    let precision = match a.precision {
        PrecisionArg::Default => Precision::Default,
        PrecisionArg::Oracle => Precision::Oracle,
    };
    let c = c0_with(f, precision);
    let q = q_sum(f);
    let v = vasyunin(f);
    let e = estermann_at_zero(f);
    let mut out = io::stdout().lock();
    match a.format {
        C0Format::Text => {
            writeln!(out, "c0 = {}  (err <= {})", num(c.value), num(c.err_bound))?;
            writeln!(out, "Q  = {}  (err <= {})", num(q.value), num(q.err_bound))?;
            writeln!(out, "V  = {}  (err <= {})", num(v.value), num(v.err_bound))?;
            writeln!(out, "E(0) = {} + {} i", num(e.re), num(e.im))?;
        }
        C0Format::Json => {
            let o = C0Output {
                r: a.r,
                b: a.b,
                c0: Valued { value: c.value, err_bound: c.err_bound },
                q: Valued { value: q.value, err_bound: q.err_bound },
                v: Valued { value: v.value, err_bound: v.err_bound },
                estermann_re: e.re,
                estermann_im: e.im,
            };
            serde_json::to_writer_pretty(&mut out, &o)?;
            writeln!(out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn scan(a: &ScanArgs) -> CliResult<ExitCode> {
    if a.b < 2 {
        return Err(CliError::Usage(format!("scan needs b >= 2, got {}", a.b)));
    }
    let reference = if a.ks {
        Some(limit_law_reference(TruncatedGSeries::new(a.m1)?, a.samples)?)
    } else {
        None
    };
    let opts = ScanOptions {
        reduction: if a.deterministic { Reduction::Deterministic } else { Reduction::Unordered },
        reference: reference.as_ref(),
        zero_wall_clock: a.deterministic,
    };
    let (report, points, stem) = if a.figure {
        let start = std::time::Instant::now();
        let points = figure_points(a.b)?;
        let (mut report, _) = summarize(a.b, (0.0, 1.0), &points, a.kmax, &opts)?;
        if !a.deterministic {
            report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        }
        (report, points, format!("figure_b{}", a.b))
    } else {
        let window = ScanWindow::new(a.b, a.a0, a.a1)?;
        let s = scan_with(window, a.kmax, &opts)?;
        (s.report, s.points, format!("scan_b{}", a.b))
    };

    let dir = resolve_dir(a.out.as_deref());
    ensure_dir(&dir)?;
    let data = match a.format {
        Format::Csv => {
            let path = dir.join(format!("{stem}.csv"));
            let rows: Vec<Vec<String>> = points.iter().map(|p| vec![p.r.to_string(), num(p.c0)]).collect();
            write_csv_file(&path, &["r", "c0"], &rows)?;
            path
        }
        Format::Json => {
            let path = dir.join(format!("{stem}.json"));
            write_json_file(&path, &points.iter().map(|p| (p.r, p.c0)).collect::<Vec<_>>())?;
            path
        }
    };
    let report_path = dir.join(format!("{stem}.report.json"));
    write_json_file(&report_path, &report)?;

    let mut out = io::stdout().lock();
    writeln!(out, "{}", data.display())?;
    writeln!(out, "{}", report_path.display())?;
    Ok(ExitCode::SUCCESS)
}

pub fn asympt(a: &AsymptArgs) -> CliResult<ExitCode> {
    if a.b_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("--b-list must be strictly ascending".into()));
    }
    if a.c1 {
        let fit = c1_empirical(a.r, a.b0, &a.b_list)?;
        let direct = c1_direct(&C1Input::new(a.r, a.b0)?);
        let rows = vec![vec![
            a.r.to_string(),
            a.b0.to_string(),
            num(direct),
            num(fit.slope),
            num(fit.intercept),
            num(fit.confidence),
        ]];
        write_csv_to(a.out.as_deref(), &["r", "b0", "direct", "slope", "intercept", "confidence"], &rows)?;
        return Ok(ExitCode::SUCCESS);
    }
    let mut rows = Vec::with_capacity(a.b_list.len());
    for &b in &a.b_list {
        let exact = c0_with(ReducedFraction::new(1, b)?, Precision::Default).value;
        let bf = b as f64;
        match c0_asymptotic(b, a.n) {
            Ok((approx, _)) => {
                let residual = exact - approx;
                rows.push(vec![
                    b.to_string(),
                    num(exact),
                    num(main_term(bf)),
                    num(residual),
                    num(residual * bf.powi(a.n as i32 + 1)),
                ]);
            }
            Err(e) => {
                eprintln!("cotsum: b = {b}: {e}; row left without residual");
                rows.push(vec![b.to_string(), num(exact), num(main_term(bf)), String::new(), String::new()]);
            }
        }
    }
    write_csv_to(a.out.as_deref(), &["b", "exact", "main", "residual", "scaled_residual"], &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(a: &VerifyArgs) -> CliResult<ExitCode> {
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Closed => vec![Suite::Closed],
        SuiteArg::Asymptotics => vec![Suite::Asymptotics],
        SuiteArg::C1 => vec![Suite::C1],
        SuiteArg::Moments => vec![Suite::Moments],
        SuiteArg::Equidist => vec![Suite::Equidist],
        SuiteArg::Gseries => vec![Suite::Gseries],
        SuiteArg::Expsums => vec![Suite::Expsums],
    };
    if a.bmax < 2 || a.b < 11 {
        return Err(CliError::Usage("verify needs --bmax >= 2 and --b >= 11".into()));
    }
    let cfg = VerifyConfig { bmax: a.bmax, b: a.b };
    let mut reports = Vec::new();
    let mut out = io::stdout().lock();
    for s in suites {
        let rep = run_suite(s, &cfg);
        if !a.json {
            for c in &rep.checks {
                writeln!(out, "{s}: {c}")?;
            }
            let tag = if rep.passed() { "PASS" } else { "FAIL" };
            writeln!(out, "{s}: {tag} ({:.0} ms)", rep.elapsed_ms)?;
            out.flush()?;
        }
        reports.push(rep);
    }
    if a.json {
        serde_json::to_writer_pretty(&mut out, &reports)?;
        writeln!(out)?;
    }
    let ok = reports.iter().all(|r| r.passed());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
