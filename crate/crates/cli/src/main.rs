mod args;
mod cache;

use std::fmt;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use hfmotive_core::grchow::{gr_integrate, parse_class_expr, GrContext, IntegrationMode};
use hfmotive_core::motive::{analyze, betas, verify_claims, ScanBounds, TripleParams};
use hfmotive_core::report::{format_rational, to_csv, TripleReport};
use rayon::prelude::*;
use serde::Serialize;

use args::{BetasArgs, Cli, Command, ComputeArgs, IntegrateArgs, ReportFormat, ScanArgs, TableFormat, TextFormat, VerifyArgs};
use cache::Cache;

enum Failure {
    Claims,
    Usage(String),
    Internal(String),
}

impl From<hfmotive_core::Error> for Failure {
    fn from(e: hfmotive_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn usage(msg: impl fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let rendered = e.render().to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Scan(a) => scan(a),
        Command::VerifyClaims(a) => verify(a),
        Command::Betas(a) => run_betas(a),
        Command::Integrate(a) => integrate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn report_for(n: u32, d: u32, kappa: u32, mode: IntegrationMode) -> Result<TripleReport, Failure> {
    let params = TripleParams::new(n, d, kappa)?;
    Ok(TripleReport::from(&analyze(&params, mode)?))
}

fn to_json<T: Serialize>(x: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(x).map_err(|e| Failure::Internal(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn save(cache: Option<Cache>) -> Outcome {
    match cache {
        Some(c) => c.save().map_err(|e| usage(format!("cannot write cache: {e}"))),
        None => Ok(()),
    }
}

fn compute(a: ComputeArgs) -> Outcome {
    let (n, d, kappa) = (a.triple.n, a.triple.d, a.triple.kappa);
    let mut cache = a.cache.as_deref().map(Cache::open);
    let report = match cache.as_ref().and_then(|c| c.get(n, d, kappa)) {
        Some(r) => r.clone(),
        None => {
            let r = report_for(n, d, kappa, a.mode)?;
            if let Some(c) = cache.as_mut() {
                c.insert(r.clone());
            }
            r
        }
    };
    save(cache)?;
    let text = match a.format {
        ReportFormat::Text => report.to_string(),
        ReportFormat::Json => to_json(&report)?,
        ReportFormat::Csv => to_csv(std::slice::from_ref(&report)),
    };
    emit(&text, None)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| Failure::Internal(e.to_string()))
}

fn scan(a: ScanArgs) -> Outcome {
    if a.kappa_min < 1 || a.d_min < 1 {
        return Err(usage("--kappa-min and --d-min must be at least 1"));
    }
    if a.kappa_min > a.kappa_max || a.d_min > a.d_max || a.n_max < a.kappa_min + 1 {
        return Err(usage("empty scan range"));
    }
    let mut triples = Vec::new();
    for kappa in a.kappa_min..=a.kappa_max {
        for d in a.d_min..=a.d_max {
            for n in kappa + 1..=a.n_max {
                triples.push((n, d, kappa));
            }
        }
    }
    let mut cache = a.cache.as_deref().map(Cache::open);
    let missing: Vec<(u32, u32, u32)> = triples
        .iter()
        .copied()
        .filter(|&(n, d, k)| cache.as_ref().and_then(|c| c.get(n, d, k)).is_none())
        .collect();
    let mode = a.mode;
    let fresh: Vec<TripleReport> = pool(a.jobs)?.install(|| {
        missing.par_iter().map(|&(n, d, k)| report_for(n, d, k, mode)).collect::<Result<_, _>>()
    })?;
    let mut reports = fresh.clone();
    if let Some(c) = cache.as_mut() {
        reports.extend(triples.iter().filter_map(|&(n, d, k)| c.get(n, d, k).cloned()));
        for r in fresh {
            c.insert(r);
        }
    }
    save(cache)?;
    reports.sort_by_key(TripleReport::key);
    let text = match a.format {
        TableFormat::Json => to_json(&reports)?,
        TableFormat::Csv => to_csv(&reports),
    };
    emit(&text, a.out.as_deref())
}

fn verify(a: VerifyArgs) -> Outcome {
    if a.kappa_max < 1 || a.d_max < 1 || a.n_max < 2 {
        return Err(usage("scan bounds must allow at least one triple"));
    }
    let bounds = ScanBounds { kappa_max: a.kappa_max, d_max: a.d_max, n_max: a.n_max };
    let report = pool(a.jobs)?.install(|| verify_claims(bounds, a.mode));
    let text = match a.format {
        TextFormat::Text => report.to_string(),
        TextFormat::Json => to_json(&report)?,
    };
    emit(&text, None)?;
    if let Some(first) = report.diagnostics.internal_errors.first() {
        return Err(Failure::Internal(first.clone()));
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

#[derive(Serialize)]
struct BetasReport {
    n: u32,
    d: u32,
    kappa: u32,
    betas: Vec<String>,
}

fn run_betas(a: BetasArgs) -> Outcome {
    let (n, d, kappa) = (a.triple.n, a.triple.d, a.triple.kappa);
    let params = TripleParams::new(n, d, kappa)?;
    let values: Vec<String> = betas(&params, a.mode)?.iter().map(format_rational).collect();
    let text = match a.format {
        TextFormat::Text => values.iter().enumerate().map(|(i, b)| format!("beta_{i} = {b}\n")).collect(),
        TextFormat::Json => to_json(&BetasReport { n, d, kappa, betas: values })?,
    };
    emit(&text, None)
}

fn integrate(a: IntegrateArgs) -> Outcome {
    let ctx = GrContext::new(a.n, a.kappa)?;
    let class = parse_class_expr(ctx, &a.expr)?;
    let text = match a.mode {
        IntegrationMode::Both => {
            let schur = gr_integrate(&class, IntegrationMode::Schur)?;
            let oracle = gr_integrate(&class, IntegrationMode::Oracle)?;
            if schur != oracle {
                return Err(Failure::Internal(format!("schur gave {schur}, oracle gave {oracle}")));
            }
            format!("schur: {schur}\noracle: {oracle}")
        }
        mode => gr_integrate(&class, mode)?.to_string(),
    };
    emit(&text, None)
}
