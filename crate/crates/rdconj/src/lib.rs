//! File formats, caching, parallel drivers and the `rdconj` command line
//! over [`rdconj_core`].

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod drivers;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use rdconj_core::group::{Element, GroupModel};

use crate::cache::BallCache;
use crate::cli::Cli;
use crate::commands::{Context, Output};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::Timing;

/// Element label for reports: table names for named finite groups.
pub fn render(model: &GroupModel, g: &Element) -> String {
    match (model.as_finite(), g) {
        (Some(f), Element::Finite(i)) if f.names().is_some() => f.name(*i),
        _ => g.to_string(),
    }
}

fn context(cli: &Cli) -> Result<Context, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(n) = cli.numeric {
        cfg.numeric = n;
    }
    if let Some(c) = cli.ball_cap {
        cfg.caps.ball_size = c;
    }
    cfg.validate()?;
    let dir = cli.cache_dir.clone().or_else(|| cfg.resolved_cache_dir());
    let cache = BallCache::new(dir, cfg.seed);
    Ok(Context { cfg, cache })
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let start = Instant::now();
    let ctx = context(cli)?;
    let work = || commands::execute(&cli.command, &ctx);
    let output = match ctx.cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(format!("threads: {e}")))?
            .install(work)?,
        None => work()?,
    };
    Ok(match output {
        Output::Csv(text) => text,
        Output::Report(mut report) => {
            if cli.timing {
                report.timing = Some(Timing {
                    wall_ms: start.elapsed().as_secs_f64() * 1e3,
                    ball_cache: ctx.cache.outcomes().iter().map(|o| o.describe()).collect(),
                });
            }
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    })
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code: 0 on success, 1 for domain and io errors, 2 for bad input,
/// 3 when a resource cap is hit.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
