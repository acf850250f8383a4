//! Command-line surface and command execution.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use qtop_core::cyclotomic::{check_k, DEFAULT_K_BOUND};
use qtop_core::jones::{jones_exact, jones_series, FramedLink};
use qtop_core::orbit::orbit_integral;
use qtop_core::stationaryphase::PivotStrategy;
use qtop_core::surgery::{compute_invariants_with, PipelineOptions};
use qtop_core::wrt::{ohtsuki_congruence_check_bounded, z_prime_bounded, z_wrt_bounded};
use qtop_core::Error;

use crate::approx;
use crate::error::CliError;
use crate::link::load_link;
use crate::orbitdata;
use crate::render::{self, csv, to_json, Format, WrtRow};
use crate::suites::{self, Suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "qtop", version, about = "Perturbative and WRT invariants of rational homology spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest admissible K (default 23).
    #[arg(long, global = true)]
    pub kbound: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S_n and Delta_n of the surgery on a framed link.
    Invariants {
        /// Link descriptor: inline JSON, a file path, or `empty`.
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Regularize every pivot with +eps instead of reordering.
        #[arg(long)]
        epsilon: bool,
    },
    /// Exact WRT invariant at each prime K.
    Wrt {
        #[arg(long)]
        link: String,
        #[arg(long = "K", value_delimiter = ',', required = true)]
        k: Vec<u32>,
        /// Also compute Z', its integrality and the congruences.
        #[arg(long)]
        zprime: bool,
        /// Order of the perturbative side of the congruence check.
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// The 1/K series of the colored Jones polynomial, or exact values at K.
    Jones {
        #[arg(long)]
        link: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long = "K", value_delimiter = ',')]
        k: Vec<u32>,
        /// Colors, one per component; all colorings when omitted.
        #[arg(long, value_delimiter = ',')]
        colors: Vec<u32>,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long = "Kmax")]
        kmax: Option<u32>,
        #[arg(long = "K", value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Orbit-integral series from L/P data.
    OrbitIntegral {
        /// Inline JSON or a file path.
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
}

/// Largest number of colorings `jones` enumerates.
pub const MAX_COLORINGS: usize = 4096;

/// The report text, or a failure. A verification sweep with failing cases
/// returns its report together with a math failure.
pub enum Outcome {
    Ok(String),
    Failed(String, CliError),
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    let bound = cli.kbound.unwrap_or(DEFAULT_K_BOUND);
    match &cli.command {
        Command::Invariants { link, order, epsilon } => {
            let l = load_link(link)?;
            if *order == 0 {
                return Err(CliError::Input("--order must be at least 1".into()));
            }
            let mut opts = PipelineOptions::default();
            if *epsilon {
                opts.strategy = PivotStrategy::Epsilon;
            }
            let r = compute_invariants_with(&l, *order, &opts)?;
            Ok(Outcome::Ok(render::manifold_out(&r, fmt)))
        }
        Command::Wrt { link, k, zprime, order } => {
            let l = load_link(link)?;
            for &kk in k {
                check_k(kk, bound)?;
            }
            let rows = k.iter().map(|&kk| wrt_row(&l, kk, *zprime, *order, bound)).collect::<Result<Vec<_>, _>>()?;
            let text = render::wrt_out(&rows, fmt);
            let failed = rows.iter().find_map(|r| match &r.zprime {
                Some(Err(e)) => Some(CliError::Math(format!("K = {}: {e}", r.value.k))),
                _ => None,
            });
            let cong = rows.iter().find(|r| r.ohtsuki.as_ref().is_some_and(|o| !o.holds()));
            match (failed, cong) {
                (Some(e), _) => Ok(Outcome::Failed(text, e)),
                (None, Some(r)) => Ok(Outcome::Failed(text, CliError::Math(format!("congruence fails at K = {}", r.value.k)))),
                _ => Ok(Outcome::Ok(text)),
            }
        }
        Command::Jones { link, order, k, colors } => {
            let l = load_link(link)?;
            if k.is_empty() {
                return Ok(Outcome::Ok(render::series_out(&jones_series(&l, *order), fmt)));
            }
            for &kk in k {
                check_k(kk, bound)?;
            }
            Ok(Outcome::Ok(jones_values(&l, k, colors, fmt)?))
        }
        Command::Verify { suite, kmax, k, order } => {
            let opts = SuiteOptions { kmax: *kmax, ks: k.clone(), order: *order, kbound: cli.kbound };
            let rep = suites::run(*suite, &opts)?;
            let text = rep.render(fmt);
            if rep.all_pass() {
                Ok(Outcome::Ok(text))
            } else {
                let e = CliError::Math(format!("{}: {} of {} cases failed", rep.suite, rep.total - rep.passed, rep.total));
                Ok(Outcome::Failed(text, e))
            }
        }
        Command::OrbitIntegral { data, order } => {
            let d = orbitdata::load(data)?;
            let (l, p, n) = d.inputs(*order)?;
            let s = orbit_integral(&l, &p, n, *order)?;
            Ok(Outcome::Ok(render::series_out(&s, fmt)))
        }
    }
}

fn wrt_row(l: &FramedLink, k: u32, zprime: bool, order: usize, bound: u32) -> Result<WrtRow, CliError> {
    let value = z_wrt_bounded(l, k, bound)?;
    if !zprime {
        return Ok(WrtRow { value, zprime: None, ohtsuki: None, note: None });
    }
    let zp = match z_prime_bounded(l, k, bound) {
        Ok(z) => Ok(z),
        Err(Error::IntegralityFailure(m)) => Err(format!("Z' is not integral: {m}")),
        Err(e) => return Err(e.into()),
    };
    if zp.is_err() {
        return Ok(WrtRow { value, zprime: Some(zp), ohtsuki: None, note: None });
    }
    match ohtsuki_congruence_check_bounded(l, k, order, bound) {
        Ok(rep) => Ok(WrtRow { value, zprime: Some(Ok(rep.zprime.clone())), ohtsuki: Some(rep), note: None }),
        Err(Error::Hypothesis(m)) => {
            Ok(WrtRow { value, zprime: Some(zp), ohtsuki: None, note: Some(format!("congruence not checked: {m}")) })
        }
        Err(Error::NotRationalHomologySphere) => Ok(WrtRow {
            value,
            zprime: Some(zp),
            ohtsuki: None,
            note: Some("congruence not checked: not a rational homology sphere".into()),
        }),
        Err(e) => Err(e.into()),
    }
}

fn colorings(ncomp: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..ncomp {
        out = out.into_iter().flat_map(|c| (1..k).map(move |a| [c.clone(), vec![a]].concat())).collect();
    }
    out
}

fn jones_values(l: &FramedLink, ks: &[u32], colors: &[u32], fmt: Format) -> Result<String, CliError> {
    let mut jobs = Vec::new();
    for &k in ks {
        let cs = if colors.is_empty() {
            let count = (k as usize - 1).checked_pow(l.ncomp() as u32).unwrap_or(usize::MAX);
            if count > MAX_COLORINGS {
                return Err(CliError::Input(format!("{count} colorings at K = {k}; pass --colors")));
            }
            colorings(l.ncomp(), k)
        } else {
            vec![colors.to_vec()]
        };
        jobs.extend(cs.into_iter().map(|c| (k, c)));
    }
    let vals = jobs
        .into_par_iter()
        .map(|(k, c)| jones_exact(l, &c, k).map(|v| (k, c, v)))
        .collect::<Result<Vec<_>, _>>()?;
    #[derive(serde::Serialize)]
    #[allow(non_snake_case)]
    struct Row {
        K: u32,
        colors: Vec<u32>,
        J: String,
        J_approx: String,
    }
    let rows: Vec<Row> = vals
        .into_iter()
        .map(|(k, c, v)| Row { K: k, colors: c, J: v.to_string(), J_approx: approx::cyc_text(&v) })
        .collect();
    Ok(match fmt {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let r: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let c: Vec<String> = r.colors.iter().map(|x| x.to_string()).collect();
                    vec![r.K.to_string(), c.join(" "), r.J.clone(), r.J_approx.clone()]
                })
                .collect();
            csv(&["K", "colors", "J", "J_approx"], &r)
        }
        Format::Text => rows
            .iter()
            .map(|r| format!("K = {} colors {:?}\n  J = {}\n  approx {}\n", r.K, r.colors, r.J, r.J_approx))
            .collect(),
    })
}
