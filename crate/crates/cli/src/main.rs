#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, Common, FactorAction, OracleAction, SpecfunAction, CHECK_GRID, FIELD_GRID};
use manifest::Outputs;
use moyal_morse::mellin::FieldSource;

/// Exit 1 for failed checks or evaluations, 2 for usage, config and I/O errors.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
    Io(String),
}

fn with_outputs<F>(common: &Common, grid: config::GridDefaults, f: F) -> Result<bool, Failure>
where
    F: FnOnce(&config::RunConfig, &mut Outputs) -> Result<bool, Failure>,
{
    let cfg = common.resolve(grid)?;
    let mut out = Outputs::new(cfg.out.clone());
    let pass = f(&cfg, &mut out)?;
    out.finish(serde_json::to_value(&cfg).expect("config serializes"))?;
    Ok(pass)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Spectrum { common, json } => commands::spectrum(&common.resolve(FIELD_GRID)?, json),
        Command::Eval {
            common,
            source,
            heatmap,
        } => with_outputs(&common, FIELD_GRID, |cfg, out| {
            commands::eval(cfg, source.into(), heatmap, out)
        }),
        Command::Verify { common, suite, perturb } => with_outputs(&common, CHECK_GRID, |cfg, out| {
            commands::verify(cfg, suite, perturb, out)
        }),
        Command::Specfun {
            action: SpecfunAction::Eval { name, args },
        } => commands::specfun_eval(&name, &args),
        Command::Factor { action } => match action {
            FactorAction::Eval { common, t, explicit } => {
                commands::factor_eval(&common.resolve(FIELD_GRID)?, &t, explicit)
            }
            FactorAction::Verify {
                common,
                samples,
                re,
                explicit,
            } => commands::factor_verify(&common.resolve(FIELD_GRID)?, samples, re, explicit),
        },
        Command::Oracle { action } => match action {
            OracleAction::Wigner { common } => with_outputs(&common, FIELD_GRID, |cfg, out| {
                commands::eval(cfg, FieldSource::Oracle, false, out)
            }),
            OracleAction::Wavefn { common } => with_outputs(&common, FIELD_GRID, commands::oracle_wavefn),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
