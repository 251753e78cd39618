//! Command-line front end: configuration, subcommands and CSV output.

pub mod commands;
pub mod config;
pub mod model;
pub mod output;

use std::path::PathBuf;

use commands::{checks_table, code_checks, eta_csv, linspace, Cli, Command, Job};
use config::RunConfig;
use model::{code_by_name, Model};
use output::{write_file, Header, Table};
use qecbound::analysis::enumerate_eta;

/// Runs one invocation and returns the files written.
pub fn run(cli: &Cli) -> anyhow::Result<Vec<PathBuf>> {
    let cfg = cli.config.as_deref().map(RunConfig::load).transpose()?;
    let header = Header {
        config_hash: cfg.as_ref().map_or_else(|| "none".into(), RunConfig::sha256),
        command: cli.command.describe(),
    };
    let need_cfg = || {
        cfg.clone()
            .ok_or_else(|| anyhow::anyhow!("`{}` needs --config", cli.command.describe()))
    };
    let emit = |t: &Table| write_file(&cli.out, &format!("{}.csv", t.name), &t.to_csv(&header));

    match &cli.command {
        Command::Eta => {
            let name = cfg.as_ref().map_or("five-qubit", |c| c.code.name.as_str());
            let eta = enumerate_eta(&code_by_name(name)?)?;
            let text = format!("{}{}", header.render(), eta.to_text());
            Ok(vec![write_file(&cli.out, "eta.txt", &text)?, emit(&eta_csv(&eta))?])
        }
        Command::CodeCheck => {
            let name = cfg.as_ref().map_or("five-qubit", |c| c.code.name.as_str());
            let code = code_by_name(name)?;
            let checks = code_checks(&code, &enumerate_eta(&code)?)?;
            let path = emit(&checks_table(&checks))?;
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            anyhow::ensure!(failed.is_empty(), "code checks failed: {}", failed.join(", "));
            Ok(vec![path])
        }
        Command::Job(job) => {
            let model = Model::build(need_cfg()?, cli.lambda_star)?;
            Ok(vec![emit(&job.run(&model)?)?])
        }
        Command::Sweep(s) => {
            let base = need_cfg()?;
            anyhow::ensure!(s.points >= 1, "--points must be at least 1");
            Ok(vec![emit(&sweep(&base, &s.param, linspace(s.from, s.to, s.points), &s.target, cli.lambda_star)?)?])
        }
    }
}

/// Re-runs `target` once per value; rows are prefixed with the value.
pub fn sweep(
    base: &RunConfig,
    param: &str,
    values: Vec<f64>,
    target: &Job,
    lambda_star: Option<f64>,
) -> anyhow::Result<Table> {
    let mut out: Option<Table> = None;
    for v in values {
        let model = Model::build(base.with_value(param, v)?, lambda_star)?;
        let t = target.run(&model)?;
        let table = out.get_or_insert_with(|| {
            let mut cols = vec![param.to_string()];
            cols.extend(t.columns.iter().cloned());
            Table {
                name: "sweep".into(),
                columns: cols,
                rows: Vec::new(),
            }
        });
        for row in t.rows {
            let mut r = vec![output::num(v)];
            r.extend(row);
            table.rows.push(r);
        }
    }
    out.ok_or_else(|| anyhow::anyhow!("sweep produced no rows"))
}
