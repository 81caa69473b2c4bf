use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use caputo_core::harness::TableId;
use caputo_core::{
    emit, first_node_truncation_order, order_first_node, order_interior, reproduce_table, verify, Format, FractionalOrder,
    HolderTestFunction, SchemeKind,
};

#[derive(Parser)]
#[command(name = "caputo", version, about = "Convergence orders of discrete Caputo derivatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    L1,
    L2,
    L12,
    Lk,
}

#[derive(Clone, Copy, ValueEnum)]
enum FirstNodeScheme {
    L2,
    L12,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one of the four order tables.
    OrderTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        table: u8,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the interior order at one parameter set.
    Order {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Degree for `--scheme lk`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0.5)]
        xi: f64,
        #[arg(long, default_value_t = 7)]
        tau_exp: i32,
    },
    /// Measure the order at the first grid node (m = 2).
    FirstNode {
        #[arg(long, value_enum)]
        scheme: FirstNodeScheme,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 7)]
        tau_exp: i32,
    },
    /// Run the identity and oracle checks.
    Verify,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<caputo_core::Error> for Failure {
    fn from(e: caputo_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn scheme_of(arg: SchemeArg, k: Option<usize>) -> Result<SchemeKind, Failure> {
    match (arg, k) {
        (SchemeArg::Lk, Some(k)) => Ok(SchemeKind::Lk(k).validate()?),
        (SchemeArg::Lk, None) => Err(Failure::Usage("--scheme lk needs --k".into())),
        (_, Some(_)) => Err(Failure::Usage("--k only applies to --scheme lk".into())),
        (SchemeArg::L1, None) => Ok(SchemeKind::L1),
        (SchemeArg::L2, None) => Ok(SchemeKind::L2),
        (SchemeArg::L12, None) => Ok(SchemeKind::L12),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::OrderTable { table, format, out } => {
            let report = reproduce_table(TableId::from_number(table)?)?;
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Markdown => Format::Markdown,
            };
            let mut sink: Box<dyn Write> = match out {
                Some(path) => Box::new(BufWriter::new(File::create(path)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            emit(&report, format, &mut sink)?;
            sink.flush()?;
        }
        Command::Order { scheme, k, alpha, m, beta, xi, tau_exp } => {
            let scheme = scheme_of(scheme, k)?;
            let alpha = FractionalOrder::new(alpha)?;
            let f = HolderTestFunction::new(m, beta, xi)?;
            let row = order_interior(scheme, &f, alpha, (-f64::from(tau_exp)).exp2(), xi)?;
            println!(
                "scheme={} alpha={} m={} beta={} xi={} tau=2^-{tau_exp} R={:.4} expected={:.4}",
                row.scheme, row.alpha, row.m, row.beta, row.xi, row.measured_r, row.theoretical_order
            );
        }
        Command::FirstNode { scheme, alpha, beta, tau_exp } => {
            let scheme = match scheme {
                FirstNodeScheme::L2 => SchemeKind::L2,
                FirstNodeScheme::L12 => SchemeKind::L12,
            };
            let alpha = FractionalOrder::new(alpha)?;
            let f = HolderTestFunction::new(2, beta, 0.5)?;
            let tau = (-f64::from(tau_exp)).exp2();
            let row = order_first_node(scheme, &f, alpha, tau)?;
            let own = first_node_truncation_order(scheme, &f, alpha, tau)?;
            println!(
                "scheme={} alpha={} m=2 beta={} tau=2^-{tau_exp} error={:.4e} R={:.4} R_t1={:.4} expected={:.4}",
                row.scheme,
                row.alpha,
                row.beta,
                row.error,
                row.measured_r,
                own.measured_r,
                2.0 - row.alpha
            );
        }
        Command::Verify => {
            let outcomes = verify::run_all()?;
            for o in &outcomes {
                println!("{o}");
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
