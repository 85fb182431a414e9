mod commands;
mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "alcove-csp",
    version,
    about = "Cyclic sieving for alcoves, cores, words and parking functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; not every command supports every format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Run even when the parameters are above the size guard
    #[arg(long, global = true)]
    force: bool,

    /// Write the report to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// A word of X(m,k), e.g. 21
    Word,
    /// A (k+1)-core of Y(m,k), e.g. [3,1]
    Core,
    /// A word of W(m,k), e.g. 133
    W,
    /// An alcove window of the m-fold dilation, e.g. [0,2,4]
    Alcove,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Poset {
    X,
    Y,
    Dilation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbits of X(m,k) under phi, with extended words and images in W(m,k)
    Orbits {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
    },
    /// Check cyclic sieving for W(m,k) under rotation; exits 1 on a mismatch
    Csp {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
    },
    /// Show one element in every model: word, core, W-word and alcove
    Map {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
        /// Which model VALUE belongs to
        #[arg(long, value_enum, default_value_t = Model::Word)]
        from: Model,
        value: String,
    },
    /// Find the successful partition of a word and read it off; a
    /// partitioned word such as 3|2|1|0302 is read off directly
    Invert {
        #[arg(long)]
        m: u32,
        input: String,
    },
    /// Ranks 0..=RANK of the tree of successful partitioned words
    Tree {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        rank: usize,
    },
    /// Cover graph of X(m,k), Y(m,k), or the alcoves of the m-fold dilation
    Hasse {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Poset::X)]
        poset: Poset,
    },
    /// Regions of the m-Shi arrangement in R^k with both parking labels
    Shi {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
    /// Check cyclic sieving for m-parking functions of length k; exits 1 on
    /// a mismatch
    ParkingCsp {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: u32,
    },
}

/// Rendered output plus whether every check in it passed.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let opts = commands::Options {
        format: cli.format,
        force: cli.force,
    };
    match &cli.command {
        Command::Orbits { m, k } => commands::orbits(&opts, *m, *k),
        Command::Csp { m, k } => commands::csp(&opts, *m, *k),
        Command::Map { m, k, from, value } => commands::map(&opts, *m, *k, *from, value),
        Command::Invert { m, input } => commands::invert(&opts, *m, input),
        Command::Tree { m, rank } => commands::tree(&opts, *m, *rank),
        Command::Hasse { m, k, poset } => commands::hasse(&opts, *m, *k, *poset),
        Command::Shi { k, m } => commands::shi(&opts, *k, *m),
        Command::ParkingCsp { k, m } => commands::parking_csp(&opts, *k, *m),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|report| {
        emit(&cli, &report.text)?;
        Ok(report.ok)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
