//! Command-line front end: parse a datum file, dispatch to the verification
//! and enumeration drivers, and emit a deterministic report.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cartanlift::cli::{
    self, cmd_check, cmd_enumerate, cmd_hypotheses, cmd_lift, cmd_link, cmd_nichols,
    parse_type_filter, OutputFormat, Report,
};

#[derive(Parser)]
#[command(
    name = "cartanlift",
    about = "Exact verification and enumeration of pointed Hopf algebra data of Cartan type"
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Maximum tensor/monomial space size handled before giving up
    #[arg(long, global = true, default_value_t = 65536)]
    budget: u64,

    /// Worker threads for rank blocks and enumeration partitions
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report serialization
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Kv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a datum and report its Cartan and root data
    Check {
        /// datum file path, or '-' for standard input
        file: String,
    },
    /// Nichols algebra graded dimensions against the PBW series
    Nichols {
        file: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Lifted algebra dimension by truncated ideal elimination
    Lift {
        file: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Enumerate valid data over (Z/p)^s
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        theta_max: usize,
        /// comma-separated Dynkin type whitelist, e.g. A2,B2
        #[arg(long)]
        types: Option<String>,
        /// also count linkings per datum
        #[arg(long)]
        links: bool,
        /// one representative per simultaneous vertex permutation
        #[arg(long)]
        reduce: bool,
    },
    /// Check the hypotheses of the classification theorems
    Hypotheses {
        file: String,
        /// prime to evaluate the main classification over
        #[arg(long)]
        p: Option<u64>,
    },
    /// Linkable pairs and linking enumeration
    Link {
        file: String,
    },
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let format = match args.format {
        Format::Kv => OutputFormat::Kv,
        Format::Json => OutputFormat::Json,
    };

    let outcome: Result<(Report, i32), cartanlift::Error> = match &args.command {
        Command::Check { file } => with_input(file, |text| cmd_check(&text).map(|r| (r, 0))),
        Command::Nichols { file, max_degree } => {
            let max_degree = *max_degree;
            let budget = args.budget;
            with_input(file, move |text| cmd_nichols(&text, max_degree, budget))
        }
        Command::Lift { file, max_degree } => {
            let max_degree = *max_degree;
            let budget = args.budget;
            with_input(file, move |text| cmd_lift(&text, max_degree, budget))
        }
        Command::Enumerate {
            p,
            s,
            theta_max,
            types,
            links,
            reduce,
        } => {
            let filter = match types {
                Some(t) => match parse_type_filter(t) {
                    Ok(f) => Some(f),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(cli::exit_code_for(&e) as u8);
                    }
                },
                None => None,
            };
            cmd_enumerate(
                *p,
                *s,
                *theta_max,
                filter.as_deref(),
                *links,
                *reduce,
                args.budget,
            )
            .map(|r| (r, 0))
        }
        Command::Hypotheses { file, p } => {
            let p = *p;
            with_input(file, move |text| cmd_hypotheses(&text, p).map(|r| (r, 0)))
        }
        Command::Link { file } => with_input(file, |text| cmd_link(&text).map(|r| (r, 0))),
    };

    match outcome {
        Ok((report, exit)) => {
            print!("{}", report.emit(format));
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}

fn with_input<F>(path: &str, f: F) -> Result<(Report, i32), cartanlift::Error>
where
    F: FnOnce(String) -> Result<(Report, i32), cartanlift::Error>,
{
    match read_input(path) {
        Ok(text) => f(text),
        Err(e) => Err(cartanlift::Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot read {path}: {e}"),
        }),
    }
}
