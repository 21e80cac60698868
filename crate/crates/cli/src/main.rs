mod budget;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser)]
#[command(name = "confhom", version, about = "Closed-support homology of configuration spaces of surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run jobs whose estimated basis exceeds 10⁶ elements.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// H^cl_{n+k}(conf_n(U)) for a punctured surface, from the bar complex.
    Homology {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        codim: usize,
    },
    /// H^cl_n(conf_n(U)) for a 2-complex given by a presentation file.
    Group {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        points: usize,
    },
    /// △ⁿ(ζ) in the standard basis.
    DeltaZeta {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
    },
    /// The kernel 𝒦ₙ of ℋₙ(U₁) → ℋₙ(U).
    Kernel {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long)]
        order: usize,
    },
    /// Kernel of 𝓘_U|ₙ → ℋₙ(U) for the once-punctured surface.
    Icfg {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        order: usize,
    },
    /// The element a of Sₙ(U₁) built from c₁, …, c_{n−2}.
    Johnson {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated degree-one elements, e.g. `a1,2*a-1 - a2`.
        #[arg(long)]
        c: Option<String>,
    },
    /// Homology of conf_n of the closed surface of genus g.
    Closed {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
    },
    /// Action of an endomorphism fixing ζ on ℋₙ(U).
    Act {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        punctures: usize,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        points: usize,
    },
    /// Run the certificate suite, one PASS/FAIL line per item.
    PaperCheck {
        /// Restrict to these item numbers.
        #[arg(long)]
        only: Vec<u32>,
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
}

fn run(cli: &Cli) -> Result<(report::Report, bool), CliError> {
    let f = cli.force;
    let ok = |r| Ok((r, true));
    match &cli.command {
        Command::Homology { genus, punctures, points, codim } => ok(commands::homology(*genus, *punctures, *points, *codim, f)?),
        Command::Group { presentation, points } => ok(commands::group(presentation, *points, f)?),
        Command::DeltaZeta { genus, order } => ok(commands::delta_zeta_cmd(*genus, *order, f)?),
        Command::Kernel { genus, punctures, order } => ok(commands::kernel(*genus, *punctures, *order, f)?),
        Command::Icfg { genus, order } => ok(commands::icfg(*genus, *order, f)?),
        Command::Johnson { genus, n, c } => ok(commands::johnson(*genus, *n, c.as_deref(), f)?),
        Command::Closed { genus, points } => ok(commands::closed(*genus, *points, f)?),
        Command::Act { genus, punctures, map, points } => ok(commands::act(*genus, *punctures, map, *points, f)?),
        Command::PaperCheck { only, inject_sign_flip } => Ok(commands::paper_check(only, *inject_sign_flip)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok((r, passed)) => {
            match cli.format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", r.render_json()),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(e)) => {
            eprintln!("internal error: {e}");
            ExitCode::from(1)
        }
    }
}
