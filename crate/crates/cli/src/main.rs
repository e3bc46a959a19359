mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use lucas_atlas::census::Threshold;
use lucas_atlas::term_sets::SetOptions;

use commands::Builder;
use report::Emit;

#[derive(Parser)]
#[command(name = "lucas-atlas", version, about = "Exact computations on Lucas sequences")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    emit: Emit,
    /// Working precision in bits for real-valued quantities.
    #[arg(long, global = true, env = "LUCAS_ATLAS_PREC", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..=65536))]
    prec: u32,
    /// Worker threads for parallel scans (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The term Uₙ(A, B).
    Term {
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        n: u64,
    },
    /// Degenerate, real or non-real case, with the dominant root size.
    Classify {
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        b: i64,
    },
    /// Count of non-degenerate pairs whose roots have modulus at most t.
    Census {
        /// Integer, decimal or fraction such as 5/2.
        #[arg(long)]
        t: Threshold,
        /// Also run the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Values ≤ N attained as |Uₙ|.
    LnSet {
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        members: bool,
        #[arg(long)]
        witnesses: bool,
    },
    /// Values ≤ N attained as |Uₘ| for some m ≥ n.
    LnGeSet {
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        members: bool,
        #[arg(long)]
        witnesses: bool,
    },
    /// Checks the growth lower bound over a box of pairs.
    GrowthCheck {
        #[arg(long = "Amax")]
        a_max: i64,
        #[arg(long = "Bmax")]
        b_max: i64,
        #[arg(long = "nmax")]
        n_max: u64,
    },
    /// Lower bound for |(β/α)^ℓ − 1| and a sweep over 1..=ell.
    Laurent {
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        ell: u64,
    },
    /// Solutions of x² − 5y² = t with y ≤ ymax.
    Pell {
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long)]
        ymax: u64,
    },
    /// |𝓛ₙ(N)| / N for n ∈ {2, 3, 4}.
    Density {
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Least-squares exponent of |𝓛ₙ(N)| against N.
    Regress {
        #[arg(long)]
        n: u32,
        /// Comma-separated bounds.
        #[arg(long = "Ns", value_delimiter = ',', required = true)]
        ns: Vec<u64>,
    },
    /// Runs the invariant suite; exits 1 if any check fails.
    Verify {
        /// Reduced ranges.
        #[arg(long)]
        quick: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .expect("thread pool is configured once");
    }
    let prec = cli.prec as usize;
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Term { a, b, n } => commands::term_cmd(
            Builder::new("term", prec).param("A", a).param("B", b).param("n", n),
            a,
            b,
            n,
        ),
        Command::Classify { a, b } => {
            commands::classify_cmd(Builder::new("classify", prec).param("A", a).param("B", b), a, b)
        }
        Command::Census { t, oracle } => commands::census_cmd(
            Builder::new("census", prec).param("t", t).param("oracle", oracle),
            t,
            oracle,
        ),
        Command::LnSet { n, big_n, members, witnesses } => commands::ln_set_cmd(
            Builder::new("ln-set", prec).param("n", n).param("N", big_n),
            n,
            big_n,
            SetOptions { members, witnesses },
        ),
        Command::LnGeSet { n, big_n, members, witnesses } => commands::ln_ge_set_cmd(
            Builder::new("ln-ge-set", prec).param("n", n).param("N", big_n),
            n,
            big_n,
            SetOptions { members, witnesses },
        ),
        Command::GrowthCheck { a_max, b_max, n_max } => commands::growth_check_cmd(
            Builder::new("growth-check", prec)
                .param("Amax", a_max)
                .param("Bmax", b_max)
                .param("nmax", n_max),
            a_max,
            b_max,
            n_max,
        ),
        Command::Laurent { a, b, ell } => commands::laurent_cmd(
            Builder::new("laurent", prec).param("A", a).param("B", b).param("ell", ell),
            a,
            b,
            ell,
        ),
        Command::Pell { t, ymax } => commands::pell_cmd(
            Builder::new("pell", prec).param("t", t).param("ymax", ymax),
            t,
            ymax,
        ),
        Command::Density { n, big_n } => commands::density_cmd(
            Builder::new("density", prec).param("n", n).param("N", big_n),
            n,
            big_n,
        ),
        Command::Regress { n, ns } => {
            let list = ns.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            commands::regress_cmd(Builder::new("regress", prec).param("n", n).param("Ns", list), n, &ns)
        }
        Command::Verify { quick } => {
            commands::verify_cmd(Builder::new("verify", prec).param("quick", quick), quick)
        }
    };
    let mut out = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    out.report.meta.wall_time_ms = start.elapsed().as_millis();
    let stdout = std::io::stdout();
    if let Err(e) = report::write(&out, cli.emit, &mut stdout.lock()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
