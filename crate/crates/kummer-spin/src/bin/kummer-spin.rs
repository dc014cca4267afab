use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use kummer_spin::report::{reports_json, reports_text, SuiteReport};
use kummer_spin::suites::{run_suites, SuiteOptions, ALL_SUITES};

#[derive(Parser)]
#[command(name = "kummer-spin")]
#[command(about = "Exact verification suites for spin, triality and Weil-type structures on the Mukai lattice")]
#[command(version)]
struct Cli {
    /// Seed for every suite's random stream
    #[arg(long, global = true, env = "KUMMER_SPIN_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct NArg {
    /// s_n = (1, 0, −n)
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
    n: u32,
}

#[derive(Subcommand)]
enum Suite {
    /// Clifford relation, monomial basis, τ and the characters N, ort
    Clifford,
    /// The order three automorphism J of A_X
    Triality,
    /// Fourier-Mukai identities for line bundles
    Fm,
    /// Stabilizer of s_n: generators, det·χ, mod-n representation
    Stabilizer {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// det, χ and the discriminant group of s_n^⊥
    Detchi {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// The representation on H¹(ℤ/n)
    Modn {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Cokernel of m_w: V → S⁻
    Gamma {
        #[command(flatten)]
        n: NArg,
    },
    /// Cayley class and its invariance
    Cayley {
        #[command(flatten)]
        n: NArg,
        /// h as 6 H² coordinates or 8 S⁺ coordinates, comma separated
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        with_h: Option<Coeffs>,
    },
    /// Θ′_h, complex structures, Kähler metrics and the Hermitian form
    Weil {
        #[command(flatten)]
        n: NArg,
        /// h as 6 H² coordinates or 8 S⁺ coordinates, comma separated
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true)]
        h: Option<Coeffs>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Trivial discriminant witnesses for seeded (w, h)
    Discriminant {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Every suite
    All {
        #[command(flatten)]
        n: NArg,
    },
}

/// Comma separated integers, 6 or 8 of them.
#[derive(Clone, Debug)]
struct Coeffs(Vec<BigInt>);

fn parse_coeffs(s: &str) -> Result<Coeffs, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match v.len() {
        6 | 8 => Ok(Coeffs(v)),
        k => Err(format!("expected 6 or 8 coefficients, got {k}")),
    }
}

fn plan(suite: Suite) -> (Vec<&'static str>, SuiteOptions) {
    let mut opts = SuiteOptions::new(2);
    let names = match suite {
        Suite::Clifford => vec!["clifford"],
        Suite::Triality => vec!["triality"],
        Suite::Fm => vec!["fm"],
        Suite::Stabilizer { n, samples } => {
            opts = SuiteOptions { samples, ..SuiteOptions::new(n.n) };
            vec!["stabilizer", "detchi", "modn"]
        }
        Suite::Detchi { n, samples } => {
            opts = SuiteOptions { samples, ..SuiteOptions::new(n.n) };
            vec!["detchi"]
        }
        Suite::Modn { n, samples } => {
            opts = SuiteOptions { samples, ..SuiteOptions::new(n.n) };
            vec!["modn"]
        }
        Suite::Gamma { n } => {
            opts = SuiteOptions::new(n.n);
            vec!["gamma"]
        }
        Suite::Cayley { n, with_h } => {
            opts = SuiteOptions { cayley_h: with_h.map(|c| c.0), ..SuiteOptions::new(n.n) };
            vec!["cayley"]
        }
        Suite::Weil { n, h, samples } => {
            opts = SuiteOptions { weil_h: h.map(|c| c.0), samples, ..SuiteOptions::new(n.n) };
            vec!["weil"]
        }
        Suite::Discriminant { n, samples } => {
            opts = SuiteOptions { samples, ..SuiteOptions::new(n.n) };
            vec!["discriminant"]
        }
        Suite::All { n } => {
            opts = SuiteOptions::new(n.n);
            ALL_SUITES.to_vec()
        }
    };
    (names, opts)
}

fn render(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Text => reports_text(reports),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&reports_json(reports)).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Verify { suite } = cli.command;
    let (names, opts) = plan(suite);
    let reports = run_suites(&names, cli.seed, &opts);
    let body = render(&reports, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if reports.iter().all(SuiteReport::all_passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
