use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sylow2::sylow::{self, Kind};
use sylow2::verify::{self, Config};
use sylow2::{cache, Error, GeneratorSet, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "sylow2", version, about = "Sylow 2-subgroups of S_n and A_n as tree automorphism groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print log2 of |Syl_2(S_n)| or |Syl_2(A_n)|.
    Order {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "S")]
        kind: Kind,
    },
    /// Split n into powers of two.
    Decompose {
        #[arg(long)]
        n: u64,
    },
    /// Print a generating set.
    Gens {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, required_unless_present = "n")]
        k: Option<usize>,
        #[arg(long, conflicts_with = "k")]
        n: Option<usize>,
    },
    /// Run claim checks and print a report.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "s_alpha")]
    SAlpha,
    #[value(name = "s_beta")]
    SBeta,
    #[value(name = "syl2_S")]
    Syl2S,
    #[value(name = "syl2_A")]
    Syl2A,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id; repeatable.
    #[arg(long = "claim", required_unless_present_any = ["all", "list"])]
    claims: Vec<String>,
    #[arg(long, conflicts_with = "claims")]
    all: bool,
    /// List claim ids and exit.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    max_k: usize,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Group cache directory (default: $SYLOW2_CACHE_DIR, else no cache).
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    trust_cache: bool,
    /// Treat skipped-cap as failure.
    #[arg(long)]
    strict: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Order { n, kind } => {
            let e = sylow::syl2_order(n, kind);
            println!("{}", json!({"n": n, "kind": kind.to_string(), "log2_order": e}));
        }
        Command::Decompose { n } => {
            let d = sylow::decompose(n);
            let exponents = d.part_exponents();
            let sum: u64 = exponents.iter().sum();
            let s_exponent = sylow::syl2_order(n, Kind::S);
            println!(
                "{}",
                json!({
                    "n": n,
                    "blocks": d.block_sizes(),
                    "exponents": exponents,
                    "exponent_sum": sum,
                    "s_exponent": s_exponent,
                    "a_exponent": sylow::syl2_order(n, Kind::A),
                    "product_check": sum == s_exponent,
                })
            );
        }
        Command::Gens { family, k, n } => {
            let gens = generators(family, k, n)?;
            println!("{}", serde_json::to_string_pretty(&gens.to_json()).expect("serializes"));
        }
        Command::Verify(args) => return verify_cmd(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn generators(family: Family, k: Option<usize>, n: Option<usize>) -> Result<GeneratorSet, Error> {
    let need_k = || k.ok_or_else(|| Error::Precondition("--k is required for this family".into()));
    let need_n = || n.ok_or_else(|| Error::Precondition("--n is required for this family".into()));
    match family {
        Family::SAlpha => sylow::s_alpha(need_k()?),
        Family::SBeta => sylow::s_beta(need_k()?),
        Family::Syl2S => sylow::syl2_s_generators(need_n()?),
        Family::Syl2A => sylow::syl2_a_generators(need_n()?),
    }
}

fn verify_cmd(args: VerifyArgs) -> Result<ExitCode, Error> {
    if args.list {
        for id in verify::claim_ids() {
            println!("{id}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let config = Config {
        k: args.k,
        n: args.n,
        max_k: args.max_k,
        max_n: args.max_n,
        cap: args.cap,
        seed: args.seed,
        cache_dir: cache::resolve_dir(args.cache.as_deref()),
        trust_cache: args.trust_cache,
    };
    let ids = if args.all { Vec::new() } else { args.claims };
    let report = verify::run(&ids, config)?;
    let text = report.to_json();
    match &args.json {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Precondition(e.to_string()))?;
            for c in &report.claims {
                eprintln!("{:<22} {:?} ({} ms)", c.claim_id, c.status, c.runtime_ms);
            }
        }
        None => println!("{text}"),
    }
    Ok(if report.all_passed(args.strict) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
