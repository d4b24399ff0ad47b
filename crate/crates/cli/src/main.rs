mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "isotypic", version, about = "Exact group-algebra idempotents and isotypical decompositions of Jacobians")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Group file: a presentation, permutations or a Cayley table.
    #[arg(long, global = true)]
    pub group: Option<PathBuf>,
    /// Character table file; computed by Dixon's method when absent.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Matrix representation file (repeatable).
    #[arg(long, global = true)]
    pub rep: Vec<PathBuf>,
    /// Schur index assertion such as `13-14=2` (repeatable).
    #[arg(long = "assert-schur", value_name = "IRREP=m", global = true)]
    pub assert_schur: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long = "max-intersection-arity", default_value_t = 4, global = true)]
    pub max_intersection_arity: usize,
    #[arg(long = "max-group-order", default_value_t = 10_000, global = true)]
    pub max_group_order: usize,
    #[arg(long = "max-lattice-order", default_value_t = 2_000, global = true)]
    pub max_lattice_order: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, conjugacy classes and subgroup classes.
    GroupInfo,
    /// The character table, computed or loaded and validated.
    Chartable,
    /// Central, primitive or subgroup idempotents with a verification transcript.
    Idempotents {
        #[command(subcommand)]
        which: IdempotentKind,
    },
    /// Isotypical decomposition of JW, JW_H or P(W_H/W_N).
    Decompose {
        #[command(subcommand)]
        subject: DecomposeSubject,
    },
    /// Realize factors as Prym varieties, intersections or complements.
    Classify {
        /// Rational irreducible, e.g. `13-14`; every nontrivial one when absent.
        #[arg(long)]
        irrep: Option<String>,
    },
    /// The full decomposition of JW with every factor realized.
    FullReport,
    /// Check every relation of a fixture manifest.
    Verify {
        manifest: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdempotentKind {
    /// e_W for one or all rational irreducibles.
    Central {
        #[arg(long)]
        irrep: Option<String>,
    },
    /// The primitive system built from a representation given by --rep.
    Primitive {
        #[arg(long)]
        irrep: Option<String>,
    },
    /// f_H = p_H e_W.
    Subgroup {
        #[arg(long = "H", alias = "h")]
        h: String,
        #[arg(long)]
        irrep: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DecomposeSubject {
    Jacobian,
    Intermediate {
        #[arg(long = "H", alias = "h")]
        h: String,
    },
    Prym {
        #[arg(long = "H", alias = "h")]
        h: String,
        #[arg(long = "N", alias = "n")]
        n: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let text = match cli.opts.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n",
            };
            print!("{text}");
            ExitCode::from(if out.passed { 0 } else { 3 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
