use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

mod commands;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "trigonal", version, about = "Skeletons, dessins, braid monodromy and Zariski counts of maximal trigonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form counts at degree m, or the reference table.
    #[command(group(ArgGroup::new("what").required(true).args(["degree", "table"])))]
    Count {
        #[arg(long)]
        degree: Option<u64>,
        /// Print the table for m = 8..14, 20, 40, 80.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Tree-family skeletons for all binary trees with `size` nodes (k = size + 1).
    Trees {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        symmetric_only: bool,
        /// Write one skeleton JSON file per tree into this directory.
        #[arg(long, value_name = "DIR")]
        emit_skeletons: Option<PathBuf>,
        /// Use the alternative family (root marker replaced by a leaf).
        #[arg(long)]
        alt: bool,
    },
    /// All skeletons with at most N edges, up to isomorphism.
    Enumerate {
        #[arg(long, value_name = "N")]
        max_edges: usize,
    },
    /// Validate and classify a skeleton JSON file.
    Classify {
        file: PathBuf,
        /// Write the skeleton as DOT.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Write the completed dessin as DOT.
        #[arg(long, value_name = "FILE")]
        dessin_dot: Option<PathBuf>,
    },
    /// Braid monodromy of a skeleton file, or of the tree skeleton given by --tree.
    #[command(group(ArgGroup::new("source").required(true).args(["file", "tree"])))]
    Monodromy {
        file: Option<PathBuf>,
        /// A binary tree such as "((-,-),-)".
        #[arg(long, value_name = "T")]
        tree: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Discriminant, j-invariant and classification of (g2, g3).
    Weierstrass {
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
        #[arg(long, allow_hyphen_values = true)]
        g3: String,
    },
    /// Reconstruct the simplified curve with j = p/(p+q).
    FromJ {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, value_name = "N", default_value_t = 5)]
        max_edges: usize,
        #[arg(long, value_name = "K", default_value_t = 5)]
        max_k: usize,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> trigonal::Result<()> {
    match cli.command {
        Command::Count { degree, table, json } => commands::count(out, degree, table, json),
        Command::Trees { size, symmetric_only, emit_skeletons, alt } => {
            commands::trees(out, size, symmetric_only, emit_skeletons.as_deref(), alt)
        }
        Command::Enumerate { max_edges } => commands::enumerate(out, max_edges),
        Command::Classify { file, dot, dessin_dot } => {
            commands::classify(out, &file, dot.as_deref(), dessin_dot.as_deref())
        }
        Command::Monodromy { file, tree, json, dot } => {
            commands::monodromy(out, file.as_deref(), tree.as_deref(), json, dot.as_deref())
        }
        Command::Weierstrass { g2, g3 } => commands::weierstrass(out, &g2, &g3),
        Command::FromJ { p, q } => commands::from_j(out, &p, &q),
        Command::Verify { max_edges, max_k } => verify::run(out, max_edges, max_k),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(if e.is_invariant_breach() { 2 } else { 1 })
        }
    }
}
