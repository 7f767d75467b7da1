use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ornament_engine::frontend::{run_text, DEFAULT_DEPTH};

#[derive(Parser)]
#[command(name = "engine", about = "Evaluate ornament session files")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file, printing one JSON record per form.
    Run {
        file: PathBuf,
        /// Extra forms evaluated after the file.
        #[arg(long = "cmd", value_name = "FORM")]
        cmds: Vec<String>,
        /// Default depth for commands that enumerate trees.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Write records here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let Cmd::Run { file, cmds, depth, out } = Cli::parse().command;
    let mut text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("engine: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    for c in cmds {
        text.push('\n');
        text.push_str(&c);
    }
    let result = run_text(&text, depth);
    let rendered = result.render();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("engine: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(result.exit_code() as u8)
}
