//! `rulecnl`: batch checking and compilation of rule files, plus the
//! language service over HTTP or stdio.

mod serve;

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rulecnl::diag::{line_col, Source};
use rulecnl::langservice::handle_line;
use rulecnl::{load_vocabulary, CompileOutput, Diagnostic, Session};

#[derive(Parser)]
#[command(name = "rulecnl", version, about = "Controlled natural language for business rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vocabulary commands.
    Vocab {
        #[command(subcommand)]
        command: VocabCommand,
    },
    /// Report diagnostics for every rule in a rules file.
    Check {
        #[arg(long)]
        vocab: PathBuf,
        rules: PathBuf,
    },
    /// Compile a rules file to SBVR XML.
    Compile {
        #[arg(long)]
        vocab: PathBuf,
        rules: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Print completion items at a cursor position as JSON.
    Complete {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long)]
        text: String,
        /// Byte offset into `--text`.
        #[arg(long)]
        cursor: usize,
    },
    /// Serve the language service over HTTP.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of static editor assets, served under `/ui/`.
        #[arg(long)]
        ui_dir: Option<PathBuf>,
    },
    /// Serve the language service over stdin/stdout, one JSON object per line.
    Stdio,
}

#[derive(Subcommand)]
enum VocabCommand {
    /// Validate a vocabulary file.
    Check { file: PathBuf },
}

/// Usage or I/O failure: exit status 2.
struct Fatal(String);

type Status = Result<ExitCode, Fatal>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Vocab {
            command: VocabCommand::Check { file },
        } => vocab_check(&file),
        Command::Check { vocab, rules } => check(&vocab, &rules),
        Command::Compile { vocab, rules, out } => compile(&vocab, &rules, &out),
        Command::Complete { vocab, text, cursor } => complete(&vocab, &text, cursor),
        Command::Serve { port, host, ui_dir } => serve::run(&host, port, ui_dir),
        Command::Stdio => stdio(),
    };
    status.unwrap_or_else(|Fatal(msg)| {
        eprintln!("rulecnl: {msg}");
        ExitCode::from(2)
    })
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("cannot read {}: {e}", path.display())))
}

fn print_diagnostic(path: &Path, text: &str, d: &Diagnostic) {
    let (line, col) = line_col(text, d.span.start);
    println!(
        "{}:{line}:{col}: {} {} {}",
        path.display(),
        d.severity,
        d.code.as_str(),
        d.message
    );
}

/// Prints diagnostics against the document each one points into.
fn report(vocab: (&Path, &str), rules: (&Path, &str), diags: &[Diagnostic]) -> ExitCode {
    for d in diags {
        let (path, text) = match d.source {
            Source::Vocab => vocab,
            Source::Text => rules,
        };
        print_diagnostic(path, text, d);
    }
    exit_for(diags)
}

fn exit_for(diags: &[Diagnostic]) -> ExitCode {
    if diags.iter().any(Diagnostic::is_error) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn vocab_check(path: &Path) -> Status {
    let text = read(path)?;
    let (_, diags) = load_vocabulary(&text);
    for d in &diags {
        print_diagnostic(path, &text, d);
    }
    Ok(exit_for(&diags))
}

fn check(vocab_path: &Path, rules_path: &Path) -> Status {
    let vocab = read(vocab_path)?;
    let rules = read(rules_path)?;
    let diags = Session::new(&vocab).diagnostics(&rules);
    Ok(report((vocab_path, &vocab), (rules_path, &rules), &diags))
}

fn compile(vocab_path: &Path, rules_path: &Path, out: &Path) -> Status {
    let vocab = read(vocab_path)?;
    let rules = read(rules_path)?;
    let session = Session::new(&vocab);
    match session.compile(&rules) {
        CompileOutput::Diagnostics(diags) => Ok(report((vocab_path, &vocab), (rules_path, &rules), &diags)),
        CompileOutput::Xml(xml) => {
            // warnings do not block output but are still shown
            let warnings = session.diagnostics(&rules);
            report((vocab_path, &vocab), (rules_path, &rules), &warnings);
            write_atomically(out, &xml)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Writes through a sibling temporary file so a failed write leaves no
/// partial output behind.
fn write_atomically(out: &Path, contents: &str) -> Result<(), Fatal> {
    let fail = |e: io::Error| Fatal(format!("cannot write {}: {e}", out.display()));
    let mut tmp = out.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let result = fs::write(&tmp, contents).and_then(|()| fs::rename(&tmp, out));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(fail)
}

fn complete(vocab_path: &Path, text: &str, cursor: usize) -> Status {
    let vocab = read(vocab_path)?;
    if cursor > text.len() || !text.is_char_boundary(cursor) {
        return Err(Fatal(format!("cursor {cursor} is not a character boundary of --text")));
    }
    let items = Session::new(&vocab).complete(text, cursor);
    let json = serde_json::to_string_pretty(&items).map_err(|e| Fatal(e.to_string()))?;
    match writeln!(io::stdout(), "{json}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Fatal(format!("stdout: {e}"))),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn stdio() -> Status {
    let stdin = io::stdin();
    let mut stdout = io::stdout().lock();
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Fatal(format!("stdin: {e}")))?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(stdout, "{}", handle_line(&line))
            .and_then(|()| stdout.flush())
            .map_err(|e| Fatal(format!("stdout: {e}")))?;
    }
    Ok(ExitCode::SUCCESS)
}
