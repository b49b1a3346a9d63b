// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fenrw::{apply_move, bench, fuzz, parse_legacy_forsyth, ApplyOptions, ClockMode, EpMode, FenRecord, Validation};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MOVE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "fenrw", version, about = "Apply chess moves directly to FEN strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// When a double pawn step records an en passant square.
    #[arg(long, global = true, default_value = "always")]
    ep_mode: EpMode,

    /// `frozen` copies the halfmove and fullmove fields through unchanged.
    #[arg(long, global = true, default_value = "standard")]
    clock_mode: ClockMode,

    #[arg(long, global = true, default_value = "lenient")]
    validation: Validation,

    #[arg(long, global = true, value_enum, default_value_t = Output::Plain)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    /// One JSON object per line.
    Record,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a FEN and print its canonical form.
    Validate { fen: String },
    /// Apply one move and print the resulting FEN.
    Apply {
        fen: String,
        #[arg(name = "MOVE")]
        mv: String,
    },
    /// Apply a file of moves (one per line, '#' starts a comment; '-' reads stdin).
    Play { fen: String, moves: PathBuf },
    /// Compare segment rewriting with the array oracle on seeded pseudo-moves.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
    },
    /// Time segment rewriting against the array round trip.
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
    },
    /// Convert comma-separated 1883 Forsyth notation to FEN.
    ConvertForsyth {
        text: String,
        #[arg(long, default_value = "w")]
        side: String,
        #[arg(long, default_value = "-")]
        castling: String,
        #[arg(long, default_value = "-")]
        ep: String,
        #[arg(long, default_value_t = 0)]
        halfmove: u32,
        #[arg(long, default_value_t = 1)]
        fullmove: u32,
    },
}

struct Failure {
    code: u8,
    name: &'static str,
    message: String,
}

impl Failure {
    fn input(name: &'static str, message: impl ToString) -> Failure {
        Failure {
            code: EXIT_INPUT,
            name,
            message: message.to_string(),
        }
    }
}

impl From<fenrw::MoveError> for Failure {
    fn from(e: fenrw::MoveError) -> Failure {
        Failure {
            code: if e.is_input_error() { EXIT_INPUT } else { EXIT_MOVE },
            name: e.name(),
            message: e.to_string(),
        }
    }
}

struct Printer {
    output: Output,
    out: io::StdoutLock<'static>,
}

impl Printer {
    fn line(&mut self, plain: impl AsRef<str>, record: serde_json::Value) -> io::Result<()> {
        match self.output {
            Output::Plain => writeln!(self.out, "{}", plain.as_ref()),
            Output::Record => writeln!(self.out, "{record}"),
        }
    }

    fn fail(&mut self, f: &Failure, extra: serde_json::Value) -> ExitCode {
        match self.output {
            Output::Plain => eprintln!("{}: {}", f.name, f.message),
            Output::Record => {
                let mut rec = json!({ "error": f.name, "message": f.message });
                if let (Some(obj), serde_json::Value::Object(more)) = (rec.as_object_mut(), extra) {
                    obj.extend(more);
                }
                let _ = writeln!(self.out, "{rec}");
            }
        }
        ExitCode::from(f.code)
    }
}

fn read_moves(path: &PathBuf) -> io::Result<Vec<String>> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect())
}

fn run(cli: Cli) -> io::Result<ExitCode> {
    let opts = ApplyOptions {
        ep_mode: cli.ep_mode,
        clock_mode: cli.clock_mode,
        validation: cli.validation,
    };
    let mut p = Printer {
        output: cli.output,
        out: io::stdout().lock(),
    };

    match cli.command {
        Command::Validate { fen } => match FenRecord::parse_with(&fen, opts.validation) {
            Ok(r) => {
                let canonical = r.to_string();
                p.line(&canonical, json!({ "fen": canonical, "error": null }))?;
            }
            Err(e) => return Ok(p.fail(&Failure::input(e.name(), &e), json!({}))),
        },

        Command::Apply { fen, mv } => match apply_move(&fen, &mv, opts) {
            Ok(out) => {
                let rec = json!({
                    "fen_after": out.fen_after,
                    "segments_touched": out.segments_touched,
                    "was_capture": out.was_capture,
                    "was_pawn_move": out.was_pawn_move,
                    "special": out.special,
                    "error": null,
                });
                p.line(&out.fen_after, rec)?;
            }
            Err(e) => return Ok(p.fail(&e.into(), json!({}))),
        },

        Command::Play { fen, moves } => {
            let moves = match read_moves(&moves) {
                Ok(m) => m,
                Err(e) => return Ok(p.fail(&Failure::input("MovesFile", e), json!({}))),
            };
            let mut current = fen;
            for (i, mv) in moves.iter().enumerate() {
                let ply = i + 1;
                match apply_move(&current, mv, opts) {
                    Ok(out) => {
                        let rec = json!({
                            "ply": ply,
                            "move": mv,
                            "fen_after": out.fen_after,
                            "segments_touched": out.segments_touched,
                            "special": out.special,
                            "error": null,
                        });
                        p.line(&out.fen_after, rec)?;
                        current = out.fen_after;
                    }
                    Err(e) => {
                        let mut f = Failure::from(e);
                        f.message = format!("ply {ply} ({mv}): {}", f.message);
                        return Ok(p.fail(&f, json!({ "ply": ply, "move": mv })));
                    }
                }
            }
        }

        Command::Fuzz { seed, iterations } => {
            let report = fuzz::run(seed, iterations as usize, opts);
            let rec = json!({
                "seed": report.seed,
                "iterations": report.iterations,
                "positions_visited": report.positions_visited,
                "chains": report.restarts,
                "mismatches": report.mismatches,
                "first_mismatch": report.first_mismatch.as_ref().map(|m| json!({
                    "fen": m.fen,
                    "move": m.mv,
                    "segment_path": m.segment_path.clone().unwrap_or_else(|e| format!("error {e}")),
                    "array_path": m.array_path.clone().unwrap_or_else(|e| format!("error {e}")),
                })),
            });
            p.line(report.to_string(), rec)?;
            if !report.passed() {
                return Ok(ExitCode::from(EXIT_INTERNAL));
            }
        }

        Command::Bench { seed, iterations } => {
            let report = bench::run(seed, iterations as usize, opts);
            let rec = json!({
                "iterations": report.iterations,
                "segment_seconds": report.segment_time.as_secs_f64(),
                "array_seconds": report.array_time.as_secs_f64(),
                "segment_ops_per_sec": report.segment_ops_per_sec(),
                "array_ops_per_sec": report.array_ops_per_sec(),
                "ratio": report.ratio(),
            });
            p.line(report.to_string(), rec)?;
        }

        Command::ConvertForsyth {
            text,
            side,
            castling,
            ep,
            halfmove,
            fullmove,
        } => {
            let placement = match parse_legacy_forsyth(&text) {
                Ok(pl) => pl,
                Err(e) => return Ok(p.fail(&Failure::input(e.name(), &e), json!({}))),
            };
            let fen = format!("{} {side} {castling} {ep} {halfmove} {fullmove}", placement.join("/"));
            match FenRecord::parse_with(&fen, opts.validation) {
                Ok(r) => {
                    let canonical = r.to_string();
                    p.line(&canonical, json!({ "fen": canonical, "error": null }))?;
                }
                Err(e) => return Ok(p.fail(&Failure::input(e.name(), &e), json!({}))),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fenrw: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
