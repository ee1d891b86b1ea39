use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bjson_bench::{load_corpus, run_corpus, summarize, write_reports, BenchError, Format};
use bjson_core::codec::{frame, unframe, Mode};
use bjson_core::json::{parse_json_bytes, to_pretty_string, JsonValue};
use bjson_core::{build_plan, canonicalize, decode, encode, minify, EncodeError, EncodingPlan, Schema};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bjson", version, about = "Compact binary encoding for JSON documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliMode {
    SchemaDriven,
    SchemaLess,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a JSON document.
    Encode {
        /// Input JSON file, or stdin when omitted.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "schema-less")]
        mode: CliMode,
        #[arg(long)]
        schema: Option<PathBuf>,
        /// Prefix the payload with the BJ1 header.
        #[arg(long)]
        framed: bool,
        /// Output file, or stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a payload back to minified JSON.
    Decode {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "schema-less")]
        mode: CliMode,
        #[arg(long)]
        schema: Option<PathBuf>,
        /// Read the BJ1 header and take the mode from it.
        #[arg(long)]
        framed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the canonical form of a schema.
    Canonicalize {
        schema: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the encoding plan compiled from a schema.
    Plan {
        schema: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure every case of a corpus and write reports.
    Bench {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        #[arg(long, default_value = "bench-out")]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "csv,markdown,svg")]
        format: Vec<Format>,
    },
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

const EXIT_PARSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_DECODE: u8 = 5;
const EXIT_FAIRNESS: u8 = 6;

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("bjson: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Encode {
            input,
            mode,
            schema,
            framed,
            out,
        } => {
            let plan = load_plan(mode, schema.as_deref())?;
            let doc = parse(&read_input(input.as_deref())?, input.as_deref())?;
            let payload = encode(&doc, &plan).map_err(|e| match &e {
                EncodeError::SchemaMismatch { path, reason } => fail(
                    EXIT_VALIDATION,
                    format!("document does not match the schema at {path}: {reason}"),
                ),
                EncodeError::Unsupported { .. } => fail(EXIT_VALIDATION, e.to_string()),
            })?;
            let bytes = if framed {
                frame(frame_mode(mode), &payload)
            } else {
                payload
            };
            eprintln!("{} bytes", bytes.len());
            write_output(out.as_deref(), &bytes)
        }
        Command::Decode {
            input,
            mode,
            schema,
            framed,
            out,
        } => {
            let raw = read_input(input.as_deref())?;
            let (mode, payload) = if framed {
                let (m, p) = unframe(&raw).map_err(|e| fail(EXIT_DECODE, e.to_string()))?;
                let m = match m {
                    Mode::SchemaDriven => CliMode::SchemaDriven,
                    Mode::SchemaLess => CliMode::SchemaLess,
                };
                (m, p)
            } else {
                (mode, &raw[..])
            };
            let plan = load_plan(mode, schema.as_deref())?;
            let value = decode(payload, &plan).map_err(|e| fail(EXIT_DECODE, format!("cannot decode payload: {e}")))?;
            let mut text = minify(&value);
            if out.is_none() {
                text.push('\n');
            }
            write_output(out.as_deref(), text.as_bytes())
        }
        Command::Canonicalize { schema, out } => {
            let schema = load_schema(&schema)?;
            write_json(out.as_deref(), &schema.to_json())
        }
        Command::Plan { schema, out } => {
            let plan = build_plan(&load_schema(&schema)?);
            write_json(out.as_deref(), &plan.to_json())
        }
        Command::Bench { corpus, out, format } => bench(&corpus, &out, &format),
    }
}

fn bench(corpus: &Path, out: &Path, formats: &[Format]) -> Result<()> {
    let cases = load_corpus(corpus).map_err(bench_failure)?;
    let reports = run_corpus(&cases).map_err(bench_failure)?;
    let written = write_reports(&reports, out, formats).map_err(bench_failure)?;
    if let Some(s) = summarize(&reports) {
        eprintln!(
            "{} cases; median reduction vs JSON: schema-driven {:.1}%, schema-less {:.1}%",
            reports.len(),
            s.schema_driven.median,
            s.schema_less.median
        );
    }
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn bench_failure(e: BenchError) -> Failure {
    let code = match &e {
        BenchError::Io { .. } => EXIT_IO,
        BenchError::Json { .. } => EXIT_PARSE,
        BenchError::Schema { .. }
        | BenchError::Meta { .. }
        | BenchError::EmptyCorpus(_)
        | BenchError::LooseNotAny { .. } => EXIT_USAGE,
        BenchError::StrictMismatch { .. } | BenchError::Encode { .. } => EXIT_VALIDATION,
        BenchError::Decode { .. } | BenchError::NotLossless { .. } => EXIT_FAIRNESS,
        BenchError::Csv(_) => EXIT_IO,
    };
    fail(code, e.to_string())
}

fn frame_mode(mode: CliMode) -> Mode {
    match mode {
        CliMode::SchemaDriven => Mode::SchemaDriven,
        CliMode::SchemaLess => Mode::SchemaLess,
    }
}

fn load_plan(mode: CliMode, schema: Option<&Path>) -> Result<EncodingPlan> {
    match (mode, schema) {
        (CliMode::SchemaLess, _) => Ok(EncodingPlan::any()),
        (CliMode::SchemaDriven, Some(path)) => Ok(build_plan(&load_schema(path)?)),
        (CliMode::SchemaDriven, None) => Err(fail(EXIT_USAGE, "schema-driven mode needs --schema")),
    }
}

fn load_schema(path: &Path) -> Result<Schema> {
    let doc = parse(&read_file(path)?, Some(path))?;
    canonicalize(&doc).map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn parse(bytes: &[u8], path: Option<&Path>) -> Result<JsonValue> {
    parse_json_bytes(bytes).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", display(path))))
}

fn display(path: Option<&Path>) -> String {
    path.map_or_else(|| "<stdin>".to_owned(), |p| p.display().to_string())
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) => read_file(p),
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| fail(EXIT_IO, format!("<stdin>: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| fail(EXIT_IO, format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| fail(EXIT_IO, format!("<stdout>: {e}"))),
    }
}

fn write_json(path: Option<&Path>, value: &JsonValue) -> Result<()> {
    let mut text = to_pretty_string(value);
    text.push('\n');
    write_output(path, text.as_bytes())
}
