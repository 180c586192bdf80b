//! The `tcgx` command-line tool.
//!
//! Exit codes: 0 success, 1 validation failure, 2 decode, I/O or usage error.
//! No output file is written unless the command succeeds.

mod describe;
mod new_magistral;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::codec::{decode_drawing, encode_drawing, DecodeError, EncodeError, FILE_HEADER_SIZE};
use crate::error::DomainError;
use crate::magistral::{expand_drawing, expanded_size_scaled};
use crate::model::{validate_drawing, Drawing, DrawingViolation, Element, MAGISTRAL_SIZE};
use crate::standards::{ConfigError, Standards};
use crate::svg::render_svg;

pub use new_magistral::NewMagistralArgs;

const AFTER_HELP: &str = "\
Exit status: 0 success, 1 validation failure, 2 decode, I/O or usage error.

With --json every command prints exactly one JSON object to stdout. Keys are
stable and appear in a fixed order. Failures print {\"error\": {...}} with at
least \"kind\" and \"message\"; validation failures print the command's normal
object with a non-empty \"violations\" array.

Standards tables are read from $TCGX_CONFIG_DIR/standards.toml when that
variable is set, otherwise the bundled tables are used.";

#[derive(Debug, Parser)]
#[command(name = "tcgx", version, about = "Compact drawing files: validate, inspect, build, expand, render", after_help = AFTER_HELP)]
pub struct Cli {
    /// Print one JSON object to stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decode a file and check every element against the standards.
    Validate { input: PathBuf },
    /// Dump the header and every element in millimeters and degrees.
    Inspect { input: PathBuf },
    /// Append a magistral to a drawing, creating the drawing if needed.
    NewMagistral(Box<NewMagistralArgs>),
    /// Replace every magistral by its explicit geometry.
    Expand {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Per-element byte sizes, with expanded sizes of magistrals.
    Stats { input: PathBuf },
    /// Render to SVG, one user unit per paper millimeter.
    Svg {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode, re-encode and compare bytes.
    Roundtrip { input: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Decode { path: String, source: DecodeError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Decode { .. } | CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Encode(_) | CliError::Domain(_) => 1,
        }
    }

    fn to_json(&self) -> Value {
        let kind = match self {
            CliError::Io { .. } => "io",
            CliError::Decode { .. } => "decode",
            CliError::Config(_) => "config",
            CliError::Usage(_) => "usage",
            CliError::Encode(_) => "encode",
            CliError::Domain(_) => "domain",
        };
        let mut err = json!({ "kind": kind, "message": self.to_string() });
        if let CliError::Decode { source, .. } = self {
            err["offset"] = json!(source.offset);
            err["element"] = json!(source.element);
        }
        json!({ "error": err })
    }
}

/// Result of a command that ran to completion.
pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self { code: 0, json, text }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = if json {
                writeln!(stdout, "{}", out.json)
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(out.code)
        }
        Err(e) => {
            if json {
                println!("{}", e.to_json());
            }
            eprintln!("tcgx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let standards = Standards::from_env()?;
    match cli.command {
        Command::Validate { input } => validate(&input, &standards),
        Command::Inspect { input } => inspect(&input, &standards),
        Command::NewMagistral(args) => new_magistral::run(&args, &standards),
        Command::Expand { input, output } => expand(&input, &output, &standards),
        Command::Stats { input } => stats(&input, &standards),
        Command::Svg { input, output } => svg(&input, &output, &standards),
        Command::Roundtrip { input } => roundtrip(&input),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<(Vec<u8>, Drawing), CliError> {
    let bytes = read(path)?;
    let drawing = decode_drawing(&bytes).map_err(|source| CliError::Decode {
        path: path.display().to_string(),
        source,
    })?;
    Ok((bytes, drawing))
}

/// Writes through a temporary file in the target directory, so a failed
/// write never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let mode = std::fs::metadata(path).map_or(0o644, |m| m.permissions().mode());
        tmp.as_file()
            .set_permissions(std::fs::Permissions::from_mode(mode))
            .map_err(io)?;
    }
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Absolute byte offset of every element.
fn offsets(d: &Drawing) -> Vec<usize> {
    let mut at = FILE_HEADER_SIZE;
    d.elements
        .iter()
        .map(|e| {
            let here = at;
            at += e.size();
            here
        })
        .collect()
}

fn violations_json(v: &[DrawingViolation], offsets: &[usize]) -> Value {
    Value::Array(
        v.iter()
            .map(|v| {
                json!({
                    "element": v.element,
                    "offset": v.element.map(|i| offsets[i]),
                    "field": v.violation.field,
                    "value": v.violation.value,
                    "allowed": v.violation.allowed,
                })
            })
            .collect(),
    )
}

fn violations_text(v: &[DrawingViolation], offsets: &[usize]) -> String {
    let mut out = String::new();
    for v in v {
        match v.element {
            Some(i) => out.push_str(&format!("element {i} (byte {}): {}\n", offsets[i], v.violation)),
            None => out.push_str(&format!("header: {}\n", v.violation)),
        }
    }
    out
}

fn checked(d: &Drawing, standards: &Standards, path: &Path) -> Option<Outcome> {
    let v = validate_drawing(d, standards);
    if v.is_empty() {
        return None;
    }
    let offs = offsets(d);
    Some(Outcome {
        code: 1,
        json: json!({ "file": path.display().to_string(), "violations": violations_json(&v, &offs) }),
        text: format!("{}{} violations\n", violations_text(&v, &offs), v.len()),
    })
}

fn validate(input: &Path, standards: &Standards) -> Result<Outcome, CliError> {
    let (_, d) = load(input)?;
    let v = validate_drawing(&d, standards);
    let offs = offsets(&d);
    Ok(Outcome {
        code: if v.is_empty() { 0 } else { 1 },
        json: json!({
            "file": input.display().to_string(),
            "elements": d.elements.len(),
            "violations": violations_json(&v, &offs),
        }),
        text: format!("{}{} violations\n", violations_text(&v, &offs), v.len()),
    })
}

fn inspect(input: &Path, standards: &Standards) -> Result<Outcome, CliError> {
    let (bytes, d) = load(input)?;
    let mut head = describe::drawing_header(&d, standards);
    head["bytes"] = json!(bytes.len());
    let records: Vec<_> = d
        .elements
        .iter()
        .zip(offsets(&d))
        .enumerate()
        .map(|(i, (e, off))| describe::element(i, off, e))
        .collect();
    let mut text = describe::text_line(&head) + "\n";
    for r in &records {
        text.push_str(&describe::text_line(r));
        text.push('\n');
    }
    Ok(Outcome::ok(json!({ "header": head, "elements": records }), text))
}

fn expand(input: &Path, output: &Path, standards: &Standards) -> Result<Outcome, CliError> {
    let (bytes, d) = load(input)?;
    if let Some(failed) = checked(&d, standards, input) {
        return Ok(failed);
    }
    let expanded = expand_drawing(&d, standards)?;
    let out = encode_drawing(&expanded)?;
    write_atomic(output, &out)?;
    Ok(Outcome::ok(
        json!({
            "input_elements": d.elements.len(),
            "output_elements": expanded.elements.len(),
            "input_bytes": bytes.len(),
            "output_bytes": out.len(),
        }),
        format!(
            "{} elements ({} bytes) -> {} elements ({} bytes)\n",
            d.elements.len(),
            bytes.len(),
            expanded.elements.len(),
            out.len()
        ),
    ))
}

fn stats(input: &Path, standards: &Standards) -> Result<Outcome, CliError> {
    let (bytes, d) = load(input)?;
    if let Some(failed) = checked(&d, standards, input) {
        return Ok(failed);
    }
    let mut rows = Vec::new();
    let mut text = format!(
        "{:>6} {:<10} {:>8} {:>10} {:>8}\n",
        "index", "tag", "compact", "expanded", "ratio"
    );
    let (mut compact_total, mut expanded_total) = (0usize, 0usize);
    for (i, e) in d.elements.iter().enumerate() {
        let compact = e.size();
        let (expanded, ratio) = match e {
            Element::Magistral(m) => {
                let k = 1.0 / d.paper_factor(standards, m.header.attr.space);
                let x = expanded_size_scaled(m, k)?;
                (x, Some(x as f64 / MAGISTRAL_SIZE as f64))
            }
            _ => (compact, None),
        };
        compact_total += compact;
        expanded_total += expanded;
        text.push_str(&format!(
            "{i:>6} {:<10} {compact:>8} {expanded:>10} {:>8}\n",
            e.tag().name(),
            ratio.map_or("-".into(), |r| format!("{r:.2}"))
        ));
        rows.push(json!({
            "index": i,
            "tag": e.tag().name(),
            "compact": compact,
            "expanded": expanded,
            "ratio": ratio,
        }));
    }
    text.push_str(&format!(
        "{:>6} {:<10} {compact_total:>8} {expanded_total:>10}\n",
        "total", ""
    ));
    Ok(Outcome::ok(
        json!({
            "file_bytes": bytes.len(),
            "header_bytes": FILE_HEADER_SIZE,
            "rows": rows,
            "totals": { "compact": compact_total, "expanded": expanded_total },
        }),
        text,
    ))
}

fn svg(input: &Path, output: &Path, standards: &Standards) -> Result<Outcome, CliError> {
    let (_, d) = load(input)?;
    if let Some(failed) = checked(&d, standards, input) {
        return Ok(failed);
    }
    let doc = render_svg(&d, standards)?;
    write_atomic(output, doc.as_bytes())?;
    Ok(Outcome::ok(
        json!({ "output": output.display().to_string(), "bytes": doc.len() }),
        format!("wrote {} ({} bytes)\n", output.display(), doc.len()),
    ))
}

fn roundtrip(input: &Path) -> Result<Outcome, CliError> {
    let (bytes, d) = load(input)?;
    let again = encode_drawing(&d)?;
    let first_difference = bytes
        .iter()
        .zip(&again)
        .position(|(a, b)| a != b)
        .or_else(|| (bytes.len() != again.len()).then(|| bytes.len().min(again.len())));
    Ok(match first_difference {
        None => Outcome::ok(
            json!({ "identical": true, "bytes": bytes.len() }),
            format!("identical ({} bytes)\n", bytes.len()),
        ),
        Some(at) => Outcome {
            code: 1,
            json: json!({ "identical": false, "bytes": bytes.len(), "first_difference": at }),
            text: format!("re-encoded bytes differ at offset {at}\n"),
        },
    })
}
